"""Finite truncations of locally finite unfolding quivers.

An acyclic sign-skew-symmetric matrix is covered by a labeled, locally
finite quiver built by gluing one-vertex neighborhood pieces; summing
adjacency entries over a label class (with a fixed column representative)
folds the quiver back onto the matrix.  Truly infinite quivers are
represented by finite truncations carrying an interior radius: the depth
up to which every vertex still has its complete, faithful neighborhood.
Orbit-mutation (simultaneous mutation at all vertices of one label)
consumes two units of that radius per step, a conservative budget that the
test suite cross-validates against deeper truncations.

Orientation convention, used consistently for adjacency and folding: a
positive entry for the ordered pair (i, j) means arrows from j to i.  For
the framed part, a positive c-entry pairs arrows from a mutable vertex
into a frozen one.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Optional, Sequence

from .matrices import ExchangeMatrix, IntMatrix, is_acyclic, is_sign_skew_symmetric
from .seeds import FramedSeed, extend, mutate_framed


class GammaViolationError(ValueError):
    """The quiver has a label-class loop or 2-cycle, so orbit-mutation is undefined."""


class InteriorExhaustedError(ValueError):
    """The truncation no longer has enough trusted interior for the operation."""


@dataclass(frozen=True)
class GammaReport:
    loop_free: bool
    two_cycle_free: bool
    loop_witnesses: tuple[tuple[int, int], ...]
    two_cycle_witnesses: tuple[tuple[int, int, int], ...]

    @property
    def ok(self) -> bool:
        return self.loop_free and self.two_cycle_free


@dataclass(frozen=True)
class CommutationReport:
    ok: bool
    first_divergence: Optional[int]


class LabeledQuiver:
    """Labeled quiver with mutable/frozen vertices and net integer arrows.

    Vertices are dense integer ids in construction order (breadth-first by
    ring, then parent id, then label).  `out[u][v]` is the positive
    multiplicity of the arrows u -> v; at most one direction is stored per
    pair, and `inn` mirrors `out`.  Instances are immutable by convention:
    mutation returns a new quiver sharing the vertex arrays.  Treat `out`
    and `inn` as read-only.

    `interior_radius` is the depth up to which vertex neighborhoods are
    complete and entries are trusted; None means the quiver is the whole
    (finite) unfolding and never loses interior.
    """

    __slots__ = (
        "n_labels", "framed", "labels", "frozen", "depths", "out", "inn",
        "frozen_partner", "interior_radius", "core_depth", "_label_ids",
    )

    def __init__(
        self,
        *,
        n_labels: int,
        framed: bool,
        labels: tuple[int, ...],
        frozen: tuple[bool, ...],
        depths: tuple[int, ...],
        out: dict[int, dict[int, int]],
        inn: dict[int, dict[int, int]],
        frozen_partner: dict[int, int],
        interior_radius: Optional[int],
    ) -> None:
        self.n_labels = n_labels
        self.framed = framed
        self.labels = labels
        self.frozen = frozen
        self.depths = depths
        self.out = out
        self.inn = inn
        self.frozen_partner = frozen_partner
        self.interior_radius = interior_radius
        label_ids: dict[int, list[int]] = {}
        for v, label in enumerate(labels):
            if not frozen[v]:
                label_ids.setdefault(label, []).append(v)
        self._label_ids = {lab: tuple(ids) for lab, ids in label_ids.items()}
        self.core_depth = max(
            (min(depths[v] for v in ids) for ids in self._label_ids.values()),
            default=0,
        )

    # ------------------------------------------------------------------ views

    @property
    def vertex_count(self) -> int:
        return len(self.labels)

    @property
    def mutable_count(self) -> int:
        return sum(1 for f in self.frozen if not f)

    @property
    def frozen_count(self) -> int:
        return sum(1 for f in self.frozen if f)

    @property
    def arrow_count(self) -> int:
        return sum(len(d) for d in self.out.values())

    @property
    def is_complete(self) -> bool:
        return self.interior_radius is None

    @property
    def can_fold(self) -> bool:
        """Whether every label still has an interior default representative."""
        return self.is_complete or self.interior_radius >= self.core_depth

    def present_labels(self) -> tuple[int, ...]:
        return tuple(sorted(self._label_ids))

    def mutable_ids(self, label: int) -> tuple[int, ...]:
        return self._label_ids.get(label, ())

    def is_interior(self, v: int) -> bool:
        return self.is_complete or self.depths[v] <= self.interior_radius

    def entry(self, i: int, j: int) -> int:
        """Signed adjacency entry for the ordered pair (i, j): mult(j->i) - mult(i->j)."""
        return self.out[j].get(i, 0) - self.out[i].get(j, 0)

    def arrows(self) -> list[tuple[int, int, int]]:
        """All arrows as (source, target, multiplicity), sorted."""
        return [
            (u, v, self.out[u][v])
            for u in range(self.vertex_count)
            for v in sorted(self.out[u])
        ]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LabeledQuiver):
            return NotImplemented
        return (
            self.n_labels == other.n_labels
            and self.framed == other.framed
            and self.labels == other.labels
            and self.frozen == other.frozen
            and self.depths == other.depths
            and self.out == other.out
            and self.interior_radius == other.interior_radius
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        radius = "complete" if self.is_complete else f"interior<={self.interior_radius}"
        return (
            f"<LabeledQuiver n_labels={self.n_labels} framed={self.framed} "
            f"vertices={self.vertex_count} arrows={self.arrow_count} {radius}>"
        )


# ---------------------------------------------------------------- validation


def _require_unfoldable(matrix: ExchangeMatrix) -> None:
    if not is_sign_skew_symmetric(matrix):
        raise ValueError("unfolding requires a sign-skew-symmetric matrix")
    if not is_acyclic(matrix):
        raise ValueError("unfolding requires an acyclic matrix")


def _label_distances(matrix: ExchangeMatrix) -> list[Optional[int]]:
    """Distances from label 1 over the undirected nonzero pattern."""
    e = matrix.entries
    n = matrix.n
    dist: list[Optional[int]] = [None] * n
    dist[0] = 0
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for j in range(n):
            if dist[j] is None and (e[i][j] != 0 or e[j][i] != 0):
                dist[j] = dist[i] + 1
                queue.append(j)
    return dist


# -------------------------------------------------------------- construction


class _Builder:
    def __init__(self, matrix: ExchangeMatrix, framed: bool) -> None:
        self.e = matrix.entries
        self.n = matrix.n
        self.framed = framed
        self.labels: list[int] = []
        self.frozen: list[bool] = []
        self.depths: list[int] = []
        self.out: dict[int, dict[int, int]] = {}
        self.inn: dict[int, dict[int, int]] = {}
        self.partner: dict[int, int] = {}

    def new_vertex(self, label: int, depth: int, is_frozen: bool) -> int:
        v = len(self.labels)
        self.labels.append(label)
        self.frozen.append(is_frozen)
        self.depths.append(depth)
        self.out[v] = {}
        self.inn[v] = {}
        return v

    def add_arrow(self, u: int, v: int) -> None:
        self.out[u][v] = 1
        self.inn[v][u] = 1

    def expand(self, v: int) -> list[int]:
        """Glue the neighborhood piece of v's label onto v; return new vertices.

        The single existing arrow to v's parent is identified with the
        matching arrow of the piece (same labels, same orientation, which
        sign-skew-symmetry guarantees), so only the missing satellites are
        created.
        """
        label_v = self.labels[v]
        if self.framed:
            f = self.new_vertex(label_v, self.depths[v], True)
            self.add_arrow(v, f)
            self.partner[v] = f
        have: dict[int, int] = {}
        for u in self.out[v]:
            if not self.frozen[u]:
                have[self.labels[u]] = have.get(self.labels[u], 0) + 1
        for u in self.inn[v]:
            have[self.labels[u]] = have.get(self.labels[u], 0) + 1
        created: list[int] = []
        for j_label in range(1, self.n + 1):
            if j_label == label_v:
                continue
            e_ji = self.e[j_label - 1][label_v - 1]
            if e_ji == 0:
                continue
            missing = abs(e_ji) - have.get(j_label, 0)
            assert missing >= 0, "sign-skew-symmetry guarantees at most one shared arrow"
            for _ in range(missing):
                s = self.new_vertex(j_label, self.depths[v] + 1, False)
                if e_ji < 0:
                    self.add_arrow(s, v)
                else:
                    self.add_arrow(v, s)
                created.append(s)
        return created

    def finish(self, interior_radius: Optional[int], n_labels: int) -> LabeledQuiver:
        return LabeledQuiver(
            n_labels=n_labels,
            framed=self.framed,
            labels=tuple(self.labels),
            frozen=tuple(self.frozen),
            depths=tuple(self.depths),
            out=self.out,
            inn=self.inn,
            frozen_partner=dict(self.partner),
            interior_radius=interior_radius,
        )


def build_piece(matrix: ExchangeMatrix, i: int, framed: bool = True) -> LabeledQuiver:
    """Single-neighborhood piece: one center labeled i plus its satellites.

    For each label j the piece has |b_ji| satellites; the arrow runs from
    satellite to center when b_ji < 0 and from center to satellite when
    b_ji > 0, so that folding at the center recovers column i.  The framed
    variant adds the center's frozen copy.
    """
    _require_unfoldable(matrix)
    if not isinstance(i, int) or isinstance(i, bool) or not 1 <= i <= matrix.n:
        raise IndexError(f"piece center {i!r} out of range 1..{matrix.n}")
    builder = _Builder(matrix, framed)
    center = builder.new_vertex(i, 0, False)
    created = builder.expand(center)
    interior = None if not created else 0
    return builder.finish(interior, matrix.n)


@lru_cache(maxsize=64)
def _cached_truncation(entries: IntMatrix, m: int, framed: bool) -> LabeledQuiver:
    matrix = ExchangeMatrix(entries)
    dist = _label_distances(matrix)
    d_star = max(d for d in dist if d is not None)
    radius = max(1, d_star + m - 1)
    builder = _Builder(matrix, framed)
    ring = [builder.new_vertex(1, 0, False)]
    complete = False
    for _ in range(radius):
        nxt: list[int] = []
        for v in ring:
            nxt.extend(builder.expand(v))
        if not nxt:
            complete = True
            break
        ring = nxt
    return builder.finish(None if complete else radius - 1, matrix.n)


def build_truncation(matrix: ExchangeMatrix, m: int, framed: bool = True) -> LabeledQuiver:
    """Truncation of the unfolding quiver with interior budget m.

    Construction starts at label 1 and glues ring by ring out to radius
    d* + m - 1, where d* is the depth at which the deepest label first
    appears; every label then has an interior representative as long as
    the budget permits (folding needs m >= 2 on a fresh truncation, and
    each orbit-mutation costs 2).  If a gluing round adds nothing the
    quiver is the whole finite unfolding and the interior never shrinks.
    """
    if not isinstance(m, int) or isinstance(m, bool) or m < 1:
        raise ValueError(f"truncation budget m must be a positive integer, got {m!r}")
    _require_unfoldable(matrix)
    dist = _label_distances(matrix)
    missing = [str(i + 1) for i, d in enumerate(dist) if d is None]
    if missing:
        raise ValueError(
            "nonzero pattern is disconnected: labels {"
            + ",".join(missing)
            + "} are unreachable from label 1"
        )
    return _cached_truncation(matrix.entries, m, framed)


# ------------------------------------------------------------------ mutation


def _add_net(
    out: dict[int, dict[int, int]], inn: dict[int, dict[int, int]],
    u: int, w: int, q: int,
) -> None:
    # Net arrows: cancelling opposite pairs implements 2-cycle removal.
    net = out[u].get(w, 0) - out[w].get(u, 0) + q
    out[u].pop(w, None)
    inn[w].pop(u, None)
    out[w].pop(u, None)
    inn[u].pop(w, None)
    if net > 0:
        out[u][w] = net
        inn[w][u] = net
    elif net < 0:
        out[w][u] = -net
        inn[u][w] = -net


def _mutate_vertex(
    out: dict[int, dict[int, int]], inn: dict[int, dict[int, int]],
    frozen: tuple[bool, ...], t: int,
) -> None:
    in_nb = list(inn[t].items())
    out_nb = list(out[t].items())
    for u, mu in in_nb:
        u_frozen = frozen[u]
        for w, mw in out_nb:
            if u_frozen and frozen[w]:
                continue  # arrows between two frozen vertices are discarded
            _add_net(out, inn, u, w, mu * mw)
    for u, _ in in_nb:
        del out[u][t]
        del inn[t][u]
    for w, _ in out_nb:
        del out[t][w]
        del inn[w][t]
    for u, mu in in_nb:
        out[t][u] = mu
        inn[u][t] = mu
    for w, mw in out_nb:
        out[w][t] = mw
        inn[t][w] = mw


def orbit_mutate(quiver: LabeledQuiver, k: int) -> LabeledQuiver:
    """Mutate simultaneously at every mutable vertex labeled k.

    Vertices of one label are pairwise non-adjacent (no label-class loop),
    so the simultaneous update equals the composition of ordinary vertex
    mutations in any order; we apply them in ascending id order.  All
    same-label vertices present are mutated, boundary included: through
    the first step this keeps the whole truncation exactly equal to the
    induced subquiver of the mutated infinite quiver, and later boundary
    error stays outside the interior accounted by the radius, which drops
    by 2.
    """
    if not isinstance(k, int) or isinstance(k, bool) or not 1 <= k <= quiver.n_labels:
        raise IndexError(f"orbit label {k!r} out of range 1..{quiver.n_labels}")
    targets = quiver.mutable_ids(k)
    if not targets:
        raise ValueError(f"label {k} does not occur in the quiver")
    if not quiver.can_fold:
        raise InteriorExhaustedError(
            f"interior exhausted: radius {quiver.interior_radius} has shrunk below "
            f"the deepest first-occurrence depth {quiver.core_depth}"
        )
    gamma = check_gamma_conditions(quiver, interior_only=True)
    if not gamma.ok:
        raise GammaViolationError(
            "orbit-mutation undefined: "
            f"label-class loops {list(gamma.loop_witnesses[:3])}, "
            f"label-class 2-cycles {list(gamma.two_cycle_witnesses[:3])}"
        )
    out = {u: dict(d) for u, d in quiver.out.items()}
    inn = {u: dict(d) for u, d in quiver.inn.items()}
    for t in targets:
        _mutate_vertex(out, inn, quiver.frozen, t)
    radius = None if quiver.is_complete else quiver.interior_radius - 2
    return LabeledQuiver(
        n_labels=quiver.n_labels,
        framed=quiver.framed,
        labels=quiver.labels,
        frozen=quiver.frozen,
        depths=quiver.depths,
        out=out,
        inn=inn,
        frozen_partner=quiver.frozen_partner,
        interior_radius=radius,
    )


# -------------------------------------------------------------------- checks


def check_gamma_conditions(
    quiver: LabeledQuiver, interior_only: bool = False
) -> GammaReport:
    """Scan for arrows inside one label class and 2-paths returning to one.

    Frozen copies form their own classes (keyed by label and kind), so a
    path from a mutable vertex through another label to its own frozen
    class does not count.  With interior_only the scan is restricted to
    the trusted interior, which is the honest region after mutations.
    """
    labels = quiver.labels
    frozen = quiver.frozen
    if interior_only and not quiver.is_complete:
        radius = quiver.interior_radius
        ok = [d <= radius for d in quiver.depths]
    else:
        ok = [True] * quiver.vertex_count
    loops: list[tuple[int, int]] = []
    twos: list[tuple[int, int, int]] = []
    for u in range(quiver.vertex_count):
        if not ok[u]:
            continue
        for v in sorted(quiver.out[u]):
            if ok[v] and labels[u] == labels[v] and frozen[u] == frozen[v]:
                loops.append((u, v))
    for x in range(quiver.vertex_count):
        if not ok[x]:
            continue
        ins = [u for u in sorted(quiver.inn[x]) if ok[u]]
        outs = [w for w in sorted(quiver.out[x]) if ok[w]]
        if not ins or not outs:
            continue
        class_x = (labels[x], frozen[x])
        for u in ins:
            if (labels[u], frozen[u]) == class_x:
                continue
            for w in outs:
                if w != u and labels[w] == labels[u] and frozen[w] == frozen[u]:
                    twos.append((u, x, w))
    return GammaReport(
        loop_free=not loops,
        two_cycle_free=not twos,
        loop_witnesses=tuple(loops),
        two_cycle_witnesses=tuple(twos),
    )


def orbit_sources(quiver: LabeledQuiver) -> list[int]:
    """Labels all of whose interior vertices are sources.

    A source has every incident arrow outgoing; in framed quivers the
    arrow into the frozen copy is outgoing and never blocks, while an
    arrow coming back from a frozen vertex does.
    """
    if not quiver.can_fold:
        raise InteriorExhaustedError("interior exhausted: no trusted vertices per label")
    result = []
    for label in range(1, quiver.n_labels + 1):
        ids = [v for v in quiver.mutable_ids(label) if quiver.is_interior(v)]
        if ids and all(not quiver.inn[v] for v in ids):
            result.append(label)
    return result


# ------------------------------------------------------------------- folding


def _resolve_representatives(
    quiver: LabeledQuiver, representatives: Optional[Mapping[int, int]]
) -> dict[int, int]:
    chosen: dict[int, int] = {}
    for label in range(1, quiver.n_labels + 1):
        ids = quiver.mutable_ids(label)
        if not ids:
            raise ValueError(f"label {label} missing from quiver: cannot fold")
        if representatives is None:
            rep = min(ids, key=lambda v: (quiver.depths[v], v))
        else:
            if label not in representatives:
                raise ValueError(f"no representative supplied for label {label}")
            rep = representatives[label]
            if not 0 <= rep < quiver.vertex_count or quiver.frozen[rep]:
                raise ValueError(f"representative {rep!r} is not a mutable vertex")
            if quiver.labels[rep] != label:
                raise ValueError(
                    f"representative {rep} has label {quiver.labels[rep]}, expected {label}"
                )
        if not quiver.is_interior(rep):
            raise InteriorExhaustedError(
                f"representative {rep} for label {label} is not interior "
                f"(depth {quiver.depths[rep]} > radius {quiver.interior_radius})"
            )
        chosen[label] = rep
    return chosen


def folding(
    quiver: LabeledQuiver, representatives: Optional[Mapping[int, int]] = None
) -> FramedSeed | ExchangeMatrix:
    """Fold the quiver back onto a matrix (framed: a seed) by orbit sums.

    Entry (i, j) of the folded matrix sums the adjacency entries from the
    representative of label j to every vertex of label i; only the
    representative's neighbors contribute, so each representative must be
    interior.  Defaults pick the minimal-depth vertex per label.
    """
    reps = _resolve_representatives(quiver, representatives)
    n = quiver.n_labels
    b = [[0] * n for _ in range(n)]
    c = [[0] * n for _ in range(n)]
    labels = quiver.labels
    frozen = quiver.frozen
    for label, rep in reps.items():
        col = label - 1
        for u, mult in quiver.out[rep].items():
            # arrows rep -> u contribute +mult to the (u, rep) entry
            (c if frozen[u] else b)[labels[u] - 1][col] += mult
        for u, mult in quiver.inn[rep].items():
            (c if frozen[u] else b)[labels[u] - 1][col] -= mult
    principal = ExchangeMatrix(tuple(tuple(row) for row in b))
    if quiver.framed:
        return FramedSeed(principal, tuple(tuple(row) for row in c))
    return principal


def folding_column(
    quiver: LabeledQuiver, label: int, representative: Optional[int] = None
) -> tuple[tuple[int, ...], Optional[tuple[int, ...]]]:
    """One folded column (principal part, frozen part) at a chosen representative."""
    if not 1 <= label <= quiver.n_labels or not quiver.mutable_ids(label):
        raise ValueError(f"label {label!r} missing from quiver")
    ids = quiver.mutable_ids(label)
    rep = (
        min(ids, key=lambda v: (quiver.depths[v], v))
        if representative is None
        else representative
    )
    if quiver.frozen[rep] or quiver.labels[rep] != label:
        raise ValueError(f"representative {rep!r} is not a mutable vertex of label {label}")
    if not quiver.is_interior(rep):
        raise InteriorExhaustedError(f"representative {rep} is not interior")
    n = quiver.n_labels
    b_col = [0] * n
    c_col = [0] * n
    for u, mult in quiver.out[rep].items():
        (c_col if quiver.frozen[u] else b_col)[quiver.labels[u] - 1] += mult
    for u, mult in quiver.inn[rep].items():
        (c_col if quiver.frozen[u] else b_col)[quiver.labels[u] - 1] -= mult
    return tuple(b_col), tuple(c_col) if quiver.framed else None


def verify_unfolding_commutation(
    matrix: ExchangeMatrix, directions: Sequence[int], m: int
) -> CommutationReport:
    """Check that orbit-mutating the truncation tracks the framed seed.

    Replays the directions as orbit-mutations on the framed truncation and
    as ordinary framed mutations on the extended matrix; after every
    prefix the folding must equal the seed exactly.  Requires interior
    budget m >= 2*len(directions) + 2.
    """
    directions = tuple(directions)
    if m < 2 * len(directions) + 2:
        raise InteriorExhaustedError(
            f"interior budget violated: m={m} but {len(directions)} steps "
            f"need m >= {2 * len(directions) + 2}"
        )
    quiver = build_truncation(matrix, m, framed=True)
    seed = extend(matrix)
    if folding(quiver) != seed:
        return CommutationReport(ok=False, first_divergence=0)
    for step, k in enumerate(directions, start=1):
        quiver = orbit_mutate(quiver, k)
        seed = mutate_framed(seed, k)
        if folding(quiver) != seed:
            return CommutationReport(ok=False, first_divergence=step)
    return CommutationReport(ok=True, first_divergence=None)


# ----------------------------------------------------------------------- DOT


def to_dot(quiver: LabeledQuiver) -> str:
    """Deterministic DOT export: mutable ellipses, frozen boxes, labeled multi-arrows."""
    lines = ["digraph unfolding {"]
    for v in range(quiver.vertex_count):
        if quiver.frozen[v]:
            lines.append(f'  v{v} [shape=box, label="{quiver.labels[v]}′"];')
        else:
            lines.append(f'  v{v} [shape=ellipse, label="v{v} ({quiver.labels[v]})"];')
    for u in range(quiver.vertex_count):
        for v in sorted(quiver.out[u]):
            mult = quiver.out[u][v]
            attr = f" [label={mult}]" if mult > 1 else ""
            lines.append(f"  v{u} -> v{v}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"
