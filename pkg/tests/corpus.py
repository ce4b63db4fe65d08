"""Deterministic matrix corpus shared across the test suite.

The corpus is the 4x4 running example plus 50 random acyclic
sign-skew-symmetric matrices with n <= 4.  Column weights are capped so
unfolding truncations stay small enough for the exhaustive replays; the
running example itself is the heavy stress case.
"""

from __future__ import annotations

import random

from quivermut import ExchangeMatrix, is_acyclic, is_sign_skew_symmetric

CORPUS_SEED = 0x5EED01

EXAMPLE_ROWS = (
    (0, -1, 0, -1),
    (3, 0, -1, 0),
    (0, 5, 0, -2),
    (1, 0, 3, 0),
)


def example_matrix() -> ExchangeMatrix:
    return ExchangeMatrix(EXAMPLE_ROWS)


def _connected(n: int, edges: list[tuple[int, int]]) -> bool:
    seen = {0}
    stack = [0]
    adj: dict[int, list[int]] = {i: [] for i in range(n)}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    while stack:
        i = stack.pop()
        for j in adj[i]:
            if j not in seen:
                seen.add(j)
                stack.append(j)
    return len(seen) == n


def random_acyclic_connected(
    rng: random.Random, n: int, column_cap: int = 3
) -> ExchangeMatrix:
    """Random acyclic sign-skew-symmetric matrix with connected pattern.

    Acyclicity comes from orienting all edges along a random total order;
    magnitudes are drawn against per-column weight budgets so truncation
    branching stays bounded.
    """
    while True:
        order = list(range(n))
        rng.shuffle(order)
        edges = []
        for a in range(n):
            for b in range(a + 1, n):
                if rng.random() < 0.7:
                    edges.append((order[a], order[b]))
        if n > 1 and (not edges or not _connected(n, edges)):
            continue
        rows = [[0] * n for _ in range(n)]
        budget = [column_cap] * n
        feasible = True
        for u, v in edges:
            if budget[u] < 1 or budget[v] < 1:
                feasible = False
                break
            p = rng.randint(1, min(3, budget[v]))
            q = rng.randint(1, min(3, budget[u]))
            rows[u][v] = -p  # edge u -> v of the associated simple digraph
            rows[v][u] = q
            budget[v] -= p
            budget[u] -= q
        if not feasible:
            continue
        matrix = ExchangeMatrix(rows)
        assert is_sign_skew_symmetric(matrix) and is_acyclic(matrix)
        return matrix


def corpus_matrices() -> list[ExchangeMatrix]:
    """The running example followed by 50 reproducible random matrices."""
    rng = random.Random(CORPUS_SEED)
    matrices = [example_matrix()]
    for n in [2] * 15 + [3] * 15 + [4] * 20:
        matrices.append(random_acyclic_connected(rng, n))
    return matrices


def random_sign_skew(rng: random.Random, n: int, max_entry: int = 5) -> ExchangeMatrix:
    """Random sign-skew-symmetric matrix (not necessarily acyclic)."""
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < 0.35:
                continue
            a = rng.randint(1, max_entry)
            b = rng.randint(1, max_entry)
            if rng.random() < 0.5:
                rows[i][j], rows[j][i] = a, -b
            else:
                rows[i][j], rows[j][i] = -a, b
    return ExchangeMatrix(rows)
