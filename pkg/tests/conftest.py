import sys
from pathlib import Path

# Make the sibling corpus module importable regardless of invocation directory.
sys.path.insert(0, str(Path(__file__).resolve().parent))
