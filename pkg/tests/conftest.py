import sys
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from tropical_hassett.complex import build_delta  # noqa: E402

F = Fraction
HALF = F(1, 2)
WREATH = (F(1, 3),) * 3 + (F(7, 12),) * 3


@lru_cache(maxsize=None)
def complex_for(g, w):
    """Build once per session; complexes are immutable."""
    return build_delta(g, w)


# (g, w) pairs small enough for exhaustive cross-checks
SMALL_CASES = [
    (1, (HALF, HALF)),
    (1, (F(2, 5), F(2, 5))),
    (1, (1,)),
    (0, (1, 1, 1, 1)),
    (0, (1, 1, 1, 1, 1)),
    (0, WREATH),
    (0, (HALF, HALF, 1, 1, 1)),
    (1, (1, 1, 1)),
    (1, (HALF, HALF, HALF)),
    (2, (1,)),
    (2, (HALF, HALF)),
]
