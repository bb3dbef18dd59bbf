import functools
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from primeform.classdata import enumerate_classes, normalize_class  # noqa: E402


@functools.lru_cache(maxsize=None)
def sweep(primes, gmax):
    """Normalized classes for the given primes and ``2 <= g <= gmax``."""
    out = []
    for p in primes:
        for g in range(2, gmax + 1):
            for c in enumerate_classes(g, p):
                out.append(normalize_class(c)[0])
    return tuple(out)
