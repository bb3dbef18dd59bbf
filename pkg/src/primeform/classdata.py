"""Conjugacy-class data for prime-order mapping classes.

A class is given by a prime ``p``, the quotient genus ``g0`` and the tuple
of complementary rotation numbers ``n = (n_1, ..., n_t)`` at the ``t`` fixed
points.  Everything here is small modular arithmetic and bookkeeping.
"""

from dataclasses import dataclass
from itertools import combinations_with_replacement

from .errors import ValidationError


def is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def mod_inverse(a, p):
    """Inverse of ``a`` modulo the prime ``p``, as a residue in [1, p-1]."""
    if a % p == 0:
        raise ValidationError(f"{a} is not invertible modulo {p}")
    return pow(a, -1, p)


def genus_of(p, t, g0):
    """Genus of the cover from Riemann-Hurwitz.

    ``2g = 2*p*g0 + (p-1)*(t-2)`` when ``t > 0`` and ``2g = 2*p*(g0-1) + 2``
    when the action is free.
    """
    if t == 0:
        if g0 < 2:
            raise ValidationError("a free action needs quotient genus g0 >= 2")
        twice = 2 * p * (g0 - 1) + 2
    else:
        twice = 2 * p * g0 + (p - 1) * (t - 2)
    if twice % 2:
        raise ValidationError(f"Riemann-Hurwitz gives odd 2g = {twice}")
    g = twice // 2
    if g < 2:
        raise ValidationError(f"genus {g} < 2")
    return g


@dataclass(frozen=True)
class ConjugacyClass:
    p: int
    n: tuple
    g0: int
    g: int

    @property
    def t(self):
        return len(self.n)

    @property
    def q(self):
        """Half the size of the non-permutation part of the adapted matrix."""
        return (self.p - 1) * max(self.t - 2, 0) // 2

    @property
    def m(self):
        """Multiplicity vector: ``m[j-1]`` counts the ``n_i`` equal to ``j``."""
        return tuple(sum(1 for x in self.n if x == j) for j in range(1, self.p))

    @property
    def key(self):
        return (self.p, self.g0, tuple(sorted(self.n)))

    def __str__(self):
        body = ",".join(map(str, self.n))
        return f"p={self.p} g0={self.g0} n=({body}) g={self.g}"


@dataclass(frozen=True)
class RotationData:
    n: tuple
    s: tuple
    pr: tuple
    m: tuple


def validate_class(p, n, g0):
    """Check the admissibility conditions and return a ``ConjugacyClass``."""
    p, g0 = int(p), int(g0)
    n = tuple(int(x) for x in n)
    if not is_prime(p):
        raise ValidationError(f"p = {p} is not prime")
    if g0 < 0:
        raise ValidationError("g0 must be non-negative")
    bad = [x for x in n if not 1 <= x <= p - 1]
    if bad:
        raise ValidationError(f"entries {bad} are outside [1, {p - 1}]")
    if len(n) == 1:
        raise ValidationError("t = 1 is impossible: one nonzero residue cannot sum to 0")
    if sum(n) % p:
        raise ValidationError(f"sum of n is {sum(n)}, not 0 mod {p}")
    if p == 2 and len(n) % 2:
        raise ValidationError("p = 2 needs an even number of fixed points")
    g = genus_of(p, len(n), g0)
    return ConjugacyClass(p, n, g0, g)


def normalize_class(cls):
    """Rescale so the smallest entry becomes 1.

    Returns ``(normalized_class, power)`` where ``power`` is the smallest
    entry of the input.  Free actions (``t = 0``) come back unchanged with
    power 1.
    """
    if cls.t == 0:
        return cls, 1
    p = cls.p
    n = sorted(cls.n)
    n1 = n[0]
    s1 = mod_inverse(n1, p)
    scaled = tuple(sorted(s1 * x % p for x in n))
    return ConjugacyClass(p, scaled, cls.g0, cls.g), n1


def rotation_data(cls):
    p = cls.p
    s = tuple(mod_inverse(x, p) for x in cls.n)
    pr = tuple((p - 1) * mod_inverse(si, p) % p for si in s)
    return RotationData(cls.n, s, pr, cls.m)


def enumerate_classes(g, p):
    """All admissible classes of order ``p`` on a genus ``g`` surface.

    Sorted by quotient genus, then lexicographically by ``n``.  The free
    action (``t = 0``) is included when it exists.
    """
    if g < 2 or not is_prime(p):
        return []
    found = {}
    if (g - 1) % p == 0 and (g - 1) // p + 1 >= 2:
        c = ConjugacyClass(p, (), (g - 1) // p + 1, g)
        found[c.key] = c
    for t in range(2, 2 * g + 3):
        rest = 2 * g - (p - 1) * (t - 2)
        if rest < 0 or rest % (2 * p):
            continue
        g0 = rest // (2 * p)
        for n in combinations_with_replacement(range(1, p), t):
            if sum(n) % p == 0:
                c = ConjugacyClass(p, n, g0, g)
                found[c.key] = c
    return sorted(found.values(), key=lambda c: (c.g0, c.n))
