"""Intersection pairings on H_1 of the cover.

Two independent routes are provided.  ``adapted_intersection`` evaluates the
closed-form pairing between the h-images of the curves attached to the
fixed points, labelled by pairs ``(s, v)``.  ``symbol_intersection`` reads
the pairing off a one-vertex surface symbol.  The two are tied together by
``identification_matrix``.
"""

from typing import NamedTuple

from .classdata import mod_inverse
from .errors import InvariantError, ValidationError
from .intmatrix import IntMatrix, nonperm_block, standard_J, unimodular_inverse


class PairLabel(NamedTuple):
    s: int
    v: int

    def __str__(self):
        return f"X_{self.s},{self.v}"


def all_pairs(cls):
    return [PairLabel(s, v) for s in range(1, cls.p) for v in range(1, cls.m[s - 1] + 1)]


def kept_pairs(cls):
    """Every ``(s, v)`` in lexicographic order except the two smallest."""
    if cls.t < 2:
        raise ValidationError("kept pairs need t >= 2")
    return all_pairs(cls)[2:]


def _bracket(cls):
    shat = min(s for s in range(1, cls.p) if cls.m[s - 1])
    qhat = mod_inverse(shat, cls.p)
    p = cls.p
    return lambda x: (qhat * x) % p


def pair_intersection(cls, a, b, k, _br=None):
    """``h^0(X_a) x h^k(X_b)`` for ``a <= b``; one of -1, 0, +1."""
    br = _br or _bracket(cls)
    r, s = a.s, b.s
    k %= cls.p
    if a < b:
        lo, mid, hi = br(k), br(r), br(k + s)
        if lo < mid <= hi:
            return 1
        if hi < mid <= lo:
            return -1
        return 0
    lo, mid, hi = br(k), br(s), br(k + s)
    if lo <= mid < hi:
        return 1
    if hi < mid < lo:
        return -1
    return 0


def pair_block(cls):
    """The ``2q x 2q`` pairing on the kept pairs.

    Basis is pair-major: ``h^0(X), h^1(X), ..., h^{p-2}(X)`` for each kept
    pair in turn.
    """
    p = cls.p
    kept = kept_pairs(cls)
    br = _bracket(cls)
    basis = [(a, j) for a in kept for j in range(p - 1)]
    # h^j X_a x h^k X_b depends only on (a, b, k - j); tabulate once
    table = {}
    for a in kept:
        for b in kept:
            if a <= b:
                for d in range(p):
                    table[a, b, d] = pair_intersection(cls, a, b, d, br)
    rows = []
    for a, j in basis:
        row = []
        for b, k in basis:
            if a <= b:
                row.append(table[a, b, (k - j) % p])
            else:
                row.append(-table[b, a, (j - k) % p])
        rows.append(row)
    return IntMatrix(rows, len(basis))


def adapted_intersection(cls):
    """Full ``2g x 2g`` pairing in the adapted layout (A images | B images | Y part).

    For a free action the layout is (A images, alpha | B images, beta) and
    the form is the standard one.
    """
    if cls.t == 0:
        return standard_J(cls.p * (cls.g0 - 1) + 1, 0)
    J_ab = standard_J(cls.p * cls.g0, 0)
    if cls.t == 2:
        return J_ab
    return IntMatrix.block_diag(J_ab, pair_block(cls))


def offsets(cls):
    """``c_r = n_1 + ... + n_{r-1} mod p`` for ``r = 1..t`` (index 0 is ``c_1 = 0``)."""
    out, acc = [], 0
    for x in cls.n:
        out.append(acc)
        acc = (acc + x) % cls.p
    return out


def identification_matrix(cls):
    """Row-convention map from pair coordinates to presentation coordinates.

    The presentation generator ``Y:r:k`` is the curve ``h^{k + c_r}`` of the
    ``(r-2)``-th kept pair, so each block is a power of the non-permutation
    block.
    """
    if cls.t <= 2:
        return IntMatrix.identity(0)
    N = nonperm_block(cls.p)
    c = offsets(cls)
    return IntMatrix.block_diag(*(N ** c[r - 1] for r in range(3, cls.t + 1)))


def presentation_intersection(cls):
    """Pairing on the presentation generators (A | B | Y), from the closed form.

    The Y curves of a surface symbol are oriented opposite to the pair
    curves, which accounts for the overall sign on the Y block.
    """
    J_ab = standard_J(cls.p * cls.g0, 0)
    if cls.t <= 2:
        return J_ab
    T = identification_matrix(cls)
    return IntMatrix.block_diag(J_ab, -(T @ pair_block(cls) @ T.T))


# ---------------------------------------------------------------------------
# symbol oracle


def interleave_matrix(word, basis=None):
    """The arc-count matrix ``C`` of a one-vertex symbol.

    ``C[x, y] = s(y+) - s(y-)`` where ``s(o)`` is 1 when occurrence ``o``
    lies on the forward arc from ``x+`` to ``x-``.
    """
    n = len(word)
    pos = {}
    for i, (g, s) in enumerate(word):
        if (g, s) in pos:
            raise ValidationError(f"letter {g}{'+' if s > 0 else '-'} occurs twice")
        pos[g, s] = i
    if basis is None:
        basis = []
        for g, _ in word:
            if g not in basis:
                basis.append(g)
    for g in basis:
        if (g, 1) not in pos or (g, -1) not in pos:
            raise ValidationError(f"generator {g} does not occur once with each sign")
    if len(basis) * 2 != n:
        raise ValidationError("symbol has letters outside the basis")
    rows = []
    for x in basis:
        a, b = pos[x, 1], pos[x, -1]
        span = (b - a) % n
        row = []
        for y in basis:
            if y == x:
                row.append(0)
                continue
            on_plus = 1 if (pos[y, 1] - a) % n < span else 0
            on_minus = 1 if (pos[y, -1] - a) % n < span else 0
            row.append(on_plus - on_minus)
        rows.append(row)
    return IntMatrix(rows, len(basis))


def symbol_intersection(word, basis=None):
    """Algebraic intersection of the edges of a one-vertex surface symbol.

    The arc counts ``C`` describe how the dual chords cross; the edge
    pairing is ``-C^{-1}``.  On ``a b a' b'`` this gives ``a x b = +1``.
    """
    C = interleave_matrix(word, basis)
    if C != -C.T:
        raise InvariantError("arc-count matrix is not antisymmetric")
    return -unimodular_inverse(C)
