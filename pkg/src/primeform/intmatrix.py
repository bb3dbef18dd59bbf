"""Dense exact-integer matrices and the block matrices used throughout.

Entries are Python ints, so there is no overflow.  Products go through an
int64 numpy kernel when a bound on the result proves it is safe, and
through object arrays otherwise; either way the result is exact.

Convention for action matrices: row ``i`` holds the coordinates of the image
of basis vector ``i``.  With that convention the permutation block below
sends ``e_0 -> e_1 -> ... -> e_{p-1} -> e_0``.
"""

import json

import numpy as np

from .errors import InvariantError, ValidationError

_INT64_SAFE = 1 << 62


class IntMatrix:
    """Immutable rectangular matrix of Python ints."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows, ncols=None):
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValidationError("ragged matrix")
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols

    # construction -----------------------------------------------------

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, nrows, ncols=None):
        ncols = nrows if ncols is None else ncols
        return cls([[0] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def from_columns(cls, cols, nrows=None):
        cols = [list(c) for c in cols]
        if nrows is None:
            nrows = len(cols[0]) if cols else 0
        return cls([[c[i] for c in cols] for i in range(nrows)], len(cols))

    @classmethod
    def block_diag(cls, *blocks):
        n = sum(b.nrows for b in blocks)
        m = sum(b.ncols for b in blocks)
        out = [[0] * m for _ in range(n)]
        r = c = 0
        for b in blocks:
            for i, row in enumerate(b.rows):
                out[r + i][c:c + b.ncols] = row
            r += b.nrows
            c += b.ncols
        return cls(out, m)

    @classmethod
    def from_numpy(cls, arr):
        return cls(arr.tolist(), arr.shape[1])

    # basic protocol ---------------------------------------------------

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self.rows == other.rows and self.shape == other.shape

    def __hash__(self):
        return hash((self.shape, self.rows))

    def __repr__(self):
        return f"IntMatrix({[list(r) for r in self.rows]})"

    def tolist(self):
        return [list(r) for r in self.rows]

    def to_numpy(self, dtype=object):
        return np.array(self.tolist(), dtype=dtype).reshape(self.nrows, self.ncols)

    def row(self, i):
        return self.rows[i]

    def column(self, j):
        return tuple(r[j] for r in self.rows)

    @property
    def T(self):
        return IntMatrix(zip(*self.rows), self.nrows) if self.nrows else IntMatrix.zeros(self.ncols, 0)

    def max_abs(self):
        return max((abs(x) for r in self.rows for x in r), default=0)

    def trace(self):
        self._need_square()
        return sum(self.rows[i][i] for i in range(self.nrows))

    def is_identity(self):
        return self.nrows == self.ncols and all(
            x == (1 if i == j else 0) for i, r in enumerate(self.rows) for j, x in enumerate(r))

    def submatrix(self, rows, cols):
        return IntMatrix([[self.rows[i][j] for j in cols] for i in rows], len(cols))

    def permuted(self, order):
        """Re-express in the basis ``order`` (a list of old indices)."""
        return self.submatrix(order, order)

    # arithmetic -------------------------------------------------------

    def __add__(self, other):
        self._same_shape(other)
        return IntMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def __sub__(self, other):
        self._same_shape(other)
        return IntMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def __neg__(self):
        return IntMatrix([[-a for a in r] for r in self.rows], self.ncols)

    def scale(self, k):
        return IntMatrix([[k * a for a in r] for r in self.rows], self.ncols)

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        if not self.nrows or not other.ncols:
            return IntMatrix.zeros(self.nrows, other.ncols)
        bound = self.max_abs() * other.max_abs() * max(self.ncols, 1)
        if bound < _INT64_SAFE:
            prod = self.to_numpy(np.int64) @ other.to_numpy(np.int64)
        else:
            prod = self.to_numpy() @ other.to_numpy()
        return IntMatrix.from_numpy(prod)

    def __pow__(self, k):
        self._need_square()
        if k < 0:
            return unimodular_inverse(self) ** (-k)
        result = IntMatrix.identity(self.nrows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    def det(self):
        """Determinant by fraction-free (Bareiss) elimination."""
        self._need_square()
        n = self.nrows
        if n == 0:
            return 1
        a = [list(r) for r in self.rows]
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k]), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            piv = a[k][k]
            for i in range(k + 1, n):
                aik = a[i][k]
                row_i, row_k = a[i], a[k]
                for j in range(k + 1, n):
                    row_i[j] = (piv * row_i[j] - aik * row_k[j]) // prev
            prev = piv
        return sign * a[n - 1][n - 1]

    def charpoly(self):
        """Characteristic polynomial ``det(xI - M)`` as coefficients, leading first."""
        from sympy import ZZ
        from sympy.polys.matrices import DomainMatrix

        self._need_square()
        return [int(c) for c in DomainMatrix.from_list(self.tolist(), ZZ).charpoly()]

    # serialization ----------------------------------------------------

    def to_json(self):
        return [[str(x) for x in r] for r in self.rows]

    @classmethod
    def from_json(cls, data):
        if isinstance(data, (str, bytes)):
            data = json.loads(data)
        if not isinstance(data, list) or any(not isinstance(r, list) for r in data):
            raise ValidationError("matrix must be a JSON array of rows")
        try:
            return cls([[int(x) for x in r] for r in data])
        except (TypeError, ValueError) as exc:
            raise ValidationError(f"bad matrix entry: {exc}") from None

    def to_text(self):
        if not self.nrows:
            return ""
        width = max(len(str(x)) for r in self.rows for x in r)
        return "\n".join(" ".join(str(x).rjust(width) for x in r) for r in self.rows)

    # helpers ----------------------------------------------------------

    def _need_square(self):
        if self.nrows != self.ncols:
            raise ValueError(f"square matrix required, got {self.shape}")

    def _same_shape(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")


def perm_block(p):
    """The ``p x p`` cyclic permutation: superdiagonal ones, one bottom-left."""
    rows = [[0] * p for _ in range(p)]
    for i in range(p - 1):
        rows[i][i + 1] = 1
    rows[p - 1][0] = 1
    return IntMatrix(rows, p)


def nonperm_block(p):
    """The ``(p-1) x (p-1)`` companion block with a last row of -1's."""
    d = p - 1
    rows = [[0] * d for _ in range(d)]
    for i in range(d - 1):
        rows[i][i + 1] = 1
    rows[d - 1] = [-1] * d
    return IntMatrix(rows, d)


def adapted_block_matrix(cls):
    """Action of ``h`` on an adapted basis, ordered (A images | B images | Y images).

    For a free action (``t = 0``) the two fixed curves sit at the end of
    their halves, each with a 1x1 identity block.
    """
    p = cls.p
    P = perm_block(p)
    if cls.t == 0:
        half = [P] * (cls.g0 - 1) + [IntMatrix.identity(1)]
        return IntMatrix.block_diag(*(half + half))
    N = nonperm_block(p)
    return IntMatrix.block_diag(*([P] * (2 * cls.g0) + [N] * (cls.t - 2)))


def standard_J(pg0, q):
    """Two-block symplectic form: a ``pg0`` pair block then a ``q`` pair block."""
    n = 2 * (pg0 + q)
    rows = [[0] * n for _ in range(n)]
    for off, size in ((0, pg0), (2 * pg0, q)):
        for i in range(size):
            rows[off + i][off + size + i] = 1
            rows[off + size + i][off + i] = -1
    return IntMatrix(rows, n)


def is_symplectic(M, J):
    if M.shape != J.shape or M.nrows != M.ncols:
        raise ValueError(f"dimension mismatch {M.shape} vs {J.shape}")
    return M.T @ J @ M == J


def matrix_order(M, bound):
    """Least ``k <= bound`` with ``M**k == I``, or None."""
    M._need_square()
    P = M
    for k in range(1, bound + 1):
        if P.is_identity():
            return k
        P = P @ M
    return None


def unimodular_inverse(M):
    """Exact inverse of a determinant +-1 matrix.

    Uses fraction-free Gauss-Jordan elimination on ``[M | I]``; every
    division is exact, and at the end the left block is ``det * I``.
    """
    M._need_square()
    n = M.nrows
    a = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(M.rows)]
    width = 2 * n
    prev = 1
    for k in range(n):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                raise InvariantError("matrix is not unimodular (det = 0)", matrix=M.to_json())
            a[k], a[swap] = a[swap], a[k]
        piv = a[k][k]
        row_k = a[k]
        for i in range(n):
            if i == k:
                continue
            row_i = a[i]
            aik = row_i[k]
            for j in range(width):
                num = piv * row_i[j] - aik * row_k[j]
                quo, rem = divmod(num, prev)
                if rem:
                    raise InvariantError("inexact division in fraction-free elimination")
                row_i[j] = quo
        prev = piv
    # The left block is now d*I with d = +-det(M); the right block is d*M^{-1}.
    det = a[n - 1][n - 1]
    if abs(det) != 1:
        raise InvariantError(f"matrix is not unimodular (det = {det})", matrix=M.to_json())
    out = []
    for i in range(n):
        d = a[i][i]
        if d != det:
            raise InvariantError("fraction-free elimination lost the determinant")
        out.append([x * det for x in a[i][n:]])
    return IntMatrix(out, n)


def conjugate(M, B):
    """``B M B^{-1}`` for unimodular ``B``."""
    return B @ M @ unimodular_inverse(B)
