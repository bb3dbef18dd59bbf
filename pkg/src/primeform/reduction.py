"""Tight-linking reduction of a one-vertex surface symbol.

Each step takes the leftmost letter ``a`` and the first letter ``b`` linked
with it, so that the symbol reads ``a W1 b W2 a^-1 W3 b^-1 W4``.  With
``M = a W1 b W2 a^-1`` and ``N = W3 W2 a^-1`` the symbol equals
``[M, N] W3 W2 W1 W4``; the classes of ``M`` and ``N`` replace those of
``a`` and ``b`` in the homology basis.  When the symbol already starts with
``a b a^-1 b^-1`` that commutator is taken as it is.

Matrices use the row convention (row ``i`` = image of basis vector ``i``).
If the new basis is given by the columns of ``B`` in old coordinates, the
action becomes ``B^T M B^{-T}``.
"""

from dataclasses import dataclass, field, replace
from typing import NamedTuple

import numpy as np

from .errors import InvariantError, ValidationError
from .intmatrix import IntMatrix
from .words import commutator, cyclic_reduce, format_letter, format_word, is_freely_reduced

_SAFE = 1 << 62


class Link(NamedTuple):
    a: tuple
    b: tuple
    W1: tuple
    W2: tuple
    W3: tuple
    W4: tuple

    @property
    def tight(self):
        return not (self.W1 or self.W2 or self.W3)


def free_reduce(sym):
    """Cancel adjacent inverse pairs, including across the seam."""
    if not sym:
        raise ValidationError("empty symbol")
    out = cyclic_reduce(sym)
    if not out:
        raise ValidationError("symbol reduces to the empty word")
    return out


def find_link(sym):
    """Split ``sym`` as ``a W1 b W2 a^-1 W3 b^-1 W4`` with ``a`` the leftmost letter."""
    if not sym:
        raise ValidationError("empty symbol")
    pos = {}
    for i, (g, s) in enumerate(sym):
        pos[g, s] = i
    a = sym[0]
    ja = pos.get((a[0], -a[1]))
    if ja is None:
        raise ValidationError("not a one-vertex surface symbol: "
                              f"{format_letter(a)} has no inverse")
    for ib in range(1, ja):
        b = sym[ib]
        jb = pos.get((b[0], -b[1]))
        if jb is not None and jb > ja:
            return Link(a, b, sym[1:ib], sym[ib + 1:ja], sym[ja + 1:jb], sym[jb + 1:])
    raise ValidationError(f"not a one-vertex surface symbol: {format_letter(a)} is not linked")


@dataclass
class ReductionState:
    P: tuple
    Q: tuple
    M: np.ndarray
    V: np.ndarray
    basis: list
    index: dict
    pairs: list = field(default_factory=list)
    steps: list = field(default_factory=list)
    blocks: list = field(default_factory=list)

    @classmethod
    def start(cls, qhat, M0, lrhat, edges):
        n = len(edges)
        if M0.shape != (n, n):
            raise ValidationError(f"matrix is {M0.shape}, symbol has {n} edges")
        M = _as_array(M0)
        V = np.eye(n, dtype=np.int64)
        return cls(tuple(lrhat), tuple(qhat), M, V, [str(g) for g in edges],
                   {g: i for i, g in enumerate(edges)})

    def matrix(self):
        return IntMatrix.from_numpy(self.M)


def _as_array(M):
    arr = M.to_numpy()
    if M.max_abs() < (1 << 30):
        arr = arr.astype(np.int64)
    return arr


def _maxabs(a):
    return int(np.abs(a).max()) if a.size else 0


def _changed(col, i):
    return int(any(int(v) != (1 if j == i else 0) for j, v in enumerate(col)))


def _upcast(*arrays):
    return tuple(a.astype(object) for a in arrays)


def link_step(state):
    """One reduction step; returns a new state."""
    P = state.P
    if not is_freely_reduced(P, cyclic=True):
        raise InvariantError("free reduction would fire", symbol=format_word(P))
    link = find_link(P)
    a, b = link.a, link.b
    abar = (a[0], -a[1])
    if link.tight:
        Mw, Nw = (a,), (b,)
        rest = link.W4
    else:
        Mw = (a,) + link.W1 + (b,) + link.W2 + (abar,)
        Nw = link.W3 + link.W2 + (abar,)
        rest = link.W3 + link.W2 + link.W1 + link.W4
    if len(rest) != len(P) - 4:
        raise InvariantError("step did not shorten the symbol by four")

    n = len(state.basis)
    idx = state.index
    x = np.zeros(n, dtype=np.int64)
    y = np.zeros(n, dtype=np.int64)
    for vec, word in ((x, Mw), (y, Nw)):
        for g, s in word:
            vec[idx[g]] += s
    ia, ib = idx[a[0]], idx[b[0]]
    xa, xb, ya, yb = int(x[ia]), int(x[ib]), int(y[ia]), int(y[ib])
    det = xa * yb - ya * xb
    if det not in (1, -1):
        raise InvariantError(f"basis change has determinant {det}",
                             a=format_letter(a), b=format_letter(b))
    # columns ia, ib of B^{-1}: solve the 2x2 minor, then back-substitute
    inv2 = ((yb * det, -ya * det), (-xb * det, xa * det))
    D = []
    for unit in ((1, 0), (0, 1)):
        wa = inv2[0][0] * unit[0] + inv2[0][1] * unit[1]
        wb = inv2[1][0] * unit[0] + inv2[1][1] * unit[1]
        w = -x * wa - y * wb
        w[ia], w[ib] = wa, wb
        w[ia if unit[0] else ib] -= 1
        D.append(w)
    Da, Db = D

    M, V = state.M, state.V
    if M.dtype != object:
        step = max(_maxabs(Da), _maxabs(Db), _maxabs(x), _maxabs(y)) + 1
        if n * step * step * (_maxabs(M) + 1) * 3 >= _SAFE:
            M, V = _upcast(M, V)
    if M.dtype == object:
        x, y, Da, Db = _upcast(x, y, Da, Db)
    X = M + np.outer(M[:, ia], Da) + np.outer(M[:, ib], Db)
    Mn = X.copy()
    Mn[ia, :] = x @ X
    Mn[ib, :] = y @ X
    Vn = V.copy()
    Vn[:, ia] = V @ x
    Vn[:, ib] = V @ y
    if Vn.dtype != object and _maxabs(Vn) >= (1 << 40):
        Vn = Vn.astype(object)

    k = len(state.pairs) + 1
    basis = list(state.basis)
    basis[ia], basis[ib] = f"M{k}", f"N{k}"
    record = {
        "step": k,
        "a": format_letter(a),
        "b": format_letter(b),
        "W_lengths": [len(link.W1), len(link.W2), len(link.W3), len(link.W4)],
        "tight": link.tight,
        "B_columns": {basis[ia]: [int(v) for v in x], basis[ib]: [int(v) for v in y]},
        "B_det": det,
        "changed_columns": _changed(x, ia) + _changed(y, ib),
        "basis": basis,
        "M": format_word(Mw),
        "N": format_word(Nw),
        "P": format_word(rest),
    }
    return replace(state, P=rest, Q=state.Q + commutator(Mw, Nw), M=Mn, V=Vn, basis=basis,
                   pairs=state.pairs + [(Mw, Nw)], steps=state.steps + [record],
                   blocks=state.blocks + [(ia, ib)])


class Tightened(NamedTuple):
    Q: tuple
    M_CAN: IntMatrix
    V: IntMatrix
    basis: list
    pairs: list
    steps: list


def tighten(qhat, M0, lrhat, edges=None):
    """Reduce ``lrhat`` to commutators and carry ``M0`` along.

    ``edges`` fixes the coordinate order of ``M0`` (default: order of first
    appearance in ``lrhat``).  The result is in the order
    (first members of the pairs | second members).
    """
    if edges is None:
        edges = []
        for g, _ in lrhat:
            if g not in edges:
                edges.append(g)
    if not lrhat:
        n = M0.nrows
        return Tightened(tuple(qhat), M0, IntMatrix.identity(n), [str(g) for g in edges], [], [])
    if len(lrhat) % 4:
        raise ValidationError("symbol length is not divisible by 4")
    q = len(lrhat) // 4
    state = ReductionState.start(qhat, M0, lrhat, edges)
    for _ in range(q):
        if not state.P:
            break
        state = link_step(state)
    if state.P:
        raise InvariantError(f"reduction did not finish in {q} steps", remaining=format_word(state.P))
    order = [i for i, _ in state.blocks] + [j for _, j in state.blocks]
    M = state.M[np.ix_(order, order)]
    V = state.V[:, order]
    return Tightened(state.Q, IntMatrix.from_numpy(M), IntMatrix.from_numpy(V),
                     [state.basis[i] for i in order], state.pairs, state.steps)


def pair_words(result):
    """The commutator pairs as text, for audit output."""
    return [(format_word(m), format_word(n)) for m, n in result.pairs]

