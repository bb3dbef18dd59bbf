import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import adjugate, cofactor_det, matmul
from primeform.classdata import validate_class
from primeform.errors import InvariantError, ValidationError
from primeform.intmatrix import (IntMatrix, adapted_block_matrix, conjugate, is_symplectic,
                                 matrix_order, nonperm_block, perm_block, standard_J,
                                 unimodular_inverse)


def test_perm_block_examples():
    assert perm_block(2).tolist() == [[0, 1], [1, 0]]
    assert perm_block(3).tolist() == [[0, 1, 0], [0, 0, 1], [1, 0, 0]]


def test_nonperm_block_examples():
    assert nonperm_block(2).tolist() == [[-1]]
    assert nonperm_block(3).tolist() == [[0, 1], [-1, -1]]
    N = nonperm_block(3)
    assert (N @ N).tolist() == [[-1, -1], [1, 0]]
    assert (N ** 3).is_identity()


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
def test_blocks_have_order_p(p):
    assert matrix_order(perm_block(p), 2 * p) == p
    assert matrix_order(nonperm_block(p), 2 * p) == p


def test_adapted_block_examples():
    N = nonperm_block(3)
    assert adapted_block_matrix(validate_class(3, (1, 1, 1, 1, 2), 0)) == IntMatrix.block_diag(N, N, N)
    assert adapted_block_matrix(validate_class(2, (1,) * 6, 0)) == -IntMatrix.identity(4)


@pytest.mark.parametrize("p,n,g0", [(3, (1, 2), 1), (5, (1, 1, 3), 1), (7, (1, 2, 4), 0),
                                    (2, (1, 1, 1, 1), 1), (3, (1, 1, 1, 1, 1, 1), 2)])
def test_adapted_block_order_and_trace(p, n, g0):
    c = validate_class(p, n, g0)
    M = adapted_block_matrix(c)
    assert M.shape == (2 * c.g, 2 * c.g)
    assert matrix_order(M, p) == p
    assert M.trace() == 2 - c.t


def test_standard_J():
    assert standard_J(0, 1).tolist() == [[0, 1], [-1, 0]]
    J = standard_J(0, 3)
    assert J.shape == (6, 6) and J[0, 3] == 1 and J[3, 0] == -1
    for a, b in [(0, 3), (2, 1), (3, 0), (4, 2)]:
        J = standard_J(a, b)
        assert J @ J == -IntMatrix.identity(2 * (a + b))


def test_is_symplectic_examples():
    J = standard_J(0, 3)
    assert is_symplectic(IntMatrix.identity(6), J)
    P = perm_block(3)
    assert is_symplectic(IntMatrix.block_diag(P, P), standard_J(3, 0))
    assert not is_symplectic(IntMatrix.block_diag(P, IntMatrix.identity(3)), standard_J(3, 0))
    with pytest.raises(ValueError):
        is_symplectic(IntMatrix.identity(4), J)


def test_matrix_order_examples():
    assert matrix_order(IntMatrix.identity(4), 10) == 1
    assert matrix_order(perm_block(5), 10) == 5
    assert matrix_order(nonperm_block(3), 10) == 3
    assert matrix_order(IntMatrix([[1, 1], [0, 1]]), 50) is None


def test_unimodular_inverse_examples():
    assert unimodular_inverse(IntMatrix.identity(3)).is_identity()
    assert unimodular_inverse(IntMatrix([[1, 1], [0, 1]])).tolist() == [[1, -1], [0, 1]]
    with pytest.raises(InvariantError):
        unimodular_inverse(IntMatrix([[2, 0], [0, 1]]))
    with pytest.raises(InvariantError):
        unimodular_inverse(IntMatrix([[1, 2], [2, 4]]))


def test_conjugate_examples():
    M = IntMatrix([[2, 1], [1, 1]])
    assert conjugate(M, IntMatrix.identity(2)) == M
    assert conjugate(perm_block(2), IntMatrix([[0, 1], [1, 0]])) == perm_block(2)


def test_big_entries_stay_exact():
    A = IntMatrix([[1, 1], [1, 2]])
    B = A ** 200
    # entries are Fibonacci numbers far beyond int64
    assert B.max_abs() > 1 << 200
    assert (B @ (A ** -200)).is_identity()
    assert B.det() == 1


def test_json_and_text_roundtrip():
    M = IntMatrix([[10 ** 30, -1], [0, 7]])
    assert IntMatrix.from_json(M.to_json()) == M
    assert M.to_json()[0][0] == str(10 ** 30)
    assert M.to_text().splitlines()[1].split() == ["0", "7"]
    with pytest.raises(ValidationError):
        IntMatrix.from_json('{"a": 1}')
    with pytest.raises(ValidationError):
        IntMatrix.from_json('[["x"]]')


small = st.integers(-4, 4)


@st.composite
def square(draw, max_n=5):
    n = draw(st.integers(1, max_n))
    return [[draw(small) for _ in range(n)] for _ in range(n)]


@st.composite
def unimodular(draw, max_n=7):
    n = draw(st.integers(1, max_n))
    M = IntMatrix.identity(n)
    for _ in range(draw(st.integers(0, 25))):
        i = draw(st.integers(0, n - 1))
        j = draw(st.integers(0, n - 1))
        rows = IntMatrix.identity(n).tolist()
        if i == j:
            rows[i][i] = -1
        else:
            rows[i][j] = draw(small)
        M = M @ IntMatrix(rows)
    return M


@settings(max_examples=300, deadline=None)
@given(square())
def test_det_matches_cofactor(rows):
    assert IntMatrix(rows).det() == cofactor_det(rows)


@settings(max_examples=200, deadline=None)
@given(unimodular())
def test_inverse_matches_adjugate(M):
    d = cofactor_det(M.tolist()) if M.nrows <= 5 else M.det()
    assert d in (1, -1)
    inv = unimodular_inverse(M)
    assert (inv @ M).is_identity() and (M @ inv).is_identity()
    if M.nrows <= 5:
        assert inv.tolist() == [[d * x for x in r] for r in adjugate(M.tolist())]


@settings(max_examples=100, deadline=None)
@given(square(4), unimodular(4))
def test_conjugate_preserves_similarity_invariants(rows, B):
    M = IntMatrix(rows)
    if M.nrows != B.nrows:
        return
    C = conjugate(M, B)
    assert C.trace() == M.trace()
    assert C.charpoly() == M.charpoly()


@settings(max_examples=100, deadline=None)
@given(square(4), square(4))
def test_matmul_matches_plain_python(a, b):
    if len(a) != len(b):
        return
    assert (IntMatrix(a) @ IntMatrix(b)).tolist() == matmul(a, b)


def test_matmul_object_path_matches_plain_python():
    a = [[3 ** 40, -(2 ** 61)], [5, 7]]
    b = [[2 ** 62, 1], [-1, 3 ** 39]]
    assert (IntMatrix(a) @ IntMatrix(b)).tolist() == matmul(a, b)
