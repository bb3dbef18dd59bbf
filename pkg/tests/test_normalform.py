import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import sweep
from oracles import DERIVED_N_SYMP
from primeform.classdata import enumerate_classes
from primeform.errors import ValidationError
from primeform.intmatrix import IntMatrix, is_symplectic, perm_block, standard_J
from primeform.normalform import candidate_check, layout_permutation, normal_form, parse_rendered, render


def test_worked_example_output():
    r = normal_form(3, (1, 1, 2, 1, 1), 0)
    assert r.M_CAN.tolist() == DERIVED_N_SYMP
    assert r.power == 1 and r.order == 3 and r.trace == -3
    assert r.basis[2] == "Y:4:0" and r.basis[5] == "Y:5:0"


def test_two_fixed_points_is_block_permutation():
    r = normal_form(3, (1, 2), 1)
    P = perm_block(3)
    assert r.M_CAN == IntMatrix.block_diag(P, P)
    assert r.J == standard_J(3, 0)


def test_power_step_changes_matrix_but_keeps_charpoly_family():
    # n = (2,)*6 normalizes to (1,)*6 with power 2
    r = normal_form(3, (2,) * 6, 0)
    base = normal_form(3, (1,) * 6, 0)
    assert r.power == 2
    assert r.M_CAN == base.M_CAN ** 2
    assert r.M_CAN != base.M_CAN
    assert r.M_CAN.charpoly() == base.M_CAN.charpoly()  # Phi_3^4 either way


def test_hyperelliptic():
    for g in (2, 3, 4):
        assert normal_form(2, (1,) * (2 * g + 2), 0).M_CAN == -IntMatrix.identity(2 * g)


def test_rejects_bad_input():
    bad = [(4, (1, 3), 1), (3, (1, 1), 1), (3, (0, 1, 2), 1), (3, (1, 2), -1),
           (2, (1, 1, 1), 0), (3, (2, 2, 2), 0)]
    for args in bad:
        with pytest.raises(ValidationError):
            normal_form(*args)


def test_distinct_classes_give_distinct_matrices():
    for p in (3, 5, 7):
        for g in range(2, 8):
            seen = {}
            for c in enumerate_classes(g, p):
                key = normal_form(c.p, c.n, c.g0).M_CAN
                assert key not in seen, (c, seen.get(key))
                seen[key] = c


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_permutation_invariance(data):
    classes = sweep((3, 5, 7), 7)
    c = data.draw(st.sampled_from(classes))
    k = data.draw(st.integers(1, c.p - 1))
    n = tuple(k * x % c.p for x in c.n)
    n = tuple(data.draw(st.permutations(n)))
    r = normal_form(c.p, n, c.g0)
    again = normal_form(c.p, tuple(sorted(n)), c.g0)
    assert render(r) == render(again)


def test_outputs_on_sweep():
    for c in sweep((2, 3, 5, 7), 12):
        r = normal_form(c.p, c.n, c.g0)
        assert (r.M_CAN ** c.p).is_identity() and not r.M_CAN.is_identity()
        assert is_symplectic(r.M_CAN, r.J)
        assert r.trace == 2 - c.t


def test_free_action_normal_form():
    r = normal_form(3, (), 2)
    assert r.trace == 2 and r.order == 3 and r.M_CAN.shape == (8, 8)


def test_candidate_check_examples():
    v = candidate_check(-IntMatrix.identity(4))
    assert v.order == 2 and v.t == 6 and len(v.tuples) == 1
    assert v.verdict == "matches-normal-form-invariants"
    with pytest.raises(ValidationError):
        candidate_check(standard_J(1, 0))          # order 4
    with pytest.raises(ValidationError):
        candidate_check(IntMatrix([[1, 1], [0, 2]]))


def test_candidate_check_conjugate_is_not_literal_match():
    r = normal_form(3, (1, 1, 2, 1, 1), 0)
    S = IntMatrix([[1, 0, 0, 1, 0, 0], [0, 1, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0],
                   [0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1]])
    assert is_symplectic(S, r.J)
    M = S @ r.M_CAN @ S ** -1
    v = candidate_check(M, r.J)
    assert v.verdict in ("necessary-conditions-met", "matches-normal-form-invariants")
    assert any(c.n == (1, 1, 1, 1, 2) for c in v.charpoly_matches)
    assert candidate_check(r.M_CAN, r.J).verdict == "matches-normal-form-invariants"


def test_candidate_check_permuted_layout():
    r = normal_form(3, (1, 2), 1)
    perm = layout_permutation(3, 0)
    assert candidate_check(r.M_CAN.permuted(perm), r.J.permuted(perm)).verdict.startswith("matches")


def _handle_sum(blocks):
    """Symplectic matrix acting by the given 2x2 blocks on the handles (a_i, b_i)."""
    g = len(blocks)
    rows = [[0] * (2 * g) for _ in range(2 * g)]
    for i, B in enumerate(blocks):
        for r in range(2):
            for c in range(2):
                rows[i + r * g][i + c * g] = B[r][c]
    return IntMatrix(rows)


def test_candidate_check_impossible_trace():
    rot = [[0, 1], [-1, -1]]                 # order 3, trace -1
    one = [[1, 0], [0, 1]]
    M = _handle_sum([rot, one, one])         # trace 3 > 2
    assert is_symplectic(M, standard_J(3, 0)) and (M ** 3).is_identity()
    v = candidate_check(M)
    assert v.trace == 3 and v.verdict == "impossible"
    M = _handle_sum([rot, one])              # t = 1 has no admissible tuple for p = 3
    v = candidate_check(M)
    assert v.t == 1 and v.tuples == [] and v.verdict == "impossible"


def test_render_roundtrip_and_formats():
    r = normal_form(3, (1, 1, 2, 1, 1), 0)
    data = render(r)
    d = parse_rendered(data)
    assert d["matrix"] == r.M_CAN and d["n"] == [1, 1, 1, 1, 2]
    assert render(r) == data
    with_steps = json.loads(render(r, with_steps=True))
    assert len(with_steps["steps"]) == 3
    text = render(r, "text").decode()
    assert text.startswith("p=3 n=(1,1,1,1,2) g0=0 genus=3 t=5")
    rows = render([r, normal_form(3, (1, 2), 1)], "csv").decode().splitlines()
    assert rows[0].startswith("p,n,g0") and len(rows) == 3
    with pytest.raises(ValidationError):
        render(r, "xml")


def test_repeatability_on_random_classes():
    rng = random.Random(7)
    pool = list(sweep((2, 3, 5, 7), 10))
    for c in rng.sample(pool, 20):
        assert render(normal_form(c.p, c.n, c.g0)) == render(normal_form(c.p, c.n, c.g0))
