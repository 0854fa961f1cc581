import random

import pytest
from flint import nmod_poly

from helpers import BINOMIAL, DESK, GEOMETRIC, random_params
from pfq.algebraic import (
    AnnihilatorRelation,
    annihilator,
    derive_Y,
    iterate_relations,
    one_step_table,
    orbit_X,
    polynomial_matrix_kernel,
    row_residual,
    verify_annihilator,
)
from pfq.dwork import canonical_params, dwork_params, section_data, series_mod_p
from pfq.errors import InvalidArgument, NoKernel, NotGoodReduction
from pfq.polyfp import inflate, poly
from pfq.valuation import has_good_reduction
from pfq.zigzag import as_params


def P(coeffs, p):
    return poly(coeffs, p)


def test_orbit_examples():
    assert set(orbit_X(BINOMIAL, 3)) == {BINOMIAL, as_params("3/2", "1")}
    for p in (2, 3, 5, 7):
        assert orbit_X(as_params("1", "1"), p) == [as_params("1", "1")]


@pytest.mark.parametrize("params", DESK + [as_params("1/3", "1")])
@pytest.mark.parametrize("p", [2, 3, 5])
def test_orbit_is_stable(params, p):
    X = set(orbit_X(params, p))
    again = {canonical_params(dwork_params(x, p, r), p) for x in X for r in range(p)}
    assert again <= X


def test_derive_Y_examples():
    Y = derive_Y(orbit_X(BINOMIAL, 3), 3)
    assert {y.base for y in Y} == {BINOMIAL, as_params("3/2", "1")}
    assert all(y.t == 0 for y in Y)
    Y = derive_Y(orbit_X(as_params("1", "1"), 5), 5)
    assert [(y.base, y.t) for y in Y] == [(as_params("1", "1"), 0)]
    # zero-drift valuation -oo: dropped
    assert derive_Y([as_params("1/3,4/3", "2/3,1")], 11) == []
    assert one_step_table([], 3) == {}


def _table_instances():
    out = [(BINOMIAL, 3), (as_params("1", "1"), 2)]
    rng = random.Random(5)
    for params in DESK + [random_params(rng, max_len=2, max_den=8) for _ in range(15)]:
        for p in (2, 3, 5, 7):
            if has_good_reduction(params, p)[0] and section_data(params, p).nu0 == 0:
                out.append((params, p))
    return out


TABLE_INSTANCES = _table_instances()


@pytest.mark.parametrize("params, p", TABLE_INSTANCES)
def test_one_step_identity(params, p):
    Y = derive_Y(orbit_X(params, p), p)
    table = one_step_table(Y, p)
    for y in Y:
        row = table[y]
        deg = max([0] + [q.high_degree() for q in row.Q.values()])
        T = max(40, p * (1 + deg) + 20)
        assert row_residual(table, y, p, T).is_zero()


@pytest.mark.parametrize("params, p", TABLE_INSTANCES)
def test_second_iterate(params, p):
    Y = derive_Y(orbit_X(params, p), p)
    table = one_step_table(Y, p)
    y0 = next(y for y in Y if y.base == canonical_params(params, p))
    rel = iterate_relations(table, y0, p, 2)[2]
    T = 2 * p * p + 50
    terms = [rel.P] + list(rel.Q.values())
    k = max([0] + [-t.low_degree() for t in terms if not t.is_zero()])
    acc = P(series_mod_p(params, p, T), p).left_shift(k)
    if not rel.P.is_zero():
        acc -= rel.P.shifted(k).to_poly()
    for z, q in rel.Q.items():
        g = inflate(P(series_mod_p(z.shifted, p, T), p), p * p)
        acc -= q.shifted(k).to_poly().mul_low(g, T + k)
    assert acc.truncate(T).is_zero()


def test_kernel_examples():
    p = 7
    x = P([0, 1], p)
    v = polynomial_matrix_kernel([[x, x * x]], p)
    assert v == [x, P([-1], p)]
    v = polynomial_matrix_kernel([[P([], p), P([], p)]], p)
    assert v == [P([1], p), P([], p)]
    with pytest.raises(NoKernel):
        polynomial_matrix_kernel([[P([1], p), P([], p)], [P([], p), P([1], p)]], p)


@pytest.mark.parametrize("seed", range(10))
def test_kernel_random(seed):
    rng = random.Random(seed)
    p = 5
    M = [[P([rng.randrange(p) for _ in range(3)], p) for _ in range(3)] for _ in range(2)]
    v = polynomial_matrix_kernel(M, p)
    assert any(not e.is_zero() for e in v)
    for row in M:
        assert sum((a * b for a, b in zip(row, v)), nmod_poly([], p)).is_zero()
    nonzero = [e for e in v if not e.is_zero()]
    g = nonzero[0]
    for e in nonzero[1:]:
        g = g.gcd(e)
    assert g.degree() == 0


def test_annihilator_examples():
    rel = annihilator(BINOMIAL, 3)
    assert verify_annihilator(rel, BINOMIAL, 200)
    known = AnnihilatorRelation(3, (P([1], 3), P([-1, 1], 3), P([], 3)))
    assert verify_annihilator(known, BINOMIAL, 200)

    rel = annihilator(as_params("", "1/2"), 2)
    assert rel.polynomial == (1,)
    assert verify_annihilator(rel, as_params("", "1/2"), 200)

    rel = annihilator(as_params("1", "1"), 2)
    assert verify_annihilator(rel, as_params("1", "1"), 100)

    with pytest.raises(NotGoodReduction):
        annihilator(as_params("1/3,4/3", "2/3,1"), 11)


def test_verify_examples():
    wrong = AnnihilatorRelation(3, (P([1], 3), P([], 3)))
    assert not verify_annihilator(wrong, BINOMIAL, 50)
    with pytest.raises(InvalidArgument):
        verify_annihilator(AnnihilatorRelation(3, (P([], 3), P([], 3))), BINOMIAL, 50)


def _contract_instances():
    out = []
    for params in DESK:
        for p in (2, 3, 5):
            if not has_good_reduction(params, p)[0]:
                continue
            if len(derive_Y(orbit_X(params, p), p)) <= 4:
                out.append((params, p))
    return out


@pytest.mark.parametrize("params, p", _contract_instances())
def test_annihilator_contract(params, p):
    rel = annihilator(params, p)
    assert any(not v.is_zero() for v in rel.coeffs)
    assert verify_annihilator(rel, params, min(p ** (rel.N + 1), 5000))


def test_geometric_polynomial_relation():
    for p in (2, 3, 5):
        rel = annihilator(GEOMETRIC, p)
        assert verify_annihilator(rel, GEOMETRIC, 300)
