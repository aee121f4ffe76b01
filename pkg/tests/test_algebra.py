import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from efl.auxgraph import build_aux
from efl.coefficients import (
    as_exponent,
    coefficient_by_expansion,
    coefficient_by_formula,
    coefficient_by_orientations,
    completions,
    prime_orientation_count,
    default_grid,
    enumerate_vc_monomials,
    exponent_from_json,
    exponent_to_json,
    maximal_bounded_targets,
    sample_vc_monomials,
    vc_criterion,
)
from efl.families import default_field, eval_P, expand_P, flatten_point, make_evaluator, poly_kind
from efl.fields import GF, QQ, determinant, field_from_tag, is_prime
from efl.hypergraph import parse_hypergraph
from efl.orientation import complete_orientation, orient_G1
from efl.polynomial import FeasibilityError, SparsePolynomial


# --- fields and polynomials ---------------------------------------------------

def test_is_prime():
    assert [p for p in range(20) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19]


def test_prime_field_arithmetic():
    F = GF(5)
    assert F(7) == 2 and F(-1) == 4
    assert F(Fraction(1, 2)) == 3
    assert F.inv(2) == 3
    with pytest.raises(ZeroDivisionError):
        F.inv(5)
    with pytest.raises(ValueError):
        GF(6)
    assert field_from_tag("GF(5)") == F and field_from_tag("QQ") is QQ


def test_determinant_small():
    assert determinant([[1, 2], [3, 4]], QQ) == -2
    assert determinant([[1, 2], [3, 4]], GF(5)) == 3
    assert determinant([[0, 1], [1, 0]], QQ) == -1
    assert determinant([[1, 2], [2, 4]], QQ) == 0


@given(st.lists(st.integers(-5, 5), min_size=3, max_size=3), st.lists(st.integers(-5, 5), min_size=3, max_size=3))
def test_determinant_matches_cofactor_expansion(r1, r2):
    rows = [r1, r2, [1, 0, 2]]
    (a, b, c), (d, e, f), (g, h, i) = rows
    expected = a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    assert determinant(rows, QQ) == expected
    assert determinant(rows, GF(7)) == expected % 7


def test_polynomial_ring_operations():
    x = SparsePolynomial.variable(2, QQ, 0)
    y = SparsePolynomial.variable(2, QQ, 1)
    p = (x - y) ** 2
    assert p.terms == {(2, 0): 1, (1, 1): -2, (0, 2): 1}
    assert p.total_degree() == 2
    assert (p - p).terms == {}
    assert p.evaluate((3, 1)) == 4
    assert p.sorted_terms()[0] == ((0, 2), 1)
    with pytest.raises(FeasibilityError):
        p.mul(p, limit=4)
    q = SparsePolynomial.variable(2, GF(2), 0)
    assert ((q + 1) ** 2).terms == {(2, 0): 1, (0, 0): 1}


# --- the coloring polynomials ---------------------------------------------------

def test_poly_kind_and_default_field():
    assert poly_kind("g1") == "P1" and poly_kind("P2") == "P2"
    assert default_field("P1", 3) == GF(3)
    assert default_field("P2", 4) is QQ
    with pytest.raises(ValueError):
        default_field("P1", 4)
    with pytest.raises(ValueError):
        poly_kind("P3")


def test_flatten_point_forms():
    flat = tuple(range(4))
    assert flatten_point(2, flat) == flat
    assert flatten_point(2, [[0, 1], [2, 3]]) == flat
    assert flatten_point(2, {(0, 0): 0, (0, 1): 1, (1, 0): 2, (1, 1): 3}) == flat
    with pytest.raises(ValueError):
        flatten_point(2, [1, 2, 3])


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_vandermonde_check(p):
    from efl.families import vandermonde_check

    rng = random.Random(p)
    for n in range(1, 5):
        for _ in range(10):
            pt = [rng.randrange(50) for _ in range(n)]
            assert vandermonde_check(n, QQ, pt)
            assert vandermonde_check(n, GF(p), pt)


def test_eval_examples(H3):
    aux1 = build_aux(H3, kind="G1")
    aux2 = build_aux(H3, kind="G2")
    # a proper coloring a0 b1 c2 d2 e1 f0 laid out clique by clique
    good = [[0, 1, 2], [0, 2, 1], [1, 2, 0]]
    assert eval_P("P1", aux1, good) != 0
    assert eval_P("P2", aux2, good) != 0
    # recoloring d in clique 1 only breaks the copy agreement
    bad = [[0, 1, 2], [0, 1, 2], [1, 2, 0]]
    assert eval_P("P1", aux1, bad) == 0
    assert eval_P("P2", aux2, bad) == 0
    assert eval_P("P1", aux1, [[0, 0, 1], [0, 2, 1], [1, 2, 0]]) == 0


@pytest.mark.parametrize("kind", ["P1", "P2"])
def test_expansion_matches_evaluation(H3, kind):
    aux = build_aux(H3, kind=kind.replace("P", "G"))
    field = default_field(kind, 3)
    P = expand_P(kind, aux, field)
    assert P.total_degree() == aux.edge_count() == 15
    ev = make_evaluator(kind, aux, field)
    rng = random.Random(0)
    for _ in range(25):
        pt = tuple(field(rng.randrange(-20, 20)) for _ in range(9))
        assert P.evaluate(pt) == ev(pt)


def test_expansion_bound_is_enforced(H3):
    with pytest.raises(FeasibilityError):
        expand_P("P2", build_aux(H3, kind="G2"), limit=10)


# --- coefficients ------------------------------------------------------------------

def test_exponent_helpers():
    assert as_exponent(2, [[1, 0], [0, 1]]) == (1, 0, 0, 1)
    assert as_exponent(2, {(1, 1): 2}) == (0, 0, 0, 2)
    assert exponent_to_json(2, (1, 0, 0, 2)) == {"(0,0)": 1, "(1,1)": 2}
    assert exponent_from_json(2, {"(0,0)": 1, "(1,1)": 2}) == (1, 0, 0, 2)
    with pytest.raises(ValueError):
        as_exponent(2, (1, 0, 0))


def test_disjoint_n2_coefficients():
    aux = build_aux(parse_hypergraph("a b\nc d"), kind="G2")
    P = expand_P("P2", aux)
    # (x00 - x01)(x10 - x11)
    assert P.terms == {(1, 0, 1, 0): 1, (1, 0, 0, 1): -1, (0, 1, 1, 0): -1, (0, 1, 0, 1): 1}
    assert coefficient_by_expansion(P, (0, 1, 0, 1)) == 1
    for e, c in P.terms.items():
        assert coefficient_by_orientations(aux, e) == c
    assert coefficient_by_orientations(aux, (2, 0, 0, 0)) == 0
    with pytest.raises(ValueError):
        coefficient_by_orientations(aux, (1, 0, 0, 0))


def test_formula_examples():
    def x(pt):
        return pt[0]

    def x2(pt):
        return pt[0] ** 2

    assert coefficient_by_formula(x, [1], default_grid([1])) == 1
    # deg x^2 > 1, so the formula does not apply; it returns 1 although [x]x^2 = 0
    assert coefficient_by_formula(x2, [1], default_grid([1])) == 1
    assert coefficient_by_formula(x2, [2], [[Fraction(1, 2), 3, -7]]) == 1
    assert coefficient_by_formula(x2, [1], [[0, 2]]) == 2
    with pytest.raises(ArithmeticError):
        coefficient_by_formula(lambda pt: Fraction(1, 2) * pt[0], [1], [[0, 1]], integral=True)
    with pytest.raises(ZeroDivisionError):
        coefficient_by_formula(x, [1], [[1, 1]])
    with pytest.raises(ValueError):
        coefficient_by_formula(x, [1], [[0, 1, 2]])


@given(st.lists(st.integers(-3, 3), min_size=6, max_size=6), st.integers(0, 10**6))
@settings(max_examples=100, deadline=None)
def test_formula_recovers_top_coefficients(coeffs, seed):
    # random bivariate polynomial of degree <= 2; the formula reads each degree-2 coefficient
    exps = [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]
    P = SparsePolynomial(2, QQ, dict(zip(exps, coeffs)))
    rng = random.Random(seed)
    for d in [(2, 0), (1, 1), (0, 2)]:
        grid = [rng.sample(range(-9, 10), k + 1) for k in d]
        assert coefficient_by_formula(P.evaluate, d, grid) == P.coefficient(d)
        assert coefficient_by_formula(P.evaluate, d, grid, GF(101)) == GF(101)(P.coefficient(d))


@pytest.mark.parametrize("kind", ["P1", "P2"])
def test_top_terms_match_orientation_engine(H3, kind):
    aux = build_aux(H3, kind=kind.replace("P", "G"))
    field = default_field(kind, 3)
    P = expand_P(kind, aux, field)
    top = P.top_terms()
    assert any(max(e) >= 3 for e in top)
    for e, c in top.items():
        assert coefficient_by_orientations(aux, e, field) == c


@pytest.mark.parametrize("kind", ["P1", "P2"])
def test_three_engines_agree_on_bounded_targets(H3, kind):
    aux = build_aux(H3, kind=kind.replace("P", "G"))
    field = default_field(kind, 3)
    P = expand_P(kind, aux, field)
    ev = make_evaluator(kind, aux, field, cache=True)
    targets = list(maximal_bounded_targets(aux))
    assert len(targets) == 156
    for t in targets[::7]:
        a = coefficient_by_expansion(P, t)
        b = coefficient_by_orientations(aux, t, field)
        c = coefficient_by_formula(ev, t, default_grid(t, field), field)
        assert a == b == c, t


def test_maximal_bounded_targets_order(disjoint3):
    aux = build_aux(disjoint3, kind="G1")
    targets = list(maximal_bounded_targets(aux))
    assert targets == sorted(targets)
    assert all(sum(t) == 9 and max(t) <= 2 for t in targets)
    # the coefficients over permutation rows are the Vandermonde signs
    row_perms = {tuple(r) for t in targets for r in (t[:3], t[3:6], t[6:])}
    assert (2, 1, 0) in row_perms


# --- Vandermonde-completable monomials ----------------------------------------------

def test_vc_enumeration(H3, disjoint3):
    assert enumerate_vc_monomials(build_aux(disjoint3, kind="G1")) == [(0,) * 9]
    aux = build_aux(H3, kind="G1")
    found = enumerate_vc_monomials(aux)
    assert as_exponent(3, orient_G1(aux).in_degrees()) in found
    assert all(vc_criterion(b, 3) for b in found)
    assert found == sorted(set(found))
    sample = sample_vc_monomials(aux, 5, random.Random(1))
    assert len(sample) == 5 and set(sample) <= set(found)


def test_vc_enumeration_is_exhaustive(H3):
    # brute force: every split of every bundle
    aux = build_aux(H3, kind="G1")
    units = [(u[0] * 3 + u[1], v[0] * 3 + v[1], m) for u, v, m in aux.identifier_edges]
    brute = set()
    for splits in product(*(range(m + 1) for _, _, m in units)):
        beta = [0] * 9
        for (u, v, m), a in zip(units, splits):
            beta[u] += a
            beta[v] += m - a
        if vc_criterion(beta, 3):
            brute.add(tuple(beta))
    assert sorted(brute) == enumerate_vc_monomials(aux)


def test_completions(H3):
    assert len(completions((0,) * 4, 2)) == 4
    aux = build_aux(H3, kind="G1")
    o = orient_G1(aux)
    beta = as_exponent(3, o.in_degrees())
    full = as_exponent(3, complete_orientation(aux, o).in_degrees())
    assert full in completions(beta, 3)
    assert completions((2, 2, 0, 0, 0, 0, 0, 0, 0), 3) == []


def test_prime_orientation_count_small_cases(disjoint3):
    assert prime_orientation_count(build_aux(disjoint3, kind="G1"), (0,) * 9, 3) == (1, True, True)
    aux = build_aux(parse_hypergraph("a b c\na d e\nf g h"), kind="G1")
    beta = [0] * 9
    beta[0] = beta[3] = 1
    assert prime_orientation_count(aux, beta, 3) == (2, True, True)
    beta[0], beta[3] = 2, 0
    assert prime_orientation_count(aux, beta, 3) == (1, True, True)
    with pytest.raises(ValueError):
        prime_orientation_count(aux, beta, 5)
    with pytest.raises(ValueError):
        prime_orientation_count(build_aux(disjoint3, kind="G2"), (0,) * 9, 3)
