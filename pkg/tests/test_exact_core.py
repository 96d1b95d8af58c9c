from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gkmhess.exact_core import (
    Echelon,
    LatticeMap,
    LinearForm,
    Polynomial,
    as_rational,
    determinant,
    divisible_by_linear,
    kernel_basis,
    mat_inverse,
    mat_mul,
    monomials,
    normal_form_T,
    poly_arith,
    rank,
    rational_str,
    solve,
    span_rank,
)

t = lambda n, i: Polynomial.variable(n, i)


def test_rationals_are_exact():
    assert as_rational("1/3") + as_rational("2/3") == 1
    assert rational_str(Fraction(-4, 6)) == "-2/3"
    assert rational_str(5) == "5"
    with pytest.raises(TypeError):
        as_rational(0.5)


def test_difference_of_squares():
    p = (t(2, 1) + t(2, 2)) * (t(2, 1) - t(2, 2))
    assert str(p) == "t1^2 - t2^2"
    assert p.homogeneous_degree() == 2


def test_parse_round_trip():
    p = Polynomial.parse("1/2*t1*t2 - 3*t3^2 + t1", 3)
    assert Polynomial.parse(str(p), 3) == p
    assert p.coefficient((1, 1, 0)) == Fraction(1, 2)
    with pytest.raises(ValueError):
        p.homogeneous_degree()


def test_poly_arith_ops():
    a, b = t(2, 1), t(2, 2)
    assert poly_arith(a, b, "add") == a + b
    assert poly_arith(a, b, "mul") == a * b
    assert poly_arith(a, 3, "scale") == a.scale(3)
    with pytest.raises(ValueError):
        poly_arith(a, b, "div")


def test_variable_guard():
    with pytest.raises(ValueError):
        Polynomial.zero(0)
    with pytest.raises(ValueError):
        Polynomial.variable(3, 4)


def test_monomial_count():
    # C(k + n - 1, n - 1)
    assert len(monomials(3, 2)) == 6
    assert len(monomials(4, 3)) == 20


def test_divisibility():
    l = LinearForm.root(3, 1, 2)
    assert divisible_by_linear(t(3, 1) ** 2 - t(3, 2) ** 2, l)
    assert not divisible_by_linear(t(3, 1) ** 2 + t(3, 2) ** 2, l)
    assert divisible_by_linear(Polynomial.zero(3), l)
    with pytest.raises(ValueError):
        divisible_by_linear(t(3, 1), LinearForm((0, 0, 0)))


def test_normal_form_kills_e1():
    e1 = Polynomial.from_linear([1, 1, 1, 1])
    assert normal_form_T(e1).is_zero()
    assert normal_form_T(t(4, 4)) == -(t(4, 1) + t(4, 2) + t(4, 3))


def test_linear_forms():
    a = LinearForm.root(4, 1, 3)
    assert str(a) == "t1 - t3"
    assert a.is_sum_zero()
    assert a.scale(-2).is_multiple_of(a)
    assert not a.is_proportional(LinearForm.root(4, 1, 2))
    assert LinearForm((0, 0, 0, 0)).is_proportional(a)
    half = LinearForm((Fraction(1, 2), Fraction(-1, 2), 0, 0))
    assert half.is_multiple_of(LinearForm.root(4, 1, 2))


def test_lattice_map_validation():
    with pytest.raises(ValueError):
        LatticeMap([[1, 1], [0, 1]])  # column sums differ
    with pytest.raises(ValueError):
        LatticeMap([[2, 0, 0], [0, 2, 0], [0, 0, 2]])  # not unimodular on sum-zero part
    with pytest.raises(ValueError):
        LatticeMap([[Fraction(1, 2), 0], [0, 1]])


def test_lattice_map_equality_is_on_restriction():
    # t_i -> -t_{n+1-i} and the map agreeing with it on the sum-zero lattice
    m = LatticeMap([[0, 0, -1], [0, -1, 0], [-1, 0, 0]])
    assert LatticeMap.from_restriction(m.restricted()) == m
    assert m.compose(m).is_identity()
    assert m.inverse() == m


def test_from_restriction_extension_rule():
    block = ((0, 1), (1, 0))
    m = LatticeMap.from_restriction(block)
    assert m.restricted() == block
    assert m.apply_vector((1, 1, 1)) in ((1, 1, 1), (-1, -1, -1))


def test_signed_permutation_fast_path_matches_substitution():
    m = LatticeMap([[0, 0, -1], [0, -1, 0], [-1, 0, 0]])
    p = Polynomial.parse("t1^3*t2 - 2*t2*t3^2 + 5*t3^4", 3)
    assert m.apply(p) == p.substitute(m.images())


def test_dense_linear_algebra():
    a = [[2, 1, 0], [1, 3, 1], [0, 1, 4]]
    assert determinant(a) == 18
    inv = mat_inverse(a)
    assert mat_mul(a, inv) == [[int(i == j) for j in range(3)] for i in range(3)]
    x = solve(a, [1, 2, 3])
    assert mat_mul(a, [[v] for v in x]) == [[1], [2], [3]]
    assert solve([[1, 1], [2, 2]], [1, 3]) is None
    with pytest.raises(ZeroDivisionError):
        mat_inverse([[1, 2], [2, 4]])


def test_echelon_membership():
    e = Echelon(3)
    assert e.add({0: 1, 1: 1})
    assert not e.add({0: 2, 1: 2})
    assert e.contains({0: -3, 1: -3})
    assert e.rank == 1
    assert len(e.kernel()) == 2


# ---------------------------------------------------------------------------
# properties

small = st.integers(-4, 4)
lin3 = st.lists(small, min_size=3, max_size=3)


@st.composite
def polys(draw, n=3, max_deg=3):
    terms = draw(st.dictionaries(
        st.tuples(*[st.integers(0, max_deg)] * n), small, max_size=5))
    return Polynomial(n, terms)


@st.composite
def sl_lattice_maps(draw):
    perm = draw(st.permutations([1, 2, 3]))
    sign = draw(st.sampled_from([1, -1]))
    m = LatticeMap.from_permutation(perm)
    return m if sign == 1 else m.compose(LatticeMap([[-1, 0, 0], [0, -1, 0], [0, 0, -1]]))


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), sl_lattice_maps())
def test_lattice_map_is_multiplicative(p, q, m):
    assert m.apply(p * q) == m.apply(p) * m.apply(q)
    assert m.apply(p + q) == m.apply(p) + m.apply(q)
    assert m.inverse().apply(m.apply(p)) == p


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), st.sampled_from([(1, 2), (1, 3), (2, 3)]))
def test_divisibility_closed_under_sums_and_products(p, q, ab):
    l = LinearForm.root(3, *ab)
    lp = l.to_polynomial()
    assert divisible_by_linear(lp * p, l)
    assert divisible_by_linear(lp * p + lp * q, l)
    assert divisible_by_linear(lp * p * q, l)


@settings(max_examples=60, deadline=None)
@given(polys(n=4, max_deg=2))
def test_normal_form_idempotent(p):
    once = normal_form_T(p)
    assert normal_form_T(once) == once
    assert all(e[-1] == 0 for e, _ in once.items())


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(small, min_size=5, max_size=5), min_size=1, max_size=5))
def test_kernel_annihilates_and_rank_nullity(rows):
    ker = kernel_basis(rows, 5)
    for v in ker:
        assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in rows)
    assert rank(rows) + len(ker) == 5
    assert span_rank(ker) == len(ker)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=1, max_size=4), lin3.map(lambda v: v + [1]))
def test_solve_finds_a_solution_when_one_exists(rows, x0):
    rhs = [sum(a * b for a, b in zip(r, x0)) for r in rows]
    x = solve(rows, rhs)
    assert x is not None
    assert [sum(a * b for a, b in zip(r, x)) for r in rows] == rhs
