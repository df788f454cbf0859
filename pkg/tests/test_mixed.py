from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from polarweight.exact import GaussianRational
from polarweight.families import cyclic, g1
from polarweight.mixed import (LaurentPolynomial, MixedPolynomial, ParseError,
                               associated_laurent, evaluate, evaluate_laurent,
                               exponent_matrices, gradients, join, parse, render, restrict,
                               wirtinger_dz, wirtinger_dzbar)


def monos(f):
    return [(m.nu, m.mu) for m in f.monomials]


def test_parse_two_monomials():
    f = parse("z1^2*zbar2 + z2^3")
    assert f.n == 2
    assert sorted(monos(f)) == sorted([((2, 0), (0, 1)), ((0, 3), (0, 0))])


def test_parse_g1_pair():
    assert parse("z1*zbar2 + z2^2*zbar1") == g1((1, 2))


def test_parse_cancellation_to_zero():
    f = parse("z1*zbar1 - z1*zbar1")
    assert f.is_zero() and f.s == 0


def test_parse_coefficients():
    f = parse("-3/2*z1 + (1-2i)*z2 + i*z1*zbar2", n=3)
    assert f.n == 3
    coeffs = {(m.nu, m.mu): m.coeff for m in f.monomials}
    assert coeffs[((1, 0, 0), (0, 0, 0))] == GaussianRational(Fraction(-3, 2))
    assert coeffs[((0, 1, 0), (0, 0, 0))] == GaussianRational(1, -2)
    assert coeffs[((1, 0, 0), (0, 1, 0))] == GaussianRational(0, 1)


def test_parse_repeated_factor_accumulates():
    assert parse("z1*z1^2*zbar1") == parse("z1^3*zbar1")


@pytest.mark.parametrize("text", ["z1^", "z0", "z1 +", "2**z1", "z1 & z2", "(1+2)*z1", ""])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse(text)


def test_parse_rejects_too_small_n():
    with pytest.raises(ParseError):
        parse("z3", n=2)


def test_wirtinger_examples():
    f = parse("z1^2*zbar2")
    assert wirtinger_dz(f, 0) == parse("2*z1*zbar2")
    assert wirtinger_dzbar(f, 0).is_zero()
    assert wirtinger_dzbar(f, 1) == parse("z1^2", n=2)


def test_restrict_surface_polynomial():
    f1 = parse("z1^2*zbar2 + z2^3*zbar3 + z3^5")
    assert restrict(f1, [2]) == parse("z3^5", n=3)
    assert restrict(f1, [0]).is_zero()
    assert restrict(f1, range(3)) == f1


def test_associated_laurent_examples():
    g = associated_laurent(cyclic((2, 3, 5), (1, 1, 1)))
    assert {e for _, e in g.terms} == {(2, -1, 0), (0, 3, -1), (-1, 0, 5)}
    assert associated_laurent(parse("z1*zbar1")).terms == ((GaussianRational(1), (0,)),)
    h = associated_laurent(parse("z1^2*zbar2 + z2^3"))
    assert {e for _, e in h.terms} == {(2, -1), (0, 3)}


def test_evaluate_examples():
    assert evaluate(parse("z1*zbar1"), [3 + 4j]) == pytest.approx(25)
    assert evaluate(parse("z1^2*zbar2"), [1, 1j]) == pytest.approx(-1j)


def test_evaluate_batch_shape():
    f = parse("z1^2*zbar2 + z2^3")
    z = np.ones((7, 2), dtype=complex)
    assert evaluate(f, z).shape == (7,)
    assert evaluate(parse("0", n=2), z).shape == (7,)


def test_laurent_negative_power_of_zero():
    with pytest.raises(ZeroDivisionError):
        evaluate_laurent(LaurentPolynomial(1, ((1, (-1,)),)), [0])


def test_exponent_matrices():
    E = exponent_matrices(parse("z1^2*zbar2 + z2^3"))
    assert sorted(E.plus) == [(0, 3), (2, 1)]
    assert sorted(E.minus) == [(0, 3), (2, -1)]


def test_join_uses_disjoint_variables():
    h = join(parse("z1^3"), parse("z1^2*zbar2 + z2^3"))
    assert h == parse("z1^3 + z2^2*zbar3 + z3^3")


def test_render_examples():
    assert render(parse("z1^2*zbar2 + z2^3")) == "z1^2*zbar2 + z2^3"
    assert render(parse("0", n=1)) == "0"


# -- properties ------------------------------------------------------------

coeffs = st.one_of(
    st.fractions(min_value=-5, max_value=5, max_denominator=6).filter(bool),
    st.builds(GaussianRational, st.integers(-3, 3), st.integers(-3, 3)).filter(bool),
)


@st.composite
def mixed_polys(draw, n_max=3, s_max=4, e_max=3):
    n = draw(st.integers(1, n_max))
    exps = st.tuples(*[st.integers(0, e_max)] * n)
    terms = draw(st.lists(st.tuples(coeffs, exps, exps), min_size=0, max_size=s_max))
    return MixedPolynomial.from_terms(n, terms)


@settings(max_examples=200, deadline=None)
@given(mixed_polys())
def test_render_parse_round_trip(f):
    assert parse(render(f), n=f.n) == f


def _points(rng, n, k=4):
    return rng.normal(size=(k, n)) + 1j * rng.normal(size=(k, n))


@settings(max_examples=60, deadline=None)
@given(mixed_polys(), st.integers(0, 2 ** 32 - 1))
def test_wirtinger_matches_finite_differences(f, seed):
    rng = np.random.default_rng(seed)
    h = 1e-6
    df, dbf = gradients(f)
    for z in _points(rng, f.n):
        for j in range(f.n):
            e = np.zeros(f.n)
            e[j] = h
            fx = (evaluate(f, z + e) - evaluate(f, z - e)) / (2 * h)
            fy = (evaluate(f, z + 1j * e) - evaluate(f, z - 1j * e)) / (2 * h)
            scale = 1 + np.abs(fx) + np.abs(fy)
            assert abs(evaluate(df[j], z) - (fx - 1j * fy) / 2) <= 1e-6 * scale
            assert abs(evaluate(dbf[j], z) - (fx + 1j * fy) / 2) <= 1e-6 * scale


@settings(max_examples=80, deadline=None)
@given(mixed_polys(), st.integers(0, 2 ** 32 - 1))
def test_laurent_agrees_on_unit_torus(f, seed):
    # zbar = 1/z when |z| = 1, so f and fhat coincide there
    rng = np.random.default_rng(seed)
    z = np.exp(1j * rng.uniform(0, 2 * np.pi, size=f.n))
    assert abs(evaluate_laurent(associated_laurent(f), z) - evaluate(f, z)) < 1e-9


@settings(max_examples=80, deadline=None)
@given(mixed_polys(), st.data())
def test_restriction_is_evaluation_with_zeros(f, data):
    I = data.draw(st.sets(st.integers(0, f.n - 1)))
    z = np.array([1.3 - 0.4j] * f.n)
    z_masked = np.where([j in I for j in range(f.n)], z, 0)
    assert abs(evaluate(restrict(f, I), z) - evaluate(f, z_masked)) < 1e-9


@settings(max_examples=80, deadline=None)
@given(mixed_polys(), mixed_polys())
def test_sum_of_parses_is_parse_of_sum(f, g):
    if f.n != g.n:
        return
    both = parse(render(f) + " + " + render(g), n=f.n)
    direct = MixedPolynomial.from_terms(
        f.n, [(m.coeff, m.nu, m.mu) for m in f.monomials + g.monomials])
    assert both == direct
