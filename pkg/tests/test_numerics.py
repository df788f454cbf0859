from dataclasses import replace
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from polarweight import families as fam
from polarweight.invariants import ZetaFactored
from polarweight.mixed import evaluate, parse
from polarweight.numerics import (SampleConfig, check_euler_identities, check_functional_equation,
                                  check_monodromy, check_projection, check_torus_diffeo,
                                  enumerate_fiber_dim1, g1_singular_family, g2_singular_family,
                                  monodromy_map, polar_action, project_to_fiber, run_checks,
                                  sample_points, search_singular_points, singularity_test,
                                  torus_diffeo, torus_map_matrix)
from polarweight.weights import WeightSystem, compute_weights
from strategies import full_polys

CFG = SampleConfig(count=200, seed=11, tol=1e-9)


def fw(f):
    return f, compute_weights(f)


def test_sample_config_validation():
    with pytest.raises(ValueError):
        SampleConfig(count=0)
    with pytest.raises(ValueError):
        SampleConfig(tol=0.1)
    with pytest.raises(ValueError):
        SampleConfig(radius_range=(0.0, 1.0))


def test_samples_are_reproducible():
    a = sample_points(3, SampleConfig(count=5, seed=3))
    b = sample_points(3, SampleConfig(count=5, seed=3))
    assert np.array_equal(a, b)
    assert not np.array_equal(a, sample_points(3, SampleConfig(count=5, seed=4)))


def test_polar_action_examples():
    W = WeightSystem((1, 1), 2, (1, 1), 2)
    z = np.array([1 + 0j, 1 + 0j])
    assert np.allclose(polar_action(W, 1.0, 1.0, z), z)
    assert np.allclose(polar_action(W, 2.0, 1.0, z), [2, 2])
    with pytest.raises(ValueError):
        polar_action(W, 0.0, 1.0, z)
    with pytest.raises(ValueError):
        polar_action(W, 1.0, 1.001, z)


def test_functional_equation_two_monomials():
    f, W = fw(parse("z1^2*zbar2 + z2^3"))
    rng = np.random.default_rng(5)
    for _ in range(20):
        z = rng.normal(size=2) + 1j * rng.normal(size=2)
        r, eta = rng.uniform(0.3, 3), np.exp(1j * rng.uniform(0, 6.3))
        lhs = evaluate(f, polar_action(W, r, eta, z))
        rhs = r ** 3 * eta ** 3 * evaluate(f, z)
        assert abs(lhs - rhs) / abs(rhs) < 1e-10


@pytest.mark.parametrize("f", [fam.g1((2, 2, 2)), fam.g2((2, 3)), fam.brieskorn((3, 2)),
                               fam.cyclic((2, 3, 5), (1, 1, 1)), fam.g1((1, 2))])
def test_all_checks_pass_on_families(f):
    W = compute_weights(f)
    for rep in run_checks(f, W, CFG):
        assert rep.passed, rep
        assert rep.samples_run > 0


@pytest.mark.parametrize("field", ["q", "m_r", "p", "m_p"])
def test_corrupted_weights_fail(field):
    f, W = fw(fam.g2((2, 3)))
    bad = {"q": replace(W, q=(W.q[0] + 1,) + W.q[1:]), "m_r": replace(W, m_r=W.m_r + 1),
           "p": replace(W, p=(W.p[0] + 1,) + W.p[1:]), "m_p": replace(W, m_p=W.m_p + 1)}[field]
    assert not check_functional_equation(f, bad, CFG).passed
    kind = "radial" if field in ("q", "m_r") else "polar"
    assert not check_euler_identities(f, bad, CFG, kind).passed


def test_functional_equation_at_origin():
    f, W = fw(fam.brieskorn((3, 2)))
    rep = check_functional_equation(f, W, CFG, points=np.zeros((4, 2)))
    assert rep.max_relative_residual == 0 and rep.passed


def test_brieskorn_radial_euler_is_classical():
    f, W = fw(fam.brieskorn((3, 2)))
    assert check_euler_identities(f, W, CFG, "radial").passed
    with pytest.raises(ValueError):
        check_euler_identities(f, W, CFG, "sideways")


def test_singularity_examples():
    f = fam.g1((1, 2))
    psi = 0.7
    res = singularity_test(f, [0, np.exp(1j * psi)])
    assert res.singular and abs(res.alpha - np.exp(-1j * psi)) < 1e-12
    res = singularity_test(parse("z1*zbar1"), [1.0])
    assert res.singular and abs(res.alpha - 1) < 1e-12
    g, W = fw(fam.brieskorn((3, 2)))
    rng = np.random.default_rng(2)
    z = project_to_fiber(g, W, rng.normal(size=(30, 2)) + 1j * rng.normal(size=(30, 2)))
    assert not any(singularity_test(g, p).singular for p in z)


def test_singularity_zero_gradients():
    assert singularity_test(fam.brieskorn((3, 2)), [0, 0]).singular


def test_projection_examples():
    f, W = fw(parse("z1^2"))
    w = project_to_fiber(f, W, np.array([2.0 + 0j]))
    assert abs(evaluate(f, w) - 1) < 1e-12
    f, W = fw(parse("z1^2 + z2^3"))
    z = np.array([1.0, 0], dtype=complex)
    assert np.allclose(project_to_fiber(f, W, z), z)
    f, W = fw(fam.g1((2, 2, 2)))
    assert check_projection(f, W, SampleConfig(count=1000, seed=1, tol=1e-10)).passed
    with pytest.raises(ValueError):
        project_to_fiber(f, W, np.zeros(3))


def test_torus_map_examples():
    f, W = fw(fam.brieskorn((3, 2)))
    assert torus_map_matrix(f) == [[1, 0], [0, 1]]
    g, Wg = fw(parse("z1^2*zbar2 + z2^3"))
    z = np.exp(1j * np.array([0.3, -1.2]))
    assert np.allclose(torus_diffeo(g, Wg, z), z)
    with pytest.raises(ValueError):
        torus_diffeo(g, Wg, np.array([0, 1], dtype=complex))
    with pytest.raises(ValueError):
        torus_map_matrix(parse("z1*zbar2"))
    assert check_torus_diffeo(g, Wg, CFG).passed
    # |w1| = |z1||z2|, |w2| = |z2| turns |z1^2 zbar2| into |w1^2 / w2|
    assert torus_map_matrix(g) == [[Fraction(1), Fraction(1)], [0, 1]]


def test_monodromy_examples():
    f, W = fw(fam.cyclic((2, 3, 5), (1, 1, 1)))
    z = sample_points(3, SampleConfig(count=3, seed=0))
    assert np.allclose(monodromy_map(W, z, power=W.m_p), z, atol=1e-12)
    assert not np.allclose(monodromy_map(W, z, power=1), z)
    assert check_monodromy(f, W, CFG).passed
    with pytest.raises(ValueError):
        monodromy_map(WeightSystem((1,), 1, (0,), 0), z[:, :1])


def test_one_variable_fiber_examples():
    en = enumerate_fiber_dim1(1, 2, 0)
    assert np.allclose(sorted(en.points.real), [-1, 1])
    assert en.permutation == (1, 0)
    en = enumerate_fiber_dim1(1, 3, 1)
    assert len(en.points) == 2 and en.permutation == (1, 0)
    assert en.charpoly == ZetaFactored({2: 1}) and en.zeta == ZetaFactored({2: -1})
    en = enumerate_fiber_dim1(2, 3, 1)
    assert np.allclose(np.abs(en.points), 2 ** -0.25)
    for bad in [(1, 2, 2), (1, 1, 3), (0, 3, 1)]:
        with pytest.raises(ValueError):
            enumerate_fiber_dim1(*bad)


# -- singular families and search ------------------------------------------

@pytest.mark.parametrize("a", [(1, 2), (2, 1, 2, 1), (1, 3, 1, 2), (3, 1)])
def test_g1_witnesses_are_singular(a):
    f = fam.g1(a)
    for phi in (0.0, 0.4, 2.0):
        z = g1_singular_family(a, phi)
        assert abs(evaluate(f, z)) < 1e-12
        res = singularity_test(f, z, 1e-10)
        assert res.singular and abs(res.alpha - np.exp(1j * phi)) < 1e-9
        # the radial orbit of a singular point is singular
        W = compute_weights(f)
        for r in (0.5, 2.0):
            assert singularity_test(f, polar_action(W, r, 1.0, z), 1e-10).singular


@pytest.mark.parametrize("a", [(2, 1), (1, 1), (2, 2, 1), (2, 1, 1, 1), (1, 3, 1, 1)])
def test_g2_witnesses_are_singular(a):
    f, W = fw(fam.g2(a))
    z = g2_singular_family(a, 0.9)
    assert abs(evaluate(f, z)) < 1e-12
    assert singularity_test(f, z, 1e-10).singular
    for r in (0.5, 2.0):
        assert singularity_test(f, polar_action(W, r, 1.0, z), 1e-10).singular


def test_no_witness_family_when_isolated():
    assert g1_singular_family((2, 2)) is None
    assert g2_singular_family((2, 3)) is None


@pytest.mark.parametrize("kind,a", [("g1", (2, 2)), ("g1", (1, 2)), ("g1", (2, 2, 2)),
                                    ("g2", (2, 1)), ("g2", (2, 3)), ("g2", (1, 1, 1))])
def test_search_agrees_with_criterion(kind, a):
    f, W = fw(fam.g1(a) if kind == "g1" else fam.g2(a))
    iso = fam.isolated_g1(a) if kind == "g1" else fam.isolated_g2(a)
    res = search_singular_points(f, W, starts=4, seed=1)
    assert (len(res.witnesses) == 0) == iso
    if iso:
        assert res.best_residual > 1e-4
    for z in res.witnesses:
        assert abs(evaluate(f, z)) < 1e-7


# -- properties ------------------------------------------------------------

@settings(max_examples=40, deadline=None)
@given(full_polys(), st.integers(0, 2 ** 31))
def test_identities_on_random_full_polynomials(data, seed):
    f = data[0]
    W = compute_weights(f)
    cfg = SampleConfig(count=40, seed=seed, tol=1e-8, radius_range=(0.5, 2.0))
    for rep in run_checks(f, W, cfg):
        assert rep.passed, rep
