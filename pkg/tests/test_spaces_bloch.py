import math

import numpy as np
import pytest
from hypothesis import given, settings

import oracles
from strategies import series, small_quaternions
from slicespace import E1, E2, I1, Quaternion, SlicePowerSeries, unit_imaginary
from slicespace.quadrature import QuadratureConfig
from slicespace.series import random_series
from slicespace.spaces import (
    ball_modulus,
    bloch_equivalence_check,
    bloch_lipschitz_check,
    bloch_norm,
    bloch_norm_slice,
    bloch_seminorm_slice,
    coeff_bound_check,
    derivative_growth_check,
    hinf_check,
    hinf_norm,
    hinf_slice,
    lacunary_certificate,
    little_bloch_test,
    radial_profile,
    slice_distance,
)

FAST = QuadratureConfig(sphere_samples=8, sup_radial=64, sup_angular=64)
Q = SlicePowerSeries.monomial(1)


def test_bloch_norm_examples():
    assert bloch_norm(Q).value == pytest.approx(1.0, rel=1e-12)
    c = Quaternion(0.3, -1.0, 2.0, 0.5)
    assert bloch_norm(SlicePowerSeries([c])).value == pytest.approx(abs(c), rel=1e-15)
    # sup 2r(1 - r^2) at r = 1/sqrt(3)
    assert bloch_norm(SlicePowerSeries.monomial(2)).value == pytest.approx(4 * math.sqrt(3) / 9, rel=1e-10)


def test_bloch_report_shape():
    rep = bloch_norm(Q, FAST)
    js = rep.to_json()
    assert set(js) == {"space", "value", "per_axis", "config"}
    assert js["value"] == max(e["value"] for e in js["per_axis"])
    assert len(js["per_axis"]) == FAST.sphere_samples + 1


def test_slice_seminorm_against_grid_oracle(rng):
    for _ in range(3):
        f = random_series(rng, 6)
        ours = bloch_seminorm_slice(f, E1, FAST)
        ref = oracles.polar_grid_sup(lambda z: (1 - np.abs(z) ** 2) * oracles.e1_modulus(f.coeffs, z, 1))
        # the grid oracle is a lower estimate
        assert ours >= ref * (1 - 1e-12)
        assert ours <= ref * (1 + 1e-4)
        assert bloch_norm_slice(f, E1, FAST) == pytest.approx(abs(f.at_zero()) + ours, rel=1e-15)


def test_ball_modulus_is_max_over_axes(rng):
    f = random_series(rng, 5)
    z = np.array([0.3 + 0.4j, -0.5 + 0.1j, 0.7j])
    m, _ = ball_modulus(f, z)
    for k, zk in enumerate(z):
        brute = 0.0
        for _ in range(400):
            J = oracles.random_imaginary_unit(rng)
            brute = max(brute, np.linalg.norm(oracles.series_value(f.coeffs, oracles.point_on_slice(zk, J))))
        assert brute <= m[k] * (1 + 1e-12)
        assert brute >= m[k] * (1 - 2e-2)


def test_equivalence_examples(rng):
    rep = bloch_equivalence_check(Q, FAST)
    assert rep.passed and rep.details["bloch_norm"] == pytest.approx(1.0)
    # coefficients in C(e1): the slice of e1 carries the largest seminorm
    f = SlicePowerSeries([[0, 0, 0, 0], [1, 0.5, 0, 0], [0, 0, 0, 0], [0.2, -0.7, 0, 0]])
    rep = bloch_equivalence_check(f, FAST)
    assert rep.passed
    assert bloch_norm_slice(f, E1, FAST) <= bloch_norm(f, FAST).value * (1 + 1e-10)
    for _ in range(3):
        assert bloch_equivalence_check(random_series(rng, 8), FAST).passed


def test_hinf_examples():
    c = SlicePowerSeries([Quaternion(0, 3, 4, 0)])
    assert hinf_norm(c, FAST).value == pytest.approx(5.0, rel=1e-15)
    assert hinf_norm(Q, FAST).value == pytest.approx(FAST.clip, rel=1e-12)
    f = SlicePowerSeries([E2, [0, 0, 0, 0], [1, 0, 0, 0]])
    assert hinf_slice(f, I1, FAST) <= hinf_norm(f, FAST).value * (1 + 1e-12)
    rep = hinf_check(f, FAST)
    assert rep.passed
    assert rep.details["bloch"] <= 4 * rep.details["hinf"]


def test_little_bloch_examples(rng):
    res = little_bloch_test(SlicePowerSeries([2.0]))
    assert res.passed and all(v == 0.0 for v in res.profile)
    for _ in range(3):
        f = random_series(rng, 6)
        res = little_bloch_test(f, config=FAST)
        assert res.passed
        assert res.dilation_distance[-1] < res.dilation_distance[0]
    assert set(res.to_json()) == {"passed", "radii", "profile", "dilation_radii", "dilation_distance"}
    with pytest.raises(TypeError):
        little_bloch_test(object())


def test_radial_profile_of_q():
    r = np.array([0.0, 0.5, 0.9])
    assert np.allclose(radial_profile(Q, r), 1 - r ** 2, rtol=1e-14, atol=0)


def test_derivative_growth_examples():
    rep = derivative_growth_check(SlicePowerSeries([1.5]), 2, FAST)
    assert rep.passed and rep.details["lhs"] == 0.0
    rep = derivative_growth_check(Q, 2, FAST)
    assert rep.passed and rep.details["lhs"] == 0.0
    # sup 6r(1 - r^2)^2 sits at r = 1/sqrt(5)
    rep = derivative_growth_check(SlicePowerSeries.monomial(3), 2, FAST)
    assert rep.passed
    assert rep.details["lhs"] == pytest.approx(96 / (25 * math.sqrt(5)), rel=1e-8)
    assert rep.details["rhs"] == pytest.approx(64 * bloch_norm(SlicePowerSeries.monomial(3), FAST).value)
    with pytest.raises(ValueError):
        derivative_growth_check(Q, 1)


def test_coeff_bound_examples(rng):
    rep = coeff_bound_check(Q, FAST)
    assert rep.passed and rep.details["lhs"] == 1.0
    assert rep.details["rhs"] == pytest.approx(1.9221, abs=1e-4)
    rep = coeff_bound_check(SlicePowerSeries([]), FAST)
    assert rep.passed and rep.details == {"lhs": 0.0, "rhs": 0.0}
    assert coeff_bound_check(random_series(rng, 12), FAST).passed


def test_lacunary_examples():
    gap = SlicePowerSeries([[0, 0, 0, 0]] + [[1, 0, 0, 0] if n in (1, 2, 4, 8, 16) else [0, 0, 0, 0]
                                             for n in range(1, 17)])
    assert lacunary_certificate(gap, 2.0, 1.0)
    assert not lacunary_certificate(SlicePowerSeries([0, 1, 1, 1]), 2.0, 1.0)
    assert not lacunary_certificate(gap.rmul(2.0), 2.0, 1.0)
    assert math.isfinite(bloch_norm(gap, FAST).value)
    with pytest.raises(ValueError):
        lacunary_certificate(gap, 1.0, 1.0)


def test_slice_distance_examples():
    q = Quaternion(0.2) + 0.3 * E2
    assert slice_distance(q, q) == 0.0
    z = Quaternion(0.1) + 0.6 * E2
    r = abs(z)
    assert slice_distance(z, 0.0) == pytest.approx(0.5 * math.log((1 + r) / (1 - r)), rel=1e-14)
    with pytest.raises(ValueError):
        slice_distance(Quaternion(0, 0.5), Quaternion(0, 0, 0.5))
    with pytest.raises(ValueError):
        slice_distance(Quaternion(0.9, 0.9), 0.0)


def test_lipschitz_random(rng):
    for _ in range(3):
        f = random_series(rng, 6)
        i = unit_imaginary(oracles.random_imaginary_unit(rng))
        rep = bloch_lipschitz_check(f, i, rng=rng, n_pairs=30, config=FAST)
        assert rep.passed, rep.details


# norm axioms

@settings(max_examples=15)
@given(series(max_degree=5), small_quaternions)
def test_bloch_homogeneity(f, lam):
    a = bloch_norm(f.rmul(lam), FAST).value
    b = bloch_norm(f, FAST).value * abs(lam)
    assert abs(a - b) <= 1e-10 * max(b, 1e-300) + 1e-300


@settings(max_examples=15)
@given(series(max_degree=5), series(max_degree=5))
def test_bloch_triangle(f, g):
    lhs = bloch_norm(f + g, FAST).value
    rhs = bloch_norm(f, FAST).value + bloch_norm(g, FAST).value
    assert lhs <= rhs * (1 + 1e-4) + 1e-12
