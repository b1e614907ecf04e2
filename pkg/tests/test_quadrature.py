import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

import oracles
from slicespace import I1, I2, Quaternion, SlicePowerSeries, UnitImaginary
from slicespace.quadrature import (
    AREA, LAMBDA, OMEGA, DiskRule, Measure, QuadratureConfig, QuadratureError, circle_mean, disk_nodes,
    integrate_disk, integrate_subdisk, sup_disk, sup_disk_point, sup_sphere, sup_sphere_arg, weighted,
)

RULE = DiskRule(64, 128)


# frozen values

@pytest.mark.parametrize("alpha", [-0.5, 0.0, 1.0, 2.5, 7.0])
def test_weighted_measure_has_unit_mass(alpha):
    assert abs(integrate_disk(lambda z: np.ones(z.shape), RULE, weighted(alpha)) - 1.0) < 1e-13


def test_integrate_examples():
    assert abs(integrate_disk(lambda z: np.abs(z) ** 2, RULE, AREA) - 0.5) < 1e-15
    assert abs(integrate_disk(lambda z: np.ones(z.shape), RULE, OMEGA) - math.pi) < 1e-14


@pytest.mark.parametrize("alpha", [-0.5, 0.0, 1.0, 2.5])
def test_radial_power_against_adaptive_oracle(alpha):
    ref = oracles.radial_mass(alpha)
    got = integrate_disk(lambda z: np.ones(z.shape), RULE, AREA, power=alpha)
    assert abs(got - ref) <= 1e-10 * ref
    assert abs(got - 1.0 / (alpha + 1.0)) <= 1e-10 / (alpha + 1.0)


def test_monomial_orthogonality_table():
    for n in range(11):
        for m in range(11):
            v = integrate_disk(lambda z: z ** n * np.conj(z) ** m, RULE, AREA)
            expected = 1.0 / (n + 1) if n == m else 0.0
            assert abs(v - expected) < 1e-12, (n, m, v)


def test_quaternion_valued_integrand():
    f = SlicePowerSeries([Quaternion(1, 2, 3, 4), Quaternion(0, 1, 0, 0)])
    # mean value property: the area average of a slice regular function is f(0)
    got = integrate_disk(f, RULE, AREA, axis=UnitImaginary(0, 1, 1, 0))
    assert isinstance(got, Quaternion)
    assert got.is_close(f(0), 1e-13)


def test_power_argument_folds_weight():
    a = integrate_disk(lambda z: np.abs(z) ** 4 * (1 - np.abs(z) ** 2) ** 1.5, RULE, AREA)
    b = integrate_disk(lambda z: np.abs(z) ** 4, RULE, AREA, power=1.5)
    ref = oracles.radial_integral(lambda r: r ** 4 * (1 - r * r) ** 1.5)
    assert abs(a - ref) < 1e-9 and abs(b - ref) < 1e-14


def test_lambda_measure_with_decay():
    # (1-|z|^2)^3 dlambda = (1-|z|^2) dA, mass 1/2
    got = integrate_disk(lambda z: (1 - np.abs(z) ** 2) ** 3, RULE, LAMBDA)
    assert abs(got - 0.5) < 1e-10


def test_nonfinite_integrand_names_the_node():
    with pytest.raises(QuadratureError, match="node"), np.errstate(divide="ignore", invalid="ignore"):
        integrate_disk(lambda z: 1.0 / (z - z[3, 5]), RULE, AREA)


def test_measure_validation():
    with pytest.raises(ValueError):
        weighted(-1.0)
    with pytest.raises(ValueError):
        Measure("volume")
    with pytest.raises(ValueError):
        QuadratureConfig(clip=1.5)


def test_doubling_guard():
    f = SlicePowerSeries(np.random.default_rng(0).standard_normal((9, 4)))
    g = lambda z: f.slice_abs(I1, z) ** 2
    a = integrate_disk(g, RULE, weighted(1.0))
    b = integrate_disk(g, RULE.doubled(), weighted(1.0))
    assert abs(a - b) < 1e-9 * abs(b)


# Moebius invariance of dlambda on compactly supported bumps

@given(st.complex_numbers(max_magnitude=0.5), st.complex_numbers(max_magnitude=0.4),
       st.floats(min_value=0.1, max_value=0.5), st.integers(min_value=2, max_value=8))
def test_lambda_pushforward_invariance(a, c, R, m):
    R = min(R, 0.9 - abs(c))
    g = oracles.polynomial_bump(c, R, m)
    base = integrate_subdisk(g, c, R, DiskRule(48, 96), LAMBDA)
    cc, RR = oracles.moebius_image_disk(a, c, R)
    T = lambda z: (a - z) / (1 - np.conj(a) * z)
    moved = integrate_subdisk(lambda z: g(T(z)), cc, RR * (1 + 1e-12), DiskRule(48, 96), LAMBDA)
    assert abs(moved - base) <= 1e-8 * base


def test_subdisk_matches_full_disk_rule():
    g = lambda z: np.abs(z) ** 2 * (1 - np.abs(z) ** 2)
    full = integrate_disk(g, RULE, AREA)
    # the whole disk is not allowed; a nearly full one is close
    part = integrate_subdisk(g, 0.0, 0.999999, DiskRule(64, 128), AREA)
    assert abs(full - part) < 1e-10
    with pytest.raises(ValueError):
        integrate_subdisk(g, 0.5, 0.6)


# sup estimators

def test_sup_examples():
    cfg = QuadratureConfig()
    assert sup_disk(lambda z: 1 - np.abs(z) ** 2, I1, cfg) == 1.0
    v = sup_disk(lambda z: np.abs(z), I1, cfg)
    assert 1 - 1e-6 - 1e-15 <= v <= 1.0
    v = sup_disk(lambda z: (1 - np.abs(z) ** 2) * np.abs(2 * z), I1, cfg)
    assert abs(v - 4 * math.sqrt(3) / 9) < 1e-10


def test_sup_is_lower_bound_near_calculus_maximum():
    g = lambda r: (1 - r ** 2) ** 2 * r ** 3 * 5.0
    # d/ds [(1-s)^2 s^(3/2)] = 0 at s = 3/7
    ref = g(math.sqrt(3 / 7))
    assert oracles.grid_sup(g, 20001) <= ref
    res = sup_disk_point(lambda z: g(np.abs(z)))
    assert res.value <= ref * (1 + 1e-14)
    assert abs(res.value - ref) < 1e-9
    assert abs(abs(res.z) - math.sqrt(3 / 7)) < 1e-4


def test_sup_off_center_peak():
    c = 0.6 * np.exp(0.7j)
    res = sup_disk_point(lambda z: np.exp(-np.abs(z - c) ** 2))
    assert abs(res.value - 1.0) < 1e-12
    assert abs(res.z - c) < 1e-5


def test_sphere_sup_examples():
    assert sup_sphere(lambda u: 3.5, 64) == 3.5
    assert sup_sphere(lambda u: u.x, 1) == 1.0
    val, arg = sup_sphere_arg(lambda u: -abs(u.z), 16)
    assert arg == I1 and val == 0.0


def test_slice_symmetric_integrand_sup_equals_e1_value():
    f = SlicePowerSeries(np.random.default_rng(1).standard_normal((6, 4)))
    h = lambda u: integrate_disk(lambda z: f.slice_abs(u, z) ** 2, RULE, AREA)
    assert abs(sup_sphere(h, 64) - h(I1)) < 1e-10


def test_circle_mean():
    assert abs(circle_mean(lambda z: np.abs(z + 0.5) ** 2, 0.5) - 0.5) < 1e-14


def test_nodes_are_cached_and_readonly():
    z1, w1 = disk_nodes(RULE, AREA)
    z2, w2 = disk_nodes(RULE, AREA)
    assert z1 is z2 and not w1.flags.writeable
    assert np.all(w1 > 0)
