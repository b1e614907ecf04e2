"""Bloch space, little Bloch space and bounded functions."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .._parallel import pmap
from ..quadrature import QuadratureConfig
from ..quaternion import Quaternion, QuaternionLike, as_quaternion, decompose, unit_imaginary
from ..series import SliceRegular, SlicePowerSeries
from ._common import (
    DEFAULT_CONFIG,
    SUP_TOL,
    CheckReport,
    NormReport,
    axis_entry,
    ball_modulus,
    ball_sup,
    sample_axes,
    slice_sup,
    value_at_zero,
    zero_tolerant_le,
)

COEFF_CONSTANT = math.e / math.sqrt(2.0)


def bloch_seminorm_slice(f: SliceRegular, i: QuaternionLike,
                         config: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """``sup_{z in B_i} (1 - |z|^2) |Q_i[f]'(z)|``."""
    return slice_sup(f, unit_imaginary(i), 1, 1.0, config).value


def bloch_norm_slice(f: SliceRegular, i: QuaternionLike,
                     config: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """``||f||_{B_i} = |f(0)| + sup_{z in B_i} (1 - |z|^2) |Q_i[f]'(z)|``."""
    return value_at_zero(f) + bloch_seminorm_slice(f, i, config)


def _sphere_report(space: str, f: SliceRegular, slice_fn, ball_value, ball_axis,
                   config: QuadratureConfig, extra_config: Optional[dict] = None) -> NormReport:
    axes = sample_axes(config)
    vals = pmap(lambda u: slice_fn(f, u, config), axes)
    per_axis = [axis_entry(u, v, source="lattice") for u, v in zip(axes, vals)]
    per_axis.append(axis_entry(ball_axis, ball_value, source="maximiser"))
    value = max(e["value"] for e in per_axis)
    cfg = config.to_json()
    if extra_config:
        cfg.update(extra_config)
    return NormReport(space, value, per_axis, cfg)


def bloch_norm(f: SliceRegular, config: QuadratureConfig = DEFAULT_CONFIG) -> NormReport:
    """``||f||_B = |f(0)| + sup_{q in B} (1 - |q|^2) |d f/dx0 (q)|``.

    The sup over the ball is taken exactly in the axis variable (see
    :func:`ball_modulus`) and by grid search in the slice variable; the
    report also lists the slice norms on the sampled axes.
    """
    s, _, axis = ball_sup(f, 1, 1.0, config)
    f0 = value_at_zero(f)
    return _sphere_report("bloch", f, bloch_norm_slice, f0 + s, axis, config)


def bloch_equivalence_check(f: SliceRegular, config: QuadratureConfig = DEFAULT_CONFIG,
                            tol: float = SUP_TOL, norm: Optional[NormReport] = None) -> CheckReport:
    """``||f||_{B_i} <= ||f||_B <= 2 ||f||_{B_i}`` on every sampled axis."""
    rep = norm or bloch_norm(f, config)
    N = rep.value
    worst, worst_ratio, ok = None, 0.0, True
    for e in rep.per_axis:
        if e.get("source") != "lattice":
            continue
        ni = e["value"]
        good = zero_tolerant_le(ni, N, tol) and zero_tolerant_le(N, 2.0 * ni, tol)
        ratio = N / ni if ni > 0 else (0.0 if N == 0 else math.inf)
        if not good and ok:
            worst, ok = e["axis"], False
        if ok and ratio >= worst_ratio:
            worst, worst_ratio = e["axis"], ratio
    return CheckReport("bloch_equivalence", ok, worst, {"bloch_norm": N, "max_ratio": worst_ratio})


def hinf_slice(f: SliceRegular, i: QuaternionLike, config: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """``sup_{z in B_i} |f(z)|``."""
    return slice_sup(f, unit_imaginary(i), 0, 0.0, config).value


def hinf_norm(f: SliceRegular, config: QuadratureConfig = DEFAULT_CONFIG) -> NormReport:
    """``||f||_inf = sup_{q in B} |f(q)|`` (clipped at ``config.clip``)."""
    s, _, axis = ball_sup(f, 0, 0.0, config)
    return _sphere_report("hinf", f, hinf_slice, s, axis, config)


def hinf_check(f: SliceRegular, config: QuadratureConfig = DEFAULT_CONFIG, tol: float = SUP_TOL,
               bloch: Optional[NormReport] = None) -> CheckReport:
    """``||f||_{inf,i} <= ||f||_inf <= 2 ||f||_{inf,i}`` and ``||f||_B <= 4 ||f||_inf``."""
    rep = hinf_norm(f, config)
    H = rep.value
    bl = (bloch or bloch_norm(f, config)).value
    witness, ok = None, True
    for e in rep.per_axis:
        if e.get("source") != "lattice":
            continue
        if not (zero_tolerant_le(e["value"], H, tol) and zero_tolerant_le(H, 2.0 * e["value"], tol)):
            witness, ok = e["axis"], False
            break
    four = zero_tolerant_le(bl, 4.0 * H, tol)
    if ok and not four:
        witness = "bloch <= 4 hinf"
    return CheckReport("hinf_sandwich", ok and four, witness, {"hinf": H, "bloch": bl})


@dataclass
class LittleBlochResult:
    passed: bool
    radii: list = field(default_factory=list)
    profile: list = field(default_factory=list)
    dilation_radii: list = field(default_factory=list)
    dilation_distance: list = field(default_factory=list)

    def __bool__(self):
        return self.passed

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "radii": self.radii,
            "profile": self.profile,
            "dilation_radii": self.dilation_radii,
            "dilation_distance": self.dilation_distance,
        }


def radial_profile(f: SliceRegular, radii, order: int = 1, weight_power: float = 1.0,
                   angular: int = 256) -> np.ndarray:
    """``(1 - r^2)**weight_power * max_{theta, J} |d^order f(r e^{J theta})|`` per radius."""
    radii = np.asarray(radii, dtype=float)
    theta = 2.0 * math.pi * np.arange(angular) / angular
    z = radii[:, None] * np.exp(1j * theta)[None, :]
    m, _ = ball_modulus(f, z, order)
    return (1.0 - radii ** 2) ** weight_power * m.max(axis=1)


def little_bloch_test(f: SlicePowerSeries, tol: float = 0.05,
                      config: QuadratureConfig = DEFAULT_CONFIG,
                      dilation_radii: Sequence[float] = (0.9, 0.99, 0.999)) -> LittleBlochResult:
    """Numerical test for membership in the little Bloch space.

    Passes when the boundary profile ``(1 - r^2) max |df|`` at the clip radius
    and the dilation distances ``||f_r - f||_B`` are decreasing and end below
    ``tol * ||f||_B`` (absolute ``tol`` for the zero function).
    """
    if not isinstance(f, SlicePowerSeries):
        raise TypeError("the dilation test needs a power series")
    gaps = [10.0 ** (-k) for k in range(1, 7)]
    radii = sorted({min(1.0 - g, config.clip) for g in gaps} | {config.clip})
    prof = radial_profile(f, radii)
    scale = bloch_norm(f, config.with_(sphere_samples=1)).value
    bound = tol * scale if scale > 0 else tol
    dist = [bloch_norm(f.dilate(r) - f, config.with_(sphere_samples=1)).value for r in dilation_radii]
    tail = prof[-3:]
    decreasing = all(b <= a * (1 + 1e-9) + 1e-15 for a, b in zip(dist, dist[1:]))
    decreasing = decreasing and all(b <= a * (1 + 1e-9) + 1e-15 for a, b in zip(tail, tail[1:]))
    passed = bool(decreasing and dist[-1] <= bound and prof[-1] <= bound)
    return LittleBlochResult(passed, list(map(float, radii)), prof.tolist(),
                             list(map(float, dilation_radii)), dist)


def derivative_growth_check(f: SliceRegular, n: int, config: QuadratureConfig = DEFAULT_CONFIG,
                            tol: float = SUP_TOL, bloch: Optional[NormReport] = None) -> CheckReport:
    """``sup (1 - |q|^2)^n |d^n f(q)| <= 2^(2n+2) (n-1)! ||f||_B``."""
    if n < 2:
        raise ValueError("the derivative growth bound is stated for n >= 2")
    lhs, z, axis = ball_sup(f, n, float(n), config)
    bl = (bloch or bloch_norm(f, config)).value
    rhs = 2.0 ** (2 * n + 2) * math.factorial(n - 1) * bl
    point = Quaternion(z.real) + z.imag * axis
    return CheckReport(f"derivative_growth_n{n}", zero_tolerant_le(lhs, rhs, tol), point.to_json(),
                       {"lhs": lhs, "rhs": rhs, "n": n})


def coeff_bound_check(f: SlicePowerSeries, config: QuadratureConfig = DEFAULT_CONFIG,
                      tol: float = SUP_TOL, bloch: Optional[NormReport] = None) -> CheckReport:
    """``max_n |a_n| <= (e / sqrt 2) ||f||_B``."""
    mods = np.sqrt(np.sum(f.coeffs ** 2, axis=1)) if len(f) else np.zeros(0)
    bl = (bloch or bloch_norm(f, config)).value
    rhs = COEFF_CONSTANT * bl
    k = int(np.argmax(mods)) if len(mods) else 0
    lhs = float(mods[k]) if len(mods) else 0.0
    return CheckReport("coefficient_bound", zero_tolerant_le(lhs, rhs, tol), k, {"lhs": lhs, "rhs": rhs})


def lacunary_certificate(f: SlicePowerSeries, ratio: float, M: float) -> bool:
    """Sufficient condition for Bloch membership of a gap series.

    The nonzero coefficients of positive index ``n_1 < n_2 < ...`` must satisfy
    ``n_{k+1} / n_k >= ratio`` and ``|a_{n_k}| <= M``. The constant term is
    not part of the chain.
    """
    if ratio <= 1.0:
        raise ValueError("gap ratio must exceed 1")
    mods = np.sqrt(np.sum(f.coeffs ** 2, axis=1)) if len(f) else np.zeros(0)
    support = [n for n in range(1, len(mods)) if mods[n] > 0.0]
    if any(mods[n] > M for n in support):
        return False
    return all(b >= ratio * a for a, b in zip(support, support[1:]))


def _common_axis(q: Quaternion, u: Quaternion):
    sq, su = decompose(q), decompose(u)
    if sq.is_real and su.is_real:
        return sq.axis
    base = su.axis if sq.is_real else sq.axis
    from ..quaternion import same_slice

    if not (same_slice(q, base, 1e-10) and same_slice(u, base, 1e-10)):
        raise ValueError("points do not lie on a common slice")
    return base


def pseudo_hyperbolic(z, w):
    """``rho(z, w) = |z - w| / |1 - conj(z) w|`` for complex arrays."""
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    return np.abs(z - w) / np.abs(1.0 - np.conj(z) * w)


def slice_distance(q: QuaternionLike, u: QuaternionLike) -> float:
    """``d(q, u) = (1/2) log((1 + rho)/(1 - rho))`` for two points of one slice."""
    from ..quaternion import slice_complex

    q, u = as_quaternion(q), as_quaternion(u)
    if abs(q) >= 1.0 or abs(u) >= 1.0:
        raise ValueError("points must lie in the unit ball")
    axis = _common_axis(q, u)
    rho = float(pseudo_hyperbolic(slice_complex(q, axis, 1e-10), slice_complex(u, axis, 1e-10)))
    return float(np.arctanh(min(rho, 1.0)))


def bloch_lipschitz_check(f: SliceRegular, i: QuaternionLike, pairs=None, rng=None, n_pairs: int = 50,
                          config: QuadratureConfig = DEFAULT_CONFIG, tol: float = SUP_TOL,
                          bloch: Optional[NormReport] = None) -> CheckReport:
    """``|f(q) - f(u)| <= sqrt(2) ||f||_B d(q, u)`` on pairs of one slice."""
    i = unit_imaginary(i)
    if pairs is None:
        rng = np.random.default_rng(0) if rng is None else rng
        from ..series import random_disk_points

        zs = random_disk_points(rng, 2 * n_pairs, 0.999)
        pairs = [(Quaternion(z.real) + z.imag * i, Quaternion(w.real) + w.imag * i)
                 for z, w in zip(zs[:n_pairs], zs[n_pairs:])]
    bl = (bloch or bloch_norm(f, config)).value
    worst, worst_gap, ok = None, -math.inf, True
    for q, u in pairs:
        lhs = abs(f(q) - f(u))
        rhs = math.sqrt(2.0) * bl * slice_distance(q, u)
        gap = lhs - rhs
        if gap > worst_gap:
            worst_gap, worst = gap, [q.to_json(), u.to_json()]
        if not zero_tolerant_le(lhs, rhs, tol):
            ok = False
    return CheckReport("bloch_lipschitz", ok, worst, {"bloch": bl, "max_excess": worst_gap})
