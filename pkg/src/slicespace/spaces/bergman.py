"""Weighted Bergman spaces, the Bergman metric and the related pointwise bounds."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .._parallel import pmap
from ..quadrature import QuadratureConfig, circle_mean, integrate_disk, weighted
from ..quaternion import Quaternion, QuaternionLike, qabs, slice_complex, unit_imaginary
from ..series import SliceRegular, random_ball_point, random_disk_points
from ._common import DEFAULT_CONFIG, CheckReport, NormReport, axis_entry, sample_axes, zero_tolerant_le
from .bloch import pseudo_hyperbolic


@dataclass(frozen=True)
class BergmanParams:
    p: float
    alpha: float = 0.0

    def __post_init__(self):
        if not self.p > 0:
            raise ValueError("Bergman exponent p must be positive")
        if not self.alpha > -1:
            raise ValueError("Bergman weight alpha must exceed -1")


def bergman_integral(f: SliceRegular, params: BergmanParams, i: QuaternionLike,
                     config: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """``int_{B_i} |f|^p dA_{alpha,i}``."""
    axis = unit_imaginary(i)
    return float(integrate_disk(lambda z: f.slice_abs(axis, z) ** params.p, config.rule,
                                weighted(params.alpha)))


def bergman_norm(f: SliceRegular, params: BergmanParams, i: QuaternionLike,
                 config: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """``||f||_{p,alpha,i} = (int_{B_i} |f|^p dA_{alpha,i})^(1/p)``."""
    return bergman_integral(f, params, i, config) ** (1.0 / params.p)


def bergman_norm_sup(f: SliceRegular, params: BergmanParams,
                     config: QuadratureConfig = DEFAULT_CONFIG) -> NormReport:
    """``||f||_{p,alpha}``: the slice norms maximised over the sampled axes."""
    axes = sample_axes(config)
    vals = pmap(lambda u: bergman_norm(f, params, u, config), axes)
    per_axis = [axis_entry(u, v) for u, v in zip(axes, vals)]
    cfg = config.to_json()
    cfg.update({"p": params.p, "alpha": params.alpha})
    return NormReport("bergman", max(vals), per_axis, cfg)


def bergman_slice_sandwich_check(f: SliceRegular, params: BergmanParams, i: QuaternionLike,
                                 j: QuaternionLike, config: QuadratureConfig = DEFAULT_CONFIG,
                                 tol: float = 1e-10) -> CheckReport:
    """``int_{B_j} |f|^p dA_{alpha,j} <= 2^max(p,1) int_{B_i} |f|^p dA_{alpha,i}``."""
    Ij = bergman_integral(f, params, j, config)
    Ii = bergman_integral(f, params, i, config)
    c = 2.0 ** max(params.p, 1.0)
    ok = zero_tolerant_le(Ij, c * Ii, tol)
    return CheckReport("bergman_slice_sandwich", ok,
                       [unit_imaginary(i).to_json(), unit_imaginary(j).to_json()],
                       {"lhs": Ij, "rhs": c * Ii})


def point_bound_check(f: SliceRegular, params: BergmanParams, i: QuaternionLike, rng=None,
                      n_points: int = 50, config: QuadratureConfig = DEFAULT_CONFIG,
                      slice_norm: Optional[float] = None, ball_norm: Optional[float] = None,
                      tol: float = 1e-10) -> CheckReport:
    """Point evaluation bounds.

    On the slice: ``|f(z)| <= 2 ||f||_{p,alpha,i} / (1 - |z|^2)^((2+alpha)/p)``.
    Off the slice: ``|f(q)| <= 4 ||f||_{p,alpha} / (1 - |q|^2)^((2+alpha)/p)``,
    with the sampled-axis sup standing in for ``||f||_{p,alpha}``.
    """
    axis = unit_imaginary(i)
    rng = np.random.default_rng(0) if rng is None else rng
    expo = (2.0 + params.alpha) / params.p
    ni = bergman_norm(f, params, axis, config) if slice_norm is None else slice_norm
    nb = bergman_norm_sup(f, params, config).value if ball_norm is None else ball_norm
    zs = random_disk_points(rng, n_points, 0.999)
    lhs = f.slice_abs(axis, zs)
    rhs = 2.0 * ni / (1.0 - np.abs(zs) ** 2) ** expo
    excess = lhs - rhs * (1.0 + tol)
    qs = [random_ball_point(rng, 0.999) for _ in range(n_points)]
    lhs_q = np.array([abs(f(q)) for q in qs])
    rhs_q = np.array([4.0 * nb / (1.0 - abs(q) ** 2) ** expo for q in qs])
    excess_q = lhs_q - rhs_q * (1.0 + tol)
    k, kq = int(np.argmax(excess)), int(np.argmax(excess_q))
    ok = bool(np.all(excess <= 1e-12) and np.all(excess_q <= 1e-12))
    if excess[k] >= excess_q[kq]:
        witness = (Quaternion(zs[k].real) + zs[k].imag * axis).to_json()
    else:
        witness = qs[kq].to_json()
    return CheckReport("bergman_point_bound", ok, witness,
                       {"slice_norm": ni, "ball_norm": nb,
                        "max_ratio_slice": float(np.max(lhs / rhs)),
                        "max_ratio_ball": float(np.max(lhs_q / rhs_q))})


def mean_value_check(f: SliceRegular, p: float, r, i: QuaternionLike = None,
                     angular: int = 256, tol: float = 1e-10) -> CheckReport:
    """``|f(0)|^p <= 2^max(p,1) (1/2pi) int_0^2pi |f(r e^{i theta})|^p dtheta`` for each radius."""
    axis = unit_imaginary(i) if i is not None else f.native_axis()
    radii = np.atleast_1d(np.asarray(r, dtype=float))
    if np.any(radii <= 0) or np.any(radii >= 1):
        raise ValueError("circle radii must lie in (0, 1)")
    lhs = abs(f.at_zero()) ** p
    c = 2.0 ** max(p, 1.0)
    means = np.array([circle_mean(lambda z: f.slice_abs(axis, z) ** p, rr, angular) for rr in radii])
    rhs = c * means
    k = int(np.argmin(rhs))
    ok = bool(np.all(lhs <= rhs * (1.0 + tol) + 1e-14))
    return CheckReport("bergman_mean_value", ok, float(radii[k]), {"lhs": lhs, "min_rhs": float(rhs[k])})


def _slice_point(z, i):
    if isinstance(z, (complex, float, int, np.complexfloating, np.floating)):
        return complex(z)
    return slice_complex(z, i)


def bergman_metric(z, w, i: QuaternionLike = None) -> float:
    """``beta_i(z, w) = (1/2) log((1 + rho)/(1 - rho))`` for points of ``B_i``.

    Points are complex numbers, or quaternions of the slice of ``i``.
    """
    zc, wc = _slice_point(z, i), _slice_point(w, i)
    if abs(zc) >= 1 or abs(wc) >= 1:
        raise ValueError("points must lie in the unit disk")
    rho = float(pseudo_hyperbolic(zc, wc))
    return float(np.arctanh(min(rho, 1.0)))


def bergman_disk_indicator(z, r: float, i: QuaternionLike = None):
    """Predicate ``w -> beta_i(z, w) < r`` (vectorised over complex ``w``)."""
    zc = _slice_point(z, i)
    t = math.tanh(r)

    def inside(w):
        return pseudo_hyperbolic(zc, np.asarray(w, dtype=complex)) < t

    return inside


def _bergman_ball_integral(f: SliceRegular, axis, z: complex, r: float, params: BergmanParams,
                           radial: int, angular: int) -> float:
    """``int_{D_i(z, r)} |f|^p dA_{alpha,i}`` by the change of variables ``w = phi_z(u)``.

    ``phi_z(u) = (z - u)/(1 - conj(z) u)`` maps the disk ``|u| < tanh r`` onto
    the Bergman ball, with Jacobian ``|phi_z'(u)|^2``.
    """
    R = math.tanh(r)
    x, wx = np.polynomial.legendre.leggauss(radial)
    rho = 0.5 * R * (1.0 + x)
    wr = 0.5 * R * wx * rho / math.pi
    theta = 2.0 * math.pi * np.arange(angular) / angular
    u = rho[:, None] * np.exp(1j * theta)[None, :]
    den = 1.0 - np.conj(z) * u
    w = (z - u) / den
    jac = ((1.0 - abs(z) ** 2) / np.abs(den) ** 2) ** 2
    dens = (params.alpha + 1.0) * (1.0 - np.abs(w) ** 2) ** params.alpha
    vals = f.slice_abs(axis, w) ** params.p * dens * jac
    return float(np.sum(wr[:, None] * vals) * 2.0 * math.pi / angular)


def submean_probe(f: SliceRegular, params: BergmanParams, r: float, i: QuaternionLike,
                  zs=None, radial: int = 48, angular: int = 96) -> dict:
    """Empirical constant of the sub-mean-value inequality on a z-grid.

    For each ``z`` returns ``C(z) = |f(z)|^p (1-|z|^2)^(2+alpha) / (2^max(p,1) I(z))``
    with ``I(z)`` the integral of ``|f|^p dA_{alpha,i}`` over ``D_i(z, r)``;
    the smallest admissible ``C`` on the grid is their maximum. No bound is
    asserted.
    """
    axis = unit_imaginary(i)
    if zs is None:
        zs = np.concatenate([[0.0], *(rr * np.exp(2j * np.pi * np.arange(8) / 8) for rr in (0.3, 0.6, 0.9))])
    zs = np.asarray(zs, dtype=complex)
    c = 2.0 ** max(params.p, 1.0)
    out = []
    for z in zs:
        I = _bergman_ball_integral(f, axis, complex(z), r, params, radial, angular)
        num = float(f.slice_abs(axis, np.array([z]))[0]) ** params.p * (1.0 - abs(z) ** 2) ** (2.0 + params.alpha)
        out.append(num / (c * I) if I > 0 else (0.0 if num == 0 else math.inf))
    return {"C": max(out), "z": [[complex(z).real, complex(z).imag] for z in zs], "per_point": out}
