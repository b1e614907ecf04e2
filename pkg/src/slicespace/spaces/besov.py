"""Besov spaces: seminorms, Moebius invariance, n-independence and the B_1 bounds."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .._parallel import pmap
from ..quadrature import AREA, DiskRule, QuadratureConfig, disk_nodes, integrate_disk, sup_disk, weighted
from ..quaternion import Quaternion, QuaternionLike, as_quaternion, slice_complex, slice_frame, unit_imaginary
from ..series import MoebiusMap, SliceFunction, SliceRegular, compose_i
from ._common import DEFAULT_CONFIG, CheckReport, NormReport, axis_entry, sample_axes, zero_tolerant_le


@dataclass(frozen=True)
class BesovParams:
    """Exponent ``p``, derivative order ``n`` (``n p > 1``) and the a-grid size for ``p <= 1``."""

    p: float
    n: int = 1
    grid_size: int = 64

    def __post_init__(self):
        if not self.p > 0:
            raise ValueError("Besov exponent p must be positive")
        if self.n < 1 or not self.n * self.p > 1:
            raise ValueError("Besov derivative order must satisfy n*p > 1")


def _clamp(x: float) -> float:
    # a tiny negative integral from cancellation is a zero
    return max(float(x), 0.0)


def besov_integral(f: SliceRegular, p: float, k: int, i: QuaternionLike,
                   rule: DiskRule = DiskRule()) -> float:
    """``int_{B_i} (1 - |z|^2)^(k p) |d^k f(z)|^p dlambda_i(z)``, which needs ``k p > 1``."""
    if not k * p > 1:
        raise ValueError("the integral is finite only for k*p > 1")
    axis = unit_imaginary(i)
    return _clamp(integrate_disk(lambda z: f.slice_abs(axis, z, k) ** p, rule, AREA, power=k * p - 2.0))


def besov_seminorm(f: SliceRegular, p: float, i: QuaternionLike,
                   config: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """``rho_{p,i}(f) = [int (1-|z|^2)^p |df|^p dlambda_i]^(1/p)`` for ``p > 1``."""
    if not p > 1:
        raise ValueError("besov_seminorm needs p > 1; use besov_seminorm_small_p")
    return besov_integral(f, p, 1, i, config.rule) ** (1.0 / p)


def besov_norm(f: SliceRegular, p: float, config: QuadratureConfig = DEFAULT_CONFIG) -> NormReport:
    """``|f(0)| + sup_i rho_{p,i}(f)`` over the sampled axes (``p > 1``)."""
    axes = sample_axes(config)
    f0 = abs(f.at_zero())
    vals = pmap(lambda u: f0 + besov_seminorm(f, p, u, config), axes)
    cfg = config.to_json()
    cfg["p"] = p
    return NormReport("besov", max(vals), [axis_entry(u, v) for u, v in zip(axes, vals)], cfg)


def default_a_grid(size: int = 64) -> np.ndarray:
    """Deterministic points of the disk of radius 0.9: the origin plus three rings.

    For 64 points the rings ``0.3, 0.6, 0.9`` carry 12, 21 and 30 points.
    Other sizes split the remainder proportionally to the ring radius.
    """
    if size < 1:
        raise ValueError("a-grid needs at least one point")
    rings = (0.3, 0.6, 0.9)
    rest = size - 1
    if size == 64:
        counts = [12, 21, 30]
    else:
        counts = [int(rest * r / 1.8) for r in rings]
        counts[-1] += rest - sum(counts)
    pts = [np.zeros(1, complex)]
    for r, c in zip(rings, counts):
        if c > 0:
            pts.append(r * np.exp(2j * np.pi * (np.arange(c) + 0.5 * (r == 0.6)) / c))
    return np.concatenate(pts)


def moebius_on_slice(a: complex, i: QuaternionLike) -> MoebiusMap:
    """``T_a`` for a complex coordinate ``a`` of the slice of ``i``."""
    axis = unit_imaginary(i)
    q = Quaternion(a.real) + a.imag * axis
    if abs(a) >= 1:
        raise ValueError("Moebius parameter must lie in the unit disk")
    return MoebiusMap(q, axis)


def moebius_value(a: complex, z: complex) -> complex:
    return (a - z) / (1.0 - np.conj(a) * z)


def _rule_for(radius: float, base: DiskRule) -> DiskRule:
    # integrands composed with T_a vary on the scale 1 - |a| near the boundary
    scale = 1.0 / max(1.0 - radius, 1e-3)
    T = max(base.angular, int(2 ** math.ceil(math.log2(48.0 * scale))))
    R = max(base.radial, int(2 ** math.ceil(math.log2(16.0 * math.sqrt(scale)))))
    return DiskRule(R, T, base.clip)


def composed_integral(f: SliceRegular, a: complex, p: float, n: int, i: QuaternionLike,
                      rule: Optional[DiskRule] = None) -> float:
    """``int (1-|z|^2)^(n p) |d^n (f o_i T_a)(z)|^p dlambda_i(z)``."""
    axis = unit_imaginary(i)
    g = compose_i(f, moebius_on_slice(complex(a), axis), axis)
    rule = rule or _rule_for(abs(a), DiskRule())
    return besov_integral(g, p, n, axis, rule)


def besov_small_p_terms(f: SliceRegular, params: BesovParams, i: QuaternionLike,
                        a_grid=None, rule: Optional[DiskRule] = None) -> np.ndarray:
    """The integrals of :func:`composed_integral` for each ``a`` of the grid."""
    grid = default_a_grid(params.grid_size) if a_grid is None else np.asarray(a_grid, dtype=complex)
    return np.array(pmap(lambda a: composed_integral(f, a, params.p, params.n, i,
                                                     rule or _rule_for(abs(a), DiskRule())), grid))


def besov_seminorm_small_p(f: SliceRegular, params: BesovParams, i: QuaternionLike,
                           config: QuadratureConfig = DEFAULT_CONFIG, a_grid=None) -> float:
    """``rho_{p,n,i}(f) = sup |f| + sup_a [int (1-|z|^2)^(np) |d^n(f o_i T_a)|^p dlambda_i]^(1/p)``.

    The sup over ``a`` runs over a fixed grid (:func:`default_a_grid`).
    """
    axis = unit_imaginary(i)
    top = sup_disk(lambda z: f.slice_abs(axis, z), axis, config)
    terms = besov_small_p_terms(f, params, axis, a_grid)
    return top + float(np.max(terms)) ** (1.0 / params.p)


def besov_small_p_invariance_check(f: SliceRegular, params: BesovParams, i: QuaternionLike,
                                   b: complex, a_grid=None, tol: float = 1e-5) -> CheckReport:
    """Grid form of ``rho_{p,n,i}(f o_i T_b) = rho_{p,n,i}(f)``.

    ``T_b o T_a`` is ``T_{T_b(a)}`` up to a rotation, so the term of
    ``f o_i T_b`` at ``a`` must equal the term of ``f`` at ``T_b(a)``.
    """
    axis = unit_imaginary(i)
    grid = default_a_grid(params.grid_size) if a_grid is None else np.asarray(a_grid, dtype=complex)
    g = compose_i(f, moebius_on_slice(complex(b), axis), axis)
    worst, worst_dev = None, 0.0
    lhs_all, rhs_all = [], []
    for a in grid:
        c = moebius_value(complex(b), complex(a))
        rule = _rule_for(max(abs(a), abs(c)), DiskRule())
        lhs = composed_integral(g, a, params.p, params.n, axis, rule)
        rhs = composed_integral(f, c, params.p, params.n, axis, rule)
        dev = abs(lhs - rhs) / max(abs(rhs), 1e-300)
        lhs_all.append(lhs)
        rhs_all.append(rhs)
        if dev >= worst_dev:
            worst, worst_dev = [complex(a).real, complex(a).imag], dev
    return CheckReport("besov_small_p_invariance", worst_dev <= tol, worst,
                       {"max_relative_deviation": worst_dev, "b": [complex(b).real, complex(b).imag]})


def besov_n_independence_check(f: SliceRegular, p: float, n: int, m: int, i: QuaternionLike,
                               rule: DiskRule = DiskRule(), stability: float = 1e-6) -> CheckReport:
    """Both ``int (1-|z|^2)^(kp) |d^k f|^p dlambda_i`` for ``k = n, m`` are finite and stable.

    Stability means the values at ``rule`` and at the doubled rule agree to
    ``stability`` relative (absolute near zero).
    """
    vals, fine_vals = [], []
    for k in (n, m):
        vals.append(besov_integral(f, p, k, i, rule))
        fine_vals.append(besov_integral(f, p, k, i, rule.doubled()))
    finite = all(math.isfinite(v) for v in vals + fine_vals)
    devs = [abs(a - b) / max(abs(b), 1.0) for a, b in zip(vals, fine_vals)]
    stable = all(d <= stability for d in devs)
    ratio = fine_vals[0] / fine_vals[1] if fine_vals[1] > 0 else None
    return CheckReport("besov_n_independence", bool(finite and stable), None,
                       {"n": n, "m": m, "integrals": fine_vals, "coarse": vals,
                        "relative_change": devs, "ratio": ratio})


def besov_double_integral(f: SliceRegular, p: float, alpha: float, i: QuaternionLike,
                          rule: DiskRule = DiskRule(24, 48), block: int = 256) -> float:
    """``int int |f(z) - f(w)|^p / |1 - z conj(w)|^(2(2+alpha)) dA_{alpha,i}(z) dA_{alpha,i}(w)``."""
    if not p > 1 or not alpha > -1:
        raise ValueError("need p > 1 and alpha > -1")
    axis = unit_imaginary(i)
    z, w = disk_nodes(rule, weighted(alpha))
    z, w = z.ravel(), w.ravel()
    vals = f.slice_values(axis, z)
    total = 0.0
    for s in range(0, len(z), block):
        zz = z[s: s + block]
        diff = vals[s: s + block, None, :] - vals[None, :, :]
        num = np.sqrt(np.sum(diff * diff, axis=-1)) ** p
        den = np.abs(1.0 - zz[:, None] * np.conj(z)[None, :]) ** (2.0 * (2.0 + alpha))
        total += float(w[s: s + block] @ (num / den) @ w)
    return total


# B_1


def b1_integral(f: SliceRegular, i: QuaternionLike, radial: int = 64, angular: int = 256) -> float:
    """``int_0^1 int_0^2pi |d^2 f(r e^{i theta})| dtheta dr`` (Gauss-Legendre in r)."""
    axis = unit_imaginary(i)
    x, wx = np.polynomial.legendre.leggauss(radial)
    r = 0.5 * (1.0 + x)
    wr = 0.5 * wx
    theta = 2.0 * math.pi * np.arange(angular) / angular
    z = r[:, None] * np.exp(1j * theta)[None, :]
    vals = f.slice_abs(axis, z, 2)
    return float(np.sum(wr[:, None] * vals) * 2.0 * math.pi / angular)


def b1_lower_bound(f: SliceRegular, i: QuaternionLike, radial: int = 64, angular: int = 256) -> float:
    """``(1/16pi) int_0^1 int_0^2pi |d^2 f| dtheta dr``, a lower bound for the recentred B_{1,i} norm."""
    return b1_integral(f, i, radial, angular) / (16.0 * math.pi)


def b1_decomposition_cost(gammas: Sequence[QuaternionLike]) -> float:
    """``sum_k |gamma_k|`` for a decomposition ``gamma_0 + sum T_{a_k} gamma_k``."""
    return float(sum(abs(as_quaternion(g)) for g in gammas))


def b1_synthesis(atoms: Sequence, gammas: Sequence[QuaternionLike], i: QuaternionLike) -> SliceFunction:
    """``f(q) = gamma_0 + sum_{k>=1} T_{a_k}(q) gamma_k`` on the slice of ``i``.

    ``atoms`` holds ``a_1, a_2, ...`` (complex coordinates or quaternions of
    the slice) and ``gammas`` holds ``gamma_0, gamma_1, ...``.
    """
    axis = unit_imaginary(i)
    frame = slice_frame(axis)
    if len(gammas) != len(atoms) + 1:
        raise ValueError("need one more coefficient than atoms (gamma_0 first)")
    a_c = []
    for a in atoms:
        ac = complex(a) if isinstance(a, (complex, float, int)) else slice_complex(a, axis)
        if abs(ac) >= 1:
            raise ValueError("atoms must lie in the unit disk")
        a_c.append(ac)
    maps = [moebius_on_slice(a, axis) for a in a_c]
    gq = np.array([as_quaternion(g).array for g in gammas])
    coords = gq @ frame.T
    gF = coords[:, 0] + 1j * coords[:, 1]
    gG = coords[:, 2] + 1j * coords[:, 3]

    def pair(z, order):
        F = np.full(z.shape, gF[0] if order == 0 else 0.0, dtype=complex)
        G = np.full(z.shape, gG[0] if order == 0 else 0.0, dtype=complex)
        for k, T in enumerate(maps, start=1):
            t, _ = T.on_slice(z, order)
            F = F + t * gF[k]
            G = G + t * gG[k]
        return F, G

    return SliceFunction(axis, pair, f"B1 synthesis ({len(atoms)} atoms)")


def b1_recentred_cost(f: SliceRegular, gammas: Sequence[QuaternionLike]) -> float:
    """Cost of a decomposition of ``f - f(0) - q df(0)``.

    Since ``-q = T_0(q)``, the decomposition ``gamma_0 + sum T_{a_k} gamma_k``
    of ``f`` yields ``(gamma_0 - f(0)) + sum T_{a_k} gamma_k + T_0 df(0)``.
    """
    g0 = as_quaternion(gammas[0])
    f0 = f.at_zero()
    d0 = f.derivative_at(0.0, 1)
    return abs(g0 - f0) + b1_decomposition_cost(gammas[1:]) + abs(d0)


def b1_consistency_check(atoms, gammas, i: QuaternionLike, others: Sequence[QuaternionLike] = (),
                         radial: int = 64, angular: int = 256, tol: float = 1e-6) -> CheckReport:
    """Lower bound versus decomposition cost, plus the factor-32 slice comparison.

    On ``i``: ``(1/16pi) I_i <= cost``. For each other axis ``j``:
    ``I_j <= 2 I_i`` (the estimate behind the factor 32) and
    ``(1/16pi) I_j <= 32 cost``, where ``I`` is the second-derivative integral.
    """
    f = b1_synthesis(atoms, gammas, i)
    Ii = b1_integral(f, i, radial, angular)
    lb = Ii / (16.0 * math.pi)
    cost = b1_recentred_cost(f, gammas)
    ok = zero_tolerant_le(lb, cost, tol)
    witness = None if ok else "lower bound exceeds cost"
    pairs = []
    for j in others:
        Ij = b1_integral(f, j, radial, angular)
        good = zero_tolerant_le(Ij, 2.0 * Ii, tol) and zero_tolerant_le(Ij / (16.0 * math.pi), 32.0 * cost, tol)
        pairs.append({"axis": unit_imaginary(j).to_json(), "integral": Ij, "ok": good})
        if not good and ok:
            ok, witness = False, unit_imaginary(j).to_json()
    return CheckReport("b1_consistency", ok, witness,
                       {"lower_bound": lb, "cost": cost, "integral": Ii, "axes": pairs})
