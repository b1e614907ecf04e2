"""Quadrature on slice disks and sup-estimators over disks and the sphere.

All measures used here have the radial form ``c * (1 - |z|**2)**gamma`` in
the variable ``s = |z|**2``. With ``z = sqrt(s) e^{i theta}`` one has
``r dr dtheta = ds dtheta / 2``, so

* ``dA_i       = ds dtheta / (2 pi)``,
* ``dA_{a,i}   = (a + 1)(1 - s)**a ds dtheta / (2 pi)``,
* ``dlambda_i  = (1 - s)**-2 ds dtheta / (2 pi)``,
* ``dOmega_i   = ds dtheta / 2``.

Integrable weights (``gamma > -1``) are handled by Gauss-Jacobi nodes in
``s`` so the weight is integrated exactly and no clipping is needed. The
invariant measure alone is not integrable; it is integrated with
Gauss-Legendre nodes on ``[0, clip**2]``. Angles use the trapezoid rule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Callable, Optional

import numpy as np
from scipy.special import roots_jacobi

from .quaternion import I1, Quaternion, QuaternionLike, UnitImaginary, sphere_sample, unit_imaginary

DEFAULT_CLIP = 1.0 - 1e-6


class QuadratureError(ValueError):
    """Raised when an integrand is not finite at a quadrature node."""


@dataclass(frozen=True)
class QuadratureConfig:
    """Rule and sup-estimator settings shared by the norm routines."""

    radial: int = 64
    angular: int = 128
    clip: float = DEFAULT_CLIP
    sphere_samples: int = 64
    sup_radial: int = 256
    sup_angular: int = 256
    refine_steps: int = 10

    def __post_init__(self):
        if self.radial < 1 or self.angular < 1:
            raise ValueError("radial and angular orders must be positive")
        if not 0.0 < self.clip <= 1.0:
            raise ValueError("clip radius must lie in (0, 1]")
        if self.sphere_samples < 1:
            raise ValueError("need at least one sphere sample")
        if self.sup_radial < 2 or self.sup_angular < 1:
            raise ValueError("sup grid too small")

    @property
    def rule(self) -> "DiskRule":
        return DiskRule(self.radial, self.angular, self.clip)

    def with_(self, **kw) -> "QuadratureConfig":
        return replace(self, **kw)

    def to_json(self) -> dict:
        return {
            "radial": self.radial,
            "angular": self.angular,
            "clip": self.clip,
            "sphere_samples": self.sphere_samples,
        }

    @classmethod
    def from_json(cls, data: dict) -> "QuadratureConfig":
        keys = ("radial", "angular", "clip", "sphere_samples")
        unknown = set(data) - set(keys)
        if unknown:
            raise ValueError(f"unknown quadrature keys: {sorted(unknown)}")
        kw = {k: data[k] for k in keys if k in data}
        for k in ("radial", "angular", "sphere_samples"):
            if k in kw:
                kw[k] = int(kw[k])
        if "clip" in kw:
            kw["clip"] = float(kw["clip"])
        return cls(**kw)


@dataclass(frozen=True)
class DiskRule:
    """Tensor rule: ``radial`` nodes in ``s = r**2`` times ``angular`` nodes in theta."""

    radial: int = 64
    angular: int = 128
    clip: float = DEFAULT_CLIP

    def doubled(self) -> "DiskRule":
        return DiskRule(2 * self.radial, 2 * self.angular, self.clip)


@dataclass(frozen=True)
class Measure:
    """One of the four slice measures.

    ``kind`` is ``"area"`` (dA_i), ``"weighted"`` (dA_{alpha,i}),
    ``"lambda"`` (dlambda_i) or ``"omega"`` (plain area dOmega_i).
    """

    kind: str
    alpha: float = 0.0

    def __post_init__(self):
        if self.kind not in ("area", "weighted", "lambda", "omega"):
            raise ValueError(f"unknown measure kind {self.kind!r}")
        if self.kind == "weighted" and not self.alpha > -1.0:
            raise ValueError("weighted Bergman measure needs alpha > -1")

    @property
    def gamma(self) -> float:
        """Exponent of ``(1 - s)`` in the density."""
        return {"area": 0.0, "weighted": self.alpha, "lambda": -2.0, "omega": 0.0}[self.kind]

    @property
    def constant(self) -> float:
        """Density constant relative to ``ds dtheta``."""
        if self.kind == "omega":
            return 0.5
        if self.kind == "weighted":
            return (self.alpha + 1.0) / (2.0 * math.pi)
        return 1.0 / (2.0 * math.pi)


AREA = Measure("area")
LAMBDA = Measure("lambda")
OMEGA = Measure("omega")


def weighted(alpha: float) -> Measure:
    return Measure("weighted", float(alpha))


@lru_cache(maxsize=256)
def _radial_rule(n: int, gamma: float, clip: float):
    """Nodes ``s_k`` and weights for ``int (1-s)**gamma h(s) ds``."""
    if gamma > -1.0:
        x, w = roots_jacobi(n, gamma, 0.0)
        s = 0.5 * (1.0 + x)
        w = w * 2.0 ** (-gamma - 1.0)
    else:
        x, w = np.polynomial.legendre.leggauss(n)
        top = clip * clip
        s = 0.5 * top * (1.0 + x)
        w = 0.5 * top * w * (1.0 - s) ** gamma
    s.setflags(write=False)
    w.setflags(write=False)
    return s, w


@lru_cache(maxsize=128)
def _nodes(radial: int, angular: int, clip: float, gamma: float, const: float):
    s, ws = _radial_rule(radial, gamma, clip)
    theta = 2.0 * math.pi * np.arange(angular) / angular
    z = np.sqrt(s)[:, None] * np.exp(1j * theta)[None, :]
    w = (const * 2.0 * math.pi / angular) * np.repeat(ws[:, None], angular, axis=1)
    z.setflags(write=False)
    w.setflags(write=False)
    return z, w


def disk_nodes(rule: DiskRule, measure: Measure, power: float = 0.0):
    """Complex nodes ``z`` (shape ``(R, T)``) and weights for ``measure * (1-|z|**2)**power``."""
    return _nodes(rule.radial, rule.angular, float(rule.clip), float(measure.gamma + power),
                  float(measure.constant))


def _evaluator(g, axis):
    from .series import SliceRegular

    if isinstance(g, SliceRegular):
        ax = unit_imaginary(axis) if axis is not None else g.native_axis()
        return lambda z: g.slice_values(ax, z)
    return g


def _check_finite(values, z):
    ok = np.isfinite(values)
    if values.ndim > z.ndim:
        ok = np.all(ok, axis=tuple(range(z.ndim, values.ndim)))
    if not np.all(ok):
        idx = np.unravel_index(int(np.flatnonzero(~ok)[0]), z.shape)
        node = complex(z[idx])
        raise QuadratureError(f"integrand is not finite at node z = {node!r} (index {tuple(int(k) for k in idx)})")


def integrate_disk(g, rule: DiskRule = DiskRule(), measure: Measure = AREA,
                   axis: Optional[QuaternionLike] = None, power: float = 0.0):
    """Integrate an on-slice evaluator over the disk of ``axis``.

    Parameters
    ----------
    g : callable or SliceRegular
        ``g(z)`` for a complex array ``z`` returns real/complex values of the
        same shape, or quaternion values of shape ``z.shape + (4,)``. A slice
        regular function is integrated through its values on ``axis``.
    rule : DiskRule
    measure : Measure
    axis : unit imaginary, optional
        Slice on which ``g`` lives; only used when ``g`` is a function object.
    power : float
        Extra factor ``(1 - |z|**2)**power`` folded into the radial rule.

    Returns
    -------
    float, complex or Quaternion
        Quaternion-valued integrands give a :class:`Quaternion`.
    """
    f = _evaluator(g, axis)
    z, w = disk_nodes(rule, measure, power)
    values = np.asarray(f(z))
    _check_finite(values, z)
    quaternionic = values.ndim == z.ndim + 1 and values.shape[-1] == 4
    total = np.tensordot(w, values, axes=([0, 1], [0, 1]))
    if quaternionic:
        return Quaternion.from_array(total)
    total = complex(total) if np.iscomplexobj(total) else float(total)
    return total


def measure_density(measure: Measure, z) -> np.ndarray:
    """Density of ``measure`` with respect to plain area ``dOmega``."""
    z = np.asarray(z, dtype=complex)
    s = np.abs(z) ** 2
    if measure.kind == "omega":
        return np.ones(z.shape)
    if measure.kind == "area":
        return np.full(z.shape, 1.0 / math.pi)
    if measure.kind == "weighted":
        return (measure.alpha + 1.0) / math.pi * (1.0 - s) ** measure.alpha
    return 1.0 / (math.pi * (1.0 - s) ** 2)


def integrate_subdisk(g, center: complex, radius: float, rule: DiskRule = DiskRule(),
                      measure: Measure = AREA):
    """Integral of ``g`` over the disk ``|z - center| < radius`` inside the unit disk.

    Meant for integrands supported in that disk. Local polar nodes
    ``center + radius sqrt(s) e^{i theta}`` use Gauss-Legendre in ``s`` and the
    trapezoid rule in ``theta``; the measure density is evaluated pointwise.
    """
    center = complex(center)
    if radius <= 0 or abs(center) + radius >= 1.0:
        raise ValueError("the disk must lie inside the unit disk")
    x, wx = np.polynomial.legendre.leggauss(rule.radial)
    s = 0.5 * (1.0 + x)
    theta = 2.0 * math.pi * np.arange(rule.angular) / rule.angular
    z = center + radius * np.sqrt(s)[:, None] * np.exp(1j * theta)[None, :]
    # dOmega = radius^2 ds dtheta / 2
    w = (0.5 * wx)[:, None] * (radius ** 2 * math.pi / rule.angular) * measure_density(measure, z)
    values = np.asarray(g(z))
    _check_finite(values, z)
    total = np.tensordot(w, values, axes=([0, 1], [0, 1]))
    if values.ndim == z.ndim + 1 and values.shape[-1] == 4:
        return Quaternion.from_array(total)
    return complex(total) if np.iscomplexobj(total) else float(total)


def integrate_radial_power(g, rule: DiskRule, measure: Measure, power: float = 0.0) -> float:
    """``integrate_disk`` for real integrands, returned as a float."""
    return float(np.real(integrate_disk(g, rule, measure, power=power)))


@lru_cache(maxsize=16)
def _sup_grid(n_r: int, n_t: int, r_max: float):
    half = n_r // 2
    uniform = np.linspace(0.0, r_max, n_r - half)
    gap0 = max(1.0 - r_max, 1e-15)
    geometric = 1.0 - np.geomspace(0.5, gap0, half)
    radii = np.unique(np.clip(np.concatenate([uniform, geometric]), 0.0, r_max))
    theta = 2.0 * math.pi * np.arange(n_t) / n_t
    return radii, theta


@dataclass(frozen=True)
class SupResult:
    value: float
    z: complex


def sup_disk_point(g: Callable, config: QuadratureConfig = QuadratureConfig()) -> SupResult:
    """Grid maximum of a real function on the clipped disk plus local refinement.

    The polar grid has uniform radii plus a geometric refinement toward the
    clip radius. The best node is then refined by ``refine_steps`` nested
    9 x 9 grids in ``(r, theta)``, each a quarter of the previous size. The
    value is a lower bound of the true supremum.
    """
    radii, theta = _sup_grid(config.sup_radial, config.sup_angular, float(config.clip))
    z = radii[:, None] * np.exp(1j * theta)[None, :]
    vals = np.asarray(g(z), dtype=float)
    _check_finite(vals, z)
    k = int(np.argmax(vals))
    ir, it = np.unravel_index(k, vals.shape)
    best_v = float(vals[ir, it])
    r0, t0 = float(radii[ir]), float(theta[it])
    if config.refine_steps <= 0 or best_v == 0.0:
        return SupResult(best_v, complex(r0 * np.exp(1j * t0)))
    # nested zoom grids around the best node, each stage one vectorised call
    hr = float(radii[min(ir + 1, len(radii) - 1)] - radii[max(ir - 1, 0)]) / 2.0 or 1e-3
    ht = 2.0 * math.pi / config.sup_angular
    offs = np.linspace(-1.0, 1.0, 9)
    for _ in range(config.refine_steps):
        rr = np.clip(r0 + hr * offs, 0.0, config.clip)
        tt = t0 + ht * offs
        zz = rr[:, None] * np.exp(1j * tt)[None, :]
        vv = np.asarray(g(zz), dtype=float)
        _check_finite(vv, zz)
        k = int(np.argmax(vv))
        a, b = np.unravel_index(k, vv.shape)
        if vv[a, b] > best_v:
            best_v, r0, t0 = float(vv[a, b]), float(rr[a]), float(tt[b])
        hr /= 4.0
        ht /= 4.0
    return SupResult(best_v, complex(r0 * np.exp(1j * t0)))


def sup_disk(g: Callable, i: Optional[QuaternionLike] = None,
             config: QuadratureConfig = QuadratureConfig()) -> float:
    """Estimated ``sup_{z in B_i} g(z)``; ``g`` maps complex arrays to real arrays."""
    return sup_disk_point(g, config).value


def sup_sphere(h: Callable[[UnitImaginary], float], M: int = 64) -> float:
    """Maximum of ``h`` over the Fibonacci sample of size ``M``."""
    return max(float(h(u)) for u in sphere_sample(M))


def sup_sphere_arg(h: Callable[[UnitImaginary], float], M: int = 64):
    """``(value, axis)`` of the maximum over the sphere sample (first maximiser wins)."""
    best = None
    for u in sphere_sample(M):
        v = float(h(u))
        if best is None or v > best[0]:
            best = (v, u)
    return best


def circle_mean(g: Callable, r: float, T: int = 256) -> float:
    """Trapezoid mean of ``g`` over the circle ``|z| = r``."""
    theta = 2.0 * math.pi * np.arange(T) / T
    vals = np.asarray(g(r * np.exp(1j * theta)))
    return float(np.mean(vals))
