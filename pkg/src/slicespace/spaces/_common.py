"""Reports and ball-wide maximisation shared by the space modules."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

from ..quadrature import QuadratureConfig, SupResult, sup_disk_point
from ..quaternion import E1, E2, E3, Quaternion, UnitImaginary, qabs, qmul, sphere_sample
from ..series import SliceRegular, SlicePowerSeries

DEFAULT_CONFIG = QuadratureConfig()
SUP_TOL = 1e-4


def _clean(x):
    if isinstance(x, (np.floating, np.integer)):
        return x.item()
    if isinstance(x, complex):
        return [x.real, x.imag]
    if isinstance(x, Quaternion):
        return x.to_json()
    if isinstance(x, dict):
        return {k: _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    if isinstance(x, np.ndarray):
        return _clean(x.tolist())
    return x


@dataclass
class NormReport:
    """A norm value with its per-axis slice values and the configuration used."""

    space: str
    value: float
    per_axis: list = field(default_factory=list)
    config: dict = field(default_factory=dict)
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {
            "space": self.space,
            "value": float(self.value),
            "per_axis": _clean(self.per_axis),
            "config": _clean(self.config),
        }
        if self.extra:
            out["extra"] = _clean(self.extra)
        return out

    def axis_values(self) -> np.ndarray:
        return np.array([e["value"] for e in self.per_axis], dtype=float)


@dataclass
class CheckReport:
    """Outcome of an inequality or identity check.

    ``witness`` names the worst case (axis, point or index) whether or not
    the check passed; ``details`` carries the computed sides.
    """

    name: str
    passed: bool
    witness: Any = None
    details: dict = field(default_factory=dict)

    def __bool__(self):
        return bool(self.passed)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": bool(self.passed),
            "witness": _clean(self.witness),
            "details": _clean(self.details),
        }


def axis_entry(axis, value, **extra) -> dict:
    e = {"axis": Quaternion.from_array(axis.array).to_json(), "value": float(value)}
    e.update(extra)
    return e


_UNITS = (E1.array, E2.array, E3.array)


def ball_modulus(f: SliceRegular, z, order: int = 0):
    """``max_J |d^order f(x + y J)|`` over unit imaginaries ``J``, for ``z = x + 1j*y``.

    With ``A, B`` the values at ``x -+ y I`` on a fixed slice, the value on
    ``C(J)`` is ``u + J w`` where ``u = (A + B)/2`` and ``w = I (A - B)/2``.
    Then ``|u + J w|**2 = |u|**2 + |w|**2 + 2 <J, c>`` with
    ``c_k = <u, e_k w>``, maximal at ``J = c/|c|``.

    Returns the maxima and the maximising axes as an array ``(..., 3)``.
    """
    z = np.asarray(z, dtype=complex)
    axis = f.native_axis()
    b = f.slice_values(axis, z, order)
    a = f.slice_values(axis, np.conj(z), order)
    u = 0.5 * (a + b)
    w = 0.5 * qmul(axis.array, a - b)
    c = np.stack([np.sum(u * qmul(e, w), axis=-1) for e in _UNITS], axis=-1)
    cn = np.sqrt(np.sum(c * c, axis=-1))
    sq = np.sum(u * u, axis=-1) + np.sum(w * w, axis=-1) + 2.0 * cn
    safe = np.where(cn > 0, cn, 1.0)
    J = np.where((cn > 0)[..., None], c / safe[..., None], np.array([1.0, 0.0, 0.0]))
    return np.sqrt(np.maximum(sq, 0.0)), J


def ball_sup(f: SliceRegular, order: int, weight_power: float,
             config: QuadratureConfig = DEFAULT_CONFIG):
    """Estimate of ``sup_{q in B} (1-|q|^2)**weight_power |d^order f(q)|``.

    Returns ``(value, z, axis)`` where the maximiser is ``x + y*axis`` with
    ``z = x + 1j*y`` (``y >= 0``).
    """
    def g(z):
        m, _ = ball_modulus(f, z, order)
        return (1.0 - np.abs(z) ** 2) ** weight_power * m if weight_power else m

    res: SupResult = sup_disk_point(g, config)
    z = res.z if res.z.imag >= 0 else np.conj(res.z)
    _, J = ball_modulus(f, np.array([z]), order)
    axis = UnitImaginary(0.0, *J[0])
    return res.value, complex(z), axis


def slice_sup(f: SliceRegular, axis, order: int, weight_power: float,
              config: QuadratureConfig = DEFAULT_CONFIG) -> SupResult:
    """Estimate of ``sup_{z in B_i} (1-|z|^2)**weight_power |d^order f(z)|``."""
    def g(z):
        m = f.slice_abs(axis, z, order)
        return (1.0 - np.abs(z) ** 2) ** weight_power * m if weight_power else m

    return sup_disk_point(g, config)


def sample_axes(config: QuadratureConfig):
    return sphere_sample(config.sphere_samples)


def value_at_zero(f: SliceRegular) -> float:
    return abs(f.at_zero())


def zero_tolerant_le(lhs: float, rhs: float, rel: float, abs_tol: float = 1e-12) -> bool:
    """``lhs <= rhs`` allowing a relative slack ``rel`` and a tiny absolute one."""
    return lhs <= rhs * (1.0 + rel) + abs_tol
