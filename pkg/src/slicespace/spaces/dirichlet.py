"""Dirichlet space: coefficient identity, norm and inner product."""

from __future__ import annotations

import math

import numpy as np

from .._parallel import pmap
from ..quadrature import OMEGA, QuadratureConfig, integrate_disk
from ..quaternion import Quaternion, QuaternionLike, qconj, qmul, unit_imaginary
from ..series import SlicePowerSeries
from ._common import DEFAULT_CONFIG, NormReport, axis_entry, sample_axes


def dirichlet_coeff(f: SlicePowerSeries) -> float:
    """``sum_{n>=1} n |a_n|^2``."""
    if len(f) <= 1:
        return 0.0
    n = np.arange(len(f))
    return float(np.sum(n * np.sum(f.coeffs ** 2, axis=1)))


def dirichlet_energy(f: SlicePowerSeries, i: QuaternionLike, config: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """``int_{B_i} |df|^2 dOmega_i`` by quadrature."""
    axis = unit_imaginary(i)
    return float(integrate_disk(lambda z: f.slice_abs(axis, z, 1) ** 2, config.rule, OMEGA))


def dirichlet_integral(f: SlicePowerSeries, i: QuaternionLike, config: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """``(1/pi) int_{B_i} |df|^2 dOmega_i``, equal to :func:`dirichlet_coeff`."""
    return dirichlet_energy(f, i, config) / math.pi


def dirichlet_norm(f: SlicePowerSeries, config: QuadratureConfig = DEFAULT_CONFIG) -> NormReport:
    """``(|f(0)|^2 + sup_i int_{B_i} |df|^2 dOmega_i)^(1/2)``."""
    axes = sample_axes(config)
    energies = pmap(lambda u: dirichlet_energy(f, u, config), axes)
    f0 = abs(f.at_zero()) ** 2
    per_axis = [axis_entry(u, math.sqrt(f0 + e)) for u, e in zip(axes, energies)]
    # companion value with the energy divided by pi, i.e. (|a_0|^2 + sum n |a_n|^2)^(1/2)
    extra = {"energy": max(energies), "dirichlet_integral": max(energies) / math.pi,
             "normalized_value": math.sqrt(f0 + max(energies) / math.pi)}
    return NormReport("dirichlet", math.sqrt(f0 + max(energies)), per_axis, config.to_json(), extra)


def dirichlet_norm_exact(f: SlicePowerSeries) -> float:
    """Closed form ``(|a_0|^2 + pi sum n |a_n|^2)^(1/2)``."""
    return math.sqrt(abs(f.coefficient(0)) ** 2 + math.pi * dirichlet_coeff(f))


def _cross_energy(f: SlicePowerSeries, g: SlicePowerSeries, axis, config) -> Quaternion:
    def integrand(z):
        return qmul(qconj(f.slice_values(axis, z, 1)), g.slice_values(axis, z, 1))

    return integrate_disk(integrand, config.rule, OMEGA)


def dirichlet_inner(f: SlicePowerSeries, g: SlicePowerSeries,
                    config: QuadratureConfig = DEFAULT_CONFIG) -> Quaternion:
    """``conj(f(0)) g(0) + int_{B_i} conj(df) dg dOmega_i`` on the sampled axis of largest real part."""
    axes = sample_axes(config)
    vals = pmap(lambda u: _cross_energy(f, g, unit_imaginary(u), config), axes)
    k = int(np.argmax([v.w for v in vals]))
    return f.at_zero().conj() * g.at_zero() + vals[k]


def dirichlet_inner_exact(f: SlicePowerSeries, g: SlicePowerSeries) -> Quaternion:
    """Closed form ``conj(a_0) b_0 + pi sum n conj(a_n) b_n``."""
    n = min(len(f), len(g))
    if n == 0:
        return Quaternion()
    terms = qmul(qconj(f.coeffs[:n]), g.coeffs[:n])
    w = np.arange(n, dtype=float) * math.pi
    w[0] = 1.0
    return Quaternion.from_array(w @ terms)
