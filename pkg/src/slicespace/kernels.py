"""Weighted Bergman kernel, Bergman-type projection, atoms and the embedding operator.

Throughout, ``s = 2 + alpha`` and the scalar kernel on a slice is
``(1 - z conj(w))**(-s)`` with the principal branch. For ``|z|, |w| < 1`` one
has ``Re(1 - z conj(w)) > 0``, so the branch cut is never crossed.
"""

from __future__ import annotations

import math
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.special import poch

from .quadrature import AREA, DiskRule, Measure, disk_nodes, weighted
from .quaternion import (
    Quaternion,
    QuaternionLike,
    as_quaternion,
    decompose,
    pair_to_quaternion,
    qabs,
    qmul,
    quaternion_to_pair,
    slice_complex,
    slice_frame,
    unit_imaginary,
)
from .series import SliceFunction, SliceRegular, SlicePowerSeries
from .spaces._common import CheckReport


def _slice_coord(w, axis) -> complex:
    if isinstance(w, (complex, float, int, np.complexfloating, np.floating)):
        return complex(w)
    return slice_complex(w, axis, 1e-10)


def scalar_kernel(z, w, alpha: float, order: int = 0):
    """``d^order/dz^order (1 - z conj(w))**-(2+alpha)`` for complex arrays."""
    s = 2.0 + alpha
    z = np.asarray(z, dtype=complex)
    wb = np.conj(np.asarray(w, dtype=complex))
    base = (1.0 - z * wb) ** (-(s + order))
    if order == 0:
        return base
    return poch(s, order) * wb ** order * base


def kernel_function(w, alpha: float, i: QuaternionLike) -> SliceFunction:
    """``K_alpha(., w)`` as a slice function on the slice of ``i`` (extension in ``z``)."""
    if not alpha > -1:
        raise ValueError("kernel weight alpha must exceed -1")
    axis = unit_imaginary(i)
    wc = _slice_coord(w, axis)
    if abs(wc) >= 1:
        raise ValueError("kernel point must lie in the unit disk")

    def pair(z, order):
        return scalar_kernel(z, wc, alpha, order), np.zeros(z.shape, complex)

    return SliceFunction(axis, pair, "Bergman kernel")


def bergman_kernel(q: QuaternionLike, w, alpha: float, i: QuaternionLike) -> Quaternion:
    """``K_alpha(q, w)`` for ``q`` in the ball and ``w`` in the disk of ``i``."""
    return kernel_function(w, alpha, i)(q)


def bergman_kernel_wbar(q: QuaternionLike, w, alpha: float, i: QuaternionLike) -> Quaternion:
    """``K_alpha(q, w)`` through the right slice regular extension in ``v = conj(w)``.

    For fixed ``q = x + y J`` the map ``v -> sum q^n (s)_n/n! v^n`` is right
    slice regular, equal to ``(1 - q v)**-s`` on ``C(J)``. Its value at
    ``v = conj(w)`` in ``C(i)`` follows from the right Representation Formula
    ``h(x + yI) = h(x + yJ)(1 - J I)/2 + h(x - yJ)(1 + J I)/2``.
    """
    axis = unit_imaginary(i)
    q = as_quaternion(q)
    sc = decompose(q)
    J = sc.axis
    zeta = sc.complex
    v = np.conj(_slice_coord(w, axis))
    # v = u + t*axis; write it as u + |t| I with I = sign(t) axis
    I_arr = axis.array if v.imag >= 0 else -axis.array
    vp = complex(v.real, abs(v.imag))
    s = 2.0 + alpha
    hp = (1.0 - zeta * vp) ** (-s)
    hm = (1.0 - zeta * np.conj(vp)) ** (-s)
    frame = slice_frame(J)
    Hp = pair_to_quaternion(hp, 0.0, frame)
    Hm = pair_to_quaternion(hm, 0.0, frame)
    JI = qmul(J.array, I_arr)
    one = np.array([1.0, 0.0, 0.0, 0.0])
    out = 0.5 * qmul(Hp, one - JI) + 0.5 * qmul(Hm, one + JI)
    return Quaternion.from_array(out)


def bergman_kernel_series(q: QuaternionLike, w, alpha: float, i: QuaternionLike, terms: int = 400) -> Quaternion:
    """Truncated expansion ``sum_n q^n (s)_n/n! conj(w)^n``."""
    axis = unit_imaginary(i)
    wb = np.conj(_slice_coord(w, axis))
    s = 2.0 + alpha
    n = np.arange(terms)
    c = np.exp(np.cumsum(np.concatenate([[0.0], np.log((s + n[:-1]) / (n[:-1] + 1.0))]))) * wb ** n
    coeffs = pair_to_quaternion(c, np.zeros_like(c), slice_frame(axis))
    return SlicePowerSeries(coeffs)(q)


def wbar_probe(pairs: Sequence, alpha: float, i: QuaternionLike) -> CheckReport:
    """Compare the z-extension and the conj(w)-extension of the kernel on sample pairs.

    The two recipes are compared, not assumed equal; the report carries the
    largest deviation.
    """
    worst, dev = None, 0.0
    for q, w in pairs:
        a = bergman_kernel(q, w, alpha, i)
        b = bergman_kernel_wbar(q, w, alpha, i)
        d = abs(a - b) / max(abs(a), 1.0)
        if d >= dev:
            worst, dev = [as_quaternion(q).to_json(), complex(_slice_coord(w, unit_imaginary(i))).__repr__()], d
    return CheckReport("kernel_wbar_probe", dev <= 1e-10, worst, {"max_deviation": dev})


def _split_values(h, axis, z):
    """Complex components of an on-slice evaluator at the nodes ``z``."""
    if isinstance(h, SliceRegular):
        return h.slice_pair(axis, z)
    v = np.asarray(h(z))
    if np.iscomplexobj(v) or v.shape == z.shape:
        return np.broadcast_to(v, z.shape).astype(complex), np.zeros(z.shape, complex)
    return quaternion_to_pair(v, slice_frame(axis))


def _rising_over_factorial(e: float, K: int) -> np.ndarray:
    """``(e)_k / k!`` for ``k = 0..K``."""
    k = np.arange(1, K + 1)
    return np.concatenate([[1.0], np.cumprod((e + k - 1.0) / k)])


def _modal_coefficients(h, axis, rule: DiskRule, measure: Measure, power: float, e: float):
    """Taylor coefficients ``c_k`` of ``z -> int (1 - z conj(w))**-e h(w) dmu(w)``.

    ``h`` is sampled on the tensor rule; its angular Fourier modes on each
    ring are paired with ``(e)_k/k! (z r)^k`` from the kernel expansion, so
    the angular integral of the kernel is exact for band-limited ``h``.
    """
    nodes, wts = disk_nodes(rule, measure, power)
    h1, h2 = _split_values(h, axis, nodes)
    if not (np.all(np.isfinite(h1)) and np.all(np.isfinite(h2))):
        k = int(np.flatnonzero(~(np.isfinite(h1) & np.isfinite(h2)).ravel())[0])
        raise ValueError(f"integrand is not finite at node w = {complex(nodes.ravel()[k])!r}")
    T = rule.angular
    K = max((T - 1) // 2, 0)
    ring = wts.sum(axis=1)
    r = np.abs(nodes[:, 0])
    rk = r[:, None] ** np.arange(K + 1)[None, :]
    coef = _rising_over_factorial(e, K)
    out = []
    for hh in (h1, h2):
        modes = np.fft.fft(hh, axis=1)[:, : K + 1] / T
        out.append(coef * np.sum(ring[:, None] * rk * modes, axis=0))
    return out[0], out[1]


def _poly_pair(cF, cG):
    from numpy.polynomial import polynomial as npoly

    cache = {}

    def pair(z, order):
        hit = cache.get(order)
        if hit is None:
            a = npoly.polyder(cF, order) if order else cF
            b = npoly.polyder(cG, order) if order else cG
            if len(a) == 0:
                a = b = np.zeros(1, complex)
            hit = cache[order] = (a, b)
        return npoly.polyval(z, hit[0]), npoly.polyval(z, hit[1])

    return pair


def bergman_project(h, alpha: float, i: QuaternionLike, rule: DiskRule = DiskRule(),
                    method: str = "modal", block: int = 512) -> SliceFunction:
    """``K_{alpha,i}[h](q) = int_{B_i} K_alpha(q, w) h(w) dA_{alpha,i}(w)``.

    ``h`` is an on-slice evaluator (complex or quaternion valued) or a slice
    regular function; the result is a slice function on ``i``.

    ``method="modal"`` integrates the kernel over angles mode by mode and is
    accurate up to the boundary. ``method="direct"`` samples the kernel at
    the nodes; it degrades as ``|q| -> 1`` and serves as an independent route.
    """
    if not alpha > -1:
        raise ValueError("projection weight alpha must exceed -1")
    axis = unit_imaginary(i)
    if method == "modal":
        cF, cG = _modal_coefficients(h, axis, rule, weighted(alpha), 0.0, 2.0 + alpha)
        return SliceFunction(axis, _poly_pair(cF, cG), "Bergman projection")
    if method != "direct":
        raise ValueError(f"unknown projection method {method!r}")
    nodes, wts = disk_nodes(rule, weighted(alpha))
    nodes, wts = nodes.ravel(), wts.ravel()
    h1, h2 = _split_values(h, axis, nodes)
    if not (np.all(np.isfinite(h1)) and np.all(np.isfinite(h2))):
        k = int(np.flatnonzero(~(np.isfinite(h1) & np.isfinite(h2)))[0])
        raise ValueError(f"integrand is not finite at node w = {complex(nodes[k])!r}")
    wh1 = wts * h1
    wh2 = wts * h2

    def pair(z, order):
        flat = z.ravel()
        F = np.empty(flat.shape, complex)
        G = np.empty(flat.shape, complex)
        for s in range(0, len(flat), block):
            K = scalar_kernel(flat[s: s + block, None], nodes[None, :], alpha, order)
            F[s: s + block] = K @ wh1
            G[s: s + block] = K @ wh2
        return F.reshape(z.shape), G.reshape(z.shape)

    return SliceFunction(axis, pair, "Bergman projection")


def reproducing_check(f: SlicePowerSeries, alpha: float, i: QuaternionLike, rng=None,
                      n_points: int = 25, radius: float = 0.75, rule: DiskRule = DiskRule(),
                      tol: float = 1e-8, method: str = "modal") -> CheckReport:
    """``K_{alpha,i}[f] = f`` at ``n_points`` slice points and ``n_points`` off-slice points."""
    from .series import random_ball_point, random_disk_points

    axis = unit_imaginary(i)
    rng = np.random.default_rng(0) if rng is None else rng
    P = bergman_project(f, alpha, axis, rule, method)
    zs = random_disk_points(rng, n_points, radius)
    on = np.max(qabs(P.slice_values(axis, zs) - f.slice_values(axis, zs)), initial=0.0)
    qs = [random_ball_point(rng, radius) for _ in range(n_points)]
    devs = [abs(P(q) - f(q)) for q in qs]
    k = int(np.argmax(devs)) if devs else 0
    off = devs[k] if devs else 0.0
    witness = qs[k].to_json() if devs else None
    return CheckReport("reproducing", bool(max(on, off) <= tol), witness,
                       {"on_slice": float(on), "off_slice": float(off)})


def atom(a, b: float, i: QuaternionLike) -> SliceFunction:
    """``P_i[((1 - |a|^2)/(1 - z conj(a)))**b]``."""
    axis = unit_imaginary(i)
    ac = _slice_coord(a, axis)
    if abs(ac) >= 1:
        raise ValueError("atom centre must lie in the unit disk")
    scale = (1.0 - abs(ac) ** 2) ** b
    ab = np.conj(ac)

    def pair(z, order):
        val = scale * (1.0 - ab * z) ** (-(b + order))
        if order:
            val = val * poch(b, order) * ab ** order
        return val, np.zeros(z.shape, complex)

    return SliceFunction(axis, pair, "atom")


def atomic_synthesis(atoms: Sequence, coeffs: Sequence[QuaternionLike], b: float, i: QuaternionLike,
                     p: Optional[float] = None) -> SliceFunction:
    """``f = sum_k P_i[((1 - |a_k|^2)/(1 - z conj(a_k)))**b] d_k`` for a finite list."""
    if len(atoms) != len(coeffs):
        raise ValueError("need one coefficient per atom")
    if p is not None and not b > max(0.0, (p - 1.0) / p):
        raise ValueError("atom exponent must satisfy b > max(0, (p-1)/p)")
    if not b > 0:
        raise ValueError("atom exponent must be positive")
    axis = unit_imaginary(i)
    frame = slice_frame(axis)
    parts = [atom(a, b, axis) for a in atoms]
    dq = np.array([as_quaternion(d).array for d in coeffs]).reshape(-1, 4)
    dF, dG = quaternion_to_pair(dq, frame)

    def pair(z, order):
        F = np.zeros(z.shape, complex)
        G = np.zeros(z.shape, complex)
        for k, A in enumerate(parts):
            t, _ = A.on_slice(z, order)
            F = F + t * dF[k]
            G = G + t * dG[k]
        return F, G

    return SliceFunction(axis, pair, f"atomic synthesis ({len(parts)} atoms)")


def embedding_operator(f, alpha: float, t: float, p: float, i: QuaternionLike, zs,
                       rule: DiskRule = DiskRule()) -> np.ndarray:
    """``T f(z) = (1-|z|^2)^t int (1-|w|^2)^alpha / (1 - z conj(w))^(2+t+alpha) f(w) dA_i(w)``.

    Returns quaternion values of shape ``zs.shape + (4,)``.
    """
    _check_embedding(alpha, t, p)
    axis = unit_imaginary(i)
    zs = np.asarray(zs, dtype=complex)
    F, G = _embedding_pair(f, alpha, t, axis, zs, rule)
    return pair_to_quaternion(F, G, slice_frame(axis))


def _check_embedding(alpha, t, p):
    if not alpha > -1:
        raise ValueError("alpha must exceed -1")
    if not p >= 1:
        raise ValueError("the embedding needs p >= 1")
    if not p * t > 1:
        raise ValueError("the embedding needs p*t > 1")


def _embedding_pair(f, alpha, t, axis, zs, rule, factor=True):
    cF, cG = _modal_coefficients(f, axis, rule, AREA, alpha, 2.0 + t + alpha)
    F, G = _poly_pair(cF, cG)(zs, 0)
    if factor:
        fac = (1.0 - np.abs(zs) ** 2) ** t
        F, G = fac * F, fac * G
    return F, G


def embedding_norm_probe(f, alpha: float, t: float, p: float, i: QuaternionLike,
                         outer: DiskRule = DiskRule(32, 64), inner: DiskRule = DiskRule()) -> float:
    """``||T f||_{L^p(dlambda_i)}``.

    The factor ``(1-|z|^2)^(tp)`` of ``|T f|^p`` is folded into the outer
    Gauss-Jacobi rule together with the ``(1-|z|^2)^-2`` of the measure.
    """
    _check_embedding(alpha, t, p)
    axis = unit_imaginary(i)
    z, w = disk_nodes(outer, AREA, power=t * p - 2.0)
    F, G = _embedding_pair(f, alpha, t, axis, z, inner, factor=False)
    vals = (np.abs(F) ** 2 + np.abs(G) ** 2) ** (p / 2.0)
    return float(np.sum(w * vals)) ** (1.0 / p)


def embedding_gram_check(alpha: float, t: float, p: float, i: QuaternionLike, degree: int = 4,
                         zs=None, rule: DiskRule = DiskRule(), threshold: float = 1e-10) -> CheckReport:
    """Injectivity at desk scale: the grid Gram matrix of ``T(q^n)``, ``n <= degree``, is nonsingular."""
    axis = unit_imaginary(i)
    if zs is None:
        zs = np.concatenate([r * np.exp(2j * np.pi * np.arange(12) / 12) for r in (0.2, 0.45, 0.7, 0.9)])
    cols = []
    for n in range(degree + 1):
        F, G = _embedding_pair(SlicePowerSeries.monomial(n), alpha, t, axis, np.asarray(zs), rule)
        cols.append(np.concatenate([F, G]))
    A = np.stack(cols, axis=1)
    gram = A.conj().T @ A
    ev = np.linalg.eigvalsh(gram)
    ratio = float(ev[0] / ev[-1]) if ev[-1] > 0 else 0.0
    return CheckReport("embedding_injectivity", ratio > threshold, None,
                       {"min_eigenvalue": float(ev[0]), "max_eigenvalue": float(ev[-1]), "ratio": ratio})


def grid_json(fn: SliceRegular, zs, axis: QuaternionLike) -> dict:
    """``{"z": [[re, im], ...], "value": [[w, x, y, z], ...]}`` for export."""
    zs = np.asarray(zs, dtype=complex).ravel()
    vals = fn.slice_values(unit_imaginary(axis), zs)
    return {"z": [[float(z.real), float(z.imag)] for z in zs], "value": vals.tolist()}
