"""Slice regular functions on the quaternionic unit ball.

Two concrete representations share the :class:`SliceRegular` interface:

* :class:`SlicePowerSeries` -- a truncated series ``sum q**n a_n`` with
  quaternionic coefficients on the right;
* :class:`SliceFunction` -- an evaluator defined on one slice ``C(I)`` and
  extended to the ball through the Representation Formula. Moebius maps,
  compositions, kernel atoms and projections are of this kind.

On a slice ``C(i)`` points are handled as complex numbers ``x + 1j*y``
standing for ``x + i*y``, and quaternion values are split as
``F + G*j`` with ``F, G`` complex and ``j = orthogonal_unit(i)``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from numpy.polynomial import polynomial as npoly

from .quaternion import (
    ONE,
    Quaternion,
    QuaternionLike,
    UnitImaginary,
    as_quaternion,
    decompose,
    orthogonal_unit,
    pair_to_quaternion,
    qabs,
    qmul,
    quaternion_to_pair,
    same_slice,
    slice_complex,
    slice_frame,
    unit_imaginary,
)

PairFn = Callable[[np.ndarray, int], tuple]


def represent(value_minus: QuaternionLike, value_plus: QuaternionLike,
              source_axis: QuaternionLike, target_axis: QuaternionLike) -> Quaternion:
    """Value at ``x + y*i`` from the values at ``x - y*j`` and ``x + y*j``.

    ``source_axis`` is ``j`` and ``target_axis`` is ``i``; the result is
    ``(1 + i j)/2 * f(x - y j) + (1 - i j)/2 * f(x + y j)``.
    """
    a = as_quaternion(value_minus).array
    b = as_quaternion(value_plus).array
    out = _represent_arrays(a, b, unit_imaginary(source_axis), unit_imaginary(target_axis))
    return Quaternion.from_array(out)


def _represent_arrays(a, b, source: UnitImaginary, target: UnitImaginary):
    ij = qmul(target.array, source.array)
    return 0.5 * ((a + b) + qmul(ij, a - b))


def _axis_relation(a: UnitImaginary, b: UnitImaginary, tol: float = 1e-12) -> int:
    """+1 if ``a == b``, -1 if ``a == -b``, 0 otherwise (distance up to ``tol``)."""
    # a dot-product test would accept angles up to sqrt(2 tol)
    if float(np.linalg.norm(a.vector - b.vector)) <= tol:
        return 1
    if float(np.linalg.norm(a.vector + b.vector)) <= tol:
        return -1
    return 0


class SliceRegular:
    """Interface shared by power series and slice evaluators.

    Subclasses implement :meth:`slice_pair`; everything else derives from it.
    """

    #: functions are defined for ``|q| < radius``
    radius: float = math.inf

    def slice_pair(self, axis: QuaternionLike, z, order: int = 0):
        """Complex components ``(F, G)`` of the ``order``-th derivative on ``C(axis)``.

        ``d^order f / dx0^order (x + axis*y) = F(z) + G(z) j`` with
        ``z = x + 1j*y`` and ``j = orthogonal_unit(axis)``.
        """
        raise NotImplementedError

    def slice_values(self, axis: QuaternionLike, z, order: int = 0) -> np.ndarray:
        """Quaternion array of the ``order``-th derivative at ``x + axis*y``."""
        axis = unit_imaginary(axis)
        f, g = self.slice_pair(axis, z, order)
        return pair_to_quaternion(f, g, slice_frame(axis))

    def slice_abs(self, axis: QuaternionLike, z, order: int = 0) -> np.ndarray:
        f, g = self.slice_pair(axis, z, order)
        return np.sqrt(np.abs(f) ** 2 + np.abs(g) ** 2)

    def native_axis(self) -> UnitImaginary:
        from .quaternion import I1
        return I1

    def __call__(self, q: QuaternionLike) -> Quaternion:
        return self.derivative_at(q, 0)

    def derivative_at(self, q: QuaternionLike, order: int) -> Quaternion:
        """``d^order f / dx0^order`` at an arbitrary point of the ball."""
        sc = decompose(q)
        self._check_domain(abs(sc.complex))
        axis = self.native_axis() if sc.is_real else sc.axis
        v = self.slice_values(axis, np.array([sc.complex]), order)[0]
        return Quaternion.from_array(v)

    def at_zero(self) -> Quaternion:
        return self(0.0)

    def _check_domain(self, modulus: float):
        if modulus >= self.radius:
            raise ValueError(f"point of modulus {modulus} lies outside the unit ball")


@dataclass(frozen=True)
class HolomorphicPair:
    """Coefficients ``a_n = alpha_n + beta_n * orth`` on the slice of ``axis``."""

    axis: UnitImaginary
    orth: UnitImaginary
    alpha: np.ndarray
    beta: np.ndarray
    _derivs: dict = field(default_factory=dict, compare=False, repr=False)

    def frame(self) -> np.ndarray:
        k = qmul(self.axis.array, self.orth.array)
        return np.stack([ONE.array, self.axis.array, self.orth.array, k])

    def components(self, z, order: int = 0):
        """Values of ``f1^(order)`` and ``f2^(order)`` at complex ``z``."""
        z = np.asarray(z, dtype=complex)
        hit = self._derivs.get(order)
        if hit is None:
            a, b = self.alpha, self.beta
            if order:
                a = npoly.polyder(a, order) if len(a) > order else np.zeros(1, complex)
                b = npoly.polyder(b, order) if len(b) > order else np.zeros(1, complex)
            hit = self._derivs[order] = (a, b)
        a, b = hit
        if len(a) == 0:
            return np.zeros_like(z), np.zeros_like(z)
        return npoly.polyval(z, a), npoly.polyval(z, b)


def _trim(coeffs: np.ndarray) -> np.ndarray:
    nz = np.flatnonzero(np.any(coeffs != 0.0, axis=1))
    if len(nz) == 0:
        return np.zeros((0, 4))
    return coeffs[: nz[-1] + 1]


class SlicePowerSeries(SliceRegular):
    """Truncated series ``f(q) = sum_{n<=N} q**n a_n`` (coefficients on the right)."""

    def __init__(self, coeffs):
        arr = np.array([as_quaternion(c).array for c in coeffs], dtype=float)
        arr = arr.reshape(-1, 4)
        if not np.all(np.isfinite(arr)):
            raise ValueError("series coefficients must be finite")
        self._coeffs = _trim(arr)
        self._coeffs.setflags(write=False)
        self._split_cache: dict = {}

    @classmethod
    def from_array(cls, arr) -> "SlicePowerSeries":
        return cls(np.asarray(arr, dtype=float).reshape(-1, 4))

    @classmethod
    def monomial(cls, n: int, coeff: QuaternionLike = 1.0) -> "SlicePowerSeries":
        arr = np.zeros((n + 1, 4))
        arr[n] = as_quaternion(coeff).array
        return cls(arr)

    @property
    def coeffs(self) -> np.ndarray:
        return self._coeffs

    @property
    def degree(self) -> int:
        """Truncation degree ``N``; the zero series has degree -1."""
        return len(self._coeffs) - 1

    def coefficient(self, n: int) -> Quaternion:
        if 0 <= n <= self.degree:
            return Quaternion.from_array(self._coeffs[n])
        return Quaternion()

    def is_zero(self) -> bool:
        return len(self._coeffs) == 0

    def __len__(self):
        return len(self._coeffs)

    def __eq__(self, other):
        if not isinstance(other, SlicePowerSeries):
            return NotImplemented
        return self._coeffs.shape == other._coeffs.shape and bool(np.all(self._coeffs == other._coeffs))

    def __hash__(self):
        return hash(self._coeffs.tobytes())

    def __repr__(self):
        return f"SlicePowerSeries({self._coeffs.tolist()!r})"

    def allclose(self, other: "SlicePowerSeries", tol: float = 1e-12) -> bool:
        n = max(len(self), len(other))
        a = np.zeros((n, 4))
        b = np.zeros((n, 4))
        a[: len(self)] = self._coeffs
        b[: len(other)] = other._coeffs
        return bool(np.max(np.abs(a - b), initial=0.0) <= tol)

    # evaluation

    def evaluate(self, q) -> np.ndarray:
        """Horner evaluation at a quaternion array ``q`` of shape ``(..., 4)``.

        The accumulator is multiplied by ``q`` on the left, matching right
        coefficients.
        """
        q = np.asarray(q, dtype=float)
        acc = np.zeros(q.shape)
        for a in self._coeffs[::-1]:
            acc = qmul(q, acc) + a
        return acc

    def __call__(self, q: QuaternionLike) -> Quaternion:
        return Quaternion.from_array(self.evaluate(as_quaternion(q).array))

    def split(self, axis: QuaternionLike) -> HolomorphicPair:
        axis = unit_imaginary(axis)
        key = axis.to_json().__repr__()
        hit = self._split_cache.get(key)
        if hit is None:
            frame = slice_frame(axis)
            alpha, beta = quaternion_to_pair(self._coeffs, frame)
            hit = HolomorphicPair(axis, UnitImaginary.from_vector(frame[2]), alpha, beta)
            self._split_cache[key] = hit
        return hit

    def slice_pair(self, axis, z, order=0):
        return self.split(axis).components(z, order)

    def slice_values(self, axis, z, order=0):
        # direct quaternion Horner on the slice (no split round trip)
        axis = unit_imaginary(axis)
        z = np.asarray(z, dtype=complex)
        coeffs = self._coeffs
        if order:
            coeffs = derivative(self, order).coeffs
        acc = np.zeros(z.shape + (4,))
        zq = np.zeros(z.shape + (4,))
        zq[..., 0] = z.real
        zq = zq + np.multiply.outer(z.imag, axis.array)
        for a in coeffs[::-1]:
            acc = qmul(zq, acc) + a
        return acc

    # algebra

    def __add__(self, other: "SlicePowerSeries") -> "SlicePowerSeries":
        n = max(len(self), len(other))
        out = np.zeros((n, 4))
        out[: len(self)] += self._coeffs
        out[: len(other)] += other._coeffs
        return SlicePowerSeries(out)

    def __neg__(self):
        return SlicePowerSeries(-self._coeffs)

    def __sub__(self, other):
        return self + (-other)

    def rmul(self, lam: QuaternionLike) -> "SlicePowerSeries":
        """The series of ``f(q) * lam``."""
        lam = as_quaternion(lam).array
        return SlicePowerSeries(qmul(self._coeffs, lam) if len(self) else self._coeffs)

    def dilate(self, r: float) -> "SlicePowerSeries":
        """``f_r(q) = f(r q)``, i.e. coefficients ``r**n a_n``."""
        scale = float(r) ** np.arange(len(self))
        return SlicePowerSeries(self._coeffs * scale[:, None])

    def derivative(self, order: int = 1) -> "SlicePowerSeries":
        return derivative(self, order)

    def star(self, other: "SlicePowerSeries") -> "SlicePowerSeries":
        return star_product(self, other)

    # serialization

    def to_json(self) -> dict:
        return {"coeffs": self._coeffs.tolist()}

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, data) -> "SlicePowerSeries":
        if isinstance(data, str):
            data = json.loads(data)
        if not isinstance(data, dict) or "coeffs" not in data:
            raise ValueError('series JSON must be an object with a "coeffs" list')
        coeffs = data["coeffs"]
        if not isinstance(coeffs, list):
            raise ValueError('"coeffs" must be a list of [w, x, y, z] entries')
        return cls([Quaternion.from_json(c) for c in coeffs])


def eval_series(f: SlicePowerSeries, q: QuaternionLike) -> Quaternion:
    return f(q)


def derivative(f: SlicePowerSeries, order: int = 1) -> SlicePowerSeries:
    """Term-by-term derivative: coefficients ``n a_n`` shifted down one degree."""
    c = f.coeffs
    for _ in range(order):
        if len(c) <= 1:
            return SlicePowerSeries(np.zeros((0, 4)))
        c = c[1:] * np.arange(1, len(c))[:, None]
    return SlicePowerSeries(c)


def star_product(f: SlicePowerSeries, g: SlicePowerSeries) -> SlicePowerSeries:
    """Cauchy product ``c_n = sum_k a_k b_{n-k}`` with products in that order."""
    if f.is_zero() or g.is_zero():
        return SlicePowerSeries(np.zeros((0, 4)))
    a, b = f.coeffs, g.coeffs
    out = np.zeros((len(a) + len(b) - 1, 4))
    for k in range(len(a)):
        out[k: k + len(b)] += qmul(a[k], b)
    return SlicePowerSeries(out)


def split(f: SlicePowerSeries, i: QuaternionLike) -> HolomorphicPair:
    return f.split(i)


def merge(pair: HolomorphicPair) -> SlicePowerSeries:
    """Series with coefficients ``alpha_n + beta_n j``."""
    n = max(len(pair.alpha), len(pair.beta))
    alpha = np.zeros(n, complex)
    beta = np.zeros(n, complex)
    alpha[: len(pair.alpha)] = pair.alpha
    beta[: len(pair.beta)] = pair.beta
    return SlicePowerSeries(pair_to_quaternion(alpha, beta, pair.frame()))


class SliceFunction(SliceRegular):
    """A slice regular function given by its restriction to ``C(axis)``.

    ``pair_fn(z, order)`` returns the complex components ``(F, G)`` of the
    ``order``-th derivative at slice points ``z``; values on other slices
    come from the Representation Formula.
    """

    radius = 1.0

    def __init__(self, axis: QuaternionLike, pair_fn: PairFn, label: str = "slice function"):
        self.axis = unit_imaginary(axis)
        self._frame = slice_frame(self.axis)
        self._pair_fn = pair_fn
        self.label = label

    def __repr__(self):
        return f"<SliceFunction {self.label} on axis {self.axis.to_json()}>"

    def native_axis(self):
        return self.axis

    def on_slice(self, z, order: int = 0):
        """Components ``(F, G)`` on the defining slice."""
        z = np.asarray(z, dtype=complex)
        if z.size and float(np.max(np.abs(z))) >= self.radius:
            raise ValueError("evaluation outside the unit ball")
        f, g = self._pair_fn(z, order)
        return np.broadcast_to(f, z.shape).astype(complex), np.broadcast_to(g, z.shape).astype(complex)

    def slice_values(self, axis, z, order=0):
        axis = unit_imaginary(axis)
        z = np.asarray(z, dtype=complex)
        if _axis_relation(axis, self.axis) == 1:
            return pair_to_quaternion(*self.on_slice(z, order), self._frame)
        plus = pair_to_quaternion(*self.on_slice(z, order), self._frame)
        minus = pair_to_quaternion(*self.on_slice(np.conj(z), order), self._frame)
        return _represent_arrays(minus, plus, self.axis, axis)

    def slice_pair(self, axis, z, order=0):
        axis = unit_imaginary(axis)
        if _axis_relation(axis, self.axis) == 1:
            return self.on_slice(z, order)
        return quaternion_to_pair(self.slice_values(axis, z, order), slice_frame(axis))

    def slice_abs(self, axis, z, order=0):
        axis = unit_imaginary(axis)
        if _axis_relation(axis, self.axis) != 0:
            # the modulus on C(-I) at z equals the modulus on C(I) at conj(z)
            zz = np.asarray(z, dtype=complex)
            if _axis_relation(axis, self.axis) == -1:
                zz = np.conj(zz)
            f, g = self.on_slice(zz, order)
            return np.sqrt(np.abs(f) ** 2 + np.abs(g) ** 2)
        return qabs(self.slice_values(axis, z, order))

    def __add__(self, other: "SliceFunction") -> "SliceFunction":
        if _axis_relation(self.axis, other.axis) != 1:
            raise ValueError("can only add slice functions defined on the same axis")

        def pair(z, order, a=self, b=other):
            f1, g1 = a.on_slice(z, order)
            f2, g2 = b.on_slice(z, order)
            return f1 + f2, g1 + g2

        return SliceFunction(self.axis, pair, f"({self.label}) + ({other.label})")

    def rmul(self, lam: QuaternionLike) -> "SliceFunction":
        """``q -> f(q) * lam``."""
        lam_f, lam_g = quaternion_to_pair(as_quaternion(lam).array, self._frame)
        lam_f, lam_g = complex(lam_f), complex(lam_g)

        def pair(z, order, f=self):
            a, b = f.on_slice(z, order)
            # (a + b j)(c + d j) = (a c - b conj(d)) + (a d + b conj(c)) j
            return a * lam_f - b * np.conj(lam_g), a * lam_g + b * np.conj(lam_f)

        return SliceFunction(self.axis, pair, f"({self.label})*lambda")


def slice_function_from_series(f: SlicePowerSeries, axis: QuaternionLike) -> SliceFunction:
    """View a series as an evaluator on ``C(axis)`` (no truncation involved)."""
    axis = unit_imaginary(axis)
    pair = f.split(axis)
    sf = SliceFunction(axis, lambda z, order: pair.components(z, order), "series")
    sf.radius = math.inf
    return sf


def _as_pair(values, frame: np.ndarray, shape) -> tuple:
    values = np.asarray(values)
    if np.iscomplexobj(values) or values.shape == shape:
        return np.broadcast_to(values, shape).astype(complex), np.zeros(shape, complex)
    return quaternion_to_pair(np.broadcast_to(values, shape + (4,)), frame)


def slice_extension(g: Callable, axis: QuaternionLike,
                    derivative: Optional[Callable] = None, label: str = "extension") -> SliceFunction:
    """Slice regular extension of a holomorphic map on the slice of ``axis``.

    ``g(z)`` returns complex values (in ``C(axis)``) or quaternion arrays of
    shape ``z.shape + (4,)``; ``derivative(z, k)`` does the same for the
    ``k``-th derivative and is needed only when derivatives are requested.
    """
    axis = unit_imaginary(axis)
    frame = slice_frame(axis)

    def pair(z, order):
        if order == 0:
            return _as_pair(g(z), frame, z.shape)
        if derivative is None:
            raise NotImplementedError("no analytic derivative was supplied for this extension")
        return _as_pair(derivative(z, order), frame, z.shape)

    return SliceFunction(axis, pair, label)


class MoebiusMap(SliceFunction):
    """Slice regular Moebius map ``T_a``; on its slice ``T_a(z) = (a - z)/(1 - conj(a) z)``."""

    def __init__(self, a: QuaternionLike, axis: UnitImaginary):
        self.a = as_quaternion(a)
        self.a_complex = slice_complex(self.a, axis)
        super().__init__(axis, self._pair, f"T_a, a={self.a.to_json()}")

    def _pair(self, z, order):
        a = self.a_complex
        ab = np.conj(a)
        den = 1.0 - ab * z
        if order == 0:
            f = (a - z) / den
        else:
            f = -(1.0 - abs(a) ** 2) * math.factorial(order) * ab ** (order - 1) / den ** (order + 1)
        return f, np.zeros_like(z)

    def complex_derivatives(self, z, order: int) -> list:
        """``[T(z), T'(z), ..., T^(order)(z)]`` on the defining slice."""
        return [self._pair(z, k)[0] for k in range(order + 1)]


def moebius(a: QuaternionLike, axis: Optional[QuaternionLike] = None) -> MoebiusMap:
    """Moebius map ``T_a`` for ``|a| < 1``.

    For nonreal ``a`` the axis is ``vec(a)/|vec(a)|`` unless the caller names
    another axis of the same slice. Real ``a`` needs an explicit axis.
    """
    a = as_quaternion(a)
    if abs(a) >= 1.0:
        raise ValueError("Moebius parameter must satisfy |a| < 1")
    sc = decompose(a)
    if axis is None:
        if sc.is_real:
            raise ValueError("real Moebius parameter needs an explicit slice axis")
        axis = sc.axis
    axis = unit_imaginary(axis)
    if not same_slice(a, axis):
        raise ValueError("Moebius parameter does not lie on the slice of the given axis")
    return MoebiusMap(a, axis)


def _composite_derivative(outer: list, inner: list, order: int):
    """``(g o T)^(order)`` from ``outer[m] = g^(m)(T(z))`` and ``inner[k] = T^(k)(z)``.

    Truncated Taylor composition: ``g(T(z+h)) = sum_m g^(m)(T(z))/m! u(h)**m``
    with ``u(h) = T(z+h) - T(z)``.
    """
    if order == 0:
        return outer[0]
    t = [None] + [inner[k] / math.factorial(k) for k in range(1, order + 1)]
    # powers of u as coefficient lists indexed by degree in h
    upow = [np.ones_like(inner[1])] + [0.0] * order
    total = 0.0
    for m in range(1, order + 1):
        nxt = [0.0] * (order + 1)
        for deg in range(m - 1, order):
            if np.isscalar(upow[deg]) and upow[deg] == 0.0:
                continue
            for k in range(1, order - deg + 1):
                nxt[deg + k] = nxt[deg + k] + upow[deg] * t[k]
        upow = nxt
        total = total + outer[m] / math.factorial(m) * upow[order]
    return math.factorial(order) * total


def compose_i(f: SliceRegular, T: MoebiusMap, i: QuaternionLike) -> SliceFunction:
    """The composition ``f o_i T_a``.

    On ``C(i)`` it equals ``f1(T_a(z)) + f2(T_a(z)) j`` where ``f = f1 + f2 j``
    on that slice; derivatives come from the exact chain rule.
    """
    i = unit_imaginary(i)
    if _axis_relation(i, T.axis) == 0:
        raise ValueError("composition axis does not match the slice of the Moebius map")
    Ti = T if _axis_relation(i, T.axis) == 1 else MoebiusMap(T.a, i)

    def pair(z, order):
        inner = Ti.complex_derivatives(z, order)
        w = inner[0]
        outs = [f.slice_pair(i, w, m) for m in range(order + 1)]
        F = _composite_derivative([o[0] for o in outs], inner, order)
        G = _composite_derivative([o[1] for o in outs], inner, order)
        return F, G

    label = getattr(f, "label", "series")
    return SliceFunction(i, pair, f"({label}) o_i T_a")


def random_series(rng: np.random.Generator, degree: int, scale: float = 1.0,
                  decay: float = 0.0) -> SlicePowerSeries:
    """Gaussian quaternionic coefficients ``a_n ~ scale * N(0,1)^4 / (n+1)**decay``."""
    c = rng.standard_normal((degree + 1, 4)) * scale
    c /= (np.arange(degree + 1)[:, None] + 1.0) ** decay
    return SlicePowerSeries(c)


def random_unit_imaginary(rng: np.random.Generator) -> UnitImaginary:
    v = rng.standard_normal(3)
    return UnitImaginary(0.0, *v)


def random_ball_point(rng: np.random.Generator, radius: float = 1.0) -> Quaternion:
    """Uniform point of the 4-ball of the given radius."""
    v = rng.standard_normal(4)
    v *= radius * rng.random() ** 0.25 / np.linalg.norm(v)
    return Quaternion.from_array(v)


def random_disk_points(rng: np.random.Generator, n: int, radius: float = 1.0) -> np.ndarray:
    """``n`` uniform complex points of the disk of the given radius."""
    r = radius * np.sqrt(rng.random(n))
    return r * np.exp(2j * np.pi * rng.random(n))
