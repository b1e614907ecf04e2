"""Quaternion arithmetic, imaginary units and slice coordinates.

Scalar values use the immutable :class:`Quaternion`; bulk work is done on
float arrays of shape ``(..., 4)`` holding ``[w, x, y, z]`` with the helpers
:func:`qmul`, :func:`qconj` and :func:`qabs`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

AXIS_TOL = 1e-8


def qmul(p, q):
    """Hamilton product of quaternion arrays with broadcasting."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    pw, px, py, pz = p[..., 0], p[..., 1], p[..., 2], p[..., 3]
    qw, qx, qy, qz = q[..., 0], q[..., 1], q[..., 2], q[..., 3]
    return np.stack(
        [
            pw * qw - px * qx - py * qy - pz * qz,
            pw * qx + px * qw + py * qz - pz * qy,
            pw * qy - px * qz + py * qw + pz * qx,
            pw * qz + px * qy - py * qx + pz * qw,
        ],
        axis=-1,
    )


def qconj(q):
    q = np.asarray(q, dtype=float)
    return q * np.array([1.0, -1.0, -1.0, -1.0])


def qabs(q):
    return np.sqrt(np.sum(np.square(np.asarray(q, dtype=float)), axis=-1))


def left_matrix(c) -> np.ndarray:
    """Matrix ``L`` with ``qmul(c, q) == q @ L.T`` for a fixed quaternion ``c``."""
    w, x, y, z = np.asarray(c, dtype=float)
    return np.array(
        [
            [w, -x, -y, -z],
            [x, w, -z, y],
            [y, z, w, -x],
            [z, -y, x, w],
        ]
    )


@dataclass(frozen=True, eq=False)
class Quaternion:
    """An element ``w + x e1 + y e2 + z e3`` of the quaternion algebra."""

    w: float = 0.0
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    def __post_init__(self):
        for name in ("w", "x", "y", "z"):
            object.__setattr__(self, name, float(getattr(self, name)))

    @classmethod
    def from_array(cls, a) -> "Quaternion":
        a = np.asarray(a, dtype=float).reshape(4)
        return cls(a[0], a[1], a[2], a[3])

    @classmethod
    def from_complex(cls, c: complex, axis: "Quaternion") -> "Quaternion":
        """Embed ``c = a + b 1j`` as ``a + b*axis`` in the slice of ``axis``."""
        c = complex(c)
        return cls.from_array(c.real * np.array([1.0, 0, 0, 0]) + c.imag * axis.array)

    @property
    def array(self) -> np.ndarray:
        return np.array([self.w, self.x, self.y, self.z])

    @property
    def real(self) -> float:
        return self.w

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def conj(self) -> "Quaternion":
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def norm2(self) -> float:
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    def __abs__(self) -> float:
        return math.sqrt(self.norm2())

    def inverse(self) -> "Quaternion":
        n2 = self.norm2()
        if n2 == 0.0:
            raise ZeroDivisionError("zero quaternion has no inverse")
        return Quaternion(self.w / n2, -self.x / n2, -self.y / n2, -self.z / n2)

    def __add__(self, other):
        other = as_quaternion(other)
        return Quaternion.from_array(self.array + other.array)

    __radd__ = __add__

    def __sub__(self, other):
        other = as_quaternion(other)
        return Quaternion.from_array(self.array - other.array)

    def __rsub__(self, other):
        return as_quaternion(other) - self

    def __neg__(self):
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other):
        other = as_quaternion(other)
        return Quaternion.from_array(qmul(self.array, other.array))

    def __rmul__(self, other):
        return as_quaternion(other) * self

    def __truediv__(self, other):
        if isinstance(other, (int, float)):
            return Quaternion.from_array(self.array / other)
        return self * as_quaternion(other).inverse()

    def __eq__(self, other):
        if not isinstance(other, Quaternion):
            try:
                other = as_quaternion(other)
            except (TypeError, ValueError):
                return NotImplemented
        return (self.w, self.x, self.y, self.z) == (other.w, other.x, other.y, other.z)

    def __hash__(self):
        return hash((self.w, self.x, self.y, self.z))

    def is_close(self, other, tol: float = 1e-12) -> bool:
        return abs(self - as_quaternion(other)) <= tol

    def to_json(self) -> list:
        return [self.w, self.x, self.y, self.z]

    @classmethod
    def from_json(cls, data: Sequence[float]) -> "Quaternion":
        if len(data) != 4:
            raise ValueError(f"quaternion needs 4 components, got {len(data)}")
        values = [float(v) for v in data]
        if not all(math.isfinite(v) for v in values):
            raise ValueError("quaternion components must be finite")
        return cls(*values)

    def __repr__(self):
        return f"Quaternion({self.w!r}, {self.x!r}, {self.y!r}, {self.z!r})"


QuaternionLike = Union[Quaternion, float, int, Sequence[float], np.ndarray]


def as_quaternion(q: QuaternionLike) -> Quaternion:
    if isinstance(q, Quaternion):
        return q
    if isinstance(q, (int, float, np.floating, np.integer)):
        return Quaternion(float(q))
    return Quaternion.from_array(q)


ONE = Quaternion(1.0)
E1 = Quaternion(0.0, 1.0)
E2 = Quaternion(0.0, 0.0, 1.0)
E3 = Quaternion(0.0, 0.0, 0.0, 1.0)


class UnitImaginary(Quaternion):
    """A point of the sphere of purely imaginary unit quaternions.

    The constructor normalises its input; it rejects a nonzero real part
    and vectors that are (numerically) zero.
    """

    def __init__(self, w=0.0, x=0.0, y=0.0, z=0.0):
        pass

    def __new__(cls, w=0.0, x=0.0, y=0.0, z=0.0):
        obj = object.__new__(cls)
        vec = np.array([x, y, z], dtype=float)
        n = float(np.linalg.norm(vec))
        if abs(float(w)) > AXIS_TOL or n < AXIS_TOL:
            raise ValueError("a unit imaginary needs zero real part and nonzero vector part")
        if abs(n - 1.0) > 4 * np.finfo(float).eps:
            vec = vec / n
        for name, v in zip(("w", "x", "y", "z"), (0.0, *vec)):
            object.__setattr__(obj, name, float(v))
        return obj

    @classmethod
    def from_vector(cls, v) -> "UnitImaginary":
        v = np.asarray(v, dtype=float)
        if v.shape == (4,):
            return cls(*v)
        return cls(0.0, *v)

    def __reduce__(self):
        return (UnitImaginary, (self.w, self.x, self.y, self.z))


def unit_imaginary(q: QuaternionLike) -> UnitImaginary:
    if isinstance(q, UnitImaginary):
        return q
    return UnitImaginary.from_vector(as_quaternion(q).array)


I1 = UnitImaginary(0, 1, 0, 0)
I2 = UnitImaginary(0, 0, 1, 0)
I3 = UnitImaginary(0, 0, 0, 1)


@dataclass(frozen=True)
class SliceCoordinate:
    """``q = x0 + axis*y`` with ``y >= 0``; ``is_real`` marks ``y == 0``."""

    x0: float
    y: float
    axis: UnitImaginary
    is_real: bool

    def reconstruct(self) -> Quaternion:
        return Quaternion.from_array(self.x0 * ONE.array + self.y * self.axis.array)

    @property
    def complex(self) -> complex:
        """Coordinate in the slice of ``axis``, identified with the complex plane."""
        return complex(self.x0, self.y)


def decompose(q: QuaternionLike) -> SliceCoordinate:
    """Write ``q = x0 + I_q y``; real quaternions get the default axis ``e1``."""
    q = as_quaternion(q)
    vec = q.vector
    y = float(np.linalg.norm(vec))
    if y == 0.0:
        return SliceCoordinate(q.w, 0.0, I1, True)
    axis = object.__new__(UnitImaginary)
    for name, v in zip(("w", "x", "y", "z"), (0.0, *(vec / y))):
        object.__setattr__(axis, name, float(v))
    return SliceCoordinate(q.w, y, axis, False)


def orthogonal_unit(i: QuaternionLike) -> UnitImaginary:
    """Canonical unit imaginary orthogonal to ``i``.

    Projects ``e2`` onto the orthogonal complement of ``i``; when that
    projection is shorter than 1e-8 the same is done with ``e3``.
    """
    i = unit_imaginary(i)
    iv = i.vector
    for candidate in (np.array([0.0, 1.0, 0.0]), np.array([0.0, 0.0, 1.0])):
        proj = candidate - np.dot(candidate, iv) * iv
        n = float(np.linalg.norm(proj))
        if n >= AXIS_TOL:
            proj = proj / n
            # second pass restores orthogonality lost to cancellation
            proj = proj - np.dot(proj, iv) * iv
            return UnitImaginary(0.0, *(proj / np.linalg.norm(proj)))
    raise AssertionError("unreachable: e2 and e3 cannot both be parallel to a unit vector")


def slice_frame(i: QuaternionLike) -> np.ndarray:
    """Orthonormal basis ``(1, i, j, i*j)`` as the rows of a 4x4 matrix.

    ``j`` is :func:`orthogonal_unit` of ``i``. A quaternion ``q`` splits as
    ``alpha + beta*j`` with ``alpha, beta`` in the slice of ``i`` and the
    row vector ``q @ frame.T`` equals ``[Re alpha, Im alpha, Re beta, Im beta]``.
    """
    i = unit_imaginary(i)
    j = orthogonal_unit(i)
    k = qmul(i.array, j.array)
    return np.stack([ONE.array, i.array, j.array, k])


def pair_to_quaternion(alpha, beta, frame: np.ndarray) -> np.ndarray:
    """Quaternion array of ``alpha + beta*j`` for complex arrays on a slice."""
    alpha = np.asarray(alpha, dtype=complex)
    beta = np.asarray(beta, dtype=complex)
    coords = np.stack([alpha.real, alpha.imag, beta.real, beta.imag], axis=-1)
    return coords @ frame


def quaternion_to_pair(q, frame: np.ndarray):
    """Inverse of :func:`pair_to_quaternion`."""
    coords = np.asarray(q, dtype=float) @ frame.T
    return coords[..., 0] + 1j * coords[..., 1], coords[..., 2] + 1j * coords[..., 3]


def complex_to_quaternion(c, axis: QuaternionLike) -> np.ndarray:
    c = np.asarray(c, dtype=complex)
    a = unit_imaginary(axis).array
    out = np.multiply.outer(c.imag, a)
    out[..., 0] += c.real
    return out


def same_slice(q: QuaternionLike, axis: QuaternionLike, tol: float = 1e-12) -> bool:
    """True if ``q`` lies in the plane spanned by 1 and ``axis``."""
    v = as_quaternion(q).vector
    a = unit_imaginary(axis).vector
    return float(np.linalg.norm(v - np.dot(v, a) * a)) <= tol * max(1.0, float(np.linalg.norm(v)))


def slice_complex(q: QuaternionLike, axis: QuaternionLike, tol: float = 1e-12) -> complex:
    """Complex coordinate of ``q`` in the slice of ``axis`` (signed imaginary part)."""
    if not same_slice(q, axis, tol):
        raise ValueError("point does not lie on the requested slice")
    q = as_quaternion(q)
    return complex(q.w, float(np.dot(q.vector, unit_imaginary(axis).vector)))


def sphere_sample(m: int) -> list[UnitImaginary]:
    """``m`` quasi-uniform unit imaginaries from a Fibonacci lattice.

    The lattice runs pole to pole along ``e1`` so the first point is
    exactly ``e1``.
    """
    if m < 1:
        raise ValueError("need at least one sample")
    if m == 1:
        return [I1]
    golden = math.pi * (3.0 - math.sqrt(5.0))
    out = []
    for k in range(m):
        c = 1.0 - 2.0 * k / (m - 1)
        s = math.sqrt(max(0.0, 1.0 - c * c))
        phi = golden * k
        if k == 0:
            out.append(I1)
        else:
            out.append(UnitImaginary(0.0, c, s * math.cos(phi), s * math.sin(phi)))
    return out


def quaternions_to_json(qs: Iterable[Quaternion]) -> list:
    return [as_quaternion(q).to_json() for q in qs]
