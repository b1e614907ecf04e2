"""Independent reference routes used by the tests.

Nothing here imports the package's own arithmetic: quaternions are 2x2
complex matrices, series are summed with matrix powers, radial integrals go
through scipy's adaptive quad, and sups through brute-force grids.
"""

import math

import numpy as np
from scipy import integrate


def to_matrix(q):
    """``w + x e1 + y e2 + z e3`` as ``[[a, b], [-conj b, conj a]]`` with ``a = w + x i``, ``b = y + z i``."""
    w, x, y, z = (float(c) for c in q)
    a, b = complex(w, x), complex(y, z)
    return np.array([[a, b], [-b.conjugate(), a.conjugate()]])


def from_matrix(m):
    a, b = m[0, 0], m[0, 1]
    return np.array([a.real, a.imag, b.real, b.imag])


def mat_mul(p, q):
    return from_matrix(to_matrix(p) @ to_matrix(q))


def series_value(coeffs, q):
    """``sum q^n a_n`` by explicit matrix powers."""
    Q = to_matrix(q)
    acc = np.zeros((2, 2), complex)
    P = np.eye(2, dtype=complex)
    for a in coeffs:
        acc = acc + P @ to_matrix(a)
        P = P @ Q
    return from_matrix(acc)


def series_derivative_value(coeffs, q, order=1):
    c = [np.asarray(a, float) for a in coeffs]
    for _ in range(order):
        c = [n * c[n] for n in range(1, len(c))]
    return series_value(c, q) if c else np.zeros(4)


def radial_mass(alpha):
    """``int_B (1-|z|^2)^alpha dA = int_0^1 (1-s)^alpha ds`` by QUADPACK's algebraic-weight rule."""
    val, _ = integrate.quad(lambda s: 1.0, 0.0, 1.0, weight="alg", wvar=(0.0, alpha), epsabs=1e-15)
    return val


def radial_integral(h, weight=lambda r: 2.0 * r):
    """``int_0^1 h(r) weight(r) dr`` by adaptive quadrature."""
    val, _ = integrate.quad(lambda r: h(r) * weight(r), 0.0, 1.0, limit=400, epsabs=1e-14, epsrel=1e-13)
    return val


def grid_sup(g, n_r=2000, r_max=1.0 - 1e-6):
    r = np.linspace(0.0, r_max, n_r)
    return float(np.max(g(r)))


def coeff_modulus(coeffs):
    return np.sqrt(np.sum(np.asarray(coeffs, float) ** 2, axis=1))


def dirichlet_sum(coeffs):
    m = coeff_modulus(coeffs) ** 2
    return float(sum(n * m[n] for n in range(1, len(m))))


def bergman_p2_sum(coeffs, alpha):
    """``||f||_{2,alpha}^2 = sum |a_n|^2 n! Gamma(2+alpha) / Gamma(n+2+alpha)``."""
    m = coeff_modulus(coeffs) ** 2
    return float(sum(m[n] * math.exp(math.lgamma(n + 1) + math.lgamma(2 + alpha) - math.lgamma(n + 2 + alpha))
                     for n in range(len(m))))


def random_quaternions(rng, n, scale=1.0):
    return scale * rng.standard_normal((n, 4))


def random_imaginary_unit(rng):
    v = rng.standard_normal(3)
    return np.concatenate([[0.0], v / np.linalg.norm(v)])


def point_on_slice(z, unit):
    return np.array([z.real, 0.0, 0.0, 0.0]) + z.imag * np.asarray(unit, float)


def moebius_image_disk(a, center, radius):
    """Center and radius of ``T_a(D(center, radius))`` from three boundary points."""
    T = lambda z: (a - z) / (1 - np.conj(a) * z)
    p = T(center + radius * np.exp(2j * np.pi * np.array([0.0, 1 / 3, 2 / 3])))
    A = np.array([[2 * (p[1] - p[0]).real, 2 * (p[1] - p[0]).imag],
                  [2 * (p[2] - p[0]).real, 2 * (p[2] - p[0]).imag]])
    b = np.array([abs(p[1]) ** 2 - abs(p[0]) ** 2, abs(p[2]) ** 2 - abs(p[0]) ** 2])
    x = np.linalg.solve(A, b)
    c = complex(x[0], x[1])
    return c, float(abs(p[0] - c))


def polynomial_bump(center, radius, m):
    """``(1 - |z - center|^2 / radius^2)_+^m``, supported in the closed disk."""
    return lambda z: np.clip(1.0 - np.abs(z - center) ** 2 / radius ** 2, 0.0, None) ** m


def e1_pair_coeffs(coeffs):
    """Split ``a_n = alpha_n + beta_n e2`` with ``alpha, beta`` in ``C(e1)``.

    On ``C(e1)`` the value ``sum z^n a_n`` is the matrix ``[[A, B], ...]`` with
    ``A = sum z^n alpha_n`` and ``B = sum z^n beta_n``, so ``|f|^2 = |A|^2 + |B|^2``.
    """
    c = np.asarray(coeffs, float).reshape(-1, 4)
    return c[:, 0] + 1j * c[:, 1], c[:, 2] + 1j * c[:, 3]


def e1_modulus(coeffs, z, order=0):
    """``|d^order f(z)|`` on ``C(e1)`` through the pair of complex polynomials."""
    alpha, beta = e1_pair_coeffs(coeffs)
    A = np.polynomial.Polynomial(alpha).deriv(order) if order else np.polynomial.Polynomial(alpha)
    B = np.polynomial.Polynomial(beta).deriv(order) if order else np.polynomial.Polynomial(beta)
    return np.sqrt(np.abs(A(z)) ** 2 + np.abs(B(z)) ** 2)


def polar_grid_sup(g, n_r=1200, n_t=720, r_max=1.0 - 1e-6):
    r = np.linspace(0.0, r_max, n_r)
    t = 2 * np.pi * np.arange(n_t) / n_t
    z = r[:, None] * np.exp(1j * t)[None, :]
    return float(np.max(g(z)))


def monomial_weighted_integral(n, p, alpha):
    """``int_B |z^n|^p dA_alpha = (alpha+1) B(np/2 + 1, alpha + 1)``."""
    a, b = n * p / 2 + 1, alpha + 1
    return (alpha + 1) * math.exp(math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b))


def monomial_besov_integral(n, p):
    """``int (1-|z|^2)^(p-2) |n z^(n-1)|^p dA = n^p B((n-1)p/2 + 1, p - 1)``."""
    a, b = (n - 1) * p / 2 + 1, p - 1
    return n ** p * math.exp(math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b))
