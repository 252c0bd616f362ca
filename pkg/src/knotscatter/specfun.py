"""Special functions and angular-momentum coefficients.

Small, well-tested building blocks for the radial and angular reductions:
Legendre polynomials, spherical harmonics (Condon-Shortley phase), spherical
Bessel functions, gamma ratios, the generalized hypergeometric series 1F2,
exact Clebsch-Gordan coefficients, Gaunt coefficients, and a tensor-product
quadrature rule on the 2-sphere used as the oracle for everything angular.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy.special import gammaln, gammasgn, sph_harm_y, spherical_jn


class DegenerateClosedForm(ValueError):
    """A closed-form expression is singular at the requested parameters.

    Raised where a formula involves a pole (a gamma function at a
    non-positive integer, an explicit 1/l or 1/(l-1) factor) and a
    quadrature evaluation must be used instead.
    """


class NonConvergent(ArithmeticError):
    """A series or quadrature failed to reach its accuracy target in budget."""


def legendre_p(n: int, x: float) -> float:
    """Legendre polynomial P_n(x) by the three-term recurrence.

    Exact at the endpoints; accepts numpy arrays for x transparently.
    """
    if n < 0:
        raise ValueError(f"Legendre degree must be non-negative, got {n}")
    x = np.asarray(x, dtype=float)
    p_prev = np.ones_like(x)
    if n == 0:
        return p_prev if p_prev.ndim else float(p_prev)
    p_curr = x.copy()
    for k in range(1, n):
        p_prev, p_curr = p_curr, ((2 * k + 1) * x * p_curr - k * p_prev) / (k + 1)
    return p_curr if p_curr.ndim else float(p_curr)


def spherical_harmonic(l: int, m: int, theta, phi):
    """Orthonormal spherical harmonic Y_{lm}(theta, phi), Condon-Shortley phase.

    theta is the polar angle, phi the azimuth; broadcasts over array inputs.
    """
    if abs(m) > l:
        raise ValueError(f"|m| <= l required, got l={l}, m={m}")
    return sph_harm_y(l, m, theta, phi)


def spherical_bessel_j(l: int, x) -> float:
    """Spherical Bessel function j_l(x) for l <= 10, x >= 0."""
    if not 0 <= l <= 10:
        raise ValueError(f"supported orders are 0 <= l <= 10, got {l}")
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise ValueError("argument must be non-negative")
    out = spherical_jn(l, x)
    return out if out.ndim else float(out)


def gamma_ratio(numerator_arg: float, denominator_arg: float) -> float:
    """Gamma(a) / Gamma(b), evaluated stably in log space with signs."""
    for arg in (numerator_arg, denominator_arg):
        if arg <= 0 and float(arg).is_integer():
            raise DegenerateClosedForm(f"gamma pole at argument {arg}")
    sign = gammasgn(numerator_arg) * gammasgn(denominator_arg)
    return float(sign * math.exp(gammaln(numerator_arg) - gammaln(denominator_arg)))


def hyp1f2(a: float, b1: float, b2: float, z: float, *, rtol: float = 1e-14, max_terms: int = 10_000) -> float:
    """Generalized hypergeometric series 1F2(a; b1, b2; z).

    Direct power-series summation with a term-ratio stopping rule. The series
    is entire in z, but summation is refused for |z| > 1e4 where cancellation
    would erode double precision.
    """
    for b in (b1, b2):
        if b <= 0 and float(b).is_integer():
            raise DegenerateClosedForm(f"1F2 parameter pole at b = {b}")
    if abs(z) > 1e4:
        raise ValueError(f"|z| <= 1e4 required for direct summation, got z = {z}")
    term = 1.0
    total = 1.0
    for n in range(max_terms):
        term *= (a + n) * z / ((b1 + n) * (b2 + n) * (n + 1))
        total += term
        if abs(term) <= rtol * max(abs(total), 1e-300) and n > 2:
            return total
    raise NonConvergent(f"1F2 series did not converge within {max_terms} terms")


@lru_cache(maxsize=None)
def _cg_exact(l1: int, l2: int, m1: int, m2: int, L: int, M: int) -> tuple[int, Fraction]:
    # Exact square and sign of the coefficient via integer factorials.
    f = math.factorial
    pref = Fraction(
        (2 * L + 1) * f(l1 + l2 - L) * f(l1 - l2 + L) * f(-l1 + l2 + L),
        f(l1 + l2 + L + 1),
    ) * Fraction(f(L + M) * f(L - M) * f(l1 - m1) * f(l1 + m1) * f(l2 - m2) * f(l2 + m2))
    total = Fraction(0)
    for k in range(0, l1 + l2 + L + 1):
        denoms = (k, l1 + l2 - L - k, l1 - m1 - k, l2 + m2 - k, L - l2 + m1 + k, L - l1 - m2 + k)
        if any(d < 0 for d in denoms):
            continue
        term = Fraction((-1) ** k, math.prod(f(d) for d in denoms))
        total += term
    sign = 0 if total == 0 else (1 if total > 0 else -1)
    return sign, pref * total * total


def clebsch_gordan(l1: int, l2: int, m1: int, m2: int, L: int, M: int) -> float:
    """Coefficient <l1, l2; m1, m2 | L, M> by the closed finite sum.

    All arithmetic is exact (integer factorials and rationals) up to the
    final square root, eliminating accumulation error for the small l used
    here; selection-rule violations return 0.
    """
    for l, m in ((l1, m1), (l2, m2), (L, M)):
        if l < 0 or abs(m) > l:
            return 0.0
    if M != m1 + m2 or L < abs(l1 - l2) or L > l1 + l2:
        return 0.0
    sign, square = _cg_exact(l1, l2, m1, m2, L, M)
    return sign * math.sqrt(float(square))


@lru_cache(maxsize=None)
def gaunt(l1: int, m1: int, l2: int, m2: int, L: int, M: int) -> float:
    """Integral of Y*_{LM} Y_{l1 m1} Y_{l2 m2} over the unit sphere.

    Equivalently the coefficient of Y_{LM} in the product Y_{l1 m1} Y_{l2 m2}:

        sqrt((2 l1 + 1)(2 l2 + 1) / (4 pi (2 L + 1)))
        * <l1, l2; 0, 0 | L, 0> * <l1, l2; m1, m2 | L, M>.

    Selection rules (M = m1 + m2, triangle inequality, parity) give 0. The
    memo table is read-only after first computation and safe for concurrent
    readers.
    """
    return (
        math.sqrt((2 * l1 + 1) * (2 * l2 + 1) / (4.0 * math.pi * (2 * L + 1)))
        * clebsch_gordan(l1, l2, 0, 0, L, 0)
        * clebsch_gordan(l1, l2, m1, m2, L, M)
    )


@lru_cache(maxsize=8)
def sphere_rule(n_polar: int = 50, n_azimuth: int = 128) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Tensor-product quadrature nodes and weights on the 2-sphere.

    Gauss-Legendre in cos(theta) crossed with a uniform trapezoid in phi.
    Exact for spherical polynomials up to degree 2*n_polar - 1 in cos(theta)
    and azimuthal frequency n_azimuth - 1. Returns (theta, phi, weights) as
    broadcastable meshgrid arrays with sum(weights) = 4 pi.
    """
    u, w = np.polynomial.legendre.leggauss(n_polar)
    theta = np.arccos(u)[:, None]
    phi = (np.arange(n_azimuth) * (2.0 * math.pi / n_azimuth))[None, :]
    weights = np.broadcast_to(w[:, None] * (2.0 * math.pi / n_azimuth), (n_polar, n_azimuth)).copy()
    for arr in (theta, phi, weights):
        arr.flags.writeable = False
    return theta, phi, weights


def sphere_integral(f: Callable[[np.ndarray, np.ndarray], np.ndarray], n_polar: int = 50, n_azimuth: int = 128) -> complex:
    """Integral of f(theta, phi) over the unit sphere by the tensor rule."""
    theta, phi, weights = sphere_rule(n_polar, n_azimuth)
    values = f(theta, phi)
    return complex((weights * values).sum())
