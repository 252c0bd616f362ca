"""Semi-infinite radial integrals over spherical Bessel functions.

Two families of integrals over the exterior of the cutoff sphere r = lambda0
appear in the scattering matrix element:

    rho_A(l) = integral_{lambda0}^{inf} j_l(k r) / r   dr
    rho_B(l) = (1/k) integral_{lambda0}^{inf} j_l(k r) / r^2 dr

Both are dimensionless functions of a = k*lambda0 alone. They are evaluated
three independent ways:

* a closed form (gamma ratio minus a 1F2 series), valid for l >= 1 (A) and
  l >= 2 (B); the excluded orders sit on a pole of the master formula and
  raise :class:`DegenerateClosedForm`,
* direct oscillatory quadrature, integrating zero-to-zero panels of j_l and
  accelerating the alternating partial sums,
* an elementary reduction to sine and cosine integrals, used as the second,
  structurally different evaluation for cross-validation.

The full coefficient assembly multiplies in i^l Y_lm(khat), and an extra
factor k for the B family.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np
from scipy.optimize import brentq
from scipy.special import sici, spherical_jn

from .specfun import DegenerateClosedForm, NonConvergent, gamma_ratio, hyp1f2, spherical_harmonic

if TYPE_CHECKING:  # pragma: no cover
    from .born import ScatteringKinematics

#: Allowed weight powers: the integrand written as r**weight_power * J_{l+1/2}(k r)
#: corresponds to j_l(k r)/r (power -3/2) or j_l(k r)/r^2 (power -5/2).
WEIGHT_POWERS = (-1.5, -2.5)


@dataclass(frozen=True)
class RadialCoefficients:
    """Assembled radial coefficients for one kinematic configuration.

    A maps (l, m) -> i^l Y_lm(khat) rho_A(l) for l in {0, 2};
    B maps (l, m) -> i^l k Y_lm(khat) rho_B(l) for l in {1, 3}.
    khat is the unit vector of the momentum transfer.
    """

    k: float
    lambda0: float
    khat: np.ndarray
    A: dict
    B: dict


def _validate_kl(l: int, k: float, lambda0: float) -> float:
    if k <= 0 or lambda0 <= 0:
        raise ValueError(f"k and lambda0 must be positive, got k={k}, lambda0={lambda0}")
    a = k * lambda0
    if a > 1e3:
        raise ValueError(f"closed forms are restricted to k*lambda0 <= 1e3, got {a}")
    return a


def radial_A_closed(l: int, k: float, lambda0: float) -> float:
    """Closed form of rho_A(l) = integral_{lambda0}^inf j_l(k r)/r dr, l >= 1.

    sqrt(pi/2) * [ 2^(-3/2) Gamma(l/2)/Gamma((l+3)/2)
                   - a^l / (2^(l+1/2) l Gamma(l+3/2))
                     * 1F2(l/2; l+3/2, (l+2)/2; -a^2/4) ],  a = k*lambda0.
    """
    if l == 0:
        raise DegenerateClosedForm("rho_A closed form divides by l; use quadrature for l = 0")
    if l < 0:
        raise ValueError(f"order must be non-negative, got {l}")
    a = _validate_kl(l, k, lambda0)
    head = 2.0 ** (-1.5) * gamma_ratio(l / 2.0, (l + 3) / 2.0)
    tail = (
        a**l
        / (2.0 ** (l + 0.5) * l * math.gamma(l + 1.5))
        * hyp1f2(l / 2.0, l + 1.5, (l + 2) / 2.0, -0.25 * a * a)
    )
    return math.sqrt(math.pi / 2.0) * (head - tail)


def radial_B_closed(l: int, k: float, lambda0: float) -> float:
    """Closed form of rho_B(l) = (1/k) integral_{lambda0}^inf j_l(k r)/r^2 dr, l >= 2.

    sqrt(pi/2) * [ 2^(-5/2) Gamma((l-1)/2)/Gamma((l+4)/2)
                   - a^(l-1) / (2^(l+1/2) (l-1) Gamma(l+3/2))
                     * 1F2((l-1)/2; l+3/2, (l+1)/2; -a^2/4) ],  a = k*lambda0.
    """
    if l == 1:
        raise DegenerateClosedForm("rho_B closed form divides by (l-1); use quadrature for l = 1")
    if l < 1:
        raise ValueError(f"order must be at least 1, got {l}")
    a = _validate_kl(l, k, lambda0)
    head = 2.0 ** (-2.5) * gamma_ratio((l - 1) / 2.0, (l + 4) / 2.0)
    tail = (
        a ** (l - 1)
        / (2.0 ** (l + 0.5) * (l - 1) * math.gamma(l + 1.5))
        * hyp1f2((l - 1) / 2.0, l + 1.5, (l + 1) / 2.0, -0.25 * a * a)
    )
    return math.sqrt(math.pi / 2.0) * (head - tail)


def _bessel_zeros_from(l: int, start: float, count: int) -> list[float]:
    # Zeros of j_l greater than start, found by sign-change marching plus
    # Brent refinement. Consecutive zeros are a little more than pi apart.
    zeros: list[float] = []
    x = max(start, 1e-9)
    f_prev = spherical_jn(l, x)
    step = 0.4
    while len(zeros) < count:
        x_next = x + step
        f_next = spherical_jn(l, x_next)
        if f_prev == 0.0:
            zeros.append(x)
            x, f_prev = x_next, f_next
            continue
        if f_prev * f_next < 0.0:
            z = brentq(lambda t: spherical_jn(l, t), x, x_next, xtol=1e-13, rtol=1e-15)
            zeros.append(z)
        x, f_prev = x_next, f_next
    return zeros


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)


def _panel_integral(l: int, s: int, lo: float, hi: float) -> float:
    mid = 0.5 * (hi + lo)
    half = 0.5 * (hi - lo)
    x = mid + half * _GL_NODES
    return float(half * np.sum(_GL_WEIGHTS * spherical_jn(l, x) / x**s))


def _head_integral(l: int, s: int, a: float, z0: float) -> float:
    # [a, z0] can span a near-singular 1/x-type head when a is small
    # (e.g. j_1(x)/x^2 ~ 1/(3x)); geometric subpanels resolve it.
    n_sub = max(4, int(math.ceil(2.0 * math.log2(z0 / a))))
    cuts = np.geomspace(a, z0, n_sub + 1)
    return sum(_panel_integral(l, s, cuts[i], cuts[i + 1]) for i in range(n_sub))


def _aitken_limit(partial: np.ndarray, abs_tol: float) -> float:
    # Iterated Aitken delta-squared extrapolation of a (complex or real)
    # partial-sum sequence with eventually alternating error.
    seq = np.asarray(partial, dtype=complex)
    prev_last = seq[-1]
    while len(seq) >= 3:
        d1 = seq[2:] - seq[1:-1]
        d2 = seq[2:] - 2.0 * seq[1:-1] + seq[:-2]
        safe = np.abs(d2) > 1e-300
        nxt = seq[2:].copy()
        nxt[safe] -= d1[safe] ** 2 / d2[safe]
        if abs(nxt[-1] - prev_last) <= 0.25 * abs_tol:
            return nxt[-1].real if np.isrealobj(partial) else nxt[-1]
        prev_last = nxt[-1]
        seq = nxt
    raise NonConvergent("partial-sum extrapolation did not stabilize within the panel budget")


def radial_quadrature(
    weight_power: float,
    l: int,
    k: float,
    lambda0: float,
    *,
    n_panels: int = 48,
    abs_tol: float = 1e-10,
) -> float:
    """Oscillatory quadrature of integral_{lambda0}^inf j_l(k r) / r^s dr.

    weight_power selects the integrand: -3/2 for s = 1, -5/2 for s = 2 (the
    power of r multiplying the half-integer Bessel function J_{l+1/2}(k r)).
    After substituting x = k r the integral is split at the zeros of j_l;
    panel integrals use fixed Gauss-Legendre nodes and the alternating
    partial sums are extrapolated to their limit, which handles the slow
    r^(-2) decay of the s = 1 tail.
    """
    if weight_power not in WEIGHT_POWERS:
        raise ValueError(f"weight_power must be one of {WEIGHT_POWERS}, got {weight_power}")
    if not 0 <= l <= 3:
        raise ValueError(f"orders 0 <= l <= 3 supported, got {l}")
    if k <= 0 or lambda0 <= 0:
        raise ValueError(f"k and lambda0 must be positive, got k={k}, lambda0={lambda0}")
    s = 1 if weight_power == -1.5 else 2
    a = k * lambda0
    zeros = _bessel_zeros_from(l, a, n_panels)
    partial = np.empty(n_panels)
    acc = _head_integral(l, s, a, zeros[0])
    partial[0] = acc
    for idx in range(1, n_panels):
        acc += _panel_integral(l, s, zeros[idx - 1], zeros[idx])
        partial[idx] = acc
    # skip the pre-asymptotic head, then extrapolate the alternating tail
    limit = _aitken_limit(partial[4:], abs_tol)
    return float(limit) * k ** (s - 1)


#: j_l(x) written as S(1/x) sin(x) + C(1/x) cos(x); maps give {power: coefficient}.
_SIN_COS_FORM = {
    0: ({1: 1.0}, {}),
    1: ({2: 1.0}, {1: -1.0}),
    2: ({3: 3.0, 1: -1.0}, {2: -3.0}),
    3: ({4: 15.0, 2: -6.0}, {3: -15.0, 1: 1.0}),
}


def radial_reference(weight_power: float, l: int, k: float, lambda0: float) -> float:
    """Independent evaluation of the radial integral via sine/cosine integrals.

    Expands j_l into sin and cos terms and reduces every piece to Si and Ci
    with an exact integration-by-parts recurrence. Structurally unrelated to
    the panel quadrature, which makes it the second scheme for validating
    the orders whose closed form is degenerate. Accurate for k*lambda0
    above roughly 0.1 (smaller arguments lose digits to cancellation).
    """
    if weight_power not in WEIGHT_POWERS:
        raise ValueError(f"weight_power must be one of {WEIGHT_POWERS}, got {weight_power}")
    if l not in _SIN_COS_FORM:
        raise ValueError(f"orders 0 <= l <= 3 supported, got {l}")
    if k <= 0 or lambda0 <= 0:
        raise ValueError(f"k and lambda0 must be positive, got k={k}, lambda0={lambda0}")
    s = 1 if weight_power == -1.5 else 2
    a = k * lambda0
    si_a, ci_a = sici(a)
    max_power = max(_SIN_COS_FORM[l][0], default=0)
    max_power = max(max_power, max(_SIN_COS_FORM[l][1], default=0)) + s
    # E_sin[m] = integral_a^inf sin(x)/x^m dx, E_cos likewise, by upward recurrence
    e_sin = {1: math.pi / 2.0 - si_a}
    e_cos = {1: -ci_a}
    sin_a, cos_a = math.sin(a), math.cos(a)
    for m in range(2, max_power + 1):
        e_sin[m] = sin_a / ((m - 1) * a ** (m - 1)) + e_cos[m - 1] / (m - 1)
        e_cos[m] = cos_a / ((m - 1) * a ** (m - 1)) - e_sin[m - 1] / (m - 1)
    sin_coef, cos_coef = _SIN_COS_FORM[l]
    total = sum(c * e_sin[m + s] for m, c in sin_coef.items())
    total += sum(c * e_cos[m + s] for m, c in cos_coef.items())
    return float(total) * k ** (s - 1)


def _rho_values(k: float, lambda0: float) -> tuple[dict, dict]:
    rho_a = {0: radial_quadrature(-1.5, 0, k, lambda0)}
    rho_b = {1: radial_quadrature(-2.5, 1, k, lambda0) / k}
    try:
        rho_a[2] = radial_A_closed(2, k, lambda0)
    except (DegenerateClosedForm, ValueError):
        rho_a[2] = radial_quadrature(-1.5, 2, k, lambda0)
    try:
        rho_b[3] = radial_B_closed(3, k, lambda0)
    except (DegenerateClosedForm, ValueError):
        rho_b[3] = radial_quadrature(-2.5, 3, k, lambda0) / k
    return rho_a, rho_b


def radial_coefficients(kin: "ScatteringKinematics") -> RadialCoefficients:
    """Radial coefficient maps A(l, m) and B(l, m) for one kinematics.

    A(l, m) = i^l Y_lm(khat) rho_A(l) for l in {0, 2},
    B(l, m) = i^l k Y_lm(khat) rho_B(l) for l in {1, 3},

    where k and khat are the magnitude and direction of the momentum
    transfer. The l = 0 and l = 1 radial factors come from quadrature (their
    closed forms are degenerate), the others from the closed form with a
    quadrature fallback outside its domain.
    """
    k = kin.q_mag
    lambda0 = kin.lambda0
    if k <= 0:
        raise ValueError("momentum transfer must be nonzero (forward scattering excluded)")
    khat = kin.q_hat
    theta = math.acos(max(-1.0, min(1.0, khat[2])))
    phi = math.atan2(khat[1], khat[0])
    rho_a, rho_b = _rho_values(k, lambda0)
    A = {}
    for l in (0, 2):
        for m in range(-l, l + 1):
            A[(l, m)] = (1j) ** l * complex(spherical_harmonic(l, m, theta, phi)) * rho_a[l]
    B = {}
    for l in (1, 3):
        for m in range(-l, l + 1):
            B[(l, m)] = (1j) ** l * k * complex(spherical_harmonic(l, m, theta, phi)) * rho_b[l]
    return RadialCoefficients(k=k, lambda0=lambda0, khat=khat, A=A, B=B)
