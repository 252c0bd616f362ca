"""First-order scattering matrix element off the knot's vector potential.

For unnormalized plane waves exp(i k.r) the first-order matrix element over
the exterior of the cutoff sphere r = lambda0 is

    V_ni = -(g / 4 pi) * integral_{r > lambda0} e^{i q.r} A~(x) . K  dV,

with q = k_i - k_n (momentum transfer), K = k_i + k_n, g the coupling
prefactor, and A~ the unit-prefactor multipole potential. Expanding the
plane wave over spherical harmonics collapses the volume integral into the
angular brackets and radial coefficient maps of the sibling modules, giving
four closed-form pieces:

    v1 = -g       sum_{j<=k}   [sum_i 3 K_i Q^i_{jk}]  bracket(R_j R_k, A)
    v2 = -g       [sum_i K_i Q^i_trace]                sqrt(4 pi) A(0, 0)
    v3 = -(15/2)g sum_{j<=k<=l} [sum_i K_i O^i_{jkl}]  bracket(R_j R_k R_l, B)
    v4 = +(3/2)g  sum_p        [sum_i K_i Oc^i_p]      bracket(R_p, B)

vni_bruteforce integrates the same volume integral directly (rotated-frame
product quadrature plus oscillatory tail extrapolation) and serves as the
end-to-end oracle. triad_amplitude assembles the factorized combination of
three unknot amplitudes that the torus-knot amplitude is predicted to equal;
factorization_residual measures that claim on random kinematics. The energy
delta function of the full S matrix is stripped throughout: everything here
is the reduced on-shell element V_ni.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import gcd

import numpy as np

from .angular import DirectionCosineMonomial, angular_bracket
from .curves import KnotSpec, TorusKnot, UnknotXY, UnknotXZ, UnknotYZ, min_enclosing_radius
from .multipole import (
    SORTED_PAIRS,
    SORTED_TRIPLES,
    OctopoleMoments,
    QuadrupoleMoments,
    octopole_moments,
    quadrupole_moments,
)
from .potential import _biot_savart_batch, _multipole_components
from .radial import RadialCoefficients, radial_coefficients
from .specfun import NonConvergent

#: Relative on-shell tolerance: inputs farther off the elastic shell are rejected.
ON_SHELL_RTOL = 1e-12

#: Forward-scattering rejection threshold on |q| / |k_i|.
FORWARD_RTOL = 1e-12


@dataclass(frozen=True)
class ScatteringKinematics:
    """On-shell incident/outgoing wave vectors and the cutoff radius.

    Derived quantities: q_vec = k_i - k_n (momentum transfer), its magnitude
    and direction, and K_vec = k_i + k_n (which contracts the moment
    tensors). Off-shell pairs and forward scattering (q = 0, where the
    monopole radial integral diverges) are rejected.
    """

    k_i: tuple[float, float, float]
    k_n: tuple[float, float, float]
    lambda0: float = 3.5

    def __post_init__(self) -> None:
        ki = tuple(float(c) for c in self.k_i)
        kn = tuple(float(c) for c in self.k_n)
        if len(ki) != 3 or len(kn) != 3:
            raise ValueError("wave vectors must have three components")
        if not all(math.isfinite(c) for c in ki + kn):
            raise ValueError("wave vectors must be finite")
        object.__setattr__(self, "k_i", ki)
        object.__setattr__(self, "k_n", kn)
        if not (math.isfinite(self.lambda0) and self.lambda0 > 0):
            raise ValueError(f"lambda0 must be positive, got {self.lambda0}")
        k_mag = math.sqrt(sum(c * c for c in ki))
        kn_mag = math.sqrt(sum(c * c for c in kn))
        if k_mag == 0.0:
            raise ValueError("incident wave vector must be nonzero")
        if abs(k_mag - kn_mag) > ON_SHELL_RTOL * k_mag:
            raise ValueError(
                f"off the elastic shell: |k_i| = {k_mag}, |k_n| = {kn_mag} "
                f"(relative tolerance {ON_SHELL_RTOL})"
            )
        if self.q_mag <= FORWARD_RTOL * k_mag:
            raise ValueError("forward scattering (q = 0) is excluded: khat undefined")

    @classmethod
    def from_angles(
        cls,
        k: float,
        ki_theta: float,
        ki_phi: float,
        kn_theta: float,
        kn_phi: float,
        lambda0: float = 3.5,
    ) -> "ScatteringKinematics":
        if k <= 0:
            raise ValueError(f"wave number must be positive, got {k}")

        def vec(theta: float, phi: float) -> tuple[float, float, float]:
            st = math.sin(theta)
            return (k * st * math.cos(phi), k * st * math.sin(phi), k * math.cos(theta))

        return cls(k_i=vec(ki_theta, ki_phi), k_n=vec(kn_theta, kn_phi), lambda0=lambda0)

    @property
    def k(self) -> float:
        return math.sqrt(sum(c * c for c in self.k_i))

    @property
    def q_vec(self) -> np.ndarray:
        return np.array(self.k_i) - np.array(self.k_n)

    @property
    def q_mag(self) -> float:
        return float(np.linalg.norm(self.q_vec))

    @property
    def q_hat(self) -> np.ndarray:
        return self.q_vec / self.q_mag

    @property
    def K_vec(self) -> np.ndarray:
        return np.array(self.k_i) + np.array(self.k_n)

    def swapped(self) -> "ScatteringKinematics":
        """Time-reversed pair (k_n -> k_i); useful for Hermiticity checks."""
        return ScatteringKinematics(k_i=self.k_n, k_n=self.k_i, lambda0=self.lambda0)


@dataclass(frozen=True)
class CouplingConfig:
    """Physical coupling prefactor; all charge/mass constants absorbed into g."""

    g: float = 1.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.g) and self.g != 0.0):
            raise ValueError(f"coupling g must be finite and nonzero, got {self.g}")


@dataclass(frozen=True)
class BornAmplitude:
    """The four assembled pieces of V_ni; total is their exact sum."""

    v1: complex
    v2: complex
    v3: complex
    v4: complex

    @property
    def total(self) -> complex:
        return self.v1 + self.v2 + self.v3 + self.v4


def vni_quadrupole(
    quad: QuadrupoleMoments,
    kin: ScatteringKinematics,
    radial: RadialCoefficients,
    g: float,
) -> tuple[complex, complex]:
    """Quadrupole pieces: tensor part v1 and trace part v2."""
    K = kin.K_vec
    v1 = 0.0 + 0.0j
    for j, k in SORTED_PAIRS:
        weight = 3.0 * float(K @ quad.Q_tensor[:, j, k])
        if weight != 0.0:
            expo = [0, 0, 0]
            expo[j] += 1
            expo[k] += 1
            v1 += weight * angular_bracket(DirectionCosineMonomial(tuple(expo)), radial.A)
    v2 = float(K @ quad.Q_trace) * math.sqrt(4.0 * math.pi) * radial.A[(0, 0)]
    return -g * v1, -g * v2


def vni_octopole(
    octo: OctopoleMoments,
    kin: ScatteringKinematics,
    radial: RadialCoefficients,
    g: float,
) -> tuple[complex, complex]:
    """Octopole pieces: rank-3 tensor part v3 and contracted part v4."""
    K = kin.K_vec
    v3 = 0.0 + 0.0j
    for j, k, l in SORTED_TRIPLES:
        weight = float(K @ octo.O_tensor[:, j, k, l])
        if weight != 0.0:
            expo = [0, 0, 0]
            expo[j] += 1
            expo[k] += 1
            expo[l] += 1
            v3 += weight * angular_bracket(DirectionCosineMonomial(tuple(expo)), radial.B)
    v4 = 0.0 + 0.0j
    for p in range(3):
        weight = float(K @ octo.O_contracted[:, p])
        if weight != 0.0:
            expo = [0, 0, 0]
            expo[p] = 1
            v4 += weight * angular_bracket(DirectionCosineMonomial(tuple(expo)), radial.B)
    return -7.5 * g * v3, 1.5 * g * v4


def born_amplitude(spec: KnotSpec, kin: ScatteringKinematics, g: float = 1.0) -> BornAmplitude:
    """Assembled reduced matrix element for a knot and one kinematics.

    Computes the curve's moments, the radial coefficient maps for the
    momentum transfer, and the four pieces. The reported number multiplies
    -2 pi i delta(E_n - E_i) in the full S matrix; the delta itself is
    stripped.
    """
    quad = quadrupole_moments(spec)
    octo = octopole_moments(spec)
    radial = radial_coefficients(kin)
    v1, v2 = vni_quadrupole(quad, kin, radial, g)
    v3, v4 = vni_octopole(octo, kin, radial, g)
    return BornAmplitude(v1=v1, v2=v2, v3=v3, v4=v4)


def triad_amplitude(p: int, q: int, kin: ScatteringKinematics, g: float = 1.0) -> BornAmplitude:
    """Factorized prediction for the (p, q) torus knot from three unknots.

    v1, v2 come from the planar unknot scaled by p/2; v3, v4 from the two
    vertical unknots scaled by -q/2. For non-resonant coprime (p, q) this
    equals born_amplitude(TorusKnot(p, q), ...) componentwise; resonant
    pairs (a q = b p solvable with a <= 3, b <= 2) violate it because extra
    zero-frequency terms survive in the torus moment integrals.
    """
    if gcd(p, q) != 1:
        raise ValueError(f"(p, q) must be coprime, got ({p}, {q})")
    radial = radial_coefficients(kin)
    planar = quadrupole_moments(UnknotXY())
    v1, v2 = vni_quadrupole(planar, kin, radial, g)
    v3 = 0.0 + 0.0j
    v4 = 0.0 + 0.0j
    for unknot in (UnknotXZ(), UnknotYZ()):
        part3, part4 = vni_octopole(octopole_moments(unknot), kin, radial, g)
        v3 += part3
        v4 += part4
    return BornAmplitude(
        v1=0.5 * p * v1, v2=0.5 * p * v2, v3=-0.5 * q * v3, v4=-0.5 * q * v4
    )


def factorization_residual(
    p: int, q: int, kin_samples: list[ScatteringKinematics], g: float = 1.0
) -> float:
    """Worst relative defect of the triad factorization over the samples."""
    if not kin_samples:
        raise ValueError("at least one kinematics sample is required")
    spec = TorusKnot(p, q)
    worst = 0.0
    for kin in kin_samples:
        direct = born_amplitude(spec, kin, g).total
        predicted = triad_amplitude(p, q, kin, g).total
        worst = max(worst, abs(direct - predicted) / max(abs(direct), 1e-300))
    return worst


def random_kinematics(
    rng: np.random.Generator,
    k: float,
    lambda0: float = 3.5,
    n: int = 1,
) -> list[ScatteringKinematics]:
    """n on-shell kinematics with isotropic directions (PCG64-seeded rng).

    Directions are normalized normal deviates; near-forward pairs are
    redrawn so every sample has a well-defined momentum transfer.
    """
    if k <= 0:
        raise ValueError(f"wave number must be positive, got {k}")
    samples: list[ScatteringKinematics] = []
    while len(samples) < n:
        raw = rng.normal(size=(2, 3))
        norms = np.linalg.norm(raw, axis=1)
        if norms.min() < 1e-12:
            continue
        ki, kn = k * raw / norms[:, None]
        if np.linalg.norm(ki - kn) <= 1e-6 * k:
            continue
        samples.append(ScatteringKinematics(k_i=tuple(ki), k_n=tuple(kn), lambda0=lambda0))
    return samples


@dataclass(frozen=True)
class BruteforceGrid:
    """Quadrature knobs for vni_bruteforce.

    n_polar None sizes the rotated-axis Gauss-Legendre rule from the largest
    phase q*r reached, including the extrapolation tail. field selects the
    integrand potential: 'multipole' (matching the closed form's truncation)
    or 'biot-savart' (exact line integral; slow, for smoke tests).
    """

    n_polar: int | None = None
    n_azimuth: int = 32
    radial_points: int = 12
    tail_panels: int = 24
    field: str = "multipole"

    def __post_init__(self) -> None:
        if self.field not in ("multipole", "biot-savart"):
            raise ValueError(f"field must be 'multipole' or 'biot-savart', got {self.field!r}")
        if self.n_azimuth < 8 or self.radial_points < 4 or self.tail_panels < 6:
            raise ValueError("quadrature grid too coarse")


def vni_bruteforce(
    spec: KnotSpec,
    kin: ScatteringKinematics,
    g: float = 1.0,
    r_max: float = 200.0,
    grid_spec: BruteforceGrid | None = None,
) -> complex:
    """Direct volume quadrature of V_ni over lambda0 < r < infinity.

    Integrates e^{i q.r} A~(x).K with the opposite order of operations from
    the closed form: nothing here touches the harmonic expansion or the
    radial coefficient maps. The frame is rotated so the polar axis lies
    along qhat (the phase becomes e^{i q r u}); radii are covered by
    Gauss-Legendre panels of half the phase period, out to r_max, and the
    remaining tail is extrapolated from the alternating partial sums of
    further panels. The slowly decaying integrand makes plain truncation at
    r_max wrong at the percent level; the extrapolation removes that.
    """
    grid = grid_spec or BruteforceGrid()
    if r_max < 30.0 * kin.lambda0:
        raise ValueError(f"r_max must be at least 30 lambda0 = {30.0 * kin.lambda0}, got {r_max}")
    quad = quadrupole_moments(spec)
    octo = octopole_moments(spec)
    if grid.field == "biot-savart" and kin.lambda0 <= min_enclosing_radius(spec):
        raise ValueError("biot-savart integrand requires lambda0 outside the curve")
    q_mag = kin.q_mag
    q_hat = kin.q_hat
    K = kin.K_vec

    # orthonormal frame (e1, e2, q_hat)
    helper = np.array([1.0, 0.0, 0.0]) if abs(q_hat[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    e1 = np.cross(q_hat, helper)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(q_hat, e1)

    panel_width = math.pi / q_mag
    n_base = int(math.ceil((r_max - kin.lambda0) / panel_width))
    n_total = n_base + grid.tail_panels
    r_end = kin.lambda0 + n_total * panel_width
    n_polar = grid.n_polar or (int(0.55 * q_mag * r_end) + 40)

    u, w_u = np.polynomial.legendre.leggauss(n_polar)
    phi = np.arange(grid.n_azimuth) * (2.0 * math.pi / grid.n_azimuth)
    w_phi = 2.0 * math.pi / grid.n_azimuth
    sin_u = np.sqrt(1.0 - u**2)
    # unit directions, shape (n_polar * n_azimuth, 3)
    dirs = (
        u[:, None, None] * q_hat[None, None, :]
        + sin_u[:, None, None]
        * (np.cos(phi)[None, :, None] * e1[None, None, :] + np.sin(phi)[None, :, None] * e2[None, None, :])
    ).reshape(-1, 3)
    phase_u = np.repeat(u, grid.n_azimuth)
    weights = np.repeat(w_u, grid.n_azimuth) * w_phi

    gl_r, gl_w = np.polynomial.legendre.leggauss(grid.radial_points)

    def field_dot_k(radii: np.ndarray, directions: np.ndarray) -> np.ndarray:
        if grid.field == "multipole":
            values = _multipole_components(quad, octo, radii, directions, "octopole")
        else:
            values = _biot_savart_batch(spec, radii[:, None] * directions, 2048, 1.0)
        return values @ K

    def panel(lo: float, hi: float) -> complex:
        mid, half = 0.5 * (hi + lo), 0.5 * (hi - lo)
        total = 0.0 + 0.0j
        for node, node_w in zip(gl_r, gl_w):
            r = mid + half * node
            phases = np.exp(1j * q_mag * r * phase_u)
            integrand = field_dot_k(np.full(len(dirs), r), dirs)
            total += half * node_w * r * r * np.sum(weights * phases * integrand)
        return total

    partial = np.empty(n_total, dtype=complex)
    acc = 0.0 + 0.0j
    for idx in range(n_total):
        lo = kin.lambda0 + idx * panel_width
        acc += panel(lo, lo + panel_width)
        partial[idx] = acc

    # tail extrapolation of the alternating panel sums beyond r_max
    tail = partial[n_base - 1 :]
    limit = _aitken_tail(tail)
    return complex(-g / (4.0 * math.pi) * limit)


def _aitken_tail(partial: np.ndarray) -> complex:
    seq = np.asarray(partial, dtype=complex)
    best = seq[-1]
    while len(seq) >= 3:
        d1 = seq[2:] - seq[1:-1]
        d2 = seq[2:] - 2.0 * seq[1:-1] + seq[:-2]
        safe = np.abs(d2) > 1e-300
        nxt = seq[2:].copy()
        nxt[safe] -= d1[safe] ** 2 / d2[safe]
        if not np.all(np.isfinite(nxt)):
            raise NonConvergent("tail extrapolation of the volume integral became unstable")
        best = nxt[-1]
        seq = nxt
    return complex(best)


def amplitude_to_dict(kin: ScatteringKinematics, amp: BornAmplitude) -> dict:
    """JSON-ready document for one amplitude evaluation."""
    return {
        "kin": {
            "k_i": list(kin.k_i),
            "k_n": list(kin.k_n),
            "lambda0": kin.lambda0,
            "q_mag": kin.q_mag,
        },
        "v": {
            "v1": [amp.v1.real, amp.v1.imag],
            "v2": [amp.v2.real, amp.v2.imag],
            "v3": [amp.v3.real, amp.v3.imag],
            "v4": [amp.v4.real, amp.v4.imag],
        },
        "total": [amp.total.real, amp.total.imag],
    }
