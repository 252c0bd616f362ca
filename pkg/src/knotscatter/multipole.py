"""Quadrupole and octopole moment tensors of a closed dipole-density loop.

A solenoid idealized as a closed line of magnetic dipoles has no net dipole
moment (the loop closes on itself), so the leading far-field structure is
carried by two families of line-integral moments:

* three quadrupole scalars K^i and the rank-3 tensor Q^{r_i}_{R_j R_k} they
  generate, entering the vector potential at order 1/r^3,
* the rank-4 octopole tensor O^{r_i}_{R_j R_k R_l} and its contraction
  O^{r_i}_{R_p}, entering at order 1/r^4.

All sums over repeated indices are written out explicitly; no implicit
summation convention is used anywhere in this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement, permutations

import numpy as np

from .curves import DEFAULT_SAMPLES, KnotSpec, TWO_PI, sample_curve

#: Levi-Civita symbol, EPS[a, b, c] = +1/-1 for even/odd permutations.
EPS = np.zeros((3, 3, 3))
for _a, _b, _c in permutations(range(3)):
    EPS[_a, _b, _c] = 1.0 if (_a, _b, _c) in ((0, 1, 2), (1, 2, 0), (2, 0, 1)) else -1.0
EPS.flags.writeable = False

#: Independent lower-index triples, sorted j <= k <= l.
SORTED_TRIPLES = tuple(combinations_with_replacement(range(3), 3))
#: Independent lower-index pairs, sorted j <= k.
SORTED_PAIRS = tuple(combinations_with_replacement(range(3), 2))


@dataclass(frozen=True)
class QuadrupoleMoments:
    """Quadrupole scalars K^i, tensor Q^{r_i}_{R_j R_k}, and trace part Q^{r_i}.

    Q_tensor is symmetric in its last two indices and vanishes whenever all
    three indices differ. Q_trace[i] = -2 K[i], which equals minus the trace
    of Q_tensor[i] over the lower index pair.
    """

    K: np.ndarray
    Q_tensor: np.ndarray
    Q_trace: np.ndarray


@dataclass(frozen=True)
class OctopoleMoments:
    """Integrated octopole tensor and its contraction.

    O_tensor[i, j, k, l] holds the curve integral of the rank-4 integrand,
    totally symmetric under permutations of (j, k, l). O_contracted[i, p]
    holds the integral of the contracted integrand, related to the tensor by
    O_contracted[i, p] = sum_m (1 + 2*delta_{pm}) O_tensor[i, p, m, m].
    """

    O_tensor: np.ndarray
    O_contracted: np.ndarray


def _quadrupole_entry(i: int, j: int, k: int, K: np.ndarray) -> float:
    # Case rule for Q^{r_i}_{R_j R_k} in terms of the three K scalars.
    if i != j and j != k and i != k:
        return 0.0
    d_jk = 1.0 if j == k else 0.0
    d_ik = 1.0 if i == k else 0.0
    d_ij = 1.0 if i == j else 0.0
    return (
        d_jk * K[i] * (1.0 - d_ij)
        - d_ik * K[j] * (1.0 - d_ij)
        - d_ij * K[k] * (1.0 - d_ik)
    )


@lru_cache(maxsize=256)
def quadrupole_moments(spec: KnotSpec, n_samples: int = DEFAULT_SAMPLES) -> QuadrupoleMoments:
    """Quadrupole moments of a curve.

    K^1 = loop integral of z' dy'/dtau,
    K^2 = loop integral of x' dz'/dtau,
    K^3 = loop integral of y' dx'/dtau,
    with the tensor and trace parts assembled from the case rule.
    """
    _, pos, der = sample_curve(spec, n_samples)
    x, y, z = pos[:, 0], pos[:, 1], pos[:, 2]
    dx, dy, dz = der[:, 0], der[:, 1], der[:, 2]
    K = np.array(
        [
            (z * dy).mean() * TWO_PI,
            (x * dz).mean() * TWO_PI,
            (y * dx).mean() * TWO_PI,
        ]
    )
    Q = np.zeros((3, 3, 3))
    for i in range(3):
        for j in range(3):
            for k in range(3):
                Q[i, j, k] = _quadrupole_entry(i, j, k, K)
    trace = -2.0 * K
    for arr in (K, Q, trace):
        arr.flags.writeable = False
    return QuadrupoleMoments(K=K, Q_tensor=Q, Q_trace=trace)


def _octopole_integrand(i: int, j: int, k: int, l: int, pos: np.ndarray, der: np.ndarray) -> np.ndarray:
    """Rank-4 octopole integrand O^{r_i}_{R_j R_k R_l} on the sample grid.

    Five-branch dispatch keyed on the coincidence pattern of the sorted lower
    indices (j <= k <= l). Each branch is a short polynomial in the curve
    position r and derivative t; the branches agree pointwise with the
    expanded cross-product integrand

        sum over distinct arrangements (b, c, d) of {j, k, l} of
        (t x e_b)_i r_c r_d,

    which the test suite uses as an independent oracle.
    """
    r = pos.T  # r[c] is the c-th coordinate over the grid
    t = der.T
    if j == k == l:
        out = np.zeros(pos.shape[0])
        for m in range(3):
            out += EPS[j, i, m] * r[j] * r[j] * t[m]
        return out
    if j != k and k != l:  # all three distinct
        out = np.zeros(pos.shape[0])
        for m in range(3):
            for n in range(3):
                out += 2.0 * EPS[i, m, n] * r[i] * r[m] * t[m]
        return out
    rep = j if j == k else k  # the repeated lower index value
    other = l if j == k else j
    if i == rep:
        d_kl = 1.0 if k == l else 0.0
        d_jk = 1.0 if j == k else 0.0
        out = np.zeros(pos.shape[0])
        for m in range(3):
            out += r[k] * r[k] * (d_kl * EPS[j, k, m] * t[m] - d_jk * EPS[j, l, m] * t[m])
        return out
    if i == other:
        d_il = 1.0 if i == l else 0.0
        d_ij = 1.0 if i == j else 0.0
        out = np.zeros(pos.shape[0])
        for m in range(3):
            out += 2.0 * (
                d_il * EPS[j, l, m] * r[j] * r[l] * t[m]
                - d_ij * EPS[i, k, m] * r[i] * r[k] * t[m]
            )
        return out
    # i absent from {j, k, l}
    d_jk = 1.0 if j == k else 0.0
    d_kl = 1.0 if k == l else 0.0
    return d_jk * (EPS[k, l, i] * r[k] * r[k] * t[k] - 2.0 * EPS[i, k, l] * r[k] * r[l] * t[l]) + d_kl * (
        2.0 * EPS[i, j, l] * r[j] * r[l] * t[j] - EPS[j, k, i] * r[k] * r[k] * t[k]
    )


@lru_cache(maxsize=256)
def octopole_moments(spec: KnotSpec, n_samples: int = DEFAULT_SAMPLES) -> OctopoleMoments:
    """Integrated octopole tensor and contraction of a curve.

    Only the independent components (i; j <= k <= l) are integrated; total
    symmetry in the lower indices fills in the rest, and the contraction
    follows from O_contracted[i, p] = sum_m (1 + 2*delta_{pm}) O[i, p, m, m].
    """
    _, pos, der = sample_curve(spec, n_samples)
    O = np.zeros((3, 3, 3, 3))
    for i in range(3):
        for j, k, l in SORTED_TRIPLES:
            value = _octopole_integrand(i, j, k, l, pos, der).mean() * TWO_PI
            for a, b, c in set(permutations((j, k, l))):
                O[i, a, b, c] = value
    contracted = np.zeros((3, 3))
    for i in range(3):
        for p in range(3):
            contracted[i, p] = sum(
                (1.0 + 2.0 * (1.0 if p == m else 0.0)) * O[i, p, m, m] for m in range(3)
            )
    O.flags.writeable = False
    contracted.flags.writeable = False
    return OctopoleMoments(O_tensor=O, O_contracted=contracted)


def dipole_moment(spec: KnotSpec, n_samples: int = DEFAULT_SAMPLES) -> np.ndarray:
    """Total dipole moment, the loop integral of dr'/dtau.

    Identically zero for any closed curve; kept as an explicit check of
    closure rather than a trusted identity.
    """
    _, _, der = sample_curve(spec, n_samples)
    return der.mean(axis=0) * TWO_PI


def moments_to_dict(quad: QuadrupoleMoments, octo: OctopoleMoments) -> dict:
    """JSON-ready dictionary with every moment array as nested lists."""
    return {
        "K": quad.K.tolist(),
        "Q": quad.Q_tensor.tolist(),
        "Q_trace": quad.Q_trace.tolist(),
        "O": octo.O_tensor.tolist(),
        "O_contracted": octo.O_contracted.tolist(),
    }
