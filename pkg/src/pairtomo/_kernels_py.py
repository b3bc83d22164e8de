"""NumPy implementations of the hot kernels.

These are the fallback twins of the compiled extension ``pairtomo._kernels``;
both expose the same functions with identical semantics and must agree to
float rounding.  The two call sites that dominate runtime are:

* the tomography likelihood, evaluated thousands of times per reconstruction
  on the 16 Cholesky parameters, and
* the average-entanglement objective over the two-element decomposition
  family, evaluated on coarse grids and inside simplex refinement.

Parameter layout for the Cholesky factor ``T`` (lower triangular, so that
``rho = T T^dag / tr``): ``t[0:4]`` real diagonal, ``t[4:10]`` real parts and
``t[10:16]`` imaginary parts of the strictly-lower entries in
``np.tril_indices(4, -1)`` row-major order.
"""

from __future__ import annotations

import numpy as np

_TRIL = np.tril_indices(4, -1)
_PROB_FLOOR = 1e-15


def cholesky_to_rho(t: np.ndarray) -> np.ndarray:
    """Positive unit-trace 4x4 matrix from 16 real parameters."""
    T = np.zeros((4, 4), dtype=complex)
    T[np.diag_indices(4)] = t[:4]
    T[_TRIL] = t[4:10] + 1j * t[10:16]
    rho = T @ T.conj().T
    tr = np.trace(rho).real
    if tr < 1e-300:
        # degenerate parameter point; return the maximally mixed state
        return np.eye(4, dtype=complex) / 4.0
    return rho / tr


def cholesky_probs(t: np.ndarray, projectors: np.ndarray) -> np.ndarray:
    """Born probabilities of the parameterized state in each projector."""
    rho = cholesky_to_rho(np.asarray(t, dtype=float))
    return np.einsum("kij,ji->k", projectors, rho).real


def nll_gaussian(t: np.ndarray, projectors: np.ndarray, target_probs: np.ndarray) -> float:
    """Sum of squared probability residuals (Gaussian model, no count data)."""
    p = cholesky_probs(t, projectors)
    d = p - target_probs
    return float(np.dot(d, d))


def nll_poisson(t: np.ndarray, projectors: np.ndarray, freqs: np.ndarray) -> float:
    """Poisson negative log-likelihood per unit exposure.

    ``freqs`` are counts divided by the estimated per-basis pair number, so
    the value (and the whole descent path) is invariant under uniform
    rescaling of the raw counts.
    """
    p = np.clip(cholesky_probs(t, projectors), _PROB_FLOOR, None)
    return float(np.sum(p - freqs * np.log(p)))


def _binary_entropy(p: np.ndarray) -> np.ndarray:
    p = np.clip(p, 0.0, 1.0)
    q = 1.0 - p
    out = np.zeros_like(p)
    m = p > 0.0
    out[m] -= p[m] * np.log2(p[m])
    m = q > 0.0
    out[m] -= q[m] * np.log2(q[m])
    return out


def nielsen_average_entanglement(theta: float, chi: float, weights: np.ndarray,
                                 psi0: np.ndarray, psi1: np.ndarray) -> float:
    """Average entanglement entropy of the two-element family member.

    The member is parameterized by ``alpha = cos(theta)`` (real) and
    ``beta = sin(theta) exp(i chi)``; ``weights`` are the rank-2 eigenvalue
    weights and ``psi0``/``psi1`` the orthonormal eigenstates.
    """
    grid = nielsen_average_entanglement_grid(
        np.array([theta]), np.array([chi]), weights, psi0, psi1)
    return float(grid[0, 0])


def nielsen_average_entanglement_grid(thetas: np.ndarray, chis: np.ndarray,
                                      weights: np.ndarray, psi0: np.ndarray,
                                      psi1: np.ndarray) -> np.ndarray:
    """Vectorized objective over a (theta, chi) grid.

    The Schmidt pair of each member state follows from the determinant of
    its 2x2 amplitude reshaping; the determinant is bilinear in the two
    mixing amplitudes, so the grid costs a handful of array operations.
    """
    thetas = np.asarray(thetas, dtype=float)[:, None]
    chis = np.asarray(chis, dtype=float)[None, :]
    w0, w1 = float(weights[0]), float(weights[1])
    m0 = np.asarray(psi0, dtype=complex).reshape(2, 2)
    m1 = np.asarray(psi1, dtype=complex).reshape(2, 2)
    d0 = m0[0, 0] * m0[1, 1] - m0[0, 1] * m0[1, 0]
    d1 = m1[0, 0] * m1[1, 1] - m1[0, 1] * m1[1, 0]
    mixed = (m0[0, 0] * m1[1, 1] + m1[0, 0] * m0[1, 1]
             - m0[0, 1] * m1[1, 0] - m1[0, 1] * m0[1, 0])

    alpha = np.cos(thetas) + 0.0 * chis  # broadcast to grid shape
    beta = np.sin(thetas) * np.exp(1j * chis)
    sw0, sw1 = np.sqrt(w0), np.sqrt(w1)

    q0 = np.cos(thetas) ** 2 * w0 + np.sin(thetas) ** 2 * w1 + 0.0 * chis
    q1 = 1.0 - q0

    a, b = alpha * sw0, beta * sw1
    det_phi0 = a * a * d0 + b * b * d1 + a * b * mixed
    a, b = np.conj(beta) * sw0, -alpha * sw1
    det_phi1 = a * a * d0 + b * b * d1 + a * b * mixed

    out = np.zeros(np.broadcast(alpha, beta).shape, dtype=float)
    for q, det in ((q0, det_phi0), (q1, det_phi1)):
        safe_q = np.where(q > 1e-300, q, 1.0)
        disc = np.sqrt(np.clip(1.0 - 4.0 * np.abs(det) ** 2 / safe_q**2, 0.0, 1.0))
        contrib = q * _binary_entropy((1.0 + disc) / 2.0)
        out += np.where(q > 1e-300, contrib, 0.0)
    return out
