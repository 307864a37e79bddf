"""Local vertex weights, boundary K-matrix and the equations they satisfy.

Basis conventions used throughout: index 0 = spin up, index 1 = spin down;
a two-space matrix on aux (x) site is 4x4 with the aux index as the high
bit.  The bulk weights at argument u are a(u) = 1, b(u) = sinh u /
sinh(u + eta), c(u) = sinh eta / sinh(u + eta), and the L-matrix of row
spectral lambda against column inhomogeneity nu is the R-matrix evaluated
at lambda - nu - eta/2.
"""
from __future__ import annotations

import math

import numpy as np

from .errors import SingularWeightError

EPS_SINGULAR = 1e-12


def weights(u: float, eta: float) -> tuple[float, float, float]:
    den = math.sinh(u + eta)
    if abs(den) < EPS_SINGULAR:
        raise SingularWeightError(f"sinh(u + eta) ~ 0 at u={u!r}, eta={eta!r}")
    return 1.0, math.sinh(u) / den, math.sinh(eta) / den


def r_matrix(u: float, eta: float) -> np.ndarray:
    a, b, c = weights(u, eta)
    return np.array([[a, 0.0, 0.0, 0.0],
                     [0.0, b, c, 0.0],
                     [0.0, c, b, 0.0],
                     [0.0, 0.0, 0.0, a]])


def l_matrix(lam: float, nu: float, eta: float) -> np.ndarray:
    """L(lambda, nu) = R(lambda - nu - eta/2) on aux (x) site."""
    return r_matrix(lam - nu - eta / 2, eta)


def k_plus(lam: float, eta: float, zeta_plus: float) -> np.ndarray:
    return np.array([[math.sinh(lam + eta / 2 + zeta_plus), 0.0],
                     [0.0, math.sinh(-lam - eta / 2 + zeta_plus)]])


def aux_transpose(m: np.ndarray) -> np.ndarray:
    """Transpose in the auxiliary (high-bit) slot only."""
    out = np.empty_like(m)
    out[0:2, 0:2] = m[0:2, 0:2]
    out[0:2, 2:4] = m[2:4, 0:2]
    out[2:4, 0:2] = m[0:2, 2:4]
    out[2:4, 2:4] = m[2:4, 2:4]
    return out


def aux_conjugate_sigma2(m: np.ndarray) -> np.ndarray:
    """sigma^2 m sigma^2 in the auxiliary slot, in closed real form.

    With aux blocks m = [[M11, M12], [M21, M22]] the result is
    [[M22, -M21], [-M12, M11]]; no complex arithmetic is needed.
    """
    out = np.empty_like(m)
    out[0:2, 0:2] = m[2:4, 2:4]
    out[0:2, 2:4] = -m[2:4, 0:2]
    out[2:4, 0:2] = -m[0:2, 2:4]
    out[2:4, 2:4] = m[0:2, 0:2]
    return out


_SWAP = np.array([[1.0, 0.0, 0.0, 0.0],
                  [0.0, 0.0, 1.0, 0.0],
                  [0.0, 1.0, 0.0, 0.0],
                  [0.0, 0.0, 0.0, 1.0]])


def ybe_residual(lam: float, mu: float, eta: float) -> float:
    """Max-abs residual of R12(l) R13(l+m) R23(m) = R23(m) R13(l+m) R12(l)."""
    i2 = np.eye(2)
    r12 = np.kron(r_matrix(lam, eta), i2)
    r23 = np.kron(i2, r_matrix(mu, eta))
    p23 = np.kron(i2, _SWAP)
    r13 = p23 @ np.kron(r_matrix(lam + mu, eta), i2) @ p23
    return float(np.max(np.abs(r12 @ r13 @ r23 - r23 @ r13 @ r12)))


def _transpose_slot1(m: np.ndarray) -> np.ndarray:
    return m.reshape(2, 2, 2, 2).transpose(2, 1, 0, 3).reshape(4, 4)


def _transpose_slot2(m: np.ndarray) -> np.ndarray:
    return m.reshape(2, 2, 2, 2).transpose(0, 3, 2, 1).reshape(4, 4)


def reflection_residual(lam1: float, lam2: float, eta: float,
                        zeta_plus: float) -> float:
    """Max-abs residual of the boundary reflection equation for k_plus.

    R12(-l1+l2) K1^t1 R12(-l1-l2-eta) K2^t2 equals the same factors in
    reversed order, on the two-auxiliary-slot space.
    """
    i2 = np.eye(2)
    k1 = _transpose_slot1(np.kron(k_plus(lam1, eta, zeta_plus), i2))
    k2 = _transpose_slot2(np.kron(i2, k_plus(lam2, eta, zeta_plus)))
    ra = r_matrix(-lam1 + lam2, eta)
    rb = r_matrix(-lam1 - lam2 - eta, eta)
    lhs = ra @ k1 @ rb @ k2
    rhs = k2 @ rb @ k1 @ ra
    return float(np.max(np.abs(lhs - rhs)))
