"""Determinant evaluations: partition function and reduced overlaps.

All closed forms here are ratios of products of sinh factors times an
n x n determinant.  Products are accumulated in sign + log-magnitude
form and determinants through a pivoted LU so that moderate sizes stay
well inside floating range.  Scalar results are computed in extended
working precision (where the hardware provides it) and returned as
float; kernel matrices exposed publicly are float64.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from .errors import SingularParameterError, SizeCapError
from .local_weights import EPS_SINGULAR
from .params import ModelParams

MAX_DET_SIZE = 12

# fold the log scale back into the value while it is comfortably finite
_LOG_FOLD = 600.0

_WORK = np.longdouble


def _check_det_cap(n: int) -> None:
    if n > MAX_DET_SIZE:
        raise SizeCapError(
            f"determinant routes support n <= {MAX_DET_SIZE}, got n = {n}")


@functools.lru_cache(maxsize=None)
def _triu(n: int):
    return np.triu_indices(n, 1)


@dataclass(frozen=True)
class DetResult:
    """Determinant as value * exp(log_scale); pivot_min flags near-singularity."""

    value: float
    log_scale: float
    pivot_min: float

    def unscaled(self) -> float:
        return self.value * np.exp(self.log_scale)


def det_lu(m) -> DetResult:
    """Determinant by LU with partial pivoting, tracking sign and log magnitude.

    Works in the dtype of the input matrix, so extended-precision kernels
    keep their precision through the elimination.
    """
    a = np.array(m)
    if not np.issubdtype(a.dtype, np.floating):
        a = a.astype(float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"need a square matrix, got shape {a.shape}")
    n = a.shape[0]
    one = a.dtype.type(1.0)
    if n == 0:
        return DetResult(one, one * 0.0, math.inf)
    sign = one
    logmag = one * 0.0
    pivot_min = math.inf
    for col in range(n):
        p = col + int(np.argmax(np.abs(a[col:, col])))
        piv = a[p, col]
        if piv == 0.0:
            return DetResult(one * 0.0, one * 0.0, 0.0)
        if p != col:
            a[[col, p]] = a[[p, col]]
            sign = -sign
        if piv < 0.0:
            sign = -sign
        pivot_min = min(pivot_min, float(abs(piv)))
        logmag = logmag + np.log(abs(piv))
        if col + 1 < n:
            a[col + 1:, col:] -= np.outer(a[col + 1:, col] / piv, a[col, col:])
    if abs(logmag) < _LOG_FOLD:
        return DetResult(sign * np.exp(logmag), one * 0.0, pivot_min)
    return DetResult(sign, logmag, pivot_min)


class _SignLog:
    """Running product kept as a sign and a log magnitude."""

    __slots__ = ("sign", "log")

    def __init__(self) -> None:
        self.sign = _WORK(1.0)
        self.log = _WORK(0.0)

    def mul(self, x) -> None:
        if self.sign == 0.0:
            return
        x = _WORK(x)
        if x == 0.0:
            self.sign = _WORK(0.0)
            return
        if x < 0.0:
            self.sign = -self.sign
        self.log += np.log(np.abs(x))

    def div(self, x) -> None:
        if abs(x) < EPS_SINGULAR:
            raise SingularParameterError(
                f"denominator factor {float(x):.3e} smaller than {EPS_SINGULAR:.0e}")
        if self.sign == 0.0:
            return
        x = _WORK(x)
        if x < 0.0:
            self.sign = -self.sign
        self.log -= np.log(np.abs(x))

    def mul_array(self, arr) -> None:
        a = np.ravel(np.asarray(arr, dtype=_WORK))
        if self.sign == 0.0 or a.size == 0:
            return
        if np.any(a == 0.0):
            self.sign = _WORK(0.0)
            return
        if int(np.count_nonzero(a < 0.0)) & 1:
            self.sign = -self.sign
        self.log += np.log(np.abs(a)).sum()

    def div_array(self, arr) -> None:
        a = np.ravel(np.asarray(arr, dtype=_WORK))
        if a.size == 0:
            return
        if np.min(np.abs(a)) < EPS_SINGULAR:
            worst = float(a[np.argmin(np.abs(a))])
            raise SingularParameterError(
                f"denominator factor {worst:.3e} smaller than {EPS_SINGULAR:.0e}")
        if self.sign == 0.0:
            return
        if int(np.count_nonzero(a < 0.0)) & 1:
            self.sign = -self.sign
        self.log -= np.log(np.abs(a)).sum()

    def mul_det(self, d: DetResult) -> None:
        self.mul(d.value)
        self.log += d.log_scale

    def value(self):
        if self.sign == 0.0:
            return _WORK(0.0)
        return self.sign * np.exp(self.log)


def _sh(x) -> np.longdouble:
    return np.sinh(_WORK(x))


def phi_kernel(lam: float, nu: float, eta: float) -> float:
    """sinh(eta) / (sinh(lam - nu + eta/2) sinh(lam - nu - eta/2))."""
    return float(_phi_ext(lam, nu, eta))


def _phi_ext(lam, nu, eta):
    d1 = _sh(_WORK(lam) - _WORK(nu) + _WORK(eta) / 2)
    d2 = _sh(_WORK(lam) - _WORK(nu) - _WORK(eta) / 2)
    if min(abs(d1), abs(d2)) < EPS_SINGULAR:
        raise SingularParameterError(
            f"phi kernel singular at lam - nu = {lam - nu:.6g}")
    return _sh(eta) / (d1 * d2)


def _chi_ext(params: ModelParams) -> np.ndarray:
    eta, zeta = _WORK(params.eta), _WORK(params.zeta_plus)
    n = params.n
    chi = np.empty((n, n), dtype=_WORK)
    for j, lam in enumerate(params.lambdas):
        lam = _WORK(lam)
        s2lam = _sh(lam) ** 2
        for k, nu in enumerate(params.nus):
            nu = _WORK(nu)
            d1 = _sh(nu + eta / 2) ** 2 - s2lam
            d2 = _sh(nu - eta / 2) ** 2 - s2lam
            if min(abs(d1), abs(d2)) < EPS_SINGULAR:
                raise SingularParameterError(
                    f"kernel singular at lambda_{j + 1}, nu_{k + 1}")
            chi[j, k] = -_sh(eta) * _sh(2 * lam + eta) * _sh(nu + zeta) / (d1 * d2)
    return chi


def chi_matrix(params: ModelParams) -> np.ndarray:
    """Reflecting-end kernel whose determinant enters the partition function."""
    return np.asarray(_chi_ext(params), dtype=float)


def tsuchiya_z(params: ModelParams) -> float:
    """Partition function as the reflecting-end determinant formula."""
    _check_det_cap(params.n)
    n, eta = params.n, params.eta
    acc = _SignLog()
    for nu in params.nus:
        s2nu = _sh(_WORK(nu) + _WORK(eta) / 2) ** 2
        for lam in params.lambdas:
            acc.mul(s2nu - _sh(lam) ** 2)
    for j in range(n):
        for k in range(j + 1, n):
            acc.div(_sh(params.nus[j]) ** 2 - _sh(params.nus[k]) ** 2)
            acc.div(_sh(params.lambdas[k]) ** 2 - _sh(params.lambdas[j]) ** 2)
    acc.mul_det(det_lu(_chi_ext(params)))
    return float(acc.value())


def izergin_z(spectral, nus, eta: float) -> float:
    """Domain-wall overlap of m B-operators with m columns, as a determinant."""
    n = len(spectral)
    if len(nus) != n:
        raise ValueError("need as many spectral parameters as columns")
    _check_det_cap(n)
    acc = _SignLog()
    for lam in spectral:
        for nu in nus:
            acc.mul(_sh(_WORK(lam) - _WORK(nu) - _WORK(eta) / 2))
    for j in range(n):
        for k in range(j + 1, n):
            acc.div(_sh(_WORK(nus[j]) - _WORK(nus[k])))
            acc.div(_sh(_WORK(spectral[k]) - _WORK(spectral[j])))
    kernel = np.empty((n, n), dtype=_WORK)
    for a in range(n):
        for k in range(n):
            kernel[a, k] = _phi_ext(spectral[a], nus[k], eta)
    acc.mul_det(det_lu(kernel))
    return float(acc.value())


def _overlap_grids(rows, nus, eta):
    """sinh(lam_a - nu_k +- eta/2) on the full (row, column) grid."""
    diff = (np.asarray(rows, dtype=_WORK)[:, None]
            - np.asarray(nus, dtype=_WORK)[None, :])
    half = _WORK(eta) / 2
    return np.sinh(diff + half), np.sinh(diff - half)


def _h_first_row_num(nus_a, eta_w, m: int) -> np.ndarray:
    """Column weights of the reduced geometry (independent of the rows)."""
    n = nus_a.size
    dn = nus_a[:, None] - nus_a[None, :]      # [kp, k] = nu_kp - nu_k
    num = np.ones(n, dtype=_WORK)
    if m > 1:
        num = num * np.prod(np.sinh(dn[:m - 1, :] + eta_w), axis=0)
    if m < n:
        num = num * np.prod(np.sinh(dn[m:, :]), axis=0)
    return num


def _h_from_grids(sp, sm, rows, nus, eta, m: int) -> np.ndarray:
    n = len(nus)
    nus_a = np.asarray(nus, dtype=_WORK)
    eta_w = _WORK(eta)
    if sp.size:
        col_min = np.abs(sp).min(axis=0)
        if col_min.min() < EPS_SINGULAR:
            raise SingularParameterError(
                f"reduced kernel singular at column {int(np.argmin(col_min)) + 1}")
        if np.min(np.abs(sm)) < EPS_SINGULAR:
            i, k = np.unravel_index(int(np.argmin(np.abs(sm))), sm.shape)
            raise SingularParameterError(
                f"phi kernel singular at lam - nu = "
                f"{float(rows[i]) - float(nus[k]):.6g}")
    h = np.empty((n, n), dtype=_WORK)
    h[0] = _h_first_row_num(nus_a, eta_w, m) / np.prod(sp, axis=0)
    h[1:] = np.sinh(eta_w) / (sp * sm)
    return h


def _h_ext(rows, nus, eta, m: int) -> np.ndarray:
    n = len(nus)
    if len(rows) != n - 1:
        raise ValueError("need n-1 row rapidities for an n-column overlap")
    sp, sm = _overlap_grids(rows, nus, eta)
    return _h_from_grids(sp, sm, rows, nus, eta, m)


def h_matrix(rows, nus, eta: float, m: int) -> np.ndarray:
    """Kernel for the reduced overlap with column m left unflipped.

    First row carries the reduced-geometry weight of each column (zero
    for columns right of m); remaining rows are the phi kernel at the
    n-1 row rapidities.
    """
    return np.asarray(_h_ext(rows, nus, eta, m), dtype=float)


def _reduced_overlap_det(rows, nus, eta, m: int):
    n = len(nus)
    if len(rows) != n - 1:
        raise ValueError("need n-1 row rapidities for an n-column overlap")
    rows_a = np.asarray(rows, dtype=_WORK)
    nus_a = np.asarray(nus, dtype=_WORK)
    sp, sm = _overlap_grids(rows, nus, eta)
    acc = _SignLog()
    acc.mul_array(sm)
    j, k = _triu(n)
    acc.div_array(np.sinh(nus_a[k] - nus_a[j]))
    a, b = _triu(n - 1)
    acc.div_array(np.sinh(rows_a[a] - rows_a[b]))
    acc.mul_det(det_lu(_h_from_grids(sp, sm, rows, nus, eta, m)))
    return acc.value()


def _batched_det_signlog(a):
    """Sign and log magnitude of det for a stack of square matrices.

    Plain LU with partial pivoting, vectorized over the leading axis.
    A singular member gets sign 0 (its log entry is then meaningless).
    """
    a = np.array(a, dtype=_WORK)
    bsz, n, _ = a.shape
    sign = np.ones(bsz, dtype=_WORK)
    logmag = np.zeros(bsz, dtype=_WORK)
    bi = np.arange(bsz)
    for col in range(n):
        p = col + np.argmax(np.abs(a[:, col:, col]), axis=1)
        swapped = p != col
        if np.any(swapped):
            rows_p = a[bi, p].copy()
            rows_c = a[:, col].copy()
            a[bi, p] = rows_c
            a[:, col] = rows_p
            sign[swapped] = -sign[swapped]
        piv = a[:, col, col].copy()
        dead = piv == 0.0
        if np.any(dead):
            sign[dead] = 0.0
            piv[dead] = 1.0
        sign = np.where(piv < 0.0, -sign, sign)
        logmag += np.log(np.abs(piv))
        if col + 1 < n:
            f = a[:, col + 1:, col] / piv[:, None]
            a[:, col + 1:, col:] -= f[:, :, None] * a[:, col, col:][:, None, :]
    return sign, logmag


def _reduced_overlap_stack(sl, nus, eta, m: int):
    """Reduced overlaps for a stack of row-rapidity sets, as (sign, log).

    Each row of ``sl`` holds one set of n-1 row rapidities; the return
    arrays give the sign and log magnitude of the overlap per set.
    """
    nus_a = np.asarray(nus, dtype=_WORK)
    eta_w = _WORK(eta)
    n = nus_a.size
    sl = np.asarray(sl, dtype=_WORK)
    if sl.ndim != 2 or sl.shape[1] != n - 1:
        raise ValueError("need n-1 row rapidities for an n-column overlap")
    diff = sl[:, :, None] - nus_a[None, None, :]
    sp = np.sinh(diff + eta_w / 2)
    sm = np.sinh(diff - eta_w / 2)
    if sp.size:
        col_min = np.abs(sp).min(axis=(0, 1))
        if col_min.min() < EPS_SINGULAR:
            raise SingularParameterError(
                f"reduced kernel singular at column {int(np.argmin(col_min)) + 1}")
        if np.min(np.abs(sm)) < EPS_SINGULAR:
            at, i, k = np.unravel_index(int(np.argmin(np.abs(sm))), sm.shape)
            raise SingularParameterError(
                f"phi kernel singular at lam - nu = "
                f"{float(sl[at, i]) - float(nus_a[k]):.6g}")
    sign = np.ones(sl.shape[0], dtype=_WORK)
    logmag = np.sum(np.log(np.abs(sm)), axis=(1, 2))
    sign = np.where(np.count_nonzero(sm < 0.0, axis=(1, 2)) & 1, -sign, sign)
    base = _SignLog()
    j, k = _triu(n)
    base.div_array(np.sinh(nus_a[k] - nus_a[j]))
    sign = sign * base.sign
    logmag = logmag + base.log
    a, b = _triu(n - 1)
    if a.size:
        d = np.sinh(sl[:, a] - sl[:, b])
        if np.min(np.abs(d)) < EPS_SINGULAR:
            raise SingularParameterError("degenerate rapidity pair in row set")
        sign = np.where(np.count_nonzero(d < 0.0, axis=1) & 1, -sign, sign)
        logmag -= np.sum(np.log(np.abs(d)), axis=1)
    h = np.empty((sl.shape[0], n, n), dtype=_WORK)
    h[:, 0, :] = _h_first_row_num(nus_a, eta_w, m) / np.prod(sp, axis=1)
    h[:, 1:, :] = np.sinh(eta_w) / (sp * sm)
    dsign, dlog = _batched_det_signlog(h)
    return sign * dsign, logmag + dlog


def _wavefunction_det_ext(params: ModelParams, m: int, sigma=None):
    n = params.n
    _check_det_cap(n)
    if not 1 <= m <= n:
        raise ValueError(f"column index m = {m} outside 1..{n}")
    rows = list(params.lambdas[:-1])
    if sigma is not None:
        if len(sigma) != n - 1 or any(s not in (-1, 1) for s in sigma):
            raise ValueError("sigma must hold n-1 entries from {-1, +1}")
        rows = [s * lam for s, lam in zip(sigma, rows)]
    return _reduced_overlap_det(rows, params.nus, params.eta, m)


def wavefunction_det(params: ModelParams, m: int, sigma=None) -> float:
    """Determinant form of the reduced overlap, rows optionally sign-dressed.

    sigma, when given, is a tuple of +-1 of length n-1 replacing each row
    rapidity lam_alpha by sigma_alpha * lam_alpha.
    """
    return float(_wavefunction_det_ext(params, m, sigma))
