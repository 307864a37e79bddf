"""Boundary one-point weights at the reflecting end.

f(m) restricts the partition sum to configurations whose top row pair
turns at column m; F(m) = f(m)/Z.  Besides the lattice oracle, f(m) is
evaluated by expanding the double-row creation operators over sign
choices sigma of their rapidities, which reduces each term to a plain
overlap: by coordinate permutation sum (f_perm) or by determinant
(f_det).  closed-form folds the whole ratio into products of sinh
factors and two determinants.

The sign expansion cancels strongly between terms, so all scalar
accumulation here runs in extended working precision; f_det reports a
cancellation indicator callers can use to judge the remaining accuracy.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .determinants import (
    _SignLog,
    _chi_ext,
    _h_ext,
    _reduced_overlap_stack,
    _triu,
    det_lu,
    tsuchiya_z,
)
from .errors import SingularParameterError, SingularWeightError, SizeCapError
from .lattice_oracle import (
    _apply_creation,
    _apply_row,
    _site_ops,
    f_oracle,
    partition_oracle,
)
from .local_weights import EPS_SINGULAR
from .params import ModelParams
from .wavefunction import (
    MAX_PARTICLES,
    _bc_ext,
    _psi_coordinate_ext,
    pairwise_sum,
)

METHODS = ("ratio-oracle", "ratio-perm", "ratio-det", "closed-form")

_WORK = np.longdouble


@dataclass(frozen=True)
class OnePointProfile:
    """F(1)..F(n) by one method; normalization_gap records |1 - sum|."""

    values: tuple
    method: str
    normalization_gap: float


def _sigma_iter(m: int):
    """Sign tuples in bitmask order: bit a set means sigma_{a+1} = -1."""
    for mask in range(1 << m):
        yield tuple(-1 if mask >> a & 1 else 1 for a in range(m))


def _dvac_rows(params: ModelParams, dressed):
    """Product of the vacuum D eigenvalues at the negated dressed rapidities."""
    eta = _WORK(params.eta)
    u = (-np.asarray(dressed, dtype=_WORK)[:, None]
         - np.asarray(params.nus, dtype=_WORK)[None, :] - eta / 2)
    den = np.sinh(u + eta)
    if den.size and np.min(np.abs(den)) < EPS_SINGULAR:
        raise SingularWeightError("sinh(u + eta) ~ 0 in vacuum eigenvalue")
    return np.prod(np.sinh(u) / den)


def _pair_sums(sigma, rows):
    """sigma_a lam_a + sigma_b lam_b over index pairs a < b."""
    sl = np.asarray(sigma, dtype=_WORK) * np.asarray(rows, dtype=_WORK)
    a, b = _triu(len(rows))
    return sl, a, b, sl[a] + sl[b]


def _sigma_coef(params: ModelParams, sigma, rows):
    """Scalar weight of one sign choice in the double-row expansion."""
    eta, zeta = _WORK(params.eta), _WORK(params.zeta_plus)
    sl, a, b, x = _pair_sums(sigma, rows)
    coef = np.prod(-np.asarray(sigma, dtype=_WORK)
                   * np.sinh(-sl + eta / 2 - zeta))
    sx = np.sinh(x)
    if sx.size:
        if np.min(np.abs(sx)) < EPS_SINGULAR:
            j = int(np.argmin(np.abs(sx)))
            raise SingularParameterError(
                f"degenerate rapidity pair {a[j] + 1}, {b[j] + 1} in expansion")
        coef = coef * np.prod(np.sinh(x - eta) / sx)
    return coef


def _double_row_norm(params: ModelParams, rows):
    eta = _WORK(params.eta)
    p = _WORK(1.0)
    for lam in rows:
        s2 = np.sinh(2 * _WORK(lam))
        if abs(float(s2)) < EPS_SINGULAR:
            raise SingularParameterError(f"rapidity {lam:.6g} too close to zero")
        p *= np.sinh(2 * _WORK(lam) + eta) / s2
    return p


def b_expansion_residual(params: ModelParams, m: int) -> float:
    """Relative residual of the sign expansion of calB(lam_1)..calB(lam_m) |up..up>."""
    if not 1 <= m <= params.n:
        raise ValueError(f"need 1 <= m <= {params.n}, got {m}")
    rows = params.lambdas[:m]
    dim = 1 << params.n
    lhs = np.zeros(dim, dtype=_WORK)
    lhs[0] = 1.0
    for lam in reversed(rows):
        lhs = _apply_creation(params, lam, lhs)
    rhs = np.zeros(dim, dtype=_WORK)
    for sigma in _sigma_iter(m):
        dressed = [s * lam for s, lam in zip(sigma, rows)]
        coef = _sigma_coef(params, sigma, rows) * _dvac_rows(params, dressed)
        v = np.zeros(dim, dtype=_WORK)
        v[0] = 1.0
        for s, lam in zip(reversed(sigma), reversed(rows)):
            u = np.zeros((2, dim), dtype=_WORK)
            u[1] = v
            v = _apply_row(_site_ops(params, s * lam), u)[0]
        rhs += coef * v
    rhs *= _double_row_norm(params, rows)
    scale = float(np.max(np.abs(lhs)))
    if scale == 0.0:
        return float(np.max(np.abs(rhs)))
    return float(np.max(np.abs(lhs - rhs)) / scale)


def _frozen_row_prefactor(params: ModelParams, m: int):
    """Weight of the top row pair once its path is pinned by the turn at column m."""
    eta = _WORK(params.eta)
    lam_n = _WORK(params.lambdas[-1])
    num = _WORK(params.nus[m - 1])
    b_turn, _ = _bc_ext(-lam_n - num - eta / 2, eta)
    _, c_flip = _bc_ext(lam_n - num - eta / 2, eta)
    pref = np.sinh(lam_n + eta / 2 + _WORK(params.zeta_plus)) * b_turn * c_flip
    for j in range(m + 1, params.n + 1):
        bw, _ = _bc_ext(lam_n - _WORK(params.nus[j - 1]) - eta / 2, eta)
        pref *= bw
    return pref


def f_perm(params: ModelParams, m: int) -> float:
    """f(m) with the reduced overlaps done as coordinate permutation sums."""
    n = params.n
    if not 1 <= m <= n:
        raise ValueError(f"column index m = {m} outside 1..{n}")
    if n - 1 > MAX_PARTICLES:
        raise SizeCapError(
            f"permutation route supports n <= {MAX_PARTICLES + 1}, got n = {n}")
    pref = _frozen_row_prefactor(params, m)
    if n == 1:
        return float(pref)
    rows = params.lambdas[:-1]
    pref *= _double_row_norm(params, rows)
    positions = tuple(x for x in range(1, n + 1) if x != m)
    terms = []
    for sigma in _sigma_iter(n - 1):
        dressed = tuple(s * lam for s, lam in zip(sigma, rows))
        coef = _sigma_coef(params, sigma, rows) * _dvac_rows(params, dressed)
        terms.append(coef * _psi_coordinate_ext(params, dressed, positions))
    return float(pref * pairwise_sum(terms))


def _sigma_stack(k: int) -> np.ndarray:
    """The sign tuples of _sigma_iter stacked into a (2^k, k) array."""
    bits = (np.arange(1 << k)[:, None] >> np.arange(k)[None, :]) & 1
    return (1 - 2 * bits).astype(_WORK)


def f_det(params: ModelParams, m: int, return_indicator: bool = False):
    """f(m) with the reduced overlaps done as determinants.

    The 2^(n-1) sign choices are processed as one batch.  With
    return_indicator=True also returns max |term| / |sum| over the
    expansion, a measure of cancellation among its terms.
    """
    n = params.n
    if not 1 <= m <= n:
        raise ValueError(f"column index m = {m} outside 1..{n}")
    pref = _frozen_row_prefactor(params, m)
    if n == 1:
        return (float(pref), 1.0) if return_indicator else float(pref)
    rows = params.lambdas[:-1]
    pref *= _double_row_norm(params, rows)
    eta, zeta = _WORK(params.eta), _WORK(params.zeta_plus)
    nus_a = np.asarray(params.nus, dtype=_WORK)
    sig = _sigma_stack(n - 1)
    sl = sig * np.asarray(rows, dtype=_WORK)[None, :]
    coef = np.prod(-sig * np.sinh(-sl + eta / 2 - zeta), axis=1)
    a, b = _triu(n - 1)
    if a.size:
        x = sl[:, a] + sl[:, b]
        sx = np.sinh(x)
        if np.min(np.abs(sx)) < EPS_SINGULAR:
            j = int(np.argmin(np.abs(sx)) % sx.shape[1])
            raise SingularParameterError(
                f"degenerate rapidity pair {a[j] + 1}, {b[j] + 1} in expansion")
        coef = coef * np.prod(np.sinh(x - eta) / sx, axis=1)
    u = -sl[:, :, None] - nus_a[None, None, :] - eta / 2
    den = np.sinh(u + eta)
    if np.min(np.abs(den)) < EPS_SINGULAR:
        raise SingularWeightError("sinh(u + eta) ~ 0 in vacuum eigenvalue")
    coef = coef * np.prod(np.sinh(u) / den, axis=(1, 2))
    osign, olog = _reduced_overlap_stack(sl, params.nus, params.eta, m)
    terms = list(coef * osign * np.exp(olog))
    tot = pairwise_sum(terms)
    value = float(pref * tot)
    if not return_indicator:
        return value
    peak = max(abs(t) for t in terms)
    indicator = math.inf if tot == 0.0 else float(peak / abs(tot))
    return value, indicator


def _big_f_closed(params: ModelParams, m: int) -> float:
    """F(m) from the fully reduced product/determinant expression."""
    sh = np.sinh
    n = params.n
    eta, zeta = _WORK(params.eta), _WORK(params.zeta_plus)
    lam_n = _WORK(params.lambdas[-1])
    nus = [_WORK(nu) for nu in params.nus]
    acc = _SignLog()
    acc.mul(sh(eta))
    acc.mul(sh(lam_n + eta / 2 + zeta))
    acc.mul(sh(lam_n + nus[m - 1] + eta / 2))
    acc.div(sh(lam_n) ** 2 - sh(nus[m - 1] - eta / 2) ** 2)
    for lam in params.lambdas[:-1]:
        lam = _WORK(lam)
        acc.mul(sh(2 * lam + eta))
        acc.div(sh(2 * lam))
        acc.mul(sh(lam) ** 2 - sh(lam_n) ** 2)
    for j in range(n):
        for k in range(j + 1, n):
            acc.mul(sh(nus[j] + nus[k]))
    for j in range(1, m + 1):
        acc.div(sh(nus[j - 1] + eta / 2) ** 2 - sh(lam_n) ** 2)
    for j in range(m + 1, n + 1):
        acc.div(sh(nus[j - 1]) ** 2 - sh(lam_n + eta / 2) ** 2)

    if n == 1:
        tot = _WORK(1.0)
    else:
        rows = params.lambdas[:-1]
        nus_a = np.asarray(params.nus, dtype=_WORK)
        terms = []
        for sigma in _sigma_iter(n - 1):
            # pair denominators of the expansion cancel against the overlap
            # determinant here, leaving bare sinh(. - eta) numerators
            sl, _, _, x = _pair_sums(sigma, rows)
            coef = np.prod(-np.asarray(sigma, dtype=_WORK)
                           * sh(-sl + eta / 2 - zeta))
            if x.size:
                coef = coef * np.prod(sh(x - eta))
            grid = sh(-sl[:, None] - nus_a[None, :] + eta / 2)
            if np.min(np.abs(grid)) < EPS_SINGULAR:
                raise SingularParameterError(
                    "degenerate row/column pair in closed form")
            coef = coef / np.prod(grid)
            terms.append(
                coef * det_lu(_h_ext(sl, params.nus, params.eta, m)).unscaled())
        tot = pairwise_sum(terms)

    dchi = det_lu(_chi_ext(params))
    if dchi.value == 0.0:
        raise SingularParameterError("kernel determinant vanishes")
    acc.mul(tot)
    acc.log -= np.log(np.abs(_WORK(dchi.value))) + dchi.log_scale
    if dchi.value < 0.0:
        acc.sign = -acc.sign
    return float(acc.value())


def _partition_value(params: ModelParams, method: str) -> float:
    z = partition_oracle(params) if method == "ratio-oracle" else tsuchiya_z(params)
    if z == 0.0:
        raise SingularParameterError("partition function vanishes")
    return z


def big_f(params: ModelParams, m: int, method: str = "ratio-det") -> float:
    """Normalised boundary one-point value F(m) by the chosen method."""
    if method == "closed-form":
        return _big_f_closed(params, m)
    if method == "ratio-oracle":
        return f_oracle(params, m) / _partition_value(params, method)
    if method == "ratio-perm":
        return f_perm(params, m) / _partition_value(params, method)
    if method == "ratio-det":
        return f_det(params, m) / _partition_value(params, method)
    raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")


def profile(params: ModelParams, method: str = "ratio-det") -> OnePointProfile:
    """F(m) for every column m, plus the gap of the summed profile from 1."""
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    if method == "closed-form":
        vals = tuple(_big_f_closed(params, m) for m in range(1, params.n + 1))
    else:
        num = {"ratio-oracle": f_oracle, "ratio-perm": f_perm, "ratio-det": f_det}[method]
        z = _partition_value(params, method)
        vals = tuple(num(params, m) / z for m in range(1, params.n + 1))
    gap = abs(math.fsum(vals) - 1.0)
    return OnePointProfile(values=vals, method=method, normalization_gap=gap)
