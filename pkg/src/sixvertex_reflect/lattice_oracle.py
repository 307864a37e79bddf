"""Brute-force transfer-matrix evaluation on the 2N x N lattice.

The lattice has N columns and 2N rows; rows come in reflected pairs.  A
double row acts on the column spins as U^t(lam) = T^t(lam) K_+(lam)
sigma2 T(-lam) sigma2, written in auxiliary blocks as

    U^t = [[calA, calC],
           [calB, calD]].

The partition function is the all-up -> all-down matrix element of the
product of the N double-row creation operators calB(lam_alpha).  A
second, fully independent route enumerates vertical-edge configurations
row boundary by row boundary.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SingularWeightError, SizeCapError
from .local_weights import (
    EPS_SINGULAR,
    aux_conjugate_sigma2,
    aux_transpose,
    k_plus,
    l_matrix,
)
from .params import ModelParams
from .spinops import (
    aux_block_matmul,
    fold_site_blocks,
    site_blocks,
    w_minus,
    w_plus,
)

MAX_SITES = 10
ENUM_MAX_SITES = 3

_P_UP = np.array([[1.0, 0.0], [0.0, 0.0]])

# Scalar routes (partition_oracle, f_oracle) accumulate in whatever extended
# precision the hardware offers; public operator blocks stay float64.
_WORK = np.longdouble


def _check_cap(n: int) -> None:
    if n > MAX_SITES:
        raise SizeCapError(f"dense operators support n <= {MAX_SITES}, got n = {n}")


@dataclass(frozen=True)
class OneRowOperators:
    """Auxiliary blocks [[A, B], [C, D]] of a one-row monodromy matrix."""

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    D: np.ndarray


@dataclass(frozen=True)
class DoubleRowOperators:
    """Auxiliary blocks [[calA, calC], [calB, calD]] of a double-row monodromy."""

    calA: np.ndarray
    calB: np.ndarray
    calC: np.ndarray
    calD: np.ndarray


def _row_blocks(params: ModelParams, lam: float):
    """Aux blocks of T(lam) = L_N ... L_1 at row rapidity lam."""
    per_site = [site_blocks(l_matrix(lam, nu, params.eta)) for nu in params.nus]
    return fold_site_blocks(per_site, params.n)


def _dressed_site(lam: float, nu: float, eta: float):
    return site_blocks(aux_conjugate_sigma2(l_matrix(-lam, nu, eta)))


def _dressed_blocks(params: ModelParams, lam: float, columns=None):
    """Aux blocks of the product of sigma2 L_k(-lam) sigma2 over `columns`."""
    cols = set(range(1, params.n + 1) if columns is None else columns)
    per_site = [_dressed_site(lam, nu, params.eta) if k in cols else None
                for k, nu in enumerate(params.nus, start=1)]
    return fold_site_blocks(per_site, params.n)


def _vertex_ext(lam: float, nu: float, eta: float) -> np.ndarray:
    """One-vertex 4x4 matrix in working precision, aux index as high bit."""
    u = _WORK(lam) - _WORK(nu) - _WORK(eta) / 2
    den = np.sinh(u + _WORK(eta))
    if abs(float(den)) < EPS_SINGULAR:
        raise SingularWeightError(
            f"sinh(u + eta) ~ 0 at u={float(u)!r}, eta={eta!r}")
    m = np.zeros((4, 4), dtype=_WORK)
    m[0, 0] = m[3, 3] = 1.0
    m[1, 1] = m[2, 2] = np.sinh(u) / den
    m[1, 2] = m[2, 1] = np.sinh(_WORK(eta)) / den
    return m


def _site_ops(params: ModelParams, lam: float, conjugate: bool = False,
              transpose: bool = False) -> list:
    """Per-column vertex matrices, reshaped (a_out, s_out, a_in, s_in)."""
    ops = []
    for nu in params.nus:
        m = _vertex_ext(lam, nu, params.eta)
        if conjugate:
            m = aux_conjugate_sigma2(m)
        if transpose:
            m = aux_transpose(m)
        ops.append(m.reshape(2, 2, 2, 2))
    return ops


def _apply_row(ops: list, u: np.ndarray, columns=None,
               reverse: bool = False) -> np.ndarray:
    """Apply a product of per-column vertex matrices to an auxiliary pair.

    `u` has shape (2, 2**n): auxiliary component times column-spin state.
    Columns act in ascending order (the fold convention); `reverse` applies
    them descending, which realises the auxiliary transpose of the product
    when each factor is itself aux-transposed.
    """
    n = len(ops)
    cols = range(1, n + 1) if columns is None else columns
    for k in sorted(cols, reverse=reverse):
        blk = u.reshape(2, 1 << (n - k), 2, 1 << (k - 1))
        u = np.einsum("asbt,bhtl->ahsl", ops[k - 1], blk).reshape(2, -1)
    return u


def _apply_creation(params: ModelParams, lam: float, v: np.ndarray) -> np.ndarray:
    """Apply calB(lam) to a column-spin state in working precision.

    Uses the block identity calB = k1 B(lam) D(-lam) - k2 D(lam) B(-lam),
    so only one-row actions on vectors are ever needed.
    """
    dim = 1 << params.n
    ops_p = _site_ops(params, lam)
    ops_m = _site_ops(params, -lam)
    u = np.zeros((2, dim), dtype=_WORK)
    u[1] = v
    r = _apply_row(ops_m, u)            # r[0] = B(-lam) v, r[1] = D(-lam) v
    u = np.zeros((2, dim), dtype=_WORK)
    u[1] = r[1]
    bw = _apply_row(ops_p, u)[0]        # B(lam) D(-lam) v
    u = np.zeros((2, dim), dtype=_WORK)
    u[1] = r[0]
    dw = _apply_row(ops_p, u)[1]        # D(lam) B(-lam) v
    eta, zeta = _WORK(params.eta), _WORK(params.zeta_plus)
    k1 = np.sinh(_WORK(lam) + eta / 2 + zeta)
    k2 = np.sinh(-_WORK(lam) - eta / 2 + zeta)
    return k1 * bw - k2 * dw


def one_row_monodromy(params: ModelParams, lam: float) -> OneRowOperators:
    _check_cap(params.n)
    t = _row_blocks(params, lam)
    return OneRowOperators(A=t[0][0], B=t[0][1], C=t[1][0], D=t[1][1])


def double_row_monodromy(params: ModelParams, lam: float) -> DoubleRowOperators:
    _check_cap(params.n)
    t = _row_blocks(params, lam)
    tt = [[t[0][0], t[1][0]], [t[0][1], t[1][1]]]
    k = k_plus(lam, params.eta, params.zeta_plus)
    tk = [[tt[i][j] * k[j, j] for j in range(2)] for i in range(2)]
    u = aux_block_matmul(tk, _dressed_blocks(params, lam))
    return DoubleRowOperators(calA=u[0][0], calB=u[1][0], calC=u[0][1], calD=u[1][1])


def partition_oracle(params: ModelParams) -> float:
    """Z as <all down| calB(lam_N) ... calB(lam_1) |all up>.

    Each calB is applied as a matrix-vector product; the operator product
    itself is never formed.  The chain runs in extended working precision
    because the intermediate states can exceed the final element by many
    orders of magnitude.
    """
    _check_cap(params.n)
    v = np.zeros(1 << params.n, dtype=_WORK)
    v[0] = 1.0
    for lam in params.lambdas:
        v = _apply_creation(params, lam, v)
    return float(v[-1])


def boundary_insertion(params: ModelParams, m: int) -> np.ndarray:
    """The projected double-row operator calE_m at the last row pair.

    Restricts the top double row (rapidity lam_N) to configurations whose
    reflecting-side turn carries the spin that was still up at column m:
    a site projector onto up is inserted at column m between T^t and K_+,
    and an auxiliary projector onto up between the dressed columns m and
    m-1.
    """
    _check_cap(params.n)
    if not 1 <= m <= params.n:
        raise ValueError(f"column index m = {m} outside 1..{params.n}")
    lam = params.lambdas[-1]
    t = _row_blocks(params, lam)
    tt = [[t[0][0], t[1][0]], [t[0][1], t[1][1]]]
    psite = _embed_site(_P_UP, m, params.n)
    k = k_plus(lam, params.eta, params.zeta_plus)
    tpk = [[tt[i][j] @ psite * k[j, j] for j in range(2)] for i in range(2)]
    hi = _dressed_blocks(params, lam, columns=range(m, params.n + 1))
    lo = _dressed_blocks(params, lam, columns=range(1, m))
    # auxiliary up-projector between the two dressed groups kills column 1
    hi_p = [[hi[0][0], np.zeros_like(hi[0][0])], [hi[1][0], np.zeros_like(hi[1][0])]]
    v = aux_block_matmul(aux_block_matmul(tpk, hi_p), lo)
    return v[1][0]


def f_oracle(params: ModelParams, m: int) -> float:
    """Unnormalised boundary one-point weight f(m) from the lattice side.

    Same insertion as `boundary_insertion`, evaluated as a chain of row
    actions on the state (working precision) instead of a dense operator.
    """
    _check_cap(params.n)
    n = params.n
    if not 1 <= m <= n:
        raise ValueError(f"column index m = {m} outside 1..{n}")
    v = np.zeros(1 << n, dtype=_WORK)
    v[0] = 1.0
    for lam in params.lambdas[:-1]:
        v = _apply_creation(params, lam, v)
    lam = params.lambdas[-1]
    dressed = _site_ops(params, -lam, conjugate=True)
    u = np.zeros((2, 1 << n), dtype=_WORK)
    u[0] = v
    u = _apply_row(dressed, u, columns=range(1, m))
    u[1] = 0.0                      # auxiliary up-projector at the seam
    u = _apply_row(dressed, u, columns=range(m, n + 1))
    eta, zeta = _WORK(params.eta), _WORK(params.zeta_plus)
    u[0] *= np.sinh(_WORK(lam) + eta / 2 + zeta)
    u[1] *= np.sinh(-_WORK(lam) - eta / 2 + zeta)
    blk = u.reshape(2, 1 << (n - m), 2, 1 << (m - 1))
    blk[:, :, 1, :] = 0.0           # site projector onto up at column m
    u = _apply_row(_site_ops(params, lam, transpose=True), u, reverse=True)
    return float(u[1][-1])


def _embed_site(op2: np.ndarray, k: int, n: int) -> np.ndarray:
    return np.kron(np.eye(2 ** (n - k)), np.kron(op2, np.eye(2 ** (k - 1))))


def _sweep_odd(odd, sa: int, t: int, n: int) -> dict:
    """Walk an odd row right to left; returns aux spin at the reflecting end.

    The right auxiliary edge enters up; carry maps the aux spin after
    column j to the summed weight of all partial configurations, dropping
    paths as soon as a vertex weight vanishes.
    """
    carry = {0: 1.0}
    for j in range(1, n + 1):
        s_in = sa >> (j - 1) & 1
        t_out = t >> (j - 1) & 1
        nxt: dict = {}
        for y_in, w in carry.items():
            for y_out in (0, 1):
                el = odd[j - 1][2 * y_out + t_out, 2 * y_in + s_in]
                if el != 0.0:
                    nxt[y_out] = nxt.get(y_out, 0.0) + w * el
        carry = nxt
        if not carry:
            break
    return carry


def _sweep_even(even, t: int, y_n: int, n: int) -> dict:
    """Walk an even row back left to right; returns weights per top edge state.

    The auxiliary spin enters at the reflecting end as y_n and must leave
    the right edge down.
    """
    carry = {(y_n, 0): 1.0}
    for j in range(n, 0, -1):
        t_in = t >> (j - 1) & 1
        nxt: dict = {}
        for (x_in, sb), w in carry.items():
            for x_out in (0, 1):
                for s_out in (0, 1):
                    el = even[j - 1][2 * x_out + s_out, 2 * x_in + t_in]
                    if el != 0.0:
                        key = (x_out, sb | s_out << (j - 1))
                        nxt[key] = nxt.get(key, 0.0) + w * el
        carry = nxt
        if not carry:
            break
    out: dict = {}
    for (x0, sb), w in carry.items():
        if x0 == 1:
            out[sb] = out.get(sb, 0.0) + w
    return out


def _double_row_matrix(params: ModelParams, lam: float) -> np.ndarray:
    """Explicitly enumerated double-row transfer matrix W[above, below]."""
    n, eta = params.n, params.eta
    dim = 2 ** n
    odd = [aux_conjugate_sigma2(_vertex_ext(-lam, nu, eta)) for nu in params.nus]
    even = [aux_transpose(_vertex_ext(lam, nu, eta)) for nu in params.nus]
    zeta = _WORK(params.zeta_plus)
    k = (np.sinh(_WORK(lam) + _WORK(eta) / 2 + zeta),
         np.sinh(-_WORK(lam) - _WORK(eta) / 2 + zeta))
    w = np.zeros((dim, dim), dtype=_WORK)
    for sa in range(dim):
        for t in range(dim):
            for y_n, w_odd in _sweep_odd(odd, sa, t, n).items():
                w_turn = w_odd * k[y_n]
                for sb, w_even in _sweep_even(even, t, y_n, n).items():
                    w[sb, sa] += w_turn * w_even
    return w


def enumerate_z(params: ModelParams) -> float:
    """Z by direct configuration enumeration (independent of the oracle).

    Vertical-edge states are enumerated row boundary by row boundary and
    per-vertex conservation prunes the walk.  Exponential cost; capped at
    n <= ENUM_MAX_SITES.
    """
    if params.n > ENUM_MAX_SITES:
        raise SizeCapError(
            f"enumeration supports n <= {ENUM_MAX_SITES}, got n = {params.n}")
    v = np.zeros(1 << params.n, dtype=_WORK)
    v[0] = 1.0
    for lam in params.lambdas:
        v = _double_row_matrix(params, lam) @ v
    return float(v[-1])
