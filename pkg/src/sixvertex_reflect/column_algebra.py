"""Column-to-column transfer picture for reduced overlaps.

Reading the lattice sideways, each column at spectral parameter nu acts
on the tensor product of the row lines as a 2x2 monodromy in the
column's vertical space,

    Tbar(nu) = L_m ... L_1 = [[Abar, Bbar],
                              [Cbar, Dbar]],

with row rapidities lam_1..lam_m.  The overlap of the down-spin state
with all columns except column m flipped is then a sandwich of column
operators, evaluated here in two equivalent orderings as a consistency
check.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SizeCapError
from .lattice_oracle import MAX_SITES
from .local_weights import l_matrix, weights
from .params import ModelParams
from .spinops import fold_site_blocks, site_blocks, w_minus, w_plus


@dataclass(frozen=True)
class ColumnOperators:
    """Vertical-space blocks [[Abar, Bbar], [Cbar, Dbar]] of one column."""

    Abar: np.ndarray
    Bbar: np.ndarray
    Cbar: np.ndarray
    Dbar: np.ndarray


@dataclass(frozen=True)
class ColumnWavefunction:
    """Reduced overlap evaluated in both column orderings.

    value is the Bbar..Dbar..Bbar form; form_gap is the relative
    discrepancy against the Cbar..Abar..Cbar form.
    """

    value: float
    form_gap: float


def column_transfer(row_spectral, nu: float, eta: float) -> ColumnOperators:
    """Column monodromy over an arbitrary list of row rapidities."""
    m = len(row_spectral)
    if m > MAX_SITES:
        raise SizeCapError(f"dense operators support <= {MAX_SITES} rows, got {m}")
    per_row = [site_blocks(l_matrix(lam, nu, eta)) for lam in row_spectral]
    t = fold_site_blocks(per_row, m)
    return ColumnOperators(Abar=t[0][0], Bbar=t[0][1], Cbar=t[1][0], Dbar=t[1][1])


def column_monodromy(params: ModelParams, j: int) -> ColumnOperators:
    """Column j over the first n-1 row rapidities (the top pair is frozen)."""
    if not 1 <= j <= params.n:
        raise ValueError(f"column index j = {j} outside 1..{params.n}")
    return column_transfer(params.lambdas[:-1], params.nus[j - 1], params.eta)


def exchange_residual(params: ModelParams, mu: float, nu: float) -> float:
    """Relative residual of the Bbar-Dbar exchange relation.

    c(nu - mu) Bbar(mu) Dbar(nu) + b(nu - mu) Dbar(mu) Bbar(nu)
        = Bbar(nu) Dbar(mu)
    over the full row set of params.
    """
    rows = params.lambdas
    tm = column_transfer(rows, mu, params.eta)
    tn = column_transfer(rows, nu, params.eta)
    _, b, c = weights(nu - mu, params.eta)
    lhs = c * (tm.Bbar @ tn.Dbar) + b * (tm.Dbar @ tn.Bbar)
    rhs = tn.Bbar @ tm.Dbar
    scale = np.max(np.abs(rhs))
    if scale == 0.0:
        return float(np.max(np.abs(lhs)))
    return float(np.max(np.abs(lhs - rhs)) / scale)


def wavefunction_via_columns(params: ModelParams, m: int) -> ColumnWavefunction:
    """Overlap with down spins everywhere but column m, via column operators.

    Applies one operator per column, nu_1 first:
      value    = <down..down| Bbar(nu_n)..Dbar(nu_m)..Bbar(nu_1) |up..up>
      cross    = <up..up| Cbar(nu_n)..Abar(nu_m)..Cbar(nu_1) |down..down>
    """
    if not 1 <= m <= params.n:
        raise ValueError(f"column index m = {m} outside 1..{params.n}")
    rows = params.lambdas[:-1]
    nrow = len(rows)
    v_bd = w_plus(nrow)
    v_ca = w_minus(nrow)
    for j in range(1, params.n + 1):
        t = column_transfer(rows, params.nus[j - 1], params.eta)
        v_bd = (t.Dbar if j == m else t.Bbar) @ v_bd
        v_ca = (t.Abar if j == m else t.Cbar) @ v_ca
    value = float(v_bd @ w_minus(nrow))
    cross = float(v_ca @ w_plus(nrow))
    den = max(abs(value), abs(cross))
    gap = 0.0 if den == 0.0 else abs(value - cross) / den
    return ColumnWavefunction(value=value, form_gap=gap)
