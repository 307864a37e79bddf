import math

import numpy as np
import pytest

from sixvertex_reflect.column_algebra import (
    column_monodromy,
    column_transfer,
    exchange_residual,
    wavefunction_via_columns,
)
from sixvertex_reflect.errors import SizeCapError
from sixvertex_reflect.params import random_generic
from sixvertex_reflect.spinops import w_plus
from sixvertex_reflect.wavefunction import psi_oracle


def test_block_shapes():
    t = column_transfer((0.2, -0.4, 0.6), 0.1, 0.7)
    for blk in (t.Abar, t.Bbar, t.Cbar, t.Dbar):
        assert blk.shape == (8, 8)


def test_vacuum_eigenvalues():
    rows = (0.25, -0.45, 0.7)
    nu, eta = 0.1, 0.8
    t = column_transfer(rows, nu, eta)
    v = w_plus(len(rows))
    av = t.Abar @ v
    dv = t.Dbar @ v
    assert av[0] == pytest.approx(1.0, rel=1e-14)
    assert np.max(np.abs(av[1:])) == 0.0
    eig = math.prod(math.sinh(lam - nu - eta / 2) / math.sinh(lam - nu + eta / 2)
                    for lam in rows)
    assert dv[0] == pytest.approx(eig, rel=1e-13)
    assert np.max(np.abs(dv[1:])) == 0.0


def test_row_cap():
    with pytest.raises(SizeCapError):
        column_transfer(tuple(0.03 * k + 0.2 for k in range(11)), 0.1, 0.7)


def test_column_index_bounds():
    p = random_generic(3, seed=2)
    with pytest.raises(ValueError):
        column_monodromy(p, 0)
    with pytest.raises(ValueError):
        column_monodromy(p, 4)


@pytest.mark.parametrize("mu,nu", [(0.15, -0.4), (-0.3, 0.55), (0.05, 0.62)])
@pytest.mark.parametrize("seed", [0, 7])
def test_exchange_relation(mu, nu, seed):
    p = random_generic(3, seed=seed)
    assert exchange_residual(p, mu, nu) < 1e-12


@pytest.mark.parametrize("n", [2, 3, 4])
def test_column_and_row_pictures_agree(n):
    p = random_generic(n, seed=31)
    for m in range(1, n + 1):
        cw = wavefunction_via_columns(p, m)
        assert cw.form_gap < 1e-12
        positions = tuple(x for x in range(1, n + 1) if x != m)
        po = psi_oracle(p, p.lambdas[:-1], positions)
        assert cw.value == pytest.approx(po, rel=1e-11)
