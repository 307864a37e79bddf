"""Dense-operator structure and the row-application oracle."""
import math

import numpy as np
import pytest

from sixvertex_reflect.errors import SizeCapError
from sixvertex_reflect.lattice_oracle import (
    ENUM_MAX_SITES,
    MAX_SITES,
    boundary_insertion,
    double_row_monodromy,
    enumerate_z,
    f_oracle,
    one_row_monodromy,
    partition_oracle,
)
from sixvertex_reflect.lattice_oracle import _apply_creation
from sixvertex_reflect.params import ModelParams, random_generic
from sixvertex_reflect.spinops import w_minus, w_plus


def rel(a: float, b: float) -> float:
    den = max(abs(a), abs(b))
    return 0.0 if den == 0.0 else abs(a - b) / den


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("seed", [0, 1, 2])
def test_enumeration_matches_oracle(n, seed):
    p = random_generic(n, seed=seed)
    assert rel(enumerate_z(p), partition_oracle(p)) < 1e-12


def test_enumeration_cap():
    p = random_generic(ENUM_MAX_SITES + 1, seed=0)
    with pytest.raises(SizeCapError):
        enumerate_z(p)


def test_dense_operator_cap():
    n = MAX_SITES + 1
    p = ModelParams(n, 0.7, 0.3,
                    tuple(0.05 * k + 0.11 for k in range(n)),
                    tuple(-0.04 * k - 0.13 for k in range(n)))
    with pytest.raises(SizeCapError):
        partition_oracle(p)
    with pytest.raises(SizeCapError):
        f_oracle(p, 1)


def test_vacuum_eigenvalues_of_one_row_blocks():
    p = random_generic(4, seed=11)
    lam = 0.37
    t = one_row_monodromy(p, lam)
    vac = np.zeros(1 << p.n)
    vac[0] = 1.0
    av = t.A @ vac
    dv = t.D @ vac
    # A leaves the all-up state fixed (a-weight is 1), D scales it by
    # the product of b-weights over the columns
    assert av[0] == pytest.approx(1.0, rel=1e-14)
    assert np.max(np.abs(av[1:])) == 0.0
    beig = math.prod(
        math.sinh(lam - nu - p.eta / 2) / math.sinh(lam - nu + p.eta / 2)
        for nu in p.nus)
    assert dv[0] == pytest.approx(beig, rel=1e-13)
    assert np.max(np.abs(dv[1:])) == 0.0


@pytest.mark.parametrize("bits", [(0, 0, 0, 0), (1, 0, 0, 0), (1, 0, 1, 0),
                                  (0, 1, 1, 1)])
def test_double_row_creation_adds_one_down_spin(bits):
    p = random_generic(4, seed=3)
    idx = int("".join(map(str, bits)), 2)
    v = np.zeros(1 << p.n, dtype=np.longdouble)
    v[idx] = 1.0
    w = _apply_creation(p, p.lambdas[0], v)
    down = {bin(i).count("1") for i in range(w.size) if abs(w[i]) > 1e-24}
    assert down == {sum(bits) + 1}


def test_one_row_blocks_shift_spin_sectors_exactly():
    p = random_generic(3, seed=6)
    t = one_row_monodromy(p, 0.23)
    sector = [bin(i).count("1") for i in range(1 << p.n)]
    for op, shift in ((t.A, 0), (t.B, 1), (t.C, -1), (t.D, 0)):
        for i in range(1 << p.n):
            for j in range(1 << p.n):
                if sector[i] - sector[j] != shift:
                    assert op[i, j] == 0.0


def test_creation_operators_commute():
    p = random_generic(3, seed=16)
    b1 = double_row_monodromy(p, p.lambdas[0]).calB
    b2 = double_row_monodromy(p, p.lambdas[1]).calB
    comm = b1 @ b2 - b2 @ b1
    scale = np.max(np.abs(b1 @ b2))
    assert np.max(np.abs(comm)) < 1e-10 * scale


def test_partition_symmetric_in_each_family():
    p = random_generic(4, seed=23)
    z0 = partition_oracle(p)
    q = ModelParams(4, p.eta, p.zeta_plus,
                    (p.lambdas[3], p.lambdas[1], p.lambdas[0], p.lambdas[2]),
                    p.nus)
    assert abs(partition_oracle(q) - z0) < 1e-10 * abs(z0)
    q = ModelParams(4, p.eta, p.zeta_plus, p.lambdas,
                    (p.nus[1], p.nus[0], p.nus[3], p.nus[2]))
    assert abs(partition_oracle(q) - z0) < 1e-10 * abs(z0)


@pytest.mark.parametrize("seed", [0, 4, 9])
def test_creation_block_identity(seed):
    # calB(lam) = k1 B(lam) D(-lam) - k2 D(lam) B(-lam)
    p = random_generic(3, seed=seed)
    lam = p.lambdas[0]
    tp = one_row_monodromy(p, lam)
    tm = one_row_monodromy(p, -lam)
    k1 = math.sinh(lam + p.eta / 2 + p.zeta_plus)
    k2 = math.sinh(-lam - p.eta / 2 + p.zeta_plus)
    combo = k1 * tp.B @ tm.D - k2 * tp.D @ tm.B
    calb = double_row_monodromy(p, lam).calB
    scale = np.max(np.abs(calb))
    assert np.max(np.abs(calb - combo)) < 1e-12 * scale
    # and the matrix-free application agrees with the dense block
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(1 << p.n)
    w = _apply_creation(p, lam, v.astype(np.longdouble))
    assert np.max(np.abs(np.asarray(w, dtype=float) - calb @ v)) < 1e-12 * scale


@pytest.mark.parametrize("n", [2, 3])
def test_boundary_insertion_matches_f_oracle(n):
    p = random_generic(n, seed=21)
    v = w_plus(n)
    for lam in p.lambdas[:-1]:
        v = np.asarray(_apply_creation(p, lam, v.astype(np.longdouble)),
                       dtype=float)
    for m in range(1, n + 1):
        dense = float(w_minus(n) @ boundary_insertion(p, m) @ v)
        assert rel(dense, f_oracle(p, m)) < 1e-11


def test_f_oracle_rejects_bad_column():
    p = random_generic(3, seed=1)
    with pytest.raises(ValueError):
        f_oracle(p, 0)
    with pytest.raises(ValueError):
        f_oracle(p, 4)
