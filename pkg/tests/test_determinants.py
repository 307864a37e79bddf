"""Determinant evaluators: LU core, partition formulas, overlap kernels."""
import math

import numpy as np
import pytest

from sixvertex_reflect.determinants import (
    MAX_DET_SIZE,
    _batched_det_signlog,
    chi_matrix,
    det_lu,
    h_matrix,
    izergin_z,
    phi_kernel,
    tsuchiya_z,
    wavefunction_det,
)
from sixvertex_reflect.errors import SingularParameterError, SizeCapError
from sixvertex_reflect.lattice_oracle import enumerate_z
from sixvertex_reflect.params import ModelParams, random_generic
from sixvertex_reflect.wavefunction import psi_coordinate


@pytest.mark.parametrize("n", [1, 2, 4, 8])
@pytest.mark.parametrize("seed", [0, 1, 2])
def test_det_lu_matches_slogdet(n, seed):
    rng = np.random.default_rng(100 * n + seed)
    a = rng.standard_normal((n, n))
    res = det_lu(a)
    sign, logabs = np.linalg.slogdet(a)
    assert np.sign(res.value) == sign
    got = math.log(abs(res.value)) + res.log_scale
    assert got == pytest.approx(logabs, abs=1e-10)
    assert res.pivot_min > 0.0


def test_det_lu_simple_values():
    res = det_lu(np.eye(3))
    assert res.value == 1.0
    assert res.pivot_min == 1.0
    assert det_lu(np.diag([2.0, 3.0, 5.0])).value * np.exp(
        det_lu(np.diag([2.0, 3.0, 5.0])).log_scale) == pytest.approx(30.0)


def _cofactor_det(a: np.ndarray) -> float:
    n = a.shape[0]
    if n == 1:
        return float(a[0, 0])
    total = 0.0
    for j in range(n):
        minor = np.delete(np.delete(a, 0, axis=0), j, axis=1)
        total += (-1.0) ** j * a[0, j] * _cofactor_det(minor)
    return total


def test_det_lu_against_cofactor_expansion():
    rng = np.random.default_rng(42)
    a = rng.standard_normal((5, 5))
    res = det_lu(a)
    assert res.value * np.exp(res.log_scale) == pytest.approx(
        _cofactor_det(a), rel=1e-11)


def test_det_lu_singular_matrix():
    a = np.array([[1.0, 2.0], [2.0, 4.0]])
    assert det_lu(a).value == 0.0
    assert det_lu(np.zeros((3, 3))).value == 0.0


def test_det_lu_keeps_extended_precision():
    a = np.eye(3, dtype=np.longdouble) * np.longdouble(2.0)
    res = det_lu(a)
    assert isinstance(res.value, np.longdouble)
    assert float(res.value * np.exp(res.log_scale)) == pytest.approx(8.0)


def test_det_lu_large_scale_folding():
    # entries big enough that the raw determinant overflows a double
    a = np.diag(np.full(12, 1e300))
    res = det_lu(a)
    assert math.isfinite(res.value)
    total_log = math.log(abs(res.value)) + res.log_scale
    assert total_log == pytest.approx(12 * math.log(1e300), rel=1e-12)


@pytest.mark.parametrize("seed", [0, 3])
def test_batched_det_agrees_with_scalar(seed):
    rng = np.random.default_rng(seed)
    stack = rng.standard_normal((7, 5, 5))
    stack[3, 2] = stack[3, 4]          # one singular member
    signs, logs = _batched_det_signlog(stack)
    for i in range(stack.shape[0]):
        res = det_lu(stack[i])
        if i == 3:
            assert signs[i] == 0.0
            continue
        assert signs[i] == np.sign(res.value)
        want = math.log(abs(res.value)) + res.log_scale
        assert float(logs[i]) == pytest.approx(want, abs=1e-10)


def test_phi_kernel_value_and_pole():
    want = math.sinh(0.7) / (math.sinh(0.9) * math.sinh(0.2))
    assert phi_kernel(0.5, -0.05, 0.7) == pytest.approx(want, rel=1e-13)
    with pytest.raises(SingularParameterError):
        phi_kernel(0.35, 0.0, 0.7)


def test_izergin_single_site():
    want = math.sinh(0.7) / math.sinh(0.85)
    assert izergin_z((0.3,), (-0.2,), 0.7) == pytest.approx(want, rel=1e-13)


def test_izergin_symmetric_in_both_families():
    p = random_generic(4, seed=13)
    z0 = izergin_z(p.lambdas, p.nus, p.eta)
    shuffled = (p.lambdas[2], p.lambdas[0], p.lambdas[3], p.lambdas[1])
    assert izergin_z(shuffled, p.nus, p.eta) == pytest.approx(z0, rel=1e-11)
    shuffled = (p.nus[1], p.nus[3], p.nus[0], p.nus[2])
    assert izergin_z(p.lambdas, shuffled, p.eta) == pytest.approx(z0, rel=1e-11)


def test_tsuchiya_symmetric_and_matches_enumeration():
    p = random_generic(3, seed=8)
    z0 = tsuchiya_z(p)
    assert z0 == pytest.approx(enumerate_z(p), rel=1e-12)
    q = ModelParams(3, p.eta, p.zeta_plus,
                    (p.lambdas[1], p.lambdas[2], p.lambdas[0]),
                    (p.nus[2], p.nus[0], p.nus[1]))
    assert tsuchiya_z(q) == pytest.approx(z0, rel=1e-11)


def test_chi_matrix_single_site_consistency():
    p = random_generic(1, seed=4)
    chi = chi_matrix(p)
    assert chi.shape == (1, 1)
    # n=1 partition function reduces to prefactor * chi
    assert tsuchiya_z(p) == pytest.approx(enumerate_z(p), rel=1e-13)


def test_tsuchiya_single_site_closed_form():
    p = random_generic(1, seed=4)
    lam, nu, eta, zeta = p.lambdas[0], p.nus[0], p.eta, p.zeta_plus
    want = (-math.sinh(eta) * math.sinh(2 * lam + eta) * math.sinh(nu + zeta)
            / (math.sinh(nu - eta / 2) ** 2 - math.sinh(lam) ** 2))
    assert tsuchiya_z(p) == pytest.approx(want, rel=1e-13)


def test_h_matrix_reduced_columns_vanish():
    p = random_generic(4, seed=19)
    for m in range(1, 5):
        h = h_matrix(p.lambdas[:-1], p.nus, p.eta, m)
        assert h.shape == (4, 4)
        assert np.all(h[0, m:] == 0.0)
        if m > 1:
            assert np.all(h[0, :m] != 0.0)
    # rows below the first are the plain phi kernel
    want = phi_kernel(p.lambdas[1], p.nus[2], p.eta)
    assert h[2, 2] == pytest.approx(want, rel=1e-13)


@pytest.mark.parametrize("n,m", [(2, 1), (3, 2), (4, 4)])
def test_wavefunction_det_matches_coordinate_sum(n, m):
    p = random_generic(n, seed=50 + n)
    positions = tuple(x for x in range(1, n + 1) if x != m)
    want = psi_coordinate(p, p.lambdas[:-1], positions)
    assert wavefunction_det(p, m) == pytest.approx(want, rel=1e-11)


def test_wavefunction_det_sign_dressing():
    p = random_generic(3, seed=33)
    sigma = (1, -1)
    dressed = ModelParams(3, p.eta, p.zeta_plus,
                          (p.lambdas[0], -p.lambdas[1], p.lambdas[2]), p.nus)
    assert wavefunction_det(p, 2, sigma=sigma) == pytest.approx(
        wavefunction_det(dressed, 2), rel=1e-12)
    with pytest.raises(ValueError):
        wavefunction_det(p, 2, sigma=(1, 0))
    with pytest.raises(ValueError):
        wavefunction_det(p, 2, sigma=(1, 1, 1))


def test_determinant_size_cap():
    n = MAX_DET_SIZE + 1
    p = ModelParams(n, 0.7, 0.3,
                    tuple(0.031 * k + 0.17 for k in range(n)),
                    tuple(-0.027 * k - 0.11 for k in range(n)))
    with pytest.raises(SizeCapError):
        tsuchiya_z(p)
    with pytest.raises(SizeCapError):
        izergin_z(p.lambdas, p.nus, p.eta)
