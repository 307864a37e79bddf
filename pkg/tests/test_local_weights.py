import math

import numpy as np
import pytest

from sixvertex_reflect.errors import SingularWeightError
from sixvertex_reflect.local_weights import (
    aux_conjugate_sigma2,
    aux_transpose,
    k_plus,
    l_matrix,
    r_matrix,
    reflection_residual,
    weights,
    ybe_residual,
)
from sixvertex_reflect.spinops import site_blocks


def test_weights_known_values():
    a, b, c = weights(0.45, 0.7)
    assert a == 1.0
    assert b == pytest.approx(0.3275261821033838, rel=1e-15)
    assert c == pytest.approx(0.5339213194335023, rel=1e-15)
    # b/c ratio straight from the definition
    assert b / c == pytest.approx(math.sinh(0.45) / math.sinh(0.7), rel=1e-14)


def test_weights_singular_argument_raises():
    with pytest.raises(SingularWeightError):
        weights(-0.7, 0.7)


def test_r_matrix_layout():
    a, b, c = weights(0.45, 0.7)
    r = r_matrix(0.45, 0.7)
    expected = np.array([[a, 0, 0, 0],
                         [0, b, c, 0],
                         [0, c, b, 0],
                         [0, 0, 0, a]])
    assert np.array_equal(r, expected)


def test_l_matrix_is_shifted_r():
    # L(lam, nu) = R(lam - nu - eta/2)
    np.testing.assert_allclose(l_matrix(0.9, 0.1, 0.7), r_matrix(0.45, 0.7),
                               rtol=1e-14, atol=0.0)


def test_k_plus_diagonal():
    k = k_plus(0.4, 0.6, 0.8)
    assert k.shape == (2, 2)
    assert k[0, 1] == 0.0 and k[1, 0] == 0.0
    assert k[0, 0] == pytest.approx(2.1292794550948173, rel=1e-15)   # sinh(1.5)
    assert k[1, 1] == pytest.approx(0.10016675001984403, rel=1e-15)  # sinh(0.1)


@pytest.mark.parametrize("lam,mu,eta", [
    (0.31, -0.47, 0.85),
    (0.12, 0.55, 0.6),
    (-0.2, 0.9, 1.1),
    (0.77, -0.05, 0.45),
])
def test_ybe_residual_small(lam, mu, eta):
    assert ybe_residual(lam, mu, eta) < 1e-13


@pytest.mark.parametrize("lam1,lam2,eta,zeta", [
    (0.6, 0.25, 0.8, -0.4),
    (-0.35, 0.5, 0.9, 0.15),
    (0.45, -0.6, 0.7, 0.55),
])
def test_reflection_residual_small(lam1, lam2, eta, zeta):
    assert reflection_residual(lam1, lam2, eta, zeta) < 1e-13


def test_aux_transpose_swaps_off_diagonal_blocks():
    m = np.arange(16, dtype=float).reshape(4, 4)
    t = aux_transpose(m)
    blocks = site_blocks(m)
    tblocks = site_blocks(t)
    for i in range(2):
        for j in range(2):
            assert np.array_equal(tblocks[i][j], blocks[j][i])
    assert np.array_equal(aux_transpose(t), m)


def test_aux_conjugate_sigma2_block_map():
    m = np.arange(16, dtype=float).reshape(4, 4)
    c = aux_conjugate_sigma2(m)
    b = site_blocks(m)
    cb = site_blocks(c)
    assert np.array_equal(cb[0][0], b[1][1])
    assert np.array_equal(cb[0][1], -b[1][0])
    assert np.array_equal(cb[1][0], -b[0][1])
    assert np.array_equal(cb[1][1], b[0][0])
    # applying it twice gets back the original
    assert np.array_equal(aux_conjugate_sigma2(c), m)


def test_aux_maps_preserve_dtype():
    m = np.ones((4, 4), dtype=np.longdouble)
    assert aux_transpose(m).dtype == np.longdouble
    assert aux_conjugate_sigma2(m).dtype == np.longdouble
