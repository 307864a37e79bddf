import math

import numpy as np
import pytest

from sixvertex_reflect.errors import SizeCapError
from sixvertex_reflect.params import random_generic
from sixvertex_reflect.wavefunction import (
    MAX_PARTICLES,
    pairwise_sum,
    psi_coordinate,
    psi_oracle,
)


@pytest.mark.parametrize("size", [1, 2, 17, 100])
def test_pairwise_sum_matches_fsum(size):
    rng = np.random.default_rng(size)
    vals = list(rng.standard_normal(size) * 10.0 ** rng.integers(-3, 4, size))
    want = math.fsum(vals)
    assert pairwise_sum(vals) == pytest.approx(want, rel=1e-14, abs=1e-14)


def test_pairwise_sum_edge_cases():
    assert pairwise_sum([]) == 0.0
    assert pairwise_sum([2.5]) == 2.5
    out = pairwise_sum([np.longdouble(1) / 3] * 4)
    assert isinstance(out, np.longdouble)


def test_single_particle_amplitude_closed_form():
    p = random_generic(4, seed=5)
    lam = p.lambdas[0]

    def b(u):
        return math.sinh(u) / math.sinh(u + p.eta)

    def c(u):
        return math.sinh(p.eta) / math.sinh(u + p.eta)

    for x in range(1, p.n + 1):
        # b-weights left of the particle, c-weight at it, free to the right
        want = c(lam - p.nus[x - 1] - p.eta / 2)
        for j in range(1, x):
            want *= b(lam - p.nus[j - 1] - p.eta / 2)
        assert psi_coordinate(p, [lam], [x]) == pytest.approx(want, rel=1e-13)
        assert psi_oracle(p, [lam], [x]) == pytest.approx(want, rel=1e-13)


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("seed", [0, 6])
def test_coordinate_sum_matches_operator_chain(n, seed):
    import itertools
    p = random_generic(n, seed=seed)
    for m in range(1, n + 1):
        spectral = p.lambdas[:m]
        for pos in itertools.combinations(range(1, n + 1), m):
            a = psi_coordinate(p, spectral, pos)
            b = psi_oracle(p, spectral, pos)
            assert a == pytest.approx(b, rel=1e-12, abs=1e-15)


def test_symmetric_under_spectral_exchange():
    p = random_generic(4, seed=2)
    spectral = p.lambdas[:3]
    swapped = (spectral[2], spectral[1], spectral[0])
    pos = (1, 2, 4)
    assert psi_coordinate(p, spectral, pos) == pytest.approx(
        psi_coordinate(p, swapped, pos), rel=1e-13)


def test_position_validation():
    p = random_generic(3, seed=0)
    with pytest.raises(ValueError):
        psi_coordinate(p, p.lambdas[:2], (2, 2))
    with pytest.raises(ValueError):
        psi_coordinate(p, p.lambdas[:2], (3, 1))
    with pytest.raises(ValueError):
        psi_coordinate(p, p.lambdas[:2], (1, 4))
    with pytest.raises(ValueError):
        psi_coordinate(p, p.lambdas[:2], (1,))


def test_particle_cap():
    n = MAX_PARTICLES + 1
    p = random_generic(n, seed=1)
    with pytest.raises(SizeCapError):
        psi_coordinate(p, p.lambdas, tuple(range(1, n + 1)))
