"""Coordinate-sum route to the overlaps created by row B operators.

The state built by m one-row creation operators B(lam_1)..B(lam_m) on
the all-up reference has amplitudes given by a permanent-like sum over
permutations; psi_coordinate evaluates that sum directly, psi_oracle
reads the same amplitude off the one-row operator actions.
"""
from __future__ import annotations

import itertools

import numpy as np

from .errors import SingularParameterError, SingularWeightError, SizeCapError
from .lattice_oracle import MAX_SITES, _apply_row, _site_ops
from .local_weights import EPS_SINGULAR
from .params import ModelParams
from .spinops import basis_index

MAX_PARTICLES = 8

_WORK = np.longdouble


def pairwise_sum(values):
    """Deterministic pairwise tree reduction; stabler than a running sum."""
    vals = list(values)
    if not vals:
        return 0.0
    while len(vals) > 1:
        nxt = [vals[i] + vals[i + 1] for i in range(0, len(vals) - 1, 2)]
        if len(vals) % 2:
            nxt.append(vals[-1])
        vals = nxt
    return vals[0]


def _validate(params: ModelParams, spectral, positions) -> None:
    if len(spectral) != len(positions):
        raise ValueError("need one position per spectral parameter")
    for i, x in enumerate(positions):
        if not 1 <= x <= params.n:
            raise ValueError(f"position {x} outside 1..{params.n}")
        if i and positions[i - 1] >= x:
            raise ValueError("positions must be strictly increasing")


def _bc_ext(u, eta):
    den = np.sinh(u + eta)
    if abs(float(den)) < EPS_SINGULAR:
        raise SingularWeightError(
            f"sinh(u + eta) ~ 0 at u={float(u)!r}")
    return np.sinh(u) / den, np.sinh(eta) / den


def _psi_coordinate_ext(params: ModelParams, spectral, positions):
    m = len(spectral)
    if m == 0:
        return _WORK(1.0)
    eta = _WORK(params.eta)
    pos = tuple(positions)

    # phi[a, j]: weight of particle a sitting at the j-th requested column
    phi = np.empty((m, m), dtype=_WORK)
    for a, lam in enumerate(spectral):
        prefix = _WORK(1.0)
        j = 0
        for x in range(1, pos[-1] + 1):
            bw, cw = _bc_ext(_WORK(lam) - _WORK(params.nus[x - 1]) - eta / 2, eta)
            if j < m and x == pos[j]:
                phi[a, j] = cw * prefix
                j += 1
            prefix *= bw

    binv = np.empty((m, m), dtype=_WORK)
    for i in range(m):
        for j in range(m):
            if i == j:
                continue
            x = _WORK(spectral[j]) - _WORK(spectral[i])
            sx = np.sinh(x)
            if abs(float(sx)) < EPS_SINGULAR:
                raise SingularParameterError(
                    f"coincident spectral parameters {i + 1}, {j + 1}")
            binv[i, j] = np.sinh(x + eta) / sx

    terms = []
    for perm in itertools.permutations(range(m)):
        amp = _WORK(1.0)
        for a in range(m):
            pa = perm[a]
            for b in range(a + 1, m):
                amp *= binv[pa, perm[b]]
            amp *= phi[pa, a]
        terms.append(amp)
    return pairwise_sum(terms)


def psi_coordinate(params: ModelParams, spectral, positions) -> float:
    """Permutation-sum amplitude of down spins at `positions` (1-based, increasing)."""
    _validate(params, spectral, positions)
    if len(spectral) > MAX_PARTICLES:
        raise SizeCapError(
            f"coordinate sum supports <= {MAX_PARTICLES} particles, "
            f"got {len(spectral)}")
    return float(_psi_coordinate_ext(params, spectral, positions))


def psi_oracle(params: ModelParams, spectral, positions) -> float:
    """Same amplitude from the one-row operator actions on the reference."""
    _validate(params, spectral, positions)
    if params.n > MAX_SITES:
        raise SizeCapError(
            f"dense states support n <= {MAX_SITES}, got n = {params.n}")
    v = np.zeros(1 << params.n, dtype=_WORK)
    v[0] = 1.0
    for lam in reversed(list(spectral)):
        u = np.zeros((2, v.size), dtype=_WORK)
        u[1] = v
        v = _apply_row(_site_ops(params, lam), u)[0]
    return float(v[basis_index(positions, params.n)])
