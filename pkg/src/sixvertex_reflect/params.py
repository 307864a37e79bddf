"""Model parameters, genericity screening and seeded sampling.

A parameter set is (n, eta, zeta_plus, lambdas, nus): lattice width n,
crossing parameter eta, boundary parameter zeta_plus, one spectral
parameter lambda_alpha per double row and one inhomogeneity nu_k per
column.  Every evaluation route in this package divides by sinh factors
built from these numbers; check_genericity screens the full denominator
catalog so that a passing set is safe for all routes at once.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import SamplingExhaustedError, SingularParameterError

EPS_GENERIC = 1e-3
ETA_RANGE = (0.3, 1.2)
SPECTRAL_RANGE = (-1.0, 1.0)
MAX_ATTEMPTS = 1000


@dataclass(frozen=True)
class ModelParams:
    n: int
    eta: float
    zeta_plus: float
    lambdas: tuple[float, ...]
    nus: tuple[float, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        object.__setattr__(self, "lambdas", tuple(float(x) for x in self.lambdas))
        object.__setattr__(self, "nus", tuple(float(x) for x in self.nus))
        if len(self.lambdas) != self.n or len(self.nus) != self.n:
            raise ValueError(
                f"need {self.n} lambdas and {self.n} nus, "
                f"got {len(self.lambdas)} and {len(self.nus)}")

    def to_dict(self) -> dict:
        return {"n": self.n, "eta": self.eta, "zeta_plus": self.zeta_plus,
                "lambdas": list(self.lambdas), "nus": list(self.nus)}

    @classmethod
    def from_dict(cls, d: dict) -> "ModelParams":
        return cls(n=int(d["n"]), eta=float(d["eta"]),
                   zeta_plus=float(d["zeta_plus"]),
                   lambdas=tuple(d["lambdas"]), nus=tuple(d["nus"]))

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, s: str) -> "ModelParams":
        return cls.from_dict(json.loads(s))


@dataclass(frozen=True)
class GenericityReport:
    passed: bool
    min_abs_denominator: float
    worst_family: str
    worst_args: tuple[float, ...]


def _catalog(params: ModelParams):
    """Yield (family, args, value) for every denominator the routes divide by.

    Families, in reporting order (later families win ties for worst):
    l-weight, double-lambda, lambda-pair, nu-Vandermonde,
    lambda-Vandermonde, nu-difference, prefactor.
    """
    sh = math.sinh
    n, eta = params.n, params.eta
    lams, nus = params.lambdas, params.nus
    for lam in lams:
        for nu in nus:
            for s in (1.0, -1.0):
                yield "l-weight", (s * lam, nu), sh(s * lam - nu + eta / 2)
    for lam in lams:
        yield "double-lambda", (lam,), sh(2 * lam)
    for a in range(n):
        for b in range(a + 1, n):
            for sa in (1.0, -1.0):
                for sb in (1.0, -1.0):
                    x, y = sa * lams[a], sb * lams[b]
                    yield "lambda-pair", (x, y), sh(x + y)
    for j in range(n):
        for k in range(j + 1, n):
            yield ("nu-Vandermonde", (nus[j], nus[k]),
                   sh(nus[j]) ** 2 - sh(nus[k]) ** 2)
    for j in range(n):
        for k in range(j + 1, n):
            yield ("lambda-Vandermonde", (lams[j], lams[k]),
                   sh(lams[j]) ** 2 - sh(lams[k]) ** 2)
    for j in range(n):
        for k in range(j + 1, n):
            yield "nu-difference", (nus[j], nus[k]), sh(nus[j] - nus[k])
    for nu in nus:
        for lam in lams:
            for s in (1.0, -1.0):
                yield ("prefactor", (nu, s * eta / 2, lam),
                       sh(nu + s * eta / 2) ** 2 - sh(lam) ** 2)


def check_genericity(params: ModelParams, eps: float = EPS_GENERIC) -> GenericityReport:
    worst = math.inf
    family, args = "", ()
    for fam, a, val in _catalog(params):
        if abs(val) <= worst:
            worst, family, args = abs(val), fam, a
    return GenericityReport(passed=worst >= eps, min_abs_denominator=worst,
                            worst_family=family, worst_args=tuple(args))


def require_generic(params: ModelParams, eps: float = EPS_GENERIC) -> None:
    report = check_genericity(params, eps)
    if not report.passed:
        raise SingularParameterError(
            f"parameters fail genericity: family={report.worst_family} "
            f"args={report.worst_args} |den|={report.min_abs_denominator:.3e} < {eps:g}")


def random_generic(n: int, seed: int, eps: float = EPS_GENERIC) -> ModelParams:
    """Draw a genericity-checked parameter set; deterministic in the seed."""
    rng = np.random.default_rng(seed)
    lo, hi = SPECTRAL_RANGE
    for _ in range(MAX_ATTEMPTS):
        eta = rng.uniform(*ETA_RANGE)
        zeta = rng.uniform(lo, hi)
        lams = tuple(rng.uniform(lo, hi) for _ in range(n))
        nus = tuple(rng.uniform(lo, hi) for _ in range(n))
        params = ModelParams(n=n, eta=eta, zeta_plus=zeta, lambdas=lams, nus=nus)
        if check_genericity(params, eps).passed:
            return params
    raise SamplingExhaustedError(
        f"no generic draw for n={n}, eps={eps:g} in {MAX_ATTEMPTS} attempts")
