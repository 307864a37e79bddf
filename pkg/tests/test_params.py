import pytest

from sixvertex_reflect.errors import SingularParameterError
from sixvertex_reflect.params import (
    EPS_GENERIC,
    ETA_RANGE,
    SPECTRAL_RANGE,
    ModelParams,
    check_genericity,
    random_generic,
    require_generic,
)


def test_roundtrip_dict_and_json():
    p = ModelParams(2, 0.7, 0.3, (0.4, -0.2), (0.1, -0.35))
    assert ModelParams.from_dict(p.to_dict()) == p
    assert ModelParams.from_json(p.to_json()) == p


def test_length_mismatch_rejected():
    with pytest.raises(ValueError):
        ModelParams(3, 0.7, 0.3, (0.4, -0.2), (0.1, -0.35, 0.2))
    with pytest.raises(ValueError):
        ModelParams(0, 0.7, 0.3, (), ())


def test_random_generic_is_deterministic():
    a = random_generic(4, seed=17)
    b = random_generic(4, seed=17)
    assert a == b
    assert random_generic(4, seed=18) != a


@pytest.mark.parametrize("n", [1, 3, 6])
def test_random_generic_ranges_and_report(n):
    p = random_generic(n, seed=5)
    assert ETA_RANGE[0] <= p.eta <= ETA_RANGE[1]
    lo, hi = SPECTRAL_RANGE
    assert all(lo <= x <= hi for x in p.lambdas + p.nus)
    assert lo <= p.zeta_plus <= hi
    rep = check_genericity(p)
    assert rep.passed
    assert rep.min_abs_denominator >= EPS_GENERIC


def test_random_generic_respects_custom_eps():
    p = random_generic(3, seed=9, eps=0.05)
    assert check_genericity(p, eps=0.05).passed


def test_degenerate_lambdas_flagged():
    p = ModelParams(2, 0.7, 0.3, (0.4, 0.4), (0.1, -0.3))
    rep = check_genericity(p)
    assert not rep.passed
    assert rep.min_abs_denominator == 0.0
    assert rep.worst_family == "lambda-Vandermonde"
    with pytest.raises(SingularParameterError):
        require_generic(p)


def test_require_generic_accepts_sampled_params():
    require_generic(random_generic(5, seed=0))
