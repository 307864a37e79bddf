"""Error taxonomy shared across the package."""


class SingularWeightError(ValueError):
    """Local weight denominator sinh(u + eta) is numerically zero."""


class SingularParameterError(ValueError):
    """Parameter set fails the genericity catalog."""


class SamplingExhaustedError(RuntimeError):
    """random_generic gave up after the attempt budget."""


class SizeCapError(ValueError):
    """Requested size exceeds the hard cap of the chosen evaluation route."""
