"""Exception types shared across the package."""


class ParameterError(ValueError):
    """An argument is outside its admissible range."""


class DomainError(ValueError):
    """A point lies outside the domain on which a map or density is defined."""


class NumericError(ArithmeticError):
    """A non-finite value appeared where a finite one is required."""


class DivergenceError(ArithmeticError):
    """A weighted integral does not converge (its truncations grow without bound)."""


class BidegreeError(TypeError):
    """A differential of the wrong bidegree was passed."""
