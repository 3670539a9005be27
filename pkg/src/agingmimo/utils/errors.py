"""Exceptions raised by agingmimo.

Configuration-type problems derive from ValueError, numerical breakdowns from
ArithmeticError. The command line front end maps the two families to distinct
exit codes.

"""


class DomainError(ValueError):
    """Scalar input outside its admissible domain."""


class ConfigError(ValueError):
    """Inconsistent or invalid run configuration."""


class InfeasibleDensity(ConfigError):
    """Minimum headway exceeds the mean headway of the requested density."""


class NumericalFailure(ArithmeticError):
    """Base class for failures of numerical routines."""


class NotPSD(NumericalFailure):
    """Matrix has an eigenvalue below the clipping tolerance."""


class SolveFailure(NumericalFailure):
    """Factorization of a matrix expected to be positive definite failed."""


class RankDeficient(NumericalFailure):
    """Design matrix of a regression is rank deficient."""


class InsufficientData(RankDeficient):
    """Too few samples, or too few distinct feature values, for a regression."""


class ZeroVector(ValueError):
    """Combining vector with vanishing norm."""


class EmptyCurve(ValueError):
    """Too few grid points to locate a maximum."""


class CoincidentPositions(ValueError):
    """Two points share the same horizontal position."""


class SchemaError(ValueError):
    """Output file does not follow its declared schema."""
