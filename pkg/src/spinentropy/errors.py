"""Exception types raised across the package."""


class SpinEntropyError(Exception):
    """Base class for all package errors."""


class DomainError(SpinEntropyError, ValueError):
    """Argument outside the domain of a special function."""


class ProjectionError(SpinEntropyError, ValueError):
    """Spin projection out of range or with the wrong parity."""


class PermutationError(SpinEntropyError, ValueError):
    """Index list is not a bijection on 1..N."""


class ProbabilityError(SpinEntropyError, ValueError):
    """Vector is not a probability distribution (negative entry or bad sum)."""


class SubadditivityViolation(SpinEntropyError, ArithmeticError):
    """Mutual information came out below the rounding floor."""


class PathDisagreement(SpinEntropyError, ArithmeticError):
    """Two independent evaluation routes disagree beyond tolerance."""


class ConfigError(SpinEntropyError, ValueError):
    """Invalid sweep configuration."""
