"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input lies outside the domain of an operation (cut, pole, |z| >= 1)."""


class ParameterError(ValueError):
    """Parameters violate the admissible range of a theorem or operator."""


class PoleError(ArithmeticError):
    """A denominator vanished (or fell below threshold) at ``z``."""

    def __init__(self, message, z=None, modulus=None):
        super().__init__(message)
        self.z = z
        self.modulus = modulus


class QuadratureError(ArithmeticError):
    """Adaptive quadrature failed to reach its tolerance."""

    def __init__(self, message, residual):
        super().__init__(f"{message} (achieved residual {residual:.3e})")
        self.residual = residual
