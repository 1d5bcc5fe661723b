"""
Custom exceptions for particle-field (PF) computations.

Provides a hierarchy of exceptions for the different error categories
(configuration, domain, relativistic regime, numerical failure), so the
CLI can map each category onto a stable exit code.
"""

from typing import Optional, Any


class PFTheoryError(Exception):
    """
    Base exception for all PF computation errors.

    All custom exceptions inherit from this, making it easy to catch
    any PF related error.
    """

    exit_code: int = 2

    def __init__(
        self,
        message: str,
        details: Optional[dict] = None,
    ):
        super().__init__(message)
        self.message = message
        self.details = details or {}

    def __str__(self) -> str:
        if self.details:
            return f"{self.message} | Details: {self.details}"
        return self.message


# =============================================================================
# Configuration / Argument Errors
# =============================================================================


class ConfigurationError(PFTheoryError):
    """
    Error in run configuration (flags, config file, environment).
    """

    exit_code = 1

    def __init__(
        self,
        message: str,
        config_key: Optional[str] = None,
        details: Optional[dict] = None,
    ):
        super().__init__(message, details)
        self.config_key = config_key

    def __str__(self) -> str:
        base = super().__str__()
        if self.config_key:
            return f"{base} | Key: {self.config_key}"
        return base


class MissingConfigError(ConfigurationError):
    """
    Required configuration is missing.
    """

    def __init__(
        self,
        config_key: str,
        env_var: Optional[str] = None,
        details: Optional[dict] = None,
    ):
        message = f"Missing required configuration: {config_key}"
        if env_var:
            message += f" (set {env_var} environment variable)"
        super().__init__(message, config_key, details)
        self.env_var = env_var


class InvalidArgumentError(PFTheoryError):
    """
    An argument violates an operation's precondition (n = 0, a <= 0, ...).
    """

    exit_code = 1

    def __init__(
        self,
        message: str,
        argument: Optional[str] = None,
        value: Any = None,
        details: Optional[dict] = None,
    ):
        super().__init__(message, details)
        self.argument = argument
        self.value = value

    def __str__(self) -> str:
        parts = [self.message]
        if self.argument:
            parts.append(f"Argument: {self.argument}")
        if self.value is not None:
            parts.append(f"Value: {self.value!r}")
        return " | ".join(parts)


class UnsupportedOrderError(InvalidArgumentError):
    """
    Derivative order outside {0, 1, 2}.
    """

    def __init__(self, order: int, details: Optional[dict] = None):
        super().__init__(
            f"Derivative order {order} is not supported (0, 1 or 2)",
            argument="order",
            value=order,
            details=details,
        )


# =============================================================================
# Domain / Regime Errors
# =============================================================================


class RegimeError(PFTheoryError):
    """
    Inputs fall outside the regime where a relation is defined.

    Carries the offending quantity (e.g. the bracket under a square root)
    so callers can report it.
    """

    exit_code = 3

    def __init__(
        self,
        message: str,
        quantity: Optional[str] = None,
        value: Optional[float] = None,
        details: Optional[dict] = None,
    ):
        super().__init__(message, details)
        self.quantity = quantity
        self.value = value

    def __str__(self) -> str:
        parts = [self.message]
        if self.quantity:
            parts.append(f"Quantity: {self.quantity}")
        if self.value is not None:
            parts.append(f"Value: {self.value:.6g}")
        if self.details:
            parts.append(f"Details: {self.details}")
        return " | ".join(parts)


class FieldDomainError(RegimeError):
    """
    Evaluation point outside a field profile's (or potential's) domain.
    """

    def __init__(
        self,
        x: float,
        domain: tuple,
        details: Optional[dict] = None,
    ):
        message = f"x={x!r} is outside the domain [{domain[0]!r}, {domain[1]!r}]"
        super().__init__(message, quantity="x", value=float(x), details=details)
        self.x = x
        self.domain = domain


class SuperluminalError(RegimeError):
    """
    A speed reached or exceeded c.
    """

    def __init__(
        self,
        speed: float,
        c: float,
        quantity: str = "v",
        details: Optional[dict] = None,
    ):
        message = f"|{quantity}| = {abs(speed):.6g} is not below c = {c:.6g}"
        super().__init__(message, quantity=quantity, value=speed, details=details)
        self.c = c


class PhotonicNotApplicableError(RegimeError):
    """
    Operation needs a massive system but m0 = 0 was given.
    """

    def __init__(self, operation: str, details: Optional[dict] = None):
        super().__init__(
            f"'{operation}' is not applicable to a photonic (m0 = 0) system",
            quantity="m0",
            value=0.0,
            details=details,
        )
        self.operation = operation


# =============================================================================
# Numerical Errors
# =============================================================================


class NumericalFailureError(PFTheoryError):
    """
    A numerical procedure did not converge or produced non-finite values.
    """

    exit_code = 2

    def __init__(
        self,
        message: str,
        residual: Optional[float] = None,
        iterations: Optional[int] = None,
        details: Optional[dict] = None,
    ):
        super().__init__(message, details)
        self.residual = residual
        self.iterations = iterations

    def __str__(self) -> str:
        parts = [self.message]
        if self.residual is not None:
            parts.append(f"Residual: {self.residual:.3e}")
        if self.iterations is not None:
            parts.append(f"Iterations: {self.iterations}")
        if self.details:
            parts.append(f"Details: {self.details}")
        return " | ".join(parts)


class LevelNotFoundError(NumericalFailureError):
    """
    Energy bracket does not contain the requested level.
    """

    def __init__(
        self,
        level: int,
        bracket: tuple,
        details: Optional[dict] = None,
    ):
        message = f"Level n={level} not found in energy bracket [{bracket[0]:.6g}, {bracket[1]:.6g}]"
        super().__init__(message, details=details)
        self.level = level
        self.bracket = bracket


class UndefinedResidualError(NumericalFailureError):
    """
    Residual cannot be formed (e.g. an identically zero profile).
    """

    pass
