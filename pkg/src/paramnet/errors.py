"""Exception hierarchy shared by the library and the command line."""

from __future__ import annotations


class ParamnetError(Exception):
    """Base class for all errors raised by paramnet."""


class ValidationError(ParamnetError, ValueError):
    """A parameter, port name or configuration value is invalid.

    ``key`` names the offending parameter when there is one.
    """

    def __init__(self, message: str, key: str | None = None):
        self.key = key
        super().__init__(f"{key}: {message}" if key else message)


class NumericalError(ParamnetError, ArithmeticError):
    """A computation could not be carried out (singular system, no root)."""


class SingularNetworkError(NumericalError):
    """The internal wave system of a network is singular or ill-conditioned.

    ``ports`` lists the internal ports participating in the offending loop.
    """

    def __init__(self, message: str, ports: tuple[str, ...] = ()):
        self.ports = tuple(ports)
        super().__init__(message)


class InfeasibleError(NumericalError):
    """A root-finding target cannot be reached in the allowed interval."""
