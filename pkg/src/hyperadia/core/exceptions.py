"""Exception hierarchy for hyperadia."""

from typing import Any, Dict, List, Optional, Tuple


class HyperadiaError(Exception):
    """Base class for all errors raised by hyperadia."""

    def __init__(self, message: str, context: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.context: Dict[str, Any] = dict(context or {})

    def with_context(self, **context: Any) -> "HyperadiaError":
        """Attach extra context (channel, rho, ...) and return self for re-raising."""
        self.context.update(context)
        return self

    def __str__(self) -> str:
        if not self.context:
            return self.message
        details = ", ".join(f"{k}={v}" for k, v in sorted(self.context.items()))
        return f"{self.message} [{details}]"


class DomainError(HyperadiaError, ValueError):
    """Argument outside the domain an operation is defined on."""


class PoleProximityError(DomainError):
    """Gamma-function argument too close to a nonpositive integer."""


class ZeroCrossingError(HyperadiaError):
    """Hypergeometric solution vanishes at the matching point."""


class DivergenceError(HyperadiaError):
    """A series failed to converge within its term budget."""


class WrongClassError(HyperadiaError):
    """Channel belongs to the other asymptotic class (l1 == 0 vs |l1| >= 1)."""


class BracketError(HyperadiaError):
    """No admissible sign change of the matching function was found."""

    def __init__(
        self,
        message: str,
        trace: Optional[List[Tuple[float, float]]] = None,
        context: Optional[Dict[str, Any]] = None,
    ):
        super().__init__(message, context)
        self.trace = list(trace or [])


class NumericError(HyperadiaError):
    """Linear-algebra or integrator failure."""

    def __init__(
        self,
        message: str,
        dump_path: Optional[str] = None,
        context: Optional[Dict[str, Any]] = None,
    ):
        super().__init__(message, context)
        self.dump_path = dump_path


class ReferenceDataError(HyperadiaError):
    """Reference dataset missing or malformed."""


class ConfigError(HyperadiaError, ValueError):
    """Invalid run configuration."""
