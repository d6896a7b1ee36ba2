from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel


class ErrorDetail(BaseModel):
    """Model for detailed error information."""
    loc: List[str] = []
    msg: str
    type: str


class ErrorResponse(BaseModel):
    """Standard error report written to stderr by the command line."""
    detail: Union[str, List[ErrorDetail]]
    exit_code: int = 1
    context: Dict[str, Any] = {}


class HyperlatException(Exception):
    """Base exception for domain errors.

    Carries the process exit code the command line maps it to, a detail
    message and an optional context dictionary that ends up in the JSON
    error report.
    """
    def __init__(
        self,
        exit_code: int = 1,
        detail: str = "An unexpected error occurred",
        context: Optional[Dict[str, Any]] = None
    ):
        self.exit_code = exit_code
        self.detail = detail
        self.context = context or {}
        super().__init__(detail)

    def to_response(self) -> ErrorResponse:
        return ErrorResponse(detail=self.detail, exit_code=self.exit_code, context=self.context)


class ValidationError(HyperlatException):
    """Raised when user input or a JSON document is malformed."""
    def __init__(
        self,
        detail: str = "Validation error",
        errors: Optional[List[Dict[str, Any]]] = None,
        context: Optional[Dict[str, Any]] = None
    ):
        self.errors = errors or []
        super().__init__(exit_code=2, detail=detail, context=context)


class UsageError(HyperlatException):
    """Raised for an invalid command line."""
    def __init__(self, detail: str = "Invalid usage", context: Optional[Dict[str, Any]] = None):
        super().__init__(exit_code=2, detail=detail, context=context)


class BudgetExceededError(HyperlatException):
    """Raised when an enumeration or search exhausts its budget.

    ``partial`` holds whatever was computed before the budget ran out.
    """
    def __init__(
        self,
        detail: str = "Computation budget exceeded",
        partial: Any = None,
        context: Optional[Dict[str, Any]] = None
    ):
        self.partial = partial
        super().__init__(exit_code=3, detail=detail, context=context)


class SingularLatticeError(HyperlatException):
    """Raised when an operation needs a nonsingular Gram matrix."""
    def __init__(self, detail: str = "Lattice is singular", context: Optional[Dict[str, Any]] = None):
        super().__init__(exit_code=4, detail=detail, context=context)


class IndefiniteLatticeError(HyperlatException):
    """Raised when an operation needs a positive definite lattice."""
    def __init__(self, detail: str = "Lattice is not positive definite", context: Optional[Dict[str, Any]] = None):
        super().__init__(exit_code=4, detail=detail, context=context)


class NotIsotropicError(HyperlatException):
    def __init__(self, detail: str = "Vector is not isotropic", context: Optional[Dict[str, Any]] = None):
        super().__init__(exit_code=4, detail=detail, context=context)


class NotPrimitiveError(HyperlatException):
    def __init__(self, detail: str = "Vector is not primitive", context: Optional[Dict[str, Any]] = None):
        super().__init__(exit_code=4, detail=detail, context=context)


class ConstructionError(HyperlatException):
    """Raised when an internal consistency check of a construction fails."""
    def __init__(self, detail: str = "Construction check failed", context: Optional[Dict[str, Any]] = None):
        super().__init__(exit_code=5, detail=detail, context=context)


class ConfigurationError(HyperlatException):
    """Raised when there is a configuration error."""
    def __init__(self, detail: str = "Configuration error", context: Optional[Dict[str, Any]] = None):
        super().__init__(exit_code=6, detail=detail, context=context)
