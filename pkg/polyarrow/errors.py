from typing import Any, Dict, Optional


class ToolkitError(Exception):
    """Base class for toolkit errors."""
    code = "toolkit"

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        self.message = message
        self.details = details or {}
        super().__init__(f"{self.code}: {message}")


class GeometryError(ToolkitError):
    code = "geometry"

class DimensionMismatchError(GeometryError): pass
class DegeneratePolytopeError(GeometryError): pass
class OriginNotInteriorError(GeometryError): pass
class UnboundedRegionError(GeometryError): pass
class DependentBasisError(GeometryError): pass


class DimensionCapExceededError(GeometryError):
    def __init__(self, dim: int, cap: int, vertex_count: Optional[int] = None):
        self.dim = dim
        self.cap = cap
        self.vertex_count = vertex_count
        super().__init__(
            f"dimension {dim} exceeds cap {cap}" + (f" ({vertex_count} vertices)" if vertex_count is not None else ""),
            {"dim": dim, "cap": cap, "vertex_count": vertex_count},
        )


class OperatorError(ToolkitError):
    code = "operator"

class NotInjectiveError(OperatorError): pass
class SpaceMismatchError(OperatorError): pass
class SingularOperatorError(OperatorError): pass


class CertificateError(ToolkitError):
    code = "certificate"

    def __init__(self, message: str, certificate: Any = None):
        self.certificate = certificate
        details = {"failed": certificate.failed_names()} if certificate is not None else {}
        super().__init__(message, details)


class HypothesisError(ToolkitError):
    code = "hypothesis"

class ConfigError(ToolkitError):
    code = "config"
