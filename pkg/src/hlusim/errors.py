"""Exception hierarchy.

Every error carries a short machine-readable ``reason`` code; the command
line front end prints it and maps the class onto an exit status.
"""


class HluError(Exception):
    """Base class for all errors raised by this package."""

    reason = "error"

    def __init__(self, message, reason=None):
        super().__init__(message)
        if reason is not None:
            self.reason = reason


class RepresentationError(HluError, ValueError):
    """Operator is not of the kind the conversion expects (e.g. non-Hermitian)."""

    reason = "representation_error"


class ShapeError(HluError, ValueError):
    """Matrix has the wrong shape or lacks a required symmetry."""

    reason = "shape_error"


class InfeasibleError(HluError):
    """The requested simulation or synthesis is impossible with HLU control."""

    reason = "infeasible"


class SymmetryError(InfeasibleError):
    """Source and target belong to incompatible exchange-symmetry classes."""

    reason = "symmetry_class_mismatch"


class UnsupportedError(HluError):
    """Input lies outside the regime this package handles."""

    reason = "unsupported"


class DocumentError(HluError, ValueError):
    """A JSON document failed to parse or violates its schema."""

    reason = "schema_violation"
