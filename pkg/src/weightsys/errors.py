"""Exceptions shared across the package."""


class DiagramError(ValueError):
    """A diagram (or diagram JSON) violates a structural invariant."""


class SpaceMismatchError(ValueError):
    """An operation received a diagram from the wrong space (A vs B)."""


class GradingMismatchError(ValueError):
    """Two objects that must share a grading do not."""


class ResourceLimitError(RuntimeError):
    """A configurable enumeration/contraction cutoff was exceeded."""


class LieAlgebraError(ValueError):
    """Lie-algebra input data is malformed or fails a structural identity."""
