"""
Error taxonomy for quatforms.

Commands catch QmfError subclasses and turn them into JSON diagnostics.
"""


class QmfError(Exception):
    """Base class for domain errors."""


class PreconditionError(QmfError, ValueError):
    """Input violates a mathematical precondition (bad level, p not dividing the mass numerator, ...)."""


class InfeasibleError(QmfError):
    """Preconditions hold but the construction has no solution."""


class MalformedOrderError(QmfError):
    """A lattice that should be an order is not one."""


class MassOvershootError(QmfError):
    """The enumerated weights exceed the mass; the equivalence test is wrong."""


class NeighborExhaustionError(QmfError):
    """Neighbor search stopped producing new classes before the mass was reached."""


class ClassificationError(QmfError):
    """An ideal is equivalent to none of the class representatives."""


class UnsupportedError(QmfError):
    """The requested variant is outside the implemented scope."""


class CacheError(QmfError):
    """A cache record failed re-validation."""
