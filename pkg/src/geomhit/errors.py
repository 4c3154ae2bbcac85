"""Exception types shared across the package."""


class GeomHitError(Exception):
    """Base class for package errors."""


class DimensionMismatch(GeomHitError):
    """Operands have different coordinate dimensions."""


class InvariantViolation(GeomHitError):
    """A structural guarantee the algorithms rely on was observed to fail."""


class InconsistentFatObject(GeomHitError):
    """A fat object's stated width/center contradict its membership predicate."""


class InfeasibleInstance(GeomHitError):
    """Some object of a hitting-set instance contains no candidate point."""


class InstanceFormatError(GeomHitError):
    """An instance file or generator spec is malformed."""
