"""Exception types shared across the package."""


class RegisterError(ValueError):
    """A register name is unknown or a layout is structurally invalid."""


class LayoutMismatchError(ValueError):
    """Two states that must share a layout do not."""


class RangeError(ValueError):
    """A basis value, eigenvalue, or mode index is outside its register range."""


class DegenerateStateError(ValueError):
    """An operation hit a zero vector or a zero-probability outcome."""


class PreconditionError(ValueError):
    """A documented precondition of an operation does not hold."""


class OracleConstructionError(ValueError):
    """A function table cannot be built with the requested structure."""


class NoCollisionError(LookupError):
    """The function table is injective, so no collision exists."""
