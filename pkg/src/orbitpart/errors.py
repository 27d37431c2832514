"""Exception hierarchy shared by every module."""


class OrbitPartError(Exception):
    """Base class for all library errors."""


class InvalidOrderError(OrbitPartError, ValueError):
    pass


class InvalidGroupError(OrbitPartError, ValueError):
    pass


class InvalidMatrixError(OrbitPartError, ValueError):
    pass


class NotFiniteError(OrbitPartError, ValueError):
    """Generator closure exceeded its cap."""


class InvalidParameterError(OrbitPartError, ValueError):
    pass


class NotFullDimensionalError(InvalidParameterError):
    pass


class PreconditionError(OrbitPartError, ValueError):
    pass


class DegenerateRepresentationError(OrbitPartError, ValueError):
    pass


class PointCountError(OrbitPartError, ValueError):
    def __init__(self, required, got):
        self.required = required
        self.got = got
        super().__init__(f"requires {required} points, got {got}")


class SizeGuardError(OrbitPartError, ValueError):
    pass


class NumericalFailure(OrbitPartError, RuntimeError):
    """Iteration cap hit; ``best`` holds the last iterate ``(x, coeffs)``."""

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class NotAZeroError(OrbitPartError, ValueError):
    pass


class NotApplicableError(OrbitPartError, ValueError):
    pass


class DegenerateInputError(OrbitPartError, ValueError):
    pass


class RenderUnsupportedError(OrbitPartError, ValueError):
    pass


class ParseError(OrbitPartError, ValueError):
    def __init__(self, path, offset, message):
        self.path = path
        self.offset = offset
        super().__init__(f"{path}: byte {offset}: {message}")


class UnknownKeyError(OrbitPartError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else ""
