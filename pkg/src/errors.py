class PeanoLabError(Exception):
    """Base class of all errors raised by peano-lab."""


class DomainError(PeanoLabError, ValueError):
    """A parameter lies outside the range the construction is defined for."""


class SizeError(PeanoLabError, ValueError):
    """An input is too large (or too small) for the requested computation."""


class FormatError(PeanoLabError, ValueError):
    def __init__(self, message: str, path=None, offset: int = None):
        self.path = path
        self.offset = offset
        context = []
        if path is not None:
            context.append(f"file {path}")
        if offset is not None:
            context.append(f"byte {offset}")
        if context:
            message = f"{message} ({', '.join(context)})"
        super().__init__(message)


class EmptySetError(PeanoLabError, ValueError):
    pass


class IncompleteError(PeanoLabError, ValueError):
    """The requested bead (or time) lies beyond the last complete record."""


class NotFound(PeanoLabError, LookupError):
    pass


class ShapeError(PeanoLabError, ValueError):
    pass


class StructureError(PeanoLabError, ValueError):
    """A half-edge structure violates the rotation-system axioms."""


class FitError(PeanoLabError, RuntimeError):
    pass


class ConfigError(PeanoLabError, ValueError):
    pass
