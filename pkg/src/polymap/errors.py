"""Exception types shared across the package."""


class PolymapError(Exception):
    """Base class for every error this package raises on purpose."""


class DimensionMismatch(PolymapError, ValueError):
    """Operands have incompatible dimensions."""


class ZeroDirection(PolymapError, ValueError):
    """A direction vector that must be nonzero was zero."""


class NotSurjective(PolymapError, ValueError):
    """A map required to be onto its codomain is rank deficient."""

    def __init__(self, rank: int, codomain_dim: int):
        self.rank = rank
        self.codomain_dim = codomain_dim
        super().__init__(f"NotSurjective: rank {rank} < codomain dim {codomain_dim}")


class KernelNotContained(PolymapError, ValueError):
    """The kernel of the map is not contained in the kernel of the functional."""


class PreconditionViolated(PolymapError, ValueError):
    """A checked operation precondition failed."""


class ParseError(PolymapError, ValueError):
    """Malformed input text; carries the offending token and its byte offset."""

    def __init__(self, message, token=None, offset=None):
        self.token = token
        self.offset = offset
        super().__init__(message)
