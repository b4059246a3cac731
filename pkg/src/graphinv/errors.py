"""Exception types shared across the package."""


class PreconditionError(ValueError):
    """Input violates a documented precondition; the CLI maps this to exit code 2."""


class CapError(PreconditionError):
    """A configured size cap would be exceeded."""


class FormatError(PreconditionError):
    """Malformed textual input (graph6, edge list, permutation line, relation)."""


class PosetError(PreconditionError):
    """A poset lacks members or structure required by the requested operation."""
