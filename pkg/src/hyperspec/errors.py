"""Exception types shared across the package."""


class HyperspecError(Exception):
    """Base class for hyperspec-specific failures."""


class FormatError(HyperspecError, ValueError):
    """Malformed hypergraph input: bad header, edge arity, or vertex ids."""


class CapacityError(HyperspecError):
    """A requested construction exceeds a configured size cap."""
