"""Exception types shared across the package."""


class DegenerateParameterError(ValueError):
    """Hopping parameters degenerate for the requested closed form."""


class NoEdgeStateError(ValueError):
    """No localized edge solution exists for the given parameters."""


class RootCountError(RuntimeError):
    """A secular equation produced the wrong number of roots."""


class HermiticityError(ValueError):
    """Matrix handed to the dense solver is not Hermitian."""


class SingularArgumentError(ValueError):
    """Closed-form evaluation requested at a removable-singularity point."""
