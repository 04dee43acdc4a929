"""Exception types shared across the package."""


class DomainError(ValueError):
    """Momentum arguments left the certified branch domain of the scattering phase."""


class SingularMomentumError(ValueError):
    """A unit-circle eigenvalue factor was evaluated too close to its pole at z = 1."""


class DegenerateMomentaError(ValueError):
    """Momenta collide within the distinctness tolerance (the predicted vector vanishes)."""


class CapExceededError(RuntimeError):
    """A configured enumeration or dense-storage cap would be exceeded."""


class SectorMismatchError(ValueError):
    """Operands belong to different sectors or incompatible basis orderings."""
