"""Exception types shared across the toolkit."""


class EllcoverError(Exception):
    """Base class for all toolkit errors."""


class PoleProximity(EllcoverError):
    """Evaluation point is within the pole-exclusion radius of a lattice point."""


class ConvergenceFailure(EllcoverError):
    """Series truncation cannot meet the requested precision."""


class InvalidInvariants(EllcoverError):
    """Numerical invariants violate a hard precondition (not a checkable claim)."""


class ParityViolation(InvalidInvariants):
    """A congruence precondition on integer data does not hold."""
