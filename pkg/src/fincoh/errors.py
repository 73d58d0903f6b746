"""Exception hierarchy.

Every error carries the offending indices in its message so the CLI can
surface it verbatim.
"""


class FincohError(Exception):
    """Base class for all validation and precondition failures."""


class GroupError(FincohError):
    pass


class NotClosed(GroupError):
    pass


class NoIdentity(GroupError):
    pass


class NotAssociative(GroupError):
    pass


class MissingInverse(GroupError):
    pass


class NotASubgroup(GroupError):
    pass


class NotAHomomorphism(FincohError):
    pass


class NotAnAutomorphism(FincohError):
    pass


class NotAnIsomorphism(FincohError):
    pass


class InconsistentGeneratorExtension(FincohError):
    pass


class Underdetermined(FincohError):
    pass


class SizeLimitExceeded(FincohError):
    pass


class NotInvariant(FincohError):
    pass


class NotNormal(FincohError):
    pass


class MismatchedActingGroup(FincohError):
    pass


class ActionMismatch(FincohError):
    pass


class NotACocycle(FincohError):
    pass


class TargetNotAbelian(FincohError):
    pass


class NotEquivariant(FincohError):
    pass


class NotAWitness(FincohError):
    pass


class LemmaViolation(FincohError):
    pass


class BaseMismatch(FincohError):
    pass


class IntertwineFailure(FincohError):
    pass


class NotRegular(FincohError):
    pass


class CheckFailure(FincohError):
    """A theorem-level consistency check failed; indicates a bug, not bad input."""
