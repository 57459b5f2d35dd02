"""Exception hierarchy shared by every module."""


class CoxtileError(Exception):
    """Base class; the CLI maps these to exit codes."""


class UsageError(CoxtileError):
    """Malformed user input (bad word, bad element, bad row name)."""


class UnsupportedType(CoxtileError):
    pass


class UnsupportedHost(CoxtileError):
    pass


class RelationMismatch(CoxtileError):
    pass


class GroupTooLarge(CoxtileError):
    pass


class ExplosionGuard(CoxtileError):
    pass


class MatrixMismatch(CoxtileError):
    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class NotReduced(CoxtileError):
    pass


class NotReducedInX(NotReduced):
    pass


class NotReducedInW(NotReduced):
    pass


class NotInSubgroup(CoxtileError):
    pass


class InvalidAngles(CoxtileError):
    pass


class MegatileViolation(CoxtileError):
    pass


class AsymmetricBasis(CoxtileError):
    pass


class BasisMismatch(CoxtileError):
    pass


class VerificationFailure(CoxtileError):
    """A computed check disagreed with its expectation (exit code 1)."""
