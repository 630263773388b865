"""Exception hierarchy shared by all modules."""


class RandToeplitzError(Exception):
    """Base class for errors raised by this package."""


class InvalidInputError(RandToeplitzError, ValueError):
    """Malformed argument: wrong length, non-finite entries, bad index."""


class ResourceLimitError(RandToeplitzError):
    """Requested dense operation exceeds the configured size cap."""


class SingularOperatorError(RandToeplitzError, ArithmeticError):
    """Operator is singular or numerically close to singular."""


class NotPositiveDefiniteError(RandToeplitzError, ArithmeticError):
    """Operator required to be Hermitian positive definite is not."""


class ContractViolationError(RandToeplitzError):
    """Input violates a structural contract, e.g. it is not Hermitian."""


class DomainError(RandToeplitzError, ValueError):
    """Value outside the domain of a function (log of a nonpositive number)."""
