"""Exception hierarchy for the sumset toolkit"""


class SumsetToolkitError(Exception):
    """Base class for every error raised by the toolkit"""


class InputError(SumsetToolkitError, ValueError):
    """An argument is outside the domain of the requested operation"""


class FeasibilityError(SumsetToolkitError, RuntimeError):
    """A computation was refused because it exceeds a configured budget"""


# group-core

class NonPrimeError(InputError):
    pass


class RankZeroError(InputError):
    pass


class OrderTooLargeError(FeasibilityError):
    pass


class RankOutOfRangeError(InputError):
    pass


class NoComplementNeededError(InputError):
    pass


class GroupMismatchError(InputError):
    """Operands belong to different groups"""


# multiset-core

class EvenPrimeUnsupportedError(InputError):
    def __init__(self, what: str = "validity"):
        super().__init__(
            f"{what} is only defined for odd primes: the theory of valid multisets "
            f"turns out to be uninteresting when p = 2"
        )


class KOutOfRangeError(InputError):
    pass


# sumset-engine

class TooManySubmultisetsError(FeasibilityError):
    pass


# bound-calculus

class ZeroInMultisetError(InputError):
    pass


class NotOnOneLineError(InputError):
    pass


class EmptyPartitionError(InputError):
    pass


class InvalidMultisetError(InputError):
    pass


class SizeOutOfRangeError(InputError):
    pass


class JOutOfRangeError(InputError):
    pass


class ZeroTargetError(InputError):
    pass


# search-harness

class AutomorphismGroupTooLargeError(FeasibilityError):
    pass


class BudgetExceededError(FeasibilityError):
    pass


class ShardOutOfRangeError(InputError):
    pass


class CorruptCheckpointError(SumsetToolkitError):
    pass


# cli-report

class LiteralSyntaxError(InputError):
    """Multiset literal does not match the grammar"""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at byte offset {offset}")
        self.offset = offset


class DimensionMismatchError(InputError):
    pass
