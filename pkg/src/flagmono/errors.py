class MatroidError(ValueError):
    pass


class NotAMatroid(MatroidError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class EmptyBases(MatroidError):
    pass


class InvalidRank(MatroidError):
    pass


class TooSmall(MatroidError):
    pass


class NotPrime(MatroidError):
    pass


class NotAPermutation(MatroidError):
    pass


class GroundSetTooLarge(MatroidError):
    pass


class RankOutOfRange(MatroidError):
    pass


class NotFullChain(MatroidError):
    pass


class FlagMismatch(MatroidError):
    pass


class GroundSetMismatch(MatroidError):
    pass


class NotAWeakMap(MatroidError):
    pass


class NotRankPreservingWeak(MatroidError):
    pass


class NotDescentChain(MatroidError):
    pass


class CapExceeded(MatroidError):
    pass


class TheoremViolation(AssertionError):
    """A checked identity or inequality failed; ``witness`` carries the data."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
