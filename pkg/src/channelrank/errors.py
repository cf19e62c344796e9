"""Exception types raised across the package.

Everything derives from :class:`ChannelRankError` (itself a ``ValueError``) so
callers and the CLI can catch a single base.
"""


class ChannelRankError(ValueError):
    pass


class KetSyntaxError(ChannelRankError):
    """Malformed ket expression. Carries the offending character offset."""

    def __init__(self, message, position, expected=None):
        self.position = position
        self.expected = expected
        detail = f"{message} at position {position}"
        if expected:
            detail += f" (expected {expected})"
        super().__init__(detail)


class MixedArity(ChannelRankError):
    pass


class NotNormalized(ChannelRankError):
    pass


class DimensionMismatch(ChannelRankError):
    pass


class ArityMismatch(ChannelRankError):
    pass


class ArityOverflow(ChannelRankError):
    pass


class ZeroVector(ChannelRankError):
    pass


class NonFiniteEntry(ChannelRankError):
    pass


class IndexOutOfRange(ChannelRankError):
    pass


class DuplicateIndex(ChannelRankError):
    pass


class NotSeparable(ChannelRankError):
    pass


class InconsistentRanks(ChannelRankError):
    pass


class SingularTransfer(ChannelRankError):
    def __init__(self, rank, message=None):
        self.rank = rank
        super().__init__(message or f"transfer matrix rank {rank}, not invertible")


class ZeroProbability(ChannelRankError):
    pass
