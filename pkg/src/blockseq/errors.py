"""Exception types shared across the package."""


class BlockseqError(Exception):
    """Base class for all errors raised by this package."""


class InvalidBaseError(BlockseqError):
    """A base smaller than 2 was supplied."""


class InvalidPatternError(BlockseqError):
    """A pattern word is empty or contains digits outside the base."""


class WindowAlignmentError(BlockseqError):
    """The window transform was applied to a word whose length is not a
    positive multiple of the window denominator, so the window bounds
    would not be integers."""


class WrongVariantError(BlockseqError):
    """A doubling step meant for patterns starting with a nonzero digit
    was called on a zero-leading pattern, or vice versa."""


class KernelOverflowError(BlockseqError):
    """A subsequence-closure computation exceeded its state budget or its
    fingerprints failed re-validation.  Either the fingerprint length is
    too small to separate states or there is a bug upstream."""


class ClaimViolationError(BlockseqError):
    """A structural claim that the library treats as a hard contract
    (block dichotomy, power-prefix exclusion, divisibility of power
    lengths) was violated by generated data."""


class VerificationError(BlockseqError):
    """Two independent generation methods disagreed on sequence values."""


class FixtureFormatError(BlockseqError):
    """A fixture file could not be parsed; the message includes the
    offending line number."""
