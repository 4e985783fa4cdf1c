"""Base-m digit words and the brute-force counting oracle.

The object of study is the block-counting sequence: for a base m >= 2 and
a digit word w, e_{m;w}(n) is the number of (possibly overlapping)
occurrences of w in the base-m expansion of n, and a_{m;w}(n) is that
count reduced mod m.  a_{2;1} is the Thue-Morse sequence and a_{2;11} is
the Rudin-Shapiro sequence.

Everything here is exact integer arithmetic.  Two independent oracle
paths are provided: a scalar one built on digit strings (`e_count`,
`a_value`) and a vectorized one built on numpy digit windows (`a_batch`,
`a_prefix`).  The scalar path is the ground truth for tests; the
vectorized path is the workhorse the rest of the package validates
against.

Conventions, fixed deliberately and relied on throughout:

* the expansion of 0 is the single digit "0" (not the empty word), so
  a_{2;0}(0) = 1;
* expansions of n > 0 carry no leading zeros;
* digits are stored most-significant first.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidBaseError, InvalidPatternError

# Indices handled by the vectorized oracle must stay clear of int64
# overflow in the windowed-digit arithmetic.
MAX_INDEX = 2 ** 62


def is_prime(n: int) -> bool:
    """Trial-division primality test (n has no divisor in [2, sqrt(n)])."""
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def digit_string(digits, base: int) -> str:
    """Render a digit vector: concatenated for base <= 10, else space-separated."""
    if base <= 10:
        return "".join(str(int(d)) for d in digits)
    return " ".join(str(int(d)) for d in digits)


@dataclass(frozen=True)
class Word:
    """A finite word of digits over [0, base).  May be empty and may
    carry leading zeros; canonical expansions are produced by `to_base`.
    """

    digits: tuple
    base: int

    def __post_init__(self):
        if self.base < 2:
            raise InvalidBaseError(f"base must be >= 2, got {self.base}")
        object.__setattr__(self, "digits", tuple(int(d) for d in self.digits))
        for d in self.digits:
            if not 0 <= d < self.base:
                raise InvalidPatternError(
                    f"digit {d} out of range for base {self.base}")

    @classmethod
    def from_string(cls, s: str, base: int) -> "Word":
        try:
            if base <= 10:
                return cls(tuple(int(c) for c in s), base)
            return cls(tuple(int(c) for c in s.split()), base)
        except ValueError as exc:
            raise InvalidPatternError(f"{s!r} is not a digit string") from exc

    def __len__(self) -> int:
        return len(self.digits)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return Word(self.digits[i], self.base)
        return self.digits[i]

    def __iter__(self):
        return iter(self.digits)

    def __str__(self) -> str:
        return digit_string(self.digits, self.base)


@dataclass(frozen=True)
class PatternSpec:
    """The pair (base m, pattern word w); the universal parameter object.

    `pattern` accepts a digit tuple, a digit string, or a Word and is
    normalized to a tuple.  The empty pattern is rejected.
    """

    base: int
    pattern: tuple = field()

    def __post_init__(self):
        if self.base < 2:
            raise InvalidBaseError(f"base must be >= 2, got {self.base}")
        p = self.pattern
        try:
            if isinstance(p, str):
                p = tuple(int(c) for c in (p if self.base <= 10 else p.split()))
            elif isinstance(p, Word):
                p = p.digits
            else:
                p = tuple(int(d) for d in p)
        except (TypeError, ValueError) as exc:
            raise InvalidPatternError(
                f"pattern {self.pattern!r} is not a digit sequence") from exc
        if len(p) == 0:
            raise InvalidPatternError("empty pattern is not allowed")
        for d in p:
            if not 0 <= d < self.base:
                raise InvalidPatternError(
                    f"pattern digit {d} out of range for base {self.base}")
        object.__setattr__(self, "pattern", p)

    @property
    def modulus_is_prime(self) -> bool:
        return is_prime(self.base)

    @property
    def word(self) -> Word:
        return Word(self.pattern, self.base)

    @property
    def width(self) -> int:
        """|w|, the pattern length."""
        return len(self.pattern)

    @property
    def value(self) -> int:
        """(w)_m, the pattern read as a base-m integer."""
        return from_base(self.word)

    @property
    def is_zero_word(self) -> bool:
        """True when the pattern starts with digit 0."""
        return self.pattern[0] == 0

    def __str__(self) -> str:
        return f"m={self.base} w={digit_string(self.pattern, self.base)}"


def to_base(n: int, m: int) -> Word:
    """Canonical base-m expansion of n, most-significant digit first.

    The expansion of 0 is the single digit "0"; expansions of n > 0 have
    no leading zero.
    """
    if m < 2:
        raise InvalidBaseError(f"base must be >= 2, got {m}")
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return Word((0,), m)
    out = []
    while n:
        n, r = divmod(n, m)
        out.append(r)
    return Word(tuple(reversed(out)), m)


def from_base(v: Word) -> int:
    """Integer value of a digit word; leading zeros are accepted."""
    n = 0
    for d in v.digits:
        n = n * v.base + d
    return n


def count_occurrences(v: Word, w: Word) -> int:
    """Number of (possibly overlapping) occurrences of w in v."""
    if len(w) == 0:
        raise InvalidPatternError("occurrence counting needs a non-empty pattern")
    k = len(w)
    target = w.digits
    return sum(1 for i in range(len(v) - k + 1) if v.digits[i:i + k] == target)


def e_count(spec: PatternSpec, n: int) -> int:
    """Unreduced occurrence count of the pattern in the expansion of n."""
    return count_occurrences(to_base(n, spec.base), spec.word)


def a_value(spec: PatternSpec, n: int) -> int:
    """The block-counting sequence value a_{m;w}(n) = e_{m;w}(n) mod m."""
    return e_count(spec, n) % spec.base


def word_plus(v: Word) -> Word:
    """Increment every digit mod the base (length preserved)."""
    return Word(tuple((d + 1) % v.base for d in v.digits), v.base)


def a_batch(spec: PatternSpec, ns) -> np.ndarray:
    """Vectorized a_{m;w} over an arbitrary array of indices.

    Works windowwise: the length-|w| digit window starting j positions
    from the least-significant end has value (n // m^j) mod m^|w|; an
    occurrence is a window equal to (w)_m that also fits inside the
    canonical expansion (len([n]_m) >= j + |w|).  The length mask is what
    keeps leading zeros from being counted.
    """
    ns = np.ascontiguousarray(ns, dtype=np.int64)
    if ns.size == 0:
        return np.zeros(0, dtype=np.uint8)
    if ns.min() < 0:
        raise ValueError("indices must be non-negative")
    m = spec.base
    w = spec.pattern
    k = len(w)
    nmax = int(ns.max())
    if nmax >= MAX_INDEX:
        raise ValueError(f"index {nmax} too large for the vectorized oracle")

    # number of digits of the largest index
    ndig = 1
    while m ** ndig <= nmax:
        ndig += 1

    # canonical expansion lengths: len([n]) = #{powers m^i <= n} (min 1)
    lens = np.ones(ns.shape, dtype=np.int64)
    pw = m
    while pw <= nmax:
        lens += ns >= pw
        pw *= m

    counts = np.zeros(ns.shape, dtype=np.int64)
    if k <= ndig:
        wv = spec.value
        mk = m ** k
        for j in range(ndig - k + 1):
            win = (ns // (m ** j)) % mk
            counts += (win == wv) & (lens >= j + k)
    return (counts % m).astype(np.uint8)


def a_prefix(spec: PatternSpec, n_terms: int, chunk: int = 1 << 22) -> np.ndarray:
    """First n_terms values of a_{m;w}, computed by the vectorized oracle
    in fixed-size chunks to bound peak memory."""
    out = np.empty(n_terms, dtype=np.uint8)
    for lo in range(0, n_terms, chunk):
        hi = min(lo + chunk, n_terms)
        out[lo:hi] = a_batch(spec, np.arange(lo, hi, dtype=np.int64))
    return out
