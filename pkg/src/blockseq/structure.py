"""Structural verification: p-block classification and power-prefix scans.

Block dichotomy.  Group the sequence into p-blocks (a(pn), ..,
a(pn+p-1)).  Each block is either constant ("type 1") or constant except
at index w[|w|-1], where it holds the incremented value ("type 2"); and
a block is type 2 exactly when w minus its last letter is a suffix of
[n]_p.  The suffix test reduces to arithmetic: with q = |w| - 1 and
s = (w minus last letter) read as a base-p integer, the expansion of n
ends in those q digits iff  n >= p^(q-1)  and  n mod p^q == s.  (For
q = 0 the empty word is a suffix of everything, so every block is
type 2; n = 0 never passes the q >= 1 test, which matches reading the
expansion of 0 as carrying no digits for suffix purposes.)  The library
treats the dichotomy as a hard contract: a block matching neither shape,
or a type-2 verdict disagreeing with the suffix predicate, raises
ClaimViolationError.

Power prefixes.  A prefix of shape v^e (e identical blocks) at block
length L is detected from the self-match table z, where z[i] is the
length of the longest common prefix of the word and its suffix starting
at i: the prefix of length e*L consists of e copies of the first L
symbols iff z[L] >= (e-1)*L.  One O(N) pass therefore yields all power
prefixes at once; the pass is JIT-compiled when numba is available.
The same table drives the eventual-periodicity scan used by the algebra
module (T is a period of the tail y iff z_y[T] >= |y| - T).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ClaimViolationError, InvalidPatternError
from .words import PatternSpec, Word, digit_string

try:
    from numba import njit
except ImportError:  # pragma: no cover - numba is a declared dependency
    def njit(**kwargs):
        def wrap(fn):
            return fn
        return wrap

__all__ = [
    "BlockClass",
    "PowerPrefixReport",
    "ClaimReport",
    "expected_type2",
    "expected_type2_batch",
    "classify_block",
    "classify_range",
    "z_array",
    "scan_power_prefixes",
    "tail_periods",
    "check_multiple_property",
    "check_power_exclusions",
]


@dataclass(frozen=True)
class BlockClass:
    """Verdict for one p-block: variant "type1" (constant, value
    base_value) or "type2" (base_value everywhere except deviant_index,
    which holds base_value + 1 mod p)."""

    variant: str
    base_value: int
    deviant_index: int | None = None

    def __post_init__(self):
        if self.variant not in ("type1", "type2"):
            raise ValueError(f"unknown block variant {self.variant!r}")
        if (self.deviant_index is None) != (self.variant == "type1"):
            raise ValueError("deviant_index is for type2 blocks exactly")


@dataclass(frozen=True)
class PowerPrefixReport:
    """All block lengths L such that the first exponent*L terms of the
    scanned prefix are exponent identical copies of the first L."""

    pattern: PatternSpec | None
    exponent: int
    prefix_scanned: int
    found_lengths: tuple


@dataclass(frozen=True)
class ClaimReport:
    """Outcome of one structural claim check, serializable to one text
    record."""

    claim: str
    params: str
    scan_length: int
    evidence: tuple
    verdict: str
    detail: str = ""

    def format(self) -> str:
        ev = ",".join(str(x) for x in self.evidence)
        line = (f"claim={self.claim} params=[{self.params}] "
                f"scan={self.scan_length} evidence=[{ev}] verdict={self.verdict}")
        if self.detail:
            line += f" detail={self.detail}"
        return line


# ---------------------------------------------------------------------------
# block dichotomy
# ---------------------------------------------------------------------------

def expected_type2(spec: PatternSpec, n: int) -> bool:
    """Whether the block at n should be type 2: the pattern minus its
    last letter is a suffix of the expansion of n."""
    q = spec.width - 1
    if q == 0:
        return True
    p = spec.base
    head = Word(spec.pattern[:-1], p)
    s = 0
    for d in head.digits:
        s = s * p + d
    return n >= p ** (q - 1) and n % (p ** q) == s


def expected_type2_batch(spec: PatternSpec, ns: np.ndarray) -> np.ndarray:
    """Vectorized form of expected_type2."""
    ns = np.asarray(ns, dtype=np.int64)
    q = spec.width - 1
    if q == 0:
        return np.ones(ns.shape, dtype=bool)
    p = spec.base
    s = 0
    for d in spec.pattern[:-1]:
        s = s * p + d
    return (ns >= p ** (q - 1)) & (ns % (p ** q) == s)


def _block_shape(spec: PatternSpec, values: np.ndarray, n: int) -> BlockClass:
    p = spec.base
    i0 = spec.pattern[-1]
    if np.all(values == values[0]):
        return BlockClass("type1", int(values[0]))
    t = int(values[1] if i0 == 0 else values[0])
    rest = np.delete(values, i0)
    if np.all(rest == t) and int(values[i0]) == (t + 1) % p:
        return BlockClass("type2", t, i0)
    raise ClaimViolationError(
        f"block at n={n} ({spec}) is neither constant nor singly-deviant: "
        f"{digit_string(values, p)}")


def classify_block(spec: PatternSpec, n: int, prefix) -> BlockClass:
    """Classify the block (a(pn), ..., a(pn+p-1)) taken from a generated
    prefix, and cross-check the verdict against the suffix predicate.
    Any dichotomy or predicate violation is a hard error."""
    p = spec.base
    arr = np.asarray(prefix if not isinstance(prefix, Word) else prefix.digits,
                     dtype=np.uint8)
    if arr.size < p * (n + 1):
        raise ValueError(f"prefix too short to cover block n={n}")
    verdict = _block_shape(spec, arr[p * n:p * (n + 1)], n)
    want_type2 = expected_type2(spec, n)
    if (verdict.variant == "type2") != want_type2:
        raise ClaimViolationError(
            f"block at n={n} ({spec}) classified {verdict.variant} but the "
            f"suffix predicate says {'type2' if want_type2 else 'type1'}")
    return verdict


def classify_range(spec: PatternSpec, prefix: np.ndarray) -> np.ndarray:
    """Classify every complete block in the prefix at once; returns a
    boolean array (True = type 2) of length floor(len(prefix)/p).

    Raises ClaimViolationError on the first block violating either the
    two-shape dichotomy or the suffix predicate.
    """
    p = spec.base
    i0 = spec.pattern[-1]
    nb = len(prefix) // p
    blocks = np.asarray(prefix[:nb * p], dtype=np.int64).reshape(nb, p)
    t = blocks[:, 1] if i0 == 0 else blocks[:, 0]
    rest_ok = np.ones(nb, dtype=bool)
    for j in range(p):
        if j != i0:
            rest_ok &= blocks[:, j] == t
    is_type2 = rest_ok & (blocks[:, i0] == (t + 1) % p)
    is_type1 = rest_ok & (blocks[:, i0] == t)
    bad = ~(is_type1 | is_type2)
    if bad.any():
        n = int(np.argmax(bad))
        raise ClaimViolationError(
            f"block at n={n} ({spec}) is neither constant nor singly-deviant: "
            f"{digit_string(blocks[n], p)}")
    predicted = expected_type2_batch(spec, np.arange(nb, dtype=np.int64))
    mismatch = is_type2 != predicted
    if mismatch.any():
        n = int(np.argmax(mismatch))
        raise ClaimViolationError(
            f"block at n={n} ({spec}): classification "
            f"{'type2' if is_type2[n] else 'type1'} contradicts the suffix "
            "predicate")
    return is_type2


# ---------------------------------------------------------------------------
# self-match table and power-prefix scanning
# ---------------------------------------------------------------------------

@njit(cache=True)
def _z_array_jit(s):  # pragma: no cover - exercised through z_array
    n = s.size
    z = np.zeros(n, dtype=np.int64)
    if n == 0:
        return z
    z[0] = n
    l = 0
    r = 0
    for i in range(1, n):
        if i < r:
            k = z[i - l]
            if k < r - i:
                z[i] = k
                continue
            z[i] = r - i
        else:
            z[i] = 0
        while i + z[i] < n and s[z[i]] == s[i + z[i]]:
            z[i] += 1
        if i + z[i] > r:
            l = i
            r = i + z[i]
    return z


def z_array(s: np.ndarray) -> np.ndarray:
    """z[i] = length of the longest common prefix of s and s[i:]
    (z[0] = len(s)).  Linear time, single pass."""
    return _z_array_jit(np.ascontiguousarray(s, dtype=np.uint8))


def scan_power_prefixes(prefix, exponent: int,
                        pattern: PatternSpec | None = None) -> PowerPrefixReport:
    """Find every L with prefix[0:exponent*L] equal to exponent copies of
    prefix[0:L], in O(len(prefix)) time via the self-match table."""
    if exponent < 2:
        raise ValueError("exponent must be >= 2")
    arr = np.asarray(prefix if not isinstance(prefix, Word) else prefix.digits,
                     dtype=np.uint8)
    n = arr.size
    z = z_array(arr)
    ls = np.arange(1, n // exponent + 1, dtype=np.int64)
    found = ls[z[ls] >= (exponent - 1) * ls]
    return PowerPrefixReport(pattern, exponent, n,
                             tuple(int(x) for x in found))


def tail_periods(x: np.ndarray, max_period: int, preperiod: int) -> tuple:
    """Period lengths T <= max_period for which x becomes T-periodic from
    index `preperiod` on.  One self-match pass over the tail."""
    y = np.ascontiguousarray(x[preperiod:], dtype=np.uint8)
    z = z_array(y)
    out = []
    for t in range(1, min(max_period, y.size - 1) + 1):
        if z[t] >= y.size - t:
            out.append(t)
    return tuple(out)


# ---------------------------------------------------------------------------
# claim checks
# ---------------------------------------------------------------------------

def _generated_prefix(spec: PatternSpec, n_terms: int) -> np.ndarray:
    from .windows import generate
    return generate(spec, n_terms)


def check_multiple_property(spec: PatternSpec, n_terms: int) -> ClaimReport:
    """Scan v^(p+1) prefixes and require every found length at least
    2*p^|w| to be divisible by p^(|w|-1)."""
    if not spec.modulus_is_prime:
        raise InvalidPatternError("divisibility claim needs a prime base")
    p = spec.base
    report = scan_power_prefixes(_generated_prefix(spec, n_terms), p + 1, spec)
    threshold = 2 * p ** spec.width
    modulus = p ** (spec.width - 1)
    offenders = [L for L in report.found_lengths
                 if L >= threshold and L % modulus != 0]
    if offenders:
        raise ClaimViolationError(
            f"power-prefix length {offenders[0]} (>= {threshold}) is not a "
            f"multiple of {modulus} for {spec}")
    return ClaimReport(
        claim="power-length-multiple",
        params=f"{spec} exponent={p + 1} threshold={threshold} modulus={modulus}",
        scan_length=n_terms,
        evidence=report.found_lengths,
        verdict="PASS",
        detail=f"all found lengths >= {threshold} divisible by {modulus}")


def check_power_exclusions(spec: PatternSpec, n_terms: int) -> ClaimReport:
    """Dispatch to the exclusion bound matching (pattern, p) and enforce
    it over the scanned prefix.

    * pattern "0", p = 2: no square prefix with |v| >= 5;
    * pattern "0", p >= 3: no square prefix with |v| >= p^2;
    * pattern "10", p = 2: the only square prefix has |v| = 1;
    * pattern "10", p >= 3: no v^p prefix with |v| > p^2;
    * other |w| > 1: no v^(p+1) prefix with |v| = i*p^(|w|-1), i >= p+1;
    * single nonzero letter: no exclusion (a pure presentation exists);
      the scan evidence is reported informationally.
    """
    if not spec.modulus_is_prime:
        raise InvalidPatternError("power-exclusion claims need a prime base")
    p = spec.base
    w = spec.pattern
    prefix = _generated_prefix(spec, n_terms)

    if w == (0,):
        report = scan_power_prefixes(prefix, 2, spec)
        bound = 5 if p == 2 else p * p
        claim = "zero-pattern-square-bound"
        offenders = [L for L in report.found_lengths if L >= bound]
        detail = f"no square prefix with block length >= {bound}"
    elif w == (1, 0):
        if p == 2:
            report = scan_power_prefixes(prefix, 2, spec)
            claim = "one-zero-pattern-square-bound"
            offenders = [L for L in report.found_lengths if L != 1]
            detail = "the only square prefix has block length 1"
        else:
            report = scan_power_prefixes(prefix, p, spec)
            claim = "one-zero-pattern-power-bound"
            offenders = [L for L in report.found_lengths if L > p * p]
            detail = f"no {p}-power prefix with block length > {p * p}"
    elif spec.width > 1:
        report = scan_power_prefixes(prefix, p + 1, spec)
        modulus = p ** (spec.width - 1)
        claim = "power-prefix-cap"
        offenders = [L for L in report.found_lengths
                     if L % modulus == 0 and L // modulus >= p + 1]
        detail = (f"no {p + 1}-power prefix with block length "
                  f"i*{modulus}, i >= {p + 1}")
    else:
        # single nonzero letter: the sequence has a pure presentation, so
        # no power-exclusion argument applies; report the scan as-is.
        report = scan_power_prefixes(prefix, p + 1, spec)
        return ClaimReport(
            claim="single-letter-pure",
            params=f"{spec} exponent={p + 1}",
            scan_length=n_terms,
            evidence=report.found_lengths,
            verdict="PASS",
            detail="no exclusion asserted; pure presentation exists")

    if offenders:
        raise ClaimViolationError(
            f"{claim} violated for {spec}: offending block length "
            f"{offenders[0]} within {n_terms} terms")
    return ClaimReport(
        claim=claim,
        params=f"{spec} exponent={report.exponent}",
        scan_length=n_terms,
        evidence=report.found_lengths,
        verdict="PASS",
        detail=detail)
