"""Uniform-morphism presentations of block-counting sequences.

For prime p the sequence (a_{p;w}(n)) is p-automatic, so it arises as a
coding of the fixed point of a p-uniform substitution.  This module
recovers such a presentation empirically, with every identification
re-validated at higher precision and (in the test suite) against the
brute-force oracle.

Two different subsequence closures appear here:

* `infer_kernel` computes the classical p-kernel: the closure of the
  sequence under the maps  g(n) -> g(p*n + j).  Its elements are indexed
  from the least-significant digit end.  Finiteness of this closure is
  what makes the sequence automatic, but its elements do not directly
  give substitution rows for a most-significant-first fixed point.

* `build_morphism` closes over value-indexed residuals instead: for each
  integer s let  G_s(d, v) = a(s*p^d + v)  for 0 <= v < p^d -- the block
  of values whose expansions extend [s]_p by d more digits.  Splitting
  that block by its leading extra digit j gives exactly  G_{s*p+j}, so
  "G_s -> G_{s*p} ... G_{s*p+p-1}"  is a p-uniform substitution, coded
  by  G_s -> a(s).  Starting from s = 0 the fixed point exists
  automatically (child j = 0 of s = 0 is s = 0 again), and the coded
  fixed point is the sequence itself.  States are identified when their
  depth-D value trees agree; D defaults to |w| + 3 and every
  identification is re-checked at depth D + 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidPatternError, KernelOverflowError
from .words import MAX_INDEX, PatternSpec, a_batch

__all__ = [
    "KernelElement",
    "UniformMorphism",
    "infer_kernel",
    "build_morphism",
    "pure_single_letter_morphism",
    "expand_fixed_point",
    "export_morphism",
    "parse_morphism",
]


@dataclass(frozen=True)
class KernelElement:
    """One element of the p-kernel: the subsequence n -> a(p^e * n + r),
    represented by its first-L-values fingerprint (stored as raw bytes,
    one value per byte)."""

    exponent: int
    residue: int
    fingerprint: bytes

    @property
    def values(self) -> np.ndarray:
        return np.frombuffer(self.fingerprint, dtype=np.uint8)


@dataclass(frozen=True)
class UniformMorphism:
    """A width-p substitution over abstract letters 0..S-1 with an output
    coding and a start letter whose image begins with itself."""

    width: int
    substitution: tuple  # S rows, each a tuple of `width` letters
    coding: tuple        # S digits in [0, width)
    start: int

    def __post_init__(self):
        object.__setattr__(
            self, "substitution",
            tuple(tuple(int(x) for x in row) for row in self.substitution))
        object.__setattr__(self, "coding", tuple(int(c) for c in self.coding))
        s = len(self.substitution)
        if len(self.coding) != s:
            raise ValueError("coding and substitution disagree on alphabet size")
        for row in self.substitution:
            if len(row) != self.width:
                raise ValueError("substitution is not uniform")
            for letter in row:
                if not 0 <= letter < s:
                    raise ValueError(f"letter {letter} outside alphabet")
        for c in self.coding:
            if not 0 <= c < self.width:
                raise ValueError(f"coding digit {c} outside [0, {self.width})")
        if not 0 <= self.start < s:
            raise ValueError("start letter outside alphabet")
        if self.substitution[self.start][0] != self.start:
            raise ValueError("morphism is not prolongable from its start letter")

    @property
    def alphabet_size(self) -> int:
        return len(self.substitution)


def _kernel_fingerprint(spec: PatternSpec, e: int, r: int, length: int) -> bytes:
    if (spec.base ** e) * length + r >= MAX_INDEX:
        raise KernelOverflowError(
            f"kernel closure reached exponent {e} without repeating; "
            "fingerprint length is probably too small")
    idx = r + (spec.base ** e) * np.arange(length, dtype=np.int64)
    return a_batch(spec, idx).tobytes()


def infer_kernel(spec: PatternSpec, fingerprint_len: int | None = None) -> tuple:
    """Close the sequence under n -> a(p*n + j) and return the distinct
    subsequences found, deduplicated by first-L-values fingerprint.

    Every identification is re-validated with fingerprints of doubled
    length; a mismatch (or exceeding the state budget) raises
    KernelOverflowError.
    """
    if not spec.modulus_is_prime:
        raise InvalidPatternError("kernel inference requires a prime base")
    p = spec.base
    if fingerprint_len is None:
        fingerprint_len = 4 * p ** (spec.width + 2)
    budget = p ** (spec.width + 2) * p

    seen = {}      # fingerprint -> index into elements
    elements = []  # KernelElement, discovery order
    matches = []   # (child (e, r), representative index) for re-validation
    queue = [(0, 0)]
    root_fp = _kernel_fingerprint(spec, 0, 0, fingerprint_len)
    seen[root_fp] = 0
    elements.append(KernelElement(0, 0, root_fp))
    while queue:
        e, r = queue.pop(0)
        for j in range(p):
            ce, cr = e + 1, r + j * p ** e
            fp = _kernel_fingerprint(spec, ce, cr, fingerprint_len)
            if fp in seen:
                matches.append(((ce, cr), seen[fp]))
                continue
            if len(elements) >= budget:
                raise KernelOverflowError(
                    f"kernel closure exceeded {budget} elements")
            seen[fp] = len(elements)
            elements.append(KernelElement(ce, cr, fp))
            queue.append((ce, cr))

    # re-validate all identifications at doubled fingerprint length
    for (ce, cr), idx in matches:
        rep = elements[idx]
        long_child = _kernel_fingerprint(spec, ce, cr, 2 * fingerprint_len)
        long_rep = _kernel_fingerprint(
            spec, rep.exponent, rep.residue, 2 * fingerprint_len)
        if long_child != long_rep:
            raise KernelOverflowError(
                "kernel identification failed re-validation at doubled "
                f"fingerprint length (element p^{ce}*n+{cr})")
    return tuple(elements)


def _residual_fingerprint(spec: PatternSpec, s: int, depth: int) -> bytes:
    p = spec.base
    if (s + 1) * p ** depth >= MAX_INDEX:
        raise KernelOverflowError(
            f"residual closure reached representative {s} without repeating; "
            "depth is probably too small")
    parts = []
    for d in range(depth + 1):
        lo = s * p ** d
        parts.append(a_batch(spec, np.arange(lo, lo + p ** d, dtype=np.int64)))
    return np.concatenate(parts).tobytes()


def build_morphism(spec: PatternSpec, depth: int | None = None) -> UniformMorphism:
    """Build a p-uniform morphism + coding whose coded fixed point is
    (a_{p;w}(n)), by closing over the value-indexed residuals G_s.

    States are identified by depth-D fingerprints (D = |w| + 3 by
    default) and re-checked at depth D + 1; the closure aborts past
    p^(|w|+2) * p states.
    """
    if not spec.modulus_is_prime:
        raise InvalidPatternError("the morphic presentation requires a prime base")
    p = spec.base
    if depth is None:
        depth = spec.width + 3
    budget = p ** (spec.width + 2) * p

    seen = {_residual_fingerprint(spec, 0, depth): 0}
    reps = [0]       # representative integer s per letter
    rows = {}        # letter -> substitution row
    matches = []     # (child s, representative letter)
    queue = [(0, 0)]
    while queue:
        s, letter = queue.pop(0)
        if letter in rows:
            continue
        row = []
        for j in range(p):
            c = s * p + j
            fp = _residual_fingerprint(spec, c, depth)
            if fp in seen:
                matches.append((c, seen[fp]))
            else:
                if len(reps) >= budget:
                    raise KernelOverflowError(
                        f"residual closure exceeded {budget} states")
                seen[fp] = len(reps)
                reps.append(c)
                queue.append((c, seen[fp]))
            row.append(seen[fp])
        rows[letter] = tuple(row)

    for c, letter in matches:
        if (_residual_fingerprint(spec, c, depth + 1)
                != _residual_fingerprint(spec, reps[letter], depth + 1)):
            raise KernelOverflowError(
                f"state identification for residual {c} failed re-validation "
                f"at depth {depth + 1}")

    substitution = tuple(rows[i] for i in range(len(reps)))
    coding = tuple(
        int(a_batch(spec, np.array([s], dtype=np.int64))[0]) for s in reps)
    return UniformMorphism(p, substitution, coding, start=0)


def pure_single_letter_morphism(p: int, x: int) -> UniformMorphism:
    """The explicit pure presentation for a single nonzero letter x:
    alphabet [0, p), identity coding, and the image of i equal to i
    everywhere except position x, which holds i+1 mod p."""
    if not 1 <= x <= p - 1:
        raise InvalidPatternError(
            f"single-letter pure morphism needs 1 <= x <= {p - 1}, got {x}")
    substitution = tuple(
        tuple((i + 1) % p if k == x else i for k in range(p)) for i in range(p))
    return UniformMorphism(p, substitution, tuple(range(p)), start=0)


def expand_fixed_point(mu: UniformMorphism, n_terms: int) -> np.ndarray:
    """Iterate the substitution from the start letter until at least
    n_terms letters exist, then apply the coding and truncate."""
    if n_terms < 1:
        raise ValueError("n_terms must be >= 1")
    dtype = np.uint8 if mu.alphabet_size <= 256 else np.int64
    table = np.array(mu.substitution, dtype=dtype)
    coding = np.array(mu.coding, dtype=np.uint8)
    seq = np.array([mu.start], dtype=dtype)
    while seq.size < n_terms:
        seq = table[seq].reshape(-1)
    return coding[seq[:n_terms]]


def export_morphism(mu: UniformMorphism) -> str:
    """Textual form: a header line then one line per letter,
    "LETTER -> IMAGE ; code=DIGIT" with space-separated image letters."""
    lines = [f"width={mu.width} start={mu.start}"]
    for letter, row in enumerate(mu.substitution):
        image = " ".join(str(x) for x in row)
        lines.append(f"{letter} -> {image} ; code={mu.coding[letter]}")
    return "\n".join(lines) + "\n"


def parse_morphism(text: str) -> UniformMorphism:
    """Inverse of export_morphism; round-trips bit-exactly."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("width="):
        raise ValueError("missing morphism header")
    head = dict(field.split("=", 1) for field in lines[0].split())
    width, start = int(head["width"]), int(head["start"])
    rows, coding = {}, {}
    for ln in lines[1:]:
        left, code_part = ln.rsplit(";", 1)
        letter_part, image_part = left.split("->")
        letter = int(letter_part.strip())
        rows[letter] = tuple(int(x) for x in image_part.split())
        coding[letter] = int(code_part.split("=", 1)[1])
    substitution = tuple(rows[i] for i in range(len(rows)))
    return UniformMorphism(
        width, substitution, tuple(coding[i] for i in range(len(rows))), start)
