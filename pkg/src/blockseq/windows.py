"""Fast generation of block-counting sequences by window doubling.

The window transform phi_w increments (mod m) exactly the digits of a
word whose indices fall in [alpha*L, beta*L), where L is the word length
and alpha = (w')_m / m^(|w|-1), beta = ((w')_m + 1) / m^(|w|-1) with w'
the pattern minus its first letter.  Window bounds are exact rationals
with denominator m^(|w|-1); they are evaluated with integer arithmetic
only, and lengths that would make them non-integral are rejected.

Two doubling constructions build (a_{m;w}(n)) from the seed block u_0
(length m^|w|, a single 1 at index (w)_m):

* pattern starting with x != 0:   u_{k+1} = u_k^x phi(u_k) u_k^(m-x-1),
  and u_k converges to the sequence itself;
* pattern starting with 0:        u_{k+1} = phi(u_k) u_k^(m-1), and the
  sequence is  w_{-1} w_0 w_1 ...  with chunks w_k = u_k^(m-1).

The leading chunk w_{-1} covers n in [0, m^|w|), where the expansion of
n is shorter than the pattern, so no occurrence fits and w_{-1} is all
zeros -- except for the single-letter pattern "0", whose one occurrence
in [0]_m = "0" forces w_{-1} = u_0.  (Stating the exception as "w_{-1} =
u_0 whenever the pattern is all zeros" overcounts at n = 0 for lengths
>= 2; the oracle-equivalence tests pin the version implemented here.)

Both constructions are valid for composite m as well as prime m.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import WindowAlignmentError, WrongVariantError
from .words import PatternSpec, Word, from_base

__all__ = [
    "WindowSpec",
    "phi",
    "initial_block",
    "step_nonzero",
    "step_zero",
    "generate",
]


@dataclass(frozen=True)
class WindowSpec:
    """Exact-rational window bounds alpha = alpha_numerator/denominator,
    beta = beta_numerator/denominator for the transform phi_w."""

    alpha_numerator: int
    beta_numerator: int
    denominator: int
    pattern: PatternSpec

    def __post_init__(self):
        if not 0 <= self.alpha_numerator < self.beta_numerator <= self.denominator:
            raise ValueError("window bounds out of order")
        if self.beta_numerator != self.alpha_numerator + 1:
            raise ValueError("window must have width 1/denominator")

    @classmethod
    def from_pattern(cls, spec: PatternSpec) -> "WindowSpec":
        tail = Word(spec.pattern[1:], spec.base)  # pattern minus first letter
        alpha = from_base(tail)
        den = spec.base ** (spec.width - 1)
        return cls(alpha, alpha + 1, den, spec)


def _window_bounds(ws: WindowSpec, length: int) -> tuple:
    if length <= 0 or length % ws.denominator != 0:
        raise WindowAlignmentError(
            f"length {length} is not a positive multiple of {ws.denominator}")
    lo = ws.alpha_numerator * length // ws.denominator
    hi = ws.beta_numerator * length // ws.denominator
    return lo, hi


def _phi_array(ws: WindowSpec, v: np.ndarray) -> np.ndarray:
    lo, hi = _window_bounds(ws, v.size)
    out = v.copy()
    m = ws.pattern.base
    out[lo:hi] = (out[lo:hi].astype(np.int16) + 1) % m
    return out.astype(np.uint8)


def phi(ws: WindowSpec, v: Word) -> Word:
    """Apply the window transform to a word of aligned length."""
    arr = np.array(v.digits, dtype=np.uint8)
    return Word(tuple(int(d) for d in _phi_array(ws, arr)), v.base)


def _initial_array(spec: PatternSpec) -> np.ndarray:
    u0 = np.zeros(spec.base ** spec.width, dtype=np.uint8)
    u0[spec.value] = 1
    return u0


def initial_block(spec: PatternSpec) -> Word:
    """The seed block u_0: length m^|w|, a single 1 at index (w)_m."""
    return Word(tuple(int(d) for d in _initial_array(spec)), spec.base)


def _step_nonzero_array(ws: WindowSpec, u: np.ndarray) -> np.ndarray:
    m = ws.pattern.base
    x = ws.pattern.pattern[0]
    return np.concatenate([u] * x + [_phi_array(ws, u)] + [u] * (m - x - 1))


def _step_zero_array(ws: WindowSpec, u: np.ndarray) -> np.ndarray:
    m = ws.pattern.base
    return np.concatenate([_phi_array(ws, u)] + [u] * (m - 1))


def step_nonzero(spec: PatternSpec, u: Word) -> Word:
    """One doubling step for patterns starting with x != 0."""
    if spec.is_zero_word:
        raise WrongVariantError(
            "step_nonzero needs a pattern starting with a nonzero digit")
    ws = WindowSpec.from_pattern(spec)
    arr = _step_nonzero_array(ws, np.array(u.digits, dtype=np.uint8))
    return Word(tuple(int(d) for d in arr), spec.base)


def step_zero(spec: PatternSpec, u: Word) -> Word:
    """One doubling step for patterns starting with 0."""
    if not spec.is_zero_word:
        raise WrongVariantError("step_zero needs a pattern starting with 0")
    ws = WindowSpec.from_pattern(spec)
    arr = _step_zero_array(ws, np.array(u.digits, dtype=np.uint8))
    return Word(tuple(int(d) for d in arr), spec.base)


def generate(spec: PatternSpec, n_terms: int) -> np.ndarray:
    """First n_terms values of (a_{m;w}(n)) as a uint8 array.

    Nonzero-leading patterns iterate the doubling step and truncate;
    zero-leading patterns emit w_{-1} and then the chunks u_k^(m-1),
    building each u_k only while more output is still needed.
    """
    if n_terms < 1:
        raise ValueError("n_terms must be >= 1")
    m = spec.base
    ws = WindowSpec.from_pattern(spec)
    u = _initial_array(spec)

    if not spec.is_zero_word:
        while u.size < n_terms:
            u = _step_nonzero_array(ws, u)
            if u.size >= n_terms:
                break
        return u[:n_terms].copy()

    # zero-leading pattern: w_{-1} then chunks u_0^(m-1), u_1^(m-1), ...
    if spec.width == 1:
        lead = u.copy()  # pattern "0": a(0) = 1 lands inside w_{-1}
    else:
        lead = np.zeros(spec.base ** spec.width, dtype=np.uint8)
    parts = [lead[:n_terms]]
    total = parts[0].size
    while total < n_terms:
        for _ in range(m - 1):
            take = min(u.size, n_terms - total)
            parts.append(u[:take])
            total += take
            if total >= n_terms:
                break
        else:
            u = _step_zero_array(ws, u)
            continue
        break
    return np.concatenate(parts)
