"""Unit tests for the window transform and the doubling generator."""

import numpy as np
import pytest

from blockseq import (
    PatternSpec,
    WindowAlignmentError,
    WindowSpec,
    Word,
    WrongVariantError,
    a_prefix,
    digit_string,
    generate,
    initial_block,
    phi,
    step_nonzero,
    step_zero,
)

# Hand-checked expansion chunks for the two classic base-2 sequences.
RS_S1 = "00010010"
RS_S2 = "0001001000011101"
RS_S3 = "00010010000111010001001011100010"

ZW_S0 = "0100"
ZW_S1 = "01110100"
ZW_S2 = "0111101101110100"
ZW_S3 = "01111011100010110111101101110100"
ZW_PREFIX64 = "0000" + ZW_S0 + ZW_S1 + ZW_S2 + ZW_S3


def as_str(values) -> str:
    return digit_string(values, 10)


def w2(s: str) -> Word:
    return Word.from_string(s, 2)


# ---------------------------------------------------------------------------
# window geometry
# ---------------------------------------------------------------------------

def test_window_spec_fractions():
    ws = WindowSpec.from_pattern(PatternSpec(2, "11"))
    # strip the leading letter: remainder "1" has value 1 over denominator 2
    assert (ws.alpha_numerator, ws.beta_numerator, ws.denominator) == (1, 2, 2)

    ws = WindowSpec.from_pattern(PatternSpec(2, "1"))
    assert (ws.alpha_numerator, ws.beta_numerator, ws.denominator) == (0, 1, 1)

    ws = WindowSpec.from_pattern(PatternSpec(3, "12"))
    assert (ws.alpha_numerator, ws.beta_numerator, ws.denominator) == (2, 3, 3)


def test_phi_examples():
    ws = WindowSpec.from_pattern(PatternSpec(2, "11"))
    assert str(phi(ws, w2("0001"))) == "0010"

    ws = WindowSpec.from_pattern(PatternSpec(2, "01"))
    assert str(phi(ws, w2("0100"))) == "0111"

    ws = WindowSpec.from_pattern(PatternSpec(2, "1"))
    # |w| = 1 means the window is the whole word
    assert str(phi(ws, w2("01"))) == "10"


def test_phi_increments_only_the_window():
    ws = WindowSpec.from_pattern(PatternSpec(3, "10"))
    v = Word.from_string("012012012", 3)
    out = phi(ws, v)
    # window [0/3, 1/3) of length 9 is positions 0..2
    assert tuple(out) == (1, 2, 0, 0, 1, 2, 0, 1, 2)


def test_phi_applied_base_times_is_identity():
    rng = np.random.default_rng(17)
    for m, w in [(2, "11"), (3, "02"), (5, "10")]:
        spec = PatternSpec(m, w)
        ws = WindowSpec.from_pattern(spec)
        length = ws.denominator * 6
        v = Word(tuple(rng.integers(0, m, size=length).tolist()), m)
        cur = v
        for _ in range(m):
            cur = phi(ws, cur)
        assert cur == v


def test_phi_rejects_misaligned_length():
    ws = WindowSpec.from_pattern(PatternSpec(2, "11"))
    with pytest.raises(WindowAlignmentError):
        phi(ws, w2("001"))
    with pytest.raises(WindowAlignmentError):
        phi(ws, Word((), 2))


# ---------------------------------------------------------------------------
# seeds and the two doubling steps
# ---------------------------------------------------------------------------

def test_initial_block_examples():
    assert str(initial_block(PatternSpec(2, "11"))) == "0001"
    assert str(initial_block(PatternSpec(2, "01"))) == ZW_S0
    assert str(initial_block(PatternSpec(3, "2"))) == "001"


def test_step_nonzero_examples():
    spec = PatternSpec(2, "11")
    s1 = step_nonzero(spec, w2("0001"))
    assert str(s1) == RS_S1
    assert str(step_nonzero(spec, s1)) == RS_S2

    # single-letter pattern: u -> u phi(u) for base 2
    assert str(step_nonzero(PatternSpec(2, "1"), w2("01"))) == "0110"


def test_step_zero_examples():
    spec = PatternSpec(2, "01")
    s1 = step_zero(spec, w2(ZW_S0))
    assert str(s1) == ZW_S1
    assert str(step_zero(spec, s1)) == ZW_S2

    assert str(step_zero(PatternSpec(2, "0"), w2("10"))) == "0110"


def test_step_variant_guards():
    with pytest.raises(WrongVariantError):
        step_zero(PatternSpec(2, "11"), w2("0001"))
    with pytest.raises(WrongVariantError):
        step_nonzero(PatternSpec(2, "01"), w2("0100"))


def test_step_lengths_multiply_by_base():
    for m, w in [(2, "11"), (3, "12"), (3, "012")]:
        spec = PatternSpec(m, w)
        u = initial_block(spec)
        step = step_zero if spec.is_zero_word else step_nonzero
        for _ in range(3):
            nxt = step(spec, u)
            assert len(nxt) == m * len(u)
            # each doubling step extends the previous word
            assert tuple(nxt)[: len(u)] == tuple(u) or spec.is_zero_word
            u = nxt


# ---------------------------------------------------------------------------
# full generation: golden strings
# ---------------------------------------------------------------------------

def test_generate_golden_nonzero_word():
    out = generate(PatternSpec(2, "11"), 32)
    assert as_str(out) == RS_S3


def test_generate_golden_zero_word():
    out = generate(PatternSpec(2, "01"), 64)
    assert as_str(out) == ZW_PREFIX64


def test_generate_golden_single_zero():
    # a for base 2, pattern 0 counts zeros in the expansion; its lead block
    # is the seed itself, giving a(0) = 1.
    out = generate(PatternSpec(2, "0"), 8)
    assert as_str(out) == "10100110"


def test_generate_all_zero_length_two_starts_flat():
    # For the pattern 00 no index below 4 has two zeros in its expansion,
    # and a(4) = 1 from "100".
    out = generate(PatternSpec(2, "00"), 8)
    assert as_str(out) == "00001000"


def test_generate_thue_morse():
    out = generate(PatternSpec(2, "1"), 16)
    assert as_str(out) == "0110100110010110"


def test_generate_short_requests_and_edge_lengths():
    spec = PatternSpec(2, "11")
    full = generate(spec, 4096)
    for n in (1, 2, 3, 4, 5, 63, 64, 65, 4095):
        assert np.array_equal(generate(spec, n), full[:n])
    spec0 = PatternSpec(2, "01")
    full0 = generate(spec0, 4096)
    for n in (1, 2, 3, 4, 5, 63, 64, 65, 4095):
        assert np.array_equal(generate(spec0, n), full0[:n])


# ---------------------------------------------------------------------------
# oracle equivalence
# ---------------------------------------------------------------------------

def all_patterns(m, max_width):
    pats = []
    for width in range(1, max_width + 1):
        for v in range(m ** width):
            digits = []
            x = v
            for _ in range(width):
                digits.append(x % m)
                x //= m
            pats.append(tuple(reversed(digits)))
    return pats


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_generate_matches_oracle(m):
    """The doubling generator and the counting oracle agree for every
    pattern of width <= 3, prime base or not."""
    n = 2500
    for pat in all_patterns(m, 3):
        spec = PatternSpec(m, pat)
        got = generate(spec, n)
        want = a_prefix(spec, n)
        assert np.array_equal(got, want), f"mismatch for {spec}"


def test_generate_matches_oracle_wider_pattern():
    for m, w in [(2, "1101"), (3, "0012")]:
        spec = PatternSpec(m, w)
        assert np.array_equal(generate(spec, 4000), a_prefix(spec, 4000))


# ---------------------------------------------------------------------------
# structural laws of the expansions
# ---------------------------------------------------------------------------

def test_nonzero_word_block_structure():
    """For a pattern with first letter x, every length-m^L block of the
    expansion at offset j != x repeats the leading block."""
    for m, w in [(2, "11"), (3, "12"), (3, "21")]:
        spec = PatternSpec(m, w)
        x = spec.pattern[0]
        for L in (2, 3, 4):
            size = m ** L
            out = generate(spec, m * size)
            lead = out[:size]
            for j in range(m):
                block = out[j * size : (j + 1) * size]
                if j != x:
                    assert np.array_equal(block, lead)
                else:
                    assert not np.array_equal(block, lead)


def test_zero_word_chunk_repetition():
    """For 0-words the segment between consecutive base powers consists of
    base-1 identical copies of one chunk."""
    for m, w in [(2, "01"), (3, "02"), (3, "0")]:
        spec = PatternSpec(m, w)
        width = spec.width
        out = generate(spec, m ** (width + 3))
        for j in range(width, width + 3):
            lo, hi = m ** j, m ** (j + 1)
            seg = out[lo:hi]
            chunk = seg[: m ** j]
            for c in range(1, m - 1):
                assert np.array_equal(seg[c * m ** j : (c + 1) * m ** j], chunk)


def test_zero_word_high_block_invariance():
    """Prepending a nonzero digit never changes the count of a 0-word:
    a(r + y*m^(k+1)) = a(r) for t < m^k <= r < m^(k+1)."""
    from blockseq import a_batch

    for m, w in [(2, "0"), (2, "01"), (3, "00"), (3, "012")]:
        spec = PatternSpec(m, w)
        t = spec.value
        for k in range(1, 7):
            if not t < m ** k:
                continue
            r = np.arange(m ** k, m ** (k + 1))
            base_vals = a_batch(spec, r)
            for y in range(1, m):
                assert np.array_equal(a_batch(spec, r + y * m ** (k + 1)), base_vals)


def test_generate_rejects_bad_count():
    with pytest.raises(ValueError):
        generate(PatternSpec(2, "11"), 0)
