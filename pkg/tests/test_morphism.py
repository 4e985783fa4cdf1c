"""Unit tests for kernel closure and the uniform-morphism presentation."""

import numpy as np
import pytest

from blockseq import (
    InvalidPatternError,
    KernelOverflowError,
    PatternSpec,
    UniformMorphism,
    a_batch,
    a_prefix,
    build_morphism,
    digit_string,
    expand_fixed_point,
    export_morphism,
    infer_kernel,
    parse_morphism,
    pure_single_letter_morphism,
)


def as_str(values) -> str:
    return digit_string(values, 10)


# ---------------------------------------------------------------------------
# kernel closure
# ---------------------------------------------------------------------------

def test_kernel_sizes_for_known_sequences():
    # Thue-Morse: the sequence and its complement.
    assert len(infer_kernel(PatternSpec(2, "1"))) == 2
    # Rudin-Shapiro: four distinct subsequences.
    assert len(infer_kernel(PatternSpec(2, "11"))) == 4


def test_kernel_contains_root():
    ks = infer_kernel(PatternSpec(2, "0"))
    assert (ks[0].exponent, ks[0].residue) == (0, 0)
    assert len(ks) == 4


def test_kernel_fingerprints_distinct_and_faithful():
    for m, w in [(2, "11"), (3, "1"), (2, "01")]:
        spec = PatternSpec(m, w)
        ks = infer_kernel(spec)
        fps = [k.fingerprint for k in ks]
        assert len(set(fps)) == len(fps)
        for k in ks:
            idx = k.residue + (m ** k.exponent) * np.arange(
                len(k.values), dtype=np.int64)
            assert np.array_equal(k.values, a_batch(spec, idx))


def test_kernel_is_closed_under_digit_refinement():
    """Each child subsequence n -> a(p^(e+1) n + r + j p^e) of a kernel
    element must coincide with some kernel element on a long window."""
    for m, w in [(2, "1"), (2, "11"), (3, "2")]:
        spec = PatternSpec(m, w)
        ks = infer_kernel(spec)
        probe = np.arange(512, dtype=np.int64)
        tabulated = {
            a_batch(spec, k.residue + (m ** k.exponent) * probe).tobytes()
            for k in ks
        }
        for k in ks:
            for j in range(m):
                e, r = k.exponent + 1, k.residue + j * m ** k.exponent
                child = a_batch(spec, r + (m ** e) * probe).tobytes()
                assert child in tabulated


def test_kernel_rejects_composite_base():
    with pytest.raises(InvalidPatternError):
        infer_kernel(PatternSpec(4, "1"))


def test_kernel_tiny_fingerprint_fails_revalidation():
    # A one-value fingerprint collapses distinct subsequences; the
    # doubled-length re-check must catch the bogus identification.
    with pytest.raises(KernelOverflowError):
        infer_kernel(PatternSpec(2, "11"), fingerprint_len=1)


# ---------------------------------------------------------------------------
# morphism construction
# ---------------------------------------------------------------------------

def test_build_morphism_thue_morse_exact():
    mu = build_morphism(PatternSpec(2, "1"))
    assert mu.width == 2
    assert mu.substitution == ((0, 1), (1, 0))
    assert mu.coding == (0, 1)
    assert mu.start == 0


def test_build_morphism_rudin_shapiro_shape():
    mu = build_morphism(PatternSpec(2, "11"))
    assert mu.alphabet_size == 4
    assert sorted(set(mu.coding)) == [0, 1]
    assert mu.substitution[mu.start][0] == mu.start


def test_build_morphism_single_letter_is_pure_form():
    mu = build_morphism(PatternSpec(3, "2"))
    assert mu.substitution == ((0, 0, 1), (1, 1, 2), (2, 2, 0))
    assert mu.coding == (0, 1, 2)


def test_build_morphism_zero_pattern_alphabet():
    # Base 2 pattern "0" needs one letter more than the output alphabet:
    # the coding is non-identity, matching the impossibility of a pure
    # presentation.
    mu = build_morphism(PatternSpec(2, "0"))
    assert mu.alphabet_size == 3
    assert mu.coding == (1, 0, 1)


def test_build_morphism_rejects_composite_base():
    with pytest.raises(InvalidPatternError):
        build_morphism(PatternSpec(6, "11"))


def test_pure_single_letter_examples():
    mu = pure_single_letter_morphism(3, 1)
    assert mu.substitution == ((0, 1, 0), (1, 2, 1), (2, 0, 2))
    assert mu.coding == (0, 1, 2)
    mu = pure_single_letter_morphism(5, 4)
    assert mu.substitution[0] == (0, 0, 0, 0, 1)


def test_pure_single_letter_rejects_zero():
    with pytest.raises(InvalidPatternError):
        pure_single_letter_morphism(3, 0)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_pure_and_inferred_presentations_agree(p):
    """For single nonzero letters the inferred morphism and the explicit
    pure one expand to the same sequence."""
    for x in range(1, p):
        spec = PatternSpec(p, (x,))
        built = expand_fixed_point(build_morphism(spec), 10 ** 4)
        pure = expand_fixed_point(pure_single_letter_morphism(p, x), 10 ** 4)
        assert np.array_equal(built, pure)
        assert np.array_equal(built, a_prefix(spec, 10 ** 4))


# ---------------------------------------------------------------------------
# fixed-point expansion
# ---------------------------------------------------------------------------

def test_expand_fixed_point_goldens():
    tm = UniformMorphism(2, ((0, 1), (1, 0)), (0, 1), 0)
    assert as_str(expand_fixed_point(tm, 8)) == "01101001"

    mu = build_morphism(PatternSpec(2, "11"))
    assert as_str(expand_fixed_point(mu, 16)) == "0001001000011101"

    mu = build_morphism(PatternSpec(2, "01"))
    assert as_str(expand_fixed_point(mu, 8)) == "00000100"


def test_expand_fixed_point_truncates_to_any_length():
    mu = build_morphism(PatternSpec(3, "10"))
    full = expand_fixed_point(mu, 1000)
    for n in (1, 2, 80, 729, 999):
        assert np.array_equal(expand_fixed_point(mu, n), full[:n])


def test_expand_fixed_point_rejects_bad_count():
    tm = UniformMorphism(2, ((0, 1), (1, 0)), (0, 1), 0)
    with pytest.raises(ValueError):
        expand_fixed_point(tm, 0)


def test_coded_fixed_point_matches_oracle():
    cases = [(2, w) for w in ("0", "1", "00", "01", "10", "11", "110", "010")]
    cases += [(3, w) for w in ("0", "2", "01", "12", "20", "002")]
    cases += [(5, w) for w in ("0", "3", "10", "23")]
    for m, w in cases:
        spec = PatternSpec(m, w)
        mu = build_morphism(spec)
        got = expand_fixed_point(mu, 10 ** 4)
        assert np.array_equal(got, a_prefix(spec, 10 ** 4)), f"mismatch for {spec}"


def test_morphism_rows_are_uniform():
    for m, w in [(2, "11"), (3, "01"), (5, "23")]:
        mu = build_morphism(PatternSpec(m, w))
        assert all(len(row) == m for row in mu.substitution)
        assert len(mu.coding) == mu.alphabet_size


# ---------------------------------------------------------------------------
# morphism validation
# ---------------------------------------------------------------------------

def test_uniform_morphism_validation():
    with pytest.raises(ValueError):
        UniformMorphism(2, ((0, 1), (1,)), (0, 1), 0)  # ragged row
    with pytest.raises(ValueError):
        UniformMorphism(2, ((0, 1), (1, 0)), (0,), 0)  # short coding
    with pytest.raises(ValueError):
        UniformMorphism(2, ((0, 2), (1, 0)), (0, 1), 0)  # letter out of range
    with pytest.raises(ValueError):
        UniformMorphism(2, ((0, 1), (1, 0)), (0, 2), 0)  # coding digit too big
    with pytest.raises(ValueError):
        UniformMorphism(2, ((1, 0), (1, 0)), (0, 1), 0)  # not prolongable


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def test_export_thue_morse_golden():
    mu = build_morphism(PatternSpec(2, "1"))
    assert export_morphism(mu) == (
        "width=2 start=0\n"
        "0 -> 0 1 ; code=0\n"
        "1 -> 1 0 ; code=1\n"
    )


def test_export_parse_round_trip():
    for m, w in [(2, "1"), (2, "11"), (2, "0"), (3, "12"), (5, "10")]:
        mu = build_morphism(PatternSpec(m, w))
        assert parse_morphism(export_morphism(mu)) == mu


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_morphism("not a morphism\n")
