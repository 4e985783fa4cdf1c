"""blockseq: generators and verifiers for block-counting sequences.

a_{m;w}(n) is the number of occurrences of the digit word w in the
base-m expansion of n, reduced mod m.  The package generates these
sequences three independent ways (brute-force oracle, window-transform
doubling, coded fixed point of a uniform morphism), classifies their
p-blocks, scans prefixes for repetitions, and checks the degree-p
functional equation their generating series satisfies over F_p.
"""

from .errors import (BlockseqError, ClaimViolationError, FixtureFormatError,
                     InvalidBaseError, InvalidPatternError,
                     KernelOverflowError, VerificationError,
                     WindowAlignmentError, WrongVariantError)
from .morphism import (KernelElement, UniformMorphism, build_morphism,
                       expand_fixed_point, export_morphism, infer_kernel,
                       parse_morphism, pure_single_letter_morphism)
from .series import (DegreeEvidence, FpPoly, TruncatedSeries, degree_evidence,
                     frobenius_power, functional_equation_residual,
                     origin_correction, poly_div_series, rhs_series,
                     series_from_sequence)
from .structure import (BlockClass, ClaimReport, PowerPrefixReport,
                        check_multiple_property, check_power_exclusions,
                        classify_block, classify_range, expected_type2,
                        expected_type2_batch, scan_power_prefixes,
                        tail_periods, z_array)
from .windows import (WindowSpec, generate, initial_block, phi, step_nonzero,
                      step_zero)
from .words import (PatternSpec, Word, a_batch, a_prefix, a_value,
                    count_occurrences, digit_string, e_count, from_base,
                    is_prime, to_base, word_plus)

__version__ = "0.1.0"
