"""Command-line interface and benchmark harness.

Subcommands:

* generate -- emit the first N terms via the window generator;
* verify   -- cross-check window vs. morphism vs. brute-force oracle;
* blocks   -- classify p-blocks and summarize the type-1/type-2 split;
* powers   -- run the power-prefix divisibility and exclusion checks;
* series   -- functional-equation residual and degree evidence;
* bench    -- time all three generators on identical parameters.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O
error.  `blocks`, `powers` and `series` require a prime base; `verify`
accepts composite bases by dropping the morphism leg (the morphic
presentation needs primality, the window construction does not).
"""

from __future__ import annotations

import argparse
import hashlib
import os
import statistics
import sys
import time
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .errors import (BlockseqError, ClaimViolationError, FixtureFormatError,
                     InvalidBaseError, InvalidPatternError, VerificationError)
from .morphism import build_morphism, expand_fixed_point
from .series import degree_evidence, functional_equation_residual
from .structure import (check_multiple_property, check_power_exclusions,
                        classify_range)
from .windows import generate
from .words import PatternSpec, a_prefix, digit_string

__all__ = [
    "RunConfig",
    "BenchRecord",
    "load_fixture",
    "fixtures_dir",
    "bench_generators",
    "default_scan_length",
    "run",
    "main",
]

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_IO = 3

PRIME_ONLY = {"blocks", "powers", "series"}


@dataclass
class RunConfig:
    """Everything one invocation needs; built from parsed flags."""

    subcommand: str
    base: int
    pattern: str
    count: int
    output_format: str = "plain"
    output_path: str | None = None
    seed: int = 0
    scan_length: int | None = None
    order: int = 10_000

    def spec(self) -> PatternSpec:
        return PatternSpec(self.base, self.pattern)


@dataclass
class BenchRecord:
    generator: str
    params: tuple
    wall_time: float
    throughput: float
    checksum: str

    def format(self) -> str:
        m, w, n = self.params
        return (f"bench generator={self.generator} m={m} w={w} N={n} "
                f"median_s={self.wall_time:.6f} "
                f"terms_per_s={self.throughput:.0f} sha256={self.checksum[:16]}")


def fixtures_dir() -> str:
    """Fixture directory; BLOCKSEQ_FIXTURES overrides the bundled one."""
    env = os.environ.get("BLOCKSEQ_FIXTURES")
    if env:
        return env
    return str(resources.files(__package__) / "fixtures")


def load_fixture(path: str) -> tuple:
    """Parse a fixture file: header "p=<p> w=<w> N=<N>" then digit lines.
    Returns (PatternSpec, digit array).  Malformed files raise
    FixtureFormatError naming the offending line."""
    with open(path, "r", encoding="ascii") as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise FixtureFormatError(f"{path}:1: empty fixture")
    fields = {}
    for part in lines[0].split():
        if "=" not in part:
            raise FixtureFormatError(f"{path}:1: bad header field {part!r}")
        k, v = part.split("=", 1)
        fields[k] = v
    try:
        p = int(fields["p"])
        w = fields["w"]
        n = int(fields["N"])
    except (KeyError, ValueError) as exc:
        raise FixtureFormatError(f"{path}:1: header needs p=, w=, N= ({exc})")
    digits = []
    for lineno, line in enumerate(lines[1:], start=2):
        s = line.strip()
        if not s:
            continue
        for ch in s:
            if not ch.isdigit() or int(ch) >= p:
                raise FixtureFormatError(
                    f"{path}:{lineno}: invalid digit {ch!r} for base {p}")
            digits.append(int(ch))
    if not digits:
        raise FixtureFormatError(f"{path}:2: fixture has no digits")
    if len(digits) != n:
        raise FixtureFormatError(
            f"{path}: header says N={n} but found {len(digits)} digits")
    return PatternSpec(p, w), np.array(digits, dtype=np.uint8)


def default_scan_length(p: int) -> int:
    """Power-prefix scan length: 2^20 terms for base 2, otherwise p^12
    capped at 2^22 terms."""
    if p == 2:
        return 1 << 20
    return min(p ** 12, 1 << 22)


# ---------------------------------------------------------------------------
# output formatting
# ---------------------------------------------------------------------------

def format_sequence(values: np.ndarray, spec: PatternSpec, fmt: str) -> str:
    if fmt == "plain":
        return digit_string(values, spec.base) + "\n"
    if fmt == "bfile":
        return "".join(f"{n} {int(v)}\n" for n, v in enumerate(values))
    if fmt == "table":
        width = len(str(len(values) - 1))
        lines = [f"{'n':>{width}}  a(n)"]
        lines += [f"{n:>{width}}  {int(v)}" for n, v in enumerate(values)]
        return "\n".join(lines) + "\n"
    if fmt == "report":
        header = (f"p={spec.base} w={digit_string(spec.pattern, spec.base)} "
                  f"N={len(values)}")
        return header + "\n" + digit_string(values, spec.base) + "\n"
    raise InvalidPatternError(f"unknown output format {fmt!r}")


def _emit(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="ascii") as fh:
            fh.write(text)


# ---------------------------------------------------------------------------
# subcommand bodies (raise on failure; run() maps exceptions to codes)
# ---------------------------------------------------------------------------

def _cmd_generate(cfg: RunConfig) -> int:
    spec = cfg.spec()
    values = generate(spec, cfg.count)
    _emit(format_sequence(values, spec, cfg.output_format), cfg.output_path)
    return EXIT_OK


def _cmd_verify(cfg: RunConfig) -> int:
    spec = cfg.spec()
    n = cfg.count
    legs = {"window": generate(spec, n)}
    if spec.modulus_is_prime:
        legs["morphism"] = expand_fixed_point(build_morphism(spec), n)
    else:
        print(f"note: base {spec.base} is composite; "
              "checking window vs. oracle only")
    legs["oracle"] = a_prefix(spec, n)
    names = list(legs)
    base_name = names[0]
    for other in names[1:]:
        diff = np.nonzero(legs[base_name] != legs[other])[0]
        if diff.size:
            i = int(diff[0])
            print(f"FAIL {spec} N={n}: {base_name} and {other} disagree at "
                  f"n={i} ({int(legs[base_name][i])} vs {int(legs[other][i])})")
            return EXIT_VERIFY
    print(f"PASS {spec} N={n}: {', '.join(names)} agree")
    return EXIT_OK


def _cmd_blocks(cfg: RunConfig) -> int:
    spec = cfg.spec()
    prefix = generate(spec, cfg.count)
    is_type2 = classify_range(spec, prefix)  # raises on any violation
    n2 = int(is_type2.sum())
    n1 = int(is_type2.size - n2)
    lines = [
        f"claim=block-dichotomy params=[{spec}] scan={cfg.count} "
        f"evidence=[type1={n1},type2={n2}] verdict=PASS",
    ]
    _emit("\n".join(lines) + "\n", cfg.output_path)
    return EXIT_OK


def _cmd_powers(cfg: RunConfig) -> int:
    spec = cfg.spec()
    n = cfg.scan_length or default_scan_length(spec.base)
    reports = [
        check_multiple_property(spec, n),
        check_power_exclusions(spec, n),
    ]
    _emit("\n".join(r.format() for r in reports) + "\n", cfg.output_path)
    return EXIT_OK


def _cmd_series(cfg: RunConfig) -> int:
    spec = cfg.spec()
    print(f"seed={cfg.seed}")
    res = functional_equation_residual(spec, cfg.order, seed=cfg.seed)
    first = res.first_nonzero()
    lines = []
    if first is None:
        lines.append(f"claim=functional-equation params=[{spec}] "
                     f"scan={cfg.order} evidence=[] verdict=PASS")
    else:
        lines.append(f"claim=functional-equation params=[{spec}] "
                     f"scan={cfg.order} evidence=[first_nonzero={first}] "
                     f"verdict=FAIL")
    ev = degree_evidence(spec, cfg.order, seed=cfg.seed)
    lines.append(ev.format())
    _emit("\n".join(lines) + "\n", cfg.output_path)
    return EXIT_OK if first is None and ev.verdict == "PASS" else EXIT_VERIFY


def _time_passes(fn, passes: int) -> tuple:
    fn()  # warm-up (JIT, page faults, allocator)
    times = []
    out = None
    for _ in range(passes):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times), out


def bench_generators(spec: PatternSpec, n_terms: int,
                     passes: int = 5) -> list:
    """Warm up then time each generator (median of `passes`); checksums
    must agree across generators."""
    jobs = [("window", lambda: generate(spec, n_terms))]
    if spec.modulus_is_prime:
        mu = build_morphism(spec)
        jobs.append(("morphism", lambda: expand_fixed_point(mu, n_terms)))
    jobs.append(("oracle", lambda: a_prefix(spec, n_terms)))

    records = []
    for name, fn in jobs:
        wall, out = _time_passes(fn, passes)
        digest = hashlib.sha256(np.ascontiguousarray(out).tobytes()).hexdigest()
        records.append(BenchRecord(
            generator=name,
            params=(spec.base, digit_string(spec.pattern, spec.base), n_terms),
            wall_time=wall,
            throughput=n_terms / wall,
            checksum=digest))
    checksums = {r.checksum for r in records}
    if len(checksums) != 1:
        raise VerificationError(
            f"generator outputs disagree for {spec}: "
            + ", ".join(f"{r.generator}={r.checksum[:12]}" for r in records))
    return records


def _cmd_bench(cfg: RunConfig) -> int:
    spec = cfg.spec()
    records = bench_generators(spec, cfg.count)
    text = "\n".join(r.format() for r in records) + "\n"
    by_name = {r.generator: r for r in records}
    ordered = True
    if "morphism" in by_name:
        ordered = (by_name["window"].throughput >= by_name["morphism"].throughput
                   > by_name["oracle"].throughput)
    else:
        ordered = by_name["window"].throughput > by_name["oracle"].throughput
    text += f"ordering window>=morphism>oracle: {'PASS' if ordered else 'FAIL'}\n"
    _emit(text, cfg.output_path)
    return EXIT_OK if ordered else EXIT_VERIFY


_HANDLERS = {
    "generate": _cmd_generate,
    "verify": _cmd_verify,
    "blocks": _cmd_blocks,
    "powers": _cmd_powers,
    "series": _cmd_series,
    "bench": _cmd_bench,
}


def run(cfg: RunConfig) -> int:
    """Execute one configuration and return the process exit code."""
    try:
        if cfg.count < 1:
            raise InvalidPatternError("count must be >= 1")
        spec = cfg.spec()  # validates base and digits
        if cfg.subcommand in PRIME_ONLY and not spec.modulus_is_prime:
            print(f"error: subcommand {cfg.subcommand!r} requires a prime "
                  f"base, got {spec.base}", file=sys.stderr)
            return EXIT_USAGE
        return _HANDLERS[cfg.subcommand](cfg)
    except (InvalidBaseError, InvalidPatternError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ClaimViolationError, VerificationError) as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (OSError, FixtureFormatError) as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except BlockseqError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="blockseq",
        description="Generate and verify block-counting sequences a_{m;w}(n).")
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name, help_text in [
        ("generate", "emit the first N terms (window generator)"),
        ("verify", "cross-check window / morphism / oracle outputs"),
        ("blocks", "classify p-blocks (prime base only)"),
        ("powers", "power-prefix divisibility and exclusion checks"),
        ("series", "functional-equation residual and degree evidence"),
        ("bench", "time all generators on identical parameters"),
    ]:
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--base", "-m", type=int, required=True,
                        help="expansion base m >= 2")
        sp.add_argument("--pattern", "-w", type=str, required=True,
                        help="pattern digits, e.g. 11 or 201")
        sp.add_argument("--count", "-N", type=int, default=10 ** 5,
                        help="number of sequence terms")
        sp.add_argument("--format", dest="output_format", default="plain",
                        choices=["plain", "table", "bfile", "report"],
                        help="output layout for generated terms")
        sp.add_argument("--out", dest="output_path", default=None,
                        help="write output to this file instead of stdout")
        sp.add_argument("--seed", type=int, default=0,
                        help="seed for randomized spot-checks")
        sp.add_argument("--scan-length", type=int, default=None,
                        help="terms to scan for power prefixes")
        sp.add_argument("--order", type=int, default=10 ** 4,
                        help="series truncation order")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    cfg = RunConfig(
        subcommand=args.subcommand,
        base=args.base,
        pattern=args.pattern,
        count=args.count,
        output_format=args.output_format,
        output_path=args.output_path,
        seed=args.seed,
        scan_length=args.scan_length,
        order=args.order,
    )
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
