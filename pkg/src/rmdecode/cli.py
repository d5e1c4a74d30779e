"""Command-line front end and the on-disk text formats.

WordFile::

    rmword m=<m>
    <2^m characters from 0, 1, ?>

MatrixFile::

    gf2matrix rows=<R> cols=<C>
    <R lines of C characters from 0, 1>

Exit status is 0 on success, 1 when decoding fails and 2 on usage or
format errors. Output files are written only once a command has succeeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
import tempfile
from typing import Sequence

from .channel import ExperimentConfig, TrialReport, bsc, random_error_pattern, run_experiment, trial_rng
from .exceptions import DecodingFailure, IndependenceViolation
from .gf2 import BitMatrix, BitVector
from .pairs import build_tensor_triple
from .rm import ErasureWord, RMCode, encode, erasure_decode, unencode
from .syndecode import DecoderParams, decode

__all__ = [
    "FormatError",
    "main",
    "read_word_file",
    "format_word_file",
    "read_matrix_file",
    "format_matrix_file",
    "report_to_csv",
    "report_to_json",
]

EXIT_OK, EXIT_DECODE, EXIT_USAGE = 0, 1, 2

_WORD_HEADER = re.compile(r"rmword m=(\d+)")
_MATRIX_HEADER = re.compile(r"gf2matrix rows=(\d+) cols=(\d+)")


class FormatError(ValueError):
    """Malformed WordFile or MatrixFile."""


def _lines(text: str) -> list[str]:
    return [line.strip() for line in text.splitlines() if line.strip()]


def read_word_file(text: str) -> tuple[int, ErasureWord]:
    lines = _lines(text)
    if not lines:
        raise FormatError("empty word file")
    header = _WORD_HEADER.fullmatch(lines[0])
    if header is None:
        raise FormatError(f"bad word-file header {lines[0]!r}")
    m = int(header.group(1))
    if len(lines) != 2:
        raise FormatError(f"word file must hold exactly one word, found {len(lines) - 1}")
    body = lines[1]
    if len(body) != 1 << m:
        raise FormatError(f"header says m={m} (length {1 << m}), word has length {len(body)}")
    try:
        return m, ErasureWord.from_str(body)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def read_full_word(text: str) -> tuple[int, BitVector]:
    m, word = read_word_file(text)
    if word.erased:
        raise FormatError("erasures ('?') are not accepted by this command")
    return m, word.values


def format_word_file(m: int, word: BitVector | ErasureWord) -> str:
    return f"rmword m={m}\n{word.to_str()}\n"


def read_matrix_file(text: str) -> BitMatrix:
    lines = _lines(text)
    if not lines:
        raise FormatError("empty matrix file")
    header = _MATRIX_HEADER.fullmatch(lines[0])
    if header is None:
        raise FormatError(f"bad matrix-file header {lines[0]!r}")
    nrows, ncols = int(header.group(1)), int(header.group(2))
    body = lines[1:]
    if len(body) != nrows:
        raise FormatError(f"header says {nrows} rows, found {len(body)}")
    for i, row in enumerate(body):
        if len(row) != ncols or set(row) - {"0", "1"}:
            raise FormatError(f"row {i} is not a {ncols}-character 0/1 string")
    return BitMatrix([BitVector.from_str(row).bits for row in body], ncols)


def format_matrix_file(M: BitMatrix) -> str:
    return "".join([f"gf2matrix rows={M.nrows} cols={M.ncols}\n"] + [s + "\n" for s in M.to_strings()])


def report_to_csv(report: TrialReport, timing: bool = False) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["trial", "independent", "success", "micros"])
    for r in report.results:
        writer.writerow([r.trial, int(r.independent), int(r.success), r.micros if timing else ""])
    s = report.summary()
    buf.write(
        f"# trials={s['trials']} independent={s['independent']} successes={s['successes']} "
        f"independence_fraction={s['independence_fraction']:.6f} "
        f"success_fraction={s['success_fraction']:.6f} weight_bound={s['weight_bound']}\n"
    )
    return buf.getvalue()


def report_to_json(report: TrialReport, timing: bool = False) -> str:
    return json.dumps(report.to_dict(timing=timing), indent=2, sort_keys=True) + "\n"


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="ascii") as fh:
        return fh.read()


def _emit(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".rmdecode-")
    try:
        with os.fdopen(fd, "w", encoding="ascii") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _code_for(args) -> RMCode:
    """``--degree`` names the code directly; ``--r`` names the decoder radius."""
    if args.degree is not None:
        return RMCode(args.m, args.degree)
    return DecoderParams(args.m, args.r).code


def _check_length(m_file: int, m_arg: int) -> None:
    if m_file != m_arg:
        raise FormatError(f"word file has m={m_file} but --m {m_arg} was given")


def cmd_params(args) -> int:
    code = RMCode(args.M, args.R)
    _emit(f"n={code.n}\nk={code.k}\nd={code.d}\nrate={code.rate:.6g}\n", args.output)
    return EXIT_OK


def cmd_encode(args) -> int:
    code = _code_for(args)
    if args.coeffs is not None:
        coeffs = BitVector.from_str(args.coeffs)
        if coeffs.length != code.k:
            raise FormatError(f"{code} takes {code.k} coefficient bits, got {coeffs.length}")
        word = encode(code, coeffs)
    else:
        word = code.random_codeword(trial_rng(args.seed))
    _emit(format_word_file(code.m, word), args.output)
    return EXIT_OK


def cmd_corrupt(args) -> int:
    m, word = read_full_word(_read_input(args.input))
    rng = trial_rng(args.seed)
    if args.t is not None:
        pattern = random_error_pattern(word.length, args.t, rng)
        noisy = word ^ pattern.support
    else:
        noisy, pattern = bsc(word, args.p, rng)
    out = ErasureWord.erase(word, pattern.positions) if args.erase else noisy
    _emit(format_word_file(m, out), args.output)
    print(f"corrupted {pattern.weight} of {word.length} positions", file=sys.stderr)
    return EXIT_OK


def cmd_decode(args) -> int:
    m, word = read_full_word(_read_input(args.input))
    _check_length(m, args.m)
    params = DecoderParams(args.m, args.r)
    try:
        out, errors = decode(word, params, method=args.method, threads=args.threads, return_errors=True)
    except DecodingFailure as exc:
        print(f"decode failed: {exc}", file=sys.stderr)
        return EXIT_DECODE
    print(f"corrected {len(errors)} errors", file=sys.stderr)
    if args.coeffs:
        _emit(unencode(params.code, out).to_str() + "\n", args.output)
    else:
        _emit(format_word_file(m, out), args.output)
    return EXIT_OK


def cmd_erasure_decode(args) -> int:
    m, word = read_word_file(_read_input(args.input))
    _check_length(m, args.m)
    try:
        out = erasure_decode(_code_for(args), word)
    except DecodingFailure as exc:
        print(f"erasure decode failed: {exc}", file=sys.stderr)
        return EXIT_DECODE
    _emit(format_word_file(m, out), args.output)
    return EXIT_OK


def cmd_experiment(args) -> int:
    config = ExperimentConfig(
        m=args.m, r=args.r, seed=args.seed, t=args.t, trials=args.trials,
        mode=args.mode, p=args.p, epsilon=args.epsilon, method=args.method, threads=args.threads,
    )
    try:
        report = run_experiment(config)
    except IndependenceViolation as exc:
        print(f"implementation error: {exc}", file=sys.stderr)
        return EXIT_DECODE
    text = report_to_json(report, args.timing) if args.json else report_to_csv(report, args.timing)
    _emit(text, args.output)
    return EXIT_OK


def cmd_general_decode(args) -> int:
    with open(args.parity, encoding="ascii") as fh:
        H = read_matrix_file(fh.read())
    received = read_matrix_file(_read_input(args.input))
    emb = build_tensor_triple(H)
    if received.ncols != emb.n:
        raise FormatError(f"embedded code has length {emb.n}, input rows have length {received.ncols}")
    decoded = []
    for i, y in enumerate(received.rows()):
        try:
            decoded.append(emb.decode(y))
        except DecodingFailure as exc:
            print(f"row {i}: decode failed: {exc}", file=sys.stderr)
            return EXIT_DECODE
    _emit(format_matrix_file(BitMatrix.from_vectors(decoded, emb.n)), args.output)
    return EXIT_OK


def _probability(text: str) -> float:
    p = float(text)
    if not 0.0 <= p <= 1.0:
        raise argparse.ArgumentTypeError(f"{text} is not in [0, 1]")
    return p


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError(f"{text} must be at least 1")
    return n


def _nonneg(text: str) -> int:
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError(f"{text} must be non-negative")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rmdecode", description="Reed-Muller syndrome decoding tools.")
    sub = parser.add_subparsers(dest="command", required=True)

    def out_arg(p):
        p.add_argument("-o", "--output", help="output file (default: standard output)")

    def code_args(p):
        p.add_argument("--m", type=_nonneg, required=True)
        g = p.add_mutually_exclusive_group(required=True)
        g.add_argument("--r", type=_nonneg, help="decoder radius; the code is RM(m, m-2r-2)")
        g.add_argument("--degree", type=_nonneg, help="degree of the code RM(m, degree)")

    p = sub.add_parser("params", help="print n, k, d and rate of RM(M, R)")
    p.add_argument("M", type=_nonneg)
    p.add_argument("R", type=_nonneg)
    out_arg(p)
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("encode", help="encode coefficients or a seeded random message")
    code_args(p)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--coeffs", help="coefficient bits in graded monomial order")
    src.add_argument("--seed", type=_nonneg)
    out_arg(p)
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("corrupt", help="flip or erase seeded random positions")
    p.add_argument("input", help="WordFile, or - for standard input")
    how = p.add_mutually_exclusive_group(required=True)
    how.add_argument("--t", type=_nonneg, help="exact number of positions")
    how.add_argument("--p", type=_probability, help="per-bit probability")
    p.add_argument("--seed", type=_nonneg, required=True)
    p.add_argument("--erase", action="store_true", help="erase instead of flipping")
    out_arg(p)
    p.set_defaults(func=cmd_corrupt)

    p = sub.add_parser("decode", help="correct errors in RM(m, m-2r-2)")
    p.add_argument("input", help="WordFile, or - for standard input")
    p.add_argument("--m", type=_nonneg, required=True)
    p.add_argument("--r", type=_nonneg, required=True)
    p.add_argument("--method", choices=("batched", "scan"), default="batched")
    p.add_argument("--threads", type=_positive, default=1)
    p.add_argument("--coeffs", action="store_true", help="print the coefficient bits instead of the word")
    out_arg(p)
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("erasure-decode", help="fill erasures ('?') in a Reed-Muller word")
    p.add_argument("input", help="WordFile, or - for standard input")
    code_args(p)
    out_arg(p)
    p.set_defaults(func=cmd_erasure_decode)

    p = sub.add_parser("experiment", help="Monte-Carlo decoding trials")
    p.add_argument("--m", type=_nonneg, required=True)
    p.add_argument("--r", type=_nonneg, required=True)
    p.add_argument("--t", type=_nonneg)
    p.add_argument("--trials", type=_positive, required=True)
    p.add_argument("--seed", type=_nonneg, required=True)
    p.add_argument("--mode", choices=("fixed", "bsc", "bec"), default="fixed")
    p.add_argument("--p", type=_probability)
    p.add_argument("--epsilon", type=float, default=0.1)
    p.add_argument("--method", choices=("batched", "scan"), default="batched")
    p.add_argument("--threads", type=_positive, default=1)
    p.add_argument("--timing", action="store_true", help="fill the micros column (output no longer reproducible)")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--csv", action="store_true", help="CSV output (default)")
    fmt.add_argument("--json", action="store_true")
    out_arg(p)
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("general-decode", help="decode the tensor-embedded code of a parity check")
    p.add_argument("--parity", required=True, help="MatrixFile holding H")
    p.add_argument("input", help="MatrixFile whose rows are received words, or -")
    out_arg(p)
    p.set_defaults(func=cmd_general_decode)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (FormatError, ValueError, OSError) as exc:
        print(f"rmdecode {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
