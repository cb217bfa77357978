"""Command-line interface.

Exit codes: 0 match found, 1 nothing found, 2 usage or I/O error.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from collections import Counter
from pathlib import Path

from .bench import BenchRow, alphabet_sweep, ratios, size_sweep, spread
from .compare import compare_setstrings
from .generate import GenSpec, generate
from .matcher import find_matches
from .modhash import select_primes
from .offsets import construct_bijection, exact_compare
from .oracle import OracleBudget, oracle_find_matches
from .setstring import Alphabet, Bijection, ParseError, read_setstrings, serialize_setstring

EXIT_FOUND, EXIT_NONE, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


def _read(paths, normalize):
    docs = []
    for p in paths:
        try:
            docs.append(Path(p).read_bytes())
        except OSError as exc:
            raise UsageError(f"cannot read {p}: {exc.strerror}") from None
    try:
        return read_setstrings(docs, normalize=normalize)
    except ParseError as exc:
        raise UsageError(str(exc)) from None


def _witness(pi: Bijection | None, alphabet: Alphabet):
    if pi is None:
        return None
    return {alphabet.token(a): alphabet.token(b) for a, b in sorted(pi.forward.items())}


def _witness_text(w) -> str:
    return " ".join(f"{a}={b}" for a, b in w.items())


def _emit(out, fmt, record):
    if fmt == "json":
        out.write(json.dumps(record, sort_keys=True) + "\n")


def cmd_compare(args, out) -> int:
    alphabet, (s1, s2) = _read([args.first, args.second], args.normalize_alphabet)
    if len(s1) != len(s2):
        raise UsageError(f"lengths differ: {len(s1)} vs {len(s2)}")
    m = len(s1)
    params = None
    if m:
        sigma = max(1, len(s1.characters() | s2.characters()))
        params = select_primes(m, m, sigma, seed=args.seed, repetitions=args.reps)
    counter: Counter = Counter()
    hit = compare_setstrings(s1, s2, params, counter=counter)
    record = {
        "result": "match" if hit else "no-match",
        "params": [inst.to_text() for inst in params.instances()] if params else [],
        "char_ops": counter["char_ops"],
    }
    outcome = hit
    if args.verify:
        exact = exact_compare(s1, s2)
        record["verified"] = exact
        if exact:
            record["witness"] = _witness(construct_bijection(s1, s2), alphabet)
        outcome = exact
    if args.format == "json":
        _emit(out, "json", record)
    else:
        out.write(record["result"] + "\n")
        for line in record["params"]:
            out.write(f"# params: {line}\n")
        out.write(f"# char_ops={record['char_ops']}\n")
        if args.verify:
            out.write(f"verified: {'match' if record['verified'] else 'no-match'}\n")
            if "witness" in record:
                out.write(f"witness: {_witness_text(record['witness'])}\n")
    return EXIT_FOUND if outcome else EXIT_NONE


def _summary(p, t, report, seed):
    return {
        "n": len(t),
        "m": len(p),
        "N": t.size,
        "M": p.size,
        "k": len(report.params_echo),
        "seed": seed,
        "steps": sum(report.steps),
        "candidates": len(report.candidates),
    }


def cmd_match(args, out) -> int:
    alphabet, (p, t) = _read([args.pattern, args.text], args.normalize_alphabet)
    if len(p) < 1 or len(p) > len(t):
        raise UsageError(f"need 1 <= m <= n (m={len(p)}, n={len(t)})")
    sigma = max(1, len(p.characters() | t.characters()))
    params = select_primes(len(t), len(p), sigma, seed=args.seed, repetitions=args.reps)
    t0 = time.perf_counter()
    report = find_matches(p, t, params, verify=args.verify, jobs=args.jobs)
    elapsed = time.perf_counter() - t0
    summary = _summary(p, t, report, args.seed)
    if args.format == "json":
        for j, pos in enumerate(report.candidates):
            rec = {"pos": pos, "verified": report.verified[j] if args.verify else None}
            if args.verify and report.witnesses[j] is not None:
                rec["witness"] = _witness(report.witnesses[j], alphabet)
            _emit(out, "json", rec)
        _emit(out, "json", {"summary": summary, "params": report.params_echo})
    else:
        for pos in report.matches:
            out.write(f"{pos}\n")
        out.write("# " + " ".join(f"{k}={v}" for k, v in summary.items()) + "\n")
        for line in report.params_echo:
            out.write(f"# params: {line}\n")
    # wall time kept off stdout so reports stay byte-identical across runs
    print(f"elapsed: {elapsed:.4f}s", file=sys.stderr)
    return EXIT_FOUND if report.matches else EXIT_NONE


def cmd_oracle(args, out) -> int:
    _, (p, t) = _read([args.pattern, args.text], args.normalize_alphabet)
    if len(p) < 1 or len(p) > len(t):
        raise UsageError(f"need 1 <= m <= n (m={len(p)}, n={len(t)})")
    truth = oracle_find_matches(p, t, OracleBudget(max_alphabet=args.max_alphabet))
    sigma = max(1, len(p.characters() | t.characters()))
    params = select_primes(len(t), len(p), sigma, seed=args.seed, repetitions=args.reps)
    report = find_matches(p, t, params, jobs=args.jobs)
    cand = set(report.candidates)
    missing = sorted(set(truth) - cand)
    extra = sorted(cand - set(truth))
    if args.format == "json":
        for pos in truth:
            _emit(out, "json", {"pos": pos})
        _emit(out, "json", {"summary": {"oracle": len(truth), "candidates": len(cand), "missing": missing, "extra": extra}})
    else:
        for pos in truth:
            out.write(f"{pos}\n")
        out.write(f"# oracle={len(truth)} candidates={len(cand)} missing={len(missing)} extra={len(extra)}\n")
    if missing:
        print(f"matcher missed true matches at {missing}", file=sys.stderr)
        return EXIT_ERROR
    return EXIT_FOUND if truth else EXIT_NONE


def cmd_gen(args, out) -> int:
    try:
        spec = GenSpec(n=args.n, m=args.m, sigma=args.sigma, density=args.density, planted=args.planted, seed=args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    inst = generate(spec)
    d = Path(args.out)
    d.mkdir(parents=True, exist_ok=True)
    a = inst.alphabet
    (d / "pattern.txt").write_text(serialize_setstring(inst.pattern, a))
    (d / "text.txt").write_text(serialize_setstring(inst.text, a))
    used = sorted(inst.pattern.characters())
    with open(d / "manifest.jsonl", "w") as fh:
        for pos, pi in inst.plants:
            rec = {"pos": pos, "bijection": {a.token(c): a.token(pi(c)) for c in used}}
            fh.write(json.dumps(rec, sort_keys=True) + "\n")
    for name in ("pattern.txt", "text.txt", "manifest.jsonl"):
        out.write(f"{d / name}\n")
    return EXIT_FOUND


def cmd_bench(args, out) -> int:
    size_rows = size_sweep(args.sizes, m=args.m, sigma=args.sigma, density=args.density, seed=args.seed)
    alpha_rows = alphabet_sweep(args.sizes[0], args.sigmas, m=args.m, density=args.density, seed=args.seed)
    lines = ["\t".join(BenchRow.FIELDS)]
    lines += [r.as_tsv(args.timing) for r in size_rows + alpha_rows]
    lines.append("# size_ratios=" + ",".join(f"{x:.3f}" for x in ratios(size_rows)))
    lines.append(f"# alphabet_spread={spread(alpha_rows):.4f}")
    text = "\n".join(lines) + "\n"
    out.write(text)
    if args.out:
        from .plotting import plot_bench

        d = Path(args.out)
        d.mkdir(parents=True, exist_ok=True)
        (d / "bench.tsv").write_text(text)
        plot_bench(size_rows, alpha_rows, d / "bench.png")
    return EXIT_FOUND


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--reps", type=int, default=None, help="repetitions k (default: chosen from the error bound)")
    common.add_argument("--verify", action="store_true", help="check candidates exactly and emit witnesses")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--normalize-alphabet", action="store_true", help="number tokens in sorted order")

    ap = argparse.ArgumentParser(prog="setpm", description="Set parameterized matching.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compare", parents=[common], help="compare two equal-length set-strings")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("match", parents=[common], help="find all matching windows")
    p.add_argument("pattern")
    p.add_argument("text")
    p.set_defaults(func=cmd_match)

    p = sub.add_parser("oracle", parents=[common], help="brute-force matches, cross-checked with the matcher")
    p.add_argument("pattern")
    p.add_argument("text")
    p.add_argument("--max-alphabet", type=int, default=7)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", parents=[common], help="generate a random instance with planted matches")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--sigma", type=int, required=True)
    p.add_argument("--density", type=float, default=1.0)
    p.add_argument("--planted", type=int, default=0)
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", parents=[common], help="step-count scaling benchmark")
    p.add_argument("--sizes", type=int, nargs="+", default=[100_000, 200_000, 400_000])
    p.add_argument("--sigmas", type=int, nargs="+", default=[4, 64, 4096])
    p.add_argument("--sigma", type=int, default=64, help="alphabet size for the size sweep")
    p.add_argument("--m", type=int, default=16)
    p.add_argument("--density", type=float, default=2.0)
    p.add_argument("--timing", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--out", default=None, help="directory for bench.tsv and bench.png")
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else 0
    if getattr(args, "reps", None) is not None and args.reps < 1:
        print("error: --reps must be >= 1", file=sys.stderr)
        return EXIT_ERROR
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
