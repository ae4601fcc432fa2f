"""Command-line front end.

Exit codes: 0 success (every holds-flag true), 1 a bound failed (with
``--strict``, also any strict-mode failure in reported-slack reports),
2 usage or input error, 3 a size cap was exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import List, Optional

from . import bounds, condlz, empirical, fse, gen, lz78
from .bounds import BoundReport
from .empirical import CapExceededError
from .seqcore import Alphabet, PairedSequence, Sequence, read_sequence, write_sequence, dumps_text

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3
DIGITS = 12


class UsageError(Exception):
    pass


def _num(v):
    if isinstance(v, float):
        return float(f"{v:.{DIGITS}g}")
    if isinstance(v, dict):
        return {k: _num(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_num(x) for x in v]
    return v


def _to_jsonable(obj):
    if isinstance(obj, BoundReport):
        return obj.to_dict(DIGITS)
    if isinstance(obj, dict):
        return {k: _to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_to_jsonable(v) for v in obj]
    return _num(obj)


def _flat_csv(obj: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["field", "value"])
    for k, v in obj.items():
        if isinstance(v, (list, dict)):
            v = json.dumps(v, sort_keys=True)
        elif isinstance(v, float):
            v = f"{v:.{DIGITS}g}"
        w.writerow([k, v])
    return buf.getvalue()


def _emit(obj, as_csv: bool, out=None) -> None:
    out = out or sys.stdout
    if as_csv:
        if isinstance(obj, list) and all(isinstance(r, BoundReport) for r in obj):
            out.write(bounds.reports_to_csv(obj, DIGITS))
        elif isinstance(obj, dict) and "reports" in obj:
            out.write(bounds.reports_to_csv(obj["reports"], DIGITS))
        else:
            out.write(_flat_csv(_to_jsonable(obj)))
        return
    out.write(json.dumps(_to_jsonable(obj), indent=2, sort_keys=True))
    out.write("\n")


# -- input helpers --------------------------------------------------------


def _seq_from(path: Optional[str], text: Optional[str], glyphs: str, what: str) -> Sequence:
    if (path is None) == (text is None):
        raise UsageError(f"give exactly one of a {what} file or --{what}-text" if what != "input"
                         else "give exactly one of an input file or --text")
    if path is not None:
        return read_sequence(path)
    return Sequence.from_text(text, Alphabet.from_glyphs(glyphs))


def _single(args) -> Sequence:
    return _seq_from(args.input, args.text, args.alphabet, "input")


def _pair(args) -> PairedSequence:
    x = _seq_from(args.x, args.x_text, args.alphabet, "x")
    y = _seq_from(args.y, args.y_text, args.y_alphabet or args.alphabet, "y")
    return PairedSequence(x, y)


def _add_single(p: argparse.ArgumentParser) -> None:
    p.add_argument("input", nargs="?", help="sequence file (text or binary with .json sidecar)")
    p.add_argument("--text", help="inline sequence text")
    p.add_argument("--alphabet", default="01", help="glyphs for --text (default: 01)")


def _add_pair(p: argparse.ArgumentParser) -> None:
    p.add_argument("--x", help="x sequence file")
    p.add_argument("--y", help="y sequence file")
    p.add_argument("--x-text", help="inline x sequence")
    p.add_argument("--y-text", help="inline y sequence")
    p.add_argument("--alphabet", default="01", help="glyphs for inline x (and y) text")
    p.add_argument("--y-alphabet", help="glyphs for inline y text if different")


# -- commands -------------------------------------------------------------


def cmd_parse(args) -> int:
    x = _single(args)
    res = lz78.parse(x)
    phrases = [x[s:s + ln].text() for s, ln in res.phrases]
    _emit({"n": len(x), "c": res.c, "last_complete": res.last_complete, "phrases": phrases}, args.csv)
    return EXIT_OK


def cmd_complexity(args) -> int:
    x = _single(args)
    out = {"n": len(x), "c": lz78.phrase_count(x.symbols), "complexity": lz78.complexity(x)}
    if args.k:
        out["k"] = args.k
        out["block_average_complexity"] = lz78.block_average_complexity(x, args.k)
    _emit(out, args.csv)
    return EXIT_OK


def cmd_cond_complexity(args) -> int:
    p = _pair(args)
    res = condlz.joint_parse(p)
    out = {
        "n": len(p),
        "c_joint": res.c_joint,
        "c_x": res.c_x,
        "cond_counts": list(res.cond_counts),
        "cond_complexity": condlz.cond_complexity(p),
        "cond_code_length": condlz.cond_code_length(p),
    }
    if args.k:
        out["k"] = args.k
        out["block_average_cond_complexity"] = condlz.block_average_cond_complexity(p, args.k)
    _emit(out, args.csv)
    return EXIT_OK


_KIND_ALIASES = {"tilde": "tilde_sw"}


def cmd_entropy(args) -> int:
    kind = _KIND_ALIASES.get(args.kind, args.kind)
    if args.cond:
        p = _pair(args)
        j = empirical.pair_dist(p, args.d, kind)
        hx = empirical.entropy(empirical.marginal(j, 0))
        out = {"kind": kind, "d": args.d, "n": len(p), "H_x": hx, "H_xy": empirical.entropy(j),
               "H_y_given_x": empirical.cond_entropy(j), "mutual_information": empirical.mutual_information(j)}
        if args.table:
            sys.stdout.write(empirical.to_csv(j))
            return EXIT_OK
    else:
        if args.x or args.x_text:
            raise UsageError("use --cond for paired input")
        x = _seq_from(args.input, args.text, args.alphabet, "input")
        dist = empirical.dist(x, args.d, kind)
        if args.table:
            sys.stdout.write(empirical.to_csv(dist))
            return EXIT_OK
        out = {"kind": kind, "d": args.d, "n": len(x), "entropy": empirical.entropy(dist),
               "entropy_per_symbol": empirical.entropy(dist) / args.d}
    _emit(out, args.csv)
    return EXIT_OK


def _exit_for(reports: List[BoundReport], strict: bool) -> int:
    if not all(r.holds for r in reports):
        return EXIT_FAIL
    if strict and not all(r.strict_holds for r in reports):
        return EXIT_FAIL
    return EXIT_OK


def _need(args, *names):
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.theorem} needs {' '.join(missing)}")


def _verify_point(args) -> dict:
    t = args.theorem
    if t in ("lb", "lb-nob"):
        _need(args, "k", "l")
        return {"theorem": t, "k": args.k, "l": args.l}
    if t in ("ub", "ub-nob"):
        _need(args, "k", "m")
        return {"theorem": t, "k": args.k, "m": args.m}
    if t == "chain-upper":
        _need(args, "k", "q", "m")
        return {"theorem": t, "k": args.k, "q": args.q, "m": args.m}
    _need(args, "k", "r", "p")
    return {"theorem": t, "k": args.k, "r": args.r, "p": args.p}


def _corpus_targets(paired: bool):
    return gen.corpus_pairs() if paired else gen.corpus()


def cmd_verify(args) -> int:
    point = _verify_point(args)
    paired = args.theorem in bounds.PAIR_THEOREMS
    if args.corpus:
        targets = _corpus_targets(paired)
        reports = []
        skipped = []
        for name, tgt in targets:
            try:
                rep = bounds.evaluate_point(tgt, point)
            except CapExceededError:
                raise
            except ValueError as exc:
                skipped.append({"target": name, "reason": str(exc)})
                continue
            rep.notes.append(f"target={name}")
            reports.append(rep)
        if args.csv:
            _emit(reports, True)
        else:
            _emit({"reports": reports, "skipped": skipped}, False)
        return _exit_for(reports, args.strict)
    tgt = _pair(args) if paired else _seq_from(args.input, args.text, args.alphabet, "input")
    rep = bounds.evaluate_point(tgt, point)
    _emit([rep], args.csv)
    return _exit_for([rep], args.strict)


def cmd_rho_pm(args) -> int:
    p = _pair(args)
    hi, lo = bounds.rho_plus_minus(p, args.k)
    _emit({"n": len(p), "k": args.k, "rho_plus": hi, "rho_minus": lo, "gap": hi - lo,
           "one_sided_chain_gap": bounds.chain_gap(p, args.k)}, args.csv)
    return EXIT_OK


def cmd_kraft(args) -> int:
    e = fse.load_encoder(args.encoder)
    horizon = args.horizon or max(2 * e.states, args.l)
    il = fse.is_information_lossless(e, horizon)
    bound = fse.kraft_bound(e.states, e.alpha, args.l)
    states = [args.z] if args.z is not None else list(range(e.states))
    rows = []
    for z in states:
        k = fse.kraft_sum(e, z, args.l)
        rows.append({"z": z, "kraft_sum": float(k), "exact": f"{k.numerator}/{k.denominator}",
                     "within_bound": float(k) <= bound})
    out = {"states": e.states, "alpha": e.alpha, "l": args.l, "horizon": horizon,
           "information_lossless": il, "bound": bound, "sums": rows}
    _emit(out, args.csv)
    if args.strict and il and not all(r["within_bound"] for r in rows):
        return EXIT_FAIL
    return EXIT_OK


def cmd_rho_s(args) -> int:
    x = _single(args)
    horizon = args.horizon or 2 * args.s
    rho = fse.brute_force_rho_s(x, args.s, args.max_bits, horizon)
    c = lz78.phrase_count(x.symbols)
    _emit({"n": len(x), "s": args.s, "max_output_bits": args.max_bits, "horizon": horizon,
           "rho_s": rho, "complexity": lz78.complexity(x),
           "zl_lower_bound": bounds.zl_lower_bound(c, len(x), args.s),
           "epsilon2": bounds.epsilon2(len(x), args.s, x.alpha)}, args.csv)
    return EXIT_OK


def _write_or_print(seq: Sequence, path: Optional[str], binary: bool) -> None:
    if path:
        write_sequence(seq, path, binary)
    else:
        sys.stdout.write(dumps_text(seq))


def _floats(text: str) -> List[float]:
    return [float(v) for v in text.split(",")]


def cmd_gen(args) -> int:
    g = args.generator
    if g == "iid":
        probs = _floats(args.probs) if args.probs else None
        _write_or_print(gen.iid(args.alpha, args.n, probs, args.seed), args.out, args.binary)
    elif g == "markov":
        rows = [_floats(r) for r in args.transition.split(";")]
        _write_or_print(gen.markov(len(rows), args.n, rows, args.seed), args.out, args.binary)
    elif g == "periodic":
        alphabet = Alphabet.from_glyphs(args.alphabet) if args.alphabet else None
        _write_or_print(gen.periodic(args.pattern, args.n, alphabet), args.out, args.binary)
    else:
        segs = [int(v) for v in args.segments.split(",")]
        p = gen.oscillating_pair(segs, args.seed, args.factor)
        if args.out:
            write_sequence(p.x, f"{args.out}.x.txt")
            write_sequence(p.y, f"{args.out}.y.txt")
        else:
            _emit({"x": p.x.text(), "y": p.y.text(), "segments": segs}, False)
    return EXIT_OK


def _sweep_target(spec: dict, base: str):
    def load(key):
        path = spec[key]
        return read_sequence(path if os.path.isabs(path) else os.path.join(base, path))

    if "y" in spec:
        return PairedSequence(load("x"), load("y"))
    key = "input" if "input" in spec else "x"
    return load(key)


def _run_sweep(name: str, target, grid, jobs: int) -> dict:
    res = bounds.sweep(target, grid, jobs=jobs, raise_errors=False)
    for r in res.reports:
        r.notes.append(f"target={name}")
    return {"target": name, "reports": res.reports, "diagnostics": res.diagnostics,
            "errors": [{"point": pt, "error": msg} for pt, msg in res.errors]}


def cmd_sweep(args) -> int:
    results = []
    if args.corpus:
        for name, tgt in gen.corpus() + gen.corpus_pairs():
            results.append(_run_sweep(name, tgt, None, args.jobs))
    else:
        if not args.spec:
            raise UsageError("sweep needs a grid spec file or --corpus")
        with open(args.spec, encoding="utf-8") as fh:
            spec = json.load(fh)
        target = _sweep_target(spec, os.path.dirname(os.path.abspath(args.spec)))
        results.append(_run_sweep(spec.get("name", args.spec), target, spec.get("grid"), args.jobs))
    reports = [r for res in results for r in res["reports"]]
    errors = [e for res in results for e in res["errors"]]
    if args.csv:
        _emit(reports, True)
    else:
        _emit({"results": results}, False)
    if any(e["error"].startswith("CapExceededError") for e in errors):
        return EXIT_CAP
    if errors:
        return EXIT_USAGE
    return _exit_for(reports, args.strict)


# -- parser ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lzchain", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--csv", action="store_true", help="emit CSV instead of JSON")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", parents=[common], help="incremental parse: phrases and c")
    _add_single(p)
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("complexity", parents=[common], help="LZ complexity, optionally block-averaged")
    _add_single(p)
    p.add_argument("--k", type=int)
    p.set_defaults(func=cmd_complexity)

    p = sub.add_parser("cond-complexity", parents=[common], help="conditional LZ complexity of y given x")
    _add_pair(p)
    p.add_argument("--k", type=int)
    p.set_defaults(func=cmd_cond_complexity)

    p = sub.add_parser("entropy", parents=[common], help="empirical block entropy")
    _add_single(p)
    p.add_argument("--x")
    p.add_argument("--y")
    p.add_argument("--x-text")
    p.add_argument("--y-text")
    p.add_argument("--y-alphabet")
    p.add_argument("--kind", choices=["nob", "sw", "csw", "tilde", "tilde_sw"], default="csw")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--cond", action="store_true", help="H(Y^d|X^d) of a pair")
    p.add_argument("--table", action="store_true", help="print the probability table as CSV")
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("verify", parents=[common], help="evaluate one bound")
    p.add_argument("theorem", choices=list(bounds.SEQUENCE_THEOREMS) + list(bounds.PAIR_THEOREMS))
    _add_single(p)
    p.add_argument("--x")
    p.add_argument("--y")
    p.add_argument("--x-text")
    p.add_argument("--y-text")
    p.add_argument("--y-alphabet")
    for name in ("k", "l", "m", "q", "r", "p"):
        p.add_argument(f"--{name}", type=int)
    p.add_argument("--corpus", action="store_true", help="run over the built-in corpus")
    p.add_argument("--strict", action="store_true", help="exit 1 on any strict-mode failure")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("rho-pm", parents=[common], help="block-averaged max/min chain decompositions")
    _add_pair(p)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_rho_pm)

    p = sub.add_parser("kraft", parents=[common], help="Kraft sums of an encoder file")
    p.add_argument("--encoder", required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--z", type=int)
    p.add_argument("--horizon", type=int)
    p.add_argument("--strict", action="store_true")
    p.set_defaults(func=cmd_kraft)

    p = sub.add_parser("rho-s", parents=[common], help="brute-force s-state compressibility (tiny inputs)")
    _add_single(p)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--max-bits", type=int, default=2)
    p.add_argument("--horizon", type=int)
    p.set_defaults(func=cmd_rho_s)

    p = sub.add_parser("gen", help="generate sequences")
    gsub = p.add_subparsers(dest="generator", required=True)
    g = gsub.add_parser("iid")
    g.add_argument("--alpha", type=int, default=2)
    g.add_argument("--probs", help="comma-separated probabilities")
    g = gsub.add_parser("markov")
    g.add_argument("--transition", required=True, help="rows separated by ';', entries by ','")
    g = gsub.add_parser("periodic")
    g.add_argument("--pattern", required=True)
    g.add_argument("--alphabet", help="declared glyphs (default: pattern's characters)")
    g = gsub.add_parser("oscillating")
    g.add_argument("--segments", required=True, help="comma-separated segment lengths")
    g.add_argument("--factor", type=float, default=4)
    for g in gsub.choices.values():
        if g.prog.endswith("oscillating"):
            g.add_argument("--out", help="output prefix (writes <prefix>.x.txt and <prefix>.y.txt)")
        else:
            g.add_argument("--n", type=int, required=True)
            g.add_argument("--out", help="output file (default: stdout)")
            g.add_argument("--binary", action="store_true", help="byte format with JSON sidecar")
        g.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("sweep", parents=[common], help="evaluate a parameter grid")
    p.add_argument("spec", nargs="?", help="JSON grid spec: {input|x,y, grid: [...]}")
    p.add_argument("--corpus", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--strict", action="store_true")
    p.set_defaults(func=cmd_sweep)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
