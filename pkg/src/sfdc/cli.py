"""Command-line front end.

Exit codes: 0 success, 1 mathematical verification failure, 2 usage or
input errors.  Set SFDC_CACHE_DIR to persist the reduction memo cache
between invocations.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .algebra import RationalFunctionN, substitute
from .conjecture import verify_conjectures
from .errors import SizeLimitError
from .linking import LinkSpec, multi_link, OverlapError
from .reduction import default_reducer, reduce_word
from .sphere import get_oracle, pick_points, BasePointError
from .words import (Word, parse_word, canonicalize, enumerate_words, render,
                    double_factorial, LetterCountError, EmptyTokenError,
                    UnsupportedFormatError, DEFAULT_K_CAP)

_USAGE_ERRORS = (LetterCountError, EmptyTokenError, UnsupportedFormatError,
                 SizeLimitError, OverlapError, IndexError, ValueError)


def _cache_path():
    root = os.environ.get("SFDC_CACHE_DIR")
    if not root:
        return None
    return os.path.join(root, "reduce-cache.json")


def _load_cache():
    path = _cache_path()
    if path and os.path.exists(path):
        with open(path, "r", encoding="utf-8") as fh:
            default_reducer().import_cache(json.load(fh))


def _save_cache():
    path = _cache_path()
    if not path:
        return
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(default_reducer().export_cache(), fh)


def _cmd_words(args):
    ws = enumerate_words(args.k, cap=max(args.k, DEFAULT_K_CAP) if args.force else DEFAULT_K_CAP)
    if args.count:
        print(len(ws))
        assert len(ws) == double_factorial(2 * args.k - 1)
    else:
        for w in ws:
            print(w.to_text())
    return 0


def _cmd_reduce(args):
    w = parse_word(args.word)
    poly = reduce_word(w)
    if args.json:
        obj = {"word": w.to_text(), "canonical": canonicalize(w).to_text(),
               "k": w.k, "poly": poly.to_json_obj()}
        print(json.dumps(obj))
    else:
        print(poly.to_string())
    return 0


def _cmd_link(args):
    w = parse_word(args.word)
    spec = LinkSpec.from_string(args.pairs)
    res = multi_link(w, spec)
    value = reduce_word(res.word).scale(RationalFunctionN.n_power(res.circles))
    print("circles: %d" % res.circles)
    print("word: %s" % (res.word.to_text() or "(empty)"))
    print("value: %s" % value.to_string())
    return 0


def _cmd_conjecture(args):
    samples = tuple(int(x) for x in args.n_samples.split(",")) if args.n_samples else (2, 3, 5, 7, 11)
    report = verify_conjectures(args.k, mode=args.mode, n_samples=samples)
    if args.json:
        print(json.dumps(report.to_json_obj()))
    else:
        print("\n".join(report.summary_lines()))
    return 0 if report.all_pass else 1


def _cmd_oracle_check(args):
    oracle = get_oracle(args.n, args.p)
    points = pick_points(oracle.f, 2)
    if args.word:
        words = [canonicalize(parse_word(args.word))]
    else:
        words = []
        for k in range(args.max_k + 1):
            words.extend(enumerate_words(k))
    failures = 0
    print("n=%d p=%d λ=%d θ=%d; points %s" %
          (args.n, args.p, oracle.lam, oracle.theta_value,
           ", ".join("(%s)" % ",".join(str(c) for c in q) for q in points)))
    for w in words:
        expected = substitute(reduce_word(w), oracle.theta_value, 1, args.n)
        ratios = [oracle.contract_word(w, q) for q in points]
        ok = all(r == expected for r in ratios)
        failures += 0 if ok else 1
        print("%-12s expected %-12s oracle %-12s %s" %
              (w.to_text() or "(empty)", expected, ratios[0], "ok" if ok else "MISMATCH"))
    vol = oracle.contract_volume(0, sigma_seed=args.rng_seed)
    print("volume contraction (k=0, seed %d): %s %s" %
          (args.rng_seed, vol, "ok" if vol == 0 else "MISMATCH"))
    failures += 0 if vol == 0 else 1
    print("verdict: %s" % ("all agree" if failures == 0 else "%d mismatches" % failures))
    return 0 if failures == 0 else 1


def _cmd_table(args):
    rows = []
    for k in range(1, args.max_k + 1):
        for w in enumerate_words(k):
            rows.append((w.to_text(), render(w, "ascii-arc").text,
                         reduce_word(w)))
    if args.format == "json":
        print(json.dumps([{"word": t, "diagram": d, "poly": p.to_json_obj()}
                          for t, d, p in rows]))
    elif args.format == "csv":
        import csv
        writer = csv.writer(sys.stdout)
        writer.writerow(["word", "diagram", "polynomial"])
        for t, d, p in rows:
            writer.writerow([t, d, p.to_string(unicode_theta=False)])
    else:
        print("| word | diagram | polynomial |")
        print("| --- | --- | --- |")
        for t, d, p in rows:
            print("| %s | %s | %s |" % (t, d.replace("\n", "<br>"), p.to_string()))
    return 0


def build_parser():
    ap = argparse.ArgumentParser(prog="sfdc",
                                 description="Exact diagram calculus for parallel-tensor "
                                             "derivatives of sphere-type eigenfunctions.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("words", help="enumerate canonical words of half-length k")
    p.add_argument("--k", type=int, required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--list", action="store_true", default=True)
    g.add_argument("--count", action="store_true")
    p.add_argument("--force", action="store_true", help="lift the size cap")
    p.set_defaults(func=_cmd_words)

    p = sub.add_parser("reduce", help="reduce a word to its polynomial")
    p.add_argument("word")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("link", help="apply linking operators to a word")
    p.add_argument("word")
    p.add_argument("--pairs", required=True, help="i:j[,i:j...] (1-based positions)")
    p.set_defaults(func=_cmd_link)

    p = sub.add_parser("conjecture", help="solve the linking system and verify the claims")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--mode", choices=("symbolic", "numeric"), default="symbolic")
    p.add_argument("--n-samples", default=None, help="comma-separated integers for numeric mode")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_conjecture)

    p = sub.add_parser("oracle-check", help="compare the engine against the sphere computation")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--max-k", type=int, default=3)
    p.add_argument("--word", default=None)
    p.add_argument("--rng-seed", type=int, default=0)
    p.set_defaults(func=_cmd_oracle_check)

    p = sub.add_parser("table", help="word/diagram/polynomial table")
    p.add_argument("--max-k", type=int, required=True)
    p.add_argument("--format", choices=("md", "csv", "json"), default="md")
    p.set_defaults(func=_cmd_table)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        _load_cache()
        code = args.func(args)
        _save_cache()
        return code
    except BasePointError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except _USAGE_ERRORS as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
