"""Command line front end.

Five subcommands: ``analyze`` decides a single grammar, ``normalize`` prints
the analysis-shape grammar, ``enumerate`` lists language words in
lexicographic order, ``crosscheck`` runs both decision routes on one grammar
and rechecks the certificate against the oracle, and ``fuzz`` does the same
over a seeded corpus of random grammars.

Exit codes: 0 carries a verdict, 1 means usage, parse, or resource trouble
(no verdict is printed), 2 means the two routes disagreed or a certificate
failed its recheck.  Code 2 can only arise where both routes run.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from lexorder.decide import (
    ALGORITHMS,
    DecreasingFamily,
    Decision,
    DisagreementError,
    Limits,
    QuasiDenseWitness,
    decide,
    to_report_dict,
    verify_certificate,
)
from lexorder.grammar import Grammar, GrammarError, parse_grammar, format_grammar
from lexorder.normalize import EmptyLanguageError, normalize_pipeline
from lexorder.oracle import enumerate_words, random_grammar

EXIT_VERDICT = 0
EXIT_ERROR = 1
EXIT_DISAGREE = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 on bad usage; route that through our own
    # exit discipline instead, where 2 is reserved for route disagreement.
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _load(path: str) -> Grammar:
    return parse_grammar(Path(path).read_text())


def _limits(args) -> Limits:
    limits = Limits()
    if getattr(args, "max_u0_len", None):
        limits = Limits(max_period_len=args.max_u0_len, max_search_depth=limits.max_search_depth)
    if getattr(args, "max_derivation_depth", None):
        limits = Limits(max_period_len=limits.max_period_len, max_search_depth=args.max_derivation_depth)
    return limits


def _limit_flags(parser) -> None:
    parser.add_argument(
        "--max-u0-len",
        type=int,
        metavar="N",
        help="cap on the period length extracted per component",
    )
    parser.add_argument(
        "--max-derivation-depth",
        type=int,
        metavar="N",
        help="cap on the witness search depth",
    )


def _verdict_word(decision: Decision) -> str:
    if not decision.scattered:
        return "quasi-dense"
    if not decision.well_ordered:
        return "scattered"
    return "well-ordered"


def _certificate_line(decision: Decision) -> str:
    c = decision.certificate
    if c is None:
        return "certificate: none"
    if isinstance(c, QuasiDenseWitness):
        return (
            f"certificate: quasi-dense witness at {c.nonterminal}: "
            f"left={c.left} right={c.right}"
        )
    assert isinstance(c, DecreasingFamily)
    return (
        f"certificate: decreasing family at {c.nonterminal}: "
        f"prefix={c.prefix} pivot={c.pivot} suffix={c.suffix or 'eps'}\n"
        "  words: " + " > ".join(c.words)
    )


def _print_human(decision: Decision) -> None:
    yn = {True: "yes", False: "no"}
    print(f"scattered: {yn[decision.scattered]}")
    print(f"well-ordered: {yn[decision.well_ordered]}")
    print(f"empty word in language: {yn[decision.epsilon_in_language]}")
    print(f"algorithm: {decision.algorithm}")
    print(f"agreement: {yn[decision.agreement]}")
    for comp in decision.components:
        bits = [f"component: {' '.join(comp.members)}", f"height={comp.height}"]
        if comp.recursive:
            bits.append("recursive")
        if comp.period is not None:
            bits.append(f"period={comp.period}")
        print("  ".join(bits))
    print(_certificate_line(decision))


def cmd_analyze(args) -> int:
    g = _load(args.file)
    decision = decide(g, algorithm=args.algorithm, limits=_limits(args))
    payload = to_report_dict(decision)
    if args.certify:
        payload["certificate_verified"] = verify_certificate(decision)
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        _print_human(decision)
        if args.certify:
            verified = payload["certificate_verified"]
            print(f"certificate verified: {'yes' if verified else 'NO'}")
    return EXIT_VERDICT


def cmd_normalize(args) -> int:
    g = _load(args.file)
    norm = normalize_pipeline(g)
    print(f"# empty word in language: {'yes' if norm.had_epsilon else 'no'}")
    if norm.is_degenerate:
        print(f"# language is the single word {norm.degenerate_word or 'eps'}")
    print(format_grammar(norm.grammar), end="")
    return EXIT_VERDICT


def cmd_enumerate(args) -> int:
    g = _load(args.file)
    words = enumerate_words(g, args.max_len)
    if args.count is not None:
        words = words[: args.count]
    bare = all(len(letter) == 1 for letter in g.alphabet.letters)
    for word in words:
        if not word:
            print("eps")
        else:
            print(("" if bare else " ").join(word))
    return EXIT_VERDICT


def cmd_crosscheck(args) -> int:
    g = _load(args.file)
    decision = decide(g, algorithm="both", limits=_limits(args))
    verified = verify_certificate(decision, depth=args.depth)
    print(f"verdict: {_verdict_word(decision)}")
    print("agreement: yes")
    print(_certificate_line(decision))
    print(f"certificate check: {'ok' if verified else 'FAILED'}")
    return EXIT_VERDICT if verified else EXIT_DISAGREE


def _fuzz_row(index: int, decision: Decision | None, verified: bool | None) -> dict:
    if decision is None:
        return {
            "index": index,
            "verdict": "DISAGREE",
            "algorithm": "both",
            "certificate": "none",
            "certificate_ok": "",
            "recursive_components": "",
            "max_period_len": "",
        }
    kinds = {QuasiDenseWitness: "witness", DecreasingFamily: "family", type(None): "none"}
    periods = [len(c.period) for c in decision.components if c.period is not None]
    return {
        "index": index,
        "verdict": _verdict_word(decision),
        "algorithm": decision.algorithm,
        "certificate": kinds[type(decision.certificate)],
        "certificate_ok": "yes" if verified else "no",
        "recursive_components": sum(c.recursive for c in decision.components),
        "max_period_len": max(periods) if periods else "",
    }


def cmd_fuzz(args) -> int:
    if args.count < 1:
        raise UsageError("fuzz: --count must be at least 1")
    limits = _limits(args)
    rows = []
    disagreements = 0
    failures = 0
    for index in range(args.count):
        g = random_grammar(args.seed + index)
        try:
            decision = decide(g, algorithm="both", limits=limits)
        except DisagreementError:
            disagreements += 1
            rows.append(_fuzz_row(index, None, None))
            print(f"{index:4d}  DISAGREE")
            continue
        verified = verify_certificate(decision, depth=args.depth)
        if not verified:
            failures += 1
        rows.append(_fuzz_row(index, decision, verified))
        cert = rows[-1]["certificate"]
        note = "-" if cert == "none" else f"{cert} {'ok' if verified else 'FAILED'}"
        print(f"{index:4d}  {rows[-1]['verdict']:<12}  {note}")
    agreed = args.count - disagreements
    with_cert = sum(1 for r in rows if r["certificate"] not in ("", "none"))
    confirmed = sum(1 for r in rows if r["certificate_ok"] == "yes" and r["certificate"] != "none")
    print(f"{agreed}/{args.count} agreed, {confirmed}/{with_cert} certificates confirmed")
    if args.report_dir:
        from lexorder import report

        for row in rows:
            row["seed"] = args.seed + row["index"]
            row["word_count"] = _word_count(args.seed + row["index"], args.max_len)
        written = report.write_corpus_reports(rows, args.report_dir)
        for path in written:
            print(f"wrote {path}")
    return EXIT_DISAGREE if disagreements or failures else EXIT_VERDICT


def _word_count(seed: int, max_len: int) -> int | str:
    g = random_grammar(seed)
    try:
        return len(enumerate_words(g, max_len))
    except RuntimeError:
        return ""


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="lexorder",
        description="Decide whether the lexicographic ordering of a context-free "
        "language is scattered and whether it is a well-ordering.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="decide one grammar and print the verdict")
    p.add_argument("file", help="grammar file")
    p.add_argument("--algorithm", choices=ALGORITHMS, default="both")
    p.add_argument("--json", action="store_true", help="emit the report as JSON")
    p.add_argument(
        "--certify",
        action="store_true",
        help="recheck the certificate against the oracle before reporting",
    )
    _limit_flags(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("normalize", help="print the grammar in analysis shape")
    p.add_argument("file", help="grammar file")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("enumerate", help="list language words in lexicographic order")
    p.add_argument("file", help="grammar file")
    p.add_argument("--max-len", type=int, default=8, metavar="N")
    p.add_argument("--count", type=int, default=None, metavar="N", help="print at most N words")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser(
        "crosscheck",
        help="run both decision routes on one grammar and recheck the certificate",
    )
    p.add_argument("file", help="grammar file")
    p.add_argument("--depth", type=int, default=None, metavar="N", help="oracle search depth")
    _limit_flags(p)
    p.set_defaults(func=cmd_crosscheck)

    p = sub.add_parser("fuzz", help="cross-validate both routes over random grammars")
    p.add_argument("--count", type=int, default=100, metavar="N")
    p.add_argument("--seed", type=int, default=0, metavar="K")
    p.add_argument("--max-len", type=int, default=8, metavar="M",
                   help="enumeration bound for the corpus report")
    p.add_argument("--depth", type=int, default=None, metavar="D", help="oracle search depth")
    p.add_argument("--report-dir", metavar="DIR",
                   help="write corpus.csv and overview figures to this directory")
    _limit_flags(p)
    p.set_defaults(func=cmd_fuzz)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_ERROR
    except DisagreementError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_DISAGREE
    except (GrammarError, EmptyLanguageError, RuntimeError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
