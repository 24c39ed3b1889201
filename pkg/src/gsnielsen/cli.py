"""Command-line entry point: ``gsnielsen <command> ...``.

Exit codes: 0 ok, 1 a verification failed, 2 bad input, 3 degree guard,
4 cap exceeded, 5 non-generating seed.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .catalog import ScenarioPair, X, Y, z
from .goldens import format_report, run_scenarios
from .grammar import WordSyntaxError, parse_element, parse_tuple
from .groups import AbelianGroup, CapExceeded, QuotientGroup, enumerate_elements, parse_group
from .nielsen import (
    MoveSet,
    NonGeneratingSeed,
    certify_distinct,
    explore_exhaustive,
    explore_seeded,
    pair_fingerprint,
    separation_depth,
)
from .perm import cycle_type, format_cycles
from .tree import Convention, Word, evaluate, product, project

OUTPUT_DIR_ENV = "GSNIELSEN_OUTPUT_DIR"
DEFAULT_MAX_DEGREE = 3 ** 10

EXIT_FAIL, EXIT_PARSE, EXIT_DEGREE, EXIT_CAP, EXIT_SEED = 1, 2, 3, 4, 5


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


@dataclass
class RunConfig:
    command: str
    p: int = 3
    depth: int = 4
    words: list = field(default_factory=list)
    group: str = ""
    moveset: str = "nielsen"
    caps: dict = field(default_factory=dict)
    output_format: str = "text"
    deterministic: bool = True
    threads: int = 1
    max_degree: int = DEFAULT_MAX_DEGREE

    def validate(self):
        if self.p < 3:
            raise CliError("--p must be an odd prime >= 3", EXIT_PARSE)
        if self.depth < 0:
            raise CliError("--depth must be >= 0", EXIT_PARSE)
        if self.threads < 1:
            raise CliError("--threads must be >= 1", EXIT_PARSE)
        for name, value in self.caps.items():
            if value is not None and value <= 0:
                raise CliError(f"{name} must be positive", EXIT_PARSE)
        if self.p ** self.depth > self.max_degree:
            raise CliError(f"degree {self.p}^{self.depth} exceeds the guard {self.max_degree} "
                           "(raise it with --max-degree)", EXIT_DEGREE)
        if self.deterministic:
            self.threads = 1


def _emit(args, text: str, doc: dict | None = None, name: str = "report"):
    if args.format == "json" and doc is not None:
        text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    sys.stdout.write(text)
    out_dir = getattr(args, "output_dir", None) or os.environ.get(OUTPUT_DIR_ENV)
    if out_dir:
        path = Path(out_dir)
        path.mkdir(parents=True, exist_ok=True)
        suffix = "json" if args.format == "json" else "txt"
        (path / f"{name}.{suffix}").write_text(text)


def _parse(text: str, p: int):
    try:
        return parse_element(text, p)
    except (WordSyntaxError, ValueError) as exc:
        raise CliError(f"cannot parse {text!r}: {exc}", EXIT_PARSE) from exc


def _parse_pair(text: str, p: int, label: str) -> ScenarioPair:
    try:
        parts = parse_tuple(text, p)
    except (WordSyntaxError, ValueError) as exc:
        raise CliError(f"cannot parse {text!r}: {exc}", EXIT_PARSE) from exc
    if len(parts) != 2:
        raise CliError(f"{label} needs two entries separated by ';'", EXIT_PARSE)
    return ScenarioPair(text.strip(), parts[0], parts[1])


def _group(descriptor: str, max_degree: int):
    try:
        kind = descriptor.split(":", 1)[0].strip().lower()
        if kind == "quotient":
            fields = dict(part.split("=") for part in descriptor.split(":", 1)[1].split(","))
            p, depth = int(fields["p"]), int(fields["depth"])
            if p ** depth > max_degree:
                raise CliError(f"degree {p}^{depth} exceeds the guard {max_degree}", EXIT_DEGREE)
        return parse_group(descriptor)
    except CliError:
        raise
    except (ValueError, KeyError, IndexError) as exc:
        raise CliError(f"bad group descriptor {descriptor!r}: {exc}", EXIT_PARSE) from exc


def _moveset(descriptor: str, k: int, p: int) -> MoveSet:
    if descriptor == "nielsen":
        return MoveSet.nielsen(k)
    if descriptor == "ac":
        return MoveSet.andrews_curtis(k)
    if descriptor.startswith("ac:"):
        words = [_parse(w, p) for w in descriptor[3:].split(",") if w.strip()]
        return MoveSet.andrews_curtis(k, words)
    raise CliError(f"unknown move set {descriptor!r}", EXIT_PARSE)


# --- commands -----------------------------------------------------------------


def cmd_eval(args) -> int:
    cfg = RunConfig("eval", p=args.p, depth=args.depth, words=[args.word],
                    output_format=args.format, max_degree=args.max_degree)
    cfg.validate()
    e = _parse(args.word, args.p)
    perm = evaluate(e, args.p, args.depth)
    ct = cycle_type(perm)
    text = f"{format_cycles(perm)}\ncycle type: {ct}\n"
    doc = {"word": args.word, "p": args.p, "depth": args.depth, "degree": perm.degree,
           "cycles": format_cycles(perm), "cycle_type": ct.as_dict()}
    _emit(args, text, doc, "eval")
    return 0


def cmd_verify(args) -> int:
    conv = Convention(args.convention)
    results = run_scenarios(conv)
    doc = {"convention": conv.value,
           "scenarios": [{"name": r.name, "passed": r.passed, "detail": r.detail}
                         for r in results],
           "all_passed": all(r.passed for r in results)}
    _emit(args, format_report(results), doc, "verify-paper")
    return 0 if doc["all_passed"] else EXIT_FAIL


def _report_text(doc: dict) -> str:
    lines = [f"mode: {doc['mode']}", f"group: {doc['group']}", f"moves: {doc['moveset']}",
             f"k: {doc['k']}", f"components: {doc['component_count']}"]
    for n, c in enumerate(doc["components"]):
        size = c.get("size", f">={c['visited']} (cap)")
        fp = f", fingerprint {c['fingerprint']}" if c["fingerprint"] else ""
        lines.append(f"  [{n}] size {size}{fp}; representative {' ; '.join(map(str, c['representative']))}")
    lines.append(f"verdict: {doc['verdict']}")
    if doc.get("note"):
        lines.append(f"note: {doc['note']}")
    return "\n".join(lines) + "\n"


def cmd_nielsen_explore(args) -> int:
    cfg = RunConfig("nielsen explore", group=args.group, moveset=args.moves,
                    caps={"--cap": args.cap, "--node-cap": args.node_cap},
                    output_format=args.format, deterministic=args.deterministic,
                    threads=args.threads, max_degree=args.max_degree, depth=0)
    cfg.validate()
    h = _group(args.group, args.max_degree)
    p = getattr(h, "p", 3)
    try:
        if args.seed:
            seeds = []
            for text in args.seed:
                pair = parse_tuple(text, p)
                if isinstance(h, AbelianGroup):
                    raise CliError("seeds are word tuples and need a quotient group", EXIT_PARSE)
                seeds.append(tuple(h.element(e) for e in pair))
            k = len(seeds[0])
            report = explore_seeded(h, seeds, _moveset(args.moves, k, p),
                                    node_cap=args.node_cap, threads=cfg.threads)
        else:
            report = explore_exhaustive(h, args.k, _moveset(args.moves, args.k, p), cap=args.cap)
    except CapExceeded as exc:
        raise CliError(f"cap exceeded: {exc}", EXIT_CAP) from exc
    except NonGeneratingSeed as exc:
        raise CliError(str(exc), EXIT_SEED) from exc
    except WordSyntaxError as exc:
        raise CliError(str(exc), EXIT_PARSE) from exc
    doc = report.to_dict()
    _emit(args, _report_text(doc), doc, "nielsen-explore")
    return 0


def cmd_nielsen_certify(args) -> int:
    h = _group(args.group, args.max_degree)
    if not isinstance(h, QuotientGroup):
        raise CliError("certify needs a quotient group", EXIT_PARSE)
    a = _parse_pair(args.pairA, h.p, "--pairA")
    b = _parse_pair(args.pairB, h.p, "--pairB")
    for pair in (a, b):
        if not h.is_generating([h.element(pair.u), h.element(pair.v)]):
            raise CliError(f"pair {pair.label!r} does not generate {h.descriptor}", EXIT_SEED)
    doc = certify_distinct(a, b, h.p, h.depth)
    doc["group"] = h.descriptor
    lines = [f"group: {h.descriptor}"]
    for entry in doc["pairs"]:
        lines += [f"pair {entry['pair']}", f"  commutator: {entry['commutator']}",
                  f"  cycle type: {entry['cycle_type']}"]
    if args.explore_cap:
        seeds = [(h.element(pr.u), h.element(pr.v)) for pr in (a, b)]
        report = explore_seeded(h, seeds, MoveSet.nielsen(2), node_cap=args.explore_cap)
        doc["exploration"] = report.to_dict()
        lines.append(f"seeded exploration verdict: {report.verdict}")
    lines.append(f"verdict: {doc['verdict']}")
    _emit(args, "\n".join(lines) + "\n", doc, "nielsen-certify")
    return 0


def cmd_nielsen_separation(args) -> int:
    cfg = RunConfig("nielsen separation", p=args.p, depth=args.maxdepth,
                    max_degree=args.max_degree, output_format=args.format)
    cfg.validate()
    a = ScenarioPair(f"(x, y z_{args.k})", X, product(Y, z(args.k, args.p)))
    b = ScenarioPair(f"(x, y z_{args.j})", X, product(Y, z(args.j, args.p)))
    found = separation_depth(a, b, args.p, args.maxdepth)
    levels = []
    for d in range(1, args.maxdepth + 1):
        levels.append({"depth": d,
                       "fingerprint_a": str(pair_fingerprint(a, args.p, d)),
                       "fingerprint_b": str(pair_fingerprint(b, args.p, d))})
    doc = {"p": args.p, "pair_a": a.label, "pair_b": b.label, "max_depth": args.maxdepth,
           "separation_depth": found, "levels": levels,
           "status": "separated" if found else "inconclusive"}
    lines = [f"{a.label} vs {b.label}, p={args.p}"]
    for lv in levels:
        mark = "differ" if lv["fingerprint_a"] != lv["fingerprint_b"] else "same"
        lines.append(f"  level {lv['depth']}: {lv['fingerprint_a']} | {lv['fingerprint_b']}  {mark}")
    lines.append(f"separation depth: {found if found else 'none up to ' + str(args.maxdepth)}")
    _emit(args, "\n".join(lines) + "\n", doc, "nielsen-separation")
    return 0


def cmd_quotient_order(args) -> int:
    RunConfig("quotient order", p=args.p, depth=args.depth,
              max_degree=args.max_degree).validate()
    if args.depth < 1:
        raise CliError("--depth must be >= 1", EXIT_PARSE)
    h = QuotientGroup(args.p, args.depth)
    doc = {"p": args.p, "depth": args.depth, "order": str(h.order()), "base": h.chain.base}
    if args.enumerate_cap:
        try:
            doc["enumerated"] = len(enumerate_elements(h, args.enumerate_cap))
        except CapExceeded as exc:
            raise CliError(f"cap exceeded: {exc}", EXIT_CAP) from exc
    text = f"{h.order()}\n"
    if "enumerated" in doc:
        text += f"enumerated: {doc['enumerated']}\n"
    _emit(args, text, doc, "quotient-order")
    return 0


def cmd_quotient_project_check(args) -> int:
    RunConfig("quotient project-check", p=args.p, depth=args.depth,
              max_degree=args.max_degree).validate()
    if args.depth < 1:
        raise CliError("--depth must be >= 1", EXIT_PARSE)
    rng = random.Random(args.seed)
    failures = []
    for _ in range(args.samples):
        w = Word.of("".join(rng.choice("xXyY") for _ in range(rng.randint(0, 12))))
        if project(evaluate(w, args.p, args.depth), args.p, args.depth - 1) != \
                evaluate(w, args.p, args.depth - 1):
            failures.append(w.letters)
    doc = {"p": args.p, "depth": args.depth, "samples": args.samples,
           "failures": failures, "compatible": not failures}
    text = (f"{args.samples - len(failures)}/{args.samples} samples compatible\n"
            + ("".join(f"  incompatible: {w}\n" for w in failures)))
    _emit(args, text, doc, "quotient-project-check")
    return 0 if not failures else EXIT_FAIL


# --- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--output-dir", help=f"also write the report here (env {OUTPUT_DIR_ENV})")
    common.add_argument("--max-degree", type=int, default=DEFAULT_MAX_DEGREE)

    parser = argparse.ArgumentParser(prog="gsnielsen", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", parents=[common], help="level permutation of a word")
    ev.add_argument("word")
    ev.add_argument("--p", type=int, default=3)
    ev.add_argument("--depth", type=int, default=4)
    ev.set_defaults(func=cmd_eval)

    ver = sub.add_parser("verify", help="reference checks")
    vsub = ver.add_subparsers(dest="target", required=True)
    vp = vsub.add_parser("paper", parents=[common], help="run every reference scenario")
    vp.add_argument("--deterministic", action="store_true")
    vp.add_argument("--convention", choices=[c.value for c in Convention],
                    default=Convention.LEFT_FIRST.value)
    vp.set_defaults(func=cmd_verify)

    ni = sub.add_parser("nielsen", help="Nielsen graph experiments")
    nsub = ni.add_subparsers(dest="sub", required=True)
    ex = nsub.add_parser("explore", parents=[common])
    ex.add_argument("--group", required=True)
    ex.add_argument("--k", type=int, default=2)
    ex.add_argument("--moves", default="nielsen", help="nielsen | ac | ac:w1,w2,...")
    ex.add_argument("--cap", type=int, default=10 ** 6, help="element enumeration cap")
    ex.add_argument("--seed", action="append", help="seeded mode: a tuple like 'x ; y'")
    ex.add_argument("--node-cap", type=int, default=10 ** 4)
    ex.add_argument("--threads", type=int, default=1)
    ex.add_argument("--deterministic", action="store_true")
    ex.set_defaults(func=cmd_nielsen_explore)

    ce = nsub.add_parser("certify", parents=[common])
    ce.add_argument("--group", required=True)
    ce.add_argument("--pairA", required=True)
    ce.add_argument("--pairB", required=True)
    ce.add_argument("--explore-cap", type=int, default=0,
                    help="also run seeded exploration with this node cap")
    ce.set_defaults(func=cmd_nielsen_certify)

    se = nsub.add_parser("separation", parents=[common])
    se.add_argument("--p", type=int, default=3)
    se.add_argument("--k", type=int, required=True)
    se.add_argument("--j", type=int, required=True)
    se.add_argument("--maxdepth", type=int, default=6)
    se.set_defaults(func=cmd_nielsen_separation)

    qu = sub.add_parser("quotient", help="congruence quotient queries")
    qsub = qu.add_subparsers(dest="sub", required=True)
    qo = qsub.add_parser("order", parents=[common])
    qo.add_argument("--p", type=int, default=3)
    qo.add_argument("--depth", type=int, required=True)
    qo.add_argument("--enumerate-cap", type=int, default=0,
                    help="cross-check against exhaustive enumeration")
    qo.set_defaults(func=cmd_quotient_order)
    qp = qsub.add_parser("project-check", parents=[common])
    qp.add_argument("--p", type=int, default=3)
    qp.add_argument("--depth", type=int, required=True)
    qp.add_argument("--samples", type=int, default=100)
    qp.add_argument("--seed", type=int, default=0)
    qp.set_defaults(func=cmd_quotient_project_check)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
