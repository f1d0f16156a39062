"""Command-line front end.

Most subcommands print a JSON report (schema "1"); ``construct``, ``good``
and ``table1`` print their text formats directly. Exit codes: 0 success,
1 a reported check failed, 2 usage error, 3 timeout.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Sequence

from . import coefficients as coeffs
from .constructions import ConstructionSpec, Kind
from .core import Family, elements_of, format_family, parse_family
from .freeness import PatternGraph, audit_good, complete_multipartite, find_copy, good_family
from .partitions import audit_kleitman
from .sampling import good_audit_population, kleitman_audit_population
from .solver import (
    Homomorphism,
    SearchTimeout,
    blow_up,
    emb,
    find_kneser_copy,
    fractional_chromatic,
    shrink_injective,
    solve_vex,
)

SCHEMA = "1"

PATTERN_HELP = (
    "pattern graph: 'kst:S,T' for the complete S-partite graph with parts of "
    "size T (kst:3,1 is K_3), or 'edges:0-1,1-2,...' for an arbitrary graph"
)


class UsageError(Exception):
    pass


@dataclass
class CheckRow:
    name: str
    passed: bool
    lhs: str = ""
    rhs: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "pass": self.passed, "lhs": self.lhs, "rhs": self.rhs}


@dataclass
class RunReport:
    command: str
    inputs: dict[str, Any]
    outputs: dict[str, Any] = field(default_factory=dict)
    checks: list[CheckRow] = field(default_factory=list)
    # when set, printed instead of the JSON document
    text: str | None = None
    timed_out: bool = False

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "command": self.command,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "checks": [c.to_dict() for c in self.checks],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> RunReport:
        d = json.loads(text)
        if d.get("schema") != SCHEMA:
            raise ValueError(f"unsupported report schema {d.get('schema')!r}")
        checks = [CheckRow(c["name"], c["pass"], c["lhs"], c["rhs"]) for c in d["checks"]]
        return cls(d["command"], d["inputs"], d["outputs"], checks)


def parse_pattern(text: str) -> PatternGraph:
    kind, _, body = text.partition(":")
    try:
        if kind == "kst":
            s, t = (int(x) for x in body.split(","))
            return complete_multipartite(s, t)
        if kind == "edges":
            edges = []
            for tok in body.split(","):
                u, v = tok.split("-")
                edges.append((int(u), int(v)))
            return PatternGraph.from_edges(edges)
    except ValueError as exc:
        raise UsageError(f"bad pattern {text!r}: {exc}") from None
    raise UsageError(f"bad pattern {text!r}; {PATTERN_HELP}")


def _read_family(path: str) -> Family:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    try:
        return parse_family(text)
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _cmd_construct(args: argparse.Namespace) -> RunReport:
    kind = Kind(args.kind)
    if args.t is not None:
        ok = {
            Kind.KLEITMAN_A: args.t == 1,
            Kind.KLEITMAN_B: args.t == 1,
            Kind.SM1_ALL_AT_LEAST: args.t >= 2,
            Kind.SM_T3_POINTED: args.t >= 3,
            Kind.LEMMA22: args.t == 2,
        }[kind]
        if not ok:
            raise UsageError(f"--kind {kind.value} is not a construction for t={args.t}")
    fam = ConstructionSpec(kind, args.s, args.m, args.x).build()
    return RunReport("construct", _inputs(args), {"size": str(len(fam))}, text=format_family(fam))


def _cmd_check(args: argparse.Namespace) -> RunReport:
    fam = _read_family(args.family)
    pattern = parse_pattern(args.pattern)
    w = find_copy(fam, pattern)
    out = {"n": fam.n, "size": str(len(fam)), "free": w is None, "witness": None if w is None else w.to_dict()}
    checks = [] if w is None else [CheckRow("witness_valid", w.is_valid(fam))]
    return RunReport("check", _inputs(args), out, checks)


def _cmd_good(args: argparse.Namespace) -> RunReport:
    fam = _read_family(args.family)
    good = good_family(fam, args.t)
    return RunReport("good", _inputs(args), {"size": str(len(good))}, text=format_family(good))


def _good_checks(tag: str, rep) -> list[CheckRow]:
    rows = [
        CheckRow(f"{tag}downward_closed", rep.downward_closed),
        CheckRow(f"{tag}E_is_Ks_free", rep.E_is_Ks_free),
    ]
    for c in rep.counting_holds_per_layer:
        rows.append(CheckRow(f"{tag}counting_i={c.i}", c.holds, str(c.lhs), str(c.rhs)))
    return rows


def _cmd_audit_good(args: argparse.Namespace) -> RunReport:
    if args.random is not None:
        reports, checks = [], []
        for k, (n, s, t, fam) in enumerate(good_audit_population(args.random, args.seed)):
            rep = audit_good(fam, s, t)
            reports.append({"family": format_family(fam), **rep.to_dict()})
            checks += _good_checks(f"#{k}:", rep)
        return RunReport("audit-good", _inputs(args), {"reports": reports}, checks)
    if args.family is None or args.s is None or args.t is None:
        raise UsageError("audit-good needs --family, --s and --t (or --random N)")
    fam = _read_family(args.family)
    rep = audit_good(fam, args.s, args.t)
    checks = [
        CheckRow("precondition:upward_closed", rep.upward_closed),
        CheckRow("precondition:K_st_free", rep.family_is_free),
    ] + _good_checks("", rep)
    return RunReport("audit-good", _inputs(args), rep.to_dict(), checks)


def _kleitman_checks(tag: str, rep) -> list[CheckRow]:
    rows = [
        CheckRow(f"{tag}precondition:upward_closed", rep.upward_closed),
        CheckRow(f"{tag}precondition:K_s_free", rep.ks_free),
    ]
    rows += [CheckRow(tag + c.name, c.holds, str(c.lhs), str(c.rhs)) for c in rep.checks]
    return rows


def _cmd_audit_kleitman(args: argparse.Namespace) -> RunReport:
    if args.random is not None:
        reports, checks = [], []
        for k, fam in enumerate(kleitman_audit_population(args.random, args.seed, args.s, args.m)):
            rep = audit_kleitman(fam, args.s, args.m)
            reports.append({"family": format_family(fam), **rep.to_dict()})
            checks += _kleitman_checks(f"#{k}:", rep)
        return RunReport("audit-kleitman", _inputs(args), {"reports": reports}, checks)
    if args.family is None:
        raise UsageError("audit-kleitman needs --family FILE (or --random N)")
    rep = audit_kleitman(_read_family(args.family), args.s, args.m)
    return RunReport("audit-kleitman", _inputs(args), rep.to_dict(), _kleitman_checks("", rep))


def _cmd_solve_vex(args: argparse.Namespace) -> RunReport:
    pattern = parse_pattern(args.pattern)
    try:
        res = solve_vex(args.n, pattern, timeout=args.timeout)
    except SearchTimeout as exc:
        out = exc.incumbent.to_dict()
        out["lower_bound"] = out.pop("max_size")
        return RunReport("solve-vex", _inputs(args), out, timed_out=True)
    w = find_copy(res.extremal, pattern)
    checks = [
        CheckRow("extremal_is_free", w is None),
        CheckRow("extremal_upward_closed", res.extremal.is_upward_closed()),
    ]
    return RunReport("solve-vex", _inputs(args), res.to_dict(), checks)


def _cmd_emb(args: argparse.Namespace) -> RunReport:
    pattern = parse_pattern(args.pattern)
    m = emb(args.n, pattern)
    images = None
    if m:
        images = [list(elements_of(x)) for x in find_kneser_copy(args.n, m, pattern)]
    return RunReport("emb", _inputs(args), {"emb": m, "images": images})


def _cmd_chif(args: argparse.Namespace) -> RunReport:
    res = fractional_chromatic(parse_pattern(args.pattern))
    return RunReport("chif", _inputs(args), res.to_dict(), [CheckRow("primal_dual_certificate", res.certified)])


def _cmd_coeff(args: argparse.Namespace) -> RunReport:
    name = "alpha" if args.alpha else "beta"
    value = coeffs.alpha(args.s) if args.alpha else coeffs.beta(args.s)
    shown = coeffs.render_decimal(value, 6) if args.decimal else str(value)
    return RunReport("coeff", _inputs(args), {name: shown, "s": args.s})


def _cmd_table1(args: argparse.Namespace) -> RunReport:
    rows = coeffs.table1(args.max)
    if args.format == "csv":
        text = coeffs.table1_csv(rows)
    else:
        text = coeffs.table1_markdown(rows)
    ambiguous = [r.s for r in rows if r.rounding_ambiguous]
    if ambiguous:
        print(f"warning: half-up and half-even rounding differ for s={ambiguous}", file=sys.stderr)
    return RunReport("table1", _inputs(args), text=text)


def _parse_images(text: str) -> list[list[int]]:
    try:
        return [[int(x) for x in part.split(",") if x] for part in text.split(";")]
    except ValueError:
        raise UsageError(f"bad --images {text!r}; expected e.g. '1,2;3,4'") from None


def _cmd_hom(args: argparse.Namespace) -> RunReport:
    pattern = parse_pattern(args.pattern)
    h = Homomorphism.of(pattern, args.a, args.b, _parse_images(args.images))
    checks = [CheckRow("input_is_homomorphism", h.is_valid())]
    out: dict[str, Any] = {"input": h.to_dict()}
    if h.is_valid():
        big = blow_up(h, args.k)
        small = shrink_injective(big)
        out["blow_up"] = big.to_dict()
        out["shrink"] = None if small is None else small.to_dict()
        checks.append(CheckRow("blow_up_is_homomorphism", big.is_valid()))
        checks.append(CheckRow("shrink_is_embedding", small is not None and small.is_embedding()))
    return RunReport("hom", _inputs(args), out, checks)


def _inputs(args: argparse.Namespace) -> dict:
    return {k: v for k, v in vars(args).items() if k not in ("func",)}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kneser", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="emit an extremal family in text format")
    p.add_argument("--kind", required=True, choices=[k.value for k in Kind])
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--t", type=int, help="target K_{s x t}; rejected if the kind does not apply")
    p.add_argument("--x", type=int, help="fixed element for sm-t3 (default n)")
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("check", help="look for a copy of a pattern in a family")
    p.add_argument("--family", required=True, help="family file ('-' for stdin)")
    p.add_argument("--pattern", required=True, help=PATTERN_HELP)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("good", help="emit the good sets of a family")
    p.add_argument("--family", required=True)
    p.add_argument("--t", type=int, required=True)
    p.set_defaults(func=_cmd_good)

    p = sub.add_parser("audit-good", help="check the three good-set properties")
    p.add_argument("--family")
    p.add_argument("--s", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--random", type=int, metavar="N", help="audit N seeded random families instead")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_audit_good)

    p = sub.add_parser("audit-kleitman", help="check Kleitman's equipartition inequalities")
    p.add_argument("--family")
    p.add_argument("--s", type=int, default=3)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--random", type=int, metavar="N", help="audit N seeded random K_s-free families")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_audit_kleitman)

    p = sub.add_parser("solve-vex", help="exact size of the largest pattern-free family")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--pattern", required=True, help=PATTERN_HELP)
    p.add_argument("--timeout", type=float, default=60.0, help="seconds (default 60)")
    p.add_argument("--threads", type=int, default=1, help="search is single-threaded; only 1 is accepted")
    p.set_defaults(func=_cmd_solve_vex)

    p = sub.add_parser("emb", help="largest m with the pattern inside Kn(n, m)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--pattern", required=True, help=PATTERN_HELP)
    p.set_defaults(func=_cmd_emb)

    p = sub.add_parser("chif", help="exact fractional chromatic number")
    p.add_argument("--pattern", required=True, help=PATTERN_HELP)
    p.set_defaults(func=_cmd_chif)

    p = sub.add_parser("coeff", help="alpha_s or beta_s")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--alpha", action="store_true")
    which.add_argument("--beta", action="store_true")
    p.add_argument("--s", type=int, required=True)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--exact", action="store_true", help="fraction output (default)")
    fmt.add_argument("--decimal", action="store_true", help="6-place decimal output")
    p.set_defaults(func=_cmd_coeff)

    p = sub.add_parser("table1", help="alpha_s and beta_s for 3 <= s <= MAX")
    p.add_argument("--max", type=int, default=20)
    p.add_argument("--format", choices=["csv", "md"], default="csv")
    p.set_defaults(func=_cmd_table1)

    p = sub.add_parser("hom", help="blow up a Kneser homomorphism and shrink it to an embedding")
    p.add_argument("--pattern", required=True, help=PATTERN_HELP)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--images", required=True, help="images per vertex, e.g. '1,2;3,4;5,1'")
    p.add_argument("--k", type=int, default=2)
    p.set_defaults(func=_cmd_hom)
    return parser


def run(argv: Sequence[str] | None = None) -> tuple[RunReport | None, int]:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return None, 2 if exc.code else 0
    try:
        if getattr(args, "threads", 1) != 1:
            raise UsageError("only --threads 1 is supported")
        report = args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"kneser {args.command}: error: {exc}", file=sys.stderr)
        return None, 2
    if report.timed_out:
        return report, 3
    return report, 0 if report.ok else 1


def main(argv: Sequence[str] | None = None) -> int:
    report, code = run(argv)
    if report is not None:
        sys.stdout.write(report.text if report.text is not None else report.to_json() + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
