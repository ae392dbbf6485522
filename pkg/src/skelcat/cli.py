"""Command-line interface: ``skelcat <verb> ...``.

Exit codes: 0 pass, 1 check or validation failure, 2 usage or syntax
error, 3 unknown (a search or enumeration bound was exhausted).
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import __version__
from .coeq import IdentificationSpec, QuotientCat, coequalize, sort_key
from .errors import BudgetExceeded, CategoryError, FormatError, PreconditionError, SkelcatError
from .fileio import corpus_names, corpus_path, dump_category, load_category, load_corpus, load_directory, load_functor
from .fincat import FinCat, classify, subgroupoid
from .presentation import (
    Verdict,
    ZCokernel,
    bounded_normal_forms,
    format_pword,
    identity_zcok_equivalence,
    parse_pword,
    word_equal_bounded,
    z_cokernel,
    z_cokernel_of_identity,
)
from .pretorsion import ProbeFamily, check_pretorsion, default_probes, torsionfree_reflection, z_kernel
from .words import format_word, parse_word, reduce

EXIT = {"pass": 0, "fail": 1, "unknown": 3}


@dataclass
class RunReport:
    verb: str
    inputs: list[str]
    outcome: str = "pass"
    findings: list[dict] = field(default_factory=list)
    duration_s: float = 0.0
    lines: list[str] = field(default_factory=list, repr=False)

    def finding(self, kind: str, detail: str, status: str = "info") -> None:
        self.findings.append({"kind": kind, "status": status, "detail": detail})
        if status == "fail":
            self.outcome = "fail"
        elif status == "unknown" and self.outcome == "pass":
            self.outcome = "unknown"

    def to_json(self) -> str:
        data = asdict(self)
        del data["lines"]
        return json.dumps(data, indent=2, ensure_ascii=False)


def _cls(name: str) -> str:
    return f"[{name}]"


def _category_lines(c: FinCat) -> list[str]:
    flags = classify(c)
    lines = [
        "objects: " + (" ".join(c.objects) or "(none)"),
        "arrows:",
    ]
    lines += [f"  {f}: {c.dom(f)} -> {c.cod(f)}" for f in c.nonidentity]
    lines.append(f"groupoid: {str(flags.is_groupoid).lower()}  skeletal: {str(flags.is_skeletal).lower()}  "
                 f"trivial: {str(flags.is_trivial).lower()}")
    return lines


def _quotient_lines(q: QuotientCat, max_len: int) -> tuple[list[str], list]:
    arrows = q.all_arrows(max_len)
    lines = [f"classes: {len(q.objects)}"]
    lines += [f"  {_cls(c)} = {{{', '.join(q.members[c])}}}" for c in q.objects]
    lines.append(f"arrows (length <= {max_len}): {len(arrows)}")
    lines += [f"  {_cls(a.src)} -> {_cls(a.tgt)}: {format_word(a.word)}" for a in arrows]
    return lines, arrows


def _parse_identify(text: str) -> list[tuple[str, str]]:
    pairs = []
    for item in text.split(","):
        left, sep, right = item.partition("=")
        if not sep or not left.strip() or not right.strip():
            raise FormatError(f"malformed identification {item!r}, expected X=Y")
        pairs.append((left.strip(), right.strip()))
    return pairs


# -- verbs ---------------------------------------------------------------------


def cmd_validate(args, report: RunReport) -> None:
    c = load_category(args.category)
    if args.canonical:
        report.lines.append(dump_category(c).rstrip("\n"))
    else:
        report.lines.append(f"valid: {len(c.objects)} objects, {len(c.nonidentity)} non-identity arrows")
        report.lines += _category_lines(c)
    report.finding("validate", "valid category", "pass")


def cmd_reduce(args, report: RunReport) -> None:
    c = load_category(args.category)
    result = format_word(reduce(c, parse_word(args.word)))
    report.lines.append(result)
    report.finding("reduce", f"{format_word(parse_word(args.word))} -> {result}")


def cmd_coeq(args, report: RunReport) -> None:
    c = load_category(args.category)
    q, _ = coequalize(IdentificationSpec(c, tuple(_parse_identify(args.identify))))
    lines, arrows = _quotient_lines(q, args.max_len)
    report.lines += lines
    report.finding("coeq", f"{len(q.objects)} classes, {len(arrows)} arrows")


def _subgroupoid(mode):
    def run(args, report: RunReport) -> None:
        c = load_category(args.category)
        sub, _ = subgroupoid(c, mode)
        report.lines += _category_lines(sub)
        report.finding(mode, f"{len(sub.nonidentity)} non-identity arrows")

    return run


def cmd_reflect(args, report: RunReport) -> None:
    c = load_category(args.category)
    seq = torsionfree_reflection(c)
    lines, arrows = _quotient_lines(seq.quotient, args.max_len)
    report.lines += lines
    bad = [a for a in arrows if seq.quotient.is_iso(a) and a.src != a.tgt]
    report.finding("skeletal", f"{len(bad)} non-endo isomorphisms up to length {args.max_len}", "fail" if bad else "pass")


def cmd_zkernel(args, report: RunReport) -> None:
    f = load_functor(args.functor)
    k, _ = z_kernel(f)
    report.lines += _category_lines(k)
    report.finding("zkernel", f"{len(k.nonidentity)} non-identity arrows")


def _zcok_output(zc: ZCokernel, args, report: RunReport) -> None:
    p = zc.presentation
    report.lines += p.listing()
    report.lines.append("arrow images:")
    report.lines += [f"  {a} |-> {format_pword(w)}" for a, w in zc.arrow_map.items()]
    if args.normal_forms is not None:
        forms = bounded_normal_forms(p, args.normal_forms, search_bound=args.bound)
        report.lines.append(f"normal forms (length <= {args.normal_forms}):")
        for (d, c), ws in forms.items():
            report.lines.append(f"  {d} -> {c}: " + " ".join(format_pword(w) for w in ws))
    for item in args.check or []:
        left, sep, right = item.partition("=")
        if not sep:
            raise FormatError(f"malformed check {item!r}, expected W1=W2")
        w1, w2 = parse_pword(left), parse_pword(right)
        v = word_equal_bounded(p, w1, w2, args.bound)
        report.lines.append(f"check {format_pword(w1)} = {format_pword(w2)}: {v.status.value} ({v.reason})")
        status = {Verdict.EQUAL: "pass", Verdict.DISTINCT: "fail", Verdict.UNKNOWN: "unknown"}[v.status]
        report.finding("check", f"{format_pword(w1)} = {format_pword(w2)}: {v.status.value}", status)


def cmd_zcok_id(args, report: RunReport) -> None:
    c = load_category(args.category)
    _zcok_output(z_cokernel_of_identity(c, args.bound), args, report)


def cmd_zcok(args, report: RunReport) -> None:
    f = load_functor(args.functor)
    _zcok_output(z_cokernel(f, args.bound), args, report)


def _probes(args) -> ProbeFamily:
    if args.probes:
        cats = load_directory(args.probes)
        if not cats:
            raise FormatError(f"no *.json probe categories in {args.probes}")
        return ProbeFamily(cats)
    return default_probes()


def _pretorsion(name: str, c: FinCat, probes, max_len: int, report: RunReport) -> None:
    r = check_pretorsion(c, probes, max_len)
    status = "pass" if r.ok else "fail"
    report.lines.append(f"{name}: {status} ({r.checks} checks)")
    report.lines += [f"  {m}" for m in r.failures]
    report.finding("pretorsion", f"{name}: {r.checks} checks, {len(r.failures)} failures", status)


def cmd_check_pretorsion(args, report: RunReport) -> None:
    probes = _probes(args)
    for path in args.categories:
        _pretorsion(Path(path).stem, load_category(path), probes, args.max_len, report)


def _dot_id(name: str) -> str:
    return json.dumps(name, ensure_ascii=False)


def cmd_export_dot(args, report: RunReport) -> None:
    c = load_category(args.category)
    name = Path(args.category).stem
    lines = [f"digraph {_dot_id(name)} {{"]
    if args.identify or args.reflect:
        if args.reflect:
            q = torsionfree_reflection(c).quotient
        else:
            q, _ = coequalize(IdentificationSpec(c, tuple(_parse_identify(args.identify))))
        lines += [f"  {_dot_id(_cls(x))};" for x in q.objects]
        for a in q.all_arrows(args.max_len):
            lines.append(f"  {_dot_id(_cls(a.src))} -> {_dot_id(_cls(a.tgt))} [label={_dot_id(format_word(a.word))}];")
    else:
        lines += [f"  {_dot_id(x)};" for x in c.objects]
        for f in c.nonidentity:
            lines.append(f"  {_dot_id(c.dom(f))} -> {_dot_id(c.cod(f))} [label={_dot_id(f)}];")
    lines.append("}")
    text = "\n".join(lines) + "\n"
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
        report.lines.append(f"wrote {args.output}")
    else:
        report.lines.append(text.rstrip("\n"))
    report.finding("export-dot", f"{len(lines) - 2} DOT statements")


def cmd_corpus(args, report: RunReport) -> None:
    if args.action == "list":
        for name in corpus_names():
            raw = json.loads(corpus_path(name).read_text(encoding="utf-8"))
            c = load_category(corpus_path(name))
            flags = classify(c)
            kind = "trivial" if flags.is_trivial else "groupoid" if flags.is_groupoid else "skeletal" if flags.is_skeletal else "neither"
            report.lines.append(
                f"{name}: {len(c.objects)} objects, {len(c.nonidentity)} arrows, {kind} - {raw.get('description', '')}"
            )
        report.finding("corpus", f"{len(corpus_names())} categories")
        return
    probes = default_probes()
    for name, c in load_corpus().items():
        _pretorsion(name, c, probes, args.max_len, report)
        failures = identity_zcok_equivalence(c)
        status = "fail" if failures else "pass"
        report.lines.append(f"{name}: Z-cokernel of identity {status}")
        report.lines += [f"  {m}" for m in failures]
        report.finding("zcok-id", f"{name}: {len(failures)} failures", status)


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--report", metavar="FILE", help="also write a JSON run report to FILE")

    parser = argparse.ArgumentParser(prog="skelcat", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"skelcat {__version__}")
    sub = parser.add_subparsers(dest="verb", required=True, metavar="VERB")

    def verb(name, handler, help):
        p = sub.add_parser(name, help=help, parents=[common])
        p.set_defaults(handler=handler)
        return p

    p = verb("validate", cmd_validate, "validate a category file")
    p.add_argument("category")
    p.add_argument("--canonical", action="store_true", help="print the canonical JSON form")

    p = verb("reduce", cmd_reduce, "reduced form of a word")
    p.add_argument("category")
    p.add_argument("--word", required=True, help='comma-separated arrow names, "" for the empty word')

    p = verb("coeq", cmd_coeq, "coequalizer identifying pairs of objects")
    p.add_argument("category")
    p.add_argument("--identify", required=True, metavar="X=Y[,U=V...]")
    p.add_argument("--max-len", type=int, default=3)

    verb("iso", _subgroupoid("iso"), "groupoid of isomorphisms").add_argument("category")
    verb("aut", _subgroupoid("aut"), "groupoid of automorphisms").add_argument("category")

    p = verb("reflect", cmd_reflect, "skeletal reflection")
    p.add_argument("category")
    p.add_argument("--max-len", type=int, default=3)

    verb("zkernel", cmd_zkernel, "Z-kernel of a functor").add_argument("functor")

    for name, handler, arg, help in (
        ("zcok-id", cmd_zcok_id, "category", "Z-cokernel of an identity functor"),
        ("zcok", cmd_zcok, "functor", "Z-cokernel of a functor"),
    ):
        p = verb(name, handler, help)
        p.add_argument(arg)
        p.add_argument("--bound", type=int, default=12, help="maximum word length during searches")
        p.add_argument("--check", action="append", metavar="W1=W2", help="bounded equality check (repeatable)")
        p.add_argument("--normal-forms", type=int, metavar="K", help="list bounded normal forms up to length K")

    p = verb("check-pretorsion", cmd_check_pretorsion, "verify the short Z-exact sequence and PT1")
    p.add_argument("categories", nargs="+", metavar="category")
    p.add_argument("--probes", metavar="DIR", help="directory of probe categories (default: bundled)")
    p.add_argument("--max-len", type=int, default=4)

    p = verb("export-dot", cmd_export_dot, "Graphviz DOT export")
    p.add_argument("category")
    p.add_argument("-o", "--output")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--identify", metavar="X=Y[,U=V...]")
    group.add_argument("--reflect", action="store_true")
    p.add_argument("--max-len", type=int, default=3)

    p = verb("corpus", cmd_corpus, "bundled example categories")
    p.add_argument("action", choices=["list", "run-all"])
    p.add_argument("--max-len", type=int, default=4)
    return parser


def _inputs(args) -> list[str]:
    out = []
    for key in ("category", "functor"):
        if getattr(args, key, None):
            out.append(getattr(args, key))
    out.extend(getattr(args, "categories", None) or [])
    return out


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    report = RunReport(args.verb, _inputs(args))
    start = time.perf_counter()
    code = None
    try:
        args.handler(args, report)
    except CategoryError as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        report.finding("validation", str(exc), "fail")
        code = 1
    except PreconditionError as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        report.finding("precondition", str(exc), "fail")
        code = 1
    except BudgetExceeded as exc:
        print(f"bound exhausted: {exc}", file=sys.stderr)
        report.finding("budget", str(exc), "unknown")
        code = 3
    except (FormatError, SkelcatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report.duration_s = round(time.perf_counter() - start, 6)
    if report.lines:
        sys.stdout.write("\n".join(report.lines) + "\n")
    if args.report:
        Path(args.report).write_text(report.to_json() + "\n", encoding="utf-8")
    return EXIT[report.outcome] if code is None else code


if __name__ == "__main__":
    sys.exit(main())
