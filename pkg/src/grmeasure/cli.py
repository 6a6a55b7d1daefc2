"""Command-line front end.

Exit codes: 0 success, 1 input or validation error, 2 budget exceeded,
3 property violation.
"""

from __future__ import annotations

import argparse
import functools
import itertools
import json
import random
import sys
import time
from pathlib import Path
from typing import Callable, Sequence

from grmeasure import __version__, fp
from grmeasure.chains import (
    EQUAL,
    GREATER,
    LESS,
    ChainError,
    NatChain,
    all_subchains,
    drop_max,
    dyadic_value,
    format_chain,
    lex_compare,
    lex_compare_by_rule,
    parse_chain,
    sorted_subchains,
)
from grmeasure.fp import BudgetExceeded
from grmeasure.poset import (
    GRResult,
    MeasuredPoset,
    OracleBudgetError,
    PosetError,
    Report,
    check_chain_properties,
    check_measure_axioms,
    check_refinement_axioms,
    gr_filtration,
    gr_measure,
    gr_measure_oracle,
    parse_poset,
    random_poset,
    validate,
)
from grmeasure.quiver import DEFAULT_BUDGET, QuiverError

EXIT_OK, EXIT_INPUT, EXIT_BUDGET, EXIT_VIOLATION = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_INPUT):
        super().__init__(message)
        self.code = code


# -- emitters ----------------------------------------------------------------------


def emit_tsv(p: MeasuredPoset, r: GRResult, extra: dict[str, dict[str, str]] | None = None) -> str:
    extra = extra or {}
    cols = list(extra)
    lines = ["\t".join(["element", "length", *cols, "measure", "class"])]
    for k, cls in enumerate(r.classes):
        for x in cls:
            row = [x, str(p.lengths[x]), *(extra[c][x] for c in cols), format_chain(r.measure[x]), str(k)]
            lines.append("\t".join(row))
    return "\n".join(lines) + "\n"


def emit_json(p: MeasuredPoset, r: GRResult, extra: dict[str, dict[str, object]] | None = None) -> str:
    extra = extra or {}
    elements = []
    for cls in r.classes:
        for x in cls:
            item = {"name": x, "length": p.lengths[x], "measure": list(r.measure[x].elements)}
            for key, values in extra.items():
                item[key] = values[x]
            elements.append(item)
    doc = {"elements": elements, "classes": r.classes}
    return json.dumps(doc, indent=2) + "\n"


def _dot_id(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_dot(p: MeasuredPoset, r: GRResult) -> str:
    lines = ["digraph hasse {", "  rankdir=BT;", "  node [shape=box];"]
    for length in sorted(set(p.lengths.values())):
        members = [x for cls in r.classes for x in cls if p.lengths[x] == length]
        lines.append("  { rank=same; " + " ".join(_dot_id(x) for x in members) + "; }")
    for cls in r.classes:
        for x in cls:
            label = f"{x}\\n{format_chain(r.measure[x])}"
            lines.append(f'  {_dot_id(x)} [label="{label}", measure="{format_chain(r.measure[x])}"];')
    for a, b in p.covers:
        lines.append(f"  {_dot_id(a)} -> {_dot_id(b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _emit(fmt: str, p: MeasuredPoset, r: GRResult, extra: dict | None = None) -> str:
    if fmt == "tsv":
        return emit_tsv(p, r, {k: {x: str(v) for x, v in d.items()} for k, d in (extra or {}).items()})
    if fmt == "json":
        return emit_json(p, r, extra)
    if fmt == "dot":
        return emit_dot(p, r)
    raise CliError(f"unknown format {fmt!r}")


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# -- chains ------------------------------------------------------------------------


def cmd_chains(args) -> int:
    if args.chains_cmd == "cmp":
        try:
            a, b = parse_chain(args.a), parse_chain(args.b)
        except ChainError as exc:
            raise CliError(str(exc)) from None
        _write({LESS: "<", EQUAL: "=", GREATER: ">"}[lex_compare(a, b)] + "\n", args.out)
        return EXIT_OK
    if args.universe < 0 or args.universe > 16:
        raise CliError("--universe must be between 0 and 16")
    lines = [f"{format_chain(x)}\t{dyadic_value(x)}" for x in sorted_subchains(args.universe)]
    _write("\n".join(lines) + "\n", args.out)
    return EXIT_OK


# -- poset -------------------------------------------------------------------------


def _load_poset(path: str) -> MeasuredPoset:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from None
    try:
        p = parse_poset(text)
    except PosetError as exc:
        raise CliError(str(exc)) from None
    v = validate(p)
    if v is not None:
        raise CliError(f"invalid poset: {v}")
    return p


def cmd_poset(args) -> int:
    p = _load_poset(args.file)
    if args.oracle:
        try:
            r = gr_measure_oracle(p, max_elements=args.oracle_elements)
        except OracleBudgetError as exc:
            raise CliError(str(exc), EXIT_BUDGET) from None
    else:
        r = gr_measure(p)
    _write(_emit(args.format, p, r), args.out)
    return EXIT_OK


# -- quiver ------------------------------------------------------------------------


def cmd_quiver(args) -> int:
    from grmeasure.category import build_family

    try:
        fp.check_prime(args.field)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    if args.max_length is not None and args.max_length < 1:
        raise CliError("--max-length must be at least 1")
    try:
        sp = build_family(
            args.family,
            args.field,
            args.max_length,
            n=args.n,
            path=args.file,
            budget=args.budget,
        )
    except BudgetExceeded as exc:
        raise CliError(f"building the {args.family} subobject poset: {exc}", EXIT_BUDGET) from None
    except (QuiverError, OSError, ValueError) as exc:
        raise CliError(str(exc)) from None
    dims = {name: ",".join(map(str, X.dim_vector)) for name, X in zip(sp.names, sp.reps)}
    extra = {"dims": dims} if args.format != "json" else {
        "dims": {name: list(X.dim_vector) for name, X in zip(sp.names, sp.reps)}
    }
    _write(_emit(args.format, sp.poset, sp.result, extra), args.out)
    return EXIT_OK


# -- verify ------------------------------------------------------------------------


def suite_chains(seed: int, cases: int) -> Report:
    rep = Report()
    small = list(all_subchains(6))
    for x, y in itertools.product(small, repeat=2):
        c = lex_compare(x, y)
        rep.count("order:antisymmetry")
        if c != -lex_compare(y, x) or (c == EQUAL) != (x == y):
            rep.fail("order:antisymmetry", f"{x!r}, {y!r}")
        rep.count("order:rule-agreement")
        if c != lex_compare_by_rule(x, y):
            rep.fail("order:rule-agreement", f"{x!r}, {y!r}")
        rep.count("order:subset")
        if x.as_set() <= y.as_set() and c == GREATER:
            rep.fail("order:subset", f"{x!r} is a subset of {y!r}")
    le = {(x, y): lex_compare(x, y) != GREATER for x in small for y in small}
    for x, y, z in itertools.product(small, repeat=3):
        rep.count("order:transitivity")
        if le[x, y] and le[y, z] and not le[x, z]:
            rep.fail("order:transitivity", f"{x!r} <= {y!r} <= {z!r}")
    ordered = sorted(all_subchains(12), key=functools.cmp_to_key(lex_compare))
    values = [dyadic_value(x) for x in ordered]
    rep.count("dyadic:injective")
    if len(set(values)) != len(values):
        rep.fail("dyadic:injective", "repeated value")
    for (x, a), (y, b) in zip(zip(ordered, values), zip(ordered[1:], values[1:])):
        rep.count("dyadic:monotone")
        if lex_compare(x, y) != LESS or not a < b:
            rep.fail("dyadic:monotone", f"{x!r}, {y!r}")
    rng = random.Random(seed)
    for _ in range(cases * 100):
        i, j = rng.randrange(len(ordered)), rng.randrange(len(ordered))
        rep.count("dyadic:sampled-pairs")
        if (lex_compare(ordered[i], ordered[j]) == LESS) != (values[i] < values[j]):
            rep.fail("dyadic:sampled-pairs", f"{ordered[i]!r}, {ordered[j]!r}")
    rep.merge(check_lemma(8))
    return rep


def check_lemma(n: int) -> Report:
    """Both parts of the drop-max lemma over all subsets of ``{1..n}``."""
    rep = Report()
    subsets = list(all_subchains(n))
    for x in subsets:
        if not x:
            continue
        xs = drop_max(x)
        rep.count("lemma:1")
        cands = [y for y in subsets if lex_compare(y, x) == LESS and (not y or y.max < x.max)]
        best = max(cands, key=functools.cmp_to_key(lex_compare))
        if best != xs:
            rep.fail("lemma:1", f"{x!r}: expected {best!r}, drop_max gives {xs!r}")
        for y in subsets:
            if lex_compare(xs, y) == LESS and (not y or x.max >= y.max):
                rep.count("lemma:2")
                if lex_compare(x, y) == GREATER:
                    rep.fail("lemma:2", f"{x!r}, {y!r}")
    return rep


def corrupt_measure(p: MeasuredPoset, r: GRResult) -> dict[str, NatChain] | None:
    """Swap the (unequal) values of the first comparable pair found."""
    for y in p.elements:
        for x in sorted(p.below[y]):
            if r.measure[x] != r.measure[y]:
                m = dict(r.measure)
                m[x], m[y] = m[y], m[x]
                return m
    return None


def suite_poset(seed: int, cases: int) -> Report:
    rep = Report()
    for k in range(cases):
        s = seed + k
        rng = random.Random(s)
        p = random_poset(s, rng.randint(1, 12), rng.randint(1, 12))
        r = gr_measure(p)
        rep.count("oracle-equivalence")
        if r != gr_measure_oracle(p):
            rep.fail("oracle-equivalence", f"seed {s}")
        for check in (check_measure_axioms, check_refinement_axioms, check_chain_properties):
            rep.merge(check(p, r), f"seed {s}: ")
        for x in p.elements:
            rep.count("filtration")
            f = gr_filtration(p, x, r)
            ok = (
                f.steps[-1] == x
                and not p.below[f.steps[0]]
                and all(p.less(a, b) for a, b in zip(f.steps, f.steps[1:]))
                and f.gamma == len(r.measure[x])
            )
            if not ok:
                rep.fail("filtration", f"seed {s}: {x}")
        bad = corrupt_measure(p, r)
        if bad is not None:
            rep.count("corrupted-map-detected")
            if not any(v.startswith("M3") for v in check_measure_axioms(p, bad).violations):
                rep.fail("corrupted-map-detected", f"seed {s}")
        cut = rng.randint(1, max(p.lengths.values()))
        rep.count("truncation")
        small = gr_measure(p.truncate(cut)).measure
        if any(small[x] != r.measure[x] for x in small):
            rep.fail("truncation", f"seed {s}: length bound {cut}")
    return rep


def suite_category(seed: int, cases: int, budget: int) -> Report:
    from grmeasure.category import build_family, verify_category, verify_truncation

    rep = Report()
    specs = [("a3paper", {}), ("linear-an", {"n": 4}), ("kronecker", {"max_length": 6})]
    for family, kw in specs:
        sp = build_family(family, 2, budget=budget, **kw)
        rep.merge(verify_category(sp, samples=cases * 3, seed=seed), f"{family}: ")
    small = build_family("kronecker", 2, 4, budget=budget)
    big = build_family("kronecker", 2, 6, budget=budget)
    rep.merge(verify_truncation(small, big), "kronecker: ")
    return rep


def cmd_verify(args) -> int:
    started = time.perf_counter()
    try:
        if args.suite == "chains":
            rep = suite_chains(args.seed, args.cases)
        elif args.suite == "poset":
            rep = suite_poset(args.seed, args.cases)
        else:
            rep = suite_category(args.seed, args.cases, args.budget)
    except BudgetExceeded as exc:
        raise CliError(str(exc), EXIT_BUDGET) from None
    lines = []
    for name in sorted(rep.checked):
        status = "FAIL" if rep.failed.get(name) else "PASS"
        lines.append(f"{status}\t{name}\t{rep.checked[name]}")
    lines += [f"VIOLATION\t{v}" for v in rep.violations]
    lines.append(f"# suite={args.suite} seed={args.seed} cases={args.cases} violations={len(rep.violations)}")
    _write("\n".join(lines) + "\n", args.out)
    if args.timing:
        print(f"# {time.perf_counter() - started:.2f}s", file=sys.stderr)
    return EXIT_OK if rep.ok else EXIT_VIOLATION


# -- parser ------------------------------------------------------------------------


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="grmeasure", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def out_flag(sp):
        sp.add_argument("--out", metavar="PATH", help="write to PATH instead of stdout")

    ch = sub.add_parser("chains", help="compare chains or tabulate the chain order")
    chs = ch.add_subparsers(dest="chains_cmd", required=True)
    cmp_ = chs.add_parser("cmp", help="print <, = or >")
    cmp_.add_argument("a")
    cmp_.add_argument("b")
    out_flag(cmp_)
    tab = chs.add_parser("table", help="all subsets of {1..n} in ascending order")
    tab.add_argument("--universe", type=int, default=3)
    out_flag(tab)

    po = sub.add_parser("poset", help="measure of a poset file")
    po.add_argument("file", help="poset file, or - for stdin")
    po.add_argument("--format", choices=("tsv", "json", "dot"), default="tsv")
    po.add_argument("--oracle", action="store_true", help="use chain enumeration instead of the recursion")
    po.add_argument("--oracle-elements", type=_positive, default=20)
    out_flag(po)

    qu = sub.add_parser("quiver", help="measure on indecomposable quiver representations")
    qu.add_argument("--family", choices=("a3paper", "linear-an", "kronecker", "custom"), required=True)
    qu.add_argument("--n", type=_positive, help="number of vertices for linear-an")
    qu.add_argument("--file", help="quiver file for the custom family")
    qu.add_argument("--field", type=int, default=2, help="prime p of the ground field")
    qu.add_argument("--max-length", type=int, default=None)
    qu.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET)
    qu.add_argument("--format", choices=("tsv", "json", "dot"), default="tsv")
    out_flag(qu)

    ve = sub.add_parser("verify", help="run a property suite")
    ve.add_argument("--suite", choices=("chains", "poset", "category"), required=True)
    ve.add_argument("--seed", type=int, default=0)
    ve.add_argument("--cases", type=_positive, default=100)
    ve.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET)
    ve.add_argument("--timing", action="store_true")
    out_flag(ve)
    return ap


COMMANDS: dict[str, Callable] = {
    "chains": cmd_chains,
    "poset": cmd_poset,
    "quiver": cmd_quiver,
    "verify": cmd_verify,
}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except CliError as exc:
        print(f"grmeasure: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
