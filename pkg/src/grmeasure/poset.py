"""Gabriel-Roiter measure of a finite poset with a length function.

The measure of ``x`` is the lexicographically largest set of lengths
``{lambda(x_1), ..., lambda(x_k)}`` over chains ``x_1 < ... < x_k = x``.
:func:`gr_measure` computes it by the recursion

    measure(x) = max(measure(x') for x' < x)  |  {lambda(x)}

over a topological order; :func:`gr_measure_oracle` enumerates every chain
and is used as an independent check.
"""

from __future__ import annotations

import graphlib
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, TextIO

from grmeasure.chains import (
    EQUAL,
    GREATER,
    LESS,
    NatChain,
    chain_max,
    extend,
    lex_compare,
)

DEFAULT_ORACLE_ELEMENTS = 20
DEFAULT_ORACLE_CHAINS = 2**20


class PosetError(ValueError):
    """Malformed input or an invalid poset."""


class OracleBudgetError(RuntimeError):
    pass


@dataclass(frozen=True)
class Violation:
    kind: str  # "cycle" | "monotonicity" | "length"
    pair: tuple[str, str]
    message: str

    def __str__(self) -> str:
        return self.message


class MeasuredPoset:
    """Finite strict poset with a strictly monotone length function.

    ``relations`` may be redundant; the strict order is its transitive
    closure, computed on first use.
    """

    def __init__(
        self,
        lengths: Mapping[str, int],
        relations: Iterable[tuple[str, str]] = (),
    ):
        self.lengths: dict[str, int] = dict(lengths)
        self.elements: tuple[str, ...] = tuple(self.lengths)
        self.relations: tuple[tuple[str, str], ...] = tuple(dict.fromkeys(relations))
        for a, b in self.relations:
            for name in (a, b):
                if name not in self.lengths:
                    raise PosetError(f"relation mentions undeclared element {name!r}")

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"MeasuredPoset({len(self.elements)} elements, {len(self.relations)} relations)"

    @cached_property
    def _graph(self) -> dict[str, set[str]]:
        g: dict[str, set[str]] = {x: set() for x in self.elements}
        for a, b in self.relations:
            g[b].add(a)
        return g

    @cached_property
    def topological_order(self) -> tuple[str, ...]:
        """Elements with every element after all of its predecessors.

        Ties are broken by declaration order, so the result is deterministic.
        Raises ``graphlib.CycleError`` on cyclic input.
        """
        ts = graphlib.TopologicalSorter(self._graph)
        ts.prepare()
        rank = {x: i for i, x in enumerate(self.elements)}
        order: list[str] = []
        while ts.is_active():
            ready = sorted(ts.get_ready(), key=rank.__getitem__)
            order.extend(ready)
            ts.done(*ready)
        return tuple(order)

    @cached_property
    def below(self) -> dict[str, frozenset[str]]:
        """Strict down-sets: ``below[y]`` is ``{x : x < y}``."""
        down: dict[str, frozenset[str]] = {}
        for y in self.topological_order:
            acc: set[str] = set()
            for x in self._graph[y]:
                acc.add(x)
                acc |= down[x]
            down[y] = frozenset(acc)
        return down

    def less(self, x: str, y: str) -> bool:
        return x in self.below[y]

    def leq(self, x: str, y: str) -> bool:
        return x == y or x in self.below[y]

    def minimal_elements(self) -> list[str]:
        return [x for x in self.elements if not self.below[x]]

    @cached_property
    def covers(self) -> tuple[tuple[str, str], ...]:
        """Cover relation (transitive reduction) as sorted pairs."""
        out = []
        for y in self.elements:
            down = self.below[y]
            for x in down:
                if not any(x in self.below[z] for z in down):
                    out.append((x, y))
        return tuple(sorted(out))

    def restrict(self, keep: Iterable[str]) -> MeasuredPoset:
        """Induced subposet on ``keep`` (order inherited via the closure)."""
        kept = set(keep)
        lengths = {x: self.lengths[x] for x in self.elements if x in kept}
        rel = [(x, y) for y in lengths for x in sorted(self.below[y]) if x in kept]
        return MeasuredPoset(lengths, rel)

    def truncate(self, max_length: int) -> MeasuredPoset:
        return self.restrict(x for x in self.elements if self.lengths[x] <= max_length)


def validate(p: MeasuredPoset) -> Violation | None:
    """Return the first violation found, or ``None`` for a valid poset."""
    for x in p.elements:
        if p.lengths[x] < 1:
            return Violation("length", (x, x), f"length of {x} must be positive, got {p.lengths[x]}")
    try:
        p.topological_order
    except graphlib.CycleError as exc:
        cycle = exc.args[1]
        return Violation("cycle", (cycle[0], cycle[1]), "cycle: " + " < ".join(reversed(cycle)))
    for y in p.topological_order:
        for x in sorted(p.below[y]):
            if p.lengths[x] >= p.lengths[y]:
                return Violation(
                    "monotonicity",
                    (x, y),
                    f"{x} < {y} but length {p.lengths[x]} >= {p.lengths[y]}",
                )
    return None


def _require_valid(p: MeasuredPoset) -> None:
    v = validate(p)
    if v is not None:
        raise PosetError(f"invalid poset: {v}")


@dataclass
class GRResult:
    measure: dict[str, NatChain]
    classes: list[list[str]]
    class_order: list[NatChain]

    def class_index(self, x: str) -> int:
        return self.class_order.index(self.measure[x])


def _result_from_measure(p: MeasuredPoset, measure: dict[str, NatChain]) -> GRResult:
    values = sorted(set(measure.values()))
    by_value: dict[NatChain, list[str]] = {v: [] for v in values}
    for x in p.elements:
        by_value[measure[x]].append(x)
    classes = [sorted(by_value[v]) for v in values]
    return GRResult({x: measure[x] for x in p.elements}, classes, values)


def gr_measure(p: MeasuredPoset) -> GRResult:
    _require_valid(p)
    measure: dict[str, NatChain] = {}
    for x in p.topological_order:
        best = chain_max(measure[y] for y in p.below[x])
        measure[x] = extend(best, p.lengths[x])
    return _result_from_measure(p, measure)


def gr_measure_oracle(
    p: MeasuredPoset,
    max_elements: int = DEFAULT_ORACLE_ELEMENTS,
    max_chains: int = DEFAULT_ORACLE_CHAINS,
) -> GRResult:
    """Brute force: enumerate every chain ending at each element."""
    _require_valid(p)
    if len(p) > max_elements:
        raise OracleBudgetError(f"oracle budget: {len(p)} elements > {max_elements}")
    seen = 0
    measure: dict[str, NatChain] = {}
    for x in p.elements:
        best: NatChain | None = None
        # Each stack entry is a chain, listed from its top element down.
        stack: list[tuple[str, ...]] = [(x,)]
        while stack:
            chain = stack.pop()
            seen += 1
            if seen > max_chains:
                raise OracleBudgetError(f"oracle budget: more than {max_chains} chains")
            lengths = NatChain(p.lengths[c] for c in chain)
            if best is None or lengths > best:
                best = lengths
            for y in p.below[chain[-1]]:
                stack.append(chain + (y,))
        assert best is not None
        measure[x] = best
    return _result_from_measure(p, measure)


@dataclass
class GRFiltration:
    steps: tuple[str, ...]

    @property
    def gamma(self) -> int:
        return len(self.steps)


def gr_filtration(p: MeasuredPoset, x: str, result: GRResult | None = None) -> GRFiltration:
    """Walk down from ``x`` through predecessors of maximal measure.

    Among equally good predecessors the smallest name is taken.
    """
    if result is None:
        result = gr_measure(p)
    m = result.measure
    steps = [x]
    cur = x
    while p.below[cur]:
        preds = sorted(p.below[cur])
        top = chain_max(m[y] for y in preds)
        cur = next(y for y in preds if m[y] == top)
        steps.append(cur)
    return GRFiltration(tuple(reversed(steps)))


def immediate_successors(p: MeasuredPoset, x: str, result: GRResult | None = None) -> set[NatChain]:
    if result is None:
        result = gr_measure(p)
    mx = result.measure[x]
    above = [v for v in result.class_order if lex_compare(v, mx) == GREATER]
    return {above[0]} if above else set()


@dataclass
class Report:
    violations: list[str] = field(default_factory=list)
    checked: dict[str, int] = field(default_factory=dict)
    failed: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def count(self, name: str, n: int = 1) -> None:
        self.checked[name] = self.checked.get(name, 0) + n

    def fail(self, name: str, detail: str) -> None:
        self.violations.append(f"{name}: {detail}")
        self.failed[name] = self.failed.get(name, 0) + 1

    def merge(self, other: Report, prefix: str = "") -> None:
        self.violations += [prefix + v for v in other.violations]
        for k, v in other.checked.items():
            self.count(k, v)
        for k, v in other.failed.items():
            self.failed[k] = self.failed.get(k, 0) + v

    def __bool__(self) -> bool:
        return self.ok


def _mapping(r: GRResult | Mapping[str, NatChain]) -> Mapping[str, NatChain]:
    return r.measure if isinstance(r, GRResult) else r


def check_measure_axioms(p: MeasuredPoset, r: GRResult | Mapping[str, NatChain]) -> Report:
    """Transitivity, totality and order compatibility of ``m(x) <= m(y)``."""
    m = _mapping(r)
    rep = Report()
    els = p.elements
    le = {(x, y): lex_compare(m[x], m[y]) != GREATER for x in els for y in els}
    for x in els:
        for y in els:
            rep.count("M2")
            if not (le[x, y] or le[y, x]):
                rep.fail("M2", f"{x} and {y} incomparable")
            if p.less(x, y):
                rep.count("M3")
                if not le[x, y]:
                    rep.fail("M3", f"{x} < {y} but m({x})={m[x]!r} > m({y})={m[y]!r}")
            if not le[x, y]:
                continue
            for z in els:
                rep.count("M1")
                if le[y, z] and not le[x, z]:
                    rep.fail("M1", f"m({x}) <= m({y}) <= m({z}) but not m({x}) <= m({z})")
    return rep


def check_refinement_axioms(p: MeasuredPoset, r: GRResult | Mapping[str, NatChain]) -> Report:
    """The three conditions characterising the measure as a refinement of length."""
    m = _mapping(r)
    lam = p.lengths
    rep = Report()
    for x in p.elements:
        for y in p.elements:
            c = lex_compare(m[x], m[y])
            if p.leq(x, y):
                rep.count("P1")
                if c == GREATER:
                    rep.fail("P1", f"{x} <= {y} but m({x})={m[x]!r} > m({y})={m[y]!r}")
            rep.count("P2")
            if c == EQUAL and lam[x] != lam[y]:
                rep.fail("P2", f"m({x}) = m({y}) but lengths {lam[x]} != {lam[y]}")
            rep.count("P3")
            hyp = lam[x] >= lam[y] and all(lex_compare(m[z], m[y]) == LESS for z in p.below[x])
            if hyp and c == GREATER:
                rep.fail(
                    "P3",
                    f"all m(x') < m({y}) for x' < {x} and length {lam[x]} >= {lam[y]}, "
                    f"but m({x})={m[x]!r} > m({y})={m[y]!r}",
                )
    return rep


def check_chain_properties(p: MeasuredPoset, r: GRResult) -> Report:
    """Monotonicity, length refinement, totality, finiteness per length bound,
    and the equality criterion via predecessor maxima."""
    m = r.measure
    lam = p.lengths
    rep = Report()
    pred_max = {x: chain_max(m[y] for y in p.below[x]) for x in p.elements}
    for x in p.elements:
        rep.count("max=length")
        if m[x].max != lam[x]:
            rep.fail("max=length", f"max m({x}) = {m[x].max} != {lam[x]}")
        for y in p.elements:
            c = lex_compare(m[x], m[y])
            if p.leq(x, y):
                rep.count("C1")
                if c == GREATER:
                    rep.fail("C1", f"{x} <= {y} but m({x}) > m({y})")
            rep.count("C2")
            if c == EQUAL and lam[x] != lam[y]:
                rep.fail("C2", f"m({x}) = m({y}) with different lengths")
            rep.count("C4")
            if c not in (LESS, EQUAL, GREATER) or c != -lex_compare(m[y], m[x]):
                rep.fail("C4", f"m({x}), m({y}) not comparable")
            rep.count("equality-criterion")
            crit = pred_max[x] == pred_max[y] and lam[x] == lam[y]
            if (c == EQUAL) != crit:
                rep.fail("equality-criterion", f"{x}, {y}")
    for n in sorted(set(lam.values())):
        rep.count("C5")
        values = {m[x] for x in p.elements if lam[x] <= n}
        if len(values) > 2**n or any(v.max > n for v in values):
            rep.fail("C5", f"{len(values)} values of length <= {n}")
    return rep


def random_poset(seed: int, size: int, max_length: int, density: float | None = None) -> MeasuredPoset:
    """Seeded random poset whose relations only ever go up in length."""
    if size < 1:
        raise PosetError("size must be at least 1")
    if max_length < 1:
        raise PosetError("max_length must be at least 1")
    rng = random.Random(seed)
    if density is None:
        density = rng.uniform(0.1, 0.6)
    width = len(str(size - 1))
    names = [f"x{i:0{width}d}" for i in range(size)]
    lengths = {n: rng.randint(1, max_length) for n in names}
    rel = [
        (a, b)
        for a in names
        for b in names
        if lengths[a] < lengths[b] and rng.random() < density
    ]
    return MeasuredPoset(lengths, rel)


def parse_poset(text: str) -> MeasuredPoset:
    """Read the line format ``e <name> <length>`` / ``r <below> <above>``."""
    lengths: dict[str, int] = {}
    rel: list[tuple[str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if tok[0] == "e" and len(tok) == 3:
            name = tok[1]
            if name in lengths:
                raise PosetError(f"line {lineno}: duplicate element {name!r}")
            try:
                lengths[name] = int(tok[2])
            except ValueError:
                raise PosetError(f"line {lineno}: bad length {tok[2]!r}") from None
            if lengths[name] < 1:
                raise PosetError(f"line {lineno}: length must be positive")
        elif tok[0] == "r" and len(tok) == 3:
            rel.append((tok[1], tok[2]))
        else:
            raise PosetError(f"line {lineno}: cannot parse {raw.strip()!r}")
    return MeasuredPoset(lengths, rel)


def load_poset(fh: TextIO) -> MeasuredPoset:
    return parse_poset(fh.read())


def format_poset(p: MeasuredPoset) -> str:
    lines = [f"e {x} {p.lengths[x]}" for x in p.elements]
    lines += [f"r {a} {b}" for a, b in p.relations]
    return "\n".join(lines) + "\n"
