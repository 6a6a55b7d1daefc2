"""Gabriel-Roiter measure on indecomposable quiver representations.

Indecomposables (up to a length bound) are ordered by existence of a
monomorphism and measured by composition length, which for an acyclic
quiver is the total dimension. The measure of ``X`` only depends on
subobjects of ``X``, all of length at most ``length(X)``, so truncating
the category at a length bound leaves the surviving measures unchanged.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

from grmeasure import fp
from grmeasure.chains import GREATER, LESS, NatChain, chain_max, lex_compare
from grmeasure.poset import GRResult, MeasuredPoset, Report, gr_measure, validate
from grmeasure.quiver import (
    DEFAULT_BUDGET,
    QuiverError,
    QuiverRep,
    RepMorphism,
    a3_quiver,
    all_monos,
    cokernel,
    decompose,
    direct_sum,
    enumerate_indecomposables,
    find_iso,
    find_mono,
    hom_space,
    is_indecomposable,
    kronecker_labels,
    kronecker_rep,
    linear_quiver,
    parse_quiver_text,
    socle,
)


def dim_label(X: QuiverRep) -> str:
    dv = X.dim_vector
    if all(d < 10 for d in dv):
        return "".join(map(str, dv))
    return ".".join(map(str, dv))


def _assign_names(reps: list[QuiverRep]) -> list[str]:
    given = [X.name for X in reps]
    if all(given) and len(set(given)) == len(given) and not any(any(c.isspace() for c in n) for n in given):
        return list(given)
    names = []
    seen: dict[str, int] = {}
    for X in reps:
        base = dim_label(X)
        seen[base] = seen.get(base, 0) + 1
        names.append(base if seen[base] == 1 else f"{base}:{seen[base]}")
    return names


@dataclass
class SubobjectPoset:
    reps: list[QuiverRep]
    names: list[str]
    poset: MeasuredPoset
    monos: dict[tuple[int, int], RepMorphism] = field(repr=False)
    budget: int = DEFAULT_BUDGET

    @property
    def p(self) -> int:
        return self.reps[0].p

    def index(self, name: str) -> int:
        return self.names.index(name)

    def rep(self, name: str) -> QuiverRep:
        return self.reps[self.index(name)]

    @cached_property
    def result(self) -> GRResult:
        return gr_measure(self.poset)

    def measure(self, name: str) -> NatChain:
        return self.result.measure[name]

    def length(self, name: str) -> int:
        return self.poset.lengths[name]

    def strictly_below(self, name: str) -> list[str]:
        return sorted(self.poset.below[name])


def build_subobject_poset(reps: list[QuiverRep], budget: int = DEFAULT_BUDGET) -> SubobjectPoset:
    """Order pairwise non-isomorphic indecomposables by monomorphism existence."""
    if not reps:
        raise QuiverError("no representations given")
    for X in reps:
        if not is_indecomposable(X, budget):
            raise QuiverError(f"{X!r} is decomposable")
    for i, j in itertools.combinations(range(len(reps)), 2):
        if reps[i].dim_vector == reps[j].dim_vector and find_iso(reps[i], reps[j], budget) is not None:
            raise QuiverError(f"iso duplicates: representations {i} and {j}")
    names = _assign_names(reps)
    monos: dict[tuple[int, int], RepMorphism] = {}
    for i, X in enumerate(reps):
        for j, Y in enumerate(reps):
            # equal lengths would force an isomorphism, excluded above
            if X.length >= Y.length:
                continue
            f = find_mono(X, Y, budget)
            if f is not None:
                monos[i, j] = f
    lengths = {names[i]: X.length for i, X in enumerate(reps)}
    relations = [(names[i], names[j]) for i, j in sorted(monos)]
    poset = MeasuredPoset(lengths, relations)
    v = validate(poset)
    if v is not None:
        raise QuiverError(f"subobject relation is not a length poset: {v}")
    named = [X.renamed(n) for X, n in zip(reps, names)]
    return SubobjectPoset(named, names, poset, monos, budget)


def category_gr_measure(sp: SubobjectPoset) -> GRResult:
    return sp.result


@dataclass
class GRInclusion:
    sub: int
    sup: int
    witness: RepMorphism


def gr_predecessors(sp: SubobjectPoset, y: str) -> list[GRInclusion]:
    """Strict subobjects of ``y`` of maximal measure, with mono witnesses.

    Empty exactly when ``y`` is simple.
    """
    below = sp.strictly_below(y)
    if not below:
        return []
    top = chain_max(sp.measure(x) for x in below)
    j = sp.index(y)
    out = []
    for x in below:
        if sp.measure(x) != top:
            continue
        i = sp.index(x)
        w = sp.monos.get((i, j)) or find_mono(sp.reps[i], sp.reps[j], sp.budget)
        out.append(GRInclusion(i, j, w))
    return out


def match_in_poset(X: QuiverRep, sp: SubobjectPoset, budget: int | None = None) -> str | None:
    budget = sp.budget if budget is None else budget
    for name, Y in zip(sp.names, sp.reps):
        if Y.dim_vector == X.dim_vector and find_iso(X, Y, budget) is not None:
            return name
    return None


def extended_measure(X: QuiverRep, sp: SubobjectPoset, budget: int | None = None) -> NatChain:
    """Largest measure among the indecomposable summands of ``X``."""
    budget = sp.budget if budget is None else budget
    values = []
    for Z in decompose(X, budget):
        name = match_in_poset(Z, sp, budget)
        if name is None:
            raise QuiverError(f"summand outside poset: {Z!r}")
        values.append(sp.measure(name))
    return chain_max(values)


# -- property checks ---------------------------------------------------------------


def socle_formula(length: int, socle_length: int) -> NatChain:
    """Measure of an indecomposable of length at most 3, from its socle."""
    if length == 1:
        return NatChain([1])
    if length == 2:
        return NatChain([1, 2])
    if length == 3:
        return NatChain([1, 2, 3]) if socle_length == 1 else NatChain([1, 3])
    raise ValueError("the socle formula covers lengths 1..3 only")


def verify_socle_formula(sp: SubobjectPoset) -> Report:
    rep = Report()
    for name, X in zip(sp.names, sp.reps):
        if X.length > 3:
            continue
        rep.count("socle-formula")
        expected = socle_formula(X.length, socle(X).length)
        if sp.measure(name) != expected:
            rep.fail("socle-formula", f"{name}: measure {sp.measure(name)!r}, formula {expected!r}")
    return rep


def verify_gr6(sp: SubobjectPoset) -> Report:
    """Simple iff the measure is the least realised value."""
    rep = Report()
    least = sp.result.class_order[0]
    for name in sp.names:
        rep.count("GR6")
        if (sp.length(name) == 1) != (sp.measure(name) == least):
            rep.fail("GR6", f"{name}: length {sp.length(name)}, measure {sp.measure(name)!r}")
    return rep


def verify_basic(sp: SubobjectPoset) -> Report:
    """Equal measures force equal lengths; finitely many values per length."""
    rep = Report()
    m = sp.result.measure
    for x, y in itertools.product(sp.names, repeat=2):
        rep.count("GR2")
        if m[x] == m[y] and sp.length(x) != sp.length(y):
            rep.fail("GR2", f"{x}, {y}")
        rep.count("GR4")
        if lex_compare(m[x], m[y]) != -lex_compare(m[y], m[x]):
            rep.fail("GR4", f"{x}, {y}")
    for n in sorted(set(sp.poset.lengths.values())):
        rep.count("GR5")
        values = {m[x] for x in sp.names if sp.length(x) <= n}
        if len(values) > 2**n:
            rep.fail("GR5", f"{len(values)} values at length <= {n}")
    return rep


def verify_predecessor_values(sp: SubobjectPoset) -> Report:
    rep = Report()
    for y in sp.names:
        incs = gr_predecessors(sp, y)
        rep.count("predecessor-value")
        values = {sp.measure(sp.names[g.sub]) for g in incs}
        if len(values) > 1:
            rep.fail("predecessor-value", f"{y}: {sorted(values)}")
        if (not incs) != (sp.length(y) == 1):
            rep.fail("predecessor-value", f"{y}: predecessors exist iff not simple")
    return rep


def gr7_witness(sp: SubobjectPoset, x: str, y: str) -> tuple[str, str] | None:
    """``(Y', Y'')`` with ``Y' < Y'' <= y``, ``Y'`` a GR predecessor of ``Y''``,
    ``m(Y') <= m(x) < m(Y'')`` and ``length(Y') <= length(x)``."""
    mx = sp.measure(x)
    for ypp in [y] + sp.strictly_below(y):
        if lex_compare(mx, sp.measure(ypp)) != LESS:
            continue
        for g in gr_predecessors(sp, ypp):
            yp = sp.names[g.sub]
            if lex_compare(sp.measure(yp), mx) != GREATER and sp.length(yp) <= sp.length(x):
                return yp, ypp
    return None


def verify_gr7(sp: SubobjectPoset) -> Report:
    rep = Report()
    for x, y in itertools.product(sp.names, repeat=2):
        if lex_compare(sp.measure(x), sp.measure(y)) != LESS:
            continue
        rep.count("GR7")
        if gr7_witness(sp, x, y) is None:
            rep.fail("GR7", f"no witness for m({x}) < m({y})")
    return rep


def verify_gr_inclusion_quotient(sp: SubobjectPoset, budget: int | None = None) -> Report:
    """Cokernels of all GR inclusions (every mono witness) are indecomposable."""
    budget = sp.budget if budget is None else budget
    rep = Report()
    for y in sp.names:
        for g in gr_predecessors(sp, y):
            X, Y = sp.reps[g.sub], sp.reps[g.sup]
            for f in all_monos(X, Y, budget):
                rep.count("quotient")
                Z, _ = cokernel(f)
                if Z.is_zero() or not is_indecomposable(Z, budget):
                    rep.fail("quotient", f"{Y.name}/{X.name} has cokernel dims {Z.dim_vector}")
    return rep


def _hom_dim(sp: SubobjectPoset, cache: dict, i: int, j: int) -> int:
    if (i, j) not in cache:
        cache[i, j] = hom_space(sp.reps[i], sp.reps[j]).dim
    return cache[i, j]


def main_property_tuples(sp: SubobjectPoset, samples: int | None, seed: int = 0, max_size: int = 3):
    """All singletons, then a seeded sample of multisets of size 2..max_size."""
    n = len(sp.reps)
    singles = [(i,) for i in range(n)]
    larger = [
        t for r in range(2, max_size + 1) for t in itertools.combinations_with_replacement(range(n), r)
    ]
    random.Random(seed).shuffle(larger)
    if samples is not None:
        larger = larger[: max(0, samples - len(singles))]
    return singles + larger


def verify_main_property(
    sp: SubobjectPoset,
    samples: int | None = 300,
    budget: int | None = None,
    seed: int = 0,
) -> Report:
    """For ``X`` inside ``Y = Y_1 + ... + Y_r``: ``m(X) <= max m(Y_i)``, and
    equality makes ``X`` a direct summand of ``Y``."""
    budget = sp.budget if budget is None else budget
    p = sp.p
    rep = Report()
    homs: dict = {}
    for tup in main_property_tuples(sp, samples, seed):
        Ys = [sp.reps[i] for i in tup]
        top = chain_max(sp.measure(sp.names[i]) for i in tup)
        Ysum = direct_sum(*Ys)
        for i, X in enumerate(sp.reps):
            if p ** sum(_hom_dim(sp, homs, i, j) for j in tup) > budget:
                rep.count("GR8-skipped-budget")
                continue
            if find_mono(X, Ysum, budget) is None:
                continue
            rep.count("GR8-inequality")
            mx = sp.measure(sp.names[i])
            c = lex_compare(mx, top)
            if c == GREATER:
                rep.fail("GR8", f"{X.name} inside {[Y.name for Y in Ys]} but m > max")
                continue
            if c != 0:
                continue
            end_dim = sum(_hom_dim(sp, homs, a, b) for a in tup for b in tup)
            if p**end_dim <= budget:
                rep.count("GR8-summand")
                summands = decompose(Ysum, budget)
            else:
                # the Y_i are indecomposable; Krull-Remak-Schmidt fixes the summands
                rep.count("GR8-summand-by-construction")
                summands = Ys
            if not any(
                Z.dim_vector == X.dim_vector and find_iso(X, Z, budget) is not None for Z in summands
            ):
                rep.fail("GR8", f"{X.name} has maximal measure in {[Y.name for Y in Ys]} but is not a summand")
    return rep


def verify_truncation(small: SubobjectPoset, big: SubobjectPoset) -> Report:
    rep = Report()
    for name in small.names:
        rep.count("truncation")
        if name not in big.names:
            rep.fail("truncation", f"{name} missing from the larger truncation")
        elif small.measure(name) != big.measure(name):
            rep.fail("truncation", f"{name}: {small.measure(name)!r} vs {big.measure(name)!r}")
    return rep


def verify_category(sp: SubobjectPoset, samples: int | None = 300, seed: int = 0) -> Report:
    rep = Report()
    for sub in (
        verify_basic(sp),
        verify_gr6(sp),
        verify_predecessor_values(sp),
        verify_gr7(sp),
        verify_main_property(sp, samples=samples, seed=seed),
        verify_gr_inclusion_quotient(sp),
        verify_socle_formula(sp),
    ):
        rep.merge(sub)
    return rep


# -- families ----------------------------------------------------------------------

FAMILIES = ("a3paper", "linear-an", "kronecker", "custom")


def family_reps(
    family: str,
    p: int,
    max_length: int | None = None,
    n: int | None = None,
    path: str | Path | None = None,
    budget: int = DEFAULT_BUDGET,
) -> list[QuiverRep]:
    """Indecomposables for a named family.

    ``kronecker`` uses the built-in preprojective, regular and preinjective
    modules; ``custom`` uses the representations listed in the file, or
    enumerates by brute force when the file lists none.
    """
    fp.check_prime(p)
    if family == "a3paper":
        return enumerate_indecomposables(a3_quiver(), p, max_length or 3, budget)
    if family == "linear-an":
        if not n:
            raise QuiverError("linear-an needs --n")
        return enumerate_indecomposables(linear_quiver(n), p, max_length or n, budget)
    if family == "kronecker":
        return [kronecker_rep(lb, p) for lb in kronecker_labels(p, max_length or 6)]
    if family == "custom":
        if path is None:
            raise QuiverError("custom family needs --file")
        q, reps = parse_quiver_text(Path(path).read_text(), p)
        if reps:
            if max_length is not None:
                reps = [X for X in reps if X.length <= max_length]
            return reps
        if max_length is None:
            raise QuiverError("custom quiver without representations needs --max-length")
        return enumerate_indecomposables(q, p, max_length, budget)
    raise QuiverError(f"unknown family {family!r}")


def build_family(family: str, p: int, max_length: int | None = None, **kw) -> SubobjectPoset:
    budget = kw.get("budget", DEFAULT_BUDGET)
    return build_subobject_poset(family_reps(family, p, max_length, **kw), budget)
