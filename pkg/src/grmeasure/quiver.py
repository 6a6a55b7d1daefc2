"""Representations of finite acyclic quivers over prime fields.

Arrow matrices have shape ``(dim target, dim source)`` and act on column
vectors. A morphism ``f: X -> Y`` has one component ``f[v]`` of shape
``(dim Y_v, dim X_v)`` per vertex and satisfies
``f[t] @ X[a] == Y[a] @ f[s]`` for every arrow ``a: s -> t``.

All the existence questions (monomorphism, isomorphism, idempotent) are
answered by scanning every element of the relevant Hom space, so each
takes a ``budget`` bounding ``p ** dim Hom``.
"""

from __future__ import annotations

import graphlib
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from grmeasure import fp, kernels
from grmeasure.fp import BudgetExceeded

DEFAULT_BUDGET = 2**20


class QuiverError(ValueError):
    pass


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


class Quiver:
    def __init__(self, vertices: Iterable[str], arrows: Iterable[tuple[str, str, str] | Arrow]):
        self.vertices: tuple[str, ...] = tuple(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError("duplicate vertex name")
        arrs = [a if isinstance(a, Arrow) else Arrow(*a) for a in arrows]
        names = [a.name for a in arrs]
        if len(set(names)) != len(names):
            raise QuiverError("duplicate arrow name")
        for a in arrs:
            for v in (a.source, a.target):
                if v not in self.vertices:
                    raise QuiverError(f"arrow {a.name} uses unknown vertex {v!r}")
        self.arrows: tuple[Arrow, ...] = tuple(arrs)
        graph = {v: set() for v in self.vertices}
        for a in arrs:
            graph[a.target].add(a.source)
        try:
            tuple(graphlib.TopologicalSorter(graph).static_order())
        except graphlib.CycleError:
            raise QuiverError("quiver has an oriented cycle") from None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Quiver):
            return NotImplemented
        return self.vertices == other.vertices and self.arrows == other.arrows

    def __hash__(self) -> int:
        return hash((self.vertices, self.arrows))

    def __repr__(self) -> str:
        arr = ", ".join(f"{a.name}:{a.source}->{a.target}" for a in self.arrows)
        return f"Quiver({list(self.vertices)}, [{arr}])"

    def arrows_from(self, v: str) -> list[Arrow]:
        return [a for a in self.arrows if a.source == v]


class QuiverRep:
    """Finite-dimensional representation of ``quiver`` over F_p."""

    def __init__(
        self,
        quiver: Quiver,
        p: int,
        dims: Mapping[str, int],
        mats: Mapping[str, np.ndarray] | None = None,
        name: str | None = None,
    ):
        self.quiver = quiver
        self.p = p
        self.dims: dict[str, int] = {v: int(dims.get(v, 0)) for v in quiver.vertices}
        if any(d < 0 for d in self.dims.values()):
            raise QuiverError("dimensions must be nonnegative")
        unknown = set(dims) - set(quiver.vertices)
        if unknown:
            raise QuiverError(f"unknown vertices {sorted(unknown)}")
        mats = dict(mats or {})
        self.mats: dict[str, np.ndarray] = {}
        for a in quiver.arrows:
            shape = (self.dims[a.target], self.dims[a.source])
            m = mats.pop(a.name, None)
            if m is None:
                m = fp.zeros(*shape)
            m = np.asarray(m, dtype=np.int64) % p
            if m.shape != shape:
                raise QuiverError(f"arrow {a.name}: matrix shape {m.shape}, expected {shape}")
            m.setflags(write=False)
            self.mats[a.name] = m
        if mats:
            raise QuiverError(f"unknown arrows {sorted(mats)}")
        self.name = name

    @property
    def dim_vector(self) -> tuple[int, ...]:
        return tuple(self.dims[v] for v in self.quiver.vertices)

    @property
    def length(self) -> int:
        return sum(self.dims.values())

    def is_zero(self) -> bool:
        return self.length == 0

    def renamed(self, name: str | None) -> QuiverRep:
        return QuiverRep(self.quiver, self.p, self.dims, self.mats, name)

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<QuiverRep{label} dims={self.dim_vector} p={self.p}>"

    def same_matrices(self, other: QuiverRep) -> bool:
        return self.dims == other.dims and all(
            np.array_equal(self.mats[a], other.mats[a]) for a in self.mats
        )


def _same_category(X: QuiverRep, Y: QuiverRep) -> None:
    if X.quiver != Y.quiver:
        raise QuiverError("representations of different quivers")
    if X.p != Y.p:
        raise QuiverError("representations over different fields")


@dataclass
class RepMorphism:
    source: QuiverRep
    target: QuiverRep
    comps: dict[str, np.ndarray]

    def __post_init__(self):
        for v in self.source.quiver.vertices:
            shape = (self.target.dims[v], self.source.dims[v])
            c = np.asarray(self.comps.get(v, fp.zeros(*shape)), dtype=np.int64) % self.source.p
            if c.shape != shape:
                raise QuiverError(f"component at {v}: shape {c.shape}, expected {shape}")
            self.comps[v] = c

    def is_morphism(self) -> bool:
        p = self.source.p
        for a in self.source.quiver.arrows:
            lhs = self.comps[a.target] @ self.source.mats[a.name]
            rhs = self.target.mats[a.name] @ self.comps[a.source]
            if not np.array_equal(lhs % p, rhs % p):
                return False
        return True

    def is_mono(self) -> bool:
        p = self.source.p
        return all(fp.rank(c, p) == c.shape[1] for c in self.comps.values())

    def is_epi(self) -> bool:
        p = self.source.p
        return all(fp.rank(c, p) == c.shape[0] for c in self.comps.values())

    def is_iso(self) -> bool:
        return self.is_mono() and self.is_epi()

    def compose(self, after: RepMorphism) -> RepMorphism:
        """``after o self``."""
        p = self.source.p
        return RepMorphism(
            self.source,
            after.target,
            {v: (after.comps[v] @ self.comps[v]) % p for v in self.comps},
        )


def identity(X: QuiverRep) -> RepMorphism:
    return RepMorphism(X, X, {v: fp.eye(d) for v, d in X.dims.items()})


def zero_morphism(X: QuiverRep, Y: QuiverRep) -> RepMorphism:
    return RepMorphism(X, Y, {})


@dataclass
class HomSpace:
    """Solution space of the intertwining equations, as flattened morphisms."""

    source: QuiverRep
    target: QuiverRep
    basis: np.ndarray  # (dim, N)
    blocks: np.ndarray  # (k, 3): offset, rows, cols per vertex
    _vertices: tuple[str, ...] = field(repr=False, default=())

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def morphism(self, coeffs: Sequence[int] | np.ndarray) -> RepMorphism:
        if not self.dim:
            return self._unflatten(np.zeros(self.basis.shape[1], dtype=np.int64))
        vec = (np.asarray(coeffs, dtype=np.int64) @ self.basis) % self.source.p
        return self._unflatten(vec)

    def _unflatten(self, vec: np.ndarray) -> RepMorphism:
        comps = {}
        for v, (o, r, c) in zip(self._vertices, self.blocks):
            comps[v] = vec[o : o + r * c].reshape(r, c).copy()
        return RepMorphism(self.source, self.target, comps)

    def basis_morphisms(self) -> list[RepMorphism]:
        return [self._unflatten(row) for row in self.basis]

    def flatten(self, f: RepMorphism) -> np.ndarray:
        return np.concatenate([f.comps[v].reshape(-1) for v in self._vertices])

    def elements(self) -> Iterator[RepMorphism]:
        for coeffs in itertools.product(range(self.source.p), repeat=self.dim):
            yield self.morphism(coeffs[::-1])


def hom_space(X: QuiverRep, Y: QuiverRep) -> HomSpace:
    _same_category(X, Y)
    p = X.p
    q = X.quiver
    offsets: dict[str, int] = {}
    blocks = []
    n = 0
    for v in q.vertices:
        offsets[v] = n
        blocks.append((n, Y.dims[v], X.dims[v]))
        n += Y.dims[v] * X.dims[v]
    rows = []
    for a in q.arrows:
        s, t = a.source, a.target
        m = Y.dims[t] * X.dims[s]
        eq = fp.zeros(m, n)
        # row-major vec identities: vec(F X_a) = (I kron X_a^T) vec F,
        # vec(Y_a F) = (Y_a kron I) vec F
        eq[:, offsets[t] : offsets[t] + Y.dims[t] * X.dims[t]] += np.kron(
            fp.eye(Y.dims[t]), X.mats[a.name].T
        )
        eq[:, offsets[s] : offsets[s] + Y.dims[s] * X.dims[s]] -= np.kron(
            Y.mats[a.name], fp.eye(X.dims[s])
        )
        rows.append(eq % p)
    system = np.vstack(rows) if rows else fp.zeros(0, n)
    basis = fp.nullspace(system, p).T.copy() if n else fp.zeros(0, 0)
    return HomSpace(X, Y, np.ascontiguousarray(basis), np.array(blocks, dtype=np.int64).reshape(-1, 3), q.vertices)


def hom_basis(X: QuiverRep, Y: QuiverRep) -> list[RepMorphism]:
    return hom_space(X, Y).basis_morphisms()


def _dims_allow_mono(X: QuiverRep, Y: QuiverRep) -> bool:
    return all(X.dims[v] <= Y.dims[v] for v in X.quiver.vertices)


def find_mono(X: QuiverRep, Y: QuiverRep, budget: int = DEFAULT_BUDGET) -> RepMorphism | None:
    """First monomorphism ``X -> Y`` in scan order, or ``None``."""
    _same_category(X, Y)
    if not _dims_allow_mono(X, Y):
        return None
    H = hom_space(X, Y)
    fp.check_budget(X.p, H.dim, budget, "hom enumeration")
    coeffs = kernels.first_mono(H.basis, X.p, H.blocks)
    return None if coeffs is None else H.morphism(coeffs)


def exists_mono(X: QuiverRep, Y: QuiverRep, budget: int = DEFAULT_BUDGET) -> bool:
    return find_mono(X, Y, budget) is not None


def all_monos(X: QuiverRep, Y: QuiverRep, budget: int = DEFAULT_BUDGET) -> list[RepMorphism]:
    _same_category(X, Y)
    if not _dims_allow_mono(X, Y):
        return []
    H = hom_space(X, Y)
    fp.check_budget(X.p, H.dim, budget, "hom enumeration")
    found = kernels.all_monos(H.basis, X.p, H.blocks, X.p**H.dim)
    return [H.morphism(c) for c in found]


def find_iso(X: QuiverRep, Y: QuiverRep, budget: int = DEFAULT_BUDGET) -> RepMorphism | None:
    _same_category(X, Y)
    if X.dim_vector != Y.dim_vector:
        return None
    # with equal dimension vectors a vertexwise injective map is invertible
    return find_mono(X, Y, budget)


def iso_test(X: QuiverRep, Y: QuiverRep, budget: int = DEFAULT_BUDGET) -> bool:
    return find_iso(X, Y, budget) is not None


def find_idempotent(X: QuiverRep, budget: int = DEFAULT_BUDGET) -> RepMorphism | None:
    """A nontrivial idempotent endomorphism of ``X``, or ``None``."""
    H = hom_space(X, X)
    fp.check_budget(X.p, H.dim, budget, "endomorphism enumeration")
    ident = H.flatten(identity(X))
    coeffs = kernels.first_idempotent(H.basis, X.p, H.blocks, ident)
    return None if coeffs is None else H.morphism(coeffs)


def is_indecomposable(X: QuiverRep, budget: int = DEFAULT_BUDGET) -> bool:
    if X.is_zero():
        raise QuiverError("the zero representation is not indecomposable")
    return find_idempotent(X, budget) is None


# -- kernels, images, cokernels, subrepresentations ---------------------------


def subrepresentation(X: QuiverRep, bases: Mapping[str, np.ndarray]) -> tuple[QuiverRep, RepMorphism]:
    """Subrepresentation spanned by ``bases[v]`` (independent columns).

    Raises ``ValueError`` if the subspaces are not closed under the arrows.
    """
    p = X.p
    dims = {v: bases[v].shape[1] for v in X.quiver.vertices}
    mats = {}
    for a in X.quiver.arrows:
        img = (X.mats[a.name] @ bases[a.source]) % p
        mats[a.name] = fp.solve(bases[a.target], img, p)
    S = QuiverRep(X.quiver, p, dims, mats)
    return S, RepMorphism(S, X, {v: bases[v] for v in X.quiver.vertices})


def kernel(f: RepMorphism) -> tuple[QuiverRep, RepMorphism]:
    p = f.source.p
    bases = {v: fp.nullspace(c, p) for v, c in f.comps.items()}
    return subrepresentation(f.source, bases)


def image(f: RepMorphism) -> tuple[QuiverRep, RepMorphism]:
    p = f.source.p
    bases = {v: fp.column_space(c, p) for v, c in f.comps.items()}
    return subrepresentation(f.target, bases)


def quotient(Y: QuiverRep, sub_bases: Mapping[str, np.ndarray]) -> tuple[QuiverRep, RepMorphism]:
    """``Y / S`` for the subrepresentation spanned by ``sub_bases``."""
    p = Y.p
    proj = {}
    lift = {}
    for v in Y.quiver.vertices:
        S = sub_bases[v]
        lift[v] = fp.complement(S, Y.dims[v], p)
        full_inv = fp.inverse(np.hstack([S, lift[v]]), p)
        proj[v] = full_inv[S.shape[1] :, :]
    dims = {v: proj[v].shape[0] for v in Y.quiver.vertices}
    # proj[v] @ lift[v] is the identity, so lift[v] represents quotient classes
    mats = {a.name: (proj[a.target] @ Y.mats[a.name] @ lift[a.source]) % p for a in Y.quiver.arrows}
    Q = QuiverRep(Y.quiver, p, dims, mats)
    return Q, RepMorphism(Y, Q, proj)


def cokernel(f: RepMorphism) -> tuple[QuiverRep, RepMorphism]:
    p = f.source.p
    bases = {v: fp.column_space(c, p) for v, c in f.comps.items()}
    return quotient(f.target, bases)


def socle(X: QuiverRep) -> QuiverRep:
    """Vertexwise intersection of the kernels of all outgoing arrows."""
    return socle_inclusion(X)[0]


def socle_inclusion(X: QuiverRep) -> tuple[QuiverRep, RepMorphism]:
    p = X.p
    bases = {}
    for v in X.quiver.vertices:
        outgoing = [X.mats[a.name] for a in X.quiver.arrows_from(v)]
        if outgoing:
            bases[v] = fp.nullspace(np.vstack(outgoing), p)
        else:
            bases[v] = fp.eye(X.dims[v])
    return subrepresentation(X, bases)


# -- direct sums and decomposition ----------------------------------------------


def direct_sum(*reps: QuiverRep) -> QuiverRep:
    if not reps:
        raise QuiverError("direct_sum needs at least one summand")
    q, p = reps[0].quiver, reps[0].p
    for R in reps[1:]:
        _same_category(reps[0], R)
    dims = {v: sum(R.dims[v] for R in reps) for v in q.vertices}
    mats = {}
    for a in q.arrows:
        M = fp.zeros(dims[a.target], dims[a.source])
        r = c = 0
        for R in reps:
            blk = R.mats[a.name]
            M[r : r + blk.shape[0], c : c + blk.shape[1]] = blk
            r += blk.shape[0]
            c += blk.shape[1]
        mats[a.name] = M
    return QuiverRep(q, p, dims, mats)


def decompose(X: QuiverRep, budget: int = DEFAULT_BUDGET) -> list[QuiverRep]:
    """Indecomposable summands, splitting along idempotents ``X = im e + ker e``."""
    if X.is_zero():
        return []
    out: list[QuiverRep] = []
    stack = [X]
    while stack:
        Y = stack.pop()
        e = find_idempotent(Y, budget)
        if e is None:
            out.append(Y)
            continue
        stack.append(kernel(e)[0])
        stack.append(image(e)[0])
    return out


# -- enumeration ----------------------------------------------------------------


def splitting_certificate(X: QuiverRep) -> str | None:
    """Cheap proof that ``X`` is decomposable, or ``None`` if none applies.

    Two certificates: the support (arrows with nonzero matrices) is
    disconnected; or some vertex ``v`` has a vector killed by every outgoing
    arrow but outside the span of the incoming arrows, in which case the
    simple at ``v`` splits off.
    """
    p = X.p
    support = [v for v in X.quiver.vertices if X.dims[v]]
    if not support:
        return None
    adj: dict[str, set[str]] = {v: set() for v in support}
    for a in X.quiver.arrows:
        if X.mats[a.name].any():
            adj[a.source].add(a.target)
            adj[a.target].add(a.source)
    seen = {support[0]}
    todo = [support[0]]
    while todo:
        for w in adj[todo.pop()]:
            if w not in seen:
                seen.add(w)
                todo.append(w)
    if len(seen) < len(support):
        return "disconnected support"
    if X.length == 1:
        return None
    for v in support:
        n = X.dims[v]
        out = [X.mats[a.name] for a in X.quiver.arrows_from(v)]
        soc = fp.nullspace(np.vstack(out), p) if out else fp.eye(n)
        inc = [X.mats[a.name] for a in X.quiver.arrows if a.target == v]
        rad = fp.column_space(np.hstack(inc), p) if inc else fp.zeros(n, 0)
        if soc.shape[1] and fp.rank(np.hstack([rad, soc]), p) > fp.rank(rad, p):
            return f"simple summand at vertex {v}"
    return None


def dimension_vectors(q: Quiver, max_length: int) -> list[tuple[int, ...]]:
    """Nonzero dimension vectors of total at most ``max_length``,
    ordered by total then lexicographically."""
    out = []
    for dv in itertools.product(range(max_length + 1), repeat=len(q.vertices)):
        if 0 < sum(dv) <= max_length:
            out.append(dv)
    return sorted(out, key=lambda dv: (sum(dv), dv))


def enumerate_reps(q: Quiver, p: int, dv: tuple[int, ...], budget: int = DEFAULT_BUDGET) -> Iterator[QuiverRep]:
    dims = dict(zip(q.vertices, dv))
    shapes = [(a.name, dims[a.target], dims[a.source]) for a in q.arrows]
    entries = sum(r * c for _, r, c in shapes)
    if p**entries > budget:
        raise BudgetExceeded(
            f"enumeration budget: dimension vector {dv} has {p}^{entries} matrix tuples > {budget}"
        )
    for flat in itertools.product(range(p), repeat=entries):
        mats = {}
        k = 0
        for name, r, c in shapes:
            mats[name] = np.array(flat[k : k + r * c], dtype=np.int64).reshape(r, c)
            k += r * c
        yield QuiverRep(q, p, dims, mats)


def enumerate_indecomposables(
    q: Quiver, p: int, max_length: int, budget: int = DEFAULT_BUDGET
) -> list[QuiverRep]:
    """Pairwise non-isomorphic indecomposables of length at most ``max_length``."""
    fp.check_prime(p)
    found: list[QuiverRep] = []
    for dv in dimension_vectors(q, max_length):
        classes: list[QuiverRep] = []
        for X in enumerate_reps(q, p, dv, budget):
            if splitting_certificate(X) is not None or not is_indecomposable(X, budget):
                continue
            if any(iso_test(X, Y, budget) for Y in classes):
                continue
            classes.append(X)
        found.extend(classes)
    return found


def simple(q: Quiver, p: int, v: str) -> QuiverRep:
    return QuiverRep(q, p, {v: 1}, name=f"S{v}")


# -- built-in quivers -----------------------------------------------------------


def a3_quiver() -> Quiver:
    """``1 <- 2 -> 3``."""
    return Quiver(["1", "2", "3"], [("a", "2", "1"), ("b", "2", "3")])


def linear_quiver(n: int) -> Quiver:
    """``1 -> 2 -> ... -> n``."""
    if n < 1:
        raise QuiverError("linear quiver needs n >= 1")
    vs = [str(i) for i in range(1, n + 1)]
    return Quiver(vs, [(f"a{i}", str(i), str(i + 1)) for i in range(1, n)])


def interval_rep(q: Quiver, p: int, lo: int, hi: int) -> QuiverRep:
    """Interval module on ``linear_quiver``: 1-dimensional on vertices lo..hi."""
    dims = {str(i): 1 for i in range(lo, hi + 1)}
    mats = {f"a{i}": np.ones((1, 1), dtype=np.int64) for i in range(lo, hi)}
    return QuiverRep(q, p, dims, mats, name=f"[{lo},{hi}]")


def kronecker_quiver() -> Quiver:
    """Two arrows ``a, b: 1 -> 2``; vertex 2 is the sink."""
    return Quiver(["1", "2"], [("a", "1", "2"), ("b", "1", "2")])


@dataclass(frozen=True)
class KroneckerLabel:
    kind: str  # "P" | "R" | "Q"
    n: int
    param: tuple[int, int] | None = None

    def __post_init__(self):
        if self.kind not in ("P", "R", "Q"):
            raise QuiverError(f"unknown Kronecker family {self.kind!r}")
        if self.n < 1:
            raise QuiverError("Kronecker index must be positive")
        if (self.kind == "R") != (self.param is not None):
            raise QuiverError("a parameter is required exactly for regular modules")

    @classmethod
    def regular(cls, n: int, alpha: int, beta: int, p: int) -> KroneckerLabel:
        """Canonicalise ``(alpha, beta)`` to ``(1, b)`` or ``(0, 1)``."""
        alpha, beta = alpha % p, beta % p
        if alpha:
            return cls("R", n, (1, beta * pow(alpha, p - 2, p) % p))
        if beta:
            return cls("R", n, (0, 1))
        raise QuiverError("(0, 0) is not a point of the projective line")

    @property
    def length(self) -> int:
        return 2 * self.n if self.kind == "R" else 2 * self.n - 1

    def __str__(self) -> str:
        if self.kind == "R":
            return f"R{self.n}({self.param[0]}:{self.param[1]})"
        return f"{self.kind}{self.n}"


def projective_line(p: int) -> list[tuple[int, int]]:
    return [(1, b) for b in range(p)] + [(0, 1)]


def _shift_pair(n: int) -> tuple[np.ndarray, np.ndarray]:
    """The two ``n x (n-1)`` full-rank shifts: identity in rows 1..n-1 and 2..n."""
    upper = fp.zeros(n, n - 1)
    lower = fp.zeros(n, n - 1)
    for i in range(n - 1):
        upper[i, i] = 1
        lower[i + 1, i] = 1
    return upper, lower


def _nilpotent_jordan(n: int) -> np.ndarray:
    J = fp.zeros(n, n)
    for i in range(n - 1):
        J[i, i + 1] = 1
    return J


def kronecker_rep(label: KroneckerLabel, p: int) -> QuiverRep:
    q = kronecker_quiver()
    n = label.n
    if label.kind == "P":
        A, B = _shift_pair(n)
        dims = {"1": n - 1, "2": n}
    elif label.kind == "Q":
        A, B = (m.T.copy() for m in _shift_pair(n))
        dims = {"1": n, "2": n - 1}
    else:
        alpha, beta = label.param
        J = _nilpotent_jordan(n)
        if alpha:
            A, B = fp.eye(n), (beta * fp.eye(n) + J) % p
        else:
            A, B = J, fp.eye(n)
        dims = {"1": n, "2": n}
    return QuiverRep(q, p, dims, {"a": A, "b": B}, name=str(label))


def kronecker_labels(p: int, max_length: int) -> list[KroneckerLabel]:
    """Built-in labels of length at most ``max_length``, ordered by length."""
    out = []
    for n in range(1, max_length + 1):
        for kind in ("P", "R", "Q"):
            if kind == "R":
                cands = [KroneckerLabel("R", n, pt) for pt in projective_line(p)]
            else:
                cands = [KroneckerLabel(kind, n)]
            out.extend(c for c in cands if c.length <= max_length)
    return sorted(out, key=lambda lb: lb.length)


# -- text format ----------------------------------------------------------------


def parse_quiver_text(text: str, p: int) -> tuple[Quiver, list[QuiverRep]]:
    """Read ``v``/``a`` declarations and ``rep``/``dim``/``mat`` blocks."""
    fp.check_prime(p)
    vertices: list[str] = []
    arrows: list[tuple[str, str, str]] = []
    raw_reps: list[tuple[str, dict[str, int], dict[str, list[int]], int]] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        head, args = tok[0], tok[1:]
        if head == "v" and len(args) == 1:
            vertices.append(args[0])
        elif head == "a" and len(args) == 3:
            arrows.append((args[0], args[1], args[2]))
        elif head == "rep" and len(args) == 1:
            raw_reps.append((args[0], {}, {}, lineno))
        elif head in ("dim", "mat"):
            if not raw_reps:
                raise QuiverError(f"line {lineno}: {head!r} outside a rep block")
            try:
                nums = [int(t) for t in args[1:]]
            except ValueError:
                raise QuiverError(f"line {lineno}: non-integer entry") from None
            if head == "dim":
                if len(nums) != 1:
                    raise QuiverError(f"line {lineno}: expected 'dim <vertex> <n>'")
                raw_reps[-1][1][args[0]] = nums[0]
            else:
                if not args:
                    raise QuiverError(f"line {lineno}: expected 'mat <arrow> <entries>'")
                raw_reps[-1][2][args[0]] = nums
        else:
            raise QuiverError(f"line {lineno}: cannot parse {line!r}")
    q = Quiver(vertices, arrows)
    by_name = {a.name: a for a in q.arrows}
    reps = []
    for name, dims, entries, lineno in raw_reps:
        mats = {}
        for arrow, nums in entries.items():
            if arrow not in by_name:
                raise QuiverError(f"rep {name} (line {lineno}): unknown arrow {arrow!r}")
            a = by_name[arrow]
            r, c = dims.get(a.target, 0), dims.get(a.source, 0)
            if len(nums) != r * c:
                raise QuiverError(
                    f"rep {name} (line {lineno}): arrow {arrow} needs {r * c} entries, got {len(nums)}"
                )
            mats[arrow] = np.array(nums, dtype=np.int64).reshape(r, c)
        reps.append(QuiverRep(q, p, dims, mats, name=name))
    return q, reps


def format_quiver_text(q: Quiver, reps: Iterable[QuiverRep] = ()) -> str:
    lines = [f"v {v}" for v in q.vertices]
    lines += [f"a {a.name} {a.source} {a.target}" for a in q.arrows]
    for i, X in enumerate(reps):
        lines.append(f"rep {X.name or f'X{i}'}")
        lines += [f"dim {v} {d}" for v, d in X.dims.items() if d]
        for a in q.arrows:
            M = X.mats[a.name]
            if M.size:
                lines.append(f"mat {a.name} " + " ".join(str(int(e)) for e in M.reshape(-1)))
    return "\n".join(lines) + "\n"
