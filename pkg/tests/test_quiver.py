import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grmeasure import fp
from grmeasure.fp import BudgetExceeded
from grmeasure.quiver import (
    KroneckerLabel,
    Quiver,
    QuiverError,
    QuiverRep,
    RepMorphism,
    a3_quiver,
    cokernel,
    decompose,
    dimension_vectors,
    enumerate_reps,
    direct_sum,
    enumerate_indecomposables,
    exists_mono,
    find_idempotent,
    find_mono,
    format_quiver_text,
    hom_basis,
    hom_space,
    identity,
    image,
    interval_rep,
    is_indecomposable,
    iso_test,
    kernel,
    kronecker_labels,
    kronecker_quiver,
    kronecker_rep,
    linear_quiver,
    parse_quiver_text,
    projective_line,
    simple,
    socle,
    socle_inclusion,
    splitting_certificate,
    zero_morphism,
)

from conftest import a3_rep


def vertex_maps(X, Y):
    """Every tuple of vertexwise linear maps X -> Y, intertwining or not."""
    q, p = X.quiver, X.p
    shapes = [(v, Y.dims[v], X.dims[v]) for v in q.vertices]
    total = sum(r * c for _, r, c in shapes)
    for flat in itertools.product(range(p), repeat=total):
        comps, k = {}, 0
        for v, r, c in shapes:
            comps[v] = np.array(flat[k : k + r * c], dtype=np.int64).reshape(r, c)
            k += r * c
        yield RepMorphism(X, Y, comps)


def brute_homs(X, Y):
    return [f for f in vertex_maps(X, Y) if f.is_morphism()]


def brute_indecomposable(X):
    ident = identity(X)
    for f in brute_homs(X, X):
        e = f.comps
        if all(np.array_equal(e[v] @ e[v] % X.p, e[v]) for v in e):
            is_zero = not any(m.any() for m in e.values())
            is_one = all(np.array_equal(e[v], ident.comps[v]) for v in e)
            if not (is_zero or is_one):
                return False
    return True


def small_reps(p=2):
    q = a3_quiver()
    out = [a3_rep(*dv, p=p) for dv in [(1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 1, 1), (1, 1, 1)]]
    out.append(QuiverRep(q, p, {"1": 1, "3": 1}))
    out += [kronecker_rep(lb, p) for lb in kronecker_labels(p, 3)]
    return out


SMALL = small_reps()


@pytest.mark.parametrize("i, j", [(i, j) for i in range(len(SMALL)) for j in range(len(SMALL))])
def test_hom_dimension_matches_brute_force(i, j):
    X, Y = SMALL[i], SMALL[j]
    if X.quiver != Y.quiver:
        with pytest.raises(QuiverError):
            hom_space(X, Y)
        return
    H = hom_space(X, Y)
    homs = brute_homs(X, Y)
    assert len(homs) == X.p**H.dim
    assert all(f.is_morphism() for f in H.basis_morphisms())
    assert exists_mono(X, Y) == any(f.is_mono() for f in homs)


def test_hom_examples():
    assert len(hom_basis(a3_rep(0, 1, 0), a3_rep(1, 1, 0))) == 0
    assert len(hom_basis(a3_rep(1, 1, 1), a3_rep(1, 1, 1))) == 1
    zero = QuiverRep(a3_quiver(), 2, {})
    assert len(hom_basis(zero, a3_rep(1, 1, 1))) == 0


def test_mono_examples():
    assert exists_mono(a3_rep(1, 0, 0), a3_rep(1, 1, 1))
    assert not exists_mono(a3_rep(0, 1, 0), a3_rep(1, 1, 0))
    X = a3_rep(1, 1, 1)
    assert exists_mono(X, X)


def test_budget_is_hard_error():
    X = QuiverRep(a3_quiver(), 2, {"1": 3})
    with pytest.raises(BudgetExceeded, match="budget"):
        find_mono(X, X, budget=100)
    with pytest.raises(BudgetExceeded):
        is_indecomposable(X, budget=100)


def test_kernel_image_cokernel_examples():
    X = a3_rep(1, 1, 1)
    K, _ = kernel(identity(X))
    assert K.is_zero()
    I, _ = image(zero_morphism(X, X))
    assert I.is_zero()
    f = find_mono(a3_rep(1, 0, 0), X)
    Z, proj = cokernel(f)
    assert Z.dim_vector == (0, 1, 1)
    assert proj.is_morphism() and proj.is_epi()
    assert is_indecomposable(Z)


@pytest.mark.parametrize("i, j", [(i, j) for i in range(len(SMALL)) for j in range(len(SMALL))])
def test_rank_nullity_and_intertwining(i, j):
    X, Y = SMALL[i], SMALL[j]
    if X.quiver != Y.quiver:
        return
    H = hom_space(X, Y)
    for f in list(H.elements())[:20]:
        K, inc = kernel(f)
        I, im_inc = image(f)
        Z, proj = cokernel(f)
        for g in (inc, im_inc, proj):
            assert g.is_morphism()
        assert inc.is_mono() and im_inc.is_mono() and proj.is_epi()
        for v in X.quiver.vertices:
            assert K.dims[v] + I.dims[v] == X.dims[v]
            assert I.dims[v] + Z.dims[v] == Y.dims[v]
        # f kills its kernel and the projection kills the image
        assert not any(m.any() for m in inc.compose(f).comps.values())
        assert not any(m.any() for m in im_inc.compose(proj).comps.values())


def test_socle_examples():
    assert socle(a3_rep(1, 1, 1)).dim_vector == (1, 0, 1)
    S = simple(a3_quiver(), 2, "2")
    assert socle(S).dim_vector == S.dim_vector
    q = linear_quiver(2)
    U = interval_rep(q, 2, 1, 2)
    assert socle(U).dim_vector == (0, 1)
    sub, inc = socle_inclusion(U)
    assert inc.is_morphism() and inc.is_mono()


def test_indecomposable_examples():
    assert is_indecomposable(a3_rep(1, 1, 1))
    split = QuiverRep(a3_quiver(), 2, {"1": 1, "3": 1})
    assert not is_indecomposable(split)
    for v in "123":
        assert is_indecomposable(simple(a3_quiver(), 3, v))
    with pytest.raises(QuiverError):
        is_indecomposable(QuiverRep(a3_quiver(), 2, {}))


@pytest.mark.parametrize("X", SMALL, ids=lambda X: X.name or str(X.dim_vector))
def test_indecomposable_matches_brute_force(X):
    assert is_indecomposable(X) == brute_indecomposable(X)


def test_decompose_examples():
    q = a3_quiver()
    X = a3_rep(1, 1, 1)
    assert [Y.dim_vector for Y in decompose(X)] == [X.dim_vector]
    S = simple(q, 2, "1")
    assert [Y.dim_vector for Y in decompose(direct_sum(S, S))] == [(1, 0, 0)] * 2
    parts = sorted(Y.dim_vector for Y in decompose(QuiverRep(q, 2, {"1": 1, "3": 1})))
    assert parts == [(0, 0, 1), (1, 0, 0)]


def _multiset_iso(xs, ys):
    ys = list(ys)
    for X in xs:
        k = next((i for i, Y in enumerate(ys) if Y.dim_vector == X.dim_vector and iso_test(X, Y)), None)
        if k is None:
            return False
        ys.pop(k)
    return not ys


KRON3 = [kronecker_rep(lb, 2) for lb in kronecker_labels(2, 3)]


@settings(max_examples=25, deadline=None)
@given(st.lists(st.sampled_from(range(len(KRON3))), min_size=1, max_size=3))
def test_decompose_is_krull_schmidt_stable(idx):
    parts = [KRON3[i] for i in idx]
    if sum(X.length for X in parts) > 5:
        parts = parts[:1]
    got = decompose(direct_sum(*parts))
    assert sum(Y.length for Y in got) == sum(X.length for X in parts)
    assert all(is_indecomposable(Y) for Y in got)
    assert _multiset_iso(got, parts)


def test_iso_examples():
    X = a3_rep(1, 1, 1)
    assert iso_test(X, X)
    assert not iso_test(a3_rep(1, 1, 0), a3_rep(0, 1, 1))
    r10 = kronecker_rep(KroneckerLabel.regular(1, 1, 0, 2), 2)
    r01 = kronecker_rep(KroneckerLabel.regular(1, 0, 1, 2), 2)
    assert not iso_test(r10, r01)


def test_iso_detects_base_change():
    X = kronecker_rep(KroneckerLabel("R", 2, (1, 1)), 3)
    g1 = fp.mat([[1, 2], [0, 1]], 3)
    g2 = fp.mat([[2, 1], [1, 1]], 3)
    mats = {a: g2 @ X.mats[a] @ fp.inverse(g1, 3) % 3 for a in "ab"}
    Y = QuiverRep(X.quiver, 3, X.dims, mats)
    assert iso_test(X, Y)
    assert hom_space(X, X).dim == hom_space(Y, X).dim


def test_mono_both_ways_forces_iso():
    for X in KRON3:
        for Y in KRON3:
            if exists_mono(X, Y) and exists_mono(Y, X):
                assert iso_test(X, Y)
            if exists_mono(X, Y):
                assert X.length <= Y.length


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_linear_quiver_has_interval_count(n, p):
    found = enumerate_indecomposables(linear_quiver(n), p, n)
    assert len(found) == n * (n + 1) // 2
    supports = sorted(tuple(i for i, d in enumerate(X.dim_vector) if d) for X in found)
    assert all(max(X.dim_vector) == 1 for X in found)
    assert all(s == tuple(range(s[0], s[-1] + 1)) for s in supports)


def test_a3_enumeration():
    found = enumerate_indecomposables(a3_quiver(), 2, 3)
    dvs = sorted(X.dim_vector for X in found)
    assert dvs == sorted([(0, 1, 0), (1, 1, 0), (1, 0, 0), (1, 1, 1), (0, 0, 1), (0, 1, 1)])


def test_linear_a2_enumeration_and_simples():
    assert len(enumerate_indecomposables(linear_quiver(2), 2, 2)) == 3
    for q in (a3_quiver(), linear_quiver(3)):
        found = enumerate_indecomposables(q, 2, 1)
        assert sorted(X.dim_vector for X in found) == sorted(
            tuple(int(w == v) for w in q.vertices) for v in q.vertices
        )


def test_enumeration_budget_names_dimension_vector():
    with pytest.raises(BudgetExceeded, match=r"\(2, 2\)"):
        enumerate_indecomposables(kronecker_quiver(), 2, 4, budget=100)


def test_certificate_agrees_with_exhaustive_scan():
    # the prefilter only ever rejects decomposable objects
    q = kronecker_quiver()
    for dv in dimension_vectors(q, 3):
        for X in enumerate_reps(q, 2, dv):
            if splitting_certificate(X) is not None:
                assert not is_indecomposable(X)


@pytest.mark.parametrize("p", [2, 3])
def test_kronecker_builtins(p):
    labels = kronecker_labels(p, 6)
    reps = [kronecker_rep(lb, p) for lb in labels]
    for lb, X in zip(labels, reps):
        assert X.length == lb.length
        if lb.n <= 3:
            assert is_indecomposable(X)
    small = [(lb, X) for lb, X in zip(labels, reps) if lb.n <= 3]
    for (la, X), (lb, Y) in itertools.combinations(small, 2):
        assert not iso_test(X, Y), (str(la), str(lb))


def test_kronecker_examples():
    P1 = kronecker_rep(KroneckerLabel("P", 1), 2)
    assert P1.dim_vector == (0, 1) and P1.length == 1
    R = kronecker_rep(KroneckerLabel.regular(1, 1, 1, 3), 3)
    assert R.dim_vector == (1, 1)
    assert R.mats["a"].tolist() == [[1]] and R.mats["b"].tolist() == [[1]]
    Q2 = kronecker_rep(KroneckerLabel("Q", 2), 2)
    assert Q2.dim_vector == (2, 1) and is_indecomposable(Q2)
    assert projective_line(3) == [(1, 0), (1, 1), (1, 2), (0, 1)]
    assert KroneckerLabel.regular(2, 2, 1, 3) == KroneckerLabel("R", 2, (1, 2))
    assert str(KroneckerLabel.regular(1, 0, 2, 3)) == "R1(0:1)"
    with pytest.raises(QuiverError):
        KroneckerLabel.regular(1, 0, 0, 2)


def test_kronecker_brute_force_agrees_up_to_length_three():
    q = kronecker_quiver()
    brute = enumerate_indecomposables(q, 2, 3)
    builtin = [kronecker_rep(lb, 2) for lb in kronecker_labels(2, 3)]
    assert _multiset_iso(brute, builtin)


def test_builtins_embed_in_brute_force_at_length_four():
    q = kronecker_quiver()
    brute = enumerate_indecomposables(q, 2, 4)
    builtin = [kronecker_rep(lb, 2) for lb in kronecker_labels(2, 4)]
    for X in builtin:
        assert sum(Y.dim_vector == X.dim_vector and iso_test(X, Y) for Y in brute) == 1
    # over F_2 the one extra class is the regular attached to x^2 + x + 1
    assert len(brute) == len(builtin) + 1


def test_quiver_validation():
    with pytest.raises(QuiverError):
        Quiver(["1", "2"], [("a", "1", "2"), ("b", "2", "1")])
    q = a3_quiver()
    with pytest.raises(QuiverError):
        QuiverRep(q, 2, {"1": 1, "2": 1}, {"a": np.ones((2, 1), dtype=np.int64)})
    X = a3_rep(1, 1, 1)
    with pytest.raises(ValueError):
        X.mats["a"][0, 0] = 0


def test_text_format_roundtrip():
    q = a3_quiver()
    reps = [a3_rep(1, 1, 1), a3_rep(0, 1, 1)]
    text = format_quiver_text(q, reps)
    q2, reps2 = parse_quiver_text(text, 2)
    assert q2 == q
    assert [X.name for X in reps2] == ["111", "011"]
    assert all(X.same_matrices(Y) for X, Y in zip(reps, reps2))


@pytest.mark.parametrize(
    "text",
    [
        "v 1\nz 2\n",
        "v 1\ndim 1 1\n",
        "v 1\nv 2\na a 1 2\nrep X\ndim 1 1\ndim 2 1\nmat a 1 1\n",
        "v 1\nv 2\na a 1 2\nrep X\nmat c 1\n",
        "v 1\nrep X\ndim 1 x\n",
    ],
)
def test_text_format_errors(text):
    with pytest.raises(QuiverError):
        parse_quiver_text(text, 2)


def test_field_must_be_prime():
    with pytest.raises(ValueError):
        parse_quiver_text("v 1\n", 4)


def test_find_idempotent_on_sum():
    X = direct_sum(a3_rep(1, 1, 1), simple(a3_quiver(), 2, "1"))
    e = find_idempotent(X)
    assert e is not None and e.is_morphism()
