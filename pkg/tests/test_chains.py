import functools
import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from grmeasure.chains import (
    EQUAL,
    GREATER,
    LESS,
    ChainError,
    NatChain,
    all_subchains,
    chain_max,
    drop_max,
    dyadic_value,
    extend,
    format_chain,
    lex_compare,
    lex_compare_by_rule,
    parse_chain,
    sorted_subchains,
)

chains = st.frozensets(st.integers(1, 14), max_size=14).map(NatChain)


def C(*xs):
    return NatChain(xs)


@pytest.mark.parametrize(
    "x, y, expected",
    [
        (C(3), C(2), LESS),
        (C(1, 3), C(1, 2), LESS),
        (C(), C(), EQUAL),
        (C(2), C(2, 3), LESS),
        (C(1, 2), C(1, 2, 3), LESS),
        (C(1), C(2, 3), GREATER),
    ],
)
def test_lex_compare_examples(x, y, expected):
    assert lex_compare(x, y) == expected
    assert lex_compare_by_rule(x, y) == expected


def test_subsets_of_three_in_order():
    expected = ["-", "3", "2", "2,3", "1", "1,3", "1,2", "1,2,3"]
    assert [format_chain(x) for x in sorted_subchains(3)] == expected


@pytest.mark.parametrize("n", range(0, 9))
def test_scan_agrees_with_rule_exhaustively(n):
    subsets = list(all_subchains(n))
    for x, y in itertools.product(subsets, repeat=2):
        assert lex_compare(x, y) == lex_compare_by_rule(x, y)


def test_total_order_axioms_exhaustive():
    subsets = list(all_subchains(6))
    le = {(x, y): lex_compare(x, y) != GREATER for x in subsets for y in subsets}
    for x, y in itertools.product(subsets, repeat=2):
        assert le[x, y] or le[y, x]
        assert (le[x, y] and le[y, x]) == (x == y)
    for x, y, z in itertools.product(subsets, repeat=3):
        if le[x, y] and le[y, z]:
            assert le[x, z]


def test_total_order_at_twelve_by_scores():
    # a tournament is transitive iff its scores are pairwise distinct
    subsets = list(all_subchains(10))
    scores = [sum(lex_compare(y, x) == LESS for y in subsets) for x in subsets[:: 37]]
    assert len(set(scores)) == len(scores)


@given(chains, chains)
def test_subset_implies_leq(x, y):
    union = NatChain(x.as_set() | y.as_set())
    assert lex_compare(x, union) != GREATER
    assert lex_compare(y, union) != GREATER


@given(chains, chains)
def test_antisymmetry_and_rule(x, y):
    c = lex_compare(x, y)
    assert c == -lex_compare(y, x)
    assert c == lex_compare_by_rule(x, y)
    assert (c == EQUAL) == (x == y)


@given(chains, chains, chains)
def test_transitivity(x, y, z):
    a, b, c = sorted([x, y, z])
    assert lex_compare(a, b) != GREATER and lex_compare(b, c) != GREATER
    assert lex_compare(a, c) != GREATER


@pytest.mark.parametrize(
    "x, value",
    [(C(), Fraction(0)), (C(1, 3), Fraction(5, 8)), (C(1, 2, 3), Fraction(7, 8))],
)
def test_dyadic_value_examples(x, value):
    assert dyadic_value(x) == value
    assert isinstance(dyadic_value(x), Fraction)


@given(chains, chains)
def test_dyadic_is_order_embedding(x, y):
    c = lex_compare(x, y)
    dx, dy = dyadic_value(x), dyadic_value(y)
    assert (dx < dy) == (c == LESS)
    assert (dx == dy) == (c == EQUAL)


def test_dyadic_exact_for_large_elements():
    x = C(1, 200)
    assert dyadic_value(x) == Fraction(1, 2) + Fraction(1, 2**200)
    assert dyadic_value(x) != dyadic_value(C(1))


def test_drop_max():
    assert drop_max(C(1, 2, 3)) == C(1, 2)
    assert drop_max(C(5)) == C()
    with pytest.raises(ChainError, match="empty chain has no maximum"):
        drop_max(C())


def test_extend():
    assert extend(C(1), 3) == C(1, 3)
    assert extend(C(), 1) == C(1)
    with pytest.raises(ChainError, match="not extending the maximum"):
        extend(C(1, 2), 2)


def _lex_max(items):
    return max(items, key=functools.cmp_to_key(lex_compare))


@pytest.mark.parametrize("n", [5, 8])
def test_lemma_drop_max_is_largest_smaller_chain(n):
    subsets = list(all_subchains(n))
    for x in subsets:
        if not x:
            continue
        cands = [y for y in subsets if lex_compare(y, x) == LESS and (not y or y.max < x.max)]
        assert _lex_max(cands) == drop_max(x)


@pytest.mark.parametrize("n", [5, 8])
def test_lemma_second_part(n):
    subsets = list(all_subchains(n))
    for x in subsets:
        if not x:
            continue
        xs = drop_max(x)
        for y in subsets:
            if lex_compare(xs, y) == LESS and (not y or x.max >= y.max):
                assert lex_compare(x, y) != GREATER


def test_chain_max_of_empty_family_is_empty_chain():
    assert chain_max([]) == C()
    assert chain_max([C(1), C(1, 3), C(1, 2), C(2)]) == C(1, 2)


@pytest.mark.parametrize("text, chain", [("1,3", C(1, 3)), ("-", C()), (" 2 ", C(2))])
def test_parse_roundtrip(text, chain):
    assert parse_chain(text) == chain
    assert parse_chain(format_chain(chain)) == chain


@pytest.mark.parametrize("bad", ["", "3,1", "1,1", "a", "0", "1,,2"])
def test_parse_rejects(bad):
    with pytest.raises(ChainError):
        parse_chain(bad)


def test_natchain_invariants():
    with pytest.raises(ChainError):
        NatChain([1, 1])
    with pytest.raises(ChainError):
        NatChain([0])
    assert NatChain([3, 1]).elements == (1, 3)
    with pytest.raises(AttributeError):
        C(1).elements = (2,)
    assert hash(C(1, 2)) == hash(NatChain([2, 1]))
