"""Finite chains of positive integers under the lexicographic chain order.

A chain ``X`` is a finite set of positive integers. ``X <= Y`` holds when
``min(Y - X) <= min(X - Y)``, with the minimum of the empty set taken to be
larger than every integer. Read as 0/1 strings indexed by 1, 2, 3, ... this
is the ordinary lexicographic order, so for subsets of ``{1, 2, 3}``::

    {} < {3} < {2} < {2,3} < {1} < {1,3} < {1,2} < {1,2,3}
"""

from __future__ import annotations

import functools
import itertools
from fractions import Fraction
from typing import Iterable, Iterator

LESS, EQUAL, GREATER = -1, 0, 1

EMPTY_LITERAL = "-"


class ChainError(ValueError):
    pass


@functools.total_ordering
class NatChain:
    """Immutable finite set of positive integers, stored ascending."""

    __slots__ = ("elements",)

    def __init__(self, elements: Iterable[int] = ()):
        items = sorted(int(e) for e in elements)
        for a, b in zip(items, items[1:]):
            if a == b:
                raise ChainError(f"duplicate element {a} in chain")
        if items and items[0] < 1:
            raise ChainError(f"chain elements must be positive, got {items[0]}")
        object.__setattr__(self, "elements", tuple(items))

    def __setattr__(self, name, value):
        raise AttributeError("NatChain is immutable")

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, n: object) -> bool:
        return n in self.elements

    def __bool__(self) -> bool:
        return bool(self.elements)

    def __hash__(self) -> int:
        return hash(self.elements)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NatChain):
            return NotImplemented
        return self.elements == other.elements

    def __lt__(self, other: NatChain) -> bool:
        if not isinstance(other, NatChain):
            return NotImplemented
        return lex_compare(self, other) == LESS

    def __repr__(self) -> str:
        return "{" + ",".join(map(str, self.elements)) + "}"

    def __str__(self) -> str:
        return format_chain(self)

    @property
    def max(self) -> int:
        if not self.elements:
            raise ChainError("empty chain has no maximum")
        return self.elements[-1]

    def as_set(self) -> frozenset[int]:
        return frozenset(self.elements)


def lex_compare(x: NatChain, y: NatChain) -> int:
    """Compare two chains, returning ``LESS``, ``EQUAL`` or ``GREATER``.

    Scans both ascending sequences in step. At the first position where
    they differ, the chain holding the smaller element has a 1 where the
    other has a 0, so it is the larger one. If one chain runs out first it
    is a prefix, hence a subset, hence the smaller one.
    """
    xs, ys = x.elements, y.elements
    for a, b in zip(xs, ys):
        if a != b:
            return GREATER if a < b else LESS
    if len(xs) == len(ys):
        return EQUAL
    return LESS if len(xs) < len(ys) else GREATER


def lex_compare_by_rule(x: NatChain, y: NatChain) -> int:
    """Direct evaluation of ``X <= Y  iff  min(Y - X) <= min(X - Y)``.

    Kept separate from :func:`lex_compare` so the two can be checked
    against each other.
    """
    xs, ys = x.as_set(), y.as_set()
    if xs == ys:
        return EQUAL
    inf = float("inf")
    x_le_y = min(ys - xs, default=inf) <= min(xs - ys, default=inf)
    return LESS if x_le_y else GREATER


def chain_max(chains: Iterable[NatChain]) -> NatChain:
    """Lexicographic maximum; the empty family has maximum ``{}``."""
    best = NatChain()
    for c in chains:
        if lex_compare(c, best) == GREATER:
            best = c
    return best


def dyadic_value(x: NatChain) -> Fraction:
    """Exact value of ``sum(2**-k for k in x)``; order-preserving and injective."""
    total = Fraction(0)
    for k in x.elements:
        total += Fraction(1, 2**k)
    return total


def drop_max(x: NatChain) -> NatChain:
    if not x.elements:
        raise ChainError("empty chain has no maximum")
    return NatChain(x.elements[:-1])


def extend(x: NatChain, n: int) -> NatChain:
    """Append ``n`` above the current maximum."""
    if n < 1:
        raise ChainError(f"chain elements must be positive, got {n}")
    if x.elements and n <= x.elements[-1]:
        raise ChainError(f"not extending the maximum: {n} <= {x.elements[-1]}")
    return NatChain(x.elements + (n,))


def parse_chain(text: str) -> NatChain:
    """Parse ``1,3`` style literals; ``-`` is the empty chain."""
    text = text.strip()
    if text == EMPTY_LITERAL:
        return NatChain()
    if not text:
        raise ChainError("empty chain literal; use '-' for the empty chain")
    try:
        items = [int(tok) for tok in text.split(",")]
    except ValueError:
        raise ChainError(f"malformed chain literal {text!r}") from None
    if any(a >= b for a, b in zip(items, items[1:])):
        raise ChainError(f"chain literal {text!r} is not strictly ascending")
    return NatChain(items)


def format_chain(x: NatChain) -> str:
    if not x.elements:
        return EMPTY_LITERAL
    return ",".join(map(str, x.elements))


def all_subchains(n: int) -> Iterator[NatChain]:
    """Every subset of ``{1..n}``, in no particular order."""
    universe = range(1, n + 1)
    for r in range(n + 1):
        for combo in itertools.combinations(universe, r):
            yield NatChain(combo)


def sorted_subchains(n: int) -> list[NatChain]:
    return sorted(all_subchains(n))
