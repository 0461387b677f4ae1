"""Finite multisets: elements of the free commutative monoid on a set of labels.

Boundaries of 3-cells in a 2-degenerate computad are multisets of 2-cells,
because composition of such 2-cells is commutative (``a.b = b.a``).  Labels
are normally strings; product alphabets use ``(left, right)`` tuples.
"""
from __future__ import annotations

from collections import Counter
from typing import Callable, Hashable, Iterable, Iterator, Mapping, Union

from .errors import ParseError, UnmappedLabel

Label = Hashable

__all__ = [
    "Multiset",
    "make_multiset",
    "monoid_sum",
    "push_forward",
    "project",
    "enumerate_pairings",
    "parse_multiset",
    "format_multiset",
    "EMPTY",
]


class Multiset:
    """An immutable, hashable multiset with positive integer multiplicities.

    >>> m = Multiset(["a2", "a1", "a1"])
    >>> m.count("a1"), m.size
    (2, 3)
    >>> m == Multiset(["a1", "a2", "a1"])
    True
    """

    __slots__ = ("_items", "_hash")

    def __init__(self, elements: Iterable[Label] = ()):
        self._items = tuple(sorted(Counter(elements).items()))
        self._hash = hash(self._items)

    @classmethod
    def from_counts(cls, counts: Mapping[Label, int]) -> "Multiset":
        """Build from a ``label -> multiplicity`` map; zero entries are dropped."""
        for label, n in counts.items():
            if not isinstance(n, int) or isinstance(n, bool):
                raise TypeError(f"multiplicity of {label!r} must be an int, got {n!r}")
            if n < 0:
                raise ValueError(f"negative multiplicity {n} for {label!r}")
        ms = cls.__new__(cls)
        ms._items = tuple(sorted((k, n) for k, n in counts.items() if n > 0))
        ms._hash = hash(ms._items)
        return ms

    @property
    def size(self) -> int:
        return sum(n for _, n in self._items)

    def __len__(self) -> int:
        return self.size

    def count(self, label: Label) -> int:
        for k, n in self._items:
            if k == label:
                return n
        return 0

    def support(self) -> tuple:
        return tuple(k for k, _ in self._items)

    def items(self) -> tuple:
        """``(label, multiplicity)`` pairs sorted by label."""
        return self._items

    def counts(self) -> dict:
        return dict(self._items)

    def __iter__(self) -> Iterator[Label]:
        """Elements with repetition, in sorted order."""
        for k, n in self._items:
            for _ in range(n):
                yield k

    def __contains__(self, label) -> bool:
        return any(k == label for k, _ in self._items)

    def __bool__(self) -> bool:
        return bool(self._items)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Multiset):
            return NotImplemented
        return self._items == other._items

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Multiset") -> bool:
        return self.sort_key() < other.sort_key()

    def sort_key(self) -> tuple:
        """Sorted element list; used for canonical ordering of multisets."""
        return tuple(self)

    def __add__(self, other: "Multiset") -> "Multiset":
        return monoid_sum(self, other)

    def __repr__(self) -> str:
        body = ", ".join(f"{k!r}: {n}" for k, n in self._items)
        return f"Multiset({{{body}}})"

    def __str__(self) -> str:
        return format_multiset(self)


EMPTY = Multiset()


def make_multiset(elements: Iterable[Label]) -> Multiset:
    return Multiset(elements)


def monoid_sum(m: Multiset, n: Multiset) -> Multiset:
    counts = Counter(dict(m.items()))
    counts.update(dict(n.items()))
    return Multiset.from_counts(counts)


def push_forward(f: Union[Mapping, Callable], m: Multiset) -> Multiset:
    """Image of ``m`` under the monoid map induced by the label map ``f``.

    ``f`` may be a mapping or a callable.  A mapping that lacks a label of
    the support raises :class:`UnmappedLabel`.
    """
    counts: Counter = Counter()
    if callable(f) and not isinstance(f, Mapping):
        for k, n in m.items():
            counts[f(k)] += n
    else:
        for k, n in m.items():
            try:
                counts[f[k]] += n
            except KeyError:
                raise UnmappedLabel(k) from None
    return Multiset.from_counts(counts)


def project(pairs: Multiset, side: str) -> Multiset:
    """Left or right marginal of a multiset of pairs."""
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', not {side!r}")
    i = 0 if side == "left" else 1
    counts: Counter = Counter()
    for (pair, n) in pairs.items():
        counts[pair[i]] += n
    return Multiset.from_counts(counts)


def enumerate_pairings(s: Multiset, t: Multiset) -> list:
    """All multisets of pairs whose left marginal is ``s`` and right marginal is ``t``.

    Equivalently, all non-negative integer matrices with row sums given by
    ``s`` and column sums given by ``t``.  Cells of the matrix are filled in
    lexicographic order of ``(left, right)``; each cell takes every feasible
    count and the remaining margins are reduced before recursing.

    The result is sorted by the sorted pair list of each pairing.
    """
    if s.size != t.size:
        return []
    rows = s.items()
    cols = t.items()
    col_left = [n for _, n in cols]
    found = []
    chosen: list = []

    def fill(i: int, j: int, row_left: int) -> None:
        if i == len(rows):
            if not any(col_left):
                found.append(Multiset.from_counts(dict(chosen)))
            return
        if j == len(cols):
            if row_left == 0:
                nxt = i + 1
                fill(nxt, 0, rows[nxt][1] if nxt < len(rows) else 0)
            return
        hi = min(row_left, col_left[j])
        # The last column must absorb whatever is left in the row.
        lo = row_left if j == len(cols) - 1 else 0
        for c in range(lo, hi + 1):
            col_left[j] -= c
            if c:
                chosen.append(((rows[i][0], cols[j][0]), c))
            fill(i, j + 1, row_left - c)
            if c:
                chosen.pop()
            col_left[j] += c

    fill(0, 0, rows[0][1] if rows else 0)
    found.sort(key=Multiset.sort_key)
    return found


# -- text syntax -------------------------------------------------------------

_UNIT = "1"


def format_multiset(m: Multiset) -> str:
    """``a1 * a1 * a2``; the empty multiset prints as ``1``."""
    if not m:
        return _UNIT
    return " * ".join(str(x) for x in m)


def parse_multiset(text: str, *, source: str = "<string>", line=None) -> Multiset:
    text = text.strip()
    if text == _UNIT:
        return EMPTY
    if not text:
        raise ParseError("expected a multiset ('1' or labels separated by '*')",
                         source=source, line=line)
    labels = [part.strip() for part in text.split("*")]
    for label in labels:
        if not label or label == _UNIT or any(c.isspace() for c in label):
            raise ParseError(f"expected a label between '*' separators, got {label!r}",
                             source=source, line=line)
    return Multiset(labels)
