"""Finite 2-degenerate 3-computads and their morphisms.

A 2-degenerate 3-computad has one 0-cell and no 1-cells, so it is given by
a set of 2-cells and a set of 3-cells whose source and target are multisets
of 2-cells.  The 0- and 1-dimensional data are implicit and never stored.
"""
from __future__ import annotations

import itertools
import math
import os
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Optional

from .errors import NonComposable, SearchBudgetExceeded
from .multiset import Multiset, push_forward

DEFAULT_BUDGET = 10**7
BUDGET_ENV = "COMPUTADS_BUDGET"


def default_budget() -> int:
    """Search budget, overridable through the ``COMPUTADS_BUDGET`` variable."""
    value = os.environ.get(BUDGET_ENV)
    if value:
        return int(value)
    return DEFAULT_BUDGET


@dataclass(frozen=True)
class ThreeCell:
    name: str
    src: Multiset
    tgt: Multiset

    def __str__(self):
        return f"{self.name} : {self.src} -> {self.tgt}"


@dataclass(frozen=True)
class Computad:
    """A 2-degenerate 3-computad.

    Cells are stored sorted.  Duplicates are kept so that
    :func:`validate_computad` can report them.  Two computads are equal when
    their cells agree label for label; ``name`` is only used for files and
    messages.
    """

    cells2: tuple = ()
    cells3: tuple = ()
    name: str = field(default="X", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "cells2", tuple(sorted(self.cells2)))
        object.__setattr__(self, "cells3", tuple(sorted(self.cells3, key=lambda c: c.name)))

    @cached_property
    def _by_name(self) -> dict:
        return {c.name: c for c in self.cells3}

    def cell(self, name: str) -> ThreeCell:
        return self._by_name[name]

    @property
    def names3(self) -> tuple:
        return tuple(c.name for c in self.cells3)

    def stats(self) -> tuple:
        return len(self.cells2), len(self.cells3)

    def renamed(self, name: str) -> "Computad":
        return Computad(self.cells2, self.cells3, name=name)

    def __repr__(self):
        return f"Computad({self.name!r}, cells2={list(self.cells2)}, cells3=[{'; '.join(map(str, self.cells3))}])"


def computad(name: str, cells2: Iterable[str], cells3: Iterable = ()) -> Computad:
    """Convenience constructor; 3-cells may be given as ``(name, src, tgt)``
    with ``src``/``tgt`` as label lists or multisets."""
    built = []
    for c in cells3:
        if not isinstance(c, ThreeCell):
            n, s, t = c
            c = ThreeCell(n, _as_multiset(s), _as_multiset(t))
        built.append(c)
    return Computad(tuple(cells2), tuple(built), name=name)


def _as_multiset(x) -> Multiset:
    return x if isinstance(x, Multiset) else Multiset(x)


class Morphism:
    """A morphism of 2-degenerate computads: label maps on 2- and 3-cells.

    Construction does not validate; use :func:`validate_morphism`.
    Equality compares endpoints and map tables.
    """

    __slots__ = ("dom", "cod", "map2", "map3", "name")

    def __init__(self, dom: Computad, cod: Computad, map2: Mapping, map3: Mapping, name: str = "h"):
        self.dom = dom
        self.cod = cod
        self.map2 = MappingProxyType(dict(map2))
        self.map3 = MappingProxyType(dict(map3))
        self.name = name

    def push(self, m: Multiset) -> Multiset:
        return push_forward(self.map2, m)

    def table(self) -> tuple:
        """Map tables as sorted tuples; a hashable key for the morphism."""
        return tuple(sorted(self.map2.items())), tuple(sorted(self.map3.items()))

    def __eq__(self, other):
        if not isinstance(other, Morphism):
            return NotImplemented
        return (self.dom == other.dom and self.cod == other.cod
                and self.map2 == other.map2 and self.map3 == other.map3)

    def __hash__(self):
        return hash(self.table())

    def __repr__(self):
        m2 = ", ".join(f"{k}->{v}" for k, v in sorted(self.map2.items()))
        m3 = ", ".join(f"{k}->{v}" for k, v in sorted(self.map3.items()))
        return f"Morphism({self.name}: {self.dom.name} -> {self.cod.name}; {m2}; {m3})"

    def is_injective(self) -> bool:
        return (len(set(self.map2.values())) == len(self.map2)
                and len(set(self.map3.values())) == len(self.map3))

    def is_surjective(self) -> bool:
        return (set(self.map2.values()) == set(self.cod.cells2)
                and set(self.map3.values()) == set(self.cod.names3))


def identity(x: Computad) -> Morphism:
    return Morphism(x, x, {a: a for a in x.cells2}, {n: n for n in x.names3}, name=f"id_{x.name}")


def validate_computad(x: Computad) -> list:
    """List of violations; empty when ``x`` is a well-formed computad."""
    problems = []
    seen2 = set()
    for a in x.cells2:
        if a in seen2:
            problems.append(f"2-cell {a!r} is declared more than once")
        seen2.add(a)
    seen3 = set()
    for c in x.cells3:
        if c.name in seen3:
            problems.append(f"3-cell {c.name!r} is declared more than once")
        seen3.add(c.name)
        for side, m in (("source", c.src), ("target", c.tgt)):
            for a in m.support():
                if a not in seen2 and a not in x.cells2:
                    problems.append(f"3-cell {c.name!r}: {side} mentions undeclared 2-cell {a!r}")
    return problems


def validate_morphism(phi: Morphism) -> list:
    """List of violations: totality, codomain membership, serial boundary condition."""
    problems = []
    dom, cod = phi.dom, phi.cod
    cod2 = set(cod.cells2)
    cod3 = cod._by_name
    for a in dom.cells2:
        if a not in phi.map2:
            problems.append(f"2-cell {a!r} is not mapped")
        elif phi.map2[a] not in cod2:
            problems.append(f"2-cell {a!r} maps to {phi.map2[a]!r}, not a 2-cell of {cod.name}")
    for a in phi.map2:
        if a not in dom.cells2:
            problems.append(f"map on 2-cells mentions {a!r}, not a 2-cell of {dom.name}")
    for n in phi.map3:
        if n not in dom._by_name:
            problems.append(f"map on 3-cells mentions {n!r}, not a 3-cell of {dom.name}")
    if problems:
        return problems
    for c in dom.cells3:
        if c.name not in phi.map3:
            problems.append(f"3-cell {c.name!r} is not mapped")
            continue
        image = cod3.get(phi.map3[c.name])
        if image is None:
            problems.append(f"3-cell {c.name!r} maps to {phi.map3[c.name]!r}, not a 3-cell of {cod.name}")
            continue
        if phi.push(c.src) != image.src:
            problems.append(f"3-cell {c.name!r}: source {phi.push(c.src)} != source {image.src} of {image.name!r}")
        if phi.push(c.tgt) != image.tgt:
            problems.append(f"3-cell {c.name!r}: target {phi.push(c.tgt)} != target {image.tgt} of {image.name!r}")
    return problems


def compose(psi: Morphism, phi: Morphism) -> Morphism:
    """``psi`` after ``phi``."""
    if phi.cod != psi.dom:
        raise NonComposable(f"codomain {phi.cod.name} of {phi.name} differs from domain {psi.dom.name} of {psi.name}")
    return Morphism(
        phi.dom,
        psi.cod,
        {a: psi.map2[b] for a, b in phi.map2.items()},
        {n: psi.map3[m] for n, m in phi.map3.items()},
        name=f"{psi.name}.{phi.name}",
    )


# -- hom-sets ----------------------------------------------------------------

def hom_search_size(x: Computad, y: Computad) -> int:
    return len(y.cells2) ** len(x.cells2) * len(y.cells3) ** len(x.cells3)


def _check_budget(what: str, needed: int, budget: Optional[int]) -> None:
    if budget is None:
        budget = default_budget()
    if needed > budget:
        raise SearchBudgetExceeded(what, needed, budget)


def iter_homs(x: Computad, y: Computad) -> Iterator[tuple]:
    """Yield ``(map2, map3)`` dicts for every morphism ``x -> y``.

    Backtracks over the 2-cells that occur in boundaries, pruning as soon
    as every label of some 3-cell's boundary is assigned and no 3-cell of
    ``y`` has the pushed-forward boundary.  Unconstrained 2-cells and the
    3-cell choices are expanded by cartesian product at the leaves.
    No particular order; :func:`enumerate_homs` sorts.
    """
    ys = tuple(y.cells2)
    if not ys:
        if x.cells2:
            return
        if x.cells3 and not y.cells3:
            return
    by_boundary = defaultdict(list)
    for c in y.cells3:
        by_boundary[(c.src, c.tgt)].append(c.name)

    order = []
    for c in x.cells3:
        for a in itertools.chain(c.src.support(), c.tgt.support()):
            if a not in order:
                order.append(a)
    free = [a for a in x.cells2 if a not in set(order)]
    # 3-cells become checkable once their last boundary label is assigned.
    position = {a: i for i, a in enumerate(order)}
    ready = defaultdict(list)
    for c in x.cells3:
        labels = list(c.src.support()) + list(c.tgt.support())
        last = max((position[a] for a in labels), default=-1)
        ready[last].append(c)

    def candidates(c, m2):
        key = (push_forward(m2, c.src), push_forward(m2, c.tgt))
        return by_boundary.get(key, ())

    base_choices = []
    for c in ready[-1]:
        cands = candidates(c, {})
        if not cands:
            return
        base_choices.append((c.name, cands))

    m2: dict = {}

    def leaves(i, choices):
        if i == len(order):
            names = [n for n, _ in choices]
            for picked in itertools.product(*(cs for _, cs in choices)):
                map3 = dict(zip(names, picked))
                for rest in itertools.product(ys, repeat=len(free)):
                    map2 = dict(m2)
                    map2.update(zip(free, rest))
                    yield map2, map3
            return
        a = order[i]
        for b in ys:
            m2[a] = b
            extra = []
            ok = True
            for c in ready[i]:
                cands = candidates(c, m2)
                if not cands:
                    ok = False
                    break
                extra.append((c.name, cands))
            if ok:
                yield from leaves(i + 1, choices + extra)
        m2.pop(a, None)

    yield from leaves(0, base_choices)


def enumerate_homs(x: Computad, y: Computad, budget: Optional[int] = None) -> list:
    """Every morphism ``x -> y``, sorted by map tables.

    Raises :class:`SearchBudgetExceeded` when the naive search space
    ``|y2|^|x2| * |y3|^|x3|`` is larger than ``budget``.
    """
    _check_budget(f"Hom({x.name}, {y.name})", hom_search_size(x, y), budget)
    keyed = []
    for map2, map3 in iter_homs(x, y):
        key = (tuple(map2[a] for a in x.cells2), tuple(map3[n] for n in x.names3))
        keyed.append((key, map2, map3))
    keyed.sort(key=lambda t: t[0])
    return [Morphism(x, y, m2, m3, name=f"h{i}") for i, (_, m2, m3) in enumerate(keyed, 1)]


# -- isomorphism -------------------------------------------------------------

def label_signatures(x: Computad) -> dict:
    """Isomorphism-invariant signature of each 2-cell.

    For every occurrence in a boundary, record the multiplicities in source
    and target together with the boundary sizes of that 3-cell.
    """
    sig = {a: [] for a in x.cells2}
    for c in x.cells3:
        for a in set(c.src.support()) | set(c.tgt.support()):
            if a in sig:
                sig[a].append((c.src.count(a), c.tgt.count(a), c.src.size, c.tgt.size))
    return {a: tuple(sorted(v)) for a, v in sig.items()}


def shape_profile(x: Computad) -> tuple:
    """Invariants used for fast rejection in :func:`find_isomorphism`."""
    return (
        len(x.cells2),
        len(x.cells3),
        tuple(sorted((c.src.size, c.tgt.size) for c in x.cells3)),
        tuple(sorted(label_signatures(x).values())),
    )


def signature_blocks(x: Computad) -> list:
    """2-cells grouped by signature, blocks sorted by signature."""
    groups = defaultdict(list)
    for a, s in label_signatures(x).items():
        groups[s].append(a)
    return [(s, sorted(groups[s])) for s in sorted(groups)]


def _match_three_cells(x: Computad, y: Computad, map2: Mapping) -> Optional[dict]:
    pool = defaultdict(list)
    for c in y.cells3:
        pool[(c.src, c.tgt)].append(c.name)
    map3 = {}
    for c in x.cells3:
        key = (push_forward(map2, c.src), push_forward(map2, c.tgt))
        if not pool.get(key):
            return None
        map3[c.name] = pool[key].pop(0)
    return map3


def find_isomorphism(x: Computad, y: Computad, budget: Optional[int] = None) -> Optional[Morphism]:
    """An isomorphism ``x -> y`` if there is one, else ``None``.

    Candidate 2-cell bijections only match labels with equal signatures;
    for each, 3-cells are matched by their pushed-forward boundaries.
    """
    if shape_profile(x) != shape_profile(y):
        return None
    bx, by = signature_blocks(x), signature_blocks(y)
    if [(s, len(v)) for s, v in bx] != [(s, len(v)) for s, v in by]:
        return None
    _check_budget(f"Iso({x.name}, {y.name})", math.prod(math.factorial(len(v)) for _, v in bx), budget)
    for perms in itertools.product(*(itertools.permutations(v) for _, v in by)):
        map2 = {}
        for (_, src_block), img in zip(bx, perms):
            map2.update(zip(src_block, img))
        map3 = _match_three_cells(x, y, map2)
        if map3 is not None:
            return Morphism(x, y, map2, map3, name=f"iso_{x.name}_{y.name}")
    return None


def inverse(phi: Morphism) -> Morphism:
    if not phi.is_injective() or not phi.is_surjective():
        raise ValueError(f"{phi.name} is not bijective")
    return Morphism(
        phi.cod, phi.dom,
        {b: a for a, b in phi.map2.items()},
        {m: n for n, m in phi.map3.items()},
        name=f"{phi.name}^-1",
    )
