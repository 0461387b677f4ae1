"""Brute-force oracles: bounded computad generators and universal-property checks.

Nothing here trusts the constructions it checks.  Universal properties are
tested by enumerating every morphism between small computads and counting
factorisations; pairings are counted by expanding both multisets into
sequences and trying every bijection.
"""
from __future__ import annotations

import itertools
import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .constructions import CoequalizerResult, ProductResult, coeq_factor, pair_into_product
from .core import Computad, Morphism, ThreeCell, compose, enumerate_homs
from .errors import ComputadError, OracleBudgetExceeded
from .multiset import Multiset

NO_FACTORISATION = "no-factorisation"
NON_UNIQUE = "non-unique-factorisation"
NON_COMMUTING = "non-commuting"


@dataclass(frozen=True)
class GeneratorBounds:
    max2cells: int
    max3cells: int
    max_boundary_size: int

    def __post_init__(self):
        if min(self.max2cells, self.max3cells, self.max_boundary_size) < 0:
            raise ValueError(f"bounds must be non-negative: {self}")

    def __str__(self):
        return f"({self.max2cells},{self.max3cells},{self.max_boundary_size})"

    @classmethod
    def parse(cls, text: str) -> "GeneratorBounds":
        parts = [int(p) for p in text.replace("(", "").replace(")", "").split(",")]
        if len(parts) != 3:
            raise ValueError(f"bounds need three integers, got {text!r}")
        return cls(*parts)


# -- generator ---------------------------------------------------------------

def _multisets_upto(k: int, max_size: int) -> list:
    out = []
    for size in range(max_size + 1):
        out.extend(itertools.combinations_with_replacement(range(k), size))
    return out


def _canonical(structure: Sequence[tuple], k: int) -> tuple:
    """Minimal relabelled form of a list of (src, tgt) index tuples on ``k``
    labels, minimising only over permutations that preserve label
    signatures.  Returns ``(key, relabelling)``."""
    sig = [[] for _ in range(k)]
    for s, t in structure:
        for i in set(s) | set(t):
            sig[i].append((s.count(i), t.count(i), len(s), len(t)))
    sig = [tuple(sorted(v)) for v in sig]
    blocks = defaultdict(list)
    for i in range(k):
        blocks[sig[i]].append(i)
    ordered = [blocks[s] for s in sorted(blocks)]
    best = None
    for perms in itertools.product(*(itertools.permutations(b) for b in ordered)):
        relabel = {}
        for block in perms:
            for i in block:
                relabel[i] = len(relabel)
        key = tuple(sorted((tuple(sorted(relabel[i] for i in s)), tuple(sorted(relabel[i] for i in t)))
                           for s, t in structure))
        if best is None or key < best[0]:
            best = (key, relabel)
    return tuple(sorted(blocks)), best[0]


def generate_computads(bounds: GeneratorBounds) -> list:
    """Every computad within ``bounds``, one per isomorphism class.

    2-cells are named ``c1..cn`` and 3-cells ``e1..em``.  A computad is a
    structure on the 2-cells its boundaries use plus some isolated 2-cells,
    so structures are generated on exactly ``k`` used labels and padded.
    Ordered by number of 2-cells, then 3-cells, then canonical form.
    """
    b = bounds
    found = []
    for k in range(b.max2cells + 1):
        boundaries = _multisets_upto(k, b.max_boundary_size)
        pairs = [(s, t) for s in boundaries for t in boundaries]
        for m in range(b.max3cells + 1):
            if k > 0 and m == 0:
                continue
            seen = set()
            for structure in itertools.combinations_with_replacement(pairs, m):
                used = set()
                for s, t in structure:
                    used.update(s)
                    used.update(t)
                if len(used) != k:
                    continue
                sig_key, key = _canonical(structure, k)
                if (sig_key, key) in seen:
                    continue
                seen.add((sig_key, key))
                found.append((k, m, key))
    result = []
    for n in range(b.max2cells + 1):
        for m in range(b.max3cells + 1):
            for k, mm, key in sorted(f for f in found if f[1] == m and f[0] <= n):
                labels = [f"c{i}" for i in range(1, n + 1)]
                cells3 = [ThreeCell(f"e{j}", Multiset(labels[i] for i in s), Multiset(labels[i] for i in t))
                          for j, (s, t) in enumerate(key, 1)]
                result.append(Computad(tuple(labels), tuple(cells3), name=f"Y{len(result)}"))
    return result


# -- reports -----------------------------------------------------------------

@dataclass(frozen=True)
class Failure:
    test_object: str
    cone: str
    reason: str
    detail: str = ""

    def __str__(self):
        extra = f" ({self.detail})" if self.detail else ""
        return f"{self.reason}: object {self.test_object} cone {self.cone}{extra}"


@dataclass
class UPReport:
    subject: str
    bounds: Optional[GeneratorBounds]
    cones_checked: int = 0
    objects_checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def reasons(self) -> set:
        return {f.reason for f in self.failures}

    def to_text(self) -> str:
        lines = [f"check {self.subject} bounds={self.bounds} objects={self.objects_checked}"]
        lines.extend(str(f) for f in self.failures)
        lines.append(f"PASS cones={self.cones_checked}" if self.passed else f"FAIL failures={len(self.failures)}")
        return "\n".join(lines) + "\n"


def _cone_text(*morphisms: Morphism) -> str:
    parts = []
    for h in morphisms:
        m2 = ",".join(f"{a}>{b}" for a, b in sorted(h.map2.items()))
        m3 = ",".join(f"{a}>{b}" for a, b in sorted(h.map3.items()))
        parts.append(f"[{m2};{m3}]")
    return " ".join(parts)


def _family(bounds, family):
    if family is not None:
        return list(family)
    return generate_computads(bounds)


def check_product_up(a: Computad, b: Computad, candidate: ProductResult,
                     bounds: Optional[GeneratorBounds], *, family: Optional[Iterable[Computad]] = None,
                     budget: Optional[int] = None) -> UPReport:
    """For every test object ``Y`` and cone ``(u, v)``, count the ``k`` with
    ``p k = u`` and ``q k = v``; exactly one must exist and agree with
    :func:`pair_into_product`."""
    report = UPReport(f"product {a.name} x {b.name}", bounds)
    p, q = candidate.proj_left, candidate.proj_right
    for y in _family(bounds, family):
        report.objects_checked += 1
        us = enumerate_homs(y, a, budget)
        vs = enumerate_homs(y, b, budget)
        if not us or not vs:
            continue
        groups = defaultdict(list)
        for k in enumerate_homs(y, candidate.object, budget):
            groups[(compose(p, k).table(), compose(q, k).table())].append(k)
        for u in us:
            for v in vs:
                report.cones_checked += 1
                ks = groups.get((u.table(), v.table()), [])
                if not ks:
                    report.failures.append(Failure(y.name, _cone_text(u, v), NO_FACTORISATION))
                    continue
                if len(ks) > 1:
                    report.failures.append(Failure(y.name, _cone_text(u, v), NON_UNIQUE, f"{len(ks)} factorisations"))
                    continue
                try:
                    built = pair_into_product(u, v, candidate)
                except ComputadError as exc:
                    report.failures.append(Failure(y.name, _cone_text(u, v), NON_COMMUTING, str(exc)))
                    continue
                if built != ks[0]:
                    report.failures.append(Failure(y.name, _cone_text(u, v), NON_COMMUTING,
                                                   "constructed factorisation differs from the unique one"))
    return report


def check_coequalizer_up(alpha1: Morphism, alpha2: Morphism, candidate: CoequalizerResult,
                         bounds: Optional[GeneratorBounds], *, family: Optional[Iterable[Computad]] = None,
                         budget: Optional[int] = None) -> UPReport:
    """For every test object ``Y`` and every ``u: A -> Y`` with
    ``u a1 = u a2``, exactly one ``k`` with ``k q = u`` must exist and agree
    with :func:`coeq_factor`."""
    a = alpha1.cod
    q = candidate.q
    report = UPReport(f"coequaliser of {alpha1.name}, {alpha2.name}", bounds)
    if compose(q, alpha1) != compose(q, alpha2):
        report.failures.append(Failure("-", _cone_text(q), NON_COMMUTING, "q does not coequalise the pair"))
    # u a1 = u a2 compared through images of the domain's cells.
    e = alpha1.dom
    for y in _family(bounds, family):
        report.objects_checked += 1
        cocones = []
        for u in enumerate_homs(a, y, budget):
            if (all(u.map2[alpha1.map2[x]] == u.map2[alpha2.map2[x]] for x in e.cells2)
                    and all(u.map3[alpha1.map3[n]] == u.map3[alpha2.map3[n]] for n in e.names3)):
                cocones.append(u)
        if not cocones:
            continue
        groups = defaultdict(list)
        for k in enumerate_homs(candidate.object, y, budget):
            groups[compose(k, q).table()].append(k)
        for u in cocones:
            report.cones_checked += 1
            ks = groups.get(u.table(), [])
            if not ks:
                report.failures.append(Failure(y.name, _cone_text(u), NO_FACTORISATION))
                continue
            if len(ks) > 1:
                report.failures.append(Failure(y.name, _cone_text(u), NON_UNIQUE, f"{len(ks)} factorisations"))
                continue
            try:
                built = coeq_factor(candidate, u)
            except ComputadError as exc:
                report.failures.append(Failure(y.name, _cone_text(u), NON_COMMUTING, str(exc)))
                continue
            if built != ks[0]:
                report.failures.append(Failure(y.name, _cone_text(u), NON_COMMUTING,
                                               "constructed factorisation differs from the unique one"))
    return report


# -- pairing oracle ----------------------------------------------------------

DEFAULT_ORACLE_BUDGET = 10**7


def count_pairings_oracle(s: Multiset, t: Multiset, budget: int = DEFAULT_ORACLE_BUDGET) -> int:
    """Number of distinct pair-multisets induced by bijections between the
    expanded sequences of ``s`` and ``t``."""
    left = [label for label, n in s.items() for _ in range(n)]
    right = [label for label, n in t.items() for _ in range(n)]
    if len(left) != len(right):
        return 0
    if math.factorial(len(left)) > budget:
        raise OracleBudgetExceeded("pairing oracle", math.factorial(len(left)), budget)
    seen = set()
    for perm in itertools.permutations(range(len(right))):
        seen.add(tuple(sorted((left[i], right[j]) for i, j in enumerate(perm))))
    return len(seen)


# -- terminal object ---------------------------------------------------------

def find_terminal(bounds: GeneratorBounds, *, candidates: Optional[Iterable[Computad]] = None,
                  budget: Optional[int] = None) -> Optional[Computad]:
    """First candidate receiving exactly one morphism from every generated
    computad.  Terminality is only certified relative to that family."""
    family = generate_computads(bounds)
    pool = family if candidates is None else list(candidates)
    for t in pool:
        if all(len(enumerate_homs(y, t, budget)) == 1 for y in family):
            return t
    return None
