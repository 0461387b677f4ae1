"""Binary products, coequalisers and their factorisations.

Product 3-cells are indexed by quadruples ``(f, g, P_s, P_t)``: a 3-cell
``f`` of the left factor, a 3-cell ``g`` of the right factor, and pairings
``P_s`` of ``src f`` with ``src g`` and ``P_t`` of ``tgt f`` with ``tgt g``.
Because boundaries are commutative, one pair ``(f, g)`` can give several
product 3-cells.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product as cartesian
from typing import Mapping, Optional

from .core import Computad, Morphism, ThreeCell, compose, validate_computad, validate_morphism
from .errors import (ConeConditionViolated, IncompatibleParallelPair,
                     InternalInvariantViolation)
from .multiset import Multiset, enumerate_pairings, push_forward


def pair_label(a: str, b: str) -> str:
    return f"({a},{b})"


def class_label(members) -> str:
    """Label of a quotient cell: the member itself for singletons, else
    ``[least|...]`` with members sorted."""
    members = sorted(members)
    if len(members) == 1:
        return members[0]
    return "[" + "|".join(members) + "]"


@dataclass(frozen=True)
class ProductResult:
    object: Computad
    proj_left: Morphism
    proj_right: Morphism
    cell_index: Mapping  # product 3-cell name -> (f, g, P_s, P_t)
    left: Computad
    right: Computad

    def cell_for(self, f: str, g: str, ps: Multiset, pt: Multiset) -> Optional[str]:
        for name, quad in self.cell_index.items():
            if quad == (f, g, ps, pt):
                return name
        return None

    def provenance(self) -> list:
        lines = []
        for name, (f, g, ps, pt) in sorted(self.cell_index.items()):
            lines.append(f"{name} = ({f}, {g}) source pairing {_pairs(ps)} target pairing {_pairs(pt)}")
        return lines


def _pairs(p: Multiset) -> str:
    if not p:
        return "{}"
    return "{" + ", ".join(pair_label(a, b) for a, b in p) + "}"


def product(a: Computad, b: Computad) -> ProductResult:
    labels = {}
    for x in a.cells2:
        for y in b.cells2:
            labels[(x, y)] = pair_label(x, y)
    if len(set(labels.values())) != len(labels):
        raise ValueError(f"2-cell labels of {a.name} and {b.name} give ambiguous pair labels")

    cells3 = []
    index = {}
    left3, right3 = {}, {}
    for f in a.cells3:
        for g in b.cells3:
            sources = enumerate_pairings(f.src, g.src)
            targets = enumerate_pairings(f.tgt, g.tgt)
            for i, (ps, pt) in enumerate(cartesian(sources, targets), 1):
                name = f"({f.name},{g.name})#{i}"
                cells3.append(ThreeCell(name, push_forward(labels, ps), push_forward(labels, pt)))
                index[name] = (f.name, g.name, ps, pt)
                left3[name] = f.name
                right3[name] = g.name
    if len(index) != len(cells3):
        raise ValueError(f"3-cell names of {a.name} and {b.name} give ambiguous product names")

    obj = Computad(tuple(labels.values()), tuple(cells3), name=f"{a.name}x{b.name}")
    p = Morphism(obj, a, {lab: x for (x, _), lab in labels.items()}, left3, name=f"p_{a.name}")
    q = Morphism(obj, b, {lab: y for (_, y), lab in labels.items()}, right3, name=f"q_{b.name}")
    return ProductResult(obj, p, q, index, a, b)


def pair_into_product(u: Morphism, v: Morphism, prod: ProductResult,
                      name: Optional[str] = None) -> Morphism:
    """The factorisation ``k`` of the cone ``(u, v)`` through ``prod``.

    A 3-cell ``e`` goes to the product cell whose pairings are the images
    of ``src e`` and ``tgt e`` under ``t -> (u(t), v(t))``.
    """
    if u.dom != v.dom:
        raise ValueError(f"{u.name} and {v.name} have different domains")
    y = u.dom
    map2 = {t: pair_label(u.map2[t], v.map2[t]) for t in y.cells2}
    both = {t: (u.map2[t], v.map2[t]) for t in y.cells2}
    lookup = {quad: name for name, quad in prod.cell_index.items()}
    map3 = {}
    for e in y.cells3:
        quad = (u.map3[e.name], v.map3[e.name], push_forward(both, e.src), push_forward(both, e.tgt))
        if quad not in lookup:
            raise InternalInvariantViolation(f"no product 3-cell for {e.name} with index {quad}")
        map3[e.name] = lookup[quad]
    return Morphism(y, prod.object, map2, map3, name=name or f"<{u.name},{v.name}>")


@dataclass(frozen=True)
class CoequalizerResult:
    object: Computad
    q: Morphism
    classes2: Mapping  # quotient 2-cell -> sorted members
    classes3: Mapping  # quotient 3-cell -> sorted members
    alpha1: Morphism
    alpha2: Morphism

    @property
    def class_index(self) -> dict:
        index = {(2, k): v for k, v in self.classes2.items()}
        index.update({(3, k): v for k, v in self.classes3.items()})
        return index

    def provenance(self) -> list:
        lines = [f"2-cell {k} = {{{', '.join(v)}}}" for k, v in sorted(self.classes2.items())]
        lines += [f"3-cell {k} = {{{', '.join(v)}}}" for k, v in sorted(self.classes3.items())]
        return lines


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[max(rx, ry)] = min(rx, ry)

    def classes(self) -> list:
        groups = {}
        for x in self.parent:
            groups.setdefault(self.find(x), []).append(x)
        return [tuple(sorted(g)) for _, g in sorted(groups.items())]


def coequalizer(alpha1: Morphism, alpha2: Morphism) -> CoequalizerResult:
    if alpha1.dom != alpha2.dom or alpha1.cod != alpha2.cod:
        raise IncompatibleParallelPair(f"{alpha1.name} and {alpha2.name} are not parallel")
    src, a = alpha1.dom, alpha1.cod

    uf2 = _UnionFind(a.cells2)
    for x in src.cells2:
        uf2.union(alpha1.map2[x], alpha2.map2[x])
    uf3 = _UnionFind(a.names3)
    for n in src.names3:
        uf3.union(alpha1.map3[n], alpha2.map3[n])

    parts2, parts3 = uf2.classes(), uf3.classes()
    classes2 = {class_label(c): c for c in parts2}
    classes3 = {class_label(c): c for c in parts3}
    if len(classes2) != len(parts2) or len(classes3) != len(parts3):
        raise ValueError(f"quotient labels collide with cell labels of {a.name}")
    q2 = {m: lab for lab, members in classes2.items() for m in members}
    q3 = {m: lab for lab, members in classes3.items() for m in members}

    cells3 = []
    for lab, members in classes3.items():
        boundaries = {(push_forward(q2, a.cell(m).src), push_forward(q2, a.cell(m).tgt)) for m in members}
        if len(boundaries) != 1:
            raise InternalInvariantViolation(f"class {lab} has representative-dependent boundary {boundaries}")
        (s, t), = boundaries
        cells3.append(ThreeCell(lab, s, t))

    obj = Computad(tuple(classes2), tuple(cells3), name=f"coeq_{alpha1.name}_{alpha2.name}")
    q = Morphism(a, obj, q2, q3, name="q")
    return CoequalizerResult(obj, q, classes2, classes3, alpha1, alpha2)


def coeq_factor(ce: CoequalizerResult, u: Morphism, name: Optional[str] = None) -> Morphism:
    """The unique ``k`` with ``k . q = u`` for a cocone ``u`` out of the codomain."""
    if u.dom != ce.q.dom:
        raise IncompatibleParallelPair(f"{u.name} does not start at {ce.q.dom.name}")
    if compose(u, ce.alpha1) != compose(u, ce.alpha2):
        raise ConeConditionViolated(f"{u.name} does not coequalise {ce.alpha1.name} and {ce.alpha2.name}")
    map2 = {lab: u.map2[members[0]] for lab, members in ce.classes2.items()}
    map3 = {lab: u.map3[members[0]] for lab, members in ce.classes3.items()}
    return Morphism(ce.object, u.cod, map2, map3, name=name or f"{u.name}/q")


def product_of_morphisms(h: Morphism, prod_xb: ProductResult, prod_ab: ProductResult) -> Morphism:
    """``h x 1_B : X x B -> A x B``."""
    if prod_xb.right != prod_ab.right:
        raise ValueError("products have different right factors")
    return pair_into_product(compose(h, prod_xb.proj_left), prod_xb.proj_right, prod_ab,
                             name=f"{h.name}x1")


def comparison_map(ce_p: CoequalizerResult, prod_ab: ProductResult, prod_cb: ProductResult,
                   beta: Morphism) -> Morphism:
    """Canonical map from the coequaliser of ``(a1 x 1, a2 x 1)`` to ``C x B``."""
    beta_x1 = product_of_morphisms(beta, prod_ab, prod_cb)
    k = coeq_factor(ce_p, beta_x1, name="comparison")
    problems = validate_morphism(k)
    if problems:
        raise InternalInvariantViolation("; ".join(problems))
    return k


def check_result(obj_or_morphism) -> None:
    """Raise :class:`InternalInvariantViolation` if a construction output is invalid."""
    if isinstance(obj_or_morphism, Computad):
        problems = validate_computad(obj_or_morphism)
    else:
        problems = validate_morphism(obj_or_morphism)
    if problems:
        raise InternalInvariantViolation("; ".join(problems))
