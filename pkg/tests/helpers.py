"""Independent oracles and sabotaged constructions shared by the tests."""
import itertools

from computads.constructions import (CoequalizerResult, ProductResult, coequalizer, product,
                                    product_of_morphisms)
from computads.core import Computad, Morphism, ThreeCell, validate_morphism
from computads.multiset import Multiset
from computads.counterexample import build_paper_objects


def brute_homs(x, y):
    """Generate every pair of label maps and keep the valid ones."""
    out = []
    for m2 in itertools.product(y.cells2, repeat=len(x.cells2)):
        for m3 in itertools.product(y.names3, repeat=len(x.names3)):
            h = Morphism(x, y, dict(zip(x.cells2, m2)), dict(zip(x.names3, m3)))
            if not validate_morphism(h):
                out.append(h)
    return out


def paper_pipeline():
    o = build_paper_objects()
    prod_eb = product(o.E, o.B)
    prod_ab = product(o.A, o.B)
    a1x1 = product_of_morphisms(o.alpha1, prod_eb, prod_ab)
    a2x1 = product_of_morphisms(o.alpha2, prod_eb, prod_ab)
    return o, prod_eb, prod_ab, a1x1, a2x1


def restrict(h, dom):
    return Morphism(dom, h.cod, {a: h.map2[a] for a in dom.cells2},
                    {n: h.map3[n] for n in dom.names3}, name=h.name)


def product_missing_cell(prod: ProductResult, missing: str) -> ProductResult:
    obj = prod.object
    smaller = Computad(obj.cells2, tuple(c for c in obj.cells3 if c.name != missing), name=obj.name)
    index = {k: v for k, v in prod.cell_index.items() if k != missing}
    return ProductResult(smaller, restrict(prod.proj_left, smaller), restrict(prod.proj_right, smaller),
                         index, prod.left, prod.right)


def product_with_duplicate(prod: ProductResult, dup: str) -> ProductResult:
    obj = prod.object
    orig = obj.cell(dup)
    copy = ThreeCell(dup + "'", orig.src, orig.tgt)
    bigger = Computad(obj.cells2, obj.cells3 + (copy,), name=obj.name)

    def extend(h):
        m3 = dict(h.map3)
        m3[copy.name] = m3[dup]
        return Morphism(bigger, h.cod, h.map2, m3, name=h.name)

    return ProductResult(bigger, extend(prod.proj_left), extend(prod.proj_right),
                         dict(prod.cell_index), prod.left, prod.right)


def over_quotient(alpha1, alpha2) -> CoequalizerResult:
    """Paper coequaliser, but additionally identifying a3 with a1 and a2."""
    a = alpha1.cod
    label = "[" + "|".join(a.cells2) + "]"
    obj = Computad((label,), tuple(ThreeCell(c.name, _collapse(c.src, label), _collapse(c.tgt, label))
                                   for c in a.cells3), name="C_over")
    q = Morphism(a, obj, {x: label for x in a.cells2}, {n: n for n in a.names3}, name="q")
    return CoequalizerResult(obj, q, {label: tuple(a.cells2)}, {n: (n,) for n in a.names3}, alpha1, alpha2)


def _collapse(m, label):
    return Multiset([label] * m.size)


def paper_coequalizer():
    o = build_paper_objects()
    return o, coequalizer(o.alpha1, o.alpha2)
