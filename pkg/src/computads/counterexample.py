"""The coequaliser that ``- x B`` fails to preserve, built and checked step by step.

``E`` has 2-cells ``x, y``; ``A`` has 2-cells ``a1, a2, a3`` and one 3-cell
``f: a1.a2 -> a3``; the parallel pair ``E => A`` sends ``x`` to ``a1`` resp.
``a2`` and ``y`` to ``a3``.  Its coequaliser ``C`` identifies ``a1`` with
``a2``.  With ``B`` a copy of ``A``, the coequaliser ``P`` of the pair
``E x B => A x B`` keeps two 3-cells over the single 3-cell of ``C x B``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .constructions import (check_result, comparison_map, coequalizer, product,
                            product_of_morphisms)
from .core import Computad, Morphism, compose, computad, find_isomorphism
from .errors import InternalInvariantViolation
from .formats import format_computad, format_morphism

VERDICT_NOT_PRESERVED = "not-preserved"
VERDICT_PRESERVED = "preserved"


@dataclass(frozen=True)
class PaperObjects:
    E: Computad
    A: Computad
    B: Computad
    alpha1: Morphism
    alpha2: Morphism


def build_paper_objects() -> PaperObjects:
    e = computad("E", ["x", "y"])
    a = computad("A", ["a1", "a2", "a3"], [("f", ["a1", "a2"], ["a3"])])
    b = computad("B", ["b1", "b2", "b3"], [("g", ["b1", "b2"], ["b3"])])
    alpha1 = Morphism(e, a, {"x": "a1", "y": "a3"}, {}, name="alpha1")
    alpha2 = Morphism(e, a, {"x": "a2", "y": "a3"}, {}, name="alpha2")
    return PaperObjects(e, a, b, alpha1, alpha2)


def build_empty_target_objects() -> PaperObjects:
    """Variant whose 3-cells have empty targets: ``f: a1.a2 -> 1``."""
    e = computad("E", ["x"])
    a = computad("A", ["a1", "a2"], [("f", ["a1", "a2"], [])])
    b = computad("B", ["b1", "b2"], [("g", ["b1", "b2"], [])])
    alpha1 = Morphism(e, a, {"x": "a1"}, {}, name="alpha1")
    alpha2 = Morphism(e, a, {"x": "a2"}, {}, name="alpha2")
    return PaperObjects(e, a, b, alpha1, alpha2)


# (2-cells, 3-cells) expected at each stage.
PAPER_GOLDENS = {
    "A": (3, 1), "E": (2, 0), "C": (2, 1), "B": (3, 1),
    "ExB": (6, 0), "AxB": (9, 2), "CxB": (6, 1), "P": (6, 2),
}
EMPTY_TARGET_GOLDENS = {
    "A": (2, 1), "E": (1, 0), "C": (1, 1), "B": (2, 1),
    "ExB": (2, 0), "AxB": (4, 2), "CxB": (2, 1), "P": (2, 2),
}

CXB_NOTE = ("C x B is built as a full product, so it has 6 2-cells: the pairs "
            "([a1|a2],bj) and (a3,bj) for j = 1,2,3.")


@dataclass
class StepRecord:
    step: int
    title: str
    produced: str
    stats: Optional[tuple]
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.checks)


@dataclass
class PipelineReport:
    title: str
    steps: list
    verdict: str
    witness: Optional[str]
    notes: list
    objects: dict
    morphisms: dict

    @property
    def all_checks_passed(self) -> bool:
        return all(s.passed for s in self.steps)

    def to_text(self) -> str:
        out = [self.title]
        for s in self.steps:
            stats = "" if s.stats is None else f" [2-cells={s.stats[0]} 3-cells={s.stats[1]}]"
            out.append(f"step {s.step}: {s.title} -> {s.produced}{stats}")
            for label, ok in s.checks:
                out.append(f"  {'ok  ' if ok else 'FAIL'} {label}")
        for note in self.notes:
            out.append(f"note: {note}")
        if self.witness:
            out.append(f"witness: {self.witness}")
        if self.verdict == VERDICT_NOT_PRESERVED:
            out.append("VERDICT: coequaliser NOT preserved by - x B")
        else:
            out.append("VERDICT: coequaliser preserved by - x B")
        return "\n".join(out) + "\n"

    def to_dict(self) -> dict:
        return {
            "title": self.title,
            "steps": [
                {"step": s.step, "title": s.title, "produced": s.produced,
                 "cells2": None if s.stats is None else s.stats[0],
                 "cells3": None if s.stats is None else s.stats[1],
                 "checks": [{"check": c, "passed": ok} for c, ok in s.checks]}
                for s in self.steps
            ],
            "verdict": self.verdict,
            "witness": self.witness,
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def dump(self, directory) -> list:
        """Write every object as ``<name>.cpd`` and morphism as ``<name>.mor``."""
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        written = []
        for key, obj in self.objects.items():
            path = directory / f"{key}.cpd"
            path.write_text(format_computad(obj.renamed(key)), encoding="utf-8")
            written.append(path)
        for key, (h, dom_key, cod_key) in self.morphisms.items():
            named = Morphism(self.objects[dom_key].renamed(dom_key), self.objects[cod_key].renamed(cod_key),
                             h.map2, h.map3, name=key)
            path = directory / f"{key}.mor"
            path.write_text(format_morphism(named), encoding="utf-8")
            written.append(path)
        return written


def _stats_check(name: str, obj: Computad, goldens: dict) -> tuple:
    want = goldens[name]
    return (f"{name} has {want[0]} 2-cells and {want[1]} 3-cells", obj.stats() == want)


def _run(objs: PaperObjects, goldens: dict, title: str) -> PipelineReport:
    steps = []
    E, A, B = objs.E, objs.A, objs.B

    def record(step, title, produced, obj=None, checks=()):
        try:
            if obj is not None:
                check_result(obj)
        except InternalInvariantViolation as exc:
            raise InternalInvariantViolation(f"step {step} ({title}): {exc}") from None
        steps.append(StepRecord(step, title, produced, None if obj is None else obj.stats(), list(checks)))

    record(1, "computad A", "A", A, [_stats_check("A", A, goldens)])
    record(2, "computad E", "E", E, [_stats_check("E", E, goldens)])
    for h in (objs.alpha1, objs.alpha2):
        check_result(h)
    record(3, "parallel pair alpha1, alpha2 : E -> A", "alpha1, alpha2", None,
           [("alpha1 and alpha2 are valid morphisms", True)])

    ce_c = coequalizer(objs.alpha1, objs.alpha2)
    C = ce_c.object.renamed("C")
    beta = ce_c.q
    check_result(beta)
    record(4, "coequaliser C of alpha1, alpha2", "C, beta", C, [
        _stats_check("C", C, goldens),
        ("beta.alpha1 = beta.alpha2", _composites_agree(beta, objs.alpha1, objs.alpha2)),
    ])

    iso_ab = find_isomorphism(A, B)
    record(5, "computad B", "B", B, [_stats_check("B", B, goldens), ("B is isomorphic to A", iso_ab is not None)])

    prod_eb = product(E, B)
    record(6, "product E x B", "ExB", prod_eb.object, [_stats_check("ExB", prod_eb.object, goldens)])
    prod_ab = product(A, B)
    record(7, "product A x B", "AxB", prod_ab.object, [_stats_check("AxB", prod_ab.object, goldens)])
    prod_cb = product(C, B)
    record(8, "product C x B", "CxB", prod_cb.object, [_stats_check("CxB", prod_cb.object, goldens)])

    a1x1 = product_of_morphisms(objs.alpha1, prod_eb, prod_ab)
    a2x1 = product_of_morphisms(objs.alpha2, prod_eb, prod_ab)
    for h in (a1x1, a2x1):
        check_result(h)
    ce_p = coequalizer(a1x1, a2x1)
    P = ce_p.object.renamed("P")
    comparison = comparison_map(ce_p, prod_ab, prod_cb, beta)
    iso = find_isomorphism(P, prod_cb.object)
    images = sorted(set(comparison.map3.values()))
    merged = len(images) < len(comparison.map3)
    count_gap = len(P.cells3) != len(prod_cb.object.cells3)
    record(9, "coequaliser P of alpha1 x 1, alpha2 x 1 and comparison P -> C x B", "P, comparison", P, [
        _stats_check("P", P, goldens),
        ("comparison.q_P = beta x 1",
         _composite_is(comparison, ce_p.q, product_of_morphisms(beta, prod_ab, prod_cb))),
        ("comparison is surjective", comparison.is_surjective()),
        ("comparison is not injective on 3-cells", merged),
        ("P and C x B have different numbers of 3-cells", count_gap),
        ("exhaustive search finds no isomorphism P -> C x B", iso is None),
    ])

    verdict = VERDICT_NOT_PRESERVED if iso is None else VERDICT_PRESERVED
    witness = None
    if verdict == VERDICT_NOT_PRESERVED:
        sent = ", ".join(f"{n} -> {m}" for n, m in sorted(comparison.map3.items()))
        witness = f"comparison map on 3-cells: {sent}"
    return PipelineReport(
        title=title,
        steps=steps,
        verdict=verdict,
        witness=witness,
        notes=[CXB_NOTE] if goldens is PAPER_GOLDENS else [],
        objects={"E": E, "A": A, "B": B, "C": C, "ExB": prod_eb.object, "AxB": prod_ab.object,
                 "CxB": prod_cb.object, "P": P},
        morphisms={"alpha1": (objs.alpha1, "E", "A"), "alpha2": (objs.alpha2, "E", "A"),
                   "beta": (beta, "A", "C"), "alpha1x1": (a1x1, "ExB", "AxB"),
                   "alpha2x1": (a2x1, "ExB", "AxB"), "qP": (ce_p.q, "AxB", "P"),
                   "comparison": (comparison, "P", "CxB")},
    )


def _composites_agree(q: Morphism, a1: Morphism, a2: Morphism) -> bool:
    return compose(q, a1) == compose(q, a2)


def _composite_is(k: Morphism, q: Morphism, target: Morphism) -> bool:
    return compose(k, q) == target


def run_counterexample() -> PipelineReport:
    return _run(build_paper_objects(), PAPER_GOLDENS, "coequaliser E => A -> C under - x B")


def run_counterexample_empty_target_variant() -> PipelineReport:
    return _run(build_empty_target_objects(), EMPTY_TARGET_GOLDENS,
                "coequaliser E => A -> C under - x B (3-cells with empty targets)")
