"""Plain-text file formats for computads and morphisms.

Computad::

    computad A
    2cells a1 a2 a3
    3cell f : a1 * a2 -> a3

Morphism::

    morphism alpha1 : E -> A
    2 x -> a1
    2 y -> a3

Blank lines and lines starting with ``#`` are ignored.  Printing is
canonical (sorted), so ``parse(print(x)) == x`` and printing is stable.
"""
from __future__ import annotations

import re
from pathlib import Path
from typing import Mapping, Optional

from .core import Computad, Morphism, ThreeCell
from .errors import ParseError
from .multiset import format_multiset, parse_multiset

_FORBIDDEN = re.compile(r"\s|\*|:|->")


def check_label(label: str) -> None:
    if not label or label == "1" or _FORBIDDEN.search(label) or label.startswith("#"):
        raise ValueError(f"label {label!r} cannot be written in the text format")


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield no, line


def format_computad(x: Computad, provenance: Optional[list] = None) -> str:
    for a in x.cells2:
        check_label(a)
    out = [f"computad {x.name}", " ".join(["2cells", *x.cells2])]
    for c in x.cells3:
        check_label(c.name)
        out.append(f"3cell {c.name} : {format_multiset(c.src)} -> {format_multiset(c.tgt)}")
    if provenance:
        out.append("# provenance")
        out.extend(f"# {line}" for line in provenance)
    return "\n".join(out) + "\n"


def parse_computad(text: str, source: str = "<string>") -> Computad:
    name = None
    cells2 = None
    cells3 = []
    for no, line in _lines(text):
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if name is None:
            if head != "computad" or not rest or len(rest.split()) != 1:
                raise ParseError("expected 'computad <name>'", source=source, line=no)
            name = rest
        elif cells2 is None:
            if head != "2cells":
                raise ParseError("expected '2cells <label> ...'", source=source, line=no)
            cells2 = tuple(rest.split())
        elif head == "3cell":
            cname, colon, boundary = rest.partition(":")
            cname = cname.strip()
            if not colon or not cname or len(cname.split()) != 1:
                raise ParseError("expected '3cell <name> : <multiset> -> <multiset>'", source=source, line=no)
            src, arrow, tgt = boundary.partition("->")
            if not arrow:
                raise ParseError("expected '->' between source and target", source=source, line=no)
            cells3.append(ThreeCell(cname,
                                    parse_multiset(src, source=source, line=no),
                                    parse_multiset(tgt, source=source, line=no)))
        else:
            raise ParseError(f"expected '3cell', got {head!r}", source=source, line=no)
    if name is None:
        raise ParseError("expected 'computad <name>'", source=source)
    if cells2 is None:
        raise ParseError("expected '2cells <label> ...'", source=source)
    return Computad(cells2, tuple(cells3), name=name)


def format_morphism(phi: Morphism) -> str:
    out = [f"morphism {phi.name} : {phi.dom.name} -> {phi.cod.name}"]
    out.extend(f"2 {a} -> {b}" for a, b in sorted(phi.map2.items()))
    out.extend(f"3 {a} -> {b}" for a, b in sorted(phi.map3.items()))
    return "\n".join(out) + "\n"


def morphism_header(text: str, source: str = "<string>") -> tuple:
    """``(name, dom_name, cod_name)`` from the first line of a morphism file."""
    for no, line in _lines(text):
        m = re.fullmatch(r"morphism\s+(\S+)\s*:\s*(\S+)\s*->\s*(\S+)", line)
        if not m:
            raise ParseError("expected 'morphism <name> : <dom> -> <cod>'", source=source, line=no)
        return m.groups()
    raise ParseError("expected 'morphism <name> : <dom> -> <cod>'", source=source)


def parse_morphism(text: str, objects: Mapping[str, Computad], source: str = "<string>") -> Morphism:
    """Parse a morphism whose endpoints are looked up by name in ``objects``."""
    name, dom_name, cod_name = morphism_header(text, source)
    for obj in (dom_name, cod_name):
        if obj not in objects:
            raise ParseError(f"unknown computad {obj!r}", source=source, line=1)
    map2, map3 = {}, {}
    first = True
    for no, line in _lines(text):
        if first:
            first = False
            continue
        m = re.fullmatch(r"([23])\s+(\S+)\s*->\s*(\S+)", line)
        if not m:
            raise ParseError("expected '2 <label> -> <label>' or '3 <name> -> <name>'", source=source, line=no)
        table = map2 if m.group(1) == "2" else map3
        if m.group(2) in table:
            raise ParseError(f"{m.group(2)!r} is mapped twice", source=source, line=no)
        table[m.group(2)] = m.group(3)
    return Morphism(objects[dom_name], objects[cod_name], map2, map3, name=name)


def file_kind(text: str) -> str:
    for _, line in _lines(text):
        return line.split()[0]
    return ""


def load_computad(path) -> Computad:
    path = Path(path)
    return parse_computad(path.read_text(encoding="utf-8"), source=str(path))


def load_morphism(path, objects: Optional[Mapping[str, Computad]] = None) -> Morphism:
    """Load a morphism file.  Endpoints not found in ``objects`` are read
    from ``<name>.cpd`` next to the morphism file."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    _, dom_name, cod_name = morphism_header(text, str(path))
    known = dict(objects or {})
    for obj in (dom_name, cod_name):
        if obj not in known:
            sibling = path.with_name(f"{obj}.cpd")
            if sibling.exists():
                known[obj] = load_computad(sibling)
    return parse_morphism(text, known, source=str(path))
