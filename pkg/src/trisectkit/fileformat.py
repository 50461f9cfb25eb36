"""Diagram files: a JSON document per diagram with a mandatory format version.

The canonical serialization uses sorted keys, no optional whitespace and a
single trailing LF, so a canonical file is one line.  Errors raised while
reading carry the line and column of the offending value.

Layout by ``kind``:

``triheeg``  ``surfaces`` (3) and ``families`` (``delta_1..3``)
``ptri``     ``surfaces`` (4, central first) and ``families`` (``alpha_1..3``,
             ``delta_1..3``), optional ``notes`` and ``band``
``shadow``   ``base`` (a ``ptri`` body), ``taus``, ``links``, ``flags`` and
             ``orientation``
``link``     ``components`` (signed crossing visits) and ``signs``

A surface is ``{"faces": [[v, ...], ...], "labels": [[v, label], ...],
"disjoint_union": false}``; a family is ``{"tag": t, "curves": [{"vertices":
[...], "closed": bool}, ...]}``.  Every file may carry ``metadata`` with an
``expected`` invariant block and a free-text ``comment``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from json.decoder import scanstring
from typing import Any, Union

from .errors import DanglingReference, DiagramSyntaxError, VersionMismatch
from .links import LinkDiagram
from .ptri import PseudoTrisectionDiagram
from .shadow import PseudoShadowDiagram, SelfCrossingFlag
from .surfmap import CombinatorialSurface, Curve, CurveSystem
from .triheeg import TripleHeegaardDiagram

FORMAT_VERSION = 1
KINDS = ("triheeg", "ptri", "shadow", "link")
EXTENSIONS = {"triheeg": ".thd", "ptri": ".ptd", "shadow": ".shd", "link": ".lnk"}

Diagram = Union[TripleHeegaardDiagram, PseudoTrisectionDiagram, PseudoShadowDiagram, LinkDiagram]
Path = tuple


@dataclass
class DiagramFile:
    kind: str
    diagram: Any
    metadata: dict = field(default_factory=dict)

    @property
    def name(self) -> str:
        return getattr(self.diagram, "name", "")


def kind_of(diagram: Diagram) -> str:
    for kind, cls in (
        ("triheeg", TripleHeegaardDiagram),
        ("ptri", PseudoTrisectionDiagram),
        ("shadow", PseudoShadowDiagram),
        ("link", LinkDiagram),
    ):
        if isinstance(diagram, cls):
            return kind
    raise TypeError(f"no file kind for {type(diagram).__name__}")


# ---------------------------------------------------------------------------
# Tagged values for free-form metadata (band records)
# ---------------------------------------------------------------------------


def _encode_value(x: Any) -> Any:
    if isinstance(x, Curve):
        return {"curve": list(x.vertices), "closed": x.closed}
    if isinstance(x, tuple):
        return {"tuple": [_encode_value(v) for v in x]}
    if isinstance(x, list):
        return [_encode_value(v) for v in x]
    if isinstance(x, dict):
        return {"map": sorted(([_encode_value(k), _encode_value(v)] for k, v in x.items()), key=json.dumps)}
    if isinstance(x, (set, frozenset)):
        return {"set": sorted((_encode_value(v) for v in x), key=json.dumps)}
    if x is None or isinstance(x, (bool, int, str)):
        return x
    raise TypeError(f"cannot store {type(x).__name__} in a diagram file")


def _decode_value(x: Any) -> Any:
    if isinstance(x, list):
        return [_decode_value(v) for v in x]
    if isinstance(x, dict):
        if "curve" in x:
            return Curve(tuple(x["curve"]), bool(x["closed"]))
        if "tuple" in x:
            return tuple(_decode_value(v) for v in x["tuple"])
        if "map" in x:
            return {_hashable(_decode_value(k)): _decode_value(v) for k, v in x["map"]}
        if "set" in x:
            return frozenset(_hashable(_decode_value(v)) for v in x["set"])
        raise ValueError(f"unknown tagged value with keys {sorted(x)}")
    return x


def _hashable(x: Any) -> Any:
    return tuple(_hashable(v) for v in x) if isinstance(x, list) else x


# ---------------------------------------------------------------------------
# Objects to documents
# ---------------------------------------------------------------------------


def _surface_doc(S: CombinatorialSurface) -> dict:
    return {
        "faces": [list(f) for f in S.faces],
        "labels": [list(p) for p in S.labels],
        "disjoint_union": S.disjoint_union,
    }


def _family_doc(F: CurveSystem) -> dict:
    return {"tag": F.family, "curves": [{"vertices": list(c.vertices), "closed": c.closed} for c in F.curves]}


def _ptri_body(D: PseudoTrisectionDiagram) -> dict:
    body = {
        "name": D.name,
        "surfaces": [_surface_doc(S) for S in D.surfaces],
        "families": [_family_doc(F) for F in D.families],
    }
    if D.notes:
        body["notes"] = list(D.notes)
    if "band" in D.metadata:
        body["band"] = _encode_value(D.metadata["band"])
    return body


def to_document(diagram: Diagram, metadata: dict | None = None) -> dict:
    kind = kind_of(diagram)
    doc: dict[str, Any] = {"format_version": FORMAT_VERSION, "kind": kind}
    if kind == "triheeg":
        doc.update(
            name=diagram.name,
            surfaces=[_surface_doc(S) for S in diagram.surfaces],
            families=[_family_doc(F) for F in diagram.deltas],
        )
        if diagram.notes:
            doc["notes"] = list(diagram.notes)
    elif kind == "ptri":
        doc.update(_ptri_body(diagram))
    elif kind == "shadow":
        doc.update(
            name=diagram.name,
            base=_ptri_body(diagram.base),
            taus=[_family_doc(F) for F in diagram.taus],
            links=[_family_doc(F) for F in diagram.links],
            flags=[{"family": f.family, "vertex": f.vertex, "over": f.over} for f in diagram.flags],
            orientation=None if diagram.orientation is None else list(diagram.orientation),
        )
    else:
        doc.update(name=diagram.name, **diagram.as_dict())
    if metadata:
        doc["metadata"] = metadata
    return doc


def serialize(diagram: Diagram, metadata: dict | None = None) -> bytes:
    """Canonical bytes: sorted keys, minimal whitespace, one trailing LF."""
    return canonical_bytes(to_document(diagram, metadata))


def canonical_bytes(doc: dict) -> bytes:
    text = json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return (text + "\n").encode("utf-8")


# ---------------------------------------------------------------------------
# Locations
# ---------------------------------------------------------------------------

_WS = re.compile(r"[ \t\n\r]*")
_SCALAR = re.compile(r"-?(?:0|[1-9]\d*)(?:\.\d+)?(?:[eE][-+]?\d+)?|true|false|null")


def _value_offsets(text: str) -> dict[Path, int]:
    """Offset of every value in well-formed JSON ``text``, keyed by its path."""
    out: dict[Path, int] = {}

    def skip(i: int) -> int:
        return _WS.match(text, i).end()

    def walk(i: int, path: Path) -> int:
        i = skip(i)
        out[path] = i
        ch = text[i]
        if ch == "{":
            i = skip(i + 1)
            if text[i] == "}":
                return i + 1
            while True:
                key, i = scanstring(text, i + 1)
                i = skip(i) + 1
                i = skip(walk(i, path + (key,)))
                if text[i] == "}":
                    return i + 1
                i = skip(i + 1)
        if ch == "[":
            i = skip(i + 1)
            if text[i] == "]":
                return i + 1
            k = 0
            while True:
                i = skip(walk(i, path + (k,)))
                k += 1
                if text[i] == "]":
                    return i + 1
                i += 1
        if ch == '"':
            return scanstring(text, i + 1)[1]
        return _SCALAR.match(text, i).end()

    walk(0, ())
    return out


class _Locator:
    def __init__(self, text: str) -> None:
        self.text = text
        self._offsets: dict[Path, int] | None = None

    def at(self, path: Path) -> tuple[int, int]:
        if self._offsets is None:
            self._offsets = _value_offsets(self.text)
        path = tuple(path)
        while path not in self._offsets and path:
            path = path[:-1]
        offset = self._offsets.get(path, 0)
        line = self.text.count("\n", 0, offset) + 1
        column = offset - (self.text.rfind("\n", 0, offset) + 1) + 1
        return line, column

    def fail(self, cls, message: str, path: Path):
        line, column = self.at(path)
        where = "/".join(str(p) for p in path) or "<root>"
        return cls(f"{message} at {where}", line, column)


# ---------------------------------------------------------------------------
# Documents to objects
# ---------------------------------------------------------------------------


class _Reader:
    def __init__(self, doc: Any, loc: _Locator) -> None:
        self.doc = doc
        self.loc = loc

    def get(self, path: Path) -> Any:
        node = self.doc
        for p in path:
            node = node[p]
        return node

    def need(self, path: Path, key: str, typ, default=...) -> Any:
        node = self.get(path)
        if not isinstance(node, dict):
            raise self.loc.fail(DiagramSyntaxError, "expected an object", path)
        if key not in node:
            if default is not ...:
                return default
            raise self.loc.fail(DiagramSyntaxError, f"missing key {key!r}", path)
        value = node[key]
        if not isinstance(value, typ) or (typ is int and isinstance(value, bool)):
            raise self.loc.fail(DiagramSyntaxError, f"{key!r} has the wrong type", path + (key,))
        return value

    def int_list(self, path: Path) -> list[int]:
        value = self.get(path)
        if not isinstance(value, list):
            raise self.loc.fail(DiagramSyntaxError, "expected a list of integers", path)
        for k, v in enumerate(value):
            if not isinstance(v, int) or isinstance(v, bool):
                raise self.loc.fail(DiagramSyntaxError, "expected an integer", path + (k,))
        return value

    def surfaces(self, path: Path, count: int) -> list[CombinatorialSurface]:
        docs = self.need(path[:-1], path[-1], list)
        if len(docs) != count:
            raise self.loc.fail(DiagramSyntaxError, f"expected {count} surfaces, found {len(docs)}", path)
        out = []
        for s in range(count):
            sp = path + (s,)
            faces = self.need(sp, "faces", list)
            for f in range(len(faces)):
                self.int_list(sp + ("faces", f))
            labels = self.need(sp, "labels", list, [])
            for k in range(len(labels)):
                if len(self.int_list(sp + ("labels", k))) != 2:
                    raise self.loc.fail(DiagramSyntaxError, "a label is a [vertex, label] pair", sp + ("labels", k))
            union = self.need(sp, "disjoint_union", bool, False)
            vertices = {v for face in faces for v in face}
            for k, (v, _) in enumerate(labels):
                if v not in vertices:
                    raise self.loc.fail(DanglingReference, f"label names unknown vertex {v}", sp + ("labels", k))
            try:
                out.append(CombinatorialSurface.from_faces(faces, dict(map(tuple, labels)), union))
            except Exception as exc:
                raise self.loc.fail(DiagramSyntaxError, f"bad surface: {exc}", sp) from exc
        return out

    def families(self, path: Path, tags: list[str], vertices: set[int]) -> list[CurveSystem]:
        docs = self.need(path[:-1], path[-1], list)
        if len(docs) != len(tags):
            raise self.loc.fail(DiagramSyntaxError, f"expected {len(tags)} families", path)
        out = []
        for k, tag in enumerate(tags):
            fp = path + (k,)
            got = self.need(fp, "tag", str)
            if got != tag:
                raise self.loc.fail(DiagramSyntaxError, f"family {k} must be tagged {tag}, not {got}", fp + ("tag",))
            curves = []
            for c in range(len(self.need(fp, "curves", list))):
                cp = fp + ("curves", c)
                vs = self.int_list(cp + ("vertices",)) if isinstance(self.get(cp), dict) else None
                if vs is None:
                    raise self.loc.fail(DiagramSyntaxError, "expected a curve object", cp)
                for j, v in enumerate(vs):
                    if v not in vertices:
                        raise self.loc.fail(DanglingReference, f"curve uses unknown vertex {v}", cp + ("vertices", j))
                curves.append(Curve(tuple(vs), self.need(cp, "closed", bool, True)))
            out.append(CurveSystem(tag, tuple(curves)))
        return out

    def ptri(self, path: Path) -> PseudoTrisectionDiagram:
        surfaces = self.surfaces(path + ("surfaces",), 4)
        verts = {v for S in surfaces for f in S.faces for v in f}
        tags = [f"alpha_{k + 1}" for k in range(3)] + [f"delta_{k + 1}" for k in range(3)]
        fams = self.families(path + ("families",), tags, verts)
        notes = tuple(self.need(path, "notes", list, []))
        meta = {}
        if "band" in self.get(path):
            try:
                meta["band"] = _decode_value(self.get(path + ("band",)))
            except (ValueError, TypeError, KeyError) as exc:
                raise self.loc.fail(DiagramSyntaxError, f"bad band record: {exc}", path + ("band",)) from exc
        return PseudoTrisectionDiagram(
            tuple(surfaces), tuple(fams[:3]), tuple(fams[3:]), self.need(path, "name", str, ""), notes, meta
        )

    def shadow(self) -> PseudoShadowDiagram:
        if not isinstance(self.get(()).get("base"), dict):
            raise self.loc.fail(DiagramSyntaxError, "missing object 'base'", ())
        base = self.ptri(("base",))
        verts = {v for S in base.surfaces for f in S.faces for v in f}
        taus = self.families(("taus",), [f"tau_{k + 1}" for k in range(3)], verts)
        links = self.families(("links",), [f"L_{k + 1}" for k in range(3)], verts)
        fams = taus + links
        flags = []
        for k in range(len(self.need((), "flags", list, []))):
            fp = ("flags", k)
            f = self.need(fp, "family", int)
            v = self.need(fp, "vertex", int)
            over = self.need(fp, "over", int)
            if not 0 <= f < 6:
                raise self.loc.fail(DanglingReference, f"no family {f}", fp + ("family",))
            if not 0 <= over < len(fams[f]):
                raise self.loc.fail(DanglingReference, f"family {f} has no arc {over}", fp + ("over",))
            if v not in verts:
                raise self.loc.fail(DanglingReference, f"unknown vertex {v}", fp + ("vertex",))
            flags.append(SelfCrossingFlag(f, v, over))
        orientation = self.need((), "orientation", (list, type(None)), [0, 1])
        if orientation is not None:
            if len(self.int_list(("orientation",))) != 2:
                raise self.loc.fail(DiagramSyntaxError, "orientation is a [component, direction] pair", ("orientation",))
            orientation = tuple(orientation)
        return PseudoShadowDiagram(base, tuple(taus), tuple(links), tuple(flags), orientation, self.need((), "name", str, ""))

    def link(self) -> LinkDiagram:
        comps = self.need((), "components", list)
        for k in range(len(comps)):
            self.int_list(("components", k))
        signs = self.int_list(("signs",)) if "signs" in self.doc else None
        if signs is None:
            raise self.loc.fail(DiagramSyntaxError, "missing key 'signs'", ())
        n = len(signs)
        for k, comp in enumerate(comps):
            for j, v in enumerate(comp):
                if v == 0 or abs(v) > n:
                    raise self.loc.fail(DanglingReference, f"visit {v} names no crossing", ("components", k, j))
        try:
            return LinkDiagram(tuple(map(tuple, comps)), tuple(signs), self.need((), "name", str, ""))
        except ValueError as exc:
            raise self.loc.fail(DiagramSyntaxError, str(exc), ("components",)) from exc


def parse(data: bytes | str) -> DiagramFile:
    """Read a diagram file; errors carry line and column."""
    if isinstance(data, bytes):
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise DiagramSyntaxError(f"not UTF-8: {exc.reason}", 1, exc.start + 1) from exc
    else:
        text = data
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DiagramSyntaxError(exc.msg, exc.lineno, exc.colno) from exc
    loc = _Locator(text)
    if not isinstance(doc, dict):
        raise loc.fail(DiagramSyntaxError, "a diagram file is a JSON object", ())
    r = _Reader(doc, loc)
    if "format_version" not in doc:
        raise loc.fail(DiagramSyntaxError, "missing key 'format_version'", ())
    version = doc["format_version"]
    if version != FORMAT_VERSION:
        raise loc.fail(VersionMismatch, f"format version {version!r} is not {FORMAT_VERSION}", ("format_version",))
    kind = r.need((), "kind", str)
    if kind not in KINDS:
        raise loc.fail(DiagramSyntaxError, f"unknown kind {kind!r}", ("kind",))
    metadata = r.need((), "metadata", dict, {})
    if kind == "triheeg":
        surfaces = r.surfaces(("surfaces",), 3)
        verts = {v for S in surfaces for f in S.faces for v in f}
        fams = r.families(("families",), [f"delta_{k + 1}" for k in range(3)], verts)
        diagram: Any = TripleHeegaardDiagram(
            tuple(surfaces), tuple(fams), r.need((), "name", str, ""), tuple(r.need((), "notes", list, []))
        )
    elif kind == "ptri":
        diagram = r.ptri(())
    elif kind == "shadow":
        diagram = r.shadow()
    else:
        diagram = r.link()
    return DiagramFile(kind, diagram, metadata)


def read_file(path) -> DiagramFile:
    with open(path, "rb") as fh:
        return parse(fh.read())


def write_file(path, diagram: Diagram, metadata: dict | None = None) -> None:
    with open(path, "wb") as fh:
        fh.write(serialize(diagram, metadata))
