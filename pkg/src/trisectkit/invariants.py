"""JSON-ready invariant summaries for every diagram kind.

Corpus files store these blocks as their expected invariants, and the CLI
prints them.
"""

from __future__ import annotations

from .errors import NotStandardized, OddBridgeCount, OpenStrand
from .fileformat import Diagram, kind_of
from .links import LinkDiagram, jones
from .ptri import PseudoTrisectionDiagram, restrict_boundary, sector_ranks, validate_ptri
from .shadow import (
    PseudoShadowDiagram,
    boundary_link,
    orientability,
    sector_link_components,
    surface_euler_characteristic,
)
from .triheeg import TripleHeegaardDiagram, realize_homology_3, validate_triheeg


def _groups(gs) -> list[str]:
    return [str(g) for g in gs]


def triheeg_summary(D: TripleHeegaardDiagram) -> dict:
    report = validate_triheeg(D)
    out: dict = {"valid": report.ok}
    idx = report.info.get("indices")
    if idx is not None:
        out.update(y=list(idx.y), b=idx.b, p=list(idx.p), c=idx.complexity)
    if report.ok:
        out["homology"] = _groups(realize_homology_3(D))
    return out


def ptri_summary(D: PseudoTrisectionDiagram) -> dict:
    report = validate_ptri(D)
    out: dict = {"valid": report.ok}
    idx = report.info.get("indices")
    if idx is not None:
        out.update(idx.as_dict())
    if report.ok:
        _, groups = sector_ranks(D)
        out["sector_homology"] = [_groups(g) for g in groups]
        out["boundary_homology"] = _groups(realize_homology_3(restrict_boundary(D)))
    return out


def shadow_summary(SD: PseudoShadowDiagram) -> dict:
    out: dict = {"bridge_count": SD.bridge_count()}
    try:
        out["sector_loops"] = [sector_link_components(SD, i) for i in range(3)]
        out["euler_characteristic"] = surface_euler_characteristic(SD)
    except (OpenStrand, OddBridgeCount) as exc:
        out["error"] = str(exc)
        return out
    o = orientability(SD)
    out["orientable"] = o.orientable
    if not o.orientable:
        out["odd_cycle_length"] = len(o.odd_cycle)
    try:
        LD = boundary_link(SD)
    except NotStandardized:
        out["boundary_link"] = None
    else:
        out["boundary_link"] = link_summary(LD)
    return out


def link_summary(LD: LinkDiagram) -> dict:
    return {
        "components": len(LD.components),
        "crossings": LD.crossing_count,
        "writhe": LD.writhe(),
        "jones": jones(LD).format("t"),
    }


def summary(diagram: Diagram) -> dict:
    kind = kind_of(diagram)
    fn = {"triheeg": triheeg_summary, "ptri": ptri_summary, "shadow": shadow_summary, "link": link_summary}[kind]
    return fn(diagram)
