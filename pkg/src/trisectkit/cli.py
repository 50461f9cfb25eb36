"""Command line interface: ``trisect <command> ...``.

Exit codes: 0 when every check passes, 1 on a validation failure or an
unreadable file, 2 on a usage error and 3 when an enumeration runs out of
budget.
"""

from __future__ import annotations

import json
import sys

import click

from . import census
from .errors import BudgetExceeded, FormatError, TrisectError
from .fileformat import DiagramFile, read_file, serialize
from .invariants import link_summary, summary
from .links import SectorLift, intersection_pairing, jones, kauffman_bracket, to_gauss_text
from .ptri import band_stabilize, boundary_stab_shift, torus_stabilize, validate_ptri
from .render import render_svg
from .shadow import boundary_link, validate_shadow
from .triheeg import (
    candidate_arcs,
    candidate_bands,
    handleslide_3,
    heegaard_stabilize_3,
    stabilize_3,
    stabilization_sites,
    validate_triheeg,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
MOVES_3D = ("stabilize", "heegaard", "handleslide")
MOVES_4D = ("torus-I", "torus-II", "band", "shift")


def _format_option(default: str = "text", allowed=("text", "json")):
    return click.option(
        "--format",
        "fmt",
        type=click.Choice(["text", "json", "svg"]),
        default=default,
        show_default=True,
        callback=lambda ctx, param, value: _check_format(value, allowed),
        help="Output format.",
    )


def _check_format(value: str, allowed) -> str:
    if value not in allowed:
        raise click.BadParameter(f"this command supports {', '.join(allowed)}")
    return value


def _load(path: str) -> DiagramFile:
    try:
        return read_file(path)
    except FormatError as exc:
        click.echo(f"{path}: {exc}", err=True)
        sys.exit(EXIT_FAIL)
    except OSError as exc:
        click.echo(f"{path}: {exc.strerror}", err=True)
        sys.exit(EXIT_FAIL)


def _emit(fmt: str, data, text_lines) -> None:
    if fmt == "json":
        click.echo(json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False))
    else:
        for line in text_lines:
            click.echo(line)


def _validate(f: DiagramFile):
    """Failures, warnings and the recomputed summary for a loaded file."""
    D = f.diagram
    if f.kind == "triheeg":
        report = validate_triheeg(D)
    elif f.kind == "ptri":
        report = validate_ptri(D)
    elif f.kind == "shadow":
        report = validate_shadow(D)
    else:
        report = None
    failures = list(report.failures) if report else []
    warnings = list(report.warnings) if report else []
    got = summary(D)
    expected = f.metadata.get("expected")
    if expected is not None and expected != got:
        keys = sorted(k for k in set(expected) | set(got) if expected.get(k) != got.get(k))
        failures.append("stored expected invariants differ in: " + ", ".join(keys))
    return failures, warnings, got


@click.group()
@click.version_option(package_name="trisectkit")
def main() -> None:
    """Trisection and pseudo-trisection diagrams: checks, invariants and moves."""


@main.command()
@click.argument("path", type=click.Path(dir_okay=False))
@_format_option()
def validate(path: str, fmt: str) -> None:
    """Validate a diagram file and compare its stored expected invariants."""
    f = _load(path)
    failures, warnings, _ = _validate(f)
    data = {"file": path, "kind": f.kind, "ok": not failures, "failures": failures, "warnings": warnings}
    lines = [f"{path}: {f.kind} {'ok' if not failures else 'FAILED'}"]
    lines += [f"  failure: {m}" for m in failures] + [f"  warning: {m}" for m in warnings]
    _emit(fmt, data, lines)
    sys.exit(EXIT_OK if not failures else EXIT_FAIL)


@main.command()
@click.argument("path", type=click.Path(dir_okay=False))
@_format_option()
def invariants(path: str, fmt: str) -> None:
    """Print the full index block and homology of a diagram."""
    f = _load(path)
    got = summary(f.diagram)
    lines = [f"{f.name or path} ({f.kind})"] + [f"  {k} = {v}" for k, v in sorted(got.items())]
    _emit(fmt, got, lines)
    ok = got.get("valid", True) and "error" not in got
    sys.exit(EXIT_OK if ok else EXIT_FAIL)


def _parse_site(items) -> dict[str, int]:
    site: dict[str, int] = {}
    for item in items:
        for part in item.split(","):
            if not part:
                continue
            key, sep, value = part.partition("=")
            if not sep or not value.lstrip("-").isdigit():
                raise click.BadParameter(f"expected KEY=INTEGER, got {part!r}", param_hint="--move-site")
            site[key.strip()] = int(value)
    return site


def _sites(f: DiagramFile, move: str, sector: int) -> list:
    D = f.diagram
    if move == "stabilize":
        return stabilization_sites(D, sector)[1]
    if move == "band":
        return candidate_arcs(D.surfaces[sector % 3 + 1], [c for fam in D.families for c in fam])
    if move in ("heegaard", "torus-I"):
        S = D.surfaces[sector % 3] if move == "heegaard" else D.surfaces[sector % 3 + 1]
        return list(range(len(S.faces)))
    if move == "torus-II":
        return list(range(len(D.central.faces)))
    return []


def _clean_sites(f: DiagramFile, arcs: list) -> list[int]:
    """Band arcs that touch no curve; a band along one of them can later be shifted."""
    used = {v for fam in f.diagram.families for c in fam for v in c.vertices}
    return [k for k, arc in enumerate(arcs) if not set(arc.vertices) & used]


def _apply(f: DiagramFile, move: str, site: dict[str, int]):
    D = f.diagram
    sector = site.get("sector", 0)
    if move == "stabilize":
        refined, arcs = stabilization_sites(D, sector)
        return stabilize_3(refined, sector, _pick(arcs, site.get("arc", 0), "arc"))
    if move == "heegaard":
        return heegaard_stabilize_3(D, sector, site.get("face", 0))
    if move == "handleslide":
        slider, over = site.get("slider", 0), site.get("over", 1)
        i = sector % 3
        fam = list(D.deltas[i])
        if not (0 <= slider < len(fam) and 0 <= over < len(fam)) or slider == over:
            raise click.BadParameter("slider and over must name two curves of the family", param_hint="--move-site")
        band = candidate_bands(D.pair(i), fam, slider, over)
        if band is None:
            raise TrisectError("no band between the two curves avoids the rest of the family")
        return handleslide_3(D, i, slider, over, band)
    if move in ("torus-I", "torus-II"):
        return torus_stabilize(D, move.split("-")[1], sector, site.get("face", 0))
    if move == "band":
        arcs = _sites(f, move, sector)
        return band_stabilize(D, sector, _pick(arcs, site.get("arc", 0), "arc"))
    return boundary_stab_shift(D)


def _pick(items: list, index: int, what: str):
    if not 0 <= index < len(items):
        raise click.BadParameter(f"{what} {index} is not among the {len(items)} candidates", param_hint="--move-site")
    return items[index]


@main.command()
@click.argument("path", type=click.Path(dir_okay=False))
@click.option("--type", "move", required=True, type=click.Choice(MOVES_3D + MOVES_4D), help="Move to apply.")
@click.option(
    "--move-site",
    "site_items",
    multiple=True,
    help="Site as KEY=INT pairs, e.g. sector=1,arc=0 (sector is 0-based; keys arc, face, slider, over).",
)
@click.option("--list-sites", is_flag=True, help="List the candidate arc or face ids and exit.")
@click.option("-o", "--output", type=click.Path(dir_okay=False), help="Write the result here (default: stdout).")
@_format_option()
def move(path: str, move: str, site_items, list_sites: bool, output: str | None, fmt: str) -> None:
    """Apply a named move and write the resulting diagram."""
    f = _load(path)
    wanted = "triheeg" if move in MOVES_3D else "ptri"
    if f.kind != wanted:
        raise click.UsageError(f"move {move} needs a {wanted} file, not {f.kind}")
    site = _parse_site(site_items)
    if list_sites:
        sites = _sites(f, move, site.get("sector", 0))
        clean = _clean_sites(f, sites) if move == "band" else []
        lines = [f"{k}: {s}" + (" (clean: shift possible)" if k in clean else "") for k, s in enumerate(sites)]
        _emit(fmt, {"move": move, "sites": len(sites), "clean": clean}, lines)
        sys.exit(EXIT_OK)
    try:
        result = _apply(f, move, site)
    except TrisectError as exc:
        click.echo(f"move failed: {type(exc).__name__}: {exc}", err=True)
        sys.exit(EXIT_FAIL)
    checked = DiagramFile(wanted, result, {})
    failures, _, got = _validate(checked)
    data = serialize(result)
    if output:
        with open(output, "wb") as fh:
            fh.write(data)
    else:
        click.echo(data.decode("utf-8"), nl=False)
    lines = [f"{move}: {'ok' if not failures else 'FAILED'}"] + [f"  {k} = {v}" for k, v in sorted(got.items())]
    lines += [f"  failure: {m}" for m in failures]
    if output or fmt == "json":
        _emit(fmt, {"move": move, "ok": not failures, "invariants": got, "failures": failures}, lines)
    sys.exit(EXIT_OK if not failures else EXIT_FAIL)


def _link_of(f: DiagramFile):
    if f.kind == "link":
        return f.diagram
    if f.kind == "shadow":
        return boundary_link(f.diagram)
    raise click.UsageError(f"a link or shadow file is needed, not {f.kind}")


@main.command("boundary-link")
@click.argument("path", type=click.Path(dir_okay=False))
@_format_option()
def boundary_link_cmd(path: str, fmt: str) -> None:
    """Extract the boundary link of a standardized shadow diagram."""
    f = _load(path)
    if f.kind != "shadow":
        raise click.UsageError("boundary-link needs a shadow file")
    try:
        LD = boundary_link(f.diagram)
    except TrisectError as exc:
        click.echo(f"{type(exc).__name__}: {exc}", err=True)
        sys.exit(EXIT_FAIL)
    data = dict(link_summary(LD), diagram=LD.as_dict())
    _emit(fmt, data, to_gauss_text(LD).splitlines() + [f"jones: {jones(LD).format('t')}"])


@main.command()
@click.argument("path", type=click.Path(dir_okay=False))
@_format_option()
def bracket(path: str, fmt: str) -> None:
    """Kauffman bracket and Jones polynomial of a link (or a shadow's boundary link)."""
    f = _load(path)
    try:
        LD = _link_of(f)
        br, jp = kauffman_bracket(LD), jones(LD)
    except TrisectError as exc:
        click.echo(f"{type(exc).__name__}: {exc}", err=True)
        sys.exit(EXIT_FAIL)
    data = {"bracket": br.format("A"), "jones": jp.format("t"), "writhe": LD.writhe()}
    _emit(fmt, data, [f"bracket: {data['bracket']}", f"jones: {data['jones']}", f"writhe: {LD.writhe()}"])


@main.command()
@click.argument("paths", nargs=-1, required=True, type=click.Path(dir_okay=False))
@_format_option()
def homclass(paths, fmt: str) -> None:
    """Pair lifted sector links; each file stores k_side and e_side component lists."""
    lifts = []
    for path in paths:
        f = _load(path)
        if f.kind != "link" or "k_side" not in f.metadata or "e_side" not in f.metadata:
            raise click.UsageError(f"{path}: a link file with k_side and e_side metadata is needed")
        lifts.append(SectorLift(f.diagram, tuple(f.metadata["k_side"]), tuple(f.metadata["e_side"])))
    try:
        total, parts = intersection_pairing(lifts)
    except TrisectError as exc:
        click.echo(f"{type(exc).__name__}: {exc}", err=True)
        sys.exit(EXIT_FAIL)
    lines = [f"sector {k + 1}: {v}" for k, v in enumerate(parts)] + [f"total: {total}", f"class: {total} H"]
    _emit(fmt, {"per_sector": parts, "total": total}, lines)


@main.command("enumerate")
@click.option("--max-complexity", type=click.IntRange(0, census.MAX_COMPLEXITY), default=2, show_default=True)
@click.option("--max-b", type=click.IntRange(1, 4), default=2, show_default=True)
@click.option("--budget", type=click.IntRange(1), default=census.DEFAULT_BUDGET, show_default=True)
@click.option("--seed", type=int, default=None, help="Shuffles generation order only.")
@_format_option()
def enumerate_cmd(max_complexity: int, max_b: int, budget: int, seed: int | None, fmt: str) -> None:
    """Enumerate triple Heegaard diagrams up to a complexity bound."""
    code = EXIT_OK
    try:
        entries = census.enumerate_triheeg(max_complexity, max_b, budget, seed)
    except BudgetExceeded as exc:
        click.echo(f"budget exceeded: {exc}", err=True)
        entries, code = exc.partial, EXIT_BUDGET
    rows = [
        {"complexity": e.complexity, "b": e.indices.b, "p": list(e.indices.p), "homology": list(e.homology)}
        for e in entries
    ]
    counts: dict[tuple, int] = {}
    for r in rows:
        key = (r["complexity"], r["homology"][1])
        counts[key] = counts.get(key, 0) + 1
    lines = [f"{len(rows)} diagrams{' (partial)' if code else ''}"]
    lines += [f"  c={c}  H1={h}: {n}" for (c, h), n in sorted(counts.items())]
    _emit(fmt, {"partial": bool(code), "entries": rows}, lines)
    sys.exit(code)


@main.command()
@click.argument("path", type=click.Path(dir_okay=False))
@click.option("-o", "--output", type=click.Path(dir_okay=False), help="Write the SVG here (default: stdout).")
@_format_option("svg", ("svg",))
def render(path: str, output: str | None, fmt: str) -> None:
    """Schematic SVG of the surfaces with coloured curve families."""
    svg = render_svg(_load(path).diagram)
    if output:
        with open(output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(svg)
    else:
        click.echo(svg, nl=False)


if __name__ == "__main__":
    main()
