"""File formats and report emission (text, canonical JSON, SVG).

Facet files are one whitespace-separated facet per line with '#'
comments.  Cofiltration files are JSON: a first "facets" step followed
by "facets" or "remove" steps; removals delete the listed simplices
together with their stars.  All emitted JSON is key-sorted with LF
newlines and round-trips; SVG output is integer-coordinate and
byte-deterministic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .complexes import SimplicialComplex, build_complex, make_simplex
from .errors import CofiltrationAuditError, FacetParseError
from .persistence import Barcode
from .resilience import Cofiltration

__all__ = [
    "BarcodeReport",
    "parse_facets",
    "parse_facets_text",
    "parse_cofiltration",
    "parse_cofiltration_data",
    "cofiltration_to_data",
    "emit_barcode",
    "render_barcode_svg",
    "canonical_json",
]


# -- facet files --------------------------------------------------------


def parse_facets_text(text: str) -> SimplicialComplex:
    facets = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        ids = []
        for tok in line.split():
            try:
                v = int(tok)
            except ValueError:
                raise FacetParseError(f"not a vertex id: {tok!r}", lineno) from None
            if v < 0:
                raise FacetParseError(f"negative vertex id {v}", lineno)
            ids.append(v)
        try:
            facets.append(make_simplex(ids))
        except ValueError as exc:
            raise FacetParseError(str(exc), lineno) from None
    if not facets:
        raise FacetParseError("no facets in file")
    return build_complex(facets)


def parse_facets(path: str | Path) -> SimplicialComplex:
    """Read a facet file into a complex; raises FacetParseError with line."""
    text = Path(path).read_text(encoding="utf-8")
    return parse_facets_text(text)


# -- cofiltration files --------------------------------------------------


def _simplex_list(value, step: int) -> list[tuple[int, ...]]:
    if not isinstance(value, list):
        raise CofiltrationAuditError("expected a list of simplices", step)
    out = []
    for entry in value:
        if not isinstance(entry, list):
            raise CofiltrationAuditError(f"malformed simplex {entry!r}", step)
        try:
            out.append(make_simplex(entry))
        except ValueError as exc:
            raise CofiltrationAuditError(str(exc), step) from None
    return out


def parse_cofiltration_data(data) -> Cofiltration:
    if not isinstance(data, dict) or "steps" not in data:
        raise CofiltrationAuditError('missing "steps" key')
    raw_steps = data["steps"]
    if not isinstance(raw_steps, list) or not raw_steps:
        raise CofiltrationAuditError('"steps" must be a non-empty list')
    if not isinstance(raw_steps[0], dict) or "facets" not in raw_steps[0]:
        raise CofiltrationAuditError('first step must provide "facets"', 0)
    seed = data.get("seed")
    if seed is not None and not isinstance(seed, int):
        raise CofiltrationAuditError('"seed" must be an integer')
    chain: list[SimplicialComplex] = []
    for i, step in enumerate(raw_steps):
        if not isinstance(step, dict):
            raise CofiltrationAuditError("step must be an object", i)
        if "facets" in step:
            cur = build_complex(_simplex_list(step["facets"], i))
            if chain and not cur.is_subcomplex_of(chain[-1]):
                raise CofiltrationAuditError(
                    "not a subcomplex of the previous step", i)
        elif "remove" in step:
            cur = chain[-1]
            for s in _simplex_list(step["remove"], i):
                if not cur.has(s):
                    raise CofiltrationAuditError(
                        f"simplex {list(s)} not present, cannot remove", i)
                cur = cur.without_star(s)
        else:
            raise CofiltrationAuditError(
                'step needs "facets" or "remove"', i)
        chain.append(cur)
    return Cofiltration(tuple(chain), seed=seed)


def parse_cofiltration(path: str | Path) -> Cofiltration:
    """Read and audit a cofiltration file."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CofiltrationAuditError(f"malformed JSON: {exc}") from None
    return parse_cofiltration_data(data)


def cofiltration_to_data(cof: Cofiltration) -> dict:
    """Serializable form; uses the removal trace when available."""
    steps: list[dict] = [
        {"facets": [list(f) for f in cof.steps[0].facets]}]
    if cof.removed is not None and len(cof.removed) == cof.length - 1:
        for s in cof.removed:
            steps.append({"remove": [list(s)]})
    else:
        for c in cof.steps[1:]:
            steps.append({"facets": [list(f) for f in c.facets]})
    data: dict = {"steps": steps}
    if cof.seed is not None:
        data["seed"] = cof.seed
    return data


# -- reports -------------------------------------------------------------


def canonical_json(obj) -> str:
    """Key-sorted JSON with LF newlines and a trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


@dataclass(frozen=True)
class BarcodeReport:
    """A barcode with the context needed to reproduce it."""

    field: int
    degree: int
    mode: str
    barcode: Barcode
    seed: int | None = None

    def to_data(self) -> dict:
        data = {
            "field": self.field,
            "degree": self.degree,
            "mode": self.mode,
            "bars": [{"birth": b, "death": d, "mult": m}
                     for b, d, m in self.barcode.bars],
            "dims": list(self.barcode.dims()),
        }
        if self.seed is not None:
            data["seed"] = self.seed
        return data

    @classmethod
    def from_data(cls, data: dict) -> "BarcodeReport":
        bars = tuple(sorted((e["birth"], e["death"], e["mult"])
                            for e in data["bars"]))
        return cls(field=data["field"], degree=data["degree"],
                   mode=data["mode"],
                   barcode=Barcode(len(data["dims"]), bars),
                   seed=data.get("seed"))


def barcode_lines(code: Barcode) -> list[str]:
    if not code.bars:
        return ["(empty)"]
    return [f"[{b},{d}) x{m}" for b, d, m in code.bars]


def emit_barcode(report: BarcodeReport, format: str = "text") -> str:
    """Render a report as text, canonical JSON, or SVG."""
    if format == "text":
        return "\n".join(barcode_lines(report.barcode)) + "\n"
    if format == "json":
        return canonical_json(report.to_data())
    if format == "svg":
        return render_barcode_svg(
            [(report.mode, report.barcode)], report.barcode.length)
    raise ValueError(f"unknown format {format!r}")


# -- svg ------------------------------------------------------------------

_UNIT = 48        # pixels per index step
_LEFT = 150       # label gutter
_ROW = 16         # bar row height
_BAR = 9          # bar thickness
_HEAD = 22        # title row per group
_AXIS = 26        # axis strip per group


def render_barcode_svg(groups: Sequence[tuple[str, Barcode]],
                       length: int) -> str:
    """Deterministic SVG with one titled group of bar rows per barcode."""
    width = _LEFT + max(length, 1) * _UNIT + 40
    parts: list[str] = []
    y = 10
    for title, code in groups:
        rows = []
        for b, d, m in code.bars:
            rows.extend([(b, d)] * m)
        parts.append(
            f'<text x="10" y="{y + 14}" font-family="monospace" '
            f'font-size="13" fill="black">{title}</text>')
        y += _HEAD
        if not rows:
            parts.append(
                f'<text x="{_LEFT}" y="{y + 12}" font-family="monospace" '
                f'font-size="12" fill="gray">(empty)</text>')
            y += _ROW
        for b, d in rows:
            x0 = _LEFT + b * _UNIT
            parts.append(
                f'<rect x="{x0}" y="{y + (_ROW - _BAR) // 2}" '
                f'width="{(d - b) * _UNIT}" height="{_BAR}" fill="#336699"/>')
            y += _ROW
        axis_y = y + 8
        x_end = _LEFT + length * _UNIT
        parts.append(
            f'<line x1="{_LEFT}" y1="{axis_y}" x2="{x_end}" y2="{axis_y}" '
            f'stroke="black" stroke-width="1"/>')
        for i in range(length + 1):
            x = _LEFT + i * _UNIT
            parts.append(
                f'<line x1="{x}" y1="{axis_y - 3}" x2="{x}" y2="{axis_y + 3}" '
                f'stroke="black" stroke-width="1"/>')
            parts.append(
                f'<text x="{x - 3}" y="{axis_y + 15}" font-family="monospace" '
                f'font-size="11" fill="black">{i}</text>')
        y = axis_y + _AXIS
    height = y + 10
    header = (f'<svg xmlns="http://www.w3.org/2000/svg" '
              f'width="{width}" height="{height}" '
              f'viewBox="0 0 {width} {height}">')
    return header + "\n" + "\n".join(parts) + "\n</svg>\n"
