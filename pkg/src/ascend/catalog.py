"""Knot-table dataset: loading, structural validation and witness checks.

The file holds one JSON object per line with keys ``name``, ``pd``, ``c``,
``u``, ``b``, ``twist``, ``a_lo``, ``a_hi``, ``witness_pd`` and
``witness_marking`` (the last two may be null).  An optional ``extra`` flag
marks rows outside the core table; they load like any other row.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources
from pathlib import Path
from typing import Iterable

from .diagram import (
    DiagramError,
    LinkDiagram,
    Marking,
    ascending_count,
    check_marking,
    marking_from_json,
    parse_pd,
)

_REQUIRED = ("name", "pd", "c", "u", "b", "twist", "a_lo", "a_hi")


class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    pd: str
    crossing_number: int
    unknotting: int
    bridge: int
    is_twist: bool
    a_lo: int
    a_hi: int
    witness_pd: str | None = None
    witness_marking: dict | None = None
    extra: bool = False
    line: int = field(default=0, compare=False)

    @property
    def known_a(self) -> int | tuple[int, int]:
        return self.a_lo if self.a_lo == self.a_hi else (self.a_lo, self.a_hi)

    @cached_property
    def diagram(self) -> LinkDiagram:
        return parse_pd(self.pd)

    @property
    def n_components(self) -> int:
        return self.diagram.n_components

    def witness(self) -> tuple[LinkDiagram, Marking] | None:
        if self.witness_pd is None:
            return None
        d = parse_pd(self.witness_pd)
        m = marking_from_json(self.witness_marking)
        check_marking(d, m)
        return d, m

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "pd": self.pd,
            "c": self.crossing_number,
            "u": self.unknotting,
            "b": self.bridge,
            "twist": self.is_twist,
            "a_lo": self.a_lo,
            "a_hi": self.a_hi,
            "witness_pd": self.witness_pd,
            "witness_marking": self.witness_marking,
        }
        if self.extra:
            out["extra"] = True
        return out


def default_catalog_path() -> Path:
    return Path(str(resources.files("ascend") / "data" / "knots.jsonl"))


def _int_field(obj: dict, key: str, lineno: int) -> int:
    v = obj[key]
    if not isinstance(v, int) or isinstance(v, bool) or v < 0:
        raise CatalogError(f"line {lineno}: field {key!r} must be a nonnegative integer, got {v!r}")
    return v


def entry_from_json(obj: dict, lineno: int = 0) -> CatalogEntry:
    if not isinstance(obj, dict):
        raise CatalogError(f"line {lineno}: expected a JSON object")
    for key in _REQUIRED:
        if key not in obj:
            raise CatalogError(f"line {lineno}: missing field {key!r}")
    if not isinstance(obj["name"], str) or not obj["name"]:
        raise CatalogError(f"line {lineno}: field 'name' must be a nonempty string")
    if not isinstance(obj["pd"], str):
        raise CatalogError(f"line {lineno}: field 'pd' must be a string")
    if not isinstance(obj["twist"], bool):
        raise CatalogError(f"line {lineno}: field 'twist' must be a boolean")
    wpd, wm = obj.get("witness_pd"), obj.get("witness_marking")
    if (wpd is None) != (wm is None):
        raise CatalogError(f"line {lineno}: witness_pd and witness_marking must be given together")
    return CatalogEntry(
        name=obj["name"],
        pd=obj["pd"],
        crossing_number=_int_field(obj, "c", lineno),
        unknotting=_int_field(obj, "u", lineno),
        bridge=_int_field(obj, "b", lineno),
        is_twist=obj["twist"],
        a_lo=_int_field(obj, "a_lo", lineno),
        a_hi=_int_field(obj, "a_hi", lineno),
        witness_pd=wpd,
        witness_marking=wm,
        extra=bool(obj.get("extra", False)),
        line=lineno,
    )


def check_entry(e: CatalogEntry) -> None:
    """Structural invariants; raises CatalogError naming the entry."""
    where = f"{e.name} (line {e.line})"
    try:
        d = e.diagram
    except DiagramError as exc:
        raise CatalogError(f"{where}: field 'pd' does not parse: {exc}") from exc
    if d.n_crossings != e.crossing_number:
        raise CatalogError(f"{where}: pd has {d.n_crossings} crossings but c = {e.crossing_number}")
    if e.a_lo > e.a_hi:
        raise CatalogError(f"{where}: a_lo {e.a_lo} exceeds a_hi {e.a_hi}")
    if e.bridge < d.n_components:
        raise CatalogError(f"{where}: bridge number {e.bridge} below component count")
    if e.witness_pd is not None:
        try:
            e.witness()
        except (DiagramError, KeyError, TypeError) as exc:
            raise CatalogError(f"{where}: stored witness invalid: {exc}") from exc


def parse_catalog(lines: Iterable[str]) -> list[CatalogEntry]:
    entries: list[CatalogEntry] = []
    names: set[str] = set()
    for lineno, raw in enumerate(lines, 1):
        text = raw.strip()
        if not text or text.startswith("#"):
            continue
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CatalogError(f"line {lineno}: invalid JSON: {exc.msg}") from exc
        e = entry_from_json(obj, lineno)
        if e.name in names:
            raise CatalogError(f"line {lineno}: duplicate entry {e.name!r}")
        names.add(e.name)
        check_entry(e)
        entries.append(e)
    return entries


def load_catalog(path: str | Path | None = None) -> list[CatalogEntry]:
    p = default_catalog_path() if path is None else Path(path)
    with open(p, encoding="utf-8") as fh:
        return parse_catalog(fh)


def write_catalog(entries: Iterable[CatalogEntry], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for e in entries:
            fh.write(json.dumps(e.to_json(), separators=(", ", ": ")) + "\n")


@dataclass
class WitnessReport:
    checked: list[tuple[str, int]] = field(default_factory=list)
    mismatches: list[tuple[str, int, int]] = field(default_factory=list)
    missing: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def validate_witnesses(entries: Iterable[CatalogEntry]) -> WitnessReport:
    """Recompute every stored witness against the entry's upper value.

    Entries without a witness whose minimal diagram does not already reach
    the upper value are listed as missing (candidates for a search backfill).
    """
    from .diagram import min_ascending

    rep = WitnessReport()
    for e in entries:
        w = e.witness()
        if w is None:
            if min_ascending(e.diagram)[0] > e.a_hi:
                rep.missing.append(e.name)
            continue
        value = ascending_count(*w)
        rep.checked.append((e.name, value))
        if value != e.a_hi:
            rep.mismatches.append((e.name, value, e.a_hi))
    return rep
