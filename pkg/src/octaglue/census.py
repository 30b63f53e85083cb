"""Aggregated census tables, their serialization, and the on-disk cache."""
from __future__ import annotations

import csv
import hashlib
import io
import json
import logging
import os
import tempfile
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from octaglue import __version__
from octaglue.homology import AbelianGroup, build_chain_complex, first_homology
from octaglue.octahedron import GluingPattern, octahedron_classes
from octaglue.polygon import polygon_classes, polygon_pairing_count, polygon_surface
from octaglue.surfaces import surface_label
from octaglue.topology import build_quotient

log = logging.getLogger(__name__)

SCHEMA = "octaglue.census/1"
CACHE_VERSION = 1


@dataclass(frozen=True)
class ClassRecord:
    """Invariants of one inequivalent octahedron gluing."""

    ident: str
    orbit_size: int
    boundary: tuple[int, ...]
    edge_orbits: tuple[int, ...]
    h1: AbelianGroup

    @property
    def capped(self) -> tuple[int, ...]:
        return tuple(g for g in self.boundary if g > 0)

    def to_json(self) -> dict:
        return {
            "id": self.ident,
            "orbit_size": self.orbit_size,
            "boundary": list(self.boundary),
            "edge_orbits": list(self.edge_orbits),
            "h1": {"free_rank": self.h1.free_rank, "torsion": list(self.h1.torsion)},
        }

    @classmethod
    def from_json(cls, d: dict) -> ClassRecord:
        return cls(
            ident=d["id"],
            orbit_size=d["orbit_size"],
            boundary=tuple(d["boundary"]),
            edge_orbits=tuple(d["edge_orbits"]),
            h1=AbelianGroup(d["h1"]["free_rank"], tuple(d["h1"]["torsion"])),
        )


def analyze_class(item: tuple[str, int]) -> ClassRecord:
    ident, orbit_size = item
    q = build_quotient(GluingPattern.parse(ident))
    return ClassRecord(
        ident=ident,
        orbit_size=orbit_size,
        boundary=q.boundary().genera,
        edge_orbits=tuple(sorted((len(o) for o in q.edge_orbits), reverse=True)),
        h1=first_homology(build_chain_complex(q)),
    )


def _pmap(fn, items, jobs: int):
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))


def compute_octahedron_records(jobs: int = 1) -> list[ClassRecord]:
    classes = octahedron_classes()
    items = [(phi.ident(), size) for phi, size in classes.items()]
    return _pmap(analyze_class, items, jobs)


@dataclass
class CensusReport:
    kind: str
    rows: list[dict]
    count_key: str = "count"

    @property
    def total(self) -> int:
        return sum(row[self.count_key] for row in self.rows)


def polygon_row(k: int) -> dict:
    classes = polygon_classes(k)
    genera = {polygon_surface(p).genera[0] for p in classes}
    return {"k": k, "gluings": polygon_pairing_count(k), "classes": len(classes), "surfaces": len(genera)}


def polygon_class_rows(k: int) -> list[dict]:
    return [{"k": k, "class": str(p), "genus": polygon_surface(p).genera[0],
             "orbit_size": size, "count": 1}
            for p, size in polygon_classes(k).items()]


def polygon_report(ks, jobs: int = 1, list_classes: bool = False) -> CensusReport:
    ks = list(ks)
    if not ks or min(ks) < 1:
        raise ValueError("polygon census needs k >= 1")
    if list_classes:
        rows = [r for block in _pmap(polygon_class_rows, ks, jobs) for r in block]
        return CensusReport("polygon-classes", rows)
    return CensusReport("polygon", _pmap(polygon_row, ks, jobs), count_key="classes")


def _signature_rows(signatures, key_name: str = "boundary") -> list[dict]:
    counts = Counter(signatures)
    return [{key_name: surface_label(sig), "genera": list(sig), "count": n}
            for sig, n in sorted(counts.items())]


def boundary_report(records: list[ClassRecord]) -> CensusReport:
    return CensusReport("octahedron-boundary", _signature_rows(r.boundary for r in records))


def capped_report(records: list[ClassRecord]) -> CensusReport:
    return CensusReport("octahedron-capped", _signature_rows(r.capped for r in records))


def homology_report(records: list[ClassRecord]) -> CensusReport:
    counts = Counter((r.capped, r.h1) for r in records)
    rows = [{"boundary": surface_label(sig), "genera": list(sig), "h1": str(h1), "count": n}
            for (sig, h1), n in sorted(counts.items())]
    return CensusReport("octahedron-homology", rows)


def classes_report(records: list[ClassRecord]) -> CensusReport:
    rows = [{"class": r.ident, "orbit_size": r.orbit_size, "boundary": surface_label(r.boundary),
             "capped": surface_label(r.capped), "edge_orbits": list(r.edge_orbits),
             "h1": str(r.h1), "count": 1}
            for r in sorted(records, key=lambda r: r.ident)]
    return CensusReport("octahedron-classes", rows)


OCTA_REPORTS = {
    "boundary": boundary_report,
    "capped": capped_report,
    "homology": homology_report,
    "classes": classes_report,
}


def _csv_cell(value) -> str:
    if isinstance(value, list):
        return " ".join(str(v) for v in value)
    return str(value)


def emit_report(report: CensusReport, fmt: str = "json") -> str:
    if not report.rows:
        raise ValueError(f"refusing to emit an empty {report.kind} report")
    if fmt == "json":
        doc = {"schema": SCHEMA, "kind": report.kind, "rows": report.rows, "total": report.total}
        return json.dumps(doc, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        header = list(report.rows[0])
        writer.writerow(header)
        for row in report.rows:
            writer.writerow([_csv_cell(row[h]) for h in header])
        return buf.getvalue()
    raise ValueError(f"unknown format {fmt!r}")


def _digest(classes: list[dict]) -> str:
    blob = json.dumps(classes, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


def save_cache(path: Path, records: list[ClassRecord]) -> None:
    path = Path(path)
    classes = [r.to_json() for r in records]
    doc = {"format_version": CACHE_VERSION, "tool_version": __version__,
           "classes": classes, "digest": _digest(classes)}
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(doc, fh, indent=1, sort_keys=True)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def load_cache(path: Path) -> list[ClassRecord] | None:
    """Records stored at ``path``, or ``None`` when absent, stale or corrupt."""
    path = Path(path)
    if not path.exists():
        return None
    try:
        doc = json.loads(path.read_text())
    except (OSError, ValueError) as exc:
        log.warning("cache %s unreadable (%s); recomputing", path, exc)
        return None
    if doc.get("format_version") != CACHE_VERSION:
        log.warning("cache %s has format version %r, expected %d; recomputing",
                    path, doc.get("format_version"), CACHE_VERSION)
        return None
    classes = doc.get("classes", [])
    if doc.get("digest") != _digest(classes):
        log.warning("cache %s failed its digest check; recomputing", path)
        return None
    return [ClassRecord.from_json(d) for d in classes]


def octahedron_records(cache: Path | None = None, jobs: int = 1) -> list[ClassRecord]:
    if cache is not None:
        records = load_cache(cache)
        if records is not None:
            log.info("loaded %d classes from %s", len(records), cache)
            return records
    records = compute_octahedron_records(jobs)
    if cache is not None:
        save_cache(cache, records)
    return records
