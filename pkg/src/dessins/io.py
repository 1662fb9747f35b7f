"""Report serialization: stable JSON, CSV, and aligned text tables.

Records are emitted sorted by (genus, passport, canonical representative);
``orbit_id`` keeps the classification's own ordering so mirror partners
stay resolvable.  Group-theoretic orders are serialized as decimal strings
(they overflow 64-bit consumers).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .bgraph import _format_degrees
from .perm import format_cycles, parse_cycles, CycleParseError

SCHEMA_VERSION = "1"


class ReportFormatError(ValueError):
    """Malformed or version-incompatible report document."""


@dataclass
class ReportDocument:
    """Parsed report; ``data`` is the canonical JSON object structure."""

    data: dict

    @property
    def records(self):
        return self.data["records"]

    @property
    def graph(self):
        return self.data["graph"]


def _record_sort_key(rec):
    inv = rec.invariants
    return (
        inv.genus,
        inv.passport.black,
        inv.passport.white,
        inv.passport.faces,
        rec.representative.sigma.images,
        rec.representative.tau.images,
    )


def _record_to_json(rec, wilson_targets=None):
    inv = rec.invariants
    fp = inv.monodromy_fingerprint
    mirror = {"status": rec.mirror_status}
    if rec.mirror_partner is not None:
        mirror["partner_orbit_id"] = rec.mirror_partner
    out = {
        "orbit_id": rec.orbit_id,
        "sigma": format_cycles(rec.representative.sigma),
        "tau": format_cycles(rec.representative.tau),
        "orbit_length": rec.orbit_length,
        "aut_order": rec.aut_order,
        "aut_generators": [format_cycles(g) for g in rec.aut_generators],
        "genus": inv.genus,
        "passport": {
            "black": list(inv.passport.black),
            "white": list(inv.passport.white),
            "faces": list(inv.passport.faces),
        },
        "face_count": inv.face_count,
        "monodromy_order": None if inv.monodromy_order is None else str(inv.monodromy_order),
        "fingerprint": None if fp is None else {
            "order": str(fp.order),
            "all_generators_even": fp.all_generators_even,
            "point_stabilizer_order": str(fp.point_stabilizer_order),
            "odd_generators": fp.odd_generators,
        },
        "regular": inv.regular,
        "uniform": inv.uniform,
        "dualizable": inv.dualizable,
        "mirror": mirror,
    }
    if wilson_targets is not None:
        r, s, targets = wilson_targets
        out["wilson"] = {"r": r, "s": s, "target_orbit_id": targets[rec.orbit_id]}
    return out


def build_document(report, wilson_targets=None):
    """Canonical document structure for a classification report."""
    graph = report.graph
    passport = graph.passport()
    ordered = sorted(report.records, key=_record_sort_key)
    data = {
        "schema_version": SCHEMA_VERSION,
        "graph": {
            "e": graph.e,
            "alpha": len(graph.blacks),
            "beta": len(graph.whites),
            "black_degrees": list(passport.black_degrees),
            "white_degrees": list(passport.white_degrees),
            "aut_group_order": report.group_order,
            "candidate_count": str(report.candidate_count),
        },
        "records": [_record_to_json(r, wilson_targets) for r in ordered],
        "genus_histogram": {str(k): v for k, v in sorted(report.genus_histogram.items())},
        "dualizable_histogram": {
            str(k): v for k, v in sorted(report.dualizable_histogram.items())
        },
    }
    return ReportDocument(data)


def serialize_document(doc, fmt="json"):
    if fmt == "json":
        return json.dumps(doc.data, indent=2) + "\n"
    if fmt == "csv":
        return _to_csv(doc)
    if fmt == "table":
        return _to_table(doc)
    raise ValueError(f"unknown format {fmt!r}")


def serialize_report(report, fmt="json", wilson_targets=None):
    return serialize_document(build_document(report, wilson_targets), fmt)


def _passport_str(rec):
    p = rec["passport"]
    return "({};{};{})".format(
        _format_degrees(p["black"]),
        _format_degrees(p["white"]),
        _format_degrees(p["faces"]),
    )


def _mirror_str(rec):
    m = rec["mirror"]
    if m["status"] == "reflexive":
        return "reflexive"
    return f"chiral->{m['partner_orbit_id']}"


def _to_csv(doc):
    cols = [
        "orbit_id", "genus", "orbit_length", "aut_order", "monodromy_order",
        "passport", "regular", "uniform", "dualizable", "mirror", "sigma", "tau",
    ]
    lines = [",".join(cols)]
    for rec in doc.records:
        lines.append(",".join([
            str(rec["orbit_id"]),
            str(rec["genus"]),
            str(rec["orbit_length"]),
            str(rec["aut_order"]),
            rec["monodromy_order"] or "",
            '"' + _passport_str(rec) + '"',
            str(rec["regular"]).lower(),
            str(rec["uniform"]).lower(),
            str(rec["dualizable"]).lower(),
            _mirror_str(rec),
            '"' + rec["sigma"] + '"',
            '"' + rec["tau"] + '"',
        ]))
    return "\n".join(lines) + "\n"


def _to_table(doc):
    g = doc.graph
    graph_str = "({};{})".format(
        _format_degrees(g["black_degrees"]), _format_degrees(g["white_degrees"])
    )
    header = [
        "Graph", "Genus", "MonodromyOrder", "AutOrder",
        "Passport", "Regular", "Mirror", "Dualizable",
    ]
    rows = [header]
    for rec in doc.records:
        rows.append([
            graph_str,
            str(rec["genus"]),
            rec["monodromy_order"] or "?",
            str(rec["aut_order"]),
            _passport_str(rec),
            "Y" if rec["regular"] else "N",
            _mirror_str(rec),
            "Y" if rec["dualizable"] else "N",
        ])
    widths = [max(len(row[i]) for row in rows) for i in range(len(header))]
    out = [
        "# e={e} alpha={alpha} beta={beta} |G|={aut} N={n} records={k}".format(
            e=g["e"], alpha=g["alpha"], beta=g["beta"],
            aut=g["aut_group_order"], n=g["candidate_count"], k=len(doc.records),
        )
    ]
    for row in rows:
        out.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
    return "\n".join(out) + "\n"


def parse_report(text):
    """Parse a JSON report, validating schema version and permutations."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ReportFormatError(f"not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ReportFormatError("top level must be an object")
    version = data.get("schema_version")
    if version != SCHEMA_VERSION:
        raise ReportFormatError(
            f"unsupported schema_version {version!r}; expected {SCHEMA_VERSION!r}"
        )
    graph = data.get("graph")
    if not isinstance(graph, dict):
        raise ReportFormatError("missing graph section")
    for field in ("e", "alpha", "beta", "black_degrees", "white_degrees",
                  "aut_group_order", "candidate_count"):
        if field not in graph:
            raise ReportFormatError(f"graph section missing {field!r}")
    records = data.get("records")
    if not isinstance(records, list):
        raise ReportFormatError("missing records list")
    e = graph["e"]
    for i, rec in enumerate(records):
        for field in ("orbit_id", "sigma", "tau", "orbit_length", "aut_order",
                      "genus", "passport", "monodromy_order", "mirror"):
            if field not in rec:
                raise ReportFormatError(f"record {i} missing {field!r}")
        for field in ("sigma", "tau"):
            try:
                parse_cycles(rec[field], e)
            except CycleParseError as exc:
                raise ReportFormatError(
                    f"record {i}: bad {field} cycle string: {exc}"
                ) from exc
        for g in rec.get("aut_generators", []):
            try:
                parse_cycles(g, e)
            except CycleParseError as exc:
                raise ReportFormatError(
                    f"record {i}: bad automorphism cycle string: {exc}"
                ) from exc
        if rec["monodromy_order"] is not None:
            int(rec["monodromy_order"])
    for field in ("genus_histogram", "dualizable_histogram"):
        if not isinstance(data.get(field), dict):
            raise ReportFormatError(f"missing {field}")
    return ReportDocument(data)
