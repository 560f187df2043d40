"""Structured sample records and their text serialisations.

A record is a plain dict under the versioned schema "planepart/1"; the matrix
text format is fixed bit-exactly (rows bottom-to-top by ordinate,
space-separated entries, one trailing newline per row) so golden tests stay
stable.
"""

from __future__ import annotations

import json

import numpy as np

from .core import IndexDomain, PlanePartition, SkewFilling, validate_plane_partition
from .sampler import SampleReport

SCHEMA = "planepart/1"


def parse_domain_spec(text: str) -> IndexDomain:
    """Parse 'AxB' followed by removed corner rectangles '-A'xB''.

    Each removed rectangle must fit inside the box; dominated rectangles are
    merged away by the canonical staircase form.
    """

    def parse_pair(part):
        pieces = part.lower().split("x")
        if len(pieces) != 2:
            raise ValueError(f"malformed rectangle {part!r}; expected WIDTHxHEIGHT")
        try:
            a, b = int(pieces[0]), int(pieces[1])
        except ValueError:
            raise ValueError(f"malformed rectangle {part!r}; sides must be integers") from None
        return a, b

    parts = text.strip().split("-")
    if not parts or not parts[0]:
        raise ValueError("empty domain specification")
    a, b = parse_pair(parts[0])
    if a < 1 or b < 1:
        raise ValueError(f"outer box {a}x{b} must have positive sides")
    removed = []
    for part in parts[1:]:
        ar, br = parse_pair(part)
        if ar < 1 or br < 1:
            raise ValueError(f"removed rectangle {ar}x{br} must have positive sides")
        if ar > a or br > b:
            raise ValueError(
                f"removed rectangle {ar}x{br} does not fit inside the {a}x{b} box"
            )
        if ar == a and br == b:
            raise ValueError("removing the full box leaves an empty domain")
        removed.append((ar, br))
    return IndexDomain(a, b, removed)


def domain_spec_string(dom: IndexDomain) -> str:
    """Canonical text form of a staircase domain."""
    parts = [f"{dom.a}x{dom.b}"]
    for ar, br in sorted(dom.removed_rectangles(), key=lambda r: -r[1]):
        parts.append(f"{ar}x{br}")
    return "-".join(parts)


def _payload_rows(entries: np.ndarray) -> list:
    """Rows bottom-to-top: row j lists the entries across abscissas."""
    if entries.size == 0:
        return []
    return [[int(v) for v in entries[:, j]] for j in range(entries.shape[1])]


def build_record(
    report: SampleReport,
    mode: str,
    n: int,
    epsilon: float | None = None,
    a: int | None = None,
    b: int | None = None,
    domain: IndexDomain | None = None,
) -> dict:
    result = report.result
    if isinstance(result, PlanePartition):
        rows = _payload_rows(result.entries)
        dom_spec = None
    elif isinstance(result, SkewFilling):
        rows = _payload_rows(result.values)
        dom_spec = domain_spec_string(result.domain)
    else:
        raise TypeError(f"cannot serialise result of type {type(result).__name__}")
    if domain is not None:
        dom_spec = domain_spec_string(domain)
    return {
        "schema": SCHEMA,
        "mode": mode,
        "n": int(n),
        "epsilon": None if epsilon is None else float(epsilon),
        "a": None if a is None else int(a),
        "b": None if b is None else int(b),
        "domain": dom_spec,
        "x_used": None if report.x_used is None else float(report.x_used),
        "seed": int(report.seed),
        "stream": int(report.stream),
        "rejections": int(report.rejections),
        "size": int(report.size),
        "payload": {"rows": rows},
    }


def record_heights(record: dict) -> np.ndarray:
    """Height grid [i, j] reconstructed from a record payload."""
    rows = record["payload"]["rows"]
    if not rows:
        return np.zeros((0, 0), dtype=np.int64)
    return np.asarray(rows, dtype=np.int64).T


def validate_record(record: dict) -> None:
    """Re-validate a record: schema tag, monotone payload, matching size."""
    if record.get("schema") != SCHEMA:
        raise ValueError(f"unsupported schema {record.get('schema')!r}")
    heights = record_heights(record)
    total = int(heights.sum())
    if total != record["size"]:
        raise ValueError(f"size field {record['size']} != payload sum {total}")
    if record.get("domain"):
        dom = parse_domain_spec(record["domain"])
        filling = SkewFilling(dom, heights)
        if not filling.is_skew_partition():
            raise ValueError("payload is not monotone on its domain")
    elif not validate_plane_partition(heights):
        raise ValueError("payload is not a plane partition")


def record_to_json(record: dict) -> str:
    return json.dumps(record, separators=(",", ":"), sort_keys=True)


def record_from_json(text: str) -> dict:
    record = json.loads(text)
    validate_record(record)
    return record


def record_to_matrix_text(record: dict) -> str:
    """Fixed text form: rows bottom-to-top, space-separated, each newline-terminated."""
    rows = record["payload"]["rows"]
    return "".join(" ".join(str(v) for v in row) + "\n" for row in rows)


def record_to_cubes_text(record: dict) -> str:
    """One 'i j k' line per unit cube, lexicographic order."""
    heights = record_heights(record)
    lines = []
    for i in range(heights.shape[0]):
        for j in range(heights.shape[1]):
            for k in range(int(heights[i, j])):
                lines.append(f"{i} {j} {k}\n")
    return "".join(lines)
