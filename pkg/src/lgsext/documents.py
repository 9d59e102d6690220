"""Interchange format for truncated systems and report records.

An LGS document is JSON::

    {
      "format": "lgsext-lgs",
      "format_version": 1,
      "alphabet": ["alpha1", ...],
      "base_level": 0,
      "vertex_counts": [1, 2, 4],
      "levels": [
        {"level": 0, "iota": [[1, 1]], "symbols": {"alpha1": [[1, 0]], ...}},
        ...
      ],
      "provenance": {"builder": "dyck", "params": {"N": 2, "depth": 2}}
    }

Matrices are lists of rows.  ``provenance`` is optional.  Reports in
machine format are one JSON object per line with sorted keys.
"""
from __future__ import annotations

import hashlib
import json
from typing import Any, Iterable

from .intlinalg import FGAbelianGroup, IntMatrix
from .lgs import StructuralError, TruncatedLambdaGraphSystem

FORMAT_NAME = "lgsext-lgs"
FORMAT_VERSION = 1


class DocumentError(ValueError):
    """The text is not a well-formed LGS document."""


def _matrix_text(m: IntMatrix, indent: str) -> str:
    if m.rows == 0:
        return "[]"
    rows = [json.dumps(list(r), separators=(",", ":")) for r in m]
    inner = (",\n" + indent + "  ").join(rows)
    return "[\n" + indent + "  " + inner + "\n" + indent + "]"


def dumps_lgs(lgs: TruncatedLambdaGraphSystem, provenance: dict | None = None) -> str:
    """Serialize deterministically, one matrix row per line."""
    out = ["{"]
    out.append(f'  "format": {json.dumps(FORMAT_NAME)},')
    out.append(f'  "format_version": {FORMAT_VERSION},')
    out.append(f'  "alphabet": {json.dumps(list(lgs.alphabet))},')
    out.append(f'  "base_level": {lgs.base_level},')
    out.append(f'  "vertex_counts": {json.dumps(list(lgs.vertex_counts))},')
    out.append('  "levels": [')
    blocks = []
    for l in lgs.pair_levels:
        ind = "      "
        parts = [f'    {{\n{ind}"level": {l},',
                 f'{ind}"iota": {_matrix_text(lgs.iota_matrix(l), ind)},',
                 f'{ind}"symbols": {{']
        syms = []
        for s in lgs.alphabet:
            syms.append(f'{ind}  {json.dumps(s)}: '
                        f'{_matrix_text(lgs.symbol_matrix(l, s), ind + "  ")}')
        parts.append(",\n".join(syms))
        parts.append(f"{ind}}}\n    }}")
        blocks.append("\n".join(parts))
    out.append(",\n".join(blocks))
    if provenance is None:
        out.append("  ]")
    else:
        out.append("  ],")
        out.append(f'  "provenance": {json.dumps(provenance, sort_keys=True)}')
    out.append("}")
    return "\n".join(out) + "\n"


def _int_matrix(obj: Any, where: str) -> IntMatrix:
    if not isinstance(obj, list) or not all(isinstance(r, list) for r in obj):
        raise DocumentError(f"{where}: expected a list of rows")
    for r in obj:
        for x in r:
            if isinstance(x, bool) or not isinstance(x, int):
                raise DocumentError(f"{where}: non-integer entry {x!r}")
    try:
        return IntMatrix.from_rows(obj)
    except ValueError as exc:
        raise DocumentError(f"{where}: {exc}") from None


def loads_lgs(text: str) -> tuple[TruncatedLambdaGraphSystem, dict | None]:
    """Parse a document; shape consistency is enforced here."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"not JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise DocumentError("top level must be an object")
    if doc.get("format") != FORMAT_NAME:
        raise DocumentError(f"format must be {FORMAT_NAME!r}")
    if doc.get("format_version") != FORMAT_VERSION:
        raise DocumentError(f"unsupported format_version {doc.get('format_version')!r}")
    for key in ("alphabet", "base_level", "vertex_counts", "levels"):
        if key not in doc:
            raise DocumentError(f"missing field {key!r}")
    alphabet = doc["alphabet"]
    if not isinstance(alphabet, list) or not all(isinstance(s, str) for s in alphabet):
        raise DocumentError("alphabet must be a list of strings")
    base = doc["base_level"]
    counts = doc["vertex_counts"]
    if not isinstance(base, int) or not isinstance(counts, list):
        raise DocumentError("base_level must be an integer and vertex_counts a list")
    levels = doc["levels"]
    if not isinstance(levels, list):
        raise DocumentError("levels must be a list")
    sym_mats, iota_mats = [], []
    for k, entry in enumerate(levels):
        if not isinstance(entry, dict):
            raise DocumentError(f"levels[{k}] must be an object")
        if entry.get("level") != base + k:
            raise DocumentError(f"levels[{k}] has level {entry.get('level')!r}, "
                                f"expected {base + k}")
        symbols = entry.get("symbols")
        if not isinstance(symbols, dict):
            raise DocumentError(f"levels[{k}].symbols must be an object")
        iota_mats.append(_int_matrix(entry.get("iota"), f"level {base + k} iota"))
        sym_mats.append({s: _int_matrix(m, f"level {base + k} symbol {s}")
                         for s, m in symbols.items()})
    try:
        lgs = TruncatedLambdaGraphSystem(alphabet, base, counts, sym_mats, iota_mats)
    except StructuralError as exc:
        raise DocumentError(str(exc)) from None
    return lgs, doc.get("provenance")


def file_digest(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()


def group_record(group: FGAbelianGroup) -> dict:
    return {"group": str(group), "free_rank": group.free_rank, "torsion": list(group.torsion)}


def dumps_records(records: Iterable[dict]) -> str:
    return "".join(json.dumps(r, sort_keys=True, separators=(",", ":")) + "\n" for r in records)
