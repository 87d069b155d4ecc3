"""JSON interchange format for truncated expansions.

Layout (keys sorted, one term per line, terms in canonical index order)::

    {"genus": 1, "level": 1, "ring": {"type": "QQ"}, "terms": [
    {"S": [[0]], "coeff": [1, 1]},
    {"S": [[2]], "coeff": [240, 1]}
    ], "trace_bound": 1, "weight_tag": {"h": 4, "kappa": null}}

``S`` is the doubled index ``2T``.  Coefficient tables may add a
``header`` object ``{source, normalization, citation}``.  The output is a
pure function of the expansion, so identical inputs give byte-identical
files.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass, field
from json.decoder import scanstring
from pathlib import Path

from .derham import DeRhamRing
from .errors import InterchangeError
from .nearcalc import SymRing
from .qseries import QExpansion, WeightTag
from .rings import QQ, PolynomialRing, ResidueRing, Ring, VectorRing, decode_fraction
from .tmatrix import HalfIntegralMatrix

TOP_FIELDS = {"genus", "level", "trace_bound", "weight_tag", "ring", "terms", "header"}
HEADER_FIELDS = {"source", "normalization", "citation"}
NORMALIZATIONS = ("normalized", "arithmetic")

_SEP = (", ", ": ")


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=_SEP, ensure_ascii=False)


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


# -- ring descriptors ------------------------------------------------------

def ring_to_json(ring: Ring) -> dict:
    return ring.to_json()


def _need(obj: dict, key: str, check, what: str):
    if key not in obj:
        raise InterchangeError(f"ring descriptor {obj!r} lacks '{key}'")
    v = obj[key]
    if not check(v):
        raise InterchangeError(f"ring descriptor field '{key}' must be {what}, got {v!r}")
    return v


def _positive(v):
    return _is_int(v) and v >= 1


def ring_from_json(obj, *, strict: bool = True) -> Ring:
    """Rebuild a ring descriptor written by :func:`ring_to_json`."""
    if not isinstance(obj, dict) or "type" not in obj:
        raise InterchangeError(f"ring descriptor must be an object with a 'type', got {obj!r}")
    kind = obj["type"]
    allowed = {
        "QQ": {"type"},
        "poly": {"type", "genus"},
        "vec": {"type", "dim", "base"},
        "Zmod": {"type", "p", "m"},
        "sym": {"type", "genus", "degree", "base"},
        "derham": {"type", "genus", "degree", "twist"},
    }
    if kind not in allowed:
        raise InterchangeError(f"unknown ring type {kind!r}")
    extra = set(obj) - allowed[kind]
    if strict and extra:
        raise InterchangeError(f"unknown ring fields {sorted(extra)}")
    try:
        if kind == "QQ":
            return QQ
        if kind == "poly":
            return PolynomialRing(_need(obj, "genus", _positive, "a positive integer"))
        if kind == "vec":
            dim = _need(obj, "dim", _positive, "a positive integer")
            return VectorRing(ring_from_json(_need(obj, "base", lambda v: True, ""), strict=strict), dim)
        if kind == "Zmod":
            return ResidueRing(_need(obj, "p", _is_int, "an integer"), _need(obj, "m", _positive, "a positive integer"))
        if kind == "sym":
            return SymRing(ring_from_json(_need(obj, "base", lambda v: True, ""), strict=strict),
                           _need(obj, "genus", _positive, "a positive integer"),
                           _need(obj, "degree", lambda v: _is_int(v) and v >= 0, "a nonnegative integer"))
        return DeRhamRing(_need(obj, "genus", _positive, "a positive integer"),
                          _need(obj, "degree", lambda v: _is_int(v) and v >= 0, "a nonnegative integer"),
                          _need(obj, "twist", _is_int, "an integer"))
    except ValueError as exc:
        if isinstance(exc, InterchangeError):
            raise
        raise InterchangeError(str(exc)) from None


# -- weight tags -------------------------------------------------------------

def weight_to_json(w: WeightTag | None):
    if w is None:
        return None
    h = None if w.h is None else (w.h.numerator if w.h.denominator == 1 else [w.h.numerator, w.h.denominator])
    return {"h": h, "kappa": None if w.kappa is None else list(w.kappa)}


def weight_from_json(obj, *, strict: bool = True) -> WeightTag | None:
    if obj is None:
        return None
    if not isinstance(obj, dict):
        raise InterchangeError(f"weight_tag must be null or an object, got {obj!r}")
    if strict and set(obj) - {"h", "kappa"}:
        raise InterchangeError(f"unknown weight_tag fields {sorted(set(obj) - {'h', 'kappa'})}")
    h = obj.get("h")
    if h is not None and not _is_int(h):
        h = decode_fraction(h)
    kappa = obj.get("kappa")
    if kappa is not None and (not isinstance(kappa, list) or not all(_is_int(k) for k in kappa)):
        raise InterchangeError(f"weight_tag kappa must be a list of integers, got {kappa!r}")
    return WeightTag(h, kappa)


# -- serialization -----------------------------------------------------------

def serialize(f: QExpansion, header: dict | None = None) -> str:
    """Canonical JSON text for ``f`` (ends with a newline)."""
    top = {
        "genus": f.genus,
        "level": f.level,
        "ring": ring_to_json(f.ring),
        "trace_bound": f.trace_bound,
        "weight_tag": weight_to_json(f.weight),
    }
    if header is not None:
        top["header"] = dict(header)
    lines = [_dumps({"S": T.doubled_rows(), "coeff": f.ring.encode(c)}) for T, c in f.items()]
    parts = []
    for key in sorted(list(top) + ["terms"]):
        if key == "terms":
            body = "[\n" + ",\n".join(lines) + "\n]" if lines else "[]"
            parts.append(f'"terms": {body}')
        else:
            parts.append(f"{_dumps(key)}: {_dumps(top[key])}")
    return "{" + ", ".join(parts) + "}\n"


@dataclass
class Table:
    """A parsed interchange document."""

    expansion: QExpansion
    header: dict | None = None
    extra: dict = field(default_factory=dict)


def _byte_offset(text: str, pos: int) -> int:
    return len(text[:pos].encode("utf-8"))


def _term_offsets(text: str) -> list[int] | None:
    """Character offsets of the elements of the top-level ``terms`` array (best effort)."""
    dec = json.JSONDecoder()
    ws = " \t\n\r"
    try:
        i = text.index("{")
        i += 1
        while True:
            while text[i] in ws:
                i += 1
            if text[i] == "}":
                return None
            key, i = scanstring(text, i + 1)
            while text[i] in ws:
                i += 1
            i += 1  # ':'
            while text[i] in ws:
                i += 1
            if key != "terms":
                _, i = dec.raw_decode(text, i)
            else:
                offsets = []
                i += 1  # '['
                while True:
                    while text[i] in ws:
                        i += 1
                    if text[i] == "]":
                        return offsets
                    offsets.append(i)
                    _, i = dec.raw_decode(text, i)
                    while text[i] in ws:
                        i += 1
                    if text[i] == ",":
                        i += 1
            while text[i] in ws:
                i += 1
            if text[i] == ",":
                i += 1
    except (ValueError, IndexError):
        return None


def _decode_matrix(S, genus: int) -> HalfIntegralMatrix:
    if not isinstance(S, list) or len(S) != genus or not all(
            isinstance(row, list) and len(row) == genus and all(_is_int(v) for v in row) for row in S):
        raise ValueError(f"S must be a {genus}x{genus} integer array, got {S!r}")
    return HalfIntegralMatrix.from_doubled(S)


def deserialize(data: str | bytes, *, strict: bool = True) -> QExpansion:
    """Parse interchange JSON into a validated expansion."""
    return parse_table(data, strict=strict).expansion


def parse_table(data: str | bytes, *, strict: bool = True) -> Table:
    """Parse interchange JSON, keeping the optional header.

    Errors raise :class:`InterchangeError`; malformed JSON reports the byte
    offset, invalid terms report the term index and its line.
    """
    if isinstance(data, (bytes, bytearray)):
        try:
            text = bytes(data).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise InterchangeError(f"input is not UTF-8: {exc.reason}", offset=exc.start) from None
    else:
        text = data
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        off = _byte_offset(text, exc.pos)
        raise InterchangeError(f"malformed JSON: {exc.msg}", offset=off, line=exc.lineno) from None
    if not isinstance(doc, dict):
        raise InterchangeError("top level must be a JSON object", offset=0)
    unknown = set(doc) - TOP_FIELDS
    if strict and unknown:
        raise InterchangeError(f"unknown top-level fields {sorted(unknown)}")
    for key in ("genus", "level", "trace_bound", "ring", "terms"):
        if key not in doc:
            raise InterchangeError(f"missing field '{key}'")
    genus, level, bound = doc["genus"], doc["level"], doc["trace_bound"]
    if not _positive(genus):
        raise InterchangeError(f"genus must be a positive integer, got {genus!r}")
    if not _positive(level):
        raise InterchangeError(f"level must be a positive integer, got {level!r}")
    if not _is_int(bound) or bound < 0:
        raise InterchangeError(f"trace_bound must be a nonnegative integer, got {bound!r}")
    ring = ring_from_json(doc["ring"], strict=strict)
    weight = weight_from_json(doc.get("weight_tag"), strict=strict)
    header = doc.get("header")
    if header is not None:
        header = _check_header(header, strict)
    terms = doc["terms"]
    if not isinstance(terms, list):
        raise InterchangeError("'terms' must be an array")

    offsets = None

    def fail(k, msg):
        nonlocal offsets
        if offsets is None:
            offsets = _term_offsets(text) or []
        if k < len(offsets):
            pos = offsets[k]
            raise InterchangeError(f"term {k}: {msg}", offset=_byte_offset(text, pos),
                                   line=text.count("\n", 0, pos) + 1, term=k)
        raise InterchangeError(f"term {k}: {msg}", term=k)

    coeffs = {}
    for k, t in enumerate(terms):
        if not isinstance(t, dict) or "S" not in t or "coeff" not in t:
            fail(k, "each term must be an object with 'S' and 'coeff'")
        if strict and set(t) - {"S", "coeff"}:
            fail(k, f"unknown term fields {sorted(set(t) - {'S', 'coeff'})}")
        try:
            T = _decode_matrix(t["S"], genus)
        except ValueError as exc:
            fail(k, str(exc))
        if not T.is_psd():
            fail(k, f"index {T!r} is not positive semi-definite")
        if T.trace > bound:
            fail(k, f"index {T!r} has trace {T.trace} above the bound {bound}")
        if T in coeffs:
            fail(k, f"duplicate index {T!r}")
        try:
            c = ring.decode(t["coeff"])
        except (InterchangeError, ValueError, TypeError) as exc:
            fail(k, str(exc))
        if not c:
            if strict:
                fail(k, "stored zero coefficient")
            continue
        coeffs[T] = c
    extra = {key: doc[key] for key in unknown}
    return Table(QExpansion._trusted(genus, level, bound, ring, coeffs, weight), header, extra)


def _check_header(header, strict: bool) -> dict:
    if not isinstance(header, dict):
        raise InterchangeError("header must be an object")
    if strict and set(header) - HEADER_FIELDS:
        raise InterchangeError(f"unknown header fields {sorted(set(header) - HEADER_FIELDS)}")
    norm = header.get("normalization")
    if norm is not None and norm not in NORMALIZATIONS:
        raise InterchangeError(f"normalization must be one of {NORMALIZATIONS}, got {norm!r}")
    return dict(header)


# -- files -------------------------------------------------------------------

def read_table(path, *, strict: bool = True) -> Table:
    return parse_table(Path(path).read_bytes() if str(path) != "-" else sys.stdin.buffer.read(), strict=strict)


def read_expansion(path, *, strict: bool = True) -> QExpansion:
    return read_table(path, strict=strict).expansion


def write_expansion(f: QExpansion, path, header: dict | None = None) -> None:
    """Write ``serialize(f)``; ``'-'`` means standard output."""
    text = serialize(f, header)
    if str(path) == "-":
        sys.stdout.buffer.write(text.encode("utf-8"))
        sys.stdout.buffer.flush()
    else:
        Path(path).write_bytes(text.encode("utf-8"))


__all__ = [
    "serialize", "deserialize", "parse_table", "Table", "ring_to_json", "ring_from_json",
    "weight_to_json", "weight_from_json", "read_table", "read_expansion", "write_expansion",
]
