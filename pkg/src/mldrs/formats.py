"""Canonical JSON documents for matching and decoding instances.

One top-level key per line in a fixed order, values written compactly, field
elements as lowercase 0x-hex. Parsing a canonical file and writing it back
reproduces it byte for byte.
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path
from typing import Any, Optional

from .gf2m import FieldContext, parse_hex
from .reduction import MldRsInstance, ReductionTrace, ThreeDmInstance
from .rs_code import RsCode

_3DM_KEYS = ("type", "t", "triples")
_MLDRS_KEYS = ("type", "m", "modulus", "k", "w", "evaluation_set", "target")
_TRACE_KEYS = ("mode", "gamma", "z", "phis")


class FormatError(ValueError):
    """A document that does not parse as a valid instance file."""


def _canonical(doc: dict[str, Any]) -> str:
    body = ",\n".join(f"  {json.dumps(k)}: {json.dumps(v, separators=(',', ':'))}" for k, v in doc.items())
    return "{\n" + body + "\n}\n"


def _hex(a: int) -> str:
    return f"{a:#x}"


def dumps_3dm(inst: ThreeDmInstance) -> str:
    return _canonical({"type": "3dm", "t": inst.t, "triples": [list(tr) for tr in inst.triples]})


def dumps_mldrs(inst: MldRsInstance, trace: Optional[ReductionTrace] = None) -> str:
    doc: dict[str, Any] = {
        "type": "mldrs",
        "m": inst.ctx.m,
        "modulus": _hex(inst.ctx.modulus),
        "k": inst.code.k,
        "w": inst.w,
        "evaluation_set": [_hex(x) for x in inst.code.evaluation_set],
        "target": [_hex(a) for a in inst.y],
    }
    if trace is not None:
        doc["trace"] = {
            "mode": trace.mode,
            "gamma": _hex(trace.gamma),
            "z": [_hex(a) for a in trace.z],
            "phis": [_hex(a) for a in trace.phis],
        }
    return _canonical(doc)


def _expect_keys(doc: dict, required: tuple[str, ...], optional: tuple[str, ...] = ()) -> None:
    missing = [k for k in required if k not in doc]
    extra = [k for k in doc if k not in required and k not in optional]
    if missing or extra:
        raise FormatError(f"missing keys {missing}, unexpected keys {extra}")


def _int(doc: dict, key: str) -> int:
    v = doc[key]
    if not isinstance(v, int) or isinstance(v, bool):
        raise FormatError(f"{key!r} must be an integer")
    return v


def _hex_list(doc: dict, key: str) -> list[int]:
    v = doc[key]
    if not isinstance(v, list):
        raise FormatError(f"{key!r} must be a list of hex strings")
    try:
        return [_parse_element(s) for s in v]
    except (TypeError, ValueError) as exc:
        raise FormatError(f"{key!r}: {exc}") from None


def _parse_element(s: Any) -> int:
    if not isinstance(s, str) or s != s.lower():
        raise ValueError(f"bad hex element {s!r}")
    return parse_hex(s)


def loads(text: str) -> ThreeDmInstance | tuple[MldRsInstance, Optional[dict]]:
    """Parse either document type, dispatching on ``type``."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict) or "type" not in doc:
        raise FormatError("document must be an object with a 'type' key")
    if doc["type"] == "3dm":
        return _load_3dm(doc)
    if doc["type"] == "mldrs":
        return _load_mldrs(doc)
    raise FormatError(f"unknown document type {doc['type']!r}")


def _load_3dm(doc: dict) -> ThreeDmInstance:
    _expect_keys(doc, _3DM_KEYS)
    t = _int(doc, "t")
    triples = doc["triples"]
    if not isinstance(triples, list) or not all(
        isinstance(tr, list) and len(tr) == 3 and all(isinstance(c, int) and not isinstance(c, bool) for c in tr)
        for tr in triples
    ):
        raise FormatError("'triples' must be a list of integer triples")
    try:
        return ThreeDmInstance(t, tuple(tuple(tr) for tr in triples))
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def _load_mldrs(doc: dict) -> tuple[MldRsInstance, Optional[dict]]:
    _expect_keys(doc, _MLDRS_KEYS, ("trace",))
    m, k, w = _int(doc, "m"), _int(doc, "k"), _int(doc, "w")
    try:
        modulus = _parse_element(doc["modulus"])
        ctx = FieldContext.from_modulus(modulus)
    except (TypeError, ValueError) as exc:
        raise FormatError(f"'modulus': {exc}") from None
    if ctx.m != m:
        raise FormatError(f"modulus has degree {ctx.m} but m = {m}")
    D = _hex_list(doc, "evaluation_set")
    y = _hex_list(doc, "target")
    try:
        inst = MldRsInstance(RsCode(ctx, tuple(D), k), w, tuple(y))
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    trace = None
    if "trace" in doc:
        tr = doc["trace"]
        if not isinstance(tr, dict):
            raise FormatError("'trace' must be an object")
        _expect_keys(tr, _TRACE_KEYS)
        if tr["mode"] not in ("std", "prep"):
            raise FormatError(f"unknown trace mode {tr['mode']!r}")
        try:
            gamma = _parse_element(tr["gamma"])
        except (TypeError, ValueError) as exc:
            raise FormatError(f"'gamma': {exc}") from None
        trace = {"mode": tr["mode"], "gamma": gamma, "z": _hex_list(tr, "z"), "phis": _hex_list(tr, "phis")}
    return inst, trace


def load_path(path: str | os.PathLike):
    return loads(Path(path).read_text())


def write_atomic(path: str | os.PathLike, text: str) -> None:
    """Write via a temporary file in the same directory, then rename."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
