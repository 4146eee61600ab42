"""JSON encoding of schedules.

Document shape::

    {"d": 2, "initiator": 0,
     "slots": [{"gen": [{"p": 0, "c": 1, "act": [0]}], "del": [[0, 1]]}]}

``grow`` may add ``"target"`` (edge-list text) and ``"metrics"`` keys; they are
accepted and ignored by :func:`parse_schedule`.
"""

from __future__ import annotations

import json

from .errors import FormatError
from .schedule import Generation, Schedule, Slot

EXTRA_KEYS = {"target", "metrics"}


def _int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise FormatError(f"expected an integer, got {value!r}", where)
    return value


def _list(value, where: str) -> list:
    if not isinstance(value, list):
        raise FormatError(f"expected a list, got {type(value).__name__}", where)
    return value


def schedule_from_obj(doc) -> Schedule:
    if not isinstance(doc, dict):
        raise FormatError("top level must be an object", "$")
    for key in ("d", "initiator", "slots"):
        if key not in doc:
            raise FormatError(f"missing field {key!r}", f"$.{key}")
    unknown = set(doc) - {"d", "initiator", "slots"} - EXTRA_KEYS
    if unknown:
        raise FormatError(f"unknown fields {sorted(unknown)}", "$")
    d = _int(doc["d"], "$.d")
    if d < 1:
        raise FormatError("d must be at least 1", "$.d")
    init = _int(doc["initiator"], "$.initiator")
    seen = {init}
    slots = []
    for i, raw in enumerate(_list(doc["slots"], "$.slots")):
        here = f"$.slots[{i}]"
        if not isinstance(raw, dict):
            raise FormatError("slot must be an object", here)
        unknown = set(raw) - {"gen", "del"}
        if unknown:
            raise FormatError(f"unknown fields {sorted(unknown)}", here)
        gens = []
        for j, g in enumerate(_list(raw.get("gen", []), f"{here}.gen")):
            gw = f"{here}.gen[{j}]"
            if not isinstance(g, dict):
                raise FormatError("generation must be an object", gw)
            for key in ("p", "c", "act"):
                if key not in g:
                    raise FormatError(f"missing field {key!r}", f"{gw}.{key}")
            p = _int(g["p"], f"{gw}.p")
            c = _int(g["c"], f"{gw}.c")
            act = [_int(w, f"{gw}.act[{x}]") for x, w in enumerate(_list(g["act"], f"{gw}.act"))]
            if p not in act:
                raise FormatError(f"act must contain the parent {p}", f"{gw}.act")
            if c in seen:
                raise FormatError(f"duplicate child identifier {c}", f"{gw}.c")
            seen.add(c)
            gens.append(Generation(p, c, frozenset(act)))
        dels = []
        for j, e in enumerate(_list(raw.get("del", []), f"{here}.del")):
            ew = f"{here}.del[{j}]"
            e = _list(e, ew)
            if len(e) != 2:
                raise FormatError("edge must have two endpoints", ew)
            dels.append((_int(e[0], f"{ew}[0]"), _int(e[1], f"{ew}[1]")))
        slots.append(Slot(tuple(gens), tuple(dels)))
    return Schedule(d, init, tuple(slots))


def parse_schedule(text: str) -> Schedule:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None
    return schedule_from_obj(doc)


def schedule_to_obj(s: Schedule) -> dict:
    return {
        "d": s.d,
        "initiator": s.initiator,
        "slots": [
            {
                "gen": [
                    {"p": g.parent, "c": g.child, "act": sorted(g.activated)}
                    for g in slot.generations
                ],
                "del": [list(e) for e in slot.deletions],
            }
            for slot in s.slots
        ],
    }


def emit_schedule(s: Schedule, **extra) -> str:
    """Canonical JSON text: generations sorted by parent, sorted lists, one line per slot."""
    obj = schedule_to_obj(s)
    parts = [f'{{"d": {obj["d"]}, "initiator": {obj["initiator"]}, "slots": [']
    body = [json.dumps(slot, separators=(", ", ": ")) for slot in obj["slots"]]
    parts.append(",\n".join(body))
    parts.append("]")
    for key in sorted(extra):
        if key not in EXTRA_KEYS:
            raise ValueError(f"unsupported extra key {key!r}")
        parts.append(f', "{key}": {json.dumps(extra[key])}')
    parts.append("}\n")
    if body:
        parts[0] += "\n"
    return "".join(parts)
