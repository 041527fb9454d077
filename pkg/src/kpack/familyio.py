"""Family file format (JSON).

::

    {
      "members": [
        {"id": <string|int>, "shells": [<ring>, ...], "holes": [<ring>, ...]},
        ...
      ],
      "metadata": {...}
    }

A ring is a list of ``[x, y]`` pairs; each coordinate is a JSON integer or
a string ``"p/q"`` (or ``"n"``).  Rings may be given in either orientation.
``holes`` and ``metadata`` are optional.  :func:`dumps` writes the
canonical form: counterclockwise rings, integers as JSON numbers, other
rationals as reduced ``"p/q"`` strings, one member per line and metadata
with sorted keys.  Canonical text survives ``dumps(loads(text))`` byte for
byte.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .errors import FormatError, InvalidGeometry
from .geometry import Family, Region, SimplePolygon


def _coord_out(v: Fraction):
    return v.numerator if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def _ring_out(poly: SimplePolygon):
    return [[_coord_out(p.x), _coord_out(p.y)] for p in poly.vertices]


def member_to_obj(region: Region) -> dict:
    return {
        "id": region.id,
        "shells": [_ring_out(s) for s in region.shells],
        "holes": [_ring_out(h) for h in region.holes],
    }


def dumps(family: Family) -> str:
    lines = ["{", '  "members": [']
    rows = [json.dumps(member_to_obj(m), separators=(", ", ": ")) for m in family]
    for i, row in enumerate(rows):
        lines.append("    " + row + ("," if i < len(rows) - 1 else ""))
    lines.append("  ],")
    lines.append('  "metadata": ' + json.dumps(family.metadata, sort_keys=True, separators=(", ", ": ")))
    lines.append("}")
    return "\n".join(lines) + "\n"


def _ring_in(raw, where) -> list:
    if not isinstance(raw, list):
        raise FormatError(f"{where}: ring must be a list of [x, y] pairs")
    out = []
    for pt in raw:
        if not (isinstance(pt, list) and len(pt) == 2):
            raise FormatError(f"{where}: bad point {pt!r}")
        for v in pt:
            if isinstance(v, bool) or not isinstance(v, (int, str)):
                raise FormatError(f"{where}: coordinate {v!r} must be an integer or 'p/q' string")
        out.append(pt)
    return out


def obj_to_family(data) -> Family:
    if not isinstance(data, dict) or not isinstance(data.get("members"), list):
        raise FormatError("top level must be an object with a 'members' list")
    members = []
    for k, m in enumerate(data["members"]):
        if not isinstance(m, dict) or "id" not in m or "shells" not in m:
            raise FormatError(f"member #{k} needs 'id' and 'shells'")
        mid = m["id"]
        if isinstance(mid, bool) or not isinstance(mid, (str, int)):
            raise FormatError(f"member #{k}: id must be a string or integer")
        extra = set(m) - {"id", "shells", "holes"}
        if extra:
            raise FormatError(f"member {mid!r}: unknown fields {sorted(extra)}")
        try:
            shells = [SimplePolygon.from_coords(_ring_in(r, f"member {mid!r}")) for r in m["shells"]]
            holes = [SimplePolygon.from_coords(_ring_in(r, f"member {mid!r}")) for r in m.get("holes", [])]
            members.append(Region(tuple(shells), tuple(holes), mid))
        except InvalidGeometry as exc:
            raise FormatError(f"member {mid!r}: {exc}") from exc
    meta = data.get("metadata", {})
    if not isinstance(meta, dict):
        raise FormatError("metadata must be an object")
    try:
        return Family(tuple(members), meta)
    except InvalidGeometry as exc:
        raise FormatError(str(exc)) from exc


def loads(text: str) -> Family:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    return obj_to_family(data)


def load(path) -> Family:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    return loads(text)


def dump(family: Family, path) -> None:
    Path(path).write_text(dumps(family))
