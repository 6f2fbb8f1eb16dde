"""Text formats for posets and integer sets, DOT export, and JSON reports.

Poset files::

    # comment
    n 4
    0 1
    0 2
    1 3
    2 3

The header gives the element count; each further line is a cover pair
``child parent``.  Integer sets are whitespace- or comma-separated
integers.  Every number in a report is a decimal string (``"p/q"`` for
rationals) so that big values survive JSON untouched.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from .certified import CertifiedReal
from .errors import BadIndex, PosetSyntaxError
from .poset import Poset

SCHEMA_VERSION = "1"


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def parse_poset(text: str, relabel: bool = False) -> Poset:
    lines = list(_content_lines(text))
    if not lines:
        raise PosetSyntaxError("missing header 'n <count>'", 1)
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) == 2 and parts[0] == "n":
        parts = parts[1:]
    if len(parts) != 1 or not parts[0].isdigit():
        raise PosetSyntaxError(f"expected 'n <count>', got {header!r}", lineno)
    n = int(parts[0])
    covers = []
    for lineno, line in lines[1:]:
        parts = line.split()
        if len(parts) != 2 or not all(re.fullmatch(r"-?\d+", t) for t in parts):
            raise PosetSyntaxError(f"expected 'child parent', got {line!r}", lineno)
        a, b = int(parts[0]), int(parts[1])
        for v in (a, b):
            if not 0 <= v < n:
                raise BadIndex(f"line {lineno}: element {v} out of range for n={n}")
        covers.append((a, b))
    return Poset.from_covers(n, covers, relabel=relabel)


def emit_poset(p: Poset) -> str:
    lines = [f"n {p.n}"]
    lines += [f"{a} {b}" for a, b in sorted(p.covers)]
    return "\n".join(lines) + "\n"


def emit_dot(p: Poset, labels: Sequence[str] | None = None, name: str = "poset") -> str:
    """Hasse diagram as a DOT digraph; edges point from child to parent and
    elements of equal height share a rank."""
    if labels is not None and len(labels) != p.n:
        raise ValueError("need one label per element")
    out = [f"digraph {name} {{", "  rankdir=BT;"]
    for v in range(p.n):
        label = str(v) if labels is None else str(labels[v])
        out.append(f'  {v} [label="{label}"];')
    for a, b in sorted(p.covers):
        out.append(f"  {a} -> {b};")
    by_level: dict[int, list[int]] = {}
    for v, lv in enumerate(p.levels):
        by_level.setdefault(lv, []).append(v)
    for lv in sorted(by_level):
        members = "; ".join(str(v) for v in by_level[lv])
        out.append(f"  {{ rank=same; {members}; }}")
    out.append("}")
    return "\n".join(out) + "\n"


def parse_int_set(text: str) -> list[int]:
    values = []
    for lineno, line in _content_lines(text):
        for tok in re.split(r"[,\s]+", line.strip("{}[] ")):
            if not tok:
                continue
            if not re.fullmatch(r"[+-]?\d+", tok):
                raise PosetSyntaxError(f"not an integer: {tok!r}", lineno)
            values.append(int(tok))
    return values


def emit_int_set(xs) -> str:
    return " ".join(str(x) for x in xs) + "\n"


# ----------------------------------------------------------------------
# JSON


def to_jsonable(value: Any) -> Any:
    """Recursively convert numbers to strings and containers to lists/dicts."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, CertifiedReal):
        return {"lo": str(value.lo), "hi": str(value.hi), "precision": str(value.precision)}
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if hasattr(value, "elems"):
        return [str(x) for x in value.elems]
    raise TypeError(f"cannot serialize {type(value).__name__}")


def parse_exact(s: str) -> Fraction:
    return Fraction(s)


@dataclass
class Report:
    command: str
    inputs: dict = field(default_factory=dict)
    results: dict = field(default_factory=dict)
    schema_version: str = SCHEMA_VERSION

    def to_json(self) -> str:
        payload = {
            "schema_version": self.schema_version,
            "command": self.command,
            "inputs": to_jsonable(self.inputs),
            "results": to_jsonable(self.results),
        }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Report":
        d = json.loads(text)
        return cls(
            command=d["command"],
            inputs=d["inputs"],
            results=d["results"],
            schema_version=d["schema_version"],
        )
