"""JSON documents for stacky fans, and the bundled example fixtures.

Document schema (integers only)::

    {
      "name": "ex_4_9",                      # optional
      "lattice": {"rank": 2, "torsion": []},
      "markers": [[1, 0], [1, 2]],           # rank + len(torsion) entries each
      "max_cones": [[0, 1]],                 # 0-based ray indices
      "ray_labels": ["e1", "e1+2e2"]         # optional
    }

Rays are the primitive rescalings of the markers' free parts.  Torsion
residues may be given unreduced; they are reduced at load.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Optional, Union

from .errors import FanValidationError, StackyFanError, ValidationError
from .stacky import LatticePresentation, StackyFan

FIXTURES = (
    "ex_4_9",
    "ex_4_10_a",
    "ex_4_10_b",
    "ex_4_11",
    "ex_6_4_sigma",
    "ex_6_4_sigma_prime",
    "ex_6_4_sigma_dprime",
    "p1cubed",
)


class DocumentError(StackyFanError):
    """Malformed document: bad JSON or wrong field types/shapes."""


@dataclass(frozen=True)
class Document:
    stacky_fan: StackyFan
    name: str = ""
    ray_labels: tuple[str, ...] = field(default=())

    def label(self, i: int) -> str:
        return self.ray_labels[i] if i < len(self.ray_labels) else f"r{i}"

    def labels(self) -> list[str]:
        return [self.label(i) for i in range(self.stacky_fan.n)]

    def evolve(self, sf: StackyFan, name: Optional[str] = None) -> "Document":
        labels = list(self.ray_labels) or [f"r{i}" for i in range(self.stacky_fan.n)]
        labels += [f"r{i}" for i in range(len(labels), sf.n)]
        return Document(sf, self.name if name is None else name, tuple(labels))


def _int(x: Any, where: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise DocumentError(f"{where}: expected an integer, got {x!r}")
    return x


def _int_list(x: Any, where: str) -> list[int]:
    if not isinstance(x, list):
        raise DocumentError(f"{where}: expected a list, got {x!r}")
    return [_int(v, f"{where}[{i}]") for i, v in enumerate(x)]


def parse_document(data: dict, check: bool = True) -> Document:
    if not isinstance(data, dict):
        raise DocumentError("top level: expected an object")
    for key in ("lattice", "markers", "max_cones"):
        if key not in data:
            raise DocumentError(f"missing field {key!r}")
    lat = data["lattice"]
    if not isinstance(lat, dict) or "rank" not in lat:
        raise DocumentError("lattice: expected {rank, torsion}")
    rank = _int(lat["rank"], "lattice.rank")
    torsion = _int_list(lat.get("torsion", []), "lattice.torsion")
    if rank < 1:
        raise DocumentError("lattice.rank: must be positive")
    if any(q < 2 for q in torsion):
        raise DocumentError("lattice.torsion: orders must be >= 2")
    lattice = LatticePresentation(rank, tuple(torsion))
    if not isinstance(data["markers"], list) or not data["markers"]:
        raise DocumentError("markers: expected a nonempty list")
    markers = [_int_list(v, f"markers[{i}]") for i, v in enumerate(data["markers"])]
    for i, v in enumerate(markers):
        if len(v) != lattice.length:
            raise DocumentError(f"markers[{i}]: expected {lattice.length} entries, got {len(v)}")
        if not any(v[:rank]):
            raise ValidationError(f"markers[{i}]: free part is zero")
    if not isinstance(data["max_cones"], list):
        raise DocumentError("max_cones: expected a list")
    cones = [_int_list(c, f"max_cones[{i}]") for i, c in enumerate(data["max_cones"])]
    for i, c in enumerate(cones):
        for j, r in enumerate(c):
            if not 0 <= r < len(markers):
                raise ValidationError(f"max_cones[{i}][{j}]: ray index {r} out of range")
    labels = data.get("ray_labels", [])
    if not isinstance(labels, list) or not all(isinstance(s, str) for s in labels):
        raise DocumentError("ray_labels: expected a list of strings")
    name = data.get("name", "")
    if not isinstance(name, str):
        raise DocumentError("name: expected a string")
    sf = StackyFan.from_markers(markers, cones, lattice, name=name, check=check)
    return Document(sf, name, tuple(labels))


def loads(text: str, check: bool = True) -> Document:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return parse_document(data, check=check)


def fixture_text(name: str) -> str:
    return resources.files("stackyfan.fixtures").joinpath(f"{name}.json").read_text()


def load(source: Union[str, Path], check: bool = True) -> Document:
    """Load from a path, or from a bundled fixture name such as ``ex_4_9``."""
    p = Path(source)
    if not p.exists() and str(source) in FIXTURES:
        return loads(fixture_text(str(source)), check=check)
    try:
        text = p.read_text()
    except OSError as exc:
        raise DocumentError(f"{source}: {exc.strerror or exc}") from None
    return loads(text, check=check)


def fixture(name: str) -> Document:
    if name not in FIXTURES:
        raise KeyError(name)
    return loads(fixture_text(name))


def to_data(doc: Document) -> dict:
    sf = doc.stacky_fan
    out: dict[str, Any] = {}
    if doc.name:
        out["name"] = doc.name
    out["lattice"] = {"rank": sf.lattice.rank, "torsion": list(sf.lattice.torsion)}
    out["markers"] = [list(v) for v in sf.markers]
    out["max_cones"] = sorted(sorted(M) for M in sf.fan.max_cones)
    if doc.ray_labels:
        out["ray_labels"] = list(doc.ray_labels)
    return out


def dumps(doc: Document) -> str:
    """Canonical text: fixed key order, one marker / cone per line."""
    data = to_data(doc)
    lines = ["{"]
    items = []
    for key, value in data.items():
        if key in ("markers", "max_cones") and value:
            inner = ",\n".join(f"    {json.dumps(v)}" for v in value)
            items.append(f'  "{key}": [\n{inner}\n  ]')
        else:
            items.append(f'  "{key}": {json.dumps(value)}')
    lines.append(",\n".join(items))
    lines.append("}")
    return "\n".join(lines) + "\n"


def dump(doc: Document, path: Union[str, Path]) -> None:
    Path(path).write_text(dumps(doc))


__all__ = [
    "Document",
    "DocumentError",
    "FIXTURES",
    "FanValidationError",
    "dump",
    "dumps",
    "fixture",
    "load",
    "loads",
    "parse_document",
    "to_data",
]
