"""Reader for TSPLIB node-coordinate files (EUC_2D only)."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable

import numpy as np

SUPPORTED_EDGE_WEIGHT_TYPES = ("EUC_2D",)
BUNDLED_INSTANCES = ("eil51", "eil76", "kroA100")

_KEYWORD_LINE = re.compile(r"^([A-Z_]+)\s*:\s*(.*)$")
_KNOWN_KEYWORDS = {
    "NAME",
    "TYPE",
    "COMMENT",
    "DIMENSION",
    "EDGE_WEIGHT_TYPE",
    "CAPACITY",
    "DISPLAY_DATA_TYPE",
}


class TsplibError(ValueError):
    """Base class for TSPLIB reading problems."""


class TsplibParseError(TsplibError):
    def __init__(self, lineno: int, line: str, reason: str) -> None:
        super().__init__(f"line {lineno}: {reason}: {line!r}")
        self.lineno = lineno


class TsplibStructureError(TsplibError):
    pass


class UnsupportedFormatError(TsplibError):
    pass


@dataclass(frozen=True)
class NodeCoord:
    id: int
    x: float
    y: float


@dataclass(frozen=True)
class InstanceHeader:
    name: str
    dimension: int
    edge_weight_type: str = "EUC_2D"
    comment: str = ""


def _number(token: str) -> float | int:
    # keep integral coordinates integral so re-serialization is exact
    try:
        return int(token)
    except ValueError:
        return float(token)


def parse_tsplib(text: str | Iterable[str]) -> tuple[InstanceHeader, list[NodeCoord]]:
    """Parse a TSPLIB node-coordinate file.

    Accepts either the whole file as a string or any iterable of lines.
    Returns the header and the coordinates sorted by node id.
    """
    lines = text.splitlines() if isinstance(text, str) else list(text)
    fields: dict[str, str] = {}
    coords: dict[int, NodeCoord] = {}
    in_coords = False

    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        if line == "EOF":
            break
        if line.startswith("NODE_COORD_SECTION"):
            in_coords = True
            continue
        if in_coords:
            parts = line.split()
            if len(parts) != 3:
                raise TsplibParseError(lineno, line, "expected '<id> <x> <y>'")
            try:
                node_id = int(parts[0])
                x, y = _number(parts[1]), _number(parts[2])
            except ValueError:
                raise TsplibParseError(lineno, line, "non-numeric coordinate row") from None
            if node_id in coords:
                raise TsplibStructureError(f"line {lineno}: duplicate node id {node_id}")
            coords[node_id] = NodeCoord(node_id, x, y)
            continue

        match = _KEYWORD_LINE.match(line)
        if match is None:
            raise TsplibParseError(lineno, line, "malformed header line")
        key, value = match.group(1), match.group(2).strip()
        if key.endswith("_SECTION"):
            raise UnsupportedFormatError(f"line {lineno}: section {key} is not supported")
        if key not in _KNOWN_KEYWORDS:
            raise TsplibParseError(lineno, line, f"unknown keyword {key}")
        fields[key] = value

    for required in ("DIMENSION", "EDGE_WEIGHT_TYPE"):
        if required not in fields:
            raise TsplibStructureError(f"missing {required} keyword")
    ewt = fields["EDGE_WEIGHT_TYPE"]
    if ewt not in SUPPORTED_EDGE_WEIGHT_TYPES:
        raise UnsupportedFormatError(f"unsupported EDGE_WEIGHT_TYPE {ewt}")
    if fields.get("TYPE", "TSP") != "TSP":
        raise UnsupportedFormatError(f"unsupported TYPE {fields['TYPE']}")
    try:
        dimension = int(fields["DIMENSION"])
    except ValueError:
        raise TsplibStructureError(f"DIMENSION is not an integer: {fields['DIMENSION']!r}") from None
    if dimension < 3:
        raise TsplibStructureError(f"DIMENSION must be at least 3, got {dimension}")
    if not in_coords:
        raise TsplibStructureError("missing NODE_COORD_SECTION")
    if len(coords) != dimension:
        raise TsplibStructureError(
            f"DIMENSION is {dimension} but NODE_COORD_SECTION has {len(coords)} rows"
        )
    if sorted(coords) != list(range(1, dimension + 1)):
        raise TsplibStructureError(f"node ids do not cover 1..{dimension}")

    header = InstanceHeader(
        name=fields.get("NAME", ""),
        dimension=dimension,
        edge_weight_type=ewt,
        comment=fields.get("COMMENT", ""),
    )
    return header, [coords[i] for i in range(1, dimension + 1)]


def format_tsplib(header: InstanceHeader, coords: list[NodeCoord]) -> str:
    out = [f"NAME : {header.name}"]
    if header.comment:
        out.append(f"COMMENT : {header.comment}")
    out += [
        "TYPE : TSP",
        f"DIMENSION : {header.dimension}",
        f"EDGE_WEIGHT_TYPE : {header.edge_weight_type}",
        "NODE_COORD_SECTION",
    ]
    out += [f"{c.id} {c.x} {c.y}" for c in coords]
    out.append("EOF")
    return "\n".join(out) + "\n"


def nint(value: float) -> int:
    """TSPLIB nearest integer: round half up."""
    return int(math.floor(value + 0.5))


def euc2d_distance(a: NodeCoord, b: NodeCoord) -> int:
    return nint(math.hypot(a.x - b.x, a.y - b.y))


def euc2d_matrix(coords: list[NodeCoord]) -> np.ndarray:
    xy = np.array([(c.x, c.y) for c in coords], dtype=float)
    diff = xy[:, None, :] - xy[None, :, :]
    return np.floor(np.sqrt((diff**2).sum(axis=-1)) + 0.5).astype(np.int64)


def parse_tour(text: str) -> list[int]:
    """Read a TSPLIB ``.tour`` file; returns 0-based city indices."""
    order: list[int] = []
    in_section = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("TOUR_SECTION"):
            in_section = True
            continue
        if not in_section:
            continue
        if line == "EOF":
            break
        for token in line.split():
            try:
                node = int(token)
            except ValueError:
                raise TsplibParseError(lineno, line, "non-integer tour entry") from None
            if node == -1:
                return order
            order.append(node - 1)
    if not in_section:
        raise TsplibStructureError("missing TOUR_SECTION")
    return order


def bundled_path(name: str, suffix: str = ".tsp") -> Path:
    """Path of one of the TSPLIB files shipped with the package."""
    lookup = {n.lower(): n for n in BUNDLED_INSTANCES}
    key = lookup.get(name.lower())
    if key is None:
        raise FileNotFoundError(f"no bundled instance named {name!r}")
    return Path(str(resources.files("rbacs") / "data" / f"{key}{suffix}"))


def read_instance_file(path: str | Path) -> tuple[InstanceHeader, list[NodeCoord]]:
    return parse_tsplib(Path(path).read_text(encoding="utf-8"))
