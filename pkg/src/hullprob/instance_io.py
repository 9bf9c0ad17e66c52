"""Instance, weight and gadget-sidecar JSON round-trips.

Instance format (shared by the library and the CLI):

    {"points": [{"x": "0", "y": "0", "p": "1/2"}, ...]}

All three fields are exact rational strings ("n" or "n/d"); floats are
rejected so that parse -> serialize -> parse is bit-exact.

Edge-weight format for the exact perimeter engine:

    {"edges": [[i, j, weight], ...]}

with natural weights on ordered index pairs; a missing direction inherits
the weight of its reverse.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Union

from .model import StochasticInstance
from .rational import format_rational, parse_rational

PathLike = Union[str, Path]


def instance_to_dict(inst: StochasticInstance) -> dict:
    return {
        "points": [
            {
                "x": format_rational(p.x),
                "y": format_rational(p.y),
                "p": format_rational(q),
            }
            for p, q in zip(inst.points, inst.probs)
        ]
    }


def instance_from_dict(data: dict) -> StochasticInstance:
    try:
        rows = data["points"]
    except (TypeError, KeyError):
        raise ValueError('instance JSON must be an object with a "points" array') from None
    parsed = []
    for i, row in enumerate(rows):
        try:
            parsed.append(
                (
                    parse_rational(row["x"]),
                    parse_rational(row["y"]),
                    parse_rational(row["p"]),
                )
            )
        except (TypeError, KeyError, ValueError) as exc:
            raise ValueError(f"bad point entry {i}: {exc}") from None
    return StochasticInstance.build(parsed)


def dumps_instance(inst: StochasticInstance) -> str:
    return json.dumps(instance_to_dict(inst), indent=2) + "\n"


def loads_instance(text: str) -> StochasticInstance:
    return instance_from_dict(json.loads(text))


def save_instance(inst: StochasticInstance, path: PathLike) -> None:
    Path(path).write_text(dumps_instance(inst))


def load_instance(path: PathLike) -> StochasticInstance:
    return loads_instance(Path(path).read_text())


def load_edge_weights(path: PathLike) -> dict[tuple[int, int], int]:
    data = json.loads(Path(path).read_text())
    try:
        rows = data["edges"]
    except (TypeError, KeyError):
        raise ValueError('weights JSON must be an object with an "edges" array') from None
    table: dict[tuple[int, int], int] = {}
    for row in rows:
        i, j, w = row
        if not (isinstance(i, int) and isinstance(j, int) and isinstance(w, int) and w >= 0):
            raise ValueError(f"bad edge-weight row {row!r}")
        table[(i, j)] = w
    return table


def save_sidecar(data: dict, path: PathLike) -> None:
    Path(path).write_text(json.dumps(data, indent=2) + "\n")


def load_sidecar(path: PathLike) -> dict:
    return json.loads(Path(path).read_text())
