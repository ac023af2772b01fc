"""JSON wire formats for algebras, cochains, extensions and trajectories.

Algebra:   {"name", "dim", "brackets": [{"a", "b", "terms": [{"c", "v"}]}]}
Cochain:   {"dim", "entries": [{"a", "b", "v"}]}
Extension: algebra schema plus "center_index": 0 (indices then run 0..n)
Rationals are strings "p/q" (or "p"); bare JSON integers are tolerated.
"""

from __future__ import annotations

import json
from pathlib import Path

from .cohomology import TwoCochain
from .exact import as_fraction, format_fraction
from .lie_core import LieAlgebra, validate_algebra


class SchemaError(ValueError):
    pass


def _rational(v):
    if isinstance(v, float):
        raise SchemaError(f"rational values must be 'p/q' strings, got float {v!r}")
    try:
        return as_fraction(v)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise SchemaError(str(exc)) from exc


def _int(d, key):
    v = d.get(key)
    if not isinstance(v, int) or isinstance(v, bool):
        raise SchemaError(f"field {key!r} must be an integer, got {v!r}")
    return v


def algebra_from_json(data: dict) -> LieAlgebra:
    """Parse and validate (including the Jacobi gate)."""
    if not isinstance(data, dict):
        raise SchemaError("algebra document must be an object")
    name = data.get("name", "")
    if not isinstance(name, str):
        raise SchemaError("field 'name' must be a string")
    dim = _int(data, "dim")
    center = data.get("center_index")
    first = 0 if center == 0 else 1
    if center is not None and center != 0:
        raise SchemaError("center_index must be 0 when present")
    total = dim
    brackets: dict[tuple[int, int], dict[int, object]] = {}
    for item in data.get("brackets", []):
        a, b = _int(item, "a"), _int(item, "b")
        if a >= b:
            raise SchemaError(f"bracket entries need a < b, got ({a}, {b})")
        terms = brackets.setdefault((a, b), {})
        for t in item.get("terms", []):
            c = _int(t, "c")
            terms[c] = terms.get(c, 0) + _rational(t.get("v"))
    try:
        return validate_algebra(name, total, brackets, first_index=first)
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def algebra_to_json(alg: LieAlgebra, center_index: int | None = None) -> dict:
    brackets = []
    for (a, b), terms in sorted(alg.table().items()):
        brackets.append(
            {
                "a": a,
                "b": b,
                "terms": [{"c": c, "v": format_fraction(v)} for c, v in sorted(terms.items())],
            }
        )
    out = {"name": alg.name, "dim": alg.dim, "brackets": brackets}
    if center_index is not None:
        out["center_index"] = center_index
    return out


def cochain_from_json(data: dict) -> TwoCochain:
    if not isinstance(data, dict):
        raise SchemaError("cocycle document must be an object")
    dim = _int(data, "dim")
    terms = {}
    for item in data.get("entries", []):
        a, b = _int(item, "a"), _int(item, "b")
        if a >= b:
            raise SchemaError(f"cocycle entries need a < b, got ({a}, {b})")
        if not (1 <= a and b <= dim):
            raise SchemaError(f"cocycle index out of range: ({a}, {b})")
        terms[(a, b)] = terms.get((a, b), 0) + _rational(item.get("v"))
    return TwoCochain(dim, terms)


def cochain_to_json(F: TwoCochain) -> dict:
    return {
        "dim": F.dim,
        "entries": [{"a": a, "b": b, "v": format_fraction(v)} for (a, b), v in F.entries.items()],
    }


def load_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc})") from exc


def dumps(obj) -> str:
    """Deterministic serialization used for every report."""
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def trajectory_to_json(traj) -> dict:
    return {
        "times": [float(t) for t in traj.times],
        "states": [[float(x) for x in row] for row in traj.states],
        "audits": {k: [float(x) for x in v] for k, v in traj.audits.items()},
    }


def trajectory_to_csv(traj) -> str:
    names = list(traj.audits)
    width = traj.states.shape[1] if len(traj.states) else 0
    header = ["t"] + [f"y{i}" for i in range(width)] + [f"drift_{n}" for n in names]
    lines = [",".join(header)]
    for k, t in enumerate(traj.times):
        row = [repr(float(t))] + [repr(float(x)) for x in traj.states[k]]
        row += [repr(float(traj.audits[n][k])) for n in names]
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"
