"""Scene files: a small JSON format for mirrors, rays, and trace options.

Layout::

    {
      "conics": [
        {"kind": "ellipse",   "a": 5.0, "b": 3.0,
         "placement": {"translate": [0.0, 0.0], "rotate": 0.0},
         "role": "mirror"},
        {"kind": "parabola",  "p": 1.0},
        {"kind": "hyperbola", "a": 0.5, "b": 0.6, "branch": -1}
      ],
      "rays": [{"origin": [3.7, 8.0], "dir": [0.0, -1.0]}],
      "options": {"max_bounces": 8, "on_curve_tol": 1e-9, "confocal_tol": 1e-9}
    }

Every key is validated; unknown keys anywhere are rejected with the path
to the offender, malformed JSON is reported with line and column, and all
numbers must be finite.  ``placement``, ``role``, ``branch``, ``rays`` and
``options`` are optional with the defaults shown.  Serialization writes
every field explicitly with full-precision floats, so a scene survives a
save/load round trip bit-for-bit.
"""
from __future__ import annotations

import json
import math
import os
from typing import Any

from .conics import Conic, Ellipse, Hyperbola, Parabola, Placement
from .errors import SceneFormatError
from .geometry import Direction, Point
from .optics import Ray, Scene

__all__ = ["parse_scene", "load_scene", "serialize_scene", "save_scene"]

_CONIC_KEYS = {
    "ellipse": {"kind", "a", "b", "placement", "role"},
    "parabola": {"kind", "p", "placement", "role"},
    "hyperbola": {"kind", "a", "b", "branch", "placement", "role"},
}


def _reject_unknown(obj: dict, allowed: set[str], path: str) -> None:
    for key in obj:
        if key not in allowed:
            raise SceneFormatError(f"{path}: unknown key {key!r}")


def _obj(value: Any, path: str) -> dict:
    if not isinstance(value, dict):
        raise SceneFormatError(f"{path}: expected an object, got {type(value).__name__}")
    return value


def _list(value: Any, path: str) -> list:
    if not isinstance(value, list):
        raise SceneFormatError(f"{path}: expected a list, got {type(value).__name__}")
    return value


def _num(obj: dict, key: str, path: str, default: float | None = None) -> float:
    if key not in obj:
        if default is None:
            raise SceneFormatError(f"{path}: missing required key {key!r}")
        return default
    v = obj[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise SceneFormatError(f"{path}.{key}: expected a number, got {type(v).__name__}")
    if not math.isfinite(v):
        raise SceneFormatError(f"{path}.{key}: numbers must be finite, got {v}")
    return float(v)


def _pair(value: Any, path: str) -> tuple[float, float]:
    items = _list(value, path)
    if len(items) != 2:
        raise SceneFormatError(f"{path}: expected [x, y], got {len(items)} items")
    out = []
    for i, v in enumerate(items):
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise SceneFormatError(
                f"{path}[{i}]: expected a number, got {type(v).__name__}"
            )
        if not math.isfinite(v):
            raise SceneFormatError(f"{path}[{i}]: numbers must be finite, got {v}")
        out.append(float(v))
    return (out[0], out[1])


def _parse_placement(value: Any, path: str) -> Placement:
    obj = _obj(value, path)
    _reject_unknown(obj, {"translate", "rotate"}, path)
    tx, ty = _pair(obj["translate"], f"{path}.translate") if "translate" in obj else (0.0, 0.0)
    rotate = _num(obj, "rotate", path, default=0.0)
    return Placement(tx=tx, ty=ty, rotate=rotate)


def _parse_conic(value: Any, path: str) -> tuple[Conic, str]:
    obj = _obj(value, path)
    kind = obj.get("kind")
    if kind not in _CONIC_KEYS:
        raise SceneFormatError(
            f"{path}.kind: expected one of {sorted(_CONIC_KEYS)}, got {kind!r}"
        )
    _reject_unknown(obj, _CONIC_KEYS[kind], path)
    try:
        if kind == "ellipse":
            shape = Ellipse(_num(obj, "a", path), _num(obj, "b", path))
        elif kind == "parabola":
            shape = Parabola(_num(obj, "p", path))
        else:
            branch = obj.get("branch", 1)
            if branch not in (1, -1):
                raise SceneFormatError(f"{path}.branch: expected 1 or -1, got {branch!r}")
            shape = Hyperbola(_num(obj, "a", path), _num(obj, "b", path), branch)
    except ValueError as exc:
        raise SceneFormatError(f"{path}: {exc}") from exc
    placement = (
        _parse_placement(obj["placement"], f"{path}.placement")
        if "placement" in obj
        else Placement()
    )
    role = obj.get("role", "mirror")
    if not isinstance(role, str):
        raise SceneFormatError(f"{path}.role: expected a string")
    return Conic(shape, placement), role


def _parse_ray(value: Any, path: str) -> Ray:
    obj = _obj(value, path)
    _reject_unknown(obj, {"origin", "dir"}, path)
    for key in ("origin", "dir"):
        if key not in obj:
            raise SceneFormatError(f"{path}: missing required key {key!r}")
    ox, oy = _pair(obj["origin"], f"{path}.origin")
    dx, dy = _pair(obj["dir"], f"{path}.dir")
    try:
        return Ray(Point(ox, oy), Direction(dx, dy))
    except ValueError as exc:
        raise SceneFormatError(f"{path}: {exc}") from exc


def parse_scene(text: str, source: str = "<scene>") -> Scene:
    """Parse scene JSON; errors carry ``source`` plus the offending path."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SceneFormatError(
            f"{source}: invalid JSON: {exc.msg} (line {exc.lineno}, column {exc.colno})"
        ) from exc
    root = _obj(data, source)
    _reject_unknown(root, {"conics", "rays", "options"}, source)
    mirrors: list[Conic] = []
    roles: list[str] = []
    for i, entry in enumerate(_list(root.get("conics", []), f"{source}:conics")):
        conic, role = _parse_conic(entry, f"{source}:conics[{i}]")
        mirrors.append(conic)
        roles.append(role)
    rays = [
        _parse_ray(entry, f"{source}:rays[{i}]")
        for i, entry in enumerate(_list(root.get("rays", []), f"{source}:rays"))
    ]
    options = _obj(root.get("options", {}), f"{source}:options")
    _reject_unknown(
        options, {"max_bounces", "on_curve_tol", "confocal_tol"}, f"{source}:options"
    )
    max_bounces = options.get("max_bounces", 8)
    if isinstance(max_bounces, bool) or not isinstance(max_bounces, int):
        raise SceneFormatError(f"{source}:options.max_bounces: expected an integer")
    on_curve_tol = _num(options, "on_curve_tol", f"{source}:options", default=1e-9)
    confocal_tol = _num(options, "confocal_tol", f"{source}:options", default=1e-9)
    try:
        return Scene(
            mirrors=tuple(mirrors),
            roles=tuple(roles),
            rays=tuple(rays),
            max_bounces=max_bounces,
            on_curve_tol=on_curve_tol,
            confocal_tol=confocal_tol,
        )
    except ValueError as exc:
        raise SceneFormatError(f"{source}: {exc}") from exc


def load_scene(path: str | os.PathLike) -> Scene:
    """Read and parse a scene file."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    return parse_scene(text, source=str(path))


def _conic_to_dict(conic: Conic, role: str) -> dict:
    s = conic.shape
    out: dict[str, Any] = {"kind": conic.kind}
    if isinstance(s, Ellipse):
        out["a"] = s.a
        out["b"] = s.b
    elif isinstance(s, Parabola):
        out["p"] = s.p
    else:
        out["a"] = s.a
        out["b"] = s.b
        out["branch"] = s.branch
    out["placement"] = {
        "translate": [conic.placement.tx, conic.placement.ty],
        "rotate": conic.placement.rotate,
    }
    out["role"] = role
    return out


def serialize_scene(scene: Scene) -> str:
    """Scene back to JSON text; full-precision floats, stable layout."""
    data = {
        "conics": [
            _conic_to_dict(conic, role)
            for conic, role in zip(scene.mirrors, scene.roles)
        ],
        "rays": [
            {"origin": [r.origin.x, r.origin.y], "dir": [r.dir.x, r.dir.y]}
            for r in scene.rays
        ],
        "options": {
            "max_bounces": scene.max_bounces,
            "on_curve_tol": scene.on_curve_tol,
            "confocal_tol": scene.confocal_tol,
        },
    }
    return json.dumps(data, indent=2) + "\n"


def save_scene(scene: Scene, path: str | os.PathLike) -> None:
    """Write a scene file (UTF-8, LF)."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize_scene(scene))
