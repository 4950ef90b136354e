"""Built-in scene presets.

example1..example4 are four worked surface-pencil scenes (circle,
cylindrical helix, eight curve, Salkowski curve); the *b variants reshape
them with nontrivial control coefficients.

The Salkowski curve is stored with the same coefficient pattern in x and
y, the sign choice that makes its curvature constant (kappa = 1,
tau = tan(q/sqrt(26)), speed (5/sqrt(26)) cos(q/sqrt(26))); flipping the
first two y signs silently loses that property.  The example4b reshape is
recorded with both z = 1 (example4b) and z = -1 (example4b_alt), since
both control sets are in use for the same scene.
"""

from __future__ import annotations

import math

from .errors import SceneValidationError

_TWO_PI = 2.0 * math.pi
_SQRT3_2 = math.sqrt(3.0) / 2.0

_EIGHT_DENOM = "sqrt(4*cos(q)^4 - 3*cos(q)^2 + 1)"

_SALKOWSKI_X = (
    "5/sqrt(26)*((sqrt(26) - 26)/(104 + 8*sqrt(26))*sin((1 + sqrt(26)/13)*q)"
    " + (sqrt(26) + 26)/(-104 + 8*sqrt(26))*sin((1 - sqrt(26)/13)*q)"
    " - 1/2*sin(q))"
)
_SALKOWSKI_Y = (
    "5/sqrt(26)*((sqrt(26) - 26)/(104 + 8*sqrt(26))*cos((1 + sqrt(26)/13)*q)"
    " + (sqrt(26) + 26)/(-104 + 8*sqrt(26))*cos((1 - sqrt(26)/13)*q)"
    " - 1/2*cos(q))"
)
_SALKOWSKI_Z = "25/(4*sqrt(26))*cos(sqrt(26)/13*q)"


def _example1() -> dict:
    return {
        "description": "planar circle, D-type constant sqrt(3)/2",
        "curve": {
            "x": "cos(s)", "y": "sin(s)", "z": "0",
            "param": "s", "range": [-_TWO_PI, _TWO_PI], "unit_speed": True,
        },
        "t0": 0.0,
        "marching": {
            "mode": "explicit",
            "explicit": {
                "l": "1", "m": "1", "n": "1",
                "U": "t", "V": "sqrt(3)/2*t", "W": "t/2",
            },
            "controls": {"x": 1.0, "y": 1.0, "z": 1.0},
            "c": _SQRT3_2,
            "sign": 1,
        },
        "grid": {"ns": 200, "nt": 50, "t_range": [0.0, 5.0]},
        "outputs": {"obj_path": "example1.obj", "csv_path": "example1.csv"},
    }


def _example2() -> dict:
    return {
        "description": "cylindrical helix, D-type constant 1/2",
        "curve": {
            "x": "cos(s/sqrt(2))", "y": "sin(s/sqrt(2))", "z": "s/sqrt(2)",
            "param": "s", "range": [-_TWO_PI, _TWO_PI], "unit_speed": True,
        },
        "t0": 0.0,
        "marching": {
            "mode": "explicit",
            "explicit": {
                "l": "1", "m": "1", "n": "1",
                "U": "t", "V": "sqrt(2)/2*t", "W": "sqrt(2)/2*t",
            },
            "controls": {"x": 1.0, "y": 1.0, "z": 1.0},
            "c": 0.5,
            "sign": 1,
        },
        "grid": {"ns": 200, "nt": 50, "t_range": [0.0, 0.25]},
        "outputs": {"obj_path": "example2.obj", "csv_path": "example2.csv"},
    }


def _example3() -> dict:
    return {
        "description": "eight curve (non-unit speed, planar), D-type constant sqrt(3)/2",
        "curve": {
            "x": "sin(q)", "y": "sin(q)*cos(q)", "z": "0",
            "param": "q", "range": [0.0, _TWO_PI], "unit_speed": False,
        },
        "t0": 0.0,
        "marching": {
            "mode": "explicit",
            "explicit": {
                "l": "1",
                "m": f"(sqrt(3)/2)/{_EIGHT_DENOM}",
                "n": f"(1/2)/{_EIGHT_DENOM}",
                "U": "t", "V": "t", "W": "t",
            },
            "controls": {"x": 1.0, "y": 1.0, "z": 1.0},
            "c": _SQRT3_2,
            "sign": 1,
        },
        "grid": {"ns": 200, "nt": 50, "t_range": [0.0, 1.0]},
        "outputs": {"obj_path": "example3.obj", "csv_path": "example3.csv"},
    }


def _example4() -> dict:
    return {
        "description": (
            "Salkowski curve (non-unit speed, constant curvature), D-type "
            "constant sqrt(3)/2 on the feasible subdomain"
        ),
        "curve": {
            "x": _SALKOWSKI_X, "y": _SALKOWSKI_Y, "z": _SALKOWSKI_Z,
            "param": "q", "range": [0.0, _TWO_PI], "unit_speed": False,
        },
        "t0": 0.0,
        "marching": {
            "mode": "explicit",
            "explicit": {
                "l": "1",
                "m": "(sqrt(78)/10)/cos(sqrt(26)/26*q)^2",
                "n": "(sqrt(26)/10)*sqrt(1 - 3*tan(sqrt(26)/26*q)^2)"
                     "/cos(sqrt(26)/26*q)",
                "U": "t", "V": "t", "W": "t",
            },
            "controls": {"x": 1.0, "y": 1.0, "z": 1.0},
            "c": _SQRT3_2,
            "sign": 1,
        },
        "grid": {"ns": 200, "nt": 50, "t_range": [0.0, 1.0]},
        "outputs": {"obj_path": "example4.obj", "csv_path": "example4.csv"},
    }


def _with_controls(base: dict, x: float, y: float, z: float, suffix: str,
                   note: str = "") -> dict:
    cfg = base
    cfg["marching"]["controls"] = {"x": x, "y": y, "z": z}
    cfg["description"] += f"; control coefficients x={x}, y={y}, z={z}"
    if note:
        cfg["description"] += f" ({note})"
    outputs = cfg["outputs"]
    outputs["obj_path"] = outputs["obj_path"].replace(".obj", f"{suffix}.obj")
    outputs["csv_path"] = outputs["csv_path"].replace(".csv", f"{suffix}.csv")
    return cfg


def _example4b() -> dict:
    cfg = _with_controls(_example4(), -0.1, -0.1, 1.0, "b",
                         "the same reshape also circulates with z=-1, see example4b_alt")
    cfg["grid"]["t_range"] = [-4.0, 4.0]
    return cfg


def _example4b_alt() -> dict:
    cfg = _with_controls(_example4(), -0.1, -0.1, -1.0, "b_alt",
                         "z=-1 variant of example4b")
    cfg["grid"]["t_range"] = [-4.0, 4.0]
    return cfg


PRESETS = {
    "example1": _example1,
    "example1b": lambda: _with_controls(_example1(), 0.2, 1.0 / 3.0, 1.0, "b"),
    "example2": _example2,
    "example2b": lambda: _with_controls(_example2(), 1.0, 15.0, 5.0, "b"),
    "example3": _example3,
    "example3b": lambda: _with_controls(_example3(), 10.0, 0.2, 1.0, "b"),
    "example4": _example4,
    "example4b": _example4b,
    "example4b_alt": _example4b_alt,
}


def preset_names() -> list[str]:
    return sorted(PRESETS)


def load_preset(name: str) -> dict:
    """Fresh config dict for a named preset."""
    try:
        factory = PRESETS[name]
    except KeyError:
        raise SceneValidationError(
            f"unknown preset {name!r}; available: {', '.join(preset_names())}"
        ) from None
    return factory()
