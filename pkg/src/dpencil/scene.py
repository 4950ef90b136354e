"""Scene configuration: JSON layout, validation, and pencil assembly.

A scene bundles one curve, one marching-scale definition (explicit or
synthesized), grid sizes, and output paths::

    {
      "curve": {"x": "cos(s)", "y": "sin(s)", "z": "0",
                "param": "s", "range": [-6.2832, 6.2832], "unit_speed": true},
      "t0": 0.0,
      "marching": {
        "mode": "explicit",
        "explicit": {"l": "1", "m": "1", "n": "1",
                     "U": "t", "V": "sqrt(3)/2*t", "W": "t/2"},
        "controls": {"x": 1.0, "y": 1.0, "z": 1.0},
        "c": 0.8660254037844386,
        "sign": 1
      },
      "grid": {"ns": 200, "nt": 50, "t_range": [0.0, 5.0]},
      "outputs": {"obj_path": "example1.obj", "csv_path": "example1.csv"}
    }

In explicit mode the "explicit" block holds either the six product parts
l, m, n (in the curve parameter) and U, V, W (in t), or the three bivariate
functions u, v, w.  In synthesized mode "c" is required and the marching
scale is generated to meet it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import SceneValidationError
from .expr import parse_expression
from .frenet import CurveSpec
from .pencil import GeneralForm, MarchingScale, ProductForm, SurfacePencil

DEFAULT_NS = 200
DEFAULT_NT = 50

_PRODUCT_KEYS = ("l", "m", "n", "U", "V", "W")
_GENERAL_KEYS = ("u", "v", "w")


def _require(data: dict, key: str, context: str):
    if key not in data:
        raise SceneValidationError(f"missing {context}.{key}")
    return data[key]


def _number(value, context: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SceneValidationError(f"{context} must be a number, got {value!r}")
    return float(value)


def _pair(value, context: str) -> tuple[float, float]:
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        raise SceneValidationError(f"{context} must be [min, max]")
    lo = _number(value[0], f"{context}[0]")
    hi = _number(value[1], f"{context}[1]")
    if not lo < hi:
        raise SceneValidationError(f"{context} must satisfy min < max, got {value!r}")
    return lo, hi


def _text(value, context: str) -> str:
    if not isinstance(value, str):
        raise SceneValidationError(f"{context} must be a string, got {value!r}")
    return value


@dataclass
class SceneConfig:
    curve_x: str
    curve_y: str
    curve_z: str
    param: str
    curve_range: tuple[float, float]
    unit_speed: bool
    t0: float
    mode: str  # "explicit" | "synthesized"
    product: dict | None
    general: dict | None
    controls: tuple[float, float, float]
    c: float | None
    sign: int
    ns: int
    nt: int
    t_range: tuple[float, float]
    obj_path: str
    csv_path: str
    description: str = ""

    @classmethod
    def from_dict(cls, data: dict) -> "SceneConfig":
        if not isinstance(data, dict):
            raise SceneValidationError("scene config must be a JSON object")
        curve = _require(data, "curve", "config")
        if not isinstance(curve, dict):
            raise SceneValidationError("config.curve must be an object")
        x = _text(_require(curve, "x", "curve"), "curve.x")
        y = _text(_require(curve, "y", "curve"), "curve.y")
        z = _text(_require(curve, "z", "curve"), "curve.z")
        param = _text(_require(curve, "param", "curve"), "curve.param")
        crange = _pair(_require(curve, "range", "curve"), "curve.range")
        unit_speed = bool(curve.get("unit_speed", False))

        t0 = _number(data.get("t0", 0.0), "t0")

        marching = _require(data, "marching", "config")
        if not isinstance(marching, dict):
            raise SceneValidationError("config.marching must be an object")
        mode = _text(_require(marching, "mode", "marching"), "marching.mode")
        if mode not in ("explicit", "synthesized"):
            raise SceneValidationError(
                f"marching.mode must be 'explicit' or 'synthesized', got {mode!r}"
            )
        product = general = None
        if mode == "explicit":
            block = _require(marching, "explicit", "marching")
            if not isinstance(block, dict):
                raise SceneValidationError("marching.explicit must be an object")
            if all(k in block for k in _PRODUCT_KEYS):
                product = {k: _text(block[k], f"marching.explicit.{k}") for k in _PRODUCT_KEYS}
            elif all(k in block for k in _GENERAL_KEYS):
                general = {k: _text(block[k], f"marching.explicit.{k}") for k in _GENERAL_KEYS}
            else:
                raise SceneValidationError(
                    "marching.explicit needs either product parts l,m,n,U,V,W "
                    "or bivariate u,v,w"
                )
        c = marching.get("c")
        if c is not None:
            c = _number(c, "marching.c")
        if mode == "synthesized" and c is None:
            raise SceneValidationError("synthesized mode requires marching.c")
        sign = marching.get("sign", 1)
        if sign not in (1, -1):
            raise SceneValidationError(f"marching.sign must be 1 or -1, got {sign!r}")
        controls_block = marching.get("controls", {})
        if not isinstance(controls_block, dict):
            raise SceneValidationError("marching.controls must be an object")
        controls = tuple(
            _number(controls_block.get(k, 1.0), f"marching.controls.{k}")
            for k in ("x", "y", "z")
        )

        grid = data.get("grid", {})
        if not isinstance(grid, dict):
            raise SceneValidationError("config.grid must be an object")
        ns = grid.get("ns", DEFAULT_NS)
        nt = grid.get("nt", DEFAULT_NT)
        if not isinstance(ns, int) or not isinstance(nt, int) or ns < 2 or nt < 2:
            raise SceneValidationError("grid.ns and grid.nt must be integers >= 2")
        t_range = _pair(_require(grid, "t_range", "grid"), "grid.t_range")
        if not t_range[0] <= t0 <= t_range[1]:
            raise SceneValidationError(
                f"t0 = {t0!r} must lie inside grid.t_range {list(t_range)!r}"
            )

        outputs = data.get("outputs", {})
        if not isinstance(outputs, dict):
            raise SceneValidationError("config.outputs must be an object")
        obj_path = _text(outputs.get("obj_path", "surface.obj"), "outputs.obj_path")
        csv_path = _text(outputs.get("csv_path", "report.csv"), "outputs.csv_path")

        return cls(
            curve_x=x, curve_y=y, curve_z=z, param=param, curve_range=crange,
            unit_speed=unit_speed, t0=t0, mode=mode, product=product,
            general=general, controls=controls, c=c, sign=sign, ns=ns, nt=nt,
            t_range=t_range, obj_path=obj_path, csv_path=csv_path,
            description=str(data.get("description", "")),
        )

    def to_dict(self) -> dict:
        marching: dict = {"mode": self.mode, "sign": self.sign}
        if self.product is not None:
            marching["explicit"] = dict(self.product)
        elif self.general is not None:
            marching["explicit"] = dict(self.general)
        if self.c is not None:
            marching["c"] = self.c
        marching["controls"] = {
            "x": self.controls[0], "y": self.controls[1], "z": self.controls[2]
        }
        out = {
            "curve": {
                "x": self.curve_x, "y": self.curve_y, "z": self.curve_z,
                "param": self.param, "range": list(self.curve_range),
                "unit_speed": self.unit_speed,
            },
            "t0": self.t0,
            "marching": marching,
            "grid": {"ns": self.ns, "nt": self.nt, "t_range": list(self.t_range)},
            "outputs": {"obj_path": self.obj_path, "csv_path": self.csv_path},
        }
        if self.description:
            out["description"] = self.description
        return out

    def curve(self) -> CurveSpec:
        return CurveSpec(
            x=parse_expression(self.curve_x, [self.param]),
            y=parse_expression(self.curve_y, [self.param]),
            z=parse_expression(self.curve_z, [self.param]),
            param=self.param,
            domain=self.curve_range,
            unit_speed=self.unit_speed,
        )

    def explicit_marching(self) -> MarchingScale:
        if self.mode != "explicit":
            raise SceneValidationError(
                "explicit_marching() requires marching.mode == 'explicit'"
            )
        if self.product is not None:
            svars, tvars = [self.param], ["t"]
            form = ProductForm(
                l=parse_expression(self.product["l"], svars),
                m=parse_expression(self.product["m"], svars),
                n=parse_expression(self.product["n"], svars),
                U=parse_expression(self.product["U"], tvars),
                V=parse_expression(self.product["V"], tvars),
                W=parse_expression(self.product["W"], tvars),
                controls=self.controls,
            )
        else:
            both = [self.param, "t"]
            form = GeneralForm(
                u=parse_expression(self.general["u"], both),
                v=parse_expression(self.general["v"], both),
                w=parse_expression(self.general["w"], both),
                controls=self.controls,
            )
        return MarchingScale(form=form, param=self.param, t0=self.t0)

    def pencil(self) -> SurfacePencil:
        """Assemble the explicit-mode pencil (synthesized mode is built by the CLI)."""
        return SurfacePencil(self.curve(), self.explicit_marching(), self.t_range)
