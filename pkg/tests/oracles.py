"""Independent numerical oracles shared by the test modules.

These deliberately avoid the code paths they check: finite differences go
through the plain-arithmetic evaluator only, and the OBJ reader is a
from-scratch text parser.
"""

from __future__ import annotations

import numpy as np

from dpencil.expr import evaluate, parse_expression


def fd_derivatives(f, x: float) -> tuple[float, float, float]:
    """First three derivatives of callable ``f`` at ``x`` by central
    differences with Richardson extrapolation.

    Step sizes grow with the order: the k-th difference quotient divides
    by h^k, so the roundoff floor forces a coarser base step for the
    second and third derivatives.
    """

    def d1(h):
        return (f(x + h) - f(x - h)) / (2.0 * h)

    def d2(h):
        return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h)

    def d3(h):
        return (f(x + 2 * h) - 2.0 * f(x + h) + 2.0 * f(x - h) - f(x - 2 * h)) / (
            2.0 * h**3
        )

    def richardson(d, h):
        return (4.0 * d(h / 2.0) - d(h)) / 3.0

    return richardson(d1, 1e-4), richardson(d2, 1e-3), richardson(d3, 1e-2)


def expression_fn(source: str, var: str = "x"):
    expr = parse_expression(source, [var])
    return lambda value: evaluate(expr, {var: value})


def random_function_samples(rng: np.random.Generator, per_function: int):
    """(expression string, point) pairs exercising every supported function.

    Inner arguments are arranged to keep every stencil point of the finite
    difference oracle strictly inside each function's domain.
    """
    samples = []
    names = ["sin", "cos", "tan", "asin", "acos", "atan", "sinh", "cosh",
             "tanh", "exp", "ln", "sqrt", "abs"]
    for fn in names:
        for _ in range(per_function):
            a = rng.uniform(0.3, 1.5)
            b = rng.uniform(-1.0, 1.0)
            scale = rng.uniform(0.5, 2.0)
            shift = rng.uniform(-1.0, 1.0)
            x = rng.uniform(-1.0, 1.0)
            if fn == "tan":
                a = rng.uniform(0.3, 0.6)
                b = rng.uniform(-0.5, 0.5)
                inner = f"{a!r}*x + {b!r}"
            elif fn in ("asin", "acos"):
                inner = f"0.8*sin({a!r}*x + {b!r})"
            elif fn in ("ln", "sqrt"):
                inner = f"1.5 + 0.9*cos({a!r}*x + {b!r})"
            elif fn == "abs":
                sgn = "-" if rng.random() < 0.5 else ""
                inner = f"{sgn}(1.5 + 0.9*sin({a!r}*x + {b!r}))"
            else:
                inner = f"{a!r}*x + {b!r}"
            samples.append((f"{scale!r}*{fn}({inner}) + {shift!r}", x))
    return samples


def read_obj(data: bytes):
    """Positions, normals, faces (0-based) from OBJ bytes."""
    positions, normals, faces = [], [], []
    for line in data.decode("ascii").splitlines():
        parts = line.split()
        if not parts:
            continue
        if parts[0] == "v":
            positions.append([float(p) for p in parts[1:4]])
        elif parts[0] == "vn":
            normals.append([float(p) for p in parts[1:4]])
        elif parts[0] == "f":
            faces.append([int(p.split("//")[0]) - 1 for p in parts[1:]])
    return np.array(positions), np.array(normals), faces


def read_csv_report(data: bytes):
    """(header, rows, summary dict) from a verification report CSV."""
    lines = data.decode("ascii").splitlines()
    header = lines[0]
    rows = []
    summary = {}
    for line in lines[1:]:
        fields = line.split(",")
        if fields[0] in ("c_estimate", "max_deviation"):
            summary[fields[0]] = float(fields[1])
        else:
            rows.append([float(f) for f in fields])
    return header, rows, summary
