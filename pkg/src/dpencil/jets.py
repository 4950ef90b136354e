"""Third-order jets: a value together with its first three derivatives.

A :class:`Jet3` propagates derivatives exactly through arithmetic and the
supported analytic functions (Leibniz / Faa di Bruno rules truncated at
order 3), which is as far as the curvature and torsion formulas need.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError


@dataclass(slots=True)
class Jet3:
    v0: float
    v1: float = 0.0
    v2: float = 0.0
    v3: float = 0.0

    @staticmethod
    def constant(value: float) -> "Jet3":
        return Jet3(float(value))

    @staticmethod
    def variable(point: float) -> "Jet3":
        """Jet of the identity function at ``point``."""
        return Jet3(float(point), 1.0)

    def is_constant(self) -> bool:
        return self.v1 == 0.0 and self.v2 == 0.0 and self.v3 == 0.0

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return Jet3(self.v0 + o.v0, self.v1 + o.v1, self.v2 + o.v2, self.v3 + o.v3)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return Jet3(self.v0 - o.v0, self.v1 - o.v1, self.v2 - o.v2, self.v3 - o.v3)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return Jet3(-self.v0, -self.v1, -self.v2, -self.v3)

    def __mul__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        a0, a1, a2, a3 = self.v0, self.v1, self.v2, self.v3
        b0, b1, b2, b3 = o.v0, o.v1, o.v2, o.v3
        return Jet3(
            a0 * b0,
            a1 * b0 + a0 * b1,
            a2 * b0 + 2.0 * a1 * b1 + a0 * b2,
            a3 * b0 + 3.0 * a2 * b1 + 3.0 * a1 * b2 + a0 * b3,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if o.v0 == 0.0:
            raise DomainError("division by zero")
        a0, a1, a2, a3 = self.v0, self.v1, self.v2, self.v3
        b0, b1, b2, b3 = o.v0, o.v1, o.v2, o.v3
        h0 = a0 / b0
        h1 = (a1 - h0 * b1) / b0
        h2 = (a2 - h0 * b2 - 2.0 * h1 * b1) / b0
        h3 = (a3 - h0 * b3 - 3.0 * h1 * b2 - 3.0 * h2 * b1) / b0
        return Jet3(h0, h1, h2, h3)

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return jet_pow(self, o)


def _coerce(x) -> Jet3 | None:
    if isinstance(x, Jet3):
        return x
    if isinstance(x, (int, float)):
        return Jet3(float(x))
    return None


def _compose(f0: float, f1: float, f2: float, f3: float, u: Jet3) -> Jet3:
    """Chain rule for an outer univariate function with derivatives f0..f3 at u.v0."""
    u1, u2, u3 = u.v1, u.v2, u.v3
    return Jet3(
        f0,
        f1 * u1,
        f2 * u1 * u1 + f1 * u2,
        f3 * u1 * u1 * u1 + 3.0 * f2 * u1 * u2 + f1 * u3,
    )


def jet_pow(base: Jet3, expo: Jet3) -> Jet3:
    if expo.is_constant():
        p = expo.v0
        if float(p).is_integer() and abs(p) <= 512:
            n = int(p)
            if n >= 0:
                return _powi(base, n)
            if base.v0 == 0.0:
                raise DomainError("zero base with negative exponent")
            return Jet3(1.0) / _powi(base, -n)
        if base.v0 < 0.0:
            raise DomainError("negative base with non-integer exponent")
        if base.v0 == 0.0:
            if base.is_constant() and p > 0:
                return Jet3(0.0)
            raise DomainError("derivative of 0^p undefined")
        x = base.v0
        return _compose(
            x**p,
            p * x ** (p - 1.0),
            p * (p - 1.0) * x ** (p - 2.0),
            p * (p - 1.0) * (p - 2.0) * x ** (p - 3.0),
            base,
        )
    if base.v0 <= 0.0:
        raise DomainError("variable exponent requires a positive base")
    return jet_exp(expo * jet_ln(base))


def _powi(b: Jet3, n: int) -> Jet3:
    result = Jet3(1.0)
    acc = b
    while n:
        if n & 1:
            result = result * acc
        n >>= 1
        if n:
            acc = acc * acc
    return result


# -- supported functions ----------------------------------------------------


def jet_sin(u: Jet3) -> Jet3:
    s, c = math.sin(u.v0), math.cos(u.v0)
    return _compose(s, c, -s, -c, u)


def jet_cos(u: Jet3) -> Jet3:
    s, c = math.sin(u.v0), math.cos(u.v0)
    return _compose(c, -s, -c, s, u)


def jet_tan(u: Jet3) -> Jet3:
    t = math.tan(u.v0)
    d = 1.0 + t * t
    return _compose(t, d, 2.0 * t * d, d * (2.0 + 6.0 * t * t), u)


def jet_asin(u: Jet3) -> Jet3:
    x = u.v0
    if not -1.0 <= x <= 1.0:
        raise DomainError(f"asin argument {x!r} outside [-1, 1]")
    if u.is_constant():
        return Jet3(math.asin(x))
    if x * x >= 1.0:
        raise DomainError("asin derivative undefined at +/-1")
    r = 1.0 - x * x
    return _compose(
        math.asin(x), r**-0.5, x * r**-1.5, (1.0 + 2.0 * x * x) * r**-2.5, u
    )


def jet_acos(u: Jet3) -> Jet3:
    x = u.v0
    if not -1.0 <= x <= 1.0:
        raise DomainError(f"acos argument {x!r} outside [-1, 1]")
    if u.is_constant():
        return Jet3(math.acos(x))
    if x * x >= 1.0:
        raise DomainError("acos derivative undefined at +/-1")
    r = 1.0 - x * x
    return _compose(
        math.acos(x), -(r**-0.5), -x * r**-1.5, -(1.0 + 2.0 * x * x) * r**-2.5, u
    )


def jet_atan(u: Jet3) -> Jet3:
    x = u.v0
    d = 1.0 + x * x
    return _compose(
        math.atan(x), 1.0 / d, -2.0 * x / (d * d), (6.0 * x * x - 2.0) / (d * d * d), u
    )


def jet_sinh(u: Jet3) -> Jet3:
    s, c = math.sinh(u.v0), math.cosh(u.v0)
    return _compose(s, c, s, c, u)


def jet_cosh(u: Jet3) -> Jet3:
    s, c = math.sinh(u.v0), math.cosh(u.v0)
    return _compose(c, s, c, s, u)


def jet_tanh(u: Jet3) -> Jet3:
    t = math.tanh(u.v0)
    d = 1.0 - t * t
    return _compose(t, d, -2.0 * t * d, d * (6.0 * t * t - 2.0), u)


def jet_exp(u: Jet3) -> Jet3:
    e = math.exp(u.v0)
    return _compose(e, e, e, e, u)


def jet_ln(u: Jet3) -> Jet3:
    x = u.v0
    if x <= 0.0:
        raise DomainError(f"ln of non-positive value {x!r}")
    return _compose(math.log(x), 1.0 / x, -1.0 / (x * x), 2.0 / (x * x * x), u)


def jet_sqrt(u: Jet3) -> Jet3:
    x = u.v0
    if x < 0.0:
        raise DomainError(f"sqrt of negative value {x!r}")
    if u.is_constant():
        return Jet3(math.sqrt(x))
    if x == 0.0:
        raise DomainError("derivative of sqrt undefined at 0")
    r = math.sqrt(x)
    return _compose(r, 0.5 / r, -0.25 / (x * r), 0.375 / (x * x * r), u)


def jet_abs(u: Jet3) -> Jet3:
    x = u.v0
    if u.is_constant():
        return Jet3(abs(x))
    if x == 0.0:
        # A subgradient convention here would silently corrupt curvature and
        # torsion, so it is an error instead.
        raise DomainError("derivative of abs undefined at 0")
    s = 1.0 if x > 0.0 else -1.0
    return Jet3(abs(x), s * u.v1, s * u.v2, s * u.v3)


JET_FUNCTIONS = {
    "sin": jet_sin,
    "cos": jet_cos,
    "tan": jet_tan,
    "asin": jet_asin,
    "acos": jet_acos,
    "atan": jet_atan,
    "sinh": jet_sinh,
    "cosh": jet_cosh,
    "tanh": jet_tanh,
    "exp": jet_exp,
    "ln": jet_ln,
    "sqrt": jet_sqrt,
    "abs": jet_abs,
}
