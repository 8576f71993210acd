"""Second-order forward-mode differentiation on (value, f', f'') triples."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, NonFiniteEvaluation


@dataclass(frozen=True)
class DiffTriple:
    """Value and first two derivatives of a scalar function at one point."""

    v: float
    d1: float
    d2: float

    def __add__(self, other):
        other = _coerce(other)
        return DiffTriple(self.v + other.v, self.d1 + other.d1, self.d2 + other.d2)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        return DiffTriple(self.v - other.v, self.d1 - other.d1, self.d2 - other.d2)

    def __rsub__(self, other):
        return _coerce(other).__sub__(self)

    def __neg__(self):
        return DiffTriple(-self.v, -self.d1, -self.d2)

    def __mul__(self, other):
        other = _coerce(other)
        return DiffTriple(
            self.v * other.v,
            self.d1 * other.v + self.v * other.d1,
            self.d2 * other.v + 2.0 * self.d1 * other.d1 + self.v * other.d2,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other.v == 0.0:
            raise DomainError("division by zero")
        v = self.v / other.v
        d1 = (self.d1 - v * other.d1) / other.v
        d2 = (self.d2 - 2.0 * d1 * other.d1 - v * other.d2) / other.v
        return DiffTriple(v, d1, d2)

    def __rtruediv__(self, other):
        return _coerce(other).__truediv__(self)

    @property
    def is_finite(self) -> bool:
        return math.isfinite(self.v) and math.isfinite(self.d1) and math.isfinite(self.d2)


def constant(c: float) -> DiffTriple:
    return DiffTriple(float(c), 0.0, 0.0)


def seed(x: float) -> DiffTriple:
    """The independent variable at x: value x, slope 1, curvature 0."""
    return DiffTriple(float(x), 1.0, 0.0)


def _coerce(u) -> DiffTriple:
    if isinstance(u, DiffTriple):
        return u
    return constant(u)


def _chain(u: DiffTriple, h: float, dh: float, ddh: float) -> DiffTriple:
    # h(u) propagated through u: (h, h'.u', h''.u'^2 + h'.u'')
    return DiffTriple(h, dh * u.d1, ddh * u.d1 * u.d1 + dh * u.d2)


def sin(u: DiffTriple) -> DiffTriple:
    s, c = math.sin(u.v), math.cos(u.v)
    return _chain(u, s, c, -s)


def cos(u: DiffTriple) -> DiffTriple:
    s, c = math.sin(u.v), math.cos(u.v)
    return _chain(u, c, -s, -c)


def exp(u: DiffTriple) -> DiffTriple:
    try:
        e = math.exp(u.v)
    except OverflowError:
        raise NonFiniteEvaluation(f"exp overflow at {u.v}") from None
    return _chain(u, e, e, e)


def log(u: DiffTriple) -> DiffTriple:
    if u.v <= 0.0:
        raise DomainError(f"log of non-positive value {u.v}")
    inv = 1.0 / u.v
    return _chain(u, math.log(u.v), inv, -inv * inv)


def sqrt(u: DiffTriple) -> DiffTriple:
    # x = 0 is excluded: the derivatives blow up there.
    if u.v <= 0.0:
        raise DomainError(f"sqrt of non-positive value {u.v}")
    r = math.sqrt(u.v)
    dr = 0.5 / r
    return _chain(u, r, dr, -0.5 * dr / u.v)


def tanh(u: DiffTriple) -> DiffTriple:
    t = math.tanh(u.v)
    sech2 = 1.0 - t * t
    return _chain(u, t, sech2, -2.0 * t * sech2)


def _finite_pow(base: float, expo: float) -> float:
    try:
        return math.pow(base, expo)
    except (ValueError, OverflowError) as exc:
        raise DomainError(f"{base} ^ {expo} undefined: {exc}") from None


def powi(u: DiffTriple, p: float) -> DiffTriple:
    """u raised to the constant exponent p.

    Negative bases are fine for integer p; otherwise the base must be
    positive.  At base 0 the derivatives exist only for p = 0, p = 1, or
    p >= 2.
    """
    if p == 0.0:
        return constant(1.0)
    if p == 1.0:
        return DiffTriple(u.v, u.d1, u.d2)
    if u.v < 0.0 and p != math.floor(p):
        raise DomainError(f"negative base {u.v} with non-integer exponent {p}")
    if u.v == 0.0 and p < 2.0:
        raise DomainError(f"exponent {p} has unbounded derivatives at base 0")
    h = _finite_pow(u.v, p)
    dh = p * _finite_pow(u.v, p - 1.0)
    ddh = p * (p - 1.0) * _finite_pow(u.v, p - 2.0) if u.v != 0.0 else 0.0
    return _chain(u, h, dh, ddh)


def pow(u: DiffTriple, w: DiffTriple) -> DiffTriple:  # noqa: A001 - mirrors math.pow
    """General power u ^ w; falls back to exp(w * log(u)) for varying w."""
    if w.d1 == 0.0 and w.d2 == 0.0:
        return powi(u, w.v)
    return exp(w * log(u))


def poly_handle(coeffs: list[float]):
    """Triple evaluator for the polynomial sum(coeffs[i] * x**i).

    Exact (to roundoff) for value and both derivatives; handy wherever a
    function with analytically known curvature bounds is needed.
    """
    cs = [float(c) for c in coeffs]

    def handle(x: float) -> DiffTriple:
        v = d1 = d2 = 0.0
        for c in reversed(cs):
            d2 = d2 * x + 2.0 * d1
            d1 = d1 * x + v
            v = v * x + c
        return DiffTriple(v, d1, d2)

    return handle
