"""Complex scalars with an exact Gaussian-rational path and a float fallback.

Every constant in the library (periods, multipliers, developing-map
coefficients, matrix entries) is a :class:`ComplexScalar`.  Values built
from ints, :class:`fractions.Fraction` or decimal strings stay exact as long
as only ring operations and division are applied; anything transcendental
(``exp``, ``log``, most square roots) drops to float mode.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Optional, Union

DEFAULT_EPS = 1e-9


@dataclass(frozen=True)
class Tolerance:
    eps: float = DEFAULT_EPS

    def __post_init__(self):
        if not (self.eps > 0):
            raise ValueError(f"tolerance must be positive, got {self.eps!r}")


DEFAULT_TOL = Tolerance()

TolLike = Union[Tolerance, float, None]


def as_tol(tol: TolLike) -> Tolerance:
    if tol is None:
        return DEFAULT_TOL
    if isinstance(tol, Tolerance):
        return tol
    return Tolerance(float(tol))


def _exact_sqrt_fraction(q: Fraction) -> Optional[Fraction]:
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


@dataclass(frozen=True)
class ComplexScalar:
    """A complex number ``re + i*im``.

    Both parts are :class:`Fraction` in exact mode and ``float`` in approx
    mode; the two are never mixed inside one value.  Use :func:`cs` to build
    one from ordinary Python numbers.
    """

    re: Union[Fraction, float]
    im: Union[Fraction, float]

    def __post_init__(self):
        re, im = self.re, self.im
        if isinstance(re, Fraction) and isinstance(im, Fraction):
            return
        # mixed or float parts collapse to approx mode
        object.__setattr__(self, "re", float(re))
        object.__setattr__(self, "im", float(im))

    # ------------------------------------------------------------------
    @property
    def exact(self) -> bool:
        return isinstance(self.re, Fraction)

    @property
    def mode(self) -> str:
        return "exact" if self.exact else "approx"

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def to_approx(self) -> "ComplexScalar":
        return self if not self.exact else ComplexScalar(float(self.re), float(self.im))

    def __repr__(self) -> str:
        if self.exact:
            if self.im == 0:
                return f"cs({self.re})"
            return f"cs({self.re}, {self.im})"
        return f"cs({complex(self)!r})"

    # ------------------------------------------------------------------
    # arithmetic
    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return ComplexScalar(self.re + o.re, self.im + o.im) if self.exact and o.exact \
            else _from_complex(complex(self) + complex(o))

    __radd__ = __add__

    def __neg__(self):
        return ComplexScalar(-self.re, -self.im)

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if self.exact and o.exact:
            return ComplexScalar(self.re * o.re - self.im * o.im,
                                 self.re * o.im + self.im * o.re)
        return _from_complex(complex(self) * complex(o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero_exactly():
            raise ZeroDivisionError("complex division by zero")
        if self.exact and o.exact:
            n = o.re * o.re + o.im * o.im
            return ComplexScalar((self.re * o.re + self.im * o.im) / n,
                                 (self.im * o.re - self.re * o.im) / n)
        return _from_complex(complex(self) / complex(o))

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return _from_complex(complex(self) ** complex(n))
        if n < 0:
            return ONE / (self ** (-n))
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "ComplexScalar":
        return ComplexScalar(self.re, -self.im)

    def abs2(self):
        return self.re * self.re + self.im * self.im

    def __abs__(self) -> float:
        return math.hypot(float(self.re), float(self.im))

    def is_zero_exactly(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_zero(self, tol: TolLike = None) -> bool:
        if self.exact:
            return self.is_zero_exactly()
        return abs(self) <= as_tol(tol).eps

    def sqrt(self) -> "ComplexScalar":
        """Principal square root, exact when the result is a Gaussian rational."""
        if self.exact:
            r = self.exact_sqrt()
            if r is not None:
                return r
        return _from_complex(cmath.sqrt(complex(self)))

    def exact_sqrt(self) -> Optional["ComplexScalar"]:
        if not self.exact:
            return None
        a, b = self.re, self.im
        modulus = _exact_sqrt_fraction(a * a + b * b)
        if modulus is None:
            return None
        x = _exact_sqrt_fraction((modulus + a) / 2)
        y = _exact_sqrt_fraction((modulus - a) / 2)
        if x is None or y is None:
            return None
        if b < 0:
            y = -y
        root = ComplexScalar(x, y)
        # principal branch: Re > 0, or Re == 0 and Im >= 0
        if root.re < 0 or (root.re == 0 and root.im < 0):
            root = -root
        return root

    def exp(self) -> "ComplexScalar":
        if self.exact and self.is_zero_exactly():
            return ONE
        return _from_complex(cmath.exp(complex(self)))

    def log(self) -> "ComplexScalar":
        """Principal logarithm (imaginary part in (-pi, pi])."""
        if self.exact and self.re == 1 and self.im == 0:
            return ZERO
        return _from_complex(cmath.log(complex(self)))


def _from_complex(z: complex) -> ComplexScalar:
    return ComplexScalar(z.real, z.imag)


def _parse_part(x) -> Union[Fraction, float]:
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, float):
        return x
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except ValueError:
            raise ValueError(f"not an exact decimal or fraction: {x!r}") from None
    raise TypeError(f"cannot interpret {x!r} as a real number")


def cs(re=0, im=0) -> ComplexScalar:
    """Build a :class:`ComplexScalar`.

    ``cs(3)``, ``cs("1/2", 1)`` and ``cs(Fraction(1, 3))`` are exact;
    ``cs(0.5)`` or ``cs(1j)`` are approx.  An existing scalar is returned
    unchanged.
    """
    if isinstance(re, ComplexScalar) and im == 0:
        return re
    if isinstance(re, complex):
        if im != 0:
            raise TypeError("pass either a complex or a (re, im) pair")
        return _from_complex(re)
    return ComplexScalar(_parse_part(re), _parse_part(im))


def _coerce(x) -> Optional[ComplexScalar]:
    if isinstance(x, ComplexScalar):
        return x
    if isinstance(x, (int, float, complex, Fraction)) and not isinstance(x, bool):
        return cs(x)
    return None


ZERO = cs(0)
ONE = cs(1)
I = cs(0, 1)


def approx_eq(a, b, tol: TolLike = None) -> bool:
    """Equality of two scalars: exact when both are exact, else ``|a-b| <= eps``."""
    a, b = cs(a), cs(b)
    if a.exact and b.exact:
        return a == b
    return abs(complex(a) - complex(b)) <= as_tol(tol).eps


def root_of_unity_order(z, max_order: int, tol: TolLike = None) -> Optional[int]:
    """Smallest ``n <= max_order`` with ``z**n == 1``, or ``None``.

    In approx mode ``z`` must have modulus within ``eps`` of 1 and the n-th
    power is accepted when ``|z**n - 1| <= n*eps``.
    """
    if max_order < 1:
        raise ValueError("max_order must be at least 1")
    z = cs(z)
    eps = as_tol(tol).eps
    if z.exact:
        if z.abs2() != 1:
            return None
        power = z
        for n in range(1, max_order + 1):
            if power == ONE:
                return n
            power = power * z
        return None
    w = complex(z)
    if abs(abs(w) - 1.0) > eps:
        return None
    power = w
    for n in range(1, max_order + 1):
        if abs(power - 1.0) <= n * eps:
            return n
        power *= w
    return None
