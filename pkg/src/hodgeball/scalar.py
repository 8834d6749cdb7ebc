"""Exact scalars: rationals (``fractions.Fraction``) and Gaussian rationals.

Everything in the core is computed with these two types.  Floating complex
numbers only appear through :func:`to_complex`, which the sampling helpers
use to emit point clouds.
"""

import re
from fractions import Fraction
from math import lcm

__all__ = [
    "Fraction",
    "GaussianRational",
    "I",
    "reduce",
    "lcd",
    "gaussian_conj",
    "conj",
    "parse_rational",
    "parse_gaussian",
    "as_scalar",
    "format_scalar",
    "to_complex",
    "abs2",
]


def reduce(n, d):
    """Return n/d in lowest terms with the sign carried by the numerator."""
    if d == 0:
        raise ZeroDivisionError("division by zero")
    return Fraction(n, d)


def lcd(values):
    """Least common denominator of a non-empty list of rationals."""
    values = list(values)
    if not values:
        raise ValueError("lcd of an empty list")
    return lcm(*(Fraction(v).denominator for v in values))


class GaussianRational:
    """An element a + b*i of Q(i), immutable."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, str):
            z = parse_gaussian(re)
            re, im = z.re, z.im + Fraction(im)
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _lift(x):
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction)):
            return GaussianRational(x)
        return NotImplemented

    def __add__(self, other):
        if isinstance(other, GaussianRational):
            return _g(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Fraction)):
            return _g(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, GaussianRational):
            return _g(self.re - other.re, self.im - other.im)
        if isinstance(other, (int, Fraction)):
            return _g(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return _g(other - self.re, -self.im)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            a, b, c, d = self.re, self.im, other.re, other.im
            return _g(a * c - b * d, a * d + b * c)
        if isinstance(other, (int, Fraction)):
            return _g(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        n = other.re * other.re + other.im * other.im
        if n == 0:
            raise ZeroDivisionError("division by zero")
        a, b, c, d = self.re, self.im, other.re, other.im
        return _g((a * c + b * d) / n, (b * c - a * d) / n)

    def __rtruediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return GaussianRational(1) / (self ** -k)
        result, base = GaussianRational(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __neg__(self):
        return _g(-self.re, -self.im)

    def __pos__(self):
        return self

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def conjugate(self):
        return _g(self.re, -self.im)

    def norm(self):
        """x * conj(x), a non-negative rational."""
        return self.re * self.re + self.im * self.im

    @property
    def is_real(self):
        return self.im == 0

    def __repr__(self):
        return f"GaussianRational('{self}')"

    def __str__(self):
        return format_scalar(self)

    def __complex__(self):
        return complex(float(self.re), float(self.im))


def _g(re, im):
    z = _new(GaussianRational)
    z.re = re
    z.im = im
    return z


_new = object.__new__

I = GaussianRational(0, 1)


def gaussian_conj(x):
    """(a + b*i) -> (a - b*i); rationals are fixed."""
    if isinstance(x, GaussianRational):
        return x.conjugate()
    return GaussianRational(x)


def conj(x):
    """Conjugate that leaves plain rationals as rationals."""
    if isinstance(x, GaussianRational):
        return x.conjugate()
    return x


def abs2(x):
    """|x|^2; exact for exact input."""
    if isinstance(x, GaussianRational):
        return x.norm()
    if isinstance(x, complex):
        return x.real * x.real + x.imag * x.imag
    return x * x


_RATIONAL = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rational(text):
    """Parse "p/q" or "p" exactly."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    m = _RATIONAL.match(str(text))
    if not m:
        raise ValueError(f"not a rational: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    return reduce(num, den)


_GAUSS_TERM = re.compile(r"([+-]?)([0-9/]*)(\*?i)?")


def parse_gaussian(text):
    """Parse "a+b*i" (also "b*i", "i", "-i", "a") with rational a and b."""
    if isinstance(text, GaussianRational):
        return text
    if isinstance(text, (int, Fraction)):
        return GaussianRational(text)
    s = str(text).replace(" ", "")
    if not s:
        raise ValueError("empty scalar")
    re_part, im_part = Fraction(0), Fraction(0)
    pos = 0
    seen = False
    while pos < len(s):
        m = _GAUSS_TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"bad Gaussian rational {text!r} at column {pos + 1}")
        sign, mag, imag = m.groups()
        if seen and not sign:
            raise ValueError(f"bad Gaussian rational {text!r} at column {pos + 1}")
        if not mag and not imag:
            raise ValueError(f"bad Gaussian rational {text!r} at column {pos + 1}")
        if imag and imag.startswith("*") and not mag:
            raise ValueError(f"bad Gaussian rational {text!r} at column {pos + 1}")
        value = parse_rational(mag) if mag else Fraction(1)
        if sign == "-":
            value = -value
        if imag:
            im_part += value
        else:
            re_part += value
        seen = True
        pos = m.end()
    return GaussianRational(re_part, im_part)


def as_scalar(x):
    """Coerce JSON/user input to an exact scalar (Fraction when real)."""
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, (Fraction, GaussianRational)):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        raise TypeError("floating point input is not exact; pass a string like '1/3'")
    z = parse_gaussian(x)
    return z.re if z.im == 0 else z


def format_scalar(x):
    """Text form: "p/q" for rationals, "a+b*i" for Gaussian rationals."""
    if isinstance(x, GaussianRational):
        re_, im_ = x.re, x.im
        if im_ == 0:
            return str(re_)
        if im_ == 1:
            im_s = "i"
        elif im_ == -1:
            im_s = "-i"
        else:
            im_s = f"{im_}*i"
        if re_ == 0:
            return im_s
        return f"{re_}{im_s}" if im_s.startswith("-") else f"{re_}+{im_s}"
    return str(Fraction(x))


def to_complex(x):
    """Approximate an exact scalar as a Python complex (sampling output only)."""
    if isinstance(x, GaussianRational):
        return complex(float(x.re), float(x.im))
    return complex(float(x))
