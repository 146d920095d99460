"""Dense univariate polynomials and rational functions over the rationals.

Everything here is exact: coefficients are GMP rationals (``gmpy2.mpq``,
interoperable with :class:`fractions.Fraction`) and no floating point enters
any operation except float evaluation, which exists only for numerical
cross-checks.

The module also provides the polynomial families the construction is built
from: physicists' Hermite polynomials ``H_n``, pseudo-Hermite polynomials
``(-i)^n H_n(ix)`` and the type III exceptional Hermite polynomials.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from gmpy2 import mpq
from numbers import Rational
from typing import Iterable

from .errors import DomainError

__all__ = [
    "ExactPoly",
    "RationalFunction",
    "X",
    "hermite",
    "pseudo_hermite",
    "eop_y",
    "poly_gcd",
    "eval_at",
    "real_root_count",
    "to_exact",
]

_MPQ = type(mpq(0))
_ZERO = mpq(0)


def to_exact(a) -> mpq:
    """Coerce an int, Fraction, mpq or ``"p/q"`` string to an exact rational."""
    if type(a) is _MPQ:
        return a
    if isinstance(a, (int, str)):
        return mpq(a)
    if isinstance(a, Rational):
        return mpq(int(a.numerator), int(a.denominator))
    raise TypeError(f"exact coefficient expected, got {type(a).__name__}")


_frac = to_exact


class ExactPoly:
    """Immutable polynomial ``sum(coeffs[k] * x**k)``.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        c = [_frac(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple = tuple(c)
        self._hash = None

    @classmethod
    def _raw(cls, coeffs: list) -> "ExactPoly":
        # coeffs already exact rationals; only trailing zeros need stripping
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        p = object.__new__(cls)
        p.coeffs = tuple(coeffs)
        p._hash = None
        return p

    @classmethod
    def constant(cls, c) -> "ExactPoly":
        return cls((c,))

    @classmethod
    def from_roots(cls, roots: Iterable, lead=1) -> "ExactPoly":
        p = cls.constant(lead)
        for r in roots:
            p = p * cls((-_frac(r), 1))
        return p

    # -- basic properties -------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> mpq:
        return self.coeffs[-1] if self.coeffs else _ZERO

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def coeff(self, k: int) -> mpq:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else _ZERO

    def monic(self) -> "ExactPoly":
        if not self.coeffs:
            raise DomainError("the zero polynomial has no monic normalisation")
        lc = self.coeffs[-1]
        if lc == 1:
            return self
        return ExactPoly._raw([a / lc for a in self.coeffs])

    def float_coeffs(self) -> list[float]:
        return [float(a) for a in self.coeffs]

    def as_fractions(self) -> list[Fraction]:
        return [Fraction(int(a.numerator), int(a.denominator)) for a in self.coeffs]

    # -- arithmetic -------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, ExactPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Rational)):
            return self.coeffs == ExactPoly.constant(other).coeffs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def __bool__(self):
        return bool(self.coeffs)

    def __neg__(self):
        return ExactPoly._raw([-a for a in self.coeffs])

    def __add__(self, other):
        if not isinstance(other, ExactPoly):
            if isinstance(other, (int, Rational)):
                other = ExactPoly.constant(other)
            else:
                return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, v in enumerate(b):
            out[k] += v
        return ExactPoly._raw(out)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, ExactPoly):
            if isinstance(other, (int, Rational)):
                other = ExactPoly.constant(other)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, ExactPoly):
            a, b = self.coeffs, other.coeffs
            if not a or not b:
                return ExactPoly()
            out = [_ZERO] * (len(a) + len(b) - 1)
            for i, ai in enumerate(a):
                if ai == 0:
                    continue
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
            return ExactPoly._raw(out)
        if isinstance(other, (int, Rational)):
            s = _frac(other)
            if s == 0:
                return ExactPoly()
            return ExactPoly._raw([a * s for a in self.coeffs])
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise DomainError("negative powers of a polynomial are not polynomials")
        out = ExactPoly.constant(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __divmod__(self, other: "ExactPoly"):
        if not isinstance(other, ExactPoly):
            other = ExactPoly.constant(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        lb = other.coeffs[-1]
        if len(rem) - 1 < db:
            return ExactPoly(), self
        quo = [_ZERO] * (len(rem) - db)
        bc = other.coeffs
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if c == 0:
                continue
            q = c / lb
            quo[k - db] = q
            off = k - db
            for j in range(db + 1):
                rem[off + j] -= q * bc[j]
        return ExactPoly._raw(quo), ExactPoly._raw(rem[:db] if db > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "ExactPoly") -> "ExactPoly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("polynomial division is not exact")
        return q

    def derivative(self) -> "ExactPoly":
        return ExactPoly._raw([k * a for k, a in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        """Horner evaluation; exact for rational ``x``, float for float ``x``."""
        if isinstance(x, float):
            acc = 0.0
            for a in reversed(self.coeffs):
                acc = acc * x + float(a)
            return acc
        x = to_exact(x)
        acc = _ZERO
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def compose(self, other: "ExactPoly") -> "ExactPoly":
        out = ExactPoly()
        for a in reversed(self.coeffs):
            out = out * other + ExactPoly.constant(a)
        return out

    def shift(self, c) -> "ExactPoly":
        """Return ``p(x + c)``."""
        return self.compose(ExactPoly((c, 1)))

    # -- display ----------------------------------------------------------

    def __repr__(self):
        return f"ExactPoly({[str(a) for a in self.coeffs]})"

    def __str__(self):
        return self.to_str()

    def to_str(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            a = self.coeffs[k]
            if a == 0:
                continue
            sign = "-" if a < 0 else "+"
            mag = -a if a < 0 else a
            if k == 0:
                body = str(mag)
            else:
                coef = "" if mag == 1 else f"{mag}*"
                body = coef + (var if k == 1 else f"{var}^{k}")
            parts.append((sign, body))
        s0, b0 = parts[0]
        out = ("-" if s0 == "-" else "") + b0
        for s, b in parts[1:]:
            out += f" {s} {b}"
        return out


X = ExactPoly((0, 1))


def poly_gcd(a: ExactPoly, b: ExactPoly) -> ExactPoly:
    """Monic greatest common divisor by the Euclidean algorithm."""
    if a.is_zero() and b.is_zero():
        raise DomainError("gcd(0, 0) is undefined")
    while not b.is_zero():
        a, b = b, (a % b)
        if not b.is_zero():
            b = b.monic()
    return a.monic()


def eval_at(p: ExactPoly, x0) -> mpq:
    return p(_frac(x0))


def real_root_count(p: ExactPoly) -> int:
    """Number of distinct real roots, from the sign changes of a Sturm sequence."""
    if p.is_zero():
        raise DomainError("the zero polynomial vanishes everywhere")
    if p.degree == 0:
        return 0
    seq = [p, p.derivative()]
    while True:
        r = seq[-2] % seq[-1]
        if r.is_zero():
            break
        seq.append(-r)

    def changes(signs):
        s = [v for v in signs if v != 0]
        return sum(1 for u, v in zip(s, s[1:]) if (u > 0) != (v > 0))

    at_pos = [q.lead for q in seq]
    at_neg = [q.lead * (-1 if q.degree % 2 else 1) for q in seq]
    return changes(at_neg) - changes(at_pos)


class RationalFunction:
    """Quotient ``num / den`` of exact polynomials.

    The public constructor always returns the canonical form: numerator and
    denominator coprime, denominator monic. :meth:`raw` skips normalisation so
    that :meth:`simplify` can be exercised on its own.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, ExactPoly):
            num = ExactPoly.constant(num)
        if den is None:
            den = ExactPoly.constant(1)
        elif not isinstance(den, ExactPoly):
            den = ExactPoly.constant(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        self.num, self.den = _canonical(num, den)

    @classmethod
    def raw(cls, num: ExactPoly, den: ExactPoly) -> "RationalFunction":
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        rf = object.__new__(cls)
        rf.num, rf.den = num, den
        return rf

    @classmethod
    def _trusted(cls, num: ExactPoly, den: ExactPoly) -> "RationalFunction":
        rf = object.__new__(cls)
        rf.num, rf.den = num, den
        return rf

    def simplify(self) -> "RationalFunction":
        num, den = _canonical(self.num, self.den)
        return RationalFunction._trusted(num, den)

    def is_canonical(self) -> bool:
        if self.den.lead != 1:
            return False
        if self.num.is_zero():
            return self.den.degree == 0
        return poly_gcd(self.num, self.den).degree == 0

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (ExactPoly, int, Rational)):
            return self == RationalFunction(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __neg__(self):
        return RationalFunction._trusted(-self.num, self.den)

    def __add__(self, other):
        other = _as_rf(other)
        if other is None:
            return NotImplemented
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        if other.den.degree == 0:
            return RationalFunction._trusted(self.num + other.num * self.den, self.den)
        if self.den.degree == 0:
            return RationalFunction._trusted(self.num * other.den + other.num, other.den)
        return RationalFunction(self.num * other.den + other.num * self.den,
                                self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_rf(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            return RationalFunction._trusted(self.num * other, self.den) if other else RationalFunction(0)
        other = _as_rf(other)
        if other is None:
            return NotImplemented
        if other.den.degree == 0 and self.den.degree == 0:
            return RationalFunction._trusted(self.num * other.num, self.den)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_rf(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def derivative(self) -> "RationalFunction":
        if self.den.degree == 0:
            return RationalFunction._trusted(self.num.derivative(), self.den)
        num = self.num.derivative() * self.den - self.num * self.den.derivative()
        return RationalFunction(num, self.den * self.den)

    def __call__(self, x):
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError(f"pole at x = {x}")
        return self.num(x) / d

    def leading_behaviour(self) -> tuple[mpq, int]:
        """(coefficient, power) of the dominant term as ``x -> infinity``."""
        if self.num.is_zero():
            return _ZERO, 0
        return self.num.lead / self.den.lead, self.num.degree - self.den.degree

    def __repr__(self):
        return f"RationalFunction({self.num!s} / {self.den!s})"

    def __str__(self):
        if self.den.degree == 0:
            return str(self.num)
        return f"({self.num}) / ({self.den})"


def _as_rf(other):
    if isinstance(other, RationalFunction):
        return other
    if isinstance(other, (ExactPoly, int, Rational)):
        return RationalFunction(other)
    return None


def _canonical(num: ExactPoly, den: ExactPoly) -> tuple[ExactPoly, ExactPoly]:
    if num.is_zero():
        return num, ExactPoly.constant(1)
    if den.degree > 0:
        g = poly_gcd(num, den)
        if g.degree > 0:
            num = num.exact_div(g)
            den = den.exact_div(g)
    lc = den.lead
    if lc != 1:
        num = num * (1 / lc)
        den = den.monic()
    return num, den


# -- special polynomial families --------------------------------------------


@lru_cache(maxsize=None)
def hermite(n: int) -> ExactPoly:
    """Physicists' Hermite polynomial from ``H_{n+1} = 2x H_n - 2n H_{n-1}``."""
    if n < 0:
        raise DomainError(f"Hermite index must be non-negative, got {n}")
    if n == 0:
        return ExactPoly((1,))
    if n == 1:
        return ExactPoly((0, 2))
    return 2 * X * hermite(n - 1) - 2 * (n - 1) * hermite(n - 2)


@lru_cache(maxsize=None)
def pseudo_hermite(m: int) -> ExactPoly:
    """``(-i)^m H_m(ix)`` with real coefficients.

    Obeys ``P_{m+1} = 2x P_m + 2m P_{m-1}``; has no real zeros for even ``m``.
    """
    if m < 0:
        raise DomainError(f"pseudo-Hermite index must be non-negative, got {m}")
    if m == 0:
        return ExactPoly((1,))
    if m == 1:
        return ExactPoly((0, 2))
    return 2 * X * pseudo_hermite(m - 1) + 2 * (m - 1) * pseudo_hermite(m - 2)


def require_even_m(m: int) -> None:
    if not isinstance(m, int) or m < 2 or m % 2:
        raise DomainError(f"m must be an even integer >= 2, got {m!r}")


@lru_cache(maxsize=None)
def eop_y(m: int, n: int) -> ExactPoly:
    """Type III exceptional Hermite polynomial of degree ``n``.

    Defined for ``n = 0`` and ``n >= m + 1``; degrees ``1..m`` are the gap.
    """
    require_even_m(m)
    if n == 0:
        return ExactPoly((1,))
    if n < m + 1:
        raise DomainError(f"degree {n} lies in the exceptional gap 1..{m} (or is negative)")
    nu = n - m - 1
    return -pseudo_hermite(m) * hermite(nu + 1) - 2 * m * pseudo_hermite(m - 1) * hermite(nu)

