"""Eigenfunctions of the oscillator and its rational extension.

Every function handled by the ladder construction has the form
``h(x) * exp(sigma * x**2 / 2)`` with ``h`` rational and ``sigma = +-1``;
:class:`QuasiGaussian` stores exactly that. Eigenstates are kept
unnormalised, with their squared norm carried separately as an exact
rational times a power of ``sqrt(pi)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy.special import roots_hermite

from .errors import DomainError
from .exact_poly import RationalFunction, require_even_m, to_exact, eop_y, hermite, pseudo_hermite

PLUS = "+"
MINUS = "-"


@dataclass(frozen=True)
class QuasiGaussian:
    pre: RationalFunction
    sigma: int = -1

    def __post_init__(self):
        if self.sigma not in (1, -1):
            raise DomainError(f"Gaussian sign must be +1 or -1, got {self.sigma}")

    @classmethod
    def from_poly(cls, p, sigma: int = -1) -> "QuasiGaussian":
        return cls(RationalFunction(p), sigma)

    def is_zero(self) -> bool:
        return self.pre.is_zero()

    def scale(self, c) -> "QuasiGaussian":
        return QuasiGaussian(self.pre * to_exact(c), self.sigma)

    def __add__(self, other: "QuasiGaussian") -> "QuasiGaussian":
        if other.sigma != self.sigma:
            raise DomainError("cannot add quasi-Gaussians with different exponents")
        return QuasiGaussian(self.pre + other.pre, self.sigma)

    def __sub__(self, other: "QuasiGaussian") -> "QuasiGaussian":
        if other.sigma != self.sigma:
            raise DomainError("cannot subtract quasi-Gaussians with different exponents")
        return QuasiGaussian(self.pre - other.pre, self.sigma)

    def ratio_to(self, other: "QuasiGaussian"):
        """Exact constant ``c`` with ``self == c * other``, or ``None``.

        Relies on both prefactors being canonical, which makes equal
        functions have equal monic denominators.
        """
        if other.is_zero():
            return Fraction(0) if self.is_zero() else None
        if self.is_zero():
            return Fraction(0)
        if self.sigma != other.sigma or self.pre.den != other.pre.den:
            return None
        a, b = self.pre.num, other.pre.num
        if a.degree != b.degree:
            return None
        c = a.lead / b.lead
        return c if a == b * c else None

    def __call__(self, x: float) -> float:
        return float(self.pre(float(x))) * math.exp(self.sigma * x * x / 2)


@dataclass(frozen=True)
class NormSquared:
    """``rational_part * pi**(sqrt_pi_power / 2)``."""

    rational_part: Fraction
    sqrt_pi_power: int = 1

    def __float__(self):
        return float(self.rational_part) * math.pi ** (self.sqrt_pi_power / 2)

    def ratio(self, other: "NormSquared") -> Fraction:
        if self.sqrt_pi_power != other.sqrt_pi_power:
            raise DomainError("norm ratio would carry a residual power of pi")
        return self.rational_part / other.rational_part


def _check_state(m: int, side: str, nu: int) -> None:
    require_even_m(m)
    if side == PLUS:
        if nu < 0:
            raise DomainError(f"oscillator states have nu >= 0, got {nu}")
    elif side == MINUS:
        if nu < 0 and nu != -m - 1:
            raise DomainError(f"nu = {nu} is not a bound state of the extended oscillator (m={m})")
    else:
        raise DomainError(f"side must be '+' or '-', got {side!r}")


def valid_nus(m: int, nu_max: int) -> list[int]:
    """Bound-state labels of the extended partner up to ``nu_max``."""
    return [-m - 1] + list(range(0, nu_max + 1))


@lru_cache(maxsize=None)
def eigenstate_prefactor(m: int, side: str, nu: int) -> QuasiGaussian:
    """Unnormalised eigenfunction of the oscillator (``+``) or its partner (``-``)."""
    _check_state(m, side, nu)
    if side == PLUS:
        return QuasiGaussian(RationalFunction(hermite(nu)), -1)
    return QuasiGaussian(RationalFunction(eop_y(m, nu + m + 1), pseudo_hermite(m)), -1)


def norm_squared(m: int, side: str, nu: int) -> NormSquared:
    _check_state(m, side, nu)
    if side == PLUS:
        return NormSquared(Fraction(2**nu * math.factorial(nu)), 1)
    if nu == -m - 1:
        return NormSquared(Fraction(1, 2**m * math.factorial(m)), 1)
    return NormSquared(Fraction(2 ** (nu + 1) * (nu + m + 1) * math.factorial(nu)), 1)


def energy(m: int, side: str, nu: int) -> Fraction:
    _check_state(m, side, nu)
    return Fraction(2 * (nu + m + 1))


def phi_m(m: int) -> QuasiGaussian:
    """Factorisation function ``P_m(x) exp(x^2/2)``; not normalisable."""
    require_even_m(m)
    return QuasiGaussian(RationalFunction(pseudo_hermite(m)), 1)


# -- Gauss-Hermite cross-checks ---------------------------------------------

QUAD_NODES = 200
QUAD_MAX_NODES = 2000
QUAD_TOL = 1e-12


@lru_cache(maxsize=16)
def _gauss_hermite(n: int):
    return roots_hermite(n)


def _eval_rf(rf: RationalFunction, x: np.ndarray) -> np.ndarray:
    num = np.polynomial.polynomial.polyval(x, rf.num.float_coeffs() or [0.0])
    den = np.polynomial.polynomial.polyval(x, rf.den.float_coeffs())
    return num / den


def quadrature_inner_product(f: QuasiGaussian, g: QuasiGaussian, nodes: int = QUAD_NODES) -> float:
    """Numerical ``integral f(x) g(x) dx`` for two decaying quasi-Gaussians.

    The product carries ``exp(-x^2)``, which becomes the Gauss-Hermite weight.
    The node count doubles until two successive estimates agree to
    ``QUAD_TOL`` (relative to ``max(1, |I|)``) or ``QUAD_MAX_NODES`` is hit.
    """
    if f.sigma != -1 or g.sigma != -1:
        raise DomainError("only exp(-x^2/2) quasi-Gaussians are square integrable")
    if nodes < 1:
        raise DomainError("need at least one quadrature node")

    def estimate(n):
        x, w = _gauss_hermite(n)
        return float(np.dot(w, _eval_rf(f.pre, x) * _eval_rf(g.pre, x)))

    prev = estimate(nodes)
    n = nodes
    while n < QUAD_MAX_NODES:
        n = min(2 * n, QUAD_MAX_NODES)
        cur = estimate(n)
        if abs(cur - prev) <= QUAD_TOL * max(1.0, abs(cur)):
            return cur
        prev = cur
    return prev


def gram_matrix(m: int, count: int) -> np.ndarray:
    """Quadrature Gram matrix of the first ``count`` normalised partner eigenstates."""
    nus = valid_nus(m, count - 2)[:count]
    states = [eigenstate_prefactor(m, MINUS, nu) for nu in nus]
    norms = [math.sqrt(float(norm_squared(m, MINUS, nu))) for nu in nus]
    g = np.empty((count, count))
    for i in range(count):
        for j in range(i, count):
            v = quadrature_inner_product(states[i], states[j]) / (norms[i] * norms[j])
            g[i, j] = g[j, i] = v
    return g


__all__ = [
    "QuasiGaussian",
    "NormSquared",
    "PLUS",
    "MINUS",
    "valid_nus",
    "eigenstate_prefactor",
    "norm_squared",
    "energy",
    "phi_m",
    "quadrature_inner_product",
    "gram_matrix",
]
