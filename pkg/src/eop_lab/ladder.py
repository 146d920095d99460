"""Ladder operators of order m+1 for the extended oscillator and their algebra.

``c† = A Â_1† ... Â_m†`` and ``c = Â_m ... Â_1 A†`` shift the partner
spectrum by ``2m + 2``. All statements are checked on unnormalised
eigenfunctions through exact proportionality constants; square roots of
norms are never formed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError, VerificationError
from .exact_poly import ExactPoly, require_even_m
from .susy import (
    FirstOrderOperator,
    VerificationReport,
    apply_chain,
    build_hat_chain,
    build_partner_potential,
    build_supercharges,
)
from .wavefunctions import MINUS, QuasiGaussian, eigenstate_prefactor, energy, norm_squared, valid_nus


@dataclass(frozen=True)
class OperatorChain:
    """Product of first-order operators, written left to right.

    The rightmost factor acts first. ``shift`` is the ``λ`` in
    ``[H, chain] = λ chain``.
    """

    factors: tuple[FirstOrderOperator, ...]
    shift: Fraction

    @property
    def order(self) -> int:
        return len(self.factors)

    def adjoint(self) -> "OperatorChain":
        return OperatorChain(tuple(f.adjoint() for f in reversed(self.factors)), -self.shift)

    def apply(self, f: QuasiGaussian) -> QuasiGaussian:
        return apply_chain(self.factors, f)

    def __str__(self):
        return "·".join(f.name for f in self.factors)


@dataclass(frozen=True)
class PHASpec:
    """``Q(H) = H * prod_{i=1..m} (H - 2m - 2 - 2i)`` with step ``lam = 2m + 2``."""

    m: int
    Q: ExactPoly
    lam: Fraction
    roots: tuple[Fraction, ...]

    def __call__(self, E) -> Fraction:
        return self.Q(E)


@lru_cache(maxsize=None)
def build_ladder(m: int) -> tuple[OperatorChain, OperatorChain]:
    require_even_m(m)
    A, _ = build_supercharges(m)
    hats = build_hat_chain(m)
    lam = Fraction(2 * m + 2)
    c_up = OperatorChain((A,) + tuple(h.adjoint() for h in hats), lam)
    c_down = OperatorChain(tuple(reversed(hats)) + (A.adjoint(),), -lam)
    return c_up, c_down


@lru_cache(maxsize=None)
def pha_Q(m: int) -> PHASpec:
    require_even_m(m)
    roots = (Fraction(0),) + tuple(Fraction(2 * m + 2 + 2 * i) for i in range(1, m + 1))
    return PHASpec(m, ExactPoly.from_roots(roots), Fraction(2 * m + 2), roots)


def _check_nu(m: int, nu: int) -> None:
    require_even_m(m)
    if nu < 0 and nu != -m - 1:
        raise DomainError(f"nu = {nu} is not a bound state (m={m})")


def raise_target(m: int, nu: int) -> int:
    """Label reached by one application of ``c†``."""
    return 0 if nu == -m - 1 else nu + m + 1


def raising_ratio(m: int, nu: int) -> Fraction:
    """Exact constant ``r`` with ``c† ψ̃_nu = r ψ̃_target`` on unnormalised states."""
    _check_nu(m, nu)
    c_up, _ = build_ladder(m)
    tgt = raise_target(m, nu)
    image = c_up.apply(eigenstate_prefactor(m, MINUS, nu))
    r = image.ratio_to(eigenstate_prefactor(m, MINUS, tgt))
    if r is None:
        raise VerificationError("c† ψ_ν ∝ ψ_{ν+m+1}", f"m={m}, ν={nu}",
                                "image is not proportional to the target state")
    return Fraction(int(r.numerator), int(r.denominator))


def ladder_coefficient_squared(m: int, nu: int) -> tuple[Fraction, int]:
    """``(C^2, sign C)`` for ``c† ψ_nu = C ψ_{target}`` with normalised states."""
    r = raising_ratio(m, nu)
    tgt = raise_target(m, nu)
    # psi = N * psi~ and N^2 = 1 / ||psi~||^2, so C = r * N_nu / N_tgt
    c2 = r * r * norm_squared(m, MINUS, tgt).ratio(norm_squared(m, MINUS, nu))
    return c2, (1 if r > 0 else -1)


def closed_form_coefficient_squared(m: int, nu: int) -> tuple[Fraction, int]:
    """The stated product formula for the raising coefficient, for comparison."""
    _check_nu(m, nu)
    if nu == -m - 1:
        val = 2 ** (m + 1)
        for k in range(1, m + 2):
            val *= k
        return Fraction(val), 1
    val = 2 ** (m + 1) * (nu + 2 * m + 2)
    for k in range(nu + 1, nu + m + 1):
        val *= k
    return Fraction(val), -1


def kernel_check(m: int, nu: int) -> bool:
    _check_nu(m, nu)
    _, c_down = build_ladder(m)
    return c_down.apply(eigenstate_prefactor(m, MINUS, nu)).is_zero()


def lowering_target(m: int, nu: int):
    """Label reached by ``c``, or ``None`` when ``c`` annihilates the state."""
    _check_nu(m, nu)
    if nu == -m - 1 or 1 <= nu <= m:
        return None
    if nu == 0:
        return -m - 1
    return nu - m - 1


def verify_pha(m: int, nu_max: int | None = None) -> VerificationReport:
    """Check the commutation relations state by state, exactly.

    For every bound state ``psi`` with label up to ``nu_max``:
    ``[H, c†] psi = λ c† psi``, ``[H, c] psi = -λ c psi``,
    ``c† c psi = Q(E) psi``, ``c c† psi = Q(E + λ) psi`` and
    ``[c, c†] psi = (Q(E + λ) - Q(E)) psi``.
    """
    require_even_m(m)
    if nu_max is None:
        nu_max = 3 * (m + 1)
    if nu_max < m + 1:
        raise DomainError(f"nu_max must be at least m + 1 = {m + 1}")
    report = VerificationReport(f"PHA m={m}, nu<={nu_max}")
    for nu in valid_nus(m, nu_max):
        for name, ok in pha_checks(m, nu):
            report.record(name, f"ψ-_{nu}", ok)
    return report


def pha_checks(m: int, nu: int) -> list[tuple[str, bool]]:
    c_up, c_down = build_ladder(m)
    H = build_partner_potential(m)
    Q = pha_Q(m)
    lam = Q.lam
    psi = eigenstate_prefactor(m, MINUS, nu)
    E = energy(m, MINUS, nu)
    out = []

    Hpsi = H.apply(psi)
    out.append(("H ψ = E ψ", Hpsi == psi.scale(E)))

    up = c_up.apply(psi)
    comm_up = H.apply(up) - c_up.apply(Hpsi)
    out.append((f"[H, c†] = {lam} c†", comm_up == up.scale(lam)))

    down = c_down.apply(psi)
    comm_down = H.apply(down) - c_down.apply(Hpsi)
    out.append((f"[H, c] = -{lam} c", comm_down == down.scale(-lam)))

    cdc = c_up.apply(down)
    ccd = c_down.apply(up)
    out.append(("c†c = Q(H)", cdc == psi.scale(Q(E))))
    out.append(("cc† = Q(H+λ)", ccd == psi.scale(Q(E + lam))))
    out.append(("[c, c†] = Q(H+λ) - Q(H)", (ccd - cdc) == psi.scale(Q(E + lam) - Q(E))))
    return out


def unirrep_partition(m: int, nu_max: int) -> list[list[int]]:
    """Split the bound states into the ``m + 1`` chains closed under ``c†``."""
    require_even_m(m)
    chains = []
    for i in [-m - 1] + list(range(1, m + 1)):
        chain = []
        nu = i
        while nu <= nu_max:
            chain.append(nu)
            nu = raise_target(m, nu)
        chains.append(chain)
    return chains


__all__ = [
    "OperatorChain",
    "PHASpec",
    "build_ladder",
    "pha_Q",
    "raise_target",
    "raising_ratio",
    "ladder_coefficient_squared",
    "closed_form_coefficient_squared",
    "kernel_check",
    "lowering_target",
    "verify_pha",
    "pha_checks",
    "unirrep_partition",
]
