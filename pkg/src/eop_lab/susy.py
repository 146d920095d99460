"""Supercharges, partner Hamiltonians and the auxiliary dressing chain.

Operators act on :class:`~eop_lab.wavefunctions.QuasiGaussian` values, so
every identity below is checked as an exact equality of rational
functions. Operator equalities are established on a finite probe family
rather than by normal ordering: two second-order operators that agree on
``{1, x, x^2, x^3} * exp(+-x^2/2)`` have the same coefficient functions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import VerificationError
from .exact_poly import X, ExactPoly, RationalFunction, pseudo_hermite, real_root_count, require_even_m
from .wavefunctions import MINUS, QuasiGaussian, eigenstate_prefactor

_X = RationalFunction(X)


@dataclass(frozen=True)
class FirstOrderOperator:
    """``eps * d/dx + W(x)``."""

    eps: int
    W: RationalFunction
    name: str = ""
    is_auxiliary: bool = False

    def adjoint(self) -> "FirstOrderOperator":
        name = self.name[:-1] if self.name.endswith("†") else self.name + "†"
        return FirstOrderOperator(-self.eps, self.W, name, self.is_auxiliary)

    @property
    def has_real_pole(self) -> bool:
        return real_root_count(self.W.den) > 0

    def apply(self, f: QuasiGaussian) -> QuasiGaussian:
        return apply_operator(self, f)


@dataclass(frozen=True)
class HamiltonianSpec:
    """``-d^2/dx^2 + potential(x) + shift``."""

    potential: RationalFunction
    shift: Fraction = Fraction(0)
    name: str = ""

    def plus(self, c) -> "HamiltonianSpec":
        return HamiltonianSpec(self.potential, self.shift + Fraction(c), self.name)

    @property
    def total_potential(self) -> RationalFunction:
        return self.potential + self.shift

    def apply(self, f: QuasiGaussian) -> QuasiGaussian:
        return apply_hamiltonian(self, f)


def apply_operator(op: FirstOrderOperator, f: QuasiGaussian) -> QuasiGaussian:
    h = f.pre
    if h.is_zero():
        return f
    # (eps d/dx + W)(h e^{s x^2/2}) = (eps h' + eps s x h + W h) e^{s x^2/2}
    out = h.derivative() + _X * h * f.sigma
    if op.eps < 0:
        out = -out
    return QuasiGaussian(out + op.W * h, f.sigma)


def apply_hamiltonian(hspec: HamiltonianSpec, f: QuasiGaussian) -> QuasiGaussian:
    h = f.pre
    if h.is_zero():
        return f
    s = f.sigma
    dh = h.derivative()
    # f'' = (h'' + 2 s x h' + s h + x^2 h) e^{s x^2/2}
    second = dh.derivative() + _X * dh * (2 * s) + h * (RationalFunction(X * X + s))
    return QuasiGaussian(hspec.total_potential * h - second, s)


def _log_derivative(p: ExactPoly) -> RationalFunction:
    return RationalFunction(p.derivative(), p)


def _curvature_term(p: ExactPoly) -> RationalFunction:
    """``p''/p - (p'/p)^2``."""
    d1 = p.derivative()
    return RationalFunction(d1.derivative() * p - d1 * d1, p * p)


@lru_cache(maxsize=None)
def build_superpotential(m: int) -> RationalFunction:
    require_even_m(m)
    return -_X - _log_derivative(pseudo_hermite(m))


@lru_cache(maxsize=None)
def build_supercharges(m: int) -> tuple[FirstOrderOperator, FirstOrderOperator]:
    """``(A, A†)`` intertwining the oscillator with its rational extension."""
    W = build_superpotential(m)
    A = FirstOrderOperator(1, W, "A")
    return A, A.adjoint()


@lru_cache(maxsize=None)
def build_oscillator_hamiltonian(m: int) -> HamiltonianSpec:
    """Oscillator shifted so that its levels are ``2(nu + m + 1)``."""
    require_even_m(m)
    return HamiltonianSpec(RationalFunction(X * X), Fraction(2 * m + 1), "H+")


@lru_cache(maxsize=None)
def build_partner_potential(m: int) -> HamiltonianSpec:
    """Rationally extended partner; ground level sits at exactly 0."""
    require_even_m(m)
    V = _X * _X - 2 * (_curvature_term(pseudo_hermite(m)) + 1)
    return HamiltonianSpec(V, Fraction(2 * m + 1), "H-")


@lru_cache(maxsize=None)
def build_hat_hamiltonian(i: int) -> HamiltonianSpec:
    """Auxiliary Hamiltonian of the chain, indexed from 1."""
    V = _X * _X - 2 * _curvature_term(pseudo_hermite(i - 1))
    return HamiltonianSpec(V, Fraction(-3), f"Ĥ{i}")


def hat_superpotential(i: int) -> RationalFunction:
    return _X + _log_derivative(pseudo_hermite(i - 1)) - _log_derivative(pseudo_hermite(i))


@lru_cache(maxsize=None)
def build_hat_chain(m: int) -> tuple[FirstOrderOperator, ...]:
    """``Â_1 .. Â_m``; all are auxiliary and each has a real pole at the origin."""
    require_even_m(m)
    return tuple(
        FirstOrderOperator(1, hat_superpotential(i), f"Â{i}", is_auxiliary=True)
        for i in range(1, m + 1)
    )


def apply_chain(ops, f: QuasiGaussian) -> QuasiGaussian:
    """Apply an operator product written left to right (rightmost acts first)."""
    for op in reversed(ops):
        f = op.apply(f)
    return f


# -- identity verification --------------------------------------------------


@dataclass
class CheckResult:
    identity: str
    probe: str
    passed: bool

    def to_dict(self):
        return {"identity": self.identity, "probe": self.probe, "passed": self.passed}


@dataclass
class VerificationReport:
    subject: str
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def record(self, identity: str, probe: str, ok: bool) -> None:
        self.checks.append(CheckResult(identity, probe, bool(ok)))

    def raise_on_failure(self) -> None:
        if self.failures:
            first = self.failures[0]
            raise VerificationError(first.identity, first.probe,
                                    f"{len(self.failures)} failing check(s)")

    def to_dict(self):
        return {
            "subject": self.subject,
            "passed": self.passed,
            "n_checks": len(self.checks),
            "failures": [c.to_dict() for c in self.failures],
        }


def probe_family(m: int, nu_max: int = 6) -> list[tuple[str, QuasiGaussian]]:
    probes = []
    for s in (-1, 1):
        for k in range(4):
            probes.append((f"x^{k}·exp({'+' if s > 0 else '-'}x²/2)",
                           QuasiGaussian(RationalFunction(X**k), s)))
    for nu in [-m - 1] + list(range(nu_max + 1)):
        probes.append((f"ψ-_{nu}", eigenstate_prefactor(m, MINUS, nu)))
    return probes


def verify_chain_identities(m: int, hat_chain=None, nu_max: int = 6) -> VerificationReport:
    """Check every factorisation and intertwining relation of the dressing chain.

    ``hat_chain`` may replace the built chain, which is how a tampered
    operator is shown to be caught.
    """
    require_even_m(m)
    hats = tuple(hat_chain) if hat_chain is not None else build_hat_chain(m)
    A, Ad = build_supercharges(m)
    Hp = build_oscillator_hamiltonian(m)
    Hm = build_partner_potential(m)
    Hhat = {i: build_hat_hamiltonian(i) for i in range(1, m + 2)}
    lam = 2 * m + 2
    down = tuple(reversed(hats))                 # Â_m ... Â_1
    up = tuple(h.adjoint() for h in hats)        # Â_1† ... Â_m†
    report = VerificationReport(f"dressing chain m={m}")

    for label, f in probe_family(m, nu_max):
        for i, Ai in enumerate(hats, start=1):
            Aid = Ai.adjoint()
            report.record(f"Â{i}†Â{i} = Ĥ{i}", label,
                          Aid.apply(Ai.apply(f)) == Hhat[i].apply(f))
            report.record(f"Â{i}Â{i}† = Ĥ{i + 1}+2", label,
                          Ai.apply(Aid.apply(f)) == Hhat[i + 1].plus(2).apply(f))
        report.record(f"H+ = Ĥ1+{2 * m + 4}", label, Hp.apply(f) == Hhat[1].plus(2 * m + 4).apply(f))
        report.record(f"H- = Ĥ{m + 1}+{2 * m + 2}", label,
                      Hm.apply(f) == Hhat[m + 1].plus(2 * m + 2).apply(f))
        report.record("H+ = A†A", label, Hp.apply(f) == Ad.apply(A.apply(f)))
        report.record("H- = AA†", label, Hm.apply(f) == A.apply(Ad.apply(f)))
        report.record("AH+ = H-A", label, A.apply(Hp.apply(f)) == Hm.apply(A.apply(f)))
        report.record("A†H- = H+A†", label, Ad.apply(Hm.apply(f)) == Hp.apply(Ad.apply(f)))
        report.record("H+ - H- = V+ - V-", label,
                      Hp.apply(f) - Hm.apply(f)
                      == QuasiGaussian((Hp.total_potential - Hm.total_potential) * f.pre, f.sigma))
        report.record(f"Â_m..Â_1 H+ = (H- + {lam}) Â_m..Â_1", label,
                      apply_chain(down, Hp.apply(f)) == Hm.plus(lam).apply(apply_chain(down, f)))
        report.record(f"H+ Â_1†..Â_m† = Â_1†..Â_m† (H- + {lam})", label,
                      Hp.apply(apply_chain(up, f)) == apply_chain(up, Hm.plus(lam).apply(f)))
    return report


__all__ = [
    "FirstOrderOperator",
    "HamiltonianSpec",
    "apply_operator",
    "apply_hamiltonian",
    "apply_chain",
    "build_superpotential",
    "build_supercharges",
    "build_oscillator_hamiltonian",
    "build_partner_potential",
    "build_hat_hamiltonian",
    "build_hat_chain",
    "hat_superpotential",
    "probe_family",
    "verify_chain_identities",
    "CheckResult",
    "VerificationReport",
]
