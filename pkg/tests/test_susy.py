from dataclasses import replace
from fractions import Fraction

import pytest

from eop_lab.errors import DomainError, VerificationError
from eop_lab.exact_poly import X, ExactPoly, RationalFunction
from eop_lab.susy import (
    FirstOrderOperator,
    apply_chain,
    build_hat_chain,
    build_oscillator_hamiltonian,
    build_partner_potential,
    build_superpotential,
    build_supercharges,
    verify_chain_identities,
)
from eop_lab.wavefunctions import MINUS, PLUS, QuasiGaussian, eigenstate_prefactor, energy, valid_nus

x = RationalFunction(X)


def rf(num, den=(1,)):
    return RationalFunction(ExactPoly(num), ExactPoly(den))


def test_superpotential_m2():
    W = build_superpotential(2)
    assert W == rf([0, -5, 0, -2], [1, 0, 2])
    assert W(0) == 0


def test_superpotential_parity_guard():
    with pytest.raises(DomainError):
        build_superpotential(3)


def test_partner_potential_m2():
    V = build_partner_potential(2).potential
    assert V(0) == -10
    # denominator proportional to (2x^2+1)^2
    target = ExactPoly([1, 0, 2]) ** 2
    assert V.den == target.monic()
    # V - (x^2 - 2) decays like x^-2
    coeff, power = (V - x * x + 2).leading_behaviour()
    assert power == -2


def test_hat_chain_m2():
    hats = build_hat_chain(2)
    assert len(hats) == 2
    assert hats[0].W == x - RationalFunction(ExactPoly([1]), X)
    assert hats[1].W == x + RationalFunction(ExactPoly([1]), X) - rf([0, 4], [1, 0, 2])


@pytest.mark.parametrize("m", [2, 4, 6])
def test_every_hat_operator_is_auxiliary_and_singular(m):
    for op in build_hat_chain(m):
        assert op.is_auxiliary
        assert op.has_real_pole
        with pytest.raises(ZeroDivisionError):
            op.W(0)
    A, Ad = build_supercharges(m)
    assert not A.is_auxiliary and not A.has_real_pole
    assert Ad.name == "A†" and Ad.adjoint() == A


def test_operator_examples():
    _, Ad = build_supercharges(2)
    assert Ad.apply(eigenstate_prefactor(2, MINUS, -3)).is_zero()
    gauss = QuasiGaussian(RationalFunction(ExactPoly([1])), -1)
    a = FirstOrderOperator(1, x)
    assert a.apply(gauss).is_zero()
    assert a.adjoint().apply(gauss) == QuasiGaussian(rf([0, 2]), -1)


def test_hamiltonian_examples():
    Hm = build_partner_potential(2)
    g = eigenstate_prefactor(2, MINUS, -3)
    assert Hm.apply(g).is_zero()
    e0 = eigenstate_prefactor(2, MINUS, 0)
    assert Hm.apply(e0) == e0.scale(6)
    Hp = build_oscillator_hamiltonian(2)
    h0 = eigenstate_prefactor(2, PLUS, 0)
    assert Hp.apply(h0) == h0.scale(6)


@pytest.mark.parametrize("m", [2, 4])
def test_eigenvalues_on_both_sides(m):
    Hm, Hp = build_partner_potential(m), build_oscillator_hamiltonian(m)
    for nu in valid_nus(m, 6):
        psi = eigenstate_prefactor(m, MINUS, nu)
        assert Hm.apply(psi) == psi.scale(energy(m, MINUS, nu))
    for nu in range(6):
        psi = eigenstate_prefactor(m, PLUS, nu)
        assert Hp.apply(psi) == psi.scale(energy(m, PLUS, nu))


@pytest.mark.parametrize("m", [2, 4])
def test_supercharges_map_between_partners(m):
    A, Ad = build_supercharges(m)
    for nu in range(5):
        image = A.apply(eigenstate_prefactor(m, PLUS, nu))
        assert image.ratio_to(eigenstate_prefactor(m, MINUS, nu)) not in (None, 0)
        back = Ad.apply(eigenstate_prefactor(m, MINUS, nu))
        assert back.ratio_to(eigenstate_prefactor(m, PLUS, nu)) not in (None, 0)


def test_apply_chain_order():
    a = FirstOrderOperator(1, x, "a")
    b = FirstOrderOperator(1, RationalFunction(ExactPoly([1])), "b")
    f = QuasiGaussian(rf([0, 1]), -1)
    assert apply_chain((a, b), f) == a.apply(b.apply(f))


@pytest.mark.parametrize("m", [2, 4, 6])
def test_chain_identities_hold(m):
    report = verify_chain_identities(m)
    assert report.passed, report.failures[:3]
    assert len(report.checks) > 100
    report.raise_on_failure()


def test_tampered_hat_operator_is_caught():
    hats = list(build_hat_chain(2))
    hats[0] = replace(hats[0], W=hats[0].W + Fraction(1))
    report = verify_chain_identities(2, hat_chain=hats)
    assert not report.passed
    names = {c.identity for c in report.failures}
    assert "Â1†Â1 = Ĥ1" in names
    with pytest.raises(VerificationError) as exc:
        report.raise_on_failure()
    assert exc.value.identity in names
    assert report.to_dict()["passed"] is False
