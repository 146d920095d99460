import math
from fractions import Fraction

import numpy as np
import pytest

from eop_lab.errors import DomainError
from eop_lab.exact_poly import ExactPoly, RationalFunction, pseudo_hermite
from eop_lab.wavefunctions import (
    MINUS,
    PLUS,
    QuasiGaussian,
    eigenstate_prefactor,
    energy,
    gram_matrix,
    norm_squared,
    phi_m,
    quadrature_inner_product,
    valid_nus,
)

SQRT_PI = math.sqrt(math.pi)


def test_prefactor_examples():
    ground = eigenstate_prefactor(2, MINUS, -3)
    assert ground.sigma == -1
    assert ground.pre == RationalFunction(ExactPoly([1]), pseudo_hermite(2))
    assert eigenstate_prefactor(2, MINUS, 0).pre == RationalFunction(ExactPoly([0, -12, 0, -8]), ExactPoly([2, 0, 4]))
    assert eigenstate_prefactor(2, PLUS, 0).pre == RationalFunction(ExactPoly([1]))


def test_norm_examples():
    assert norm_squared(2, MINUS, -3).rational_part == Fraction(1, 8)
    # 2^{ν+1}(ν+m+1)ν! at ν=0, m=2
    assert norm_squared(2, MINUS, 0).rational_part == 6
    assert norm_squared(2, PLUS, 0).rational_part == 1
    assert float(norm_squared(2, PLUS, 0)) == pytest.approx(SQRT_PI, rel=1e-15)


def test_energy_examples():
    assert energy(2, MINUS, -3) == 0
    assert energy(2, MINUS, 0) == 6
    assert energy(4, PLUS, 1) == 12


@pytest.mark.parametrize("nu", [-1, -2, -4])
def test_gap_states_rejected(nu):
    with pytest.raises(DomainError):
        eigenstate_prefactor(2, MINUS, nu)


def test_bad_side_and_parity_rejected():
    with pytest.raises(DomainError):
        eigenstate_prefactor(2, "x", 0)
    with pytest.raises(DomainError):
        norm_squared(3, MINUS, 0)
    with pytest.raises(DomainError):
        eigenstate_prefactor(2, PLUS, -1)


def test_valid_nus():
    assert valid_nus(2, 3) == [-3, 0, 1, 2, 3]


def test_phi_m_grows():
    f = phi_m(2)
    assert f.sigma == 1
    assert f(3.0) > f(1.0) > 0


def test_quadrature_examples():
    g = eigenstate_prefactor(2, MINUS, -3)
    e0 = eigenstate_prefactor(2, MINUS, 0)
    assert quadrature_inner_product(g, g) == pytest.approx(SQRT_PI / 8, abs=1e-10)
    assert abs(quadrature_inner_product(g, e0)) < 1e-10
    one = QuasiGaussian(RationalFunction(ExactPoly([1])), -1)
    assert quadrature_inner_product(one, one) == pytest.approx(SQRT_PI, abs=1e-12)


@pytest.mark.parametrize("m", [2, 4])
def test_exact_norms_match_quadrature(m):
    for nu in valid_nus(m, 8):
        psi = eigenstate_prefactor(m, MINUS, nu)
        exact = float(norm_squared(m, MINUS, nu))
        assert quadrature_inner_product(psi, psi) == pytest.approx(exact, rel=1e-11)
    for nu in range(6):
        psi = eigenstate_prefactor(m, PLUS, nu)
        assert quadrature_inner_product(psi, psi) == pytest.approx(float(norm_squared(m, PLUS, nu)), rel=1e-11)


@pytest.mark.parametrize("m", [2, 4])
def test_gram_matrix_identity(m):
    g = gram_matrix(m, 10)
    assert np.max(np.abs(g - np.eye(10))) < 1e-9


def test_quadrature_rejects_growing_functions():
    with pytest.raises(DomainError):
        quadrature_inner_product(phi_m(2), eigenstate_prefactor(2, MINUS, 0))
    with pytest.raises(DomainError):
        quadrature_inner_product(eigenstate_prefactor(2, MINUS, 0), eigenstate_prefactor(2, MINUS, 0), nodes=0)


def test_quasi_gaussian_algebra():
    a = eigenstate_prefactor(2, MINUS, 0)
    assert (a.scale(3) - a).ratio_to(a) == 2
    assert a.ratio_to(eigenstate_prefactor(2, MINUS, 1)) is None
    with pytest.raises(DomainError):
        a + phi_m(2)
    with pytest.raises(DomainError):
        QuasiGaussian(a.pre, 0)
