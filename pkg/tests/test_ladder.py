import math
from fractions import Fraction

import pytest

from eop_lab.errors import DomainError
from eop_lab.exact_poly import ExactPoly
from eop_lab.ladder import (
    build_ladder,
    closed_form_coefficient_squared,
    kernel_check,
    ladder_coefficient_squared,
    lowering_target,
    pha_Q,
    raise_target,
    raising_ratio,
    unirrep_partition,
    verify_pha,
)
from eop_lab.wavefunctions import valid_nus

# (m, nu) -> (C^2, sign), frozen from exact evaluation and the product formula
COEFFS = {
    (2, -3): (48, 1),
    (2, 0): (96, -1),
    (2, 1): (336, -1),
    (2, 2): (768, -1),
    (2, 5): (3696, -1),
    (4, -5): (3840, 1),
}


def test_ladder_orders_and_shifts():
    up, down = build_ladder(2)
    assert up.order == down.order == 3
    assert up.shift == 6 and down.shift == -6
    up4, down4 = build_ladder(4)
    assert up4.order == 5 and up4.shift == 10
    assert str(up) == "A·Â1†·Â2†"
    assert str(down) == "Â2·Â1·A†"
    assert up.adjoint() == down


def test_pha_polynomial_m2():
    Q = pha_Q(2)
    assert Q.Q == ExactPoly([0, 80, -18, 1])
    assert Q(6) == 48
    assert Q(8) == 0
    assert Q.Q.degree == 3
    assert Q.lam == 6


@pytest.mark.parametrize("key", sorted(COEFFS))
def test_coefficients_frozen(key):
    assert ladder_coefficient_squared(*key) == (Fraction(COEFFS[key][0]), COEFFS[key][1])


@pytest.mark.parametrize("m", [2, 4, 6])
def test_coefficients_match_product_formula(m):
    for nu in valid_nus(m, 2 * m + 3):
        assert ladder_coefficient_squared(m, nu) == closed_form_coefficient_squared(m, nu)


@pytest.mark.parametrize("m", [2, 4])
def test_coefficient_squared_is_Q_at_target(m):
    # c c† psi_nu = Q(E_nu + λ) psi_nu and ||c† psi||^2 = <psi, c c† psi>
    Q = pha_Q(m)
    for nu in valid_nus(m, 8):
        c2, _ = ladder_coefficient_squared(m, nu)
        assert c2 == Q(2 * (nu + m + 1) + 2 * m + 2)


def test_ground_coefficient_is_factorial_formula():
    for m in (2, 4, 6):
        c2, sign = ladder_coefficient_squared(m, -m - 1)
        assert c2 == 2 ** (m + 1) * math.factorial(m + 1) and sign == 1


def test_raising_targets():
    assert raise_target(2, -3) == 0
    assert raise_target(2, 1) == 4
    assert raising_ratio(2, -3) != 0


@pytest.mark.parametrize("m", [2, 4])
def test_kernel_is_exactly_the_chain_bottoms(m):
    kernel = [nu for nu in valid_nus(m, 3 * (m + 1)) if kernel_check(m, nu)]
    assert kernel == [-m - 1] + list(range(1, m + 1))


def test_kernel_examples():
    assert kernel_check(2, -3)
    assert kernel_check(2, 2)
    assert not kernel_check(2, 0)


def test_lowering_targets():
    assert lowering_target(2, 0) == -3
    assert lowering_target(2, 5) == 2
    assert lowering_target(2, 1) is None


def test_invalid_states_rejected():
    with pytest.raises(DomainError):
        ladder_coefficient_squared(2, -1)
    with pytest.raises(DomainError):
        kernel_check(3, 0)


@pytest.mark.parametrize("m,nu_max", [(2, 8), (4, 10), (2, None), (4, None)])
def test_pha_relations(m, nu_max):
    report = verify_pha(m, nu_max)
    assert report.passed, report.failures[:3]


def test_pha_needs_enough_states():
    with pytest.raises(DomainError):
        verify_pha(2, 2)


def test_number_operator_on_first_excited_state():
    up, down = build_ladder(2)
    from eop_lab.wavefunctions import MINUS, eigenstate_prefactor

    psi = eigenstate_prefactor(2, MINUS, 0)
    assert up.apply(down.apply(psi)) == psi.scale(48)


def test_unirrep_partition_m2():
    chains = unirrep_partition(2, 8)
    assert chains == [[-3, 0, 3, 6], [1, 4, 7], [2, 5, 8]]
    assert sorted(nu for c in chains for nu in c) == valid_nus(2, 8)
