import math
import random

import pytest

from dynctl.errors import DegenerateMapError, DegreeDropError, SizeBudgetExceededError
from dynctl.maps import (BinaryForm, cofactor_certificates_check, cofactors, compose,
                         evaluate, format_map, is_polynomial, iterate, make_map, map_height,
                         parse_map_coeffs, random_coprime_pair, random_map, resultant,
                         second_iterate_is_polynomial)
from dynctl.points import INFINITY, ProjPointQ, normalize

X_SQUARED = make_map([0, 0, 1], [1, 0, 0])
PHI_1 = make_map([-1, 1, 0, 0], [1, 0, 0, 1])  # (x-1)/(x^3+1)
PELL_2 = make_map([0, 0, 0, 0, 1], [4, 0, -4, 0, 1])  # x^4/(x^2-2)^2


def test_make_map_examples():
    assert X_SQUARED.degree == 2
    assert X_SQUARED.resultant == 1
    assert PHI_1.degree == 3
    with pytest.raises(DegenerateMapError):
        make_map([0, 0, 1], [0, 1, 0])  # X^2 and XY share the root [0:1]


def test_make_map_degree_drop():
    with pytest.raises(DegreeDropError):
        make_map([1, 1, 0], [2, 0, 0])


def test_make_map_zero_form():
    with pytest.raises(DegenerateMapError):
        make_map([0, 0, 0], [1, 0, 1])


def test_make_map_scaling_invariance():
    base = make_map([-1, 1, 0, 0], [1, 0, 0, 1])
    for k in (2, -3, 7):
        m = make_map([k * c for c in (-1, 1, 0, 0)], [k * c for c in (1, 0, 0, 1)])
        assert m.numerator == base.numerator
        assert m.denominator == base.denominator


def test_sign_canonicalization():
    m = make_map([1, -1, 0, 0], [-1, 0, 0, -1])  # -(x-1)/-(x^3+1) variants
    lead = next(c for c in m.numerator.coeffs[::-1] + m.denominator.coeffs[::-1] if c)
    assert lead > 0


def test_resultant_examples():
    assert resultant(BinaryForm(2, (0, 0, 1)), BinaryForm(2, (1, 0, 0))) == 1
    f = BinaryForm(2, (-2, 0, 1))
    assert resultant(f, f) == 0


def test_second_iterate_resultant_phi_1():
    it2 = iterate(PHI_1, 2)
    assert it2.degree == 9
    assert it2.resultant == 2**12


def test_cofactors_x_squared():
    cert = cofactors(X_SQUARED)
    assert cert.exponent == 3
    assert cert.r == 1
    assert cert.verify(X_SQUARED)


def test_cofactors_phi_1():
    cert = cofactors(PHI_1)
    assert cert.exponent == 5
    assert cert.verify(PHI_1)


def test_cofactor_gcd_divides_resultant_bruteforce():
    r = abs(PELL_2.resultant)
    for a in range(-50, 51):
        for b in range(-50, 51):
            if (a, b) == (0, 0) or math.gcd(a, b) != 1:
                continue
            g = math.gcd(PELL_2.numerator(a, b), PELL_2.denominator(a, b))
            assert g != 0 and r % g == 0


def test_cofactor_random_sweep():
    report = cofactor_certificates_check(seed=3, n_maps=10, n_pairs=20)
    assert report.ok


def test_evaluate_examples():
    assert evaluate(PELL_2, normalize(3, 2)) == ProjPointQ(81, 1)
    assert evaluate(X_SQUARED, INFINITY) == INFINITY
    assert evaluate(PHI_1, ProjPointQ(1, 1)) == ProjPointQ(0, 1)


def test_evaluate_budget():
    big = ProjPointQ(2**40 + 1, 3)
    with pytest.raises(SizeBudgetExceededError):
        evaluate(PELL_2, big, max_coord_bits=100)


def test_iterate_power_map():
    it = iterate(X_SQUARED, 2)
    assert it.numerator.coeffs == (0, 0, 0, 0, 1)
    assert is_polynomial(it)


@pytest.mark.parametrize("d", [2, 3])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_iterate_degree(d, n):
    rng = random.Random(d * 10 + n)
    m = random_map(rng, d, coeff_bound=3)
    assert iterate(m, n).degree == d**n


def test_evaluate_commutes_with_iterate():
    rng = random.Random(99)
    for _ in range(100):
        m = random_map(rng, rng.randint(2, 4), coeff_bound=5)
        a, b = random_coprime_pair(rng, 20)
        p = normalize(a, b)
        assert evaluate(iterate(m, 2), p) == evaluate(m, evaluate(m, p))


def test_polynomial_detection():
    assert is_polynomial(X_SQUARED)
    assert second_iterate_is_polynomial(X_SQUARED)
    inv_sq = make_map([1, 0, 0], [0, 0, 1])  # 1/x^2
    assert not is_polynomial(inv_sq)
    assert second_iterate_is_polynomial(inv_sq)
    assert not second_iterate_is_polynomial(PHI_1)


def test_polynomial_fixes_infinity():
    rng = random.Random(5)
    for _ in range(20):
        m = random_map(rng, rng.randint(2, 3), coeff_bound=4)
        if is_polynomial(m):
            assert evaluate(m, INFINITY) == INFINITY


def test_map_height():
    assert map_height(X_SQUARED).log == 0.0
    phi_5 = make_map([-5, 1, 0, 0], [1, 0, 0, 1])
    assert map_height(phi_5).mult == 5
    assert map_height(phi_5).log == pytest.approx(math.log(5))
    assert map_height(PELL_2).mult == 4


def test_compose_budget():
    with pytest.raises(SizeBudgetExceededError):
        big = make_map([0, 0, 2**30 - 1], [1, 0, 0])
        compose(big, big, max_coeff_bits=40)


def test_map_serialization_roundtrip():
    text = format_map(PHI_1)
    assert text == "[-1,1,0,0 | 1,0,0,1]"
    again = parse_map_coeffs(text)
    assert again.numerator == PHI_1.numerator
    assert again.denominator == PHI_1.denominator
