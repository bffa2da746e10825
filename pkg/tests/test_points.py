import math

import pytest
from hypothesis import given, strategies as st

from dynctl.errors import BothZeroError, ParseError
from dynctl.points import (EMPTY_S, INFINITY, ProjPointQ, SIntSpec, count_points,
                           enumerate_points, format_point, is_prime, is_s_integral,
                           log_of_int, normalize, parse_point, weil_height)

nonzero_pairs = st.tuples(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6)).filter(
    lambda ab: ab != (0, 0)
)


def test_normalize_examples():
    assert normalize(6, 4) == ProjPointQ(3, 2)
    assert normalize(3, -2) == ProjPointQ(-3, 2)
    assert normalize(5, 0) == ProjPointQ(1, 0)


def test_normalize_both_zero():
    with pytest.raises(BothZeroError):
        normalize(0, 0)


@given(nonzero_pairs)
def test_normalize_idempotent(ab):
    p = normalize(*ab)
    q = normalize(p.a, p.b)
    assert p == q
    assert math.gcd(abs(p.a), abs(p.b)) == 1
    assert p.b > 0 or (p.b == 0 and p.a == 1)


@given(nonzero_pairs, st.integers(-50, 50).filter(lambda k: k != 0))
def test_normalize_scaling_invariance(ab, k):
    a, b = ab
    assert normalize(k * a, k * b) == normalize(a, b)


def test_weil_height_examples():
    h = weil_height(ProjPointQ(3, 2))
    assert h.mult == 3
    assert h.log == pytest.approx(math.log(3))
    assert weil_height(ProjPointQ(0, 1)).mult == 1
    assert weil_height(ProjPointQ(0, 1)).log == 0.0
    assert weil_height(INFINITY).mult == 1


def test_height_one_characterization():
    ones = [p for p in enumerate_points(5) if weil_height(p).mult == 1]
    assert set(ones) == {ProjPointQ(0, 1), ProjPointQ(1, 1), ProjPointQ(-1, 1), INFINITY}


def test_log_of_int_huge():
    n = 3**100000
    assert log_of_int(n) == pytest.approx(100000 * math.log(3), rel=1e-12)


def test_s_integrality_examples():
    p = ProjPointQ(3, 2)
    assert is_s_integral(p, SIntSpec([2]))
    assert not is_s_integral(p, EMPTY_S)
    assert not is_s_integral(INFINITY, SIntSpec([2, 3]))


def test_s_integrality_monotone_in_s():
    chain = [EMPTY_S, SIntSpec([2]), SIntSpec([2, 3]), SIntSpec([2, 3, 5])]
    for p in enumerate_points(20):
        flags = [is_s_integral(p, s) for s in chain]
        for a, b in zip(flags, flags[1:]):
            assert (not a) or b  # S subset S' implies integral(S) -> integral(S')


def test_sintspec_rejects_composites():
    with pytest.raises(ValueError):
        SIntSpec([4])
    with pytest.raises(ValueError):
        SIntSpec([1])


def test_is_prime_small():
    assert [n for n in range(2, 30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert is_prime(2**61 - 1)
    assert not is_prime(2**67 - 1)


def test_enumerate_b1_exact_set():
    pts = enumerate_points(1)
    assert set(pts) == {ProjPointQ(0, 1), ProjPointQ(1, 1), ProjPointQ(-1, 1), INFINITY}
    assert len(pts) == 4


def test_enumerate_b2_count_and_new_points():
    pts = set(enumerate_points(2))
    assert len(pts) == 8
    assert pts - set(enumerate_points(1)) == {
        ProjPointQ(2, 1), ProjPointQ(-2, 1), ProjPointQ(1, 2), ProjPointQ(-1, 2)
    }


@pytest.mark.parametrize("bound", [1, 2, 3, 5, 8])
def test_enumerate_nested_and_growing(bound):
    small = set(enumerate_points(bound))
    big = set(enumerate_points(bound + 1))
    assert small < big


def test_enumerate_order_documented():
    pts = enumerate_points(6)
    keys = [(max(abs(p.a), abs(p.b)), p.a, p.b) for p in pts]
    assert keys == sorted(keys)
    assert len(set(pts)) == len(pts)


def test_count_matches_enumeration():
    assert count_points(30) == len(enumerate_points(30))


def test_point_count_ratio_converges():
    r500 = count_points(500) / 500**2
    r1000 = count_points(1000) / 1000**2
    assert abs(r1000 - r500) / r500 < 0.02


def test_serialization_examples():
    assert format_point(ProjPointQ(3, 2)) == "3/2"
    assert format_point(ProjPointQ(-7, 1)) == "-7"
    assert format_point(INFINITY) == "inf"
    assert parse_point("3/2") == ProjPointQ(3, 2)
    assert parse_point("-7") == ProjPointQ(-7, 1)
    assert parse_point("inf") == INFINITY
    assert parse_point("6/4") == ProjPointQ(3, 2)
    with pytest.raises(ParseError):
        parse_point("3/2/1")


@given(nonzero_pairs)
def test_serialization_roundtrip(ab):
    p = normalize(*ab)
    assert parse_point(format_point(p)) == p
