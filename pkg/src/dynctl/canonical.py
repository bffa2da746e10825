"""Certified canonical heights, explicit per-map transition constants, preperiodicity.

The non-explicit degree-only constant in the classical height estimates is
replaced by constants computed from the cofactor certificate, which is what
makes the returned radii certificates rather than asymptotics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .maps import RationalMapQ, cofactors, evaluate, map_height
from .points import ProjPointQ, enumerate_points, log_of_int

# Reaching radius <= tol costs d^n ~ c/tol iterations, whose coordinates hold
# ~d^n * h(P) bits; the budget is sized for tol = 1e-6 on desk-scale maps.
DEFAULT_HEIGHT_ITER_BITS = 1 << 25


@dataclass(frozen=True)
class TransitionConstants:
    """c_up, c_low with d*h(P) - c_low <= h(phi(P)) <= d*h(P) + c_up for every P."""

    c_up: float
    c_low: float


def transition_constants(m: RationalMapQ) -> TransitionConstants:
    """Explicit one-step height drift bounds.

    Upper: each coordinate of phi(P) is a sum of d+1 monomials, so
    H(phi(P)) <= (d+1) * H(phi) * H(P)^d.

    Lower: with p*F + q*G = R*X^D, R*Y^D and M the largest cofactor
    coefficient, |R| * H(P)^D <= 2d * M * H(P)^(D-d) * max(|F|,|G|)(a,b),
    and the gcd divided out in evaluation divides R, so
    H(phi(P)) >= H(P)^d / (2d * M).
    """
    d = m.degree
    cert = cofactors(m)
    c_up = map_height(m).log + math.log(d + 1)
    c_low = math.log(2 * d) + log_of_int(cert.max_coefficient())
    return TransitionConstants(c_up=c_up, c_low=c_low)


@dataclass(frozen=True)
class CanonicalHeightEstimate:
    """Certified interval: |value - hhat(P)| <= radius."""

    value: float
    radius: float
    iterations_used: int


def _require_degree_two(m: RationalMapQ) -> None:
    if m.degree < 2:
        raise ValueError("canonical heights need a map of degree >= 2")


def canonical_height(m: RationalMapQ, p: ProjPointQ, tol: float,
                     max_coord_bits: int = DEFAULT_HEIGHT_ITER_BITS) -> CanonicalHeightEstimate:
    """Estimate hhat(P) = lim h(phi^n P) / d^n with a certified geometric tail.

    After n steps the tail is bounded by max(c_up, c_low) / (d^n (d-1));
    iteration stops at the first n where that bound is <= tol.
    """
    _require_degree_two(m)
    if tol <= 0:
        raise ValueError("tol must be positive")
    d = m.degree
    tc = transition_constants(m)
    c = max(tc.c_up, tc.c_low)
    n = 0
    scale = d - 1
    while c / (d**n * scale) > tol:
        n += 1
    cur = p
    for _ in range(n):
        cur = evaluate(m, cur, max_coord_bits=max_coord_bits)
    h = log_of_int(max(abs(cur.a), abs(cur.b)))
    return CanonicalHeightEstimate(value=h / d**n, radius=c / (d**n * scale), iterations_used=n)


def is_preperiodic(m: RationalMapQ, p: ProjPointQ) -> bool:
    """Certified preperiodicity decision by cycle detection under a height ceiling.

    Preperiodic points have hhat = 0, so every orbit point satisfies
    h <= c_low/(d-1) <= (c_up + c_low)/(d-1). The orbit either repeats a
    point (preperiodic) or climbs past the ceiling (wandering); either way
    the walk terminates because only finitely many rationals sit below any
    height bound.
    """
    _require_degree_two(m)
    tc = transition_constants(m)
    ceiling = (tc.c_up + tc.c_low) / (m.degree - 1) + 1.0
    seen = {p}
    cur = p
    while True:
        if log_of_int(max(abs(cur.a), abs(cur.b))) > ceiling:
            return False
        cur = evaluate(m, cur)
        if cur in seen:
            return True
        seen.add(cur)


@dataclass(frozen=True)
class HhatMinReport:
    """Empirical minimum of hhat over wandering points of height <= bound.

    Empirical over H <= bound only; never a claim about the true infimum.
    value is the certified lower end (estimate - radius), floored at 0.
    """

    bound: int
    tol: float
    value: float | None
    witness: ProjPointQ | None


def hhat_min_empirical(m: RationalMapQ, bound: int, tol: float) -> HhatMinReport:
    """Sweep H(P) <= bound, skip preperiodic points, take the smallest certified value."""
    _require_degree_two(m)
    best: float | None = None
    witness: ProjPointQ | None = None
    for p in enumerate_points(bound):
        if is_preperiodic(m, p):
            continue
        est = canonical_height(m, p, tol)
        low = max(0.0, est.value - est.radius)
        if best is None or low < best:
            best = low
            witness = p
    return HhatMinReport(bound=bound, tol=tol, value=best, witness=witness)


def transition_constants_check(bound: int = 30):
    """Brute-force validation of the one-step drift bounds for two reference maps."""
    from .maps import make_map
    from .reports import CheckResult, VerificationReport

    targets = {
        "x^2": make_map([0, 0, 1], [1, 0, 0]),
        "pell_D2": make_map([0, 0, 0, 0, 1], [4, 0, -2, 0, 1]),
    }
    checks = []
    for label, m in targets.items():
        tc = transition_constants(m)
        d = m.degree
        bad = 0
        for p in enumerate_points(bound):
            h = log_of_int(max(abs(p.a), abs(p.b)))
            img = evaluate(m, p)
            h_img = log_of_int(max(abs(img.a), abs(img.b)))
            if not (d * h - tc.c_low - 1e-9 <= h_img <= d * h + tc.c_up + 1e-9):
                bad += 1
        checks.append(CheckResult(f"transition_constants[{label}]", bad == 0,
                                  f"all H <= {bound}, {bad} violations"))
    return VerificationReport(tuple(checks))


VERIFICATION_CHECKS = {
    "transition_constants_sweep": transition_constants_check,
}
