"""Rational self-maps of P^1 over Q as pairs of integer binary forms.

Evaluation, composition, iteration, Sylvester resultants, cofactor
certificates, polynomial detection, and coefficient height.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .errors import DegenerateMapError, DegreeDropError, SizeBudgetExceededError
from .points import HeightValue, ProjPointQ, log_of_int, normalize
from .polynomials import resultant_from_coeffs, solve_exact

DEFAULT_COEFF_BITS = 10**6


@dataclass(frozen=True)
class BinaryForm:
    """Homogeneous binary form; coeffs[i] is the coefficient of X^i Y^(degree-i)."""

    degree: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.degree + 1:
            raise ValueError("coefficient count must be degree + 1")

    def __call__(self, a: int, b: int) -> int:
        # Horner in a, with powers of b folded in on the way down.
        c = self.coeffs
        val = c[self.degree]
        bpow = 1
        for i in range(self.degree - 1, -1, -1):
            bpow *= b
            val = val * a + c[i] * bpow
        return val

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __mul__(self, other: "BinaryForm") -> "BinaryForm":
        out = [0] * (self.degree + other.degree + 1)
        for i, ci in enumerate(self.coeffs):
            if ci:
                for j, cj in enumerate(other.coeffs):
                    out[i + j] += ci * cj
        return BinaryForm(self.degree + other.degree, tuple(out))

    def __add__(self, other: "BinaryForm") -> "BinaryForm":
        if self.degree != other.degree:
            raise ValueError("cannot add forms of different degrees")
        return BinaryForm(self.degree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, k: int) -> "BinaryForm":
        return BinaryForm(self.degree, tuple(k * c for c in self.coeffs))


def _monomial_form(degree: int, x_exponent: int, c: int = 1) -> BinaryForm:
    coeffs = [0] * (degree + 1)
    coeffs[x_exponent] = c
    return BinaryForm(degree, tuple(coeffs))


@dataclass(frozen=True)
class RationalMapQ:
    """A degree-d rational self-map [F : G] of P^1 with Res(F, G) != 0.

    The stored pair is content-reduced and sign-canonicalized (the first
    nonzero coefficient, scanning numerator then denominator from the leading
    coefficient down, is positive). Constructed via make_map or compose.
    """

    numerator: BinaryForm
    denominator: BinaryForm
    _res: int | None = field(default=None, repr=False, compare=False)

    @property
    def degree(self) -> int:
        return self.numerator.degree

    @property
    def resultant(self) -> int:
        if self._res is None:
            r = resultant_from_coeffs(self.numerator.coeffs, self.denominator.coeffs, self.degree)
            object.__setattr__(self, "_res", r)
        return self._res

    def all_coeffs(self) -> tuple[int, ...]:
        return self.numerator.coeffs + self.denominator.coeffs


def _canonical_pair(num: Sequence[int], den: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Divide out the pair content and fix the sign convention."""
    content = math.gcd(*num, *den)
    if content > 1:
        num = [c // content for c in num]
        den = [c // content for c in den]
    lead = next((c for c in list(num[::-1]) + list(den[::-1]) if c != 0), 0)
    if lead < 0:
        num = [-c for c in num]
        den = [-c for c in den]
    return tuple(num), tuple(den)


def make_map(num_coeffs: Sequence[int], den_coeffs: Sequence[int]) -> RationalMapQ:
    """Build a validated map from ascending coefficient sequences of length d+1."""
    num = [int(c) for c in num_coeffs]
    den = [int(c) for c in den_coeffs]
    if len(num) != len(den):
        raise ValueError("numerator and denominator need the same coefficient count")
    d = len(num) - 1
    if d < 1:
        raise ValueError("map degree must be >= 1")
    if all(c == 0 for c in num) or all(c == 0 for c in den):
        raise DegenerateMapError("a defining form is identically zero")
    if num[d] == 0 and den[d] == 0:
        raise DegreeDropError("both forms are divisible by Y; true degree < declared degree")
    num_t, den_t = _canonical_pair(num, den)
    res = resultant_from_coeffs(num_t, den_t, d)
    if res == 0:
        raise DegenerateMapError("the defining forms share a projective root (Res = 0)")
    return RationalMapQ(BinaryForm(d, num_t), BinaryForm(d, den_t), res)


def resultant(f: BinaryForm, g: BinaryForm) -> int:
    """Resultant of two equal-degree binary forms (2d x 2d exact Sylvester determinant)."""
    if f.degree != g.degree:
        raise ValueError("forms must share a degree (pad with zeros as needed)")
    return resultant_from_coeffs(f.coeffs, g.coeffs, f.degree)


@dataclass(frozen=True)
class CofactorCertificate:
    """Forms of degree d-1 with p1*F + q1*G = R*X^D and p2*F + q2*G = R*Y^D, D = 2d-1."""

    p1: BinaryForm
    q1: BinaryForm
    p2: BinaryForm
    q2: BinaryForm
    r: int
    exponent: int

    def verify(self, m: RationalMapQ) -> bool:
        lhs1 = self.p1 * m.numerator + self.q1 * m.denominator
        lhs2 = self.p2 * m.numerator + self.q2 * m.denominator
        want1 = _monomial_form(self.exponent, self.exponent, self.r)
        want2 = _monomial_form(self.exponent, 0, self.r)
        return lhs1 == want1 and lhs2 == want2

    def max_coefficient(self) -> int:
        return max(abs(c) for form in (self.p1, self.q1, self.p2, self.q2) for c in form.coeffs)


def cofactors(m: RationalMapQ) -> CofactorCertificate:
    """Solve the Sylvester system for the cofactor identities, then re-verify symbolically.

    The right-hand exponent forced by homogeneity is D = 2d-1 (degree d-1
    cofactors against degree d forms); the realized exponent is stored.
    """
    d = m.degree
    big = 2 * d
    f = m.numerator.coeffs
    g = m.denominator.coeffs
    # column i: X^i * F, column d+i: X^i * G, both of degree 2d-1 (2d coefficients).
    matrix = [[0] * big for _ in range(big)]
    for i in range(d):
        for j, c in enumerate(f):
            matrix[i + j][i] = c
        for j, c in enumerate(g):
            matrix[i + j][d + i] = c
    r = m.resultant

    def solve(target_index: int) -> tuple[BinaryForm, BinaryForm]:
        rhs = [0] * big
        rhs[target_index] = r
        sol = solve_exact(matrix, rhs)
        ints = []
        for v in sol:
            if v.denominator != 1:
                raise ArithmeticError("cofactor solution unexpectedly non-integral")
            ints.append(v.numerator)
        return BinaryForm(d - 1, tuple(ints[:d])), BinaryForm(d - 1, tuple(ints[d:]))

    p1, q1 = solve(big - 1)
    p2, q2 = solve(0)
    cert = CofactorCertificate(p1, q1, p2, q2, r, big - 1)
    if not cert.verify(m):
        raise ArithmeticError("cofactor certificate failed symbolic verification")
    return cert


def evaluate(m: RationalMapQ, p: ProjPointQ, max_coord_bits: int | None = None) -> ProjPointQ:
    """Apply the map to a normalized point, exactly.

    The gcd divided out always divides Res(F, G), so for validated maps the
    common factor is found by reducing modulo the (small) resultant instead
    of running a full gcd on enormous coordinates.
    """
    fa = m.numerator(p.a, p.b)
    gb = m.denominator(p.a, p.b)
    r = m._res
    if r is None:
        g = math.gcd(fa, gb)
    elif r in (1, -1):
        g = 1
    else:
        r = abs(r)
        g = math.gcd(r, fa % r)
        if g > 1:
            g = math.gcd(g, gb % g)
    if g > 1:
        fa //= g
        gb //= g
    if gb == 0:
        fa = 1
    elif gb < 0:
        fa, gb = -fa, -gb
    if max_coord_bits is not None:
        if max(abs(fa), abs(gb)).bit_length() > max_coord_bits:
            raise SizeBudgetExceededError(
                f"orbit point outgrew the {max_coord_bits}-bit coordinate budget"
            )
    return ProjPointQ(fa, gb)


def _pair_powers(form: BinaryForm, n: int) -> list[BinaryForm]:
    powers = [BinaryForm(0, (1,))]
    for _ in range(n):
        powers.append(powers[-1] * form)
    return powers


def compose(outer: RationalMapQ, inner: RationalMapQ,
            max_coeff_bits: int = DEFAULT_COEFF_BITS) -> RationalMapQ:
    """outer after inner; degree multiplies, pair stays coprime, content is re-reduced."""
    d_out = outer.degree
    f_pows = _pair_powers(inner.numerator, d_out)
    g_pows = _pair_powers(inner.denominator, d_out)
    deg = d_out * inner.degree
    num = [0] * (deg + 1)
    den = [0] * (deg + 1)
    for i in range(d_out + 1):
        a_i = outer.numerator.coeffs[i]
        b_i = outer.denominator.coeffs[i]
        if a_i == 0 and b_i == 0:
            continue
        prod = f_pows[i] * g_pows[d_out - i]
        for k, c in enumerate(prod.coeffs):
            num[k] += a_i * c
            den[k] += b_i * c
    num_t, den_t = _canonical_pair(num, den)
    worst = max(max(abs(c) for c in num_t), max(abs(c) for c in den_t))
    if worst.bit_length() > max_coeff_bits:
        raise SizeBudgetExceededError(
            f"composed coefficients outgrew the {max_coeff_bits}-bit budget"
        )
    # Composition of valid maps is valid: a common root of the composite forms
    # would push down to a common root of the outer pair.
    return RationalMapQ(BinaryForm(deg, num_t), BinaryForm(deg, den_t), None)


def iterate(m: RationalMapQ, n: int, max_coeff_bits: int = DEFAULT_COEFF_BITS) -> RationalMapQ:
    if n < 1:
        raise ValueError("iterate needs n >= 1")
    out = m
    for _ in range(n - 1):
        out = compose(m, out, max_coeff_bits)
    return out


def is_polynomial(m: RationalMapQ) -> bool:
    """True iff the denominator form is c * Y^d, i.e. the map lies in Q[x] as written."""
    return all(c == 0 for c in m.denominator.coeffs[1:])


def second_iterate_is_polynomial(m: RationalMapQ) -> bool:
    return is_polynomial(iterate(m, 2))


def map_height(m: RationalMapQ) -> HeightValue:
    """Projective height of the (2d+2)-tuple of coefficients: H = max |c|, h = ln H."""
    big = max(abs(c) for c in m.all_coeffs())
    return HeightValue(big, log_of_int(big))


def evaluate_unreduced(m: RationalMapQ, p: ProjPointQ) -> tuple[int, int]:
    """Raw form values (F(a,b), G(a,b)) before normalization; used by oracles."""
    return m.numerator(p.a, p.b), m.denominator(p.a, p.b)


def format_map(m: RationalMapQ) -> str:
    num = ",".join(str(c) for c in m.numerator.coeffs)
    den = ",".join(str(c) for c in m.denominator.coeffs)
    return f"[{num} | {den}]"


def parse_map_coeffs(text: str) -> RationalMapQ:
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise ValueError("expected [a_0,...,a_d | b_0,...,b_d]")
    left, _, right = body[1:-1].partition("|")
    num = [int(c) for c in left.split(",")]
    den = [int(c) for c in right.split(",")]
    return make_map(num, den)


def random_map(rng, degree: int, coeff_bound: int = 9) -> RationalMapQ:
    """A random valid map of the given degree with coefficients in [-bound, bound]."""
    while True:
        num = [rng.randint(-coeff_bound, coeff_bound) for _ in range(degree + 1)]
        den = [rng.randint(-coeff_bound, coeff_bound) for _ in range(degree + 1)]
        try:
            return make_map(num, den)
        except (DegenerateMapError, DegreeDropError):
            continue


def random_coprime_pair(rng, bound: int = 50) -> tuple[int, int]:
    while True:
        a = rng.randint(-bound, bound)
        b = rng.randint(-bound, bound)
        if (a, b) != (0, 0) and math.gcd(a, b) == 1:
            return a, b


def cofactor_certificates_check(seed: int = 0, n_maps: int = 50,
                                n_pairs: int = 100) -> "VerificationReport":
    """Both cofactor identities hold exactly for random maps of degree 2..4,
    and gcd(F(a,b), G(a,b)) divides R on random coprime pairs."""
    import random

    from .reports import CheckResult, VerificationReport

    rng = random.Random(seed)
    identity_bad = 0
    divisor_bad = 0
    for _ in range(n_maps):
        m = random_map(rng, rng.randint(2, 4))
        cert = cofactors(m)
        if not cert.verify(m):
            identity_bad += 1
            continue
        r = abs(cert.r)
        for _ in range(n_pairs):
            a, b = random_coprime_pair(rng)
            g = math.gcd(m.numerator(a, b), m.denominator(a, b))
            if g == 0 or r % g != 0:
                divisor_bad += 1
    return VerificationReport((
        CheckResult("cofactors.identities", identity_bad == 0,
                    f"{n_maps} random maps, {identity_bad} failures"),
        CheckResult("cofactors.gcd_divides_resultant", divisor_bad == 0,
                    f"{n_maps * n_pairs} coprime pairs, {divisor_bad} violations"),
    ))


VERIFICATION_CHECKS = {
    "cofactor_certificates": cofactor_certificates_check,
}
