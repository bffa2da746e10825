"""Arithmetic over K = F_p(t): polynomial heights, S-integrality, and the
explicit self-map family (f+1) x^d / (x^(d-1) + f) with its check bundle.

Heights use the degree convention (log base q of the multiplicative height),
so every height in this module is an integer.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Sequence

from .errors import DegenerateFamilyError
from .points import is_prime
from .polynomials import resultant_from_coeffs
from .reports import CheckResult, VerificationReport

MAX_PRIME = 97
_PACK_BITS = 64
_PACK_MASK = (1 << _PACK_BITS) - 1


class FFPoly:
    """Dense univariate polynomial over F_p (p prime, p <= 97), exact mod-p arithmetic."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs: Sequence[int]):
        self.p = p
        cs = [c % p for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def const(cls, p: int, c: int) -> "FFPoly":
        return cls(p, (c,))

    @classmethod
    def t_var(cls, p: int) -> "FFPoly":
        return cls(p, (0, 1))

    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (1,)

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def leading(self) -> int:
        if not self.coeffs:
            raise ValueError("the zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def _check(self, other: "FFPoly") -> None:
        if self.p != other.p:
            raise ValueError("mixed characteristics")

    def __add__(self, other: "FFPoly") -> "FFPoly":
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = (out[i] + c) % self.p
        return FFPoly(self.p, out)

    def __neg__(self) -> "FFPoly":
        return FFPoly(self.p, [-c for c in self.coeffs])

    def __sub__(self, other: "FFPoly") -> "FFPoly":
        return self + (-other)

    def __mul__(self, other) -> "FFPoly":
        if isinstance(other, int):
            return FFPoly(self.p, [c * other for c in self.coeffs])
        self._check(other)
        if self.is_zero() or other.is_zero():
            return FFPoly(self.p, ())
        # Kronecker packing: coefficients fit far below 2^64, so one big-int
        # multiply does the convolution.
        a = sum(c << (_PACK_BITS * i) for i, c in enumerate(self.coeffs))
        b = sum(c << (_PACK_BITS * i) for i, c in enumerate(other.coeffs))
        prod = a * b
        out = []
        n = len(self.coeffs) + len(other.coeffs) - 1
        for _ in range(n):
            out.append((prod & _PACK_MASK) % self.p)
            prod >>= _PACK_BITS
        return FFPoly(self.p, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "FFPoly":
        if n < 0:
            raise ValueError("negative power")
        out = FFPoly.const(self.p, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __divmod__(self, other: "FFPoly") -> tuple["FFPoly", "FFPoly"]:
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        p = self.p
        rem = list(self.coeffs)
        dv = other.coeffs
        dd = len(dv) - 1
        inv_lead = pow(dv[-1], p - 2, p)
        quo = [0] * max(len(rem) - dd, 0)
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i] % p
            if c:
                q = c * inv_lead % p
                quo[i - dd] = q
                for j, d in enumerate(dv):
                    rem[i - dd + j] = (rem[i - dd + j] - q * d) % p
        return FFPoly(p, quo), FFPoly(p, rem[:dd])

    def __mod__(self, other: "FFPoly") -> "FFPoly":
        return divmod(self, other)[1]

    def __floordiv__(self, other: "FFPoly") -> "FFPoly":
        return divmod(self, other)[0]

    def exact_div(self, other: "FFPoly") -> "FFPoly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ValueError("not an exact division in F_p[t]")
        return q

    def monic(self) -> "FFPoly":
        if self.is_zero():
            return self
        inv = pow(self.leading(), self.p - 2, self.p)
        return self * inv

    def gcd(self, other: "FFPoly") -> "FFPoly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def __eq__(self, other) -> bool:
        return isinstance(other, FFPoly) and self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __str__(self) -> str:
        return format_ffpoly(self)

    __repr__ = __str__


def format_ffpoly(f: FFPoly) -> str:
    """Serialize as "c0+c1*t+c2*t^2" (zero terms dropped, zero polynomial as "0")."""
    if f.is_zero():
        return "0"
    parts = []
    for i, c in enumerate(f.coeffs):
        if c == 0:
            continue
        if i == 0:
            parts.append(str(c))
        elif i == 1:
            parts.append("t" if c == 1 else f"{c}*t")
        else:
            parts.append(f"t^{i}" if c == 1 else f"{c}*t^{i}")
    return "+".join(parts)


def parse_ffpoly(p: int, text: str) -> FFPoly:
    text = text.replace(" ", "")
    if text == "0":
        return FFPoly(p, ())
    coeffs: dict[int, int] = {}
    for term in text.split("+"):
        if not term:
            raise ValueError("empty term in polynomial literal")
        if "t" not in term:
            coeffs[0] = coeffs.get(0, 0) + int(term)
            continue
        coef_part, _, tail = term.partition("t")
        c = int(coef_part.rstrip("*")) if coef_part else 1
        if tail.startswith("^"):
            e = int(tail[1:])
        elif tail == "":
            e = 1
        else:
            raise ValueError(f"bad term {term!r}")
        coeffs[e] = coeffs.get(e, 0) + c
    out = [0] * (max(coeffs) + 1)
    for e, c in coeffs.items():
        out[e] = c
    return FFPoly(p, out)


def is_irreducible(f: FFPoly) -> bool:
    """Trial division by all monic polynomials up to half the degree."""
    d = f.degree()
    if d < 1:
        return False
    p = f.p
    for k in range(1, d // 2 + 1):
        for lower in itertools.product(range(p), repeat=k):
            g = FFPoly(p, list(lower) + [1])
            if (f % g).is_zero():
                return False
    return True


@dataclass(frozen=True)
class FFRat:
    """Reduced fraction of F_p[t] polynomials; denominator monic and coprime to the numerator."""

    num: FFPoly
    den: FFPoly

    @classmethod
    def make(cls, num: FFPoly, den: FFPoly) -> "FFRat":
        if den.is_zero():
            raise ZeroDivisionError("zero denominator in F_p(t)")
        g = num.gcd(den)
        if not g.is_constant():
            num = num.exact_div(g)
            den = den.exact_div(g)
        inv = pow(den.leading(), den.p - 2, den.p)
        return cls(num * inv, den * inv)

    @classmethod
    def from_poly(cls, f: FFPoly) -> "FFRat":
        return cls(f, FFPoly.const(f.p, 1))

    @classmethod
    def constant(cls, p: int, c: int) -> "FFRat":
        return cls(FFPoly.const(p, c), FFPoly.const(p, 1))

    @property
    def p(self) -> int:
        return self.num.p if not self.num.is_zero() else self.den.p

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_one()

    def height(self) -> int:
        return max(self.num.degree(), self.den.degree(), 0)

    def __add__(self, other: "FFRat") -> "FFRat":
        return FFRat.make(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: "FFRat") -> "FFRat":
        return FFRat.make(self.num * other.den - other.num * self.den, self.den * other.den)

    def __mul__(self, other) -> "FFRat":
        if isinstance(other, int):
            return FFRat.make(self.num * other, self.den)
        return FFRat.make(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other: "FFRat") -> "FFRat":
        if other.is_zero():
            raise ZeroDivisionError("division by zero in F_p(t)")
        return FFRat.make(self.num * other.den, self.den * other.num)

    def __pow__(self, n: int) -> "FFRat":
        if n < 0:
            return FFRat.make(self.den, self.num) ** (-n)
        return FFRat.make(self.num**n, self.den**n)

    def __str__(self) -> str:
        if self.den.is_one():
            return format_ffpoly(self.num)
        return f"({format_ffpoly(self.num)})/({format_ffpoly(self.den)})"


@dataclass(frozen=True)
class FFPointK:
    """A point [z0 : z1] of P^1(F_p(t)): coprime, z1 monic, or z1 = 0 and z0 = 1."""

    z0: FFPoly
    z1: FFPoly


def normalize_ff_point(z0: FFPoly, z1: FFPoly) -> FFPointK:
    if z0.is_zero() and z1.is_zero():
        raise ValueError("[0 : 0] is not a point")
    p = z0.p if not z0.is_zero() else z1.p
    if z1.is_zero():
        return FFPointK(FFPoly.const(p, 1), z1)
    g = z0.gcd(z1)
    if not g.is_constant():
        z0 = z0.exact_div(g)
        z1 = z1.exact_div(g)
    inv = pow(z1.leading(), p - 2, p)
    return FFPointK(z0 * inv, z1 * inv)


def ff_point_from_rat(f: FFRat) -> FFPointK:
    return normalize_ff_point(f.num, f.den)


def ff_infinity(p: int) -> FFPointK:
    return FFPointK(FFPoly.const(p, 1), FFPoly(p, ()))


def ff_height(point: FFPointK) -> int:
    """max(deg z0, deg z1) with nonzero constants contributing degree 0."""
    return max(point.z0.degree(), point.z1.degree(), 0)


def ff_is_s_integral(point: FFPointK, s: Sequence[FFPoly]) -> bool:
    """True iff z1 is nonzero and all its monic irreducible factors lie in S."""
    z1 = point.z1
    if z1.is_zero():
        return False
    for q in s:
        while z1.degree() >= q.degree() and (z1 % q).is_zero():
            z1 = z1.exact_div(q)
    return z1.is_constant()


def validate_s_set(s: Sequence[FFPoly]) -> None:
    for q in s:
        if q.is_zero() or q.leading() != 1 or not is_irreducible(q):
            raise ValueError(f"S members must be monic irreducible; got {q}")


# ---------------------------------------------------------------------------
# Maps over F_p(t)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FFMap:
    """Degree-d self-map of P^1 over F_p(t), stored as cleared coprime forms over F_p[t]."""

    p: int
    degree: int
    num_forms: tuple[FFPoly, ...]
    den_forms: tuple[FFPoly, ...]
    res: FFPoly


def make_ff_map(num_coeffs: Sequence[FFRat], den_coeffs: Sequence[FFRat]) -> FFMap:
    """Clear coefficient denominators, reduce pair content, and validate the resultant."""
    if len(num_coeffs) != len(den_coeffs):
        raise ValueError("coefficient sequences must have equal length")
    d = len(num_coeffs) - 1
    if d < 1:
        raise ValueError("map degree must be >= 1")
    p = num_coeffs[0].p
    common = FFPoly.const(p, 1)
    for c in list(num_coeffs) + list(den_coeffs):
        g = common.gcd(c.den)
        common = common * c.den.exact_div(g)
    nf = [c.num * common.exact_div(c.den) for c in num_coeffs]
    df = [c.num * common.exact_div(c.den) for c in den_coeffs]
    content = FFPoly(p, ())
    for c in nf + df:
        content = content.gcd(c)
    if content.is_zero():
        raise ValueError("zero map")
    if not content.is_constant():
        nf = [c.exact_div(content) for c in nf]
        df = [c.exact_div(content) for c in df]
    res = resultant_from_coeffs(nf, df, d)
    if res.is_zero():
        raise DegenerateFamilyError("the defining forms share a root over F_p(t)-bar (Res = 0)")
    return FFMap(p, d, tuple(nf), tuple(df), res)


def _eval_forms(coeffs: Sequence[FFPoly], z0: FFPoly, z1: FFPoly) -> FFPoly:
    d = len(coeffs) - 1
    val = coeffs[d]
    zpow = FFPoly.const(z0.p if not z0.is_zero() else z1.p, 1)
    for i in range(d - 1, -1, -1):
        zpow = zpow * z1
        val = val * z0 + coeffs[i] * zpow
    return val


def evaluate_ff(m: FFMap, point: FFPointK) -> FFPointK:
    """Apply the map exactly; the gcd divided out divides the resultant, so the
    common factor is located modulo the small resultant polynomial.

    gcd(F(z), G(z)) = gcd(F(z), G(z), Res), so after the division the pair is
    coprime and only the monic rescaling of a full normalization remains.
    """
    fa = _eval_forms(m.num_forms, point.z0, point.z1)
    gb = _eval_forms(m.den_forms, point.z0, point.z1)
    r = m.res
    if not r.is_constant():
        g = r.gcd(fa % r)
        if not g.is_constant():
            g = g.gcd(gb % g)
        if not g.is_constant():
            fa = fa.exact_div(g)
            gb = gb.exact_div(g)
    p = m.p
    if gb.is_zero():
        return FFPointK(FFPoly.const(p, 1), gb)
    inv = pow(gb.leading(), p - 2, p)
    return FFPointK(fa * inv, gb * inv)


# ---------------------------------------------------------------------------
# The explicit family phi(f)(x) = (f+1) x^d / (x^(d-1) + f)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FFFamilyChecks:
    """Bundle of identities verified alongside the family construction."""

    fixed_points_ok: bool
    derivative_matches: bool
    separable: bool
    isotrivial: bool
    second_iterate_degrees_ok: bool
    second_iterate_not_polynomial: bool
    scalar: FFRat
    scalar_matches: bool

    def report(self, label: str = "ff_family") -> VerificationReport:
        return VerificationReport((
            CheckResult(f"{label}.fixed_points", self.fixed_points_ok, "0, 1, infinity fixed"),
            CheckResult(f"{label}.derivative", self.derivative_matches,
                        "formal x-derivative matches the closed form"),
            CheckResult(f"{label}.separable", self.separable, "derivative nonzero"),
            CheckResult(f"{label}.second_iterate_degrees", self.second_iterate_degrees_ok,
                        "numerator degree d^2, denominator degree d^2 - 1"),
            CheckResult(f"{label}.second_iterate_not_polynomial",
                        self.second_iterate_not_polynomial, "reduced denominator nonconstant"),
            CheckResult(f"{label}.second_iterate_scalar", self.scalar_matches,
                        f"direct composition = ({self.scalar}) * displayed pair"),
        ))


# x-polynomials with FFRat coefficients, ascending; small helpers.


def _xp_trim(c: list[FFRat]) -> list[FFRat]:
    while c and c[-1].is_zero():
        c.pop()
    return c


def _xp_add(a: list[FFRat], b: list[FFRat]) -> list[FFRat]:
    p = (a or b)[0].p
    out = []
    for i in range(max(len(a), len(b))):
        x = a[i] if i < len(a) else FFRat.constant(p, 0)
        y = b[i] if i < len(b) else FFRat.constant(p, 0)
        out.append(x + y)
    return _xp_trim(out)


def _xp_mul(a: list[FFRat], b: list[FFRat]) -> list[FFRat]:
    if not a or not b:
        return []
    p = a[0].p
    out = [FFRat.constant(p, 0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return _xp_trim(out)


def _xp_scale(a: list[FFRat], c: FFRat) -> list[FFRat]:
    return _xp_trim([x * c for x in a])


def _xp_deriv(a: list[FFRat]) -> list[FFRat]:
    if len(a) <= 1:
        return []
    return _xp_trim([a[i] * i for i in range(1, len(a))])


def _xp_eq(a: list[FFRat], b: list[FFRat]) -> bool:
    a = _xp_trim(list(a))
    b = _xp_trim(list(b))
    return len(a) == len(b) and all(x == y for x, y in zip(a, b))


def _xp_gcd(a: list[FFRat], b: list[FFRat]) -> list[FFRat]:
    """Monic gcd over the field F_p(t)."""
    a = _xp_trim(list(a))
    b = _xp_trim(list(b))
    while b:
        # long division of a by b
        r = list(a)
        lead_inv = FFRat.constant(b[0].p, 1) / b[-1]
        while len(r) >= len(b) and r:
            q = r[-1] * lead_inv
            shift = len(r) - len(b)
            for j, y in enumerate(b):
                r[shift + j] = r[shift + j] - q * y
            r = _xp_trim(r)
        a, b = b, r
    if a:
        a = _xp_scale(a, FFRat.constant(a[0].p, 1) / a[-1])
    return a


def ff_family_map(d: int, f: FFRat) -> FFMap:
    """Just the family map, without the check bundle (sweeps call this)."""
    if d < 2:
        raise ValueError("family degree must be >= 2")
    p = f.p
    one = FFRat.constant(p, 1)
    zero = FFRat.constant(p, 0)
    if (f + one).is_zero() or f.is_zero():
        raise DegenerateFamilyError("f in {0, -1} degenerates the family (Res = 0)")
    num = [zero] * d + [f + one]
    den = [f] + [zero] * (d - 2) + [one, zero]
    return make_ff_map(num, den)


def ff_family(d: int, f: FFRat) -> tuple[FFMap, FFFamilyChecks]:
    """Build phi(f)(x) = (f+1) x^d / (x^(d-1) + f) with its verification bundle.

    f = -1 and f = 0 are degenerate (the resultant vanishes); the family's own
    isotriviality criterion is the constancy of f.
    """
    m = ff_family_map(d, f)
    p = f.p
    one = FFRat.constant(p, 1)
    zero = FFRat.constant(p, 0)
    num = [zero] * d + [f + one]

    # (i) 0, 1, infinity are fixed.
    fixed = all(
        evaluate_ff(m, pt) == pt
        for pt in (
            normalize_ff_point(FFPoly(p, ()), FFPoly.const(p, 1)),
            normalize_ff_point(FFPoly.const(p, 1), FFPoly.const(p, 1)),
            ff_infinity(p),
        )
    )

    # (ii) formal derivative (N'D - ND') / D^2 against (f+1) x^(d-2) (x^d + d f x) / D^2.
    n_poly = num
    d_poly = [f] + [zero] * (d - 2) + [one]
    deriv_num = _xp_add(_xp_mul(_xp_deriv(n_poly), d_poly),
                        _xp_scale(_xp_mul(n_poly, _xp_deriv(d_poly)), FFRat.constant(p, -1)))
    inner = [zero] * d + [one]            # x^d
    inner[1] = f * d                      # + d f x
    expected = _xp_mul(_xp_mul([zero] * (d - 2) + [f + one], [one]), _xp_trim(inner))
    derivative_matches = _xp_eq(deriv_num, expected)
    separable = bool(_xp_trim(list(deriv_num)))

    # (iv) direct second iterate: degrees, non-polynomiality, scalar vs the displayed pair.
    comp_num, comp_den = _ff_compose_xpolys(n_poly, d_poly, d)
    deg_ok = (len(_xp_trim(list(comp_num))) - 1 == d * d
              and len(_xp_trim(list(comp_den))) - 1 == d * d - 1)
    g = _xp_gcd(comp_num, comp_den)
    not_poly = (len(_xp_trim(list(comp_den))) - 1) - (len(g) - 1) >= 1
    # displayed pair: (f+1) x^(d^2) over (f+1)^(d-1) x^(d(d-1)) (x^(d-1)+f) + f (x^(d-1)+f)^d
    disp_num = [zero] * (d * d) + [f + one]
    xdm1f = [f] + [zero] * (d - 2) + [one]
    term1 = _xp_scale(_xp_mul([zero] * (d * (d - 1)) + [one], xdm1f), (f + one) ** (d - 1))
    term2 = _xp_scale(_xp_pow(xdm1f, d), f)
    disp_den = _xp_add(term1, term2)
    scalar = (f + one) ** d
    scalar_matches = (_xp_eq(comp_den, disp_den)
                      and _xp_eq(comp_num, _xp_scale(disp_num, scalar)))

    checks = FFFamilyChecks(
        fixed_points_ok=fixed,
        derivative_matches=derivative_matches,
        separable=separable,
        isotrivial=f.is_constant(),
        second_iterate_degrees_ok=deg_ok,
        second_iterate_not_polynomial=not_poly,
        scalar=scalar,
        scalar_matches=scalar_matches,
    )
    return m, checks


def _xp_pow(a: list[FFRat], n: int) -> list[FFRat]:
    p = a[0].p
    out = [FFRat.constant(p, 1)]
    for _ in range(n):
        out = _xp_mul(out, a)
    return out


def _ff_compose_xpolys(num: list[FFRat], den: list[FFRat], d: int) -> tuple[list[FFRat], list[FFRat]]:
    """Raw composition of the dehomogenized map with itself, as binary-form coefficient lists."""
    p = num[0].p
    zero = FFRat.constant(p, 0)
    n_pad = list(num) + [zero] * (d + 1 - len(num))
    d_pad = list(den) + [zero] * (d + 1 - len(den))
    f_pows = {1: n_pad}
    g_pows = {1: d_pad}
    for k in range(2, d + 1):
        f_pows[k] = _xp_mul(f_pows[k - 1], n_pad)
        g_pows[k] = _xp_mul(g_pows[k - 1], d_pad)
    deg = d * d
    out_num = [zero] * (deg + 1)
    out_den = [zero] * (deg + 1)
    for i in range(d + 1):
        a_i = n_pad[i]
        b_i = d_pad[i]
        if a_i.is_zero() and b_i.is_zero():
            continue
        if i == 0:
            prod = g_pows[d]
        elif i == d:
            prod = f_pows[d]
        else:
            prod = _xp_mul(f_pows[i], g_pows[d - i])
        for k, c in enumerate(prod):
            out_num[k] = out_num[k] + a_i * c
            out_den[k] = out_den[k] + b_i * c
    return out_num, out_den


# ---------------------------------------------------------------------------
# Orbits and the function-field average experiment
# ---------------------------------------------------------------------------

DEFAULT_FF_N_CAP = 16
DEFAULT_FF_HEIGHT_BUDGET = 512  # heights here are degrees; ~5 doubling steps from desk-scale points


@dataclass(frozen=True)
class FFOrbitRecord:
    points: tuple[FFPointK, ...]
    integral_indices: tuple[int, ...]
    cycle_entry: tuple[int, int] | None
    completed: bool


def ff_scan_orbit(m: FFMap, b: FFPointK, s: Sequence[FFPoly],
                  n_cap: int = DEFAULT_FF_N_CAP,
                  height_budget: int = DEFAULT_FF_HEIGHT_BUDGET) -> FFOrbitRecord:
    points = [b]
    seen = {b: 0}
    cycle_entry = None
    completed = False
    while len(points) <= n_cap:
        nxt = evaluate_ff(m, points[-1])
        if nxt in seen:
            cycle_entry = (seen[nxt], len(points) - seen[nxt])
            completed = True
            break
        if ff_height(nxt) > height_budget:
            break
        seen[nxt] = len(points)
        points.append(nxt)
    integral = tuple(i for i, pt in enumerate(points) if ff_is_s_integral(pt, s))
    return FFOrbitRecord(tuple(points), integral, cycle_entry, completed)


def enumerate_ff_elements(p: int, bound: int, include_constants: bool = False) -> list[FFRat]:
    """All reduced u/v in F_p(t) with max(deg u, deg v) <= bound, v monic.

    Ordered deterministically by (height, denominator coeffs, numerator coeffs).
    """
    out = []
    numerators = [FFPoly(p, coeffs) for n in range(bound + 2)
                  for coeffs in itertools.product(range(p), repeat=n)
                  if n == 0 or coeffs[-1] != 0]
    for dv in range(bound + 1):
        for lower in itertools.product(range(p), repeat=dv):
            v = FFPoly(p, list(lower) + [1])
            for u in numerators:
                if u.degree() > bound:
                    continue
                if not u.gcd(v).is_constant():
                    continue
                f = FFRat(u, v)
                if not include_constants and f.is_constant():
                    continue
                out.append(f)
    out.sort(key=lambda f: (f.height(), f.den.coeffs, f.num.coeffs))
    return out


@dataclass(frozen=True)
class FFAvgReport:
    b_values: tuple[int, ...]
    population: tuple[int, ...]
    totals: tuple[int, ...]
    averages: tuple[float, ...]
    truncated_fractions: tuple[float, ...]


def ff_orbit_avg(p: int, d: int, beta_coeffs: Sequence[int], s: Sequence[FFPoly],
                 b_values: Sequence[int], n_cap: int = DEFAULT_FF_N_CAP,
                 height_budget: int = DEFAULT_FF_HEIGHT_BUDGET) -> FFAvgReport:
    """Average S-integral orbit count of beta(f) under phi(f), over non-constant f.

    beta is a polynomial in f given by its integer coefficients mod p; its
    degree must strictly exceed (2d-1)/(d-1). f = -1 and f = 0 never enter
    the population (both are constants).
    """
    if not is_prime(p) or p > MAX_PRIME:
        raise ValueError(f"p must be a prime <= {MAX_PRIME}")
    if d < 2:
        raise ValueError("d must be >= 2")
    beta = [c % p for c in beta_coeffs]
    while beta and beta[-1] == 0:
        beta.pop()
    beta_deg = len(beta) - 1
    if beta_deg * (d - 1) <= 2 * d - 1:
        raise ValueError("beta degree must strictly exceed (2d-1)/(d-1)")
    validate_s_set(s)
    bs = tuple(int(b) for b in b_values)
    if any(b2 <= b1 for b1, b2 in zip(bs, bs[1:])) or bs[0] < 1:
        raise ValueError("b_values must be strictly increasing and >= 1")

    population = [0] * len(bs)
    totals = [0] * len(bs)
    truncated = [0] * len(bs)
    for f in enumerate_ff_elements(p, bs[-1]):
        m = ff_family_map(d, f)
        beta_val = FFRat.constant(p, 0)
        fpow = FFRat.constant(p, 1)
        for c in beta:
            if c:
                beta_val = beta_val + fpow * c
            fpow = fpow * f
        rec = ff_scan_orbit(m, ff_point_from_rat(beta_val), s,
                            n_cap=n_cap, height_budget=height_budget)
        h = f.height()
        for i, b in enumerate(bs):
            if h <= b:
                population[i] += 1
                totals[i] += len(rec.integral_indices)
                truncated[i] += 0 if rec.completed else 1
    return FFAvgReport(
        b_values=bs,
        population=tuple(population),
        totals=tuple(totals),
        averages=tuple(totals[i] / population[i] for i in range(len(bs))),
        truncated_fractions=tuple(truncated[i] / population[i] for i in range(len(bs))),
    )


def ff_family_verification(seed: int = 0) -> VerificationReport:
    """Fixed points for random non-constant f over F_2 and F_3, plus the symbolic
    identity bundle at the transcendental specialization f = t for d = 2, 3."""
    rng = random.Random(seed)
    checks: list[CheckResult] = []
    for p in (2, 3):
        ok = True
        for _ in range(20):
            deg_u = rng.randint(1, 3)
            u = FFPoly(p, [rng.randrange(p) for _ in range(deg_u)] + [rng.randrange(1, p)])
            v = FFPoly(p, [rng.randrange(p) for _ in range(rng.randint(0, 2))] + [1])
            f = FFRat.make(u, v)
            if f.is_constant() or f.is_zero() or (f + FFRat.constant(p, 1)).is_zero():
                f = FFRat.from_poly(FFPoly.t_var(p))
            _m, bundle = ff_family(2, f)
            ok = ok and bundle.fixed_points_ok
        checks.append(CheckResult(f"ff_family.fixed_points_random_f[p={p}]", ok,
                                  "20 random non-constant f, d = 2"))
    for p, d in ((2, 2), (2, 3), (3, 2), (3, 3)):
        f = FFRat.from_poly(FFPoly.t_var(p))
        _m, bundle = ff_family(d, f)
        checks.extend(bundle.report(f"ff_family[p={p},d={d}]").checks)
    return VerificationReport(tuple(checks))


VERIFICATION_CHECKS = {
    "ff_family_checks": ff_family_verification,
}
