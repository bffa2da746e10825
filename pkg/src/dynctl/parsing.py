"""Expression grammar for maps and families.

Rational expressions in x with integer literals, the parameter symbols
t, r, s, f, the operators + - * / ^ (integer exponents), and parentheses.
Parse -> print -> parse is a fixed point on the canonical form.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from .errors import NotRationalError, ParseError
from .families import FamilySpec
from .maps import RationalMapQ, make_map
from .polynomials import IntPoly

ALL_VARS = ("x", "t", "r", "s", "f")

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([xtrsf])|(\*\*|[-+*/^()]))")


@dataclass(frozen=True)
class _Token:
    kind: str  # "int" | "sym" | "op"
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            while pos < len(text) and text[pos].isspace():
                pos += 1
            if pos == len(text):
                break
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        if m.group(1) is not None:
            out.append(_Token("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            out.append(_Token("sym", m.group(2), m.start(2)))
        else:
            op = "^" if m.group(3) == "**" else m.group(3)
            out.append(_Token("op", op, m.start(3)))
        pos = m.end()
    return out


class _Rat:
    """Rational expression as a pair of IntPoly over the full variable tuple."""

    __slots__ = ("num", "den")

    def __init__(self, num: IntPoly, den: IntPoly):
        self.num = num
        self.den = den

    @classmethod
    def const(cls, c: int) -> "_Rat":
        return cls(IntPoly.const(c, ALL_VARS), IntPoly.const(1, ALL_VARS))

    @classmethod
    def sym(cls, name: str) -> "_Rat":
        return cls(IntPoly.var(name, ALL_VARS), IntPoly.const(1, ALL_VARS))

    def add(self, other: "_Rat") -> "_Rat":
        return _Rat(self.num * other.den + other.num * self.den, self.den * other.den)

    def sub(self, other: "_Rat") -> "_Rat":
        return _Rat(self.num * other.den - other.num * self.den, self.den * other.den)

    def mul(self, other: "_Rat") -> "_Rat":
        return _Rat(self.num * other.num, self.den * other.den)

    def div(self, other: "_Rat", pos: int) -> "_Rat":
        if other.num.is_zero():
            raise ParseError("division by zero", pos)
        return _Rat(self.num * other.den, self.den * other.num)

    def pow(self, e: int, pos: int) -> "_Rat":
        if e >= 0:
            return _Rat(self.num**e, self.den**e)
        if self.num.is_zero():
            raise ParseError("zero to a negative power", pos)
        return _Rat(self.den ** (-e), self.num ** (-e))

    def as_int(self) -> int | None:
        if self.num.is_const() and self.den.is_const():
            n = self.num.const_value()
            d = self.den.const_value()
            if d != 0 and n % d == 0:
                return n // d
        return None


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> _Token | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self) -> _Token:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of expression", len(self.text))
        self.i += 1
        return tok

    def parse(self) -> _Rat:
        value = self.expr()
        tok = self.peek()
        if tok is not None:
            raise ParseError(f"unexpected {tok.text!r}", tok.pos)
        return value

    def expr(self) -> _Rat:
        tok = self.peek()
        negate = False
        if tok is not None and tok.kind == "op" and tok.text in "+-":
            self.take()
            negate = tok.text == "-"
        value = self.term()
        if negate:
            value = _Rat.const(0).sub(value)
        while True:
            tok = self.peek()
            if tok is None or tok.kind != "op" or tok.text not in "+-":
                return value
            self.take()
            rhs = self.term()
            value = value.add(rhs) if tok.text == "+" else value.sub(rhs)

    def term(self) -> _Rat:
        value = self.power()
        while True:
            tok = self.peek()
            if tok is None or tok.kind != "op" or tok.text not in "*/":
                return value
            self.take()
            rhs = self.power()
            value = value.mul(rhs) if tok.text == "*" else value.div(rhs, tok.pos)

    def power(self) -> _Rat:
        base = self.atom()
        tok = self.peek()
        if tok is not None and tok.kind == "op" and tok.text == "^":
            self.take()
            exp_tok = self.peek()
            exponent = self.atom_exponent()
            value = base.pow(exponent, exp_tok.pos if exp_tok else len(self.text))
            return value
        return base

    def atom_exponent(self) -> int:
        """Exponents must reduce to integer constants; x or a parameter there
        makes the expression non-rational."""
        tok = self.peek()
        pos = tok.pos if tok else len(self.text)
        if tok is not None and tok.kind == "op" and tok.text in "+-":
            self.take()
            sign = -1 if tok.text == "-" else 1
            return sign * self.atom_exponent()
        value = self.atom()
        as_int = value.as_int()
        if as_int is None:
            raise NotRationalError(
                f"exponent at position {pos} is not an integer constant; "
                "only rational functions are accepted"
            )
        return as_int

    def atom(self) -> _Rat:
        tok = self.take()
        if tok.kind == "int":
            return _Rat.const(int(tok.text))
        if tok.kind == "sym":
            return _Rat.sym(tok.text)
        if tok.kind == "op" and tok.text == "(":
            value = self.expr()
            closing = self.take()
            if closing.kind != "op" or closing.text != ")":
                raise ParseError("expected ')'", closing.pos)
            return value
        if tok.kind == "op" and tok.text in "+-":
            inner = self.atom()
            return inner if tok.text == "+" else _Rat.const(0).sub(inner)
        raise ParseError(f"unexpected {tok.text!r}", tok.pos)


@dataclass(frozen=True)
class MapExpression:
    """Parsed rational function in x, possibly with parameter symbols."""

    source: str
    num: IntPoly
    den: IntPoly
    x_degree: int
    params: tuple[str, ...]

    @property
    def arity(self) -> int:
        return len(self.params)

    def is_constant_map(self) -> bool:
        return not self.params

    def _coefficient_polys(self) -> tuple[list[IntPoly], list[IntPoly]]:
        """Ascending x-coefficients of num and den as polynomials in the parameters."""
        param_vars = self.params if self.params else ("t",)
        d = self.x_degree

        def split(poly: IntPoly) -> list[IntPoly]:
            x_idx = ALL_VARS.index("x")
            out: list[dict[tuple[int, ...], int]] = [dict() for _ in range(d + 1)]
            for e, c in poly.terms.items():
                k = e[x_idx]
                rest = tuple(e[ALL_VARS.index(v)] for v in param_vars)
                out[k][rest] = c
            return [IntPoly(param_vars, terms) for terms in out]

        return split(self.num), split(self.den)

    def to_rational_map(self) -> RationalMapQ:
        if self.params:
            raise ValueError(f"expression has parameters {self.params}; use to_family()")
        num, den = self._coefficient_polys()
        return make_map([c.const_value() for c in num], [c.const_value() for c in den])

    def to_family(self, name: str = "") -> FamilySpec:
        if not self.params:
            raise ValueError("expression has no parameters; use to_rational_map()")
        num, den = self._coefficient_polys()
        return FamilySpec(
            param_names=self.params,
            degree=self.x_degree,
            num_coeffs=tuple(num),
            den_coeffs=tuple(den),
            name=name,
        )

    def canonical_text(self) -> str:
        num_s = _poly_text(self.num)
        den_s = _poly_text(self.den)
        if self.den.is_const() and self.den.const_value() == 1:
            return num_s
        return f"({num_s})/({den_s})"


def _poly_text(poly: IntPoly) -> str:
    """Render with explicit * and ^ so the output re-parses in the same grammar."""
    return str(poly)


def parse_map(text: str, enforce_param_sets: bool = True) -> MapExpression:
    """Parse, clear denominators to integers, and canonicalize content and sign.

    enforce_param_sets restricts parameters to the supported family shapes
    (t alone, f alone, or r,s,t); coefficient-level parsing turns it off.
    """
    if not text.strip():
        raise ParseError("empty expression", 0)
    value = _Parser(text).parse()
    num, den = value.num, value.den
    if den.is_zero():
        raise ParseError("denominator is identically zero", 0)
    if num.is_zero():
        num = IntPoly.const(0, ALL_VARS)
        den = IntPoly.const(1, ALL_VARS)
    content = math.gcd(num.content(), den.content())
    if content > 1:
        num = num.exact_div(IntPoly.const(content, ALL_VARS))
        den = den.exact_div(IntPoly.const(content, ALL_VARS))
    lead_poly = num if not num.is_zero() else den
    if lead_poly.terms[max(lead_poly.terms)] < 0:
        num = -num
        den = -den
    x_deg = max(num.degree_in("x"), den.degree_in("x"), 0)
    used = num.used_vars() | den.used_vars()
    if "f" in used and len(used & {"t", "r", "s"}) > 0:
        raise ParseError("f cannot be mixed with t, r, s", 0)
    params = tuple(v for v in ("r", "s", "t", "f") if v in used)
    if enforce_param_sets and params and params not in (("t",), ("f",), ("r", "s", "t")):
        raise ParseError(f"unsupported parameter combination {params}", 0)
    return MapExpression(
        source=text,
        num=num,
        den=den,
        x_degree=x_deg,
        params=params,
    )


_PRESET_RE = re.compile(r"^\s*pell\s*\(\s*(\d+)\s*\)\s*$")


def resolve_map_text(text: str) -> str:
    """Expand preset names into their expression text; anything else passes through."""
    from .families import PRESET_EXPRESSIONS

    stripped = text.strip()
    if stripped in PRESET_EXPRESSIONS:
        return PRESET_EXPRESSIONS[stripped]
    m = _PRESET_RE.match(stripped)
    if m:
        d = int(m.group(1))
        return f"x^4/(x^2 - {d})^2"
    return text


def map_expression_text(m: RationalMapQ) -> str:
    """Human-readable expression for a map; re-parses to the identical map."""
    x = IntPoly.var("x", ALL_VARS)
    num = IntPoly.const(0, ALL_VARS)
    den = IntPoly.const(0, ALL_VARS)
    for i in range(m.degree + 1):
        num = num + x**i * m.numerator.coeffs[i]
        den = den + x**i * m.denominator.coeffs[i]
    if den.is_const() and den.const_value() == 1:
        return str(num)
    return f"({num})/({den})"


def family_from_spec_text(text: str) -> FamilySpec:
    """Load a family from the declarative format:

        arity=1
        d=3
        num=-t, 1, 0, 0
        den=1, 0, 0, 1

    Coefficient entries are expressions in the parameters (same grammar as
    the CLI); num/den list ascending powers of x and must have d+1 entries.
    """
    fields: dict[str, str] = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ParseError(f"expected key=value, got {line!r}", 0)
        key, _, value = line.partition("=")
        fields[key.strip()] = value.strip()
    for key in ("arity", "d", "num", "den"):
        if key not in fields:
            raise ParseError(f"missing field {key!r}", 0)
    arity = int(fields["arity"])
    degree = int(fields["d"])
    if arity not in (1, 3):
        raise ParseError("arity must be 1 or 3", 0)
    params = ("t",) if arity == 1 else ("r", "s", "t")

    def coeff_list(source: str) -> tuple[IntPoly, ...]:
        chunks = [c.strip() for c in source.split(",")]
        if len(chunks) != degree + 1:
            raise ParseError(f"need {degree + 1} coefficients, got {len(chunks)}", 0)
        out = []
        for chunk in chunks:
            e = parse_map(chunk, enforce_param_sets=False)
            if e.x_degree > 0:
                raise ParseError("coefficients cannot involve x", 0)
            if not e.den.is_const():
                raise ParseError("coefficients must be polynomial in the parameters", 0)
            scale = e.den.const_value()
            try:
                poly = e.num.exact_div(IntPoly.const(scale, e.num.vars))
            except ValueError:
                raise ParseError("coefficients must have integer entries", 0) from None
            out.append(poly.restrict_vars(params))
        return tuple(out)

    return FamilySpec(
        param_names=params,
        degree=degree,
        num_coeffs=coeff_list(fields["num"]),
        den_coeffs=coeff_list(fields["den"]),
        name=fields.get("name", ""),
    )
