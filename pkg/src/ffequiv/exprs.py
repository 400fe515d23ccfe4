"""Parsing and canonical rendering of polynomial expressions.

The accepted language covers polynomials in T (t_poly mode), polynomials
in y with T-polynomial coefficients (y_poly mode), and twisted polynomials
in tau (twisted mode).  One grammar serves all modes:

    expr   := term (("+"|"-") term)*
    term   := factor ("*" factor)*
    factor := atom ("^" nat)?
    atom   := nat | symbol | "(" expr ")" | "-" atom

Whitespace is ignored, "*" is mandatory (no implicit multiplication), and
exponents are literal non-negative integers.  In twisted mode each term
must have the shape coefficient * tau^i with the tau power as the trailing
factor; anything that would need the commutation rule to normalize, such
as "tau*T" or "(tau + T)*T", is rejected instead of silently rewritten.
"""

from __future__ import annotations

from typing import Sequence

from .fields import FieldElement, FiniteField, prime_field
from .poly import Poly
from .twisted import TwistedPoly, YPoly

_SYMBOLS = ("T", "y", "tau", "x")
_MODE_SYMBOLS = {
    "t_poly": ("T",),
    "y_poly": ("T", "y"),
    "twisted": ("T", "tau"),
    "x_poly": ("x",),
}


class ParseError(ValueError):
    """Syntax or symbol error, with the offending position attached."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (position {position})")
        self.position = position


def _tokenize(text: str):
    toks = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(("nat", int(text[i:j]), i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            name = text[i:j]
            if name not in _SYMBOLS:
                raise ParseError(f"unknown symbol '{name}'", i)
            toks.append(("sym", name, i))
            i = j
            continue
        if ch in "+-*^()":
            toks.append((ch, ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character '{ch}'", i)
    toks.append(("end", "", n))
    return toks


class _Parser:
    """Recursive descent over the token stream, producing a plain AST.

    Nodes are tuples (kind, position, *payload) with kinds nat, sym, add,
    sub, mul, pow, neg.  Parentheses only group; they leave no node.
    """

    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def parse(self):
        node = self.expr()
        kind, _, pos = self.peek()
        if kind != "end":
            raise ParseError("trailing input", pos)
        return node

    def expr(self):
        node = self.term()
        while self.peek()[0] in ("+", "-"):
            op, _, pos = self.next()
            rhs = self.term()
            node = ("add" if op == "+" else "sub", pos, node, rhs)
        return node

    def term(self):
        node = self.factor()
        while self.peek()[0] == "*":
            _, _, pos = self.next()
            rhs = self.factor()
            node = ("mul", pos, node, rhs)
        return node

    def factor(self):
        node = self.atom()
        if self.peek()[0] == "^":
            _, _, pos = self.next()
            kind, value, vpos = self.peek()
            if kind != "nat":
                raise ParseError("exponent must be a non-negative integer", vpos)
            self.next()
            node = ("pow", pos, node, value)
        return node

    def atom(self):
        kind, value, pos = self.next()
        if kind == "nat":
            return ("nat", pos, value)
        if kind == "sym":
            return ("sym", pos, value)
        if kind == "-":
            return ("neg", pos, self.atom())
        if kind == "(":
            node = self.expr()
            k2, _, p2 = self.next()
            if k2 != ")":
                raise ParseError("expected ')'", p2)
            return node
        raise ParseError(f"expected a value, found '{value or 'end of input'}'", pos)


def _contains_tau(node) -> bool:
    if node[0] == "sym":
        return node[2] == "tau"
    if node[0] in ("nat",):
        return False
    if node[0] == "pow":
        return _contains_tau(node[2])
    if node[0] == "neg":
        return _contains_tau(node[2])
    return _contains_tau(node[2]) or _contains_tau(node[3])


def _eval_commutative(node, consts, env, mode):
    kind = node[0]
    if kind == "nat":
        return consts(node[2])
    if kind == "sym":
        name = node[2]
        if name not in env:
            raise ParseError(f"symbol '{name}' is not allowed in {mode} mode", node[1])
        return env[name]
    if kind == "add":
        return _eval_commutative(node[2], consts, env, mode) + _eval_commutative(
            node[3], consts, env, mode
        )
    if kind == "sub":
        return _eval_commutative(node[2], consts, env, mode) - _eval_commutative(
            node[3], consts, env, mode
        )
    if kind == "mul":
        return _eval_commutative(node[2], consts, env, mode) * _eval_commutative(
            node[3], consts, env, mode
        )
    if kind == "pow":
        return _eval_commutative(node[2], consts, env, mode) ** node[3]
    if kind == "neg":
        return -_eval_commutative(node[2], consts, env, mode)
    raise AssertionError(f"unhandled node {kind}")


def _flatten_sum(node, sign, out):
    kind = node[0]
    if kind == "add":
        _flatten_sum(node[2], sign, out)
        _flatten_sum(node[3], sign, out)
    elif kind == "sub":
        _flatten_sum(node[2], sign, out)
        _flatten_sum(node[3], -sign, out)
    elif kind == "neg":
        _flatten_sum(node[2], -sign, out)
    else:
        out.append((sign, node))


def _flatten_mul(node, out):
    if node[0] == "mul":
        _flatten_mul(node[2], out)
        _flatten_mul(node[3], out)
    else:
        out.append(node)


def _eval_twisted(node, field: FiniteField) -> TwistedPoly:
    terms = []
    _flatten_sum(node, 1, terms)
    acc: dict[int, Poly] = {}
    t_env = {"T": Poly.x(field)}
    for sign, term in terms:
        factors = []
        _flatten_mul(term, factors)
        coeff = Poly.one(field)
        tau_deg = 0
        for idx, fct in enumerate(factors):
            if not _contains_tau(fct):
                coeff = coeff * _eval_commutative(
                    fct, lambda n: Poly.constant(field, field(n)), t_env, "twisted"
                )
                continue
            if idx != len(factors) - 1:
                raise ParseError("tau power must be the trailing factor of its term", fct[1])
            base, exp = (fct[2], fct[3]) if fct[0] == "pow" else (fct, 1)
            negs = 0
            while base[0] == "neg":
                negs += 1
                base = base[2]
            if base[0] != "sym" or base[2] != "tau":
                raise ParseError(
                    "tau may only appear as a plain power, not inside a product "
                    "or parenthesized expression",
                    fct[1],
                )
            tau_deg = exp
            if (negs * exp) % 2:
                sign = -sign
        if sign < 0:
            coeff = -coeff
        acc[tau_deg] = acc.get(tau_deg, Poly.zero(field)) + coeff
    top = max(acc) if acc else 0
    return TwistedPoly(field, [acc.get(i, Poly.zero(field)) for i in range(top + 1)])


def parse(text: str, mode: str, field: FiniteField):
    """Parse text into a Poly, YPoly, or TwistedPoly over the given field.

    mode is one of t_poly, y_poly, twisted.  Integer literals are reduced
    into the field; symbols outside the mode's alphabet are rejected with
    the position where they occur.
    """
    if mode not in _MODE_SYMBOLS:
        raise ValueError(f"unknown parse mode {mode!r}")
    ast = _Parser(text).parse()
    if mode == "twisted":
        return _eval_twisted(ast, field)
    if mode == "t_poly":
        return _eval_commutative(
            ast, lambda n: Poly.constant(field, field(n)), {"T": Poly.x(field)}, mode
        )
    if mode == "x_poly":
        return _eval_commutative(
            ast, lambda n: Poly.constant(field, field(n)), {"x": Poly.x(field)}, mode
        )
    env = {
        "T": YPoly.constant(field, Poly.x(field)),
        "y": YPoly.y(field),
    }
    return _eval_commutative(
        ast, lambda n: YPoly.constant(field, Poly.constant(field, field(n))), env, mode
    )


def parse_modulus(text: str, p: int) -> list[int]:
    """Parse a polynomial in x over F_p and return its integer coefficients."""
    poly = parse(text, "x_poly", prime_field(p))
    return [c.coeffs[0] for c in poly.coeffs]


def parse_element(text: str, field: FiniteField) -> FieldElement:
    """Parse an expression in x as an element of the given field.

    x stands for the field generator; integers embed via the prime subfield.
    """
    ast = _Parser(text).parse()
    env = {"x": field.gen} if field.m > 1 else {}
    return _eval_commutative(ast, field, env, "x_poly")


def _int_monomials(coeffs: Sequence[int], var: str) -> list[str]:
    """Descending monomial strings c*var^e for nonzero integer coefficients."""
    out = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = coeffs[e]
        if c == 0:
            continue
        if e == 0:
            out.append(str(c))
        else:
            v = var if e == 1 else f"{var}^{e}"
            out.append(v if c == 1 else f"{c}*{v}")
    return out


def render_tpoly(poly: Poly, var: str = "T") -> str:
    """Canonical rendering of a polynomial over a prime field."""
    if poly.field.m != 1:
        raise ValueError("render_tpoly requires a prime base field")
    parts = _int_monomials([c.coeffs[0] for c in poly.coeffs], var)
    return " + ".join(parts) if parts else "0"


def _graded_render(coeffs, outer: str, monomials, is_one) -> str:
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        terms = monomials(c)
        if not terms:
            continue
        if k == 0:
            parts.extend(terms)
            continue
        ov = outer if k == 1 else f"{outer}^{k}"
        if is_one(c):
            parts.append(ov)
        elif len(terms) == 1:
            parts.append(f"{terms[0]}*{ov}")
        else:
            parts.append(f"({' + '.join(terms)})*{ov}")
    return " + ".join(parts) if parts else "0"


def render_ypoly(poly: YPoly) -> str:
    """Canonical rendering with T-polynomial coefficients, e.g. y^8 + T*y^2 + T."""
    if poly.field.m != 1:
        raise ValueError("render_ypoly requires a prime base field")
    return _graded_render(
        poly.coeffs,
        "y",
        lambda c: _int_monomials([e.coeffs[0] for e in c.coeffs], "T"),
        lambda c: c.is_one,
    )


def render_twisted(poly: TwistedPoly) -> str:
    """Canonical rendering in tau, e.g. tau^2 + T*tau + T."""
    if poly.field.m != 1:
        raise ValueError("render_twisted requires a prime base field")
    return _graded_render(
        poly.coeffs,
        "tau",
        lambda c: _int_monomials([e.coeffs[0] for e in c.coeffs], "T"),
        lambda c: c.is_one,
    )


def render_residue_poly(poly: Poly, var: str = "y") -> str:
    """Render a polynomial whose coefficients live in a residue field F_p[T]/(P).

    Field elements are written as polynomials in T; a degree-1 modulus
    collapses them to plain integers.
    """
    f = poly.field
    return _graded_render(
        poly.coeffs,
        var,
        lambda c: _int_monomials(c.coeffs, "T"),
        lambda c: c == f.one,
    )
