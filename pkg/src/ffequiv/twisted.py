"""The twisted polynomial ring F_q[T]<tau> and Drinfeld modules over it.

tau does not commute with coefficients: tau * a = a^q * tau, so the product
law reads (a*tau^i)(b*tau^j) = a*b^{q^i}*tau^{i+j}.  Raising b in F_q[T] to
the power q^i is exponent spreading, since the coefficients are fixed by the
Frobenius map.  A Drinfeld module is determined by the image of T, a twisted
polynomial of positive tau-degree with constant coefficient exactly T; its
torsion operators flatten to ordinary polynomials in y via tau^i -> y^{q^i}.
"""

from __future__ import annotations

from typing import Iterable

from .fields import FieldElement, FiniteField
from .poly import Poly


def _frob_power(b: Poly, i: int) -> Poly:
    """b^(q^i) in F_q[T]: coefficient c_j is Frobenius-fixed, so it just
    moves to position j*q^i."""
    if i == 0 or b.degree < 1:
        return b
    step = b.field.q**i
    out = [b.field.zero] * (b.degree * step + 1)
    for j, c in enumerate(b.coeffs):
        if not c.is_zero:
            out[j * step] = c
    return Poly(b.field, out)


class TwistedPoly:
    """Sum a_i * tau^i with a_i in F_q[T]; coefficients indexed by tau-degree,
    trailing zeros trimmed."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FiniteField, coeffs: Iterable[Poly] = ()):
        cs = list(coeffs)
        for c in cs:
            if c.field != field:
                raise ValueError("coefficient from a different field")
        while cs and cs[-1].is_zero:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls, field: FiniteField) -> "TwistedPoly":
        return cls(field, ())

    @classmethod
    def one(cls, field: FiniteField) -> "TwistedPoly":
        return cls(field, (Poly.one(field),))

    @classmethod
    def tau(cls, field: FiniteField) -> "TwistedPoly":
        return cls(field, (Poly.zero(field), Poly.one(field)))

    @classmethod
    def constant(cls, field: FiniteField, c: Poly) -> "TwistedPoly":
        return cls(field, (c,))

    @property
    def degree(self) -> int:
        """tau-degree; -1 for the zero element."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> Poly:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Poly.zero(self.field)

    def _check(self, other: "TwistedPoly"):
        if self.field != other.field:
            raise ValueError("field mismatch in twisted arithmetic")

    def __eq__(self, other):
        if not isinstance(other, TwistedPoly):
            return NotImplemented
        return self.coeffs == other.coeffs and self.field == other.field

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __add__(self, other):
        if not isinstance(other, TwistedPoly):
            return NotImplemented
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return TwistedPoly(self.field, out)

    def __sub__(self, other):
        if not isinstance(other, TwistedPoly):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return TwistedPoly(self.field, [-c for c in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, TwistedPoly):
            return NotImplemented
        self._check(other)
        if self.is_zero or other.is_zero:
            return TwistedPoly.zero(self.field)
        out = [Poly.zero(self.field)] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero:
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero:
                    out[i + j] = out[i + j] + a * _frob_power(b, i)
        return TwistedPoly(self.field, out)

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result = TwistedPoly.one(self.field)
        for _ in range(e):
            result = result * self
        return result

    def __repr__(self):
        if self.is_zero:
            return "TwistedPoly(0)"
        return f"TwistedPoly[{', '.join(repr(c) for c in self.coeffs)}]"


class YPoly:
    """Polynomial in y with coefficients in F_q[T]; commutative, used for
    torsion polynomials and their reductions."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FiniteField, coeffs: Iterable[Poly] = ()):
        cs = list(coeffs)
        for c in cs:
            if c.field != field:
                raise ValueError("coefficient from a different field")
        while cs and cs[-1].is_zero:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls, field: FiniteField) -> "YPoly":
        return cls(field, ())

    @classmethod
    def one(cls, field: FiniteField) -> "YPoly":
        return cls(field, (Poly.one(field),))

    @classmethod
    def y(cls, field: FiniteField) -> "YPoly":
        return cls(field, (Poly.zero(field), Poly.one(field)))

    @classmethod
    def constant(cls, field: FiniteField, c: Poly) -> "YPoly":
        return cls(field, (c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Poly:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, k: int) -> Poly:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Poly.zero(self.field)

    def _check(self, other: "YPoly"):
        if self.field != other.field:
            raise ValueError("field mismatch")

    def __eq__(self, other):
        if not isinstance(other, YPoly):
            return NotImplemented
        return self.coeffs == other.coeffs and self.field == other.field

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __add__(self, other):
        if not isinstance(other, YPoly):
            return NotImplemented
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return YPoly(self.field, out)

    def __sub__(self, other):
        if not isinstance(other, YPoly):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return YPoly(self.field, [-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, Poly):
            return self.scale(other)
        if not isinstance(other, YPoly):
            return NotImplemented
        self._check(other)
        if self.is_zero or other.is_zero:
            return YPoly.zero(self.field)
        out = [Poly.zero(self.field)] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero:
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero:
                    out[i + j] = out[i + j] + a * b
        return YPoly(self.field, out)

    def scale(self, c: Poly) -> "YPoly":
        if c.field != self.field:
            raise ValueError("scalar from a different field")
        return YPoly(self.field, [a * c for a in self.coeffs])

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result = YPoly.one(self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def derivative(self) -> "YPoly":
        f = self.field
        return YPoly(f, [self.coeffs[i] * f(i) for i in range(1, len(self.coeffs))])

    def __repr__(self):
        return f"YPoly[{', '.join(repr(c) for c in self.coeffs)}]"


class DrinfeldModule:
    """Determined by the image of T: positive tau-degree, constant
    coefficient exactly T."""

    __slots__ = ("field", "image_of_T")

    def __init__(self, image_of_T: TwistedPoly):
        if image_of_T.degree < 1:
            raise ValueError("image of T must have positive tau-degree")
        if image_of_T.coeff(0) != Poly.x(image_of_T.field):
            raise ValueError("a_0 must equal T")
        self.field = image_of_T.field
        self.image_of_T = image_of_T

    @property
    def rank(self) -> int:
        return self.image_of_T.degree

    def __repr__(self):
        return f"DrinfeldModule(rank={self.rank}, q={self.field.q})"


def carlitz(field: FiniteField) -> DrinfeldModule:
    """The rank-1 module sending T to tau + T."""
    return DrinfeldModule(TwistedPoly(field, (Poly.x(field), Poly.one(field))))


def rho_eval(rho: DrinfeldModule, u: Poly) -> TwistedPoly:
    """The operator rho_u, by Horner evaluation of u at the image of T.
    Constant coefficients commute with everything (they are Frobenius-fixed),
    so the evaluation order is immaterial."""
    if u.field != rho.field:
        raise ValueError("field mismatch")
    f = rho.field
    acc = TwistedPoly.zero(f)
    for c in reversed(u.coeffs):
        acc = acc * rho.image_of_T + TwistedPoly.constant(f, Poly.constant(f, c))
    return acc


def torsion_polynomial(rho: DrinfeldModule, a: Poly, strip_trivial_root: bool = False) -> YPoly:
    """The polynomial in y whose roots are the a-torsion points: tau^i maps
    to y^{q^i}.  With strip_trivial_root the known root y = 0 is divided out
    once, lowering the degree from q^{r*deg a} to q^{r*deg a} - 1 and leaving
    constant term a(T)."""
    if a.degree < 1:
        raise ValueError("torsion requires a nonconstant polynomial")
    op = rho_eval(rho, a)
    f = rho.field
    q = f.q
    coeffs = [Poly.zero(f)] * (q**op.degree + 1)
    for i, b in enumerate(op.coeffs):
        coeffs[q**i] = b
    if strip_trivial_root:
        assert coeffs[0].is_zero, "additive operator has no constant term"
        coeffs = coeffs[1:]
    return YPoly(f, coeffs)
