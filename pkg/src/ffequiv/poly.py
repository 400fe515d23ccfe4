"""Univariate polynomial arithmetic over a finite field.

Covers ring operations, gcd, irreducibility testing (Rabin), complete
factorization (squarefree / distinct-degree / equal-degree), and enumeration
of monic irreducibles.  Instantiated over F_q with the variable read as T,
this ring is A = F_q[T]; instantiated over a residue field with variable y it
is where reductions get factored.
"""

from __future__ import annotations

import itertools
import random
import sys
from array import array
from dataclasses import dataclass
from typing import Iterable, Sequence

from .fields import FieldElement, FiniteField


class Poly:
    """Dense polynomial; coeffs low degree first, trailing zeros trimmed.

    The zero polynomial is the empty coefficient tuple and reports the
    sentinel degree -1.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FiniteField, coeffs: Iterable[FieldElement] = ()):
        cs = list(coeffs)
        while cs and cs[-1].is_zero:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls, field: FiniteField) -> "Poly":
        return cls(field, ())

    @classmethod
    def one(cls, field: FiniteField) -> "Poly":
        return cls(field, (field.one,))

    @classmethod
    def x(cls, field: FiniteField) -> "Poly":
        """The variable itself."""
        return cls(field, (field.zero, field.one))

    @classmethod
    def constant(cls, field: FiniteField, c: FieldElement) -> "Poly":
        return cls(field, (c,))

    @classmethod
    def from_ints(cls, field: FiniteField, ints: Sequence[int]) -> "Poly":
        """Coefficients given as integers, embedded as constants mod p."""
        return cls(field, [field(v) for v in ints])

    @classmethod
    def from_indices(cls, field: FiniteField, idxs: Sequence[int]) -> "Poly":
        """Coefficients given by their integer encoding in the field."""
        return cls(field, [field.from_index(v) for v in idxs])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0].is_one

    @property
    def leading(self) -> FieldElement:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1].is_one

    def coeff(self, i: int) -> FieldElement:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def _check(self, other: "Poly"):
        if self.field != other.field:
            raise ValueError(f"field mismatch: {self.field!r} vs {other.field!r}")

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs and self.field == other.field

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    def __add__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(self.field, out)

    def __sub__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return Poly(self.field, [-c for c in self.coeffs])

    def scale(self, c: FieldElement) -> "Poly":
        if c.field != self.field:
            raise ValueError("scalar from a different field")
        if c.is_zero:
            return Poly(self.field, ())
        if c.is_one:
            return self
        return Poly(self.field, [a * c for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, FieldElement):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        f = self.field
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly(f, ())
        la, lb = len(a), len(b)
        nza = [i for i, c in enumerate(a) if not c.is_zero]
        nzb = [j for j, c in enumerate(b) if not c.is_zero]
        if (
            f.m == 1
            and len(nza) * len(nzb) > 4096
            and (f.p - 1) ** 2 * min(la, lb) < (1 << 32)
        ):
            prod = _int_convolve([c.coeffs[0] for c in a], [c.coeffs[0] for c in b], f.p)
            return Poly(f, [FieldElement(f, (v,)) for v in prod])
        out = [f.zero] * (la + lb - 1)
        for i in nza:
            ca = a[i]
            for j in nzb:
                out[i + j] = out[i + j] + ca * b[j]
        return Poly(f, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result = Poly.one(self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        f = self.field
        db = other.degree
        if self.degree < db:
            return Poly(f, ()), self
        inv = other.leading.inverse()
        rem = list(self.coeffs)
        bq = other.coeffs
        quot = [f.zero] * (len(rem) - db)
        for k in range(len(rem) - db - 1, -1, -1):
            c = rem[k + db]
            if c.is_zero:
                continue
            qc = c * inv
            quot[k] = qc
            for j, bc in enumerate(bq):
                if not bc.is_zero:
                    rem[k + j] = rem[k + j] - qc * bc
        return Poly(f, quot), Poly(f, rem[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "Poly":
        if self.is_zero:
            raise ValueError("cannot normalize the zero polynomial")
        if self.leading.is_one:
            return self
        return self.scale(self.leading.inverse())

    def __call__(self, x: FieldElement) -> FieldElement:
        if x.field != self.field:
            raise ValueError("evaluation point from a different field")
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Poly":
        f = self.field
        return Poly(f, [f(i) * self.coeffs[i] for i in range(1, len(self.coeffs))])

    def __repr__(self):
        if self.is_zero:
            return "Poly(0)"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c.is_zero:
                continue
            cs = str(c)
            var = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if i == 0:
                parts.append(cs)
            elif c.is_one:
                parts.append(var)
            else:
                parts.append(f"{cs}*{var}" if "+" not in cs else f"({cs})*{var}")
        return "Poly(" + " + ".join(parts) + ")"


_U32_OK = array("I").itemsize == 4


def _int_convolve(a: list[int], b: list[int], p: int) -> list[int]:
    """Exact convolution of small nonnegative sequences via one big-integer
    multiply; each 32-bit slot holds one coefficient, carry-free by the
    caller's bound check."""
    n = len(a) + len(b) - 1
    pa = int.from_bytes(b"".join(c.to_bytes(4, "little") for c in a), "little")
    pb = int.from_bytes(b"".join(c.to_bytes(4, "little") for c in b), "little")
    raw = (pa * pb).to_bytes(4 * (n + 1), "little")
    if _U32_OK:
        slots = array("I")
        slots.frombytes(raw)
        if sys.byteorder != "little":
            slots.byteswap()
        return [slots[i] % p for i in range(n)]
    return [int.from_bytes(raw[4 * i : 4 * i + 4], "little") % p for i in range(n)]


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd; gcd(a, 0) = monic(a).  Both zero is an error."""
    a._check(b)
    if a.is_zero and b.is_zero:
        raise ValueError("gcd(0, 0) is undefined")
    while not b.is_zero:
        a, b = b, a % b
    return a.monic()


def pow_mod(base: Poly, e: int, mod: Poly) -> Poly:
    if e < 0:
        raise ValueError("negative exponent")
    result = Poly.one(base.field)
    base = base % mod
    while e:
        if e & 1:
            result = result * base % mod
        base = base * base % mod
        e >>= 1
    return result


def _prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(f: Poly) -> bool:
    """Rabin's test: f | x^{q^n} - x and gcd(x^{q^{n/l}} - x, f) = 1 for
    every prime l dividing n."""
    n = f.degree
    if n < 1:
        raise ValueError("irreducibility is undefined for constants")
    if n == 1:
        return True
    f = f.monic()
    field = f.field
    q = field.q
    x = Poly.x(field)
    need = {n // l for l in _prime_divisors(n)}
    h = x % f
    for i in range(1, n + 1):
        h = pow_mod(h, q, f)
        if i in need and poly_gcd(h - x, f).degree != 0:
            return False
    return h == x % f


# ---------------------------------------------------------------------------
# factorization

@dataclass(frozen=True)
class Factorization:
    """unit * prod(factor^multiplicity); factors monic irreducible, pairwise
    distinct, sorted by (degree, coefficients from the leading end)."""

    unit: FieldElement
    factors: tuple[tuple[Poly, int], ...]

    def expand(self) -> Poly:
        acc = Poly.constant(self.unit.field, self.unit)
        for p_, e in self.factors:
            acc = acc * p_**e
        return acc

    def degrees(self) -> list[int]:
        """Residue degrees with multiplicity, ascending."""
        return sorted(d for p_, e in self.factors for d in [p_.degree] * e)

    @property
    def max_multiplicity(self) -> int:
        return max((e for _, e in self.factors), default=0)

    def __iter__(self):
        return iter(self.factors)


def _canon_key(p: Poly):
    return (p.degree, tuple(c.index for c in reversed(p.coeffs)))


def _pth_root(g: Poly) -> Poly:
    """p-th root of a polynomial with zero derivative (finite fields are
    perfect, so the root always exists)."""
    field = g.field
    p = field.p
    e = field.p ** (field.m - 1)
    cs = []
    for i, c in enumerate(g.coeffs):
        if i % p == 0:
            cs.append(c**e)
        elif not c.is_zero:
            raise ValueError("not a p-th power")
    return Poly(field, cs)


def _squarefree_parts(f: Poly) -> list[tuple[int, Poly]]:
    """f monic -> [(multiplicity, product of its multiplicity-m irreducible
    factors)], ascending, omitting trivial parts."""
    p = f.field.p
    out: dict[int, Poly] = {}

    def put(mult: int, g: Poly):
        if g.degree > 0:
            out[mult] = out[mult] * g if mult in out else g

    def rec(g: Poly, scale: int):
        dg = g.derivative()
        if dg.is_zero:
            rec(_pth_root(g), scale * p)
            return
        c = poly_gcd(g, dg)
        w = g // c
        i = 1
        while w.degree > 0:
            y = poly_gcd(w, c)
            put(i * scale, w // y)
            w = y
            c = c // y
            i += 1
        if c.degree > 0:
            rec(_pth_root(c), scale * p)

    rec(f, 1)
    return sorted(out.items())


def _distinct_degree(f: Poly) -> list[tuple[int, Poly]]:
    """f monic squarefree -> [(d, product of its degree-d factors)]."""
    field = f.field
    q = field.q
    x = Poly.x(field)
    out = []
    h = x % f
    d = 0
    while f.degree >= 2 * (d + 1):
        d += 1
        h = pow_mod(h, q, f)
        g = poly_gcd(h - x, f)
        if g.degree > 0:
            out.append((d, g))
            f = f // g
            h = h % f
    if f.degree > 0:
        out.append((f.degree, f))
    return out


def _equal_degree(f: Poly, d: int, rng: random.Random) -> list[Poly]:
    """Cantor-Zassenhaus split of a monic squarefree product of degree-d
    irreducibles; trace-map variant in characteristic 2."""
    if f.degree == d:
        return [f]
    field = f.field
    q = field.q
    while True:
        u = Poly.from_indices(field, [rng.randrange(q) for _ in range(f.degree)])
        if u.degree < 1:
            continue
        g = poly_gcd(u, f)
        if g.degree == 0:
            if field.p == 2:
                # absolute trace of u in F_{q^d} = F_2[x]/..., summed Frobenius orbit
                v = u % f
                acc = v
                for _ in range(field.m * d - 1):
                    acc = acc * acc % f
                    v = (v + acc) % f
            else:
                v = pow_mod(u, (q**d - 1) // 2, f) - Poly.one(field)
            if v.is_zero:
                continue
            g = poly_gcd(v, f)
        if 0 < g.degree < f.degree:
            return _equal_degree(g, d, rng) + _equal_degree(f // g, d, rng)


def factor(f: Poly, seed: int = 0) -> Factorization:
    """Complete factorization; deterministic for a given (f, seed)."""
    if f.degree < 1:
        raise ValueError("cannot factor a constant polynomial")
    rng = random.Random(seed)
    unit = f.leading
    found: list[tuple[Poly, int]] = []
    for mult, part in _squarefree_parts(f.monic()):
        for d, prod in _distinct_degree(part):
            if prod.degree == d:
                found.append((prod, mult))
            else:
                found.extend((h, mult) for h in _equal_degree(prod, d, rng))
    found.sort(key=lambda fe: _canon_key(fe[0]))
    return Factorization(unit, tuple(found))


# ---------------------------------------------------------------------------
# enumeration of monic irreducibles

_IRR_DIGITS: dict[tuple[FiniteField, int], list[tuple[int, ...]]] = {}
_TABLES: dict[FiniteField, tuple[list[list[int]], list[list[int]]]] = {}


def _field_tables(field: FiniteField):
    got = _TABLES.get(field)
    if got is None:
        elems = [field.from_index(i) for i in range(field.q)]
        add = [[(a + b).index for b in elems] for a in elems]
        mul = [[(a * b).index for b in elems] for a in elems]
        got = _TABLES[field] = (add, mul)
    return got


def _irr_digits(field: FiniteField, d: int) -> list[tuple[int, ...]]:
    """Digit tuples (c_0..c_{d-1}, leading 1 implied) of the monic
    irreducibles of degree d, by sieving out products of lower-degree monic
    polynomials.  Output sorted leading coefficient first."""
    key = (field, d)
    got = _IRR_DIGITS.get(key)
    if got is not None:
        return got
    q = field.q
    if d == 1:
        res = [(c,) for c in range(q)]
        _IRR_DIGITS[key] = res
        return res
    add, mul = _field_tables(field)
    mark = bytearray(q**d)
    for e in range(1, d // 2 + 1):
        de = d - e
        for u in _irr_digits(field, e):
            if e == 1:
                crow = mul[u[0]]
                cc = u[0]
                for v in itertools.product(range(q), repeat=de):
                    # (x + c) * (v + x^de), leading digit dropped
                    idx = add[v[de - 1]][cc]
                    for j in range(de - 1, 0, -1):
                        idx = idx * q + add[v[j - 1]][crow[v[j]]]
                    idx = idx * q + crow[v[0]]
                    mark[idx] = 1
            else:
                uu = u + (1,)
                for v in itertools.product(range(q), repeat=de):
                    vv = v + (1,)
                    acc = [0] * d
                    for i, ui in enumerate(uu):
                        if ui:
                            mrow = mul[ui]
                            for j, vj in enumerate(vv):
                                if vj:
                                    k = i + j
                                    if k < d:
                                        acc[k] = add[acc[k]][mrow[vj]]
                    idx = 0
                    for c in reversed(acc):
                        idx = idx * q + c
                    mark[idx] = 1
    res = []
    for idx in range(q**d):
        if not mark[idx]:
            ds = []
            t = idx
            for _ in range(d):
                ds.append(t % q)
                t //= q
            res.append(tuple(ds))
    _IRR_DIGITS[key] = res
    return res


def monic_irreducibles(field: FiniteField, d: int) -> list[Poly]:
    """All monic irreducibles of degree exactly d, sorted by coefficients
    from the leading end."""
    if d < 1:
        raise ValueError("degree must be positive")
    return [Poly.from_indices(field, ds + (1,)) for ds in _irr_digits(field, d)]


def random_irreducible(field: FiniteField, d: int, seed: int = 0) -> Poly:
    """Rejection-sample a monic irreducible of degree d; deterministic for a
    given seed."""
    if d < 1:
        raise ValueError("degree must be positive")
    rng = random.Random(seed)
    q = field.q
    while True:
        cand = Poly.from_indices(field, [rng.randrange(q) for _ in range(d)] + [1])
        if is_irreducible(cand):
            return cand
