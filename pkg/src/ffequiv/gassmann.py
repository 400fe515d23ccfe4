"""Small matrix groups over finite fields and Gassmann-triple certificates.

Everything here is explicit: GL_n(F_q), or its quotient by a scalar subgroup
S, is a sorted tuple of canonical representative matrices with dictionary
membership.  Subgroups are verified closed by exhaustion, the permutation
characters on G/H are computed by counting fixed cosets classwise, and
non-triviality (non-conjugacy of H and H') is decided by trying every
conjugator.  Nothing is sampled except the constructor's closure spot-check.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product as iproduct

from .fields import FieldElement, FiniteField


class MatElem:
    """Invertible n x n matrix over a finite field."""

    __slots__ = ("field", "n", "rows", "_hash")

    def __init__(self, field: FiniteField, rows):
        rows = tuple(tuple(r) for r in rows)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ValueError("rows must form a square matrix")
        for r in rows:
            for e in r:
                if not isinstance(e, FieldElement) or e.field is not field:
                    raise ValueError("entry from a different field")
        self.field = field
        self.n = n
        self.rows = rows
        self._hash = None
        if self.det().is_zero:
            raise ValueError("matrix is singular")

    @classmethod
    def _make(cls, field, n, rows) -> "MatElem":
        # internal fast path: rows already validated, invertibility implied
        m = object.__new__(cls)
        m.field = field
        m.n = n
        m.rows = rows
        m._hash = None
        return m

    @classmethod
    def identity(cls, field: FiniteField, n: int) -> "MatElem":
        one, zero = field.one, field.zero
        rows = tuple(
            tuple(one if i == j else zero for j in range(n)) for i in range(n)
        )
        return cls._make(field, n, rows)

    @classmethod
    def from_ints(cls, field: FiniteField, rows) -> "MatElem":
        return cls(field, [[field(v) for v in r] for r in rows])

    @property
    def key(self) -> tuple:
        return tuple(e.index for r in self.rows for e in r)

    def det(self) -> FieldElement:
        field = self.field
        n = self.n
        m = [list(r) for r in self.rows]
        out = field.one
        for col in range(n):
            piv = None
            for i in range(col, n):
                if not m[i][col].is_zero:
                    piv = i
                    break
            if piv is None:
                return field.zero
            if piv != col:
                m[col], m[piv] = m[piv], m[col]
                out = -out
            p = m[col][col]
            out = out * p
            pinv = p.inverse()
            for i in range(col + 1, n):
                if m[i][col].is_zero:
                    continue
                factor = m[i][col] * pinv
                m[i] = [a - factor * b for a, b in zip(m[i], m[col])]
        return out

    def mul(self, other: "MatElem") -> "MatElem":
        n = self.n
        a, b = self.rows, other.rows
        zero = self.field.zero
        cols = tuple(tuple(b[k][j] for k in range(n)) for j in range(n))
        rows = tuple(
            tuple(sum((ra[k] * cb[k] for k in range(n)), zero) for cb in cols)
            for ra in a
        )
        return MatElem._make(self.field, n, rows)

    def scale(self, s: FieldElement) -> "MatElem":
        rows = tuple(tuple(s * e for e in r) for r in self.rows)
        return MatElem._make(self.field, self.n, rows)

    def inverse(self) -> "MatElem":
        field = self.field
        n = self.n
        one, zero = field.one, field.zero
        m = [
            list(r) + [one if i == j else zero for j in range(n)]
            for i, r in enumerate(self.rows)
        ]
        for col in range(n):
            piv = None
            for i in range(col, n):
                if not m[i][col].is_zero:
                    piv = i
                    break
            if piv is None:
                raise ValueError("matrix is singular")
            m[col], m[piv] = m[piv], m[col]
            pinv = m[col][col].inverse()
            m[col] = [pinv * v for v in m[col]]
            for i in range(n):
                if i == col or m[i][col].is_zero:
                    continue
                factor = m[i][col]
                m[i] = [a - factor * b for a, b in zip(m[i], m[col])]
        rows = tuple(tuple(r[n:]) for r in m)
        return MatElem._make(field, n, rows)

    def __eq__(self, other):
        if not isinstance(other, MatElem):
            return NotImplemented
        return self.field is other.field and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.rows))
        return self._hash

    def render(self) -> str:
        return "[" + ",".join(
            "[" + ",".join(str(e.index) for e in r) + "]" for r in self.rows
        ) + "]"

    def __repr__(self):
        return f"MatElem({self.render()} over {self.field!r})"


def _smallest_generator(field: FiniteField) -> FieldElement:
    target = field.q - 1
    for i in range(1, field.q):
        a = field.from_index(i)
        if a.multiplicative_order() == target:
            return a
    raise AssertionError("multiplicative group has no generator")


class MatGroup:
    """GL_n(F_q), or GL_n(F_q)/S for a scalar subgroup S, fully enumerated.

    Elements are canonical coset representatives: the first nonzero entry in
    row-major order lies in the fixed transversal of S in F_q^x (powers of
    the smallest generator).  mul and inv re-canonicalize, which is the
    quotient group law.
    """

    def __init__(self, field, n, scalar_subgroup, elements, canon_scalar):
        self.field = field
        self.n = n
        self.scalar_subgroup = scalar_subgroup
        self.elements = elements
        self._canon_scalar = canon_scalar
        self.index = {m: i for i, m in enumerate(elements)}
        self._classes = None
        self._inverses = None

    def __len__(self):
        return len(self.elements)

    @property
    def identity(self) -> MatElem:
        return MatElem.identity(self.field, self.n)

    def canon(self, m: MatElem) -> MatElem:
        for r in m.rows:
            for e in r:
                if not e.is_zero:
                    u = self._canon_scalar[e]
                    return m if u is None else m.scale(u)
        raise ValueError("zero matrix cannot be canonicalized")

    def mul(self, a: MatElem, b: MatElem) -> MatElem:
        return self.canon(a.mul(b))

    def inv(self, a: MatElem) -> MatElem:
        return self.canon(a.inverse())

    def inverses(self) -> list[MatElem]:
        if self._inverses is None:
            self._inverses = [self.inv(m) for m in self.elements]
        return self._inverses

    def conjugacy_classes(self):
        if self._classes is None:
            n = len(self.elements)
            invs = self.inverses()
            seen = bytearray(n)
            classes = []
            for i in range(n):
                if seen[i]:
                    continue
                x = self.elements[i]
                members = set()
                for g, ginv in zip(self.elements, invs):
                    y = self.canon(g.mul(x).mul(ginv))
                    members.add(self.index[y])
                for j in members:
                    seen[j] = 1
                classes.append((x, len(members), frozenset(members)))
            self._classes = classes
        return self._classes


def _gl_order(q: int, n: int) -> int:
    out = 1
    qn = q**n
    for i in range(n):
        out *= qn - q**i
    return out


def build_gl(
    n: int,
    field: FiniteField,
    scalar_generator: FieldElement | None = None,
    cap: int = 10**6,
) -> MatGroup:
    """Enumerate GL_n(F_q)/S with S generated by scalar_generator (S={1} if None)."""
    if n < 1:
        raise ValueError("dimension must be at least 1")
    q = field.q
    if scalar_generator is None:
        s_elems = {field.one}
    else:
        if scalar_generator.field is not field:
            raise ValueError("scalar generator from a different field")
        if scalar_generator.is_zero:
            raise ValueError("scalar subgroup generator must be nonzero")
        s_elems = {field.one}
        a = scalar_generator
        while a not in s_elems:
            s_elems.add(a)
            a = a * scalar_generator
    size = _gl_order(q, n) // len(s_elems)
    if size > cap:
        raise ValueError(
            f"enumeration cap exceeded: group order {size} > cap {cap}"
        )
    g0 = _smallest_generator(field)
    dlog = {}
    a = field.one
    for k in range(q - 1):
        dlog[a] = k
        a = a * g0
    s_index = (q - 1) // len(s_elems)
    # multiplier taking a nonzero entry to its transversal representative
    canon_scalar: dict[FieldElement, FieldElement | None] = {}
    for e, k in dlog.items():
        shift = (k % s_index) - k
        u = g0 ** (shift % (q - 1)) if shift else None
        canon_scalar[e] = u
    els = [field.from_index(i) for i in range(q)]
    seen = set()
    out = []
    for idxs in iproduct(range(q), repeat=n * n):
        rows = tuple(
            tuple(els[idxs[i * n + j]] for j in range(n)) for i in range(n)
        )
        m = MatElem._make(field, n, rows)
        if m.det().is_zero:
            continue
        first = next(e for r in rows for e in r if not e.is_zero)
        u = canon_scalar[first]
        if u is not None:
            m = m.scale(u)
        if m in seen:
            continue
        seen.add(m)
        out.append(m)
    if len(out) != size:
        raise AssertionError(
            f"enumeration produced {len(out)} elements, formula says {size}"
        )
    out.sort(key=lambda m: m.key)
    group = MatGroup(field, n, tuple(sorted(s_elems, key=lambda e: e.index)), tuple(out), canon_scalar)
    rng = random.Random(0)
    for _ in range(100):
        a = out[rng.randrange(size)]
        b = out[rng.randrange(size)]
        if group.mul(a, b) not in group.index:
            raise AssertionError("closure spot-check failed")
    return group


class Subgroup:
    """Subset of a MatGroup verified to be a subgroup by exhaustion."""

    def __init__(self, parent: MatGroup, members):
        members = sorted(set(members), key=lambda m: m.key)
        if not members:
            raise ValueError("a subgroup cannot be empty")
        for m in members:
            if m not in parent.index:
                raise ValueError("member outside the parent group")
        mset = set(members)
        if parent.identity not in mset:
            raise ValueError("subgroup must contain the identity")
        for a in members:
            if parent.inv(a) not in mset:
                raise ValueError("subgroup not closed under inverse")
            for b in members:
                if parent.mul(a, b) not in mset:
                    raise ValueError("subgroup not closed under product")
        if len(parent) % len(members):
            raise AssertionError("subgroup order does not divide group order")
        self.parent = parent
        self.members = tuple(members)
        self.member_set = frozenset(members)

    def __len__(self):
        return len(self.members)


def example1_subgroups(field: FiniteField):
    """The pair H = [[1,*],[0,*]], H' = [[*,*],[0,1]] inside GL_2(F_p), p > 2."""
    if field.m != 1 or field.p <= 2:
        raise ValueError("example 1 requires a prime field with p > 2")
    G = build_gl(2, field)
    one, zero = field.one, field.zero
    h = [m for m in G.elements if m.rows[0][0] == one and m.rows[1][0] == zero]
    hp = [m for m in G.elements if m.rows[1] == (zero, one)]
    return Subgroup(G, h), Subgroup(G, hp)


def stabilizer_pair(G: MatGroup, vector_index: int = 0, covector_index: int | None = None):
    """Stabilizers of the S-orbit of a basis vector and of a basis covector.

    vector_index picks e_i for the column condition; covector_index picks the
    row condition and defaults to the last row.  Different choices give
    conjugate subgroups, hence identical certificates.
    """
    n = G.n
    if n < 2:
        raise ValueError("stabilizer pair needs dimension at least 2")
    if covector_index is None:
        covector_index = n - 1
    if not (0 <= vector_index < n and 0 <= covector_index < n):
        raise ValueError("basis index out of range")
    s_set = set(G.scalar_subgroup)
    v = vector_index
    w = covector_index
    h = [
        m
        for m in G.elements
        if m.rows[v][v] in s_set
        and all(m.rows[i][v].is_zero for i in range(n) if i != v)
    ]
    hp = [
        m
        for m in G.elements
        if m.rows[w][w] in s_set
        and all(m.rows[w][j].is_zero for j in range(n) if j != w)
    ]
    return Subgroup(G, h), Subgroup(G, hp)


def conjugacy_classes(G: MatGroup):
    """Class representatives with sizes, ordered by representative key."""
    return [(rep, size) for rep, size, _ in G.conjugacy_classes()]


def permutation_character_fixpoints(G: MatGroup, H: Subgroup) -> list[int]:
    """Fixed-point counts of class representatives acting on G/H."""
    if H.parent is not G:
        raise ValueError("H is not a subgroup of this group")
    coset_of = [-1] * len(G)
    reps = []
    for i, x in enumerate(G.elements):
        if coset_of[i] >= 0:
            continue
        cid = len(reps)
        reps.append(x)
        for h in H.members:
            coset_of[G.index[G.mul(x, h)]] = cid
    counts = []
    for rep, _, _ in G.conjugacy_classes():
        fixed = 0
        for x in reps:
            if coset_of[G.index[G.mul(rep, x)]] == coset_of[G.index[x]]:
                fixed += 1
        counts.append(fixed)
    return counts


@dataclass(frozen=True)
class GassmannCertificate:
    is_gassmann: bool
    is_nontrivial: bool
    index: int
    rows: tuple  # (class representative, class size, fix on G/H, fix on G/H')

    def render(self) -> str:
        lines = [
            f"{rep.render()}\t{size}\t{fh}\t{fhp}"
            for rep, size, fh, fhp in self.rows
        ]
        lines.append(
            f"gassmann={str(self.is_gassmann).lower()} "
            f"nontrivial={str(self.is_nontrivial).lower()} "
            f"index={self.index}"
        )
        return "\n".join(lines)


def _are_conjugate(G: MatGroup, H: Subgroup, Hp: Subgroup) -> bool:
    if len(H) != len(Hp):
        return False
    target = Hp.member_set
    for g, ginv in zip(G.elements, G.inverses()):
        if all(G.canon(g.mul(h).mul(ginv)) in target for h in H.members):
            return True
    return False


def verify_gassmann(G: MatGroup, H: Subgroup, Hp: Subgroup) -> GassmannCertificate:
    """Classwise fixed-point comparison plus exhaustive non-conjugacy check."""
    if H.parent is not G or Hp.parent is not G:
        raise ValueError("both subgroups must live in the given group")
    fix_h = permutation_character_fixpoints(G, H)
    fix_hp = permutation_character_fixpoints(G, Hp)
    is_gassmann = fix_h == fix_hp
    rows = tuple(
        (rep, size, fh, fhp)
        for (rep, size, _), fh, fhp in zip(G.conjugacy_classes(), fix_h, fix_hp)
    )
    nontrivial = is_gassmann and not _are_conjugate(G, H, Hp)
    return GassmannCertificate(is_gassmann, nontrivial, len(G) // len(H), rows)
