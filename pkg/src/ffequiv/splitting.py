"""Splitting types of polynomials modulo primes of F_q[T] and batch comparison.

Reducing a y-polynomial modulo a monic irreducible P pushes its coefficients
into the residue field F_q[T]/(P); the multiset of factor degrees of the
reduction is the splitting type at P.  Primes where the reduction drops
degree or acquires a repeated factor are classified Bad and excluded from
comparison, everything else is Good and contributes an equal/unequal row.
"""

from __future__ import annotations

import hashlib
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Optional, Union

from .exprs import render_tpoly
from .fields import FiniteField, extension_field
from .poly import Poly, factor, is_irreducible, monic_irreducibles
from .twisted import YPoly


@dataclass(frozen=True)
class SplitType:
    """Sorted multiset of residue degrees."""

    degrees: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(sorted(self.degrees)))

    def __str__(self):
        return "[" + ",".join(str(d) for d in self.degrees) + "]"


@dataclass(frozen=True)
class SideResult:
    """Outcome of split_type on one polynomial: Bad with a reason, or a type."""

    bad_reason: Optional[str]
    split: Optional[SplitType]

    @property
    def is_bad(self) -> bool:
        return self.bad_reason is not None


@dataclass(frozen=True)
class PrimeVerdict:
    prime: Poly
    type_f: Optional[SplitType]
    type_g: Optional[SplitType]
    bad_reason: Optional[str] = None

    @property
    def is_bad(self) -> bool:
        return self.bad_reason is not None

    @property
    def equal(self) -> bool:
        if self.is_bad:
            raise ValueError("Bad primes carry no equality verdict")
        return self.type_f == self.type_g

    @property
    def status(self) -> str:
        if self.is_bad:
            return f"bad:{self.bad_reason}"
        return "equal" if self.equal else "UNEQUAL"


@dataclass(frozen=True)
class Exhaustive:
    """All monic irreducibles of degree 1..max_degree, in canonical order."""

    max_degree: int


@dataclass(frozen=True)
class Sampled:
    """count distinct random monic irreducibles of the given degree.

    seed=None defers to the global seed passed to compare_split_types.
    """

    count: int
    degree: int
    seed: Optional[int] = None


PrimeSelection = Union[Exhaustive, Sampled]


def _check_prime(P: Poly):
    if not P.is_monic:
        raise ValueError("P must be monic")
    if not is_irreducible(P):
        raise ValueError("P must be irreducible")


def reduce_mod_prime(f: YPoly, P: Poly) -> Poly:
    """Map each coefficient of f into F_q[T]/(P) and return the image of f.

    The result is a univariate polynomial over the residue field; its degree
    drops when the leading coefficient of f lies in (P).
    """
    base = f.field
    if base.m != 1:
        raise ValueError("reduction is implemented over prime base fields only")
    if P.field is not base:
        raise ValueError("P must live over the same base field as f")
    _check_prime(P)
    if P.degree == 1:
        res = base
        elems = [(c % P).coeff(0) for c in f.coeffs]
    else:
        res = extension_field(base.p, modulus=[c.coeffs[0] for c in P.coeffs])
        elems = [
            res.from_coeffs([e.coeffs[0] for e in (c % P).coeffs]) for c in f.coeffs
        ]
    return Poly(res, elems)


def split_type(f: YPoly, P: Poly, seed: int = 0) -> SideResult:
    """Classify one side at one prime: Bad reason or sorted degree multiset."""
    _check_prime(P)
    if f.is_zero:
        raise ValueError("cannot take the splitting type of the zero polynomial")
    if (f.leading % P).is_zero:
        return SideResult("leading_coeff_vanishes", None)
    fac = factor(reduce_mod_prime(f, P), seed=seed)
    if fac.max_multiplicity > 1:
        return SideResult("repeated_factor", None)
    return SideResult(None, SplitType(tuple(fac.degrees())))


def _prime_seed(seed: int, P: Poly) -> int:
    # stable across processes and schedules
    h = hashlib.blake2b(f"{seed}|{render_tpoly(P)}".encode(), digest_size=8)
    return int.from_bytes(h.digest(), "big")


def _verdict_at(f: YPoly, g: YPoly, P: Poly, seed: int) -> PrimeVerdict:
    s = _prime_seed(seed, P)
    rf = split_type(f, P, s)
    rg = split_type(g, P, s)
    reason = None
    if rf.bad_reason == "leading_coeff_vanishes":
        reason = "leading_coeff_vanishes_f"
    elif rg.bad_reason == "leading_coeff_vanishes":
        reason = "leading_coeff_vanishes_g"
    elif rf.bad_reason == "repeated_factor":
        reason = "repeated_factor_f"
    elif rg.bad_reason == "repeated_factor":
        reason = "repeated_factor_g"
    return PrimeVerdict(P, rf.split, rg.split, reason)


def _mobius(n: int) -> int:
    out = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            out = -out
        d += 1
    if n > 1:
        out = -out
    return out


def irreducible_count(q: int, d: int) -> int:
    """Number of monic irreducibles of degree d over F_q."""
    total = 0
    for e in range(1, d + 1):
        if d % e == 0:
            total += _mobius(e) * q ** (d // e)
    return total // d


def _select_primes(field: FiniteField, selection: PrimeSelection, seed: int) -> list[Poly]:
    if isinstance(selection, Exhaustive):
        if selection.max_degree < 1:
            raise ValueError("empty prime selection")
        out = []
        for d in range(1, selection.max_degree + 1):
            out.extend(monic_irreducibles(field, d))
        return out
    if isinstance(selection, Sampled):
        if selection.count < 1:
            raise ValueError("empty prime selection")
        if selection.degree < 1:
            raise ValueError("prime degree must be positive")
        available = irreducible_count(field.q, selection.degree)
        if selection.count > available:
            raise ValueError(
                f"requested {selection.count} primes of degree {selection.degree} "
                f"but only {available} exist"
            )
        rng = random.Random(seed if selection.seed is None else selection.seed)
        q = field.q
        seen = set()
        out = []
        while len(out) < selection.count:
            cand = Poly.from_indices(
                field, [rng.randrange(q) for _ in range(selection.degree)] + [1]
            )
            if cand in seen or not is_irreducible(cand):
                continue
            seen.add(cand)
            out.append(cand)
        return out
    raise TypeError(f"unknown prime selection {selection!r}")


_WORK: dict = {}


def _init_worker(f, g, seed):
    _WORK["args"] = (f, g, seed)


def _run_worker(P):
    f, g, seed = _WORK["args"]
    return _verdict_at(f, g, P, seed)


@dataclass(frozen=True)
class EquivalenceReport:
    selection_desc: str
    verdicts: tuple[PrimeVerdict, ...]
    pair_desc: str = dc_field(default="", compare=False)

    @property
    def good(self) -> int:
        return sum(1 for v in self.verdicts if not v.is_bad)

    @property
    def equal_count(self) -> int:
        return sum(1 for v in self.verdicts if not v.is_bad and v.equal)

    @property
    def unequal_count(self) -> int:
        return sum(1 for v in self.verdicts if not v.is_bad and not v.equal)

    @property
    def bad(self) -> int:
        return sum(1 for v in self.verdicts if v.is_bad)

    @property
    def overall(self) -> str:
        return "refuted" if self.unequal_count else "consistent"

    def render(self) -> str:
        lines = []
        for v in self.verdicts:
            lines.append(
                "\t".join(
                    [
                        render_tpoly(v.prime),
                        str(v.prime.degree),
                        str(v.type_f) if v.type_f is not None else "-",
                        str(v.type_g) if v.type_g is not None else "-",
                        v.status,
                    ]
                )
            )
        lines.append(
            f"good={self.good} equal={self.equal_count} "
            f"unequal={self.unequal_count} bad={self.bad} overall={self.overall}"
        )
        return "\n".join(lines)


def compare_split_types(
    f: YPoly,
    g: YPoly,
    selection: PrimeSelection,
    seed: int = 0,
    jobs: int = 1,
    pair_desc: str = "",
) -> EquivalenceReport:
    """Compare splitting types of f and g over a selection of primes.

    The report is deterministic for fixed (f, g, selection, seed), whatever
    the value of jobs: every per-prime factorization seed is derived from the
    global seed and the prime alone, and verdicts are assembled in selection
    order.
    """
    if f.field is not g.field:
        raise ValueError("f and g must share a base field")
    primes = _select_primes(f.field, selection, seed)
    if not primes:
        raise ValueError("empty prime selection")
    if isinstance(selection, Exhaustive):
        desc = f"exhaustive degree<={selection.max_degree}"
    else:
        desc = f"sampled {selection.count} of degree {selection.degree}"
    if jobs > 1:
        with ProcessPoolExecutor(
            max_workers=jobs, initializer=_init_worker, initargs=(f, g, seed)
        ) as pool:
            verdicts = tuple(pool.map(_run_worker, primes))
    else:
        verdicts = tuple(_verdict_at(f, g, P, seed) for P in primes)
    return EquivalenceReport(desc, verdicts, pair_desc)
