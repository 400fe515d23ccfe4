import random

import pytest

from ffequiv.exprs import parse, render_residue_poly
from ffequiv.fields import extension_field, prime_field
from ffequiv.poly import Poly, factor, is_irreducible, poly_gcd
from ffequiv.splitting import (
    Exhaustive,
    Sampled,
    SplitType,
    compare_split_types,
    irreducible_count,
    reduce_mod_prime,
    split_type,
)
from ffequiv.twisted import YPoly

F3 = prime_field(3)
F5 = prime_field(5)

F1_STR = "y^8 + T*y^2 + T"
G1_STR = (
    "y^8 + T^2*y^6 + (2*T^6 + T^4 + T^3)*y^5 + (2*T^5 + 2*T^3)*y^4"
    " + (2*T^9 + 2*T^6 + 2*T^5)*y^3"
    " + (T^16 + 2*T^13 + T^10 + 2*T^9 + T^8 + 2*T^6 + T^5)*y^2"
    " + (T^17 + 2*T^13 + T^10 + 2*T^9 + 2*T^8 + 2*T^7 + T^6)*y"
    " + T^21 + T^15 + T^14 + T^13 + 2*T^12 + T^11 + 2*T^10 + 2*T^9 + 2*T^7 + T^6"
)


def P(field, *ints):
    return Poly.from_ints(field, ints)


@pytest.fixture(scope="module")
def pair1():
    return parse(F1_STR, "y_poly", F3), parse(G1_STR, "y_poly", F3)


def test_reduce_degree_one(pair1):
    f, _ = pair1
    red = reduce_mod_prime(f, P(F3, 1, 1))
    assert red.field is F3
    assert red == Poly.from_ints(F3, [2, 0, 2, 0, 0, 0, 0, 0, 1])


def test_reduce_degree_one_g(pair1):
    _, g = pair1
    red = reduce_mod_prime(g, P(F3, 1, 1))
    assert red == Poly.from_ints(F3, [1, 0, 0, 1, 2, 2, 1, 0, 1])


def test_reduce_degree_two(pair1):
    f, _ = pair1
    red = reduce_mod_prime(f, P(F3, 1, 0, 1))
    f9 = extension_field(3, modulus=[1, 0, 1])
    assert red.field is f9
    t = f9.from_coeffs([0, 1])
    assert red.coeff(0) == t
    assert red.coeff(2) == t
    assert red.coeff(8) == f9.one
    assert red.degree == 8


def test_reduce_degree_drop():
    f = YPoly(F3, [Poly.zero(F3), Poly.one(F3), P(F3, 1, 1)])
    red = reduce_mod_prime(f, P(F3, 1, 1))
    assert red == Poly.from_ints(F3, [0, 1])


def test_reduce_validates_prime(pair1):
    f, _ = pair1
    with pytest.raises(ValueError, match="monic"):
        reduce_mod_prime(f, P(F3, 1, 2))
    with pytest.raises(ValueError, match="irreducible"):
        reduce_mod_prime(f, P(F3, 2, 0, 1))


def test_split_type_goldens(pair1):
    f, g = pair1
    assert split_type(f, P(F3, 1, 1)).split == SplitType((8,))
    assert split_type(f, P(F3, 1, 0, 1)).split == SplitType((2, 6))
    assert split_type(g, P(F3, 1, 0, 1)).split == SplitType((2, 6))
    assert split_type(g, P(F3, 1, 1)).split == SplitType((8,))


def test_factor_lists_mod_quadratic(pair1):
    f, g = pair1
    Q = P(F3, 1, 0, 1)
    fac_f = factor(reduce_mod_prime(f, Q))
    assert [render_residue_poly(h) for h, _ in fac_f] == [
        "y^2 + T + 1",
        "y^6 + (2*T + 2)*y^4 + 2*T*y^2 + 2*T + 2",
    ]
    fac_g = factor(reduce_mod_prime(g, Q))
    assert [render_residue_poly(h) for h, _ in fac_g] == [
        "y^2 + (2*T + 1)*y + 2*T + 2",
        "y^6 + (T + 2)*y^5 + 2*T*y^4 + y^3 + (2*T + 2)*y + 2*T + 1",
    ]


def test_compare_pair1_small(pair1):
    f, g = pair1
    report = compare_split_types(f, g, Exhaustive(2))
    assert report.overall == "consistent"
    by_prime = {v.prime: v for v in report.verdicts}
    v1 = by_prime[P(F3, 1, 1)]
    assert (v1.type_f, v1.type_g, v1.status) == (SplitType((8,)), SplitType((8,)), "equal")
    v2 = by_prime[P(F3, 1, 0, 1)]
    assert (v2.type_f, v2.type_g, v2.status) == (
        SplitType((2, 6)),
        SplitType((2, 6)),
        "equal",
    )
    assert len(report.verdicts) == 6
    for v in report.verdicts:
        if not v.is_bad:
            assert sum(v.type_f.degrees) == 8
            assert sum(v.type_g.degrees) == 8


def test_self_comparison(pair1):
    f, _ = pair1
    report = compare_split_types(f, f, Exhaustive(3))
    assert report.overall == "consistent"
    assert report.unequal_count == 0
    for v in report.verdicts:
        if not v.is_bad:
            assert v.equal


def test_refuted_pair():
    f = parse("y^2 + 2*T", "y_poly", F3)
    g = parse("y^2 + 2*T + 2", "y_poly", F3)
    report = compare_split_types(f, g, Exhaustive(1))
    assert report.overall == "refuted"
    by_prime = {v.prime: v for v in report.verdicts}
    assert by_prime[P(F3, 0, 1)].status == "bad:repeated_factor_f"
    assert by_prime[P(F3, 1, 1)].status == "bad:repeated_factor_g"
    w = by_prime[P(F3, 2, 1)]
    assert w.status == "UNEQUAL"
    assert w.type_f == SplitType((1, 1))
    assert w.type_g == SplitType((2,))
    assert (report.good, report.equal_count, report.unequal_count, report.bad) == (1, 0, 1, 2)


def test_symmetry(pair1):
    f, g = pair1
    fg = compare_split_types(f, g, Exhaustive(2), seed=9)
    gf = compare_split_types(g, f, Exhaustive(2), seed=9)
    assert fg.overall == gf.overall
    for a, b in zip(fg.verdicts, gf.verdicts):
        assert a.prime == b.prime
        assert a.type_f == b.type_g and a.type_g == b.type_f
        if a.is_bad:
            assert b.is_bad
    f2 = parse("y^2 + 2*T", "y_poly", F3)
    g2 = parse("y^2 + 2*T + 2", "y_poly", F3)
    r = compare_split_types(g2, f2, Exhaustive(1))
    by_prime = {v.prime: v for v in r.verdicts}
    assert by_prime[P(F3, 0, 1)].status == "bad:repeated_factor_g"
    assert by_prime[P(F3, 1, 1)].status == "bad:repeated_factor_f"
    assert r.overall == "refuted"


def test_determinism_and_jobs(pair1):
    f, g = pair1
    a = compare_split_types(f, g, Exhaustive(2), seed=3)
    b = compare_split_types(f, g, Exhaustive(2), seed=3)
    assert a.render() == b.render()
    c = compare_split_types(f, g, Exhaustive(2), seed=3, jobs=2)
    assert c.render() == a.render()


def test_render_format():
    f = parse("y^2 + 2*T", "y_poly", F3)
    g = parse("y^2 + 2*T + 2", "y_poly", F3)
    report = compare_split_types(f, g, Exhaustive(1))
    lines = report.render().split("\n")
    assert lines[0] == "T\t1\t-\t[1,1]\tbad:repeated_factor_f"
    assert lines[1] == "T + 1\t1\t[2]\t-\tbad:repeated_factor_g"
    assert lines[2] == "T + 2\t1\t[1,1]\t[2]\tUNEQUAL"
    assert lines[3] == "good=1 equal=0 unequal=1 bad=2 overall=refuted"


def test_bad_classification_consistency(pair1):
    # a side is Bad iff its reduction drops degree or is inseparable
    f, g = pair1
    report = compare_split_types(f, g, Exhaustive(2))
    for v in report.verdicts:
        for side, poly in (("f", f), ("g", g)):
            drop = (poly.leading % v.prime).is_zero
            if drop:
                expect_bad = True
            else:
                red = reduce_mod_prime(poly, v.prime)
                der = red.derivative()
                expect_bad = der.is_zero or poly_gcd(red, der).degree > 0
            r = split_type(poly, v.prime)
            assert r.is_bad == expect_bad


def _oracle_split(f: YPoly, P1: Poly):
    """Degree-1 oracle: evaluate coefficients at the root, trial-divide."""
    field = f.field
    root = -P1.coeff(0)
    red = Poly(field, [c(root) for c in f.coeffs])
    if red.degree < f.degree:
        return None
    degs = []
    rem = red.monic()
    d = 1
    while rem.degree > 0:
        hit = False
        for cand in _monic_of_degree(field, d):
            q, r = divmod(rem, cand)
            if r.is_zero and is_irreducible(cand):
                degs.append(d)
                rem = q
                hit = True
                break
        if not hit:
            d += 1
            assert d <= red.degree, "oracle stuck"
    return sorted(degs)


def _digits(n, q, d):
    out = []
    for _ in range(d):
        out.append(n % q)
        n //= q
    return out


def _monic_of_degree(field, d):
    return [
        Poly(field, [field.from_index(c) for c in _digits(n, field.q, d)] + [field.one])
        for n in range(field.q**d)
    ]


def test_degree_one_oracle(pair1):
    f, g = pair1
    rng = random.Random(1)
    polys = [f, g]
    for _ in range(6):
        cs = [
            Poly.from_indices(F3, [rng.randrange(3) for _ in range(3)]) for _ in range(4)
        ]
        if all(c.is_zero for c in cs):
            continue
        polys.append(YPoly(F3, cs))
    for yp in polys:
        for a in range(3):
            P1 = Poly.from_ints(F3, [a, 1])
            oracle = _oracle_split(yp, P1)
            got = split_type(yp, P1)
            if oracle is None:
                assert got.bad_reason == "leading_coeff_vanishes"
                continue
            if got.is_bad:
                assert got.bad_reason == "repeated_factor"
                # oracle sees the same degrees ignoring multiplicity collapse
                red = reduce_mod_prime(yp, P1)
                assert poly_gcd(red, red.derivative()).degree > 0 or red.derivative().is_zero
            else:
                assert list(got.split.degrees) == oracle


def test_selection_errors(pair1):
    f, g = pair1
    with pytest.raises(ValueError, match="empty"):
        compare_split_types(f, g, Exhaustive(0))
    with pytest.raises(ValueError, match="only 3 exist"):
        compare_split_types(f, g, Sampled(100, 1))
    h = parse("y^2 + T", "y_poly", F5)
    with pytest.raises(ValueError, match="share a base field"):
        compare_split_types(f, h, Exhaustive(1))


def test_sampled_selection(pair1):
    f, g = pair1
    r1 = compare_split_types(f, g, Sampled(4, 3, seed=7))
    r2 = compare_split_types(f, g, Sampled(4, 3, seed=7))
    assert r1.render() == r2.render()
    assert len(r1.verdicts) == 4
    assert len({v.prime for v in r1.verdicts}) == 4
    for v in r1.verdicts:
        assert v.prime.degree == 3
        assert is_irreducible(v.prime)
    # seed=None defers to the global seed
    r3 = compare_split_types(f, g, Sampled(4, 3), seed=7)
    assert r3.render() == r1.render()


def test_irreducible_count_matches_listing():
    from ffequiv.poly import monic_irreducibles

    for q, build in ((2, prime_field(2)), (3, F3), (4, extension_field(2, degree=2))):
        for d in range(1, 5):
            assert irreducible_count(q, d) == len(monic_irreducibles(build, d))
