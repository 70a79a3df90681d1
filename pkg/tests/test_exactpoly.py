import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ccybe.exactpoly import (
    MPoly,
    ParseError,
    RegistryMismatch,
    SymbolRegistry,
    parse_poly,
)

from support import random_poly


@pytest.fixture()
def reg():
    return SymbolRegistry()


# Frozen examples -------------------------------------------------------------


def test_add_inverse(reg):
    d1 = reg.var("d1")
    assert (d1 + (-d1)).is_zero()


def test_add_like_terms(reg):
    p = reg.var("d1") * reg.var("d2")
    assert p + p == p * 2


def test_add_rationals(reg):
    x = reg.var("x")
    assert x * Fraction(3, 2) + x * Fraction(1, 3) == x * Fraction(11, 6)


def test_mul_difference_of_squares(reg):
    x, y = reg.var("x"), reg.var("y")
    assert (x + y) * (x - y) == x * x - y * y


def test_mul_by_zero(reg):
    p = reg.parse("3*x^2 - y")
    assert (reg.zero() * p).is_zero()


def test_mul_square(reg):
    d1, d2 = reg.var("d1"), reg.var("d2")
    assert (d1 + d2) * (d1 + d2) == d1 ** 2 + d1 * d2 * 2 + d2 ** 2


def test_registry_mismatch(reg):
    other = SymbolRegistry()
    with pytest.raises(RegistryMismatch):
        reg.var("x") + other.var("x")
    with pytest.raises(RegistryMismatch):
        reg.var("x") * other.var("x")


def test_subst_total_derivative(reg):
    d1, d2, d3 = (reg.var(n) for n in ("d1", "d2", "d3"))
    p = d1 + d2 + d3
    assert p.subst_linear(reg.sym("d1"), -d2 - d3).is_zero()


def test_subst_shifted_argument(reg):
    # A(u, v) = u evaluated at (d1 + lam, d2), then lam := -d1 - d2.
    d1, d2, lam = reg.var("d1"), reg.var("d2"), reg.var("lam")
    shifted = d1 + lam
    assert shifted.subst_linear(reg.sym("lam"), -d1 - d2) == -d2


def test_subst_zero(reg):
    x = reg.var("x")
    p = x * (x ** 2 + 1)  # x*f(x^2) with f = t + 1
    assert p.subst_linear(reg.sym("x"), reg.zero()).is_zero()


def test_odd_even_split(reg):
    x = reg.sym("x")
    p = reg.parse("x^3 + x^2 + x + 1")
    odd, even = p.odd_even_split(x)
    assert odd == reg.parse("x^3 + x")
    assert even == reg.parse("x^2 + 1")


def test_odd_even_split_pure_odd(reg):
    x = reg.sym("x")
    odd, even = reg.parse("x^5 + x").odd_even_split(x)
    assert odd == reg.parse("x^5 + x")
    assert even.is_zero()


def test_odd_even_split_constant(reg):
    x = reg.sym("x")
    odd, even = reg.const(7).odd_even_split(x)
    assert odd.is_zero()
    assert even == 7


def test_match_axf_numeric(reg):
    x = reg.sym("x")
    match = reg.parse("2*x^3 + 2*x").match_axf(x)
    assert match is not None
    a, f = match
    assert a == 2
    assert f == reg.parse("t + 1")


def test_match_axf_even_rejected(reg):
    x = reg.sym("x")
    assert reg.parse("x^2").match_axf(x) is None


def test_match_axf_parametric(reg):
    x = reg.sym("x")
    a_ee = reg.var("a_ee")
    match = (a_ee * reg.var("x")).match_axf(x)
    assert match is not None
    a, f = match
    assert a == a_ee
    assert f == 1


def test_match_axf_mixed_parameters_rejected(reg):
    x = reg.sym("x")
    p = reg.var("a_ee") * reg.var("x") + reg.var("a_hh") * reg.var("x", 3)
    assert p.match_axf(x) is None


def test_parse_basic(reg):
    p = reg.parse("3/2*d1^2 - d2")
    assert p == reg.var("d1", 2) * Fraction(3, 2) - reg.var("d2")


def test_parse_parenthesized_power(reg):
    assert reg.parse("(d1+d2)^2") == reg.parse("d1^2 + 2*d1*d2 + d2^2")


def test_parse_negative_exponent_rejected(reg):
    with pytest.raises(ParseError):
        reg.parse("x^(-1)")


def test_parse_unknown_symbol(reg):
    with pytest.raises(ParseError):
        reg.parse("frobble + 1")
    p = reg.parse("frobble + 1", auto_register=True)
    assert p == reg.var("frobble") + 1


def test_parse_error_position(reg):
    with pytest.raises(ParseError) as err:
        reg.parse("x + ")
    assert err.value.position == 4


def test_parse_no_division_operator(reg):
    with pytest.raises(ParseError):
        reg.parse("x/2")


def test_print_canonical(reg):
    p = reg.parse("- d2 + 3/2*d1^2")
    assert p.to_string() == "3/2*d1^2 - d2"
    assert reg.zero().to_string() == "0"
    assert reg.const(Fraction(-5, 3)).to_string() == "-5/3"


# Properties ------------------------------------------------------------------

NAMES = ("d1", "d2", "d3", "x", "y", "z")


@st.composite
def polys(draw):
    reg = draw(st.shared(st.builds(SymbolRegistry), key="reg"))
    n_terms = draw(st.integers(0, 5))
    p = reg.zero()
    for _ in range(n_terms):
        coeff = Fraction(draw(st.integers(-9, 9)), draw(st.integers(1, 9)))
        term = reg.const(coeff)
        budget = 4
        for name in NAMES:
            e = draw(st.integers(0, budget))
            budget -= e
            if e:
                term = term * reg.var(name, e)
        p = p + term
    return p


@settings(max_examples=200)
@given(polys(), polys(), polys())
def test_ring_laws(p, q, r):
    reg = p.reg
    one = reg.const(1)
    assert p + q == q + p
    assert (p + q) + r == p + (q + r)
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p + reg.zero() == p
    assert p * one == p
    assert p * reg.zero() == reg.zero()


@settings(max_examples=100)
@given(polys(), polys(), polys())
def test_subst_commutes_when_disjoint(p, e1, e2):
    # Substitute d1 and d2 by expressions avoiding both; sequential order
    # must agree with the other sequential order (i.e. simultaneous).
    reg = p.reg
    s1, s2 = reg.sym("d1"), reg.sym("d2")
    f1 = e1.subst_many({s1: reg.zero(), s2: reg.zero()})
    f2 = e2.subst_many({s1: reg.zero(), s2: reg.zero()})
    seq = p.subst_linear(s1, f1).subst_linear(s2, f2)
    sim = p.subst_many({s1: f1, s2: f2})
    assert seq == sim


@settings(max_examples=100)
@given(polys())
def test_split_parity(p):
    reg = p.reg
    x = reg.sym("x")
    odd, even = p.odd_even_split(x)
    assert odd + even == p
    minus_x = -reg.var("x")
    assert odd.subst_linear(x, minus_x) == -odd
    assert even.subst_linear(x, minus_x) == even


def test_match_axf_roundtrip(reg):
    rng = random.Random(7)
    x = reg.sym("x")
    for _ in range(100):
        p = random_poly(reg, rng, ("x",), max_degree=7, max_terms=4)
        odd, even = p.odd_even_split(x)
        match = p.match_axf(x)
        if match is None:
            assert p.is_zero() or not even.is_zero()
        else:
            assert even.is_zero() and p.constant_term() == 0
            a, f = match
            rebuilt = a * reg.var("x") * f.subst_linear(reg.sym("t"), reg.var("x", 2))
            assert rebuilt == p
            # monic in t
            top = f.degree_in(reg.sym("t"))
            assert f.as_univariate_in(reg.sym("t"))[top] == 1


def test_parse_print_roundtrip(reg):
    rng = random.Random(11)
    for _ in range(200):
        p = random_poly(reg, rng, NAMES, max_degree=5, max_terms=6)
        assert reg.parse(p.to_string()) == p


def test_pow(reg):
    p = reg.parse("x + 1")
    assert p ** 0 == 1
    assert p ** 3 == reg.parse("x^3 + 3*x^2 + 3*x + 1")
    with pytest.raises(ValueError):
        p ** -1


def test_cancel_inverse_pairs(reg):
    a, ainv = reg.var("a"), reg.var("ainv")
    p = a * a * ainv + a * ainv - 2
    q = p.cancel_inverse_pairs(reg.sym("a"), reg.sym("ainv"))
    assert q == a - 1


def test_interning_bijective(reg):
    s1 = reg.sym("alpha")
    s2 = reg.sym("alpha")
    assert s1 == s2
    assert reg.name_of(s1.index) == "alpha"
    with pytest.raises(ValueError):
        reg.sym("not valid!")


def test_interning_concurrent(reg):
    import threading

    names = [f"sym_{i}" for i in range(50)]
    results = [[] for _ in range(8)]

    def worker(bucket):
        for name in names:
            bucket.append(reg.sym(name))

    threads = [threading.Thread(target=worker, args=(results[i],))
               for i in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    for bucket in results[1:]:
        assert bucket == results[0]
    assert len({s.index for s in results[0]}) == len(names)
