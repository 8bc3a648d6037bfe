from fractions import Fraction

import pytest
from hypothesis import given, strategies as st
from mpmath import mp, mpf

from rcf.cfrac import (CFSpec, FractionKind, cf_spec, central_difference, eval_cf, fraction_direct,
                       fraction_oracle, rr_derivative_fd)
from rcf.elliptic import modulus_from_r
from rcf.errors import DomainError, NonConvergent
from rcf.numerics import PrecisionContext
from conftest import close


def qp(a, q):
    return mp.qp(a, q)


def product_oracle(kind, q):
    """Classical product forms, evaluated with mpmath's q-Pochhammer symbol."""
    if kind == "rr":
        q5 = q ** 5
        return mp.root(q, 5) * qp(q, q5) * qp(q ** 4, q5) / (qp(q ** 2, q5) * qp(q ** 3, q5))
    if kind == "h":
        q8 = q ** 8
        return mp.sqrt(q) * qp(q, q8) * qp(q ** 7, q8) / (qp(q ** 3, q8) * qp(q ** 5, q8))
    if kind == "v":
        return mp.cbrt(q) * qp(q, q * q) / qp(q ** 3, q ** 6) ** 3
    if kind == "s":
        return mp.root(q, 8) * qp(-q * q, q * q) / qp(-q, q * q)
    if kind == "q":
        return mp.sqrt(q) * (qp(q ** 4, q ** 4) / qp(q ** 2, q ** 4)) ** 2
    return mp.root(q, 8) * qp(q * q, q * q) / qp(q, q * q)


# 600-bit evaluations of the product forms
FROZEN = [
    ("rr", 4, "0.28407904384041229602829183239312616909108808844574"),
    ("h", Fraction(1, 4), "0.3645668590273162406266590"),
    ("v", 1, "0.3358093337363671913131086"),
    ("q", 2, "0.1084826746020398232064703"),
]


@pytest.mark.parametrize("kind, r, digits", FROZEN)
def test_frozen_values(ctx, kind, r, digits):
    value = fraction_direct(kind, modulus_from_r(r, ctx).nome, ctx)
    n = len(digits) - 2
    assert mp.nstr(value, n, strip_zeros=False) == digits


def test_rr_golden_radical(ctx):
    value = fraction_direct("rr", modulus_from_r(4, ctx).nome, ctx)
    with ctx.workprec():
        s5 = mp.sqrt(5)
        assert close(value, mp.sqrt((5 + s5) / 2) - (1 + s5) / 2, 10 * ctx.eps)


@pytest.mark.parametrize("kind", [k.value for k in FractionKind])
@pytest.mark.parametrize("q", ["0.05", "0.3", "0.5"])
def test_direct_matches_products(ctx, kind, q):
    with ctx.workprec():
        q = mpf(q)
        expected = product_oracle(kind, q)
    assert close(fraction_direct(kind, q, ctx), expected, 100 * ctx.eps)
    assert close(fraction_oracle(kind, q, ctx), expected, 100 * ctx.eps)


@pytest.mark.parametrize("kind", [k.value for k in FractionKind])
def test_small_q_leading_term(ctx, kind):
    # every fraction is q^e * (1 + O(q)) with the prefactor's exponent e
    e = {"rr": Fraction(1, 5), "h": Fraction(1, 2), "v": Fraction(1, 3),
         "s": Fraction(1, 8), "q": Fraction(1, 2), "m": Fraction(1, 8)}[kind]
    with ctx.workprec():
        q = mpf(10) ** -30
        ratio = fraction_direct(kind, q, ctx) / q ** (mpf(e.numerator) / e.denominator)
        assert abs(ratio - 1) < mpf(10) ** -29


def test_ambient_precision_does_not_leak(ctx):
    # called from default double precision, results still carry 256 bits
    mp.prec = 53
    nome = modulus_from_r(4, ctx).nome
    value = fraction_direct("rr", nome, ctx)
    with ctx.workprec():
        s5 = mp.sqrt(5)
        assert close(value, mp.sqrt((5 + s5) / 2) - (1 + s5) / 2, 10 * ctx.eps)


def test_convergence_report(ctx):
    value, report = eval_cf(cf_spec("rr"), mpf("0.1"), ctx)
    assert report.depth_used >= 16
    assert report.last_delta <= ctx.eps * abs(value)


def test_nonconvergent_fraction(monkeypatch):
    # t -> -1/(1/2 + t) has complex fixed points, so the tails rotate forever
    monkeypatch.setattr("rcf.cfrac.MAX_DEPTH", 2 ** 12)
    spec = CFSpec(lambda q: mpf(1), lambda q: mpf(1), lambda n, q: mpf(-1), lambda n, q: mpf(1) / 2)
    with pytest.raises(NonConvergent):
        eval_cf(spec, mpf("0.5"), PrecisionContext(64))


def test_kind_parsing():
    assert FractionKind.parse("RR") is FractionKind.RR
    assert FractionKind.parse(FractionKind.M) is FractionKind.M
    with pytest.raises(DomainError):
        FractionKind.parse("x")


@pytest.mark.parametrize("q", [0, 1, "1.5", -0.2])
def test_domain(ctx, q):
    with pytest.raises(DomainError):
        fraction_direct("rr", q, ctx)


def test_central_difference(ctx):
    with ctx.workprec():
        d, h2 = central_difference(mp.exp, mpf(1), ctx)
        assert abs(d - mp.e) < 10 * h2


def test_rr_derivative_fd(ctx):
    with ctx.workprec():
        x = mpf("0.2")
        d, h2 = rr_derivative_fd(x, ctx)
        expected = mp.diff(lambda t: product_oracle("rr", t), x)
        assert close(d, expected, mpf(10) ** -40)
    with pytest.raises(DomainError):
        rr_derivative_fd(mpf("0.2"), PrecisionContext(128))


@given(st.fractions(min_value=Fraction(1, 50), max_value=Fraction(3, 4)),
       st.sampled_from([k.value for k in FractionKind]))
def test_recurrence_equals_product_property(q, kind):
    c = PrecisionContext(128)
    with c.workprec():
        qv = mpf(q.numerator) / q.denominator
        assert close(fraction_direct(kind, qv, c), product_oracle(kind, qv), 1000 * c.eps)
