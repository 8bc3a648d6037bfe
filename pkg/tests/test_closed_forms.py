from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st
from mpmath import mp, mpf

from rcf import closed_forms as cf
from rcf.elliptic import modulus_from_r
from rcf.errors import DomainError, NoMatchingRoot
from rcf.numerics import PrecisionContext, RealPoly
from conftest import close
from test_cfrac import product_oracle

KINDS = ["rr", "h", "v", "s", "q", "m"]


def nome_of(r):
    return mp.exp(-mp.pi * mp.sqrt(mpf(r.numerator) / r.denominator if isinstance(r, Fraction) else r))


def k_of(r):
    """Independent singular modulus from mpmath's theta functions."""
    q = nome_of(r)
    return (mp.jtheta(2, 0, q) / mp.jtheta(3, 0, q)) ** 2


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("r", [Fraction(1, 4), 1, 2, 3, 4])
def test_closed_form_matches_products(ctx, kind, r):
    value = cf.closed_form(kind, r, ctx)
    with ctx.workprec():
        assert close(value, product_oracle(kind, nome_of(r)), 10 ** 4 * ctx.eps)


def test_rr_chain_fields(ctx):
    chain = cf.rr_chain(1, ctx)
    with ctx.workprec():
        assert close(chain.k, k_of(1), 10 * ctx.eps)
        assert close(chain.k25, k_of(25), 10 * ctx.eps)
        assert abs(chain.modular_residual()) <= 100 * ctx.eps
        assert mpf(1) / 5 < chain.M5 < 1
        assert close(cf.rr_from_invariant(chain.a_r), chain.R, 100 * ctx.eps)


def test_rr_invariant_at_4(ctx):
    assert mp.nstr(cf.rr_chain(4, ctx).a_r, 7) == "529.5085"


def test_rr_from_invariant_inverse(ctx):
    with ctx.workprec():
        for R in (mpf("0.1"), mpf("0.28"), mpf("0.5")):
            assert close(cf.rr_from_invariant(1 / R ** 5 - 11 - R ** 5), R, 100 * ctx.eps)


def test_w_parametrization(ctx):
    param = cf.rr_param(2, ctx)
    with ctx.workprec():
        assert close(cf.w_from_L(param.L), param.w, 1000 * ctx.eps)
        assert close(cf.L_ratio(param.L) ** 2, param.w / param.k, 1000 * ctx.eps)
        assert close(param.kstar * param.w, param.k, 100 * ctx.eps)


def test_L_one_third_example(ctx):
    _, r, R = cf.chain_from_L(Fraction(1, 3), ctx)
    assert mp.nstr(r, 19, strip_zeros=False) == "0.4824705645353968453"
    assert mp.nstr(R, 20, strip_zeros=False) == "0.58156294579833499769"
    with ctx.workprec():
        assert close(R, product_oracle("rr", nome_of(r)), 1000 * ctx.eps)
    with pytest.raises(DomainError):
        cf.chain_from_L(-1, ctx)


@pytest.mark.parametrize("p", ["0.3", "0.45", "1"])
def test_p_roundtrip(ctx, p):
    with ctx.workprec():
        p = mpf(p)
    residuals = cf.p_param_residuals(p, ctx)
    assert set(residuals) == {"p_from_T", "p_from_W", "w_from_W", "T_from_W", "W_equation", "p_polynomial"}
    assert max(residuals.values()) <= ctx.tolerance()
    assert close(cf.p_param_roundtrip(p, ctx).p, p, ctx.eps)


@pytest.mark.parametrize("r", [1, 2, 4])
def test_polynomial_roots_match_oracles(ctx, r):
    for name in cf.EQUATIONS:
        sol = cf.solve_equation(name, r, ctx)
        with ctx.workprec():
            assert abs(sol.polynomial(sol.selected)) <= ctx.eps * sol.polynomial.scale(sol.selected)
            assert close(sol.selected, sol.oracle, 10 ** 6 * ctx.eps)


def test_x_root_is_fourth_root_ratio(ctx):
    sol = cf.solve_equation("eq37", 2, ctx)
    with ctx.workprec():
        assert close(sol.selected, mp.root(k_of(2) / k_of(50), 4), 10 ** 4 * ctx.eps)


def test_x_dodecic_as_printed_is_off(ctx):
    sp, sp25 = modulus_from_r(2, ctx), modulus_from_r(50, ctx)
    with ctx.workprec():
        x = mp.root(sp.k / sp25.k, 4)
        good, bad = cf.x_polynomial(sp.k), cf.x_polynomial(sp.k, as_printed=True)
        assert abs(good(x)) / good.scale(x) <= ctx.tolerance()
        assert abs(bad(x)) / bad.scale(x) > mpf("1e-8")


def test_x_dodecic_symmetry(ctx):
    with ctx.workprec():
        k = mpf("0.3")
        p = cf.x_polynomial(k)
        for x in (mpf("0.7"), mpf(2)):
            assert close(p(-1 / x) * x ** 12, p(x), 100 * ctx.eps * p.scale(x))


def test_g_sextic_readings(ctx):
    assert abs(cf.g_sextic_residual(2, ctx)) <= ctx.tolerance()
    assert abs(cf.g_sextic_residual(2, ctx, kstar_reading="reciprocal")) > mpf("1e-6")
    with pytest.raises(DomainError):
        cf.g_sextic_residual(2, ctx, kstar_reading="other")


def test_double_roots_at_r1(ctx):
    m5 = cf.solve_equation("eq17", 1, ctx)
    assert [round(float(v.value), 9) for v in m5.roots if v.multiplicity == 2] == [0.847213595]
    g = cf.solve_equation("eq39a", 1, ctx)
    doubles = [v for v in g.roots if v.multiplicity == 2]
    assert len(doubles) == 1 and mp.nstr(doubles[0].value, 6) == "2.59851"


def test_unknown_equation(ctx):
    with pytest.raises(DomainError):
        cf.solve_equation("eq99", 1, ctx)


def test_select_rejects_far_roots():
    with pytest.raises(NoMatchingRoot):
        cf._select(cf.real_roots(RealPoly([-2, 0, 1]), (0, 2)), mpf(1), "test")


def test_derivative_forms_agree(ctx):
    d = cf.rr_deriv_closed(1, ctx)
    with ctx.workprec():
        expected = mp.diff(lambda t: product_oracle("rr", t), nome_of(1))
        assert close(d, expected, 10 ** 6 * ctx.eps)


def test_h_chain(ctx):
    chain = cf.h_closed(1, ctx)
    with ctx.workprec():
        assert close(chain.H, 1 / (chain.P + mp.sqrt(chain.P ** 2 + 1)), 10 * ctx.eps)
        assert close(cf.k_from_h(chain.H), k_of(1), 1000 * ctx.eps)


def test_cubic_chain(ctx):
    chain = cf.cubic_closed(2, ctx)
    with ctx.workprec():
        assert close(chain.k, k_of(2), 10 * ctx.eps)
        assert close(chain.k9, k_of(18), 10 * ctx.eps)
        assert abs(chain.modular_residual()) <= ctx.tolerance()
        assert abs(chain.T_residual()) <= ctx.tolerance()
        assert close(cf.cubic_w_from_v(chain.V), chain.w3, 1000 * ctx.eps)


def test_k81_from_v(ctx):
    with ctx.workprec():
        assert close(cf.k81_from_v3(Fraction(1, 9), ctx), k_of(9), 1000 * ctx.eps)


def test_q_gamma_value(ctx):
    with ctx.workprec():
        assert close(cf.q_closed(2, ctx), mpf("0.1084826746020398232064703"), mpf(10) ** -24)


@settings(max_examples=12)
@given(st.tuples(st.integers(1, 12), st.integers(1, 12)).map(lambda t: Fraction(t[0], t[1]))
       .filter(lambda r: Fraction(1, 4) <= r <= 4), st.sampled_from(KINDS))
def test_closed_form_property(r, kind):
    c = PrecisionContext(128)
    value = cf.closed_form(kind, r, c)
    with c.workprec():
        assert close(value, product_oracle(kind, nome_of(r)), 10 ** 4 * c.eps)


@pytest.mark.parametrize("kind", KINDS)
def test_irrational_r_keeps_precision(ctx, kind):
    # r scaled by 1/4, 4, 9 or 25 internally must not be rounded at ambient precision
    with ctx.workprec():
        r = (mp.log(mpf("0.05")) / mp.pi) ** 2
    value = cf.closed_form(kind, r, ctx)
    with ctx.workprec():
        assert close(value, product_oracle(kind, mpf("0.05")), 10 ** 4 * ctx.eps)
