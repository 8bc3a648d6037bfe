import pytest
from hypothesis import given, strategies as st
from mpmath import mp, mpf

from rcf.errors import Diverged, DomainError, NonConvergent, PrecisionExhausted
from rcf.numerics import PrecisionContext, RealPoly, polish_root, real_roots, sum_to_tolerance
from conftest import close


def test_context_eps_and_tolerance():
    c = PrecisionContext(128, 32)
    assert c.eps == mpf(2) ** -96
    assert c.tolerance() == 100 * c.eps
    assert c.with_bits(256).eps == mpf(2) ** -224


def test_context_rejects_low_precision():
    with pytest.raises(DomainError):
        PrecisionContext(32)


def test_workprec_sets_and_restores():
    before = mp.prec
    with PrecisionContext(300).workprec():
        assert mp.prec == 300
    assert mp.prec == before


def test_geometric_series(ctx):
    assert close(sum_to_tolerance(lambda n: mpf(1) / 2 ** n, "series", ctx), 2, ctx.eps)


def test_theta3_at_exp_minus_pi(ctx):
    q = mp.exp(-mp.pi)
    with ctx.workprec():
        q = mp.exp(-mp.pi)
        s = sum_to_tolerance(lambda n: 2 * q ** (n * n) if n else mpf(1), "series", ctx)
        expected = mp.root(mp.pi, 4) / mp.gamma(mpf(3) / 4)
    assert close(s, expected, 4 * ctx.eps)
    assert mp.nstr(s, 12) == "1.08643481121"


def test_empty_product(ctx):
    assert sum_to_tolerance(lambda n: 1 - mpf(0) ** (n + 1), "product", ctx) == 1


def test_nonconvergent(ctx):
    with pytest.raises(NonConvergent):
        sum_to_tolerance(lambda n: mpf(1) / (n + 1), "series", PrecisionContext(64))


def test_bad_mode(ctx):
    with pytest.raises(DomainError):
        sum_to_tolerance(lambda n: mpf(0), "integral", ctx)


def test_precision_ladder_of_sums():
    lo, hi = PrecisionContext(128), PrecisionContext(192)
    q = mpf(1) / 7
    a = sum_to_tolerance(lambda n: q ** (n * (n + 1) // 2), "series", lo)
    b = sum_to_tolerance(lambda n: q ** (n * (n + 1) // 2), "series", hi)
    assert close(a, b, lo.eps)


def test_poly_basics():
    p = RealPoly([-2, 0, 1])
    assert p.degree == 2
    assert p(3) == 7
    assert p.derivative().coefficients == (0, 2)
    assert (p * p).degree == 4
    assert (p - p).degree == -1
    assert RealPoly([1, 2, 0, 0]).degree == 1


def test_sqrt2(ctx):
    roots = real_roots(RealPoly([-2, 0, 1]), (0, 2), ctx)
    assert len(roots) == 1
    with ctx.workprec():
        assert close(roots[0].value, mp.sqrt(2), ctx.eps)


def test_tiny_dip_is_a_double_root():
    c = PrecisionContext(64)
    with c.workprec():
        p = RealPoly([1 + mpf(2) ** -50, -2, 1])
    assert [r.multiplicity for r in real_roots(p, (0, 2), c)] == [2]


def test_monomial_root_at_zero(ctx):
    assert real_roots(RealPoly([0, 0, 1]), (-mp.inf, mp.inf), ctx).values == [0]


def test_roots_over_infinite_interval(ctx):
    # (x - 1)(x + 2)(x - 30)
    p = RealPoly([-1, 1]) * RealPoly([2, 1]) * RealPoly([-30, 1])
    values = real_roots(p, (-mp.inf, mp.inf), ctx).values
    assert [mp.nint(v) for v in values] == [-2, 1, 30]


def test_double_root_reported(ctx):
    p = RealPoly([-1, 1]) ** 2 * RealPoly([-3, 1])
    roots = real_roots(p, (0, 5), ctx)
    assert [r.multiplicity for r in roots] == [2, 1]
    assert close(roots[0].value, 1, mpf(2) ** -100)


def test_unresolvable_near_double_root():
    c = PrecisionContext(64)
    with c.workprec():
        d = mpf(2) ** -20
        p = RealPoly([1 + d, -2, 1])  # (x - 1)^2 + d: above eps, below sqrt(eps)
    with pytest.raises(PrecisionExhausted):
        real_roots(p, (0, 2), c)


def test_polish_root(ctx):
    with ctx.workprec():
        assert close(polish_root(RealPoly([-2, 0, 1]), mpf("1.4"), ctx), mp.sqrt(2), ctx.eps)
    assert close(polish_root(RealPoly([0, -1, 0, 1]), mpf("0.9"), ctx), 1, ctx.eps)


def test_polish_root_diverges(ctx):
    with pytest.raises(Diverged):
        polish_root(RealPoly([1, 0, 1]), mpf("0.1"), ctx)


@given(st.lists(st.integers(-40, 40), min_size=1, max_size=5, unique=True))
def test_roots_of_products_of_linears(rts):
    c = PrecisionContext(128)
    p = RealPoly([1])
    for v in rts:
        p = p * RealPoly([-v, 1])
    found = real_roots(p, (-mp.inf, mp.inf), c)
    assert [int(mp.nint(v)) for v in found.values] == sorted(rts)
    for root in found:
        assert root.residual <= c.eps * p.scale(root.value)
        again = polish_root(p, root.value, c)
        assert abs(again - root.value) <= 2 * c.eps * max(1, abs(root.value))
