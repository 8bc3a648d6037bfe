from fractions import Fraction

import pytest
from hypothesis import given, strategies as st
from mpmath import mp, mpf

from rcf.elliptic import ellK, modulus_from_r
from rcf.errors import DomainError, NonConvergent
from rcf.qseries import Nome, as_nome, f_minus, m_building, phi, phi_cap, psi, qpoch, theta
from conftest import close


def test_qpoch_trivial(ctx):
    assert qpoch(0, mpf("0.5"), None, ctx) == 1
    with ctx.workprec():
        assert close(qpoch(mpf("0.3"), mpf("0.3"), 1, ctx), mpf("0.7"), ctx.eps)
    assert f_minus(0, ctx) == 1 and phi_cap(0, ctx) == 1


def test_qpoch_matches_mpmath(ctx):
    with ctx.workprec():
        for q in (mpf("0.1"), mpf("0.45"), mp.exp(-mp.pi)):
            assert close(f_minus(q, ctx), mp.qp(q), 10 * ctx.eps)
            assert close(phi_cap(q, ctx), mp.qp(-q, q), 10 * ctx.eps)


def test_eta_at_exp_minus_2pi_through_k(ctx):
    sp = modulus_from_r(4, ctx)
    with ctx.workprec():
        nome = sp.nome
        expected = (mp.cbrt(2) / mp.sqrt(mp.pi) * nome.power(Fraction(-1, 24)) * mp.root(sp.k, 12)
                    * mp.cbrt(sp.kprime) * mp.sqrt(ellK(sp.k, ctx)))
        assert close(f_minus(nome, ctx), expected, 10 * ctx.eps)


def test_phi_cap_at_r2_through_k(ctx):
    sp = modulus_from_r(2, ctx)
    with ctx.workprec():
        rhs = mp.root(2, 6) ** -1 * sp.nome.power(Fraction(-1, 24)) * mp.root(sp.k, 12) / mp.root(sp.kprime, 6)
        assert close(phi_cap(sp.nome, ctx), rhs, 10 * ctx.eps)


@pytest.mark.parametrize("q", ["0.1", "0.2", "0.3", "0.4", "0.5"])
def test_euler_identity(ctx, q):
    with ctx.workprec():
        q = mpf(q)
        assert close(phi_cap(q, ctx) * qpoch(q, q * q, None, ctx), 1, 10 * ctx.eps)


def test_theta_against_mpmath(ctx):
    with ctx.workprec():
        for q in (mpf("0.05"), mpf("0.3"), mp.exp(-mp.pi)):
            for j in (2, 3, 4):
                assert close(theta(j, q, ctx), mp.jtheta(j, 0, q), 10 * ctx.eps)


def test_theta3_golden(ctx):
    with ctx.workprec():
        t3 = theta(3, mp.exp(-mp.pi), ctx)
        assert close(t3 ** 2, 2 * ellK(mp.sqrt(2) / 2, ctx) / mp.pi, 10 * ctx.eps)
    assert theta(3, 0, ctx) == 1


def test_jacobi_quartic(ctx):
    with ctx.workprec():
        q = mpf("0.1")
        assert close(theta(3, q, ctx) ** 4, theta(2, q, ctx) ** 4 + theta(4, q, ctx) ** 4, 10 * ctx.eps)


def test_psi_phi_at_zero(ctx):
    assert psi(0, ctx) == 1 and phi(0, ctx) == 1


def test_m_building_is_psi_scaled(ctx):
    with ctx.workprec():
        q = mpf("0.2")
        assert close(m_building(q, ctx), q ** (mpf(1) / 8) * psi(q, ctx), 10 * ctx.eps)


def test_nome_fractional_powers(ctx):
    nome = Nome.from_r(1, ctx)
    with ctx.workprec():
        assert close(nome.power(Fraction(1, 24)), mp.exp(-mp.pi / 24), ctx.eps)
        assert close(nome.scaled(Fraction(1, 5)).value, mp.exp(-mp.pi / 5), ctx.eps)
        assert nome.power(2) == nome.value ** 2


def test_domain_errors(ctx):
    with pytest.raises(DomainError):
        as_nome(mpf("1.2"))
    with pytest.raises(DomainError):
        f_minus(-0.1, ctx)
    with pytest.raises(DomainError):
        theta(1, 0.1, ctx)
    with pytest.raises(NonConvergent):
        f_minus(mpf("0.95"), ctx)


@given(st.fractions(min_value=Fraction(1, 100), max_value=Fraction(4, 5)))
def test_euler_identity_property(q):
    from rcf.numerics import PrecisionContext
    c = PrecisionContext(128)
    with c.workprec():
        qv = mpf(q.numerator) / q.denominator
        assert close(phi_cap(qv, c) * qpoch(qv, qv * qv, None, c), 1, 100 * c.eps)
