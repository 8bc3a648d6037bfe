"""Closed-form evaluations of the fractions through singular moduli.

Each ``*_closed`` / ``*_chain`` function evaluates a fraction at
``q = exp(-pi*sqrt(r))`` from ``k_r`` (and moduli at ``25r``, ``9r``, ``4r``)
and refuses to return unless the result matches the direct continued
fraction.  Where a formula needs a root of a polynomial, the root is chosen
next to an independently computed value and certified by its residual.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, mpf

from .cfrac import FractionKind, fraction_direct
from .elliptic import (Modulus, SingularPoint, ellK, modulus_from_r, multiplier, parse_r,
                       r_from_modulus)
from .errors import ChainInconsistent, DomainError, NoMatchingRoot
from .numerics import DEFAULT_CONTEXT, PrecisionContext, RealPoly, RootSet, real_roots
from .qseries import Nome, f_minus

__all__ = [
    "RRChain",
    "RRParam",
    "HChain",
    "CubicChain",
    "rr_from_invariant",
    "m5_polynomial",
    "m5_polyroot",
    "rr_chain",
    "rr_param",
    "chain_from_L",
    "L_from_w",
    "p_from_kstar",
    "p_param_residuals",
    "p_param_roundtrip",
    "p_polynomial",
    "x_polynomial",
    "w_sextic",
    "w_sextic_solve",
    "c_invariant",
    "g_sextic",
    "g_sextic_residual",
    "rr_deriv_closed",
    "rr_deriv_quotient_form",
    "k_from_h",
    "h_closed",
    "cubic_closed",
    "cubic_w_from_v",
    "k81_from_v3",
    "s_closed",
    "q_closed",
    "m_closed",
    "closed_form",
    "solve_equation",
]

ROOT_MATCH = mpf("1e-3")
CHAIN_SLACK = 1000


def _close(a, b, ctx, factor=CHAIN_SLACK):
    return abs(a - b) <= ctx.eps * factor * max(1, abs(b))


def _require(a, b, ctx, what, factor=CHAIN_SLACK):
    if not _close(a, b, ctx, factor):
        raise ChainInconsistent(
            f"{what}: {mp.nstr(a, 20)} vs {mp.nstr(b, 20)} (diff {mp.nstr(abs(a - b), 5)})")


def _sqrt(x, what="radicand"):
    if x < 0:
        raise DomainError(f"negative {what}: {mp.nstr(x, 10)}")
    return mp.sqrt(x)


def _root(x, n, what="radicand"):
    if x < 0:
        raise DomainError(f"negative {what}: {mp.nstr(x, 10)}")
    return mp.root(x, n)


# ---------------------------------------------------------------------------
# Rogers-Ramanujan
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RRChain:
    r: Fraction | mpf
    k: mpf
    kprime: mpf
    k25: mpf
    kprime25: mpf
    M5: mpf
    a_r: mpf
    R: mpf

    def modular_residual(self) -> mpf:
        """Degree-5 modular relation between ``k_r`` and ``k_25r``; zero up to rounding."""
        prod = self.k * self.k25 * self.kprime * self.kprime25
        return (self.k * self.k25 + self.kprime * self.kprime25
                + 2 * mp.cbrt(4) * mp.cbrt(prod) - 1)


@dataclass(frozen=True)
class RRParam:
    """The auxiliary symbols that parametrize ``(k_r, k_25r)``.

    ``w**2 = k_r k_25r``; ``L`` and ``M`` parametrize ``w``; ``t`` and
    ``y = M/L`` are the intermediate ratios; ``p``, ``W`` and ``T`` give the
    second parametrization; ``kstar = k_r / w`` and ``x = sqrt(kstar)``;
    ``c`` is the coefficient invariant and ``G`` the cube root of ``a_r``.
    """

    k: mpf
    w: mpf
    L: mpf | None = None
    M: mpf | None = None
    t: mpf | None = None
    y: mpf | None = None
    p: mpf | None = None
    W: mpf | None = None
    T: mpf | None = None
    kstar: mpf | None = None
    x: mpf | None = None
    c: mpf | None = None
    G: mpf | None = None


def rr_from_invariant(a) -> mpf:
    """``R`` from ``a = 1/R^5 - 11 - R^5``.

    ``R^5`` is the positive root of ``x^2 + (11 + a) x - 1``; written as
    ``2 / ((11 + a) + sqrt(a^2 + 22a + 125))`` to avoid cancellation.
    """
    b = 11 + a
    return mp.root(2 / (b + _sqrt(a * a + 22 * a + 125)), 5)


def m5_polynomial(m: Modulus) -> RealPoly:
    """``(5x - 1)^5 (1 - x) - 256 k^2 k'^2 x``, whose root in (1/5, 1) is ``M_5(r)``."""
    lin = RealPoly([-1, 5])
    return lin ** 5 * RealPoly([1, -1]) - RealPoly([0, 256 * m.k ** 2 * m.kprime ** 2])


def m5_polyroot(m: Modulus, oracle, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpf:
    """The root of :func:`m5_polynomial` in (1/5, 1) nearest ``oracle``."""
    with ctx.workprec():
        roots = real_roots(m5_polynomial(m), (mpf(1) / 5, 1), ctx)
        return _select(roots, oracle, "M_5 sextic")


def _select(roots: RootSet, oracle, what, key=None) -> mpf:
    if not len(roots):
        raise NoMatchingRoot(f"{what}: no real roots")
    key = key or (lambda v: abs(v - oracle))
    best = min(roots.values, key=key)
    if key(best) > ROOT_MATCH:
        raise NoMatchingRoot(f"{what}: nearest root {mp.nstr(best, 12)} misses {mp.nstr(oracle, 12)}")
    return best


def _rr_pair(r, ctx):
    r = parse_r(r)
    return r, modulus_from_r(r, ctx), modulus_from_r(r, ctx, scale=25)


def rr_chain(r, ctx: PrecisionContext = DEFAULT_CONTEXT) -> RRChain:
    """``R(exp(-pi sqrt(r)))`` from ``k_r``, ``k_25r`` and the multiplier ``M_5``."""
    r, sp, sp25 = _rr_pair(r, ctx)
    with ctx.workprec():
        k, kp, k25, kp25 = sp.k, sp.kprime, sp25.k, sp25.kprime
        m5 = multiplier(5, r, ctx).value
        poly = m5_polynomial(sp.modulus)
        if abs(poly(m5)) > ctx.tolerance() * poly.scale(m5):
            raise ChainInconsistent(f"M_5({r}) = {mp.nstr(m5, 15)} does not solve its sextic")
        a = (kp / kp25) ** 2 * mp.sqrt(k / k25) / m5 ** 3
        R = rr_from_invariant(a)
        _require(R, fraction_direct(FractionKind.RR, sp.nome, ctx), ctx, f"R at r={r}")
        return RRChain(r, k, kp, k25, kp25, m5, a, R)


def L_from_w(w) -> mpf:
    return -9 + 9 * w ** 2 + mp.sqrt(3) * mp.sqrt(27 + 74 * w ** 2 + 27 * w ** 4)


def M_from_w(w) -> mpf:
    return (9 - 9 * w ** 2 + mp.sqrt(81 + 222 * w ** 2 + 81 * w ** 4)) / 64


def w_from_L(L) -> mpf:
    return _sqrt(L * (18 + L) / (6 * (64 + 3 * L)))


def L_ratio(L) -> mpf:
    """``sqrt(w / k_r) = sqrt(k_25r / w)`` as a function of ``L``."""
    M = (18 + L) / (64 + 3 * L)
    y6 = _root(L / M, 6)
    d = y6 - 4 / y6
    return mp.sqrt(4 + mpf(2) / 3 * d ** 2) / 2 + mp.sqrt(mpf(2) / 3) * d / 2


def p_from_kstar(kstar) -> mpf:
    """Invert ``sqrt(6 kstar) = (-1 + 4p^2 + sqrt(1 - 2p^2 + 16p^4)) / p`` for ``p > 0``.

    Squaring leaves ``8 s p^2 - (s^2 - 6) p - 2 s = 0`` with ``s = sqrt(6 kstar)``.
    """
    s = _sqrt(6 * kstar)
    b = s * s - 6
    return (b + mp.sqrt(b * b + 64 * s * s)) / (16 * s)


def _p_symbols(p):
    p2 = p * p
    W = -1 + 4 * p2 + mp.sqrt(1 - 2 * p2 + 16 * p2 * p2)
    p6 = p2 ** 3
    T = -1 + 64 * p6 + mp.sqrt(1 + 88 * p6 + 4096 * p6 * p6)
    return W, T


def rr_param(r, ctx: PrecisionContext = DEFAULT_CONTEXT) -> RRParam:
    """All parametrization symbols at ``r``, from the singular moduli ``k_r``, ``k_25r``."""
    r, sp, sp25 = _rr_pair(r, ctx)
    with ctx.workprec():
        k, kp, k25 = sp.k, sp.kprime, sp25.k
        w = mp.sqrt(k * k25)
        L, M = L_from_w(w), M_from_w(w)
        kstar = k / w
        p = p_from_kstar(kstar)
        W, T = _p_symbols(p)
        c = c_invariant(sp.modulus, kstar)
        m5 = ellK(k25, ctx) / ellK(k, ctx)
        return RRParam(k=k, w=w, L=L, M=M, t=(w - k) / mp.sqrt(k * w), y=M / L,
                       p=p, W=W, T=T, kstar=kstar, x=mp.sqrt(kstar), c=c,
                       G=mp.cbrt(c / m5 ** 3))


def chain_from_L(L, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Start from ``L``: build ``w``, ``k_r``, ``k_25r``, recover ``r`` and ``R``.

    Returns ``(RRParam, r, R)``; ``r`` is generally irrational and is found
    from ``r = (K(k') / K(k))**2``.
    """
    with ctx.workprec():
        L = mpf(L.numerator) / L.denominator if isinstance(L, Fraction) else mpf(L)
        if L <= 0:
            raise DomainError("L must be positive")
        w = w_from_L(L)
        M = (18 + L) / (64 + 3 * L)
        ratio = L_ratio(L) ** 2
        k, k25 = w / ratio, w * ratio
        r = r_from_modulus(k, ctx)
        m5 = ellK(k25, ctx) / ellK(k, ctx)
        A = k ** 3 * (1 - k ** 2) / m5 ** 3 / (k ** 2 * w - w ** 5)
        R = rr_from_invariant(A)
        _require(R, fraction_direct(FractionKind.RR, Nome.from_r(r, ctx), ctx), ctx,
                 f"R at r[L={mp.nstr(L, 8)}]")
        kstar = k / w
        param = RRParam(k=k, w=w, L=L, M=M, t=(w - k) / mp.sqrt(k * w), y=M / L,
                        kstar=kstar, x=mp.sqrt(kstar), G=mp.cbrt(A))
        return param, r, R


def p_param_residuals(p, ctx: PrecisionContext = DEFAULT_CONTEXT) -> dict:
    """Relative residuals of every relation in the ``p`` parametrization.

    ``kstar``, ``w``, ``W`` and ``T`` are built from ``p``; ``k = kstar w``.
    """
    with ctx.workprec():
        p = mpf(p)
        if p <= 0:
            raise DomainError("p must be positive")
        W, T = _p_symbols(p)
        if W <= 0 or T <= 0:
            raise DomainError(f"W or T not positive at p = {mp.nstr(p, 10)}")
        kstar = (W / (mp.sqrt(6) * p)) ** 2
        w = mp.sqrt(6) ** 3 * p ** 3 / T
        k = kstar * w
        U = W * (W + 2) / (8 * W + 6)
        rel = lambda a, b: abs(a - b) / max(1, abs(b))  # noqa: E731
        poly = p_polynomial(k)
        w_eq = [-108 * k ** 2 * U ** 2 * mp.sqrt(U),
                mp.sqrt(6) * k * W ** 2 * (1 - 64 * U ** 3),
                3 * W ** 4 * mp.sqrt(U)]
        return {
            "p_from_T": rel(mp.root(T * (2 + T) / (216 + 128 * T), 6), p),
            "p_from_W": rel(mp.sqrt(W * (2 + W) / (6 + 8 * W)), p),
            "w_from_W": rel(6 * k * (W + 2) / ((6 + 8 * W) * W), w),
            "T_from_W": rel(mp.sqrt(6) * W ** 2 / k * mp.sqrt(U), T),
            "W_equation": abs(sum(w_eq)) / sum(abs(t) for t in w_eq),
            "p_polynomial": abs(poly(p)) / poly.scale(p),
        }


def p_param_roundtrip(p, ctx: PrecisionContext = DEFAULT_CONTEXT) -> RRParam:
    """Build the ``p`` parametrization and check that all of its relations close."""
    res = p_param_residuals(p, ctx)
    bad = {name: v for name, v in res.items() if v > ctx.tolerance()}
    if bad:
        raise ChainInconsistent("p parametrization residuals: " +
                                ", ".join(f"{n}={mp.nstr(v, 5)}" for n, v in bad.items()))
    with ctx.workprec():
        p = mpf(p)
        W, T = _p_symbols(p)
        kstar = (W / (mp.sqrt(6) * p)) ** 2
        w = mp.sqrt(6) ** 3 * p ** 3 / T
        return RRParam(k=kstar * w, w=w, p=p, W=W, T=T, kstar=kstar, x=mp.sqrt(kstar))


def p_polynomial(k) -> RealPoly:
    """Degree-12 polynomial in ``p`` with coefficients in ``k_r``."""
    s6 = mp.sqrt(6)
    k2 = k * k
    b = s6 * k * (1 - k2)
    return RealPoly([k2, 2 * b, -24 * k2, -10 * b, 240 * k2, 32 * b,
                     54 - 1388 * k2 + 54 * k2 * k2, -128 * b, 3840 * k2, 640 * b,
                     -6144 * k2, -2048 * b, 4096 * k2])


def x_polynomial(k, as_printed: bool = False) -> RealPoly:
    """Degree-12 polynomial satisfied by ``x = (k_r / k_25r)**(1/4)``.

    The coefficient of ``x^4`` is ``15 k^2``; ``as_printed=True`` uses the
    bare ``15`` that breaks the polynomial's ``x -> -1/x`` symmetry.
    """
    k2 = k * k
    b = (1 - k2) * k
    c4 = mpf(15) if as_printed else 15 * k2
    return RealPoly([k2, 4 * b, -6 * k2, 20 * b, c4, -16 * b,
                     16 - 52 * k2 + 16 * k2 * k2, 16 * b, 15 * k2, -20 * b,
                     -6 * k2, -4 * b, k2])


def w_sextic(k) -> RealPoly:
    """Sextic in ``w`` whose relevant root is ``sqrt(k_r k_25r)``."""
    k2 = k * k
    return RealPoly([k2 ** 3, k ** 3 * (-16 + 10 * k2), 15 * k2 * k2, -20 * k ** 3,
                     15 * k2, k * (10 - 16 * k2), 1])


def w_sextic_solve(r, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpf:
    """Solve the ``w`` sextic at ``k_r``; the root is matched against ``k_25r``."""
    r, sp, sp25 = _rr_pair(r, ctx)
    with ctx.workprec():
        k = sp.k
        roots = real_roots(w_sextic(k), (0, 1), ctx)
        return _select(roots, None, "w sextic", key=lambda v: abs(v * v / k - sp25.k))


def c_invariant(m: Modulus, kstar) -> mpf:
    """``c_r = k'^2 kstar^5 / (kstar^4 - k^2)``."""
    return m.kprime ** 2 * kstar ** 5 / (kstar ** 4 - m.k ** 2)


def g_sextic(m: Modulus, c) -> RealPoly:
    """Sextic in ``G`` with coefficients in ``c_r`` and ``k_r``."""
    t = mp.cbrt(c)
    return RealPoly([3125 * t ** 6, -6250 * t ** 5, 4375 * t ** 4, -1500 * t ** 3,
                     275 * t ** 2, 2 * t * (-13 + 128 * m.kprime ** 2 * m.k ** 2), 1])


def g_sextic_residual(r, ctx: PrecisionContext = DEFAULT_CONTEXT, kstar_reading: str = "ratio") -> mpf:
    """Scaled residual of the ``G`` sextic at ``G = (1/R^5 - 11 - R^5)**(1/3)``.

    ``R`` is the direct continued fraction.  ``kstar_reading`` selects
    ``kstar = sqrt(k_r / k_25r)`` (``"ratio"``, which is ``k_r / w``) or
    ``kstar = 1 / k_25r`` (``"reciprocal"``).
    """
    r, sp, sp25 = _rr_pair(r, ctx)
    with ctx.workprec():
        if kstar_reading == "ratio":
            kstar = mp.sqrt(sp.k / sp25.k)
        elif kstar_reading == "reciprocal":
            kstar = 1 / sp25.k
        else:
            raise DomainError(f"unknown kstar reading {kstar_reading!r}")
        R = fraction_direct(FractionKind.RR, sp.nome, ctx)
        G = mp.cbrt(1 / R ** 5 - 11 - R ** 5)
        poly = g_sextic(sp.modulus, c_invariant(sp.modulus, kstar))
        return poly(G) / poly.scale(G)


def rr_deriv_quotient_form(r, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpf:
    """``R'(q) = q^(-5/6) f(-q)^4 R (1/R^5 - 11 - R^5)^(1/6) / 5`` with ``R`` direct."""
    sp = modulus_from_r(r, ctx)
    with ctx.workprec():
        nome = sp.nome
        R = fraction_direct(FractionKind.RR, nome, ctx)
        return (nome.power(Fraction(-5, 6)) * f_minus(nome, ctx) ** 4 * R
                * mp.root(1 / R ** 5 - 11 - R ** 5, 6) / 5)


def rr_deriv_closed(r, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpf:
    """``R'(exp(-pi sqrt(r)))`` from the moduli at ``r`` and ``25r``.

    Cross-checked against :func:`rr_deriv_quotient_form`.
    """
    chain = rr_chain(r, ctx)
    sp = modulus_from_r(r, ctx)
    with ctx.workprec():
        k, kp, k25, kp25 = chain.k, chain.kprime, chain.k25, chain.kprime25
        pre = (mp.cbrt(2) ** 4 * k ** (mpf(5) / 12) * kp ** (mpf(5) / 3)
               / (5 * mp.root(k25, 12) * mp.cbrt(kp25) * mp.sqrt(chain.M5)))
        value = pre * chain.R * ellK(k, ctx) ** 2 / (mp.pi ** 2 * sp.q)
        _require(value, rr_deriv_quotient_form(r, ctx), ctx, f"R' at r={chain.r}")
        return value


# ---------------------------------------------------------------------------
# Ramanujan-Goellnitz-Gordon
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HChain:
    r: Fraction | mpf
    P: mpf
    H: mpf


def k_from_h(h) -> mpf:
    """``k_r = 4 (H - H^3) / (1 + H^2)^2``."""
    return 4 * (h - h ** 3) / (1 + h * h) ** 2


def h_closed(r, ctx: PrecisionContext = DEFAULT_CONTEXT) -> HChain:
    """``H = -P + sqrt(P^2 + 1)`` with ``P = k_r / (1 - k'_r)``."""
    r = parse_r(r)
    sp = modulus_from_r(r, ctx)
    with ctx.workprec():
        # k / (1 - k') = (1 + k') / k
        P = (1 + sp.kprime) / sp.k
        H = 1 / (P + mp.sqrt(P * P + 1))
        _require(H, fraction_direct(FractionKind.H, sp.nome, ctx), ctx, f"H at r={r}")
        _require(k_from_h(H), sp.k, ctx, f"k from H at r={r}")
        return HChain(r, P, H)


# ---------------------------------------------------------------------------
# Ramanujan's cubic fraction
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CubicChain:
    """The cubic fraction ``V`` and its companions at ``r``.

    ``T = sqrt(1 - 8V^3)``, ``W3`` solves ``2V^3 = sqrt(W)/(1 + sqrt(W))^2``,
    ``w3 = k_r k_9r``, ``X = sqrt(W3) = (1 - T)/(1 + T)``, ``Z = W3**(1/12)``
    and ``s = sqrt(2V^3)``.
    """

    r: Fraction | mpf
    k: mpf
    kprime: mpf
    k9: mpf
    kprime9: mpf
    V: mpf
    T: mpf
    W3: mpf
    w3: mpf
    X: mpf
    Z: mpf
    s: mpf

    def T_residual(self) -> mpf:
        """``k^2 - (1-T)(3+T)^3 / ((1+T)(3-T)^3)``."""
        T = self.T
        return self.k ** 2 - (1 - T) * (3 + T) ** 3 / ((1 + T) * (3 - T) ** 3)

    def modular_residual(self) -> mpf:
        """``sqrt(k k9) + sqrt(k' k'9) - 1``."""
        return mp.sqrt(self.k * self.k9) + mp.sqrt(self.kprime * self.kprime9) - 1


def cubic_w_from_v(v) -> mpf:
    """``k_r k_9r`` from ``V``, rearranged to avoid cancellation for small ``V``.

    With ``u = V^3`` and ``T = sqrt(1 - 8u)`` the quotient equals
    ``(4u (1 - 2u + T) / (1 - 4u - 8u^2 + T))**2``.
    """
    u = v ** 3
    T = _sqrt(1 - 8 * u)
    return (4 * u * (1 - 2 * u + T) / (1 - 4 * u - 8 * u * u + T)) ** 2


def W_from_w(w) -> mpf:
    sw = mp.sqrt(w)
    return 2 - 3 * sw + 2 * w - 2 * (1 - sw) * mp.sqrt(1 - sw + w)


def cubic_closed(r, ctx: PrecisionContext = DEFAULT_CONTEXT) -> CubicChain:
    """``V(exp(-pi sqrt(r)))`` from ``k_r`` and ``k_9r``, with its companion symbols."""
    r = parse_r(r)
    sp, sp9 = modulus_from_r(r, ctx), modulus_from_r(r, ctx, scale=9)
    with ctx.workprec():
        k, kp, k9, kp9 = sp.k, sp.kprime, sp9.k, sp9.kprime
        V = mp.root(k9, 4) * mp.root(kp, 6) / (mp.cbrt(2) * mp.root(k, 12) * mp.sqrt(kp9))
        V3 = V ** 3
        T = _sqrt(1 - 8 * V3, "1 - 8V^3")
        # smaller root of 2V^3 y^2 + (4V^3 - 1) y + 2V^3 = 0; the roots multiply to 1
        X = 4 * V3 / (1 - 4 * V3 + T)
        W3 = X * X
        w3 = cubic_w_from_v(V)
        _require(V, fraction_direct(FractionKind.V, sp.nome, ctx), ctx, f"V at r={r}")
        _require(X, (1 - T) / (1 + T), ctx, "sqrt(W) against T")
        _require(w3, k * k9, ctx, "k k9 from V")
        _require(W3, W_from_w(w3), ctx, "W from w", factor=CHAIN_SLACK * 100)
        chain = CubicChain(r, k, kp, k9, kp9, V, T, W3, w3, X, mp.root(W3, 12), mp.sqrt(2 * V3))
        if abs(chain.T_residual()) > ctx.eps * CHAIN_SLACK:
            raise ChainInconsistent(f"T relation fails at r={r}")
        if abs(chain.modular_residual()) > ctx.eps * CHAIN_SLACK:
            raise ChainInconsistent(f"degree-3 modular relation fails at r={r}")
        return chain


def k81_from_v3(r, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpf:
    """``k_81r`` from ``k_r`` and ``V(q^3)``; ``V(q^3)`` is the direct fraction."""
    r = parse_r(r)
    sp = modulus_from_r(r, ctx)
    with ctx.workprec():
        v = fraction_direct(FractionKind.V, sp.nome.scaled(3), ctx)
        T = _sqrt(1 - 8 * v ** 3)
        k81 = ((1 + 2 * v * v - T) / (1 + 2 * v * v + T)) ** 2 * sp.k
        _require(k81, modulus_from_r(r, ctx, scale=81).k, ctx, f"k_81r at r={r}")
        return k81


# ---------------------------------------------------------------------------
# S, Q and M
# ---------------------------------------------------------------------------

def s_closed(r, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpf:
    """``S = k_r**(1/4) / sqrt(2)``."""
    r = parse_r(r)
    sp = modulus_from_r(r, ctx)
    with ctx.workprec():
        S = mp.root(sp.k, 4) / mp.sqrt(2)
        _require(S, fraction_direct(FractionKind.S, sp.nome, ctx), ctx, f"S at r={r}")
        return S


def q_closed(r, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpf:
    """``Q = K(k_4r) sqrt(k_4r) / pi = K(k_r) k_r / (2 pi)``."""
    r = parse_r(r)
    sp, sp4 = modulus_from_r(r, ctx), modulus_from_r(r, ctx, scale=4)
    with ctx.workprec():
        via_4r = ellK(sp4.k, ctx) * mp.sqrt(sp4.k) / mp.pi
        via_r = ellK(sp.k, ctx) * sp.k / (2 * mp.pi)
        _require(via_4r, via_r, ctx, f"two closed forms of Q at r={r}")
        _require(via_r, fraction_direct(FractionKind.Q, sp.nome, ctx), ctx, f"Q at r={r}")
        return via_r


def m_closed(r, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpf:
    """``M(q) = theta_2(q^(1/2)) / 2 = sqrt(k_{r/4} K(k_{r/4}) / (2 pi))``."""
    r = parse_r(r)
    sp, quarter = modulus_from_r(r, ctx), modulus_from_r(r, ctx, scale=Fraction(1, 4))
    with ctx.workprec():
        M = mp.sqrt(quarter.k * ellK(quarter.k, ctx) / (2 * mp.pi))
        _require(M, fraction_direct(FractionKind.M, sp.nome, ctx), ctx, f"M at r={r}")
        return M


def closed_form(kind, r, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpf:
    """Elliptic closed form of fraction ``kind`` at ``q = exp(-pi sqrt(r))``."""
    kind = FractionKind.parse(kind)
    if kind is FractionKind.RR:
        return rr_chain(r, ctx).R
    if kind is FractionKind.H:
        return h_closed(r, ctx).H
    if kind is FractionKind.V:
        return cubic_closed(r, ctx).V
    if kind is FractionKind.S:
        return s_closed(r, ctx)
    if kind is FractionKind.Q:
        return q_closed(r, ctx)
    return m_closed(r, ctx)


# ---------------------------------------------------------------------------
# polynomial solving front end
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Solution:
    name: str
    polynomial: RealPoly
    roots: RootSet
    selected: mpf
    oracle: mpf


EQUATIONS = ("eq17", "eq36", "eq37", "eq39a", "eq39b")


def solve_equation(name: str, r, ctx: PrecisionContext = DEFAULT_CONTEXT) -> Solution:
    """Solve one of the named polynomial equations at ``r``.

    ``eq17``: ``M_5`` sextic; ``eq36``: ``p`` dodecic; ``eq37``: ``x`` dodecic;
    ``eq39a``: ``G`` sextic; ``eq39b``: ``w`` sextic.  The selected root is
    the one nearest an oracle value computed from the singular moduli.
    """
    r, sp, sp25 = _rr_pair(r, ctx)
    with ctx.workprec():
        k, k25 = sp.k, sp25.k
        if name == "eq17":
            poly, interval = m5_polynomial(sp.modulus), (mpf(1) / 5, 1)
            oracle = ellK(k25, ctx) / ellK(k, ctx)
        elif name == "eq36":
            poly, interval = p_polynomial(k), (0, mp.inf)
            oracle = p_from_kstar(mp.sqrt(k / k25))
        elif name == "eq37":
            poly, interval = x_polynomial(k), (0, mp.inf)
            oracle = mp.root(k / k25, 4)
        elif name == "eq39a":
            poly = g_sextic(sp.modulus, c_invariant(sp.modulus, mp.sqrt(k / k25)))
            interval = (0, mp.inf)
            R = fraction_direct(FractionKind.RR, sp.nome, ctx)
            oracle = mp.cbrt(1 / R ** 5 - 11 - R ** 5)
        elif name == "eq39b":
            poly, interval = w_sextic(k), (0, 1)
            oracle = mp.sqrt(k * k25)
        else:
            raise DomainError(f"unknown equation {name!r}; choose from {', '.join(EQUATIONS)}")
        roots = real_roots(poly, interval, ctx)
        selected = _select(roots, oracle, name, key=lambda v: abs(v - oracle) / max(1, abs(oracle)))
        return Solution(name, poly, roots, selected, oracle)
