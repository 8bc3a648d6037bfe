"""Catalog of identities and evaluations, and a runner that reports residuals.

Each :class:`IdentityCheck` evaluates a left and a right side on every
binding of its grid.  The residual is ``|lhs - rhs| / max(1, |rhs|)``; a
check that compares several pairs reports the worst one.  Checks whose
printed form is known to be wrong carry ``expected=KNOWN_DISCREPANCY`` and
are reported as confirmed (or flagged if they unexpectedly pass) instead of
failing the suite.
"""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from mpmath import mp, mpf

from . import closed_forms as cf
from .cfrac import CFSpec, FractionKind, eval_cf, fraction_direct, fraction_oracle
from .elliptic import ellK, gamma, landen_4r, modulus_from_r, modulus_product_form, multiplier
from .errors import CatalogError, RCFError, UnknownCheck
from .numerics import DEFAULT_CONTEXT, PrecisionContext, sum_to_tolerance
from .qseries import Nome, f_minus, m_building, phi, phi_cap, psi, qpoch, theta

__all__ = [
    "PASS",
    "FAIL",
    "KNOWN_DISCREPANCY",
    "KNOWN_DISCREPANCY_CONFIRMED",
    "SURPRISE_PASS",
    "IdentityCheck",
    "CheckResult",
    "SuiteReport",
    "build_catalog",
    "CATALOG",
    "run_check",
    "run_suite",
    "residual",
]

PASS = "PASS"
FAIL = "FAIL"
KNOWN_DISCREPANCY = "KNOWN_DISCREPANCY"
KNOWN_DISCREPANCY_CONFIRMED = "KNOWN_DISCREPANCY_CONFIRMED"
SURPRISE_PASS = "SURPRISE_PASS"

R_GRID = tuple({"r": Fraction(r)} for r in ("1/4", "1/2", "1", "2", "3", "4"))


@dataclass(frozen=True)
class IdentityCheck:
    id: str
    description: str
    formula: str
    tags: tuple[str, ...]
    grid: tuple[dict, ...]
    evaluate: Callable[[dict, PrecisionContext], object]
    expected: str = PASS
    tolerance_factor: int = 100

    def tolerance(self, ctx: PrecisionContext) -> mpf:
        return ctx.tolerance(self.tolerance_factor)

    def matches(self, selector: str | None) -> bool:
        return selector in (None, "", "all", self.id) or selector in self.tags


@dataclass(frozen=True)
class CheckResult:
    id: str
    binding: dict
    residual: mpf
    tolerance: mpf
    status: str
    lhs: mpf | None = None
    rhs: mpf | None = None
    error: str | None = None

    def params(self) -> dict:
        return {k: _label(v) for k, v in self.binding.items()}


def _label(v) -> str:
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, str):
        return v
    return mp.nstr(v, 20)


def residual(lhs, rhs) -> mpf:
    return abs(lhs - rhs) / max(1, abs(rhs))


def _status(expected: str, res, tol) -> str:
    ok = res <= tol
    if expected == KNOWN_DISCREPANCY:
        return SURPRISE_PASS if ok else KNOWN_DISCREPANCY_CONFIRMED
    return PASS if ok else FAIL


def build_catalog(checks) -> dict[str, IdentityCheck]:
    """Validate and index ``checks``; ids must be unique and grids nonempty."""
    out = {}
    for check in checks:
        if check.id in out:
            raise CatalogError(f"duplicate check id {check.id!r}")
        if not check.grid:
            raise CatalogError(f"check {check.id!r} has an empty grid")
        if check.expected not in (PASS, KNOWN_DISCREPANCY):
            raise CatalogError(f"check {check.id!r}: bad expected status {check.expected!r}")
        out[check.id] = check
    return out


# ---------------------------------------------------------------------------
# helpers used by the catalog
# ---------------------------------------------------------------------------

_REALS = {
    "pi": lambda: mp.pi,
    "pi/2": lambda: mp.pi / 2,
    "2*pi": lambda: 2 * mp.pi,
    "sqrt(2*pi)": lambda: mp.sqrt(2 * mp.pi),
}


def _real(label) -> mpf:
    if isinstance(label, Fraction):
        return mpf(label.numerator) / label.denominator
    if label in _REALS:
        return _REALS[label]()
    return mpf(Fraction(label).numerator) / Fraction(label).denominator


def _sp(b, ctx, scale=1):
    return modulus_from_r(b["r"], ctx, scale=scale)


def _nome_at(a) -> Nome:
    """The nome ``exp(-a)``."""
    return Nome(mp.exp(-a), -a)


def _R(kind, nome, ctx):
    return fraction_direct(kind, nome, ctx)


def _poly_pair(poly, x):
    return poly(x) / poly.scale(x), mpf(0)


# --- Rogers-Ramanujan --------------------------------------------------------

def _rr_quotient(b, ctx):
    nome = _sp(b, ctx).nome
    R = _R(FractionKind.RR, nome, ctx)
    q5 = nome.scaled(Fraction(1, 5))
    return 1 / R - 1 - R, f_minus(q5, ctx) / (q5.value * f_minus(nome.scaled(5), ctx))


def _rr_quintic(b, ctx):
    nome = _sp(b, ctx).nome
    R = _R(FractionKind.RR, nome, ctx)
    return 1 / R ** 5 - 11 - R ** 5, (f_minus(nome, ctx) / f_minus(nome.scaled(5), ctx)) ** 6 / nome.value


def _phi_cap_elliptic(factor):
    def evaluate(b, ctx):
        sp = _sp(b, ctx)
        rhs = (factor * mp.root(2, 6) ** -1 * sp.nome.power(Fraction(-1, 24))
               * mp.root(sp.k, 12) / mp.root(sp.kprime, 6))
        return phi_cap(sp.nome, ctx), rhs
    return evaluate


def _eta_eighth(b, ctx):
    sp = _sp(b, ctx)
    rhs = (mp.cbrt(2) ** 8 / mp.pi ** 4 * sp.nome.power(Fraction(-1, 3)) * mp.cbrt(sp.k) ** 2
           * mp.cbrt(sp.kprime) ** 8 * ellK(sp.k, ctx) ** 4)
    return f_minus(sp.nome, ctx) ** 8, rhs


def _eta_q2_sixth(b, ctx):
    sp = _sp(b, ctx)
    rhs = 2 * sp.k * sp.kprime * ellK(sp.k, ctx) ** 3 / (mp.pi ** 3 * sp.nome.power(Fraction(1, 2)))
    return f_minus(sp.nome.scaled(2), ctx) ** 6, rhs


def _modulus_product(b, ctx):
    sp = _sp(b, ctx)
    return modulus_product_form(sp, ctx), sp.k


def _rr_closed(b, ctx):
    return cf.rr_chain(b["r"], ctx).R, _R(FractionKind.RR, _sp(b, ctx).nome, ctx)


def _rr_invariant(b, ctx):
    chain = cf.rr_chain(b["r"], ctx)
    return 1 / chain.R ** 5 - 11 - chain.R ** 5, chain.a_r


def _L_example(b, ctx):
    param, r, R = cf.chain_from_L(b["L"], ctx)
    w = mp.sqrt(mpf(11) / 78) / 3
    e = -4 * mp.root(mpf(11) / 13, 6) + mp.root(mpf(13) / 11, 6)
    f = e / mp.sqrt(6) + mp.sqrt(4 + mpf(2) / 3 * e * e) / 2
    return [(param.w, w), (param.w ** 2 / param.k, w * f * f), (param.k, w / f ** 2),
            (R, _R(FractionKind.RR, Nome.from_r(r, ctx), ctx))]


def _m5_sextic(b, ctx):
    sp = _sp(b, ctx)
    return _poly_pair(cf.m5_polynomial(sp.modulus), multiplier(5, b["r"], ctx).value)


def _k25_modular(b, ctx):
    return cf.rr_chain(b["r"], ctx).modular_residual(), mpf(0)


def _w_k_k25(b, ctx):
    sp, sp25 = _sp(b, ctx), _sp(b, ctx, 25)
    return sp.k, sp25.k, mp.sqrt(sp.k * sp25.k)


def _w_L_param(b, ctx):
    k, k25, w = _w_k_k25(b, ctx)
    L = cf.L_from_w(w)
    M = (18 + L) / (64 + 3 * L)
    d = mp.root(L / M, 6) - 4 * mp.root(M / L, 6)
    ratio = cf.L_ratio(L)
    side = mp.sqrt(mpf(2) / 3) * d
    return [(cf.w_from_L(L), w), (ratio, mp.sqrt(w / k)), (ratio, mp.sqrt(k25 / w)),
            (-(k - w) / mp.sqrt(k * w), side), ((k25 - w) / mp.sqrt(k25 * w), side)]


def _L_M_inverse(b, ctx):
    _, _, w = _w_k_k25(b, ctx)
    L = cf.L_from_w(w)
    return [(cf.M_from_w(w), (18 + L) / (64 + 3 * L)), (cf.w_from_L(L), w)]


def _t_forms(b, ctx):
    k, _, w = _w_k_k25(b, ctx)
    y = cf.M_from_w(w) / cf.L_from_w(w)
    return (w - k) / mp.sqrt(k * w), mp.sqrt(mpf(2) / 3) * (1 / mp.root(y, 6) - 4 * mp.root(y, 6))


def _M_over_L(b, ctx):
    k, _, w = _w_k_k25(b, ctx)
    s = mp.sqrt(81 + 222 * w ** 2 + 81 * w ** 4)
    base = (mp.sqrt(3) * (k - w) + mp.sqrt(3 * k * k + 26 * k * w + 3 * w * w)) / (8 * mp.sqrt(2 * k * w))
    return [(cf.M_from_w(w) / cf.L_from_w(w), base ** 6),
            ((9 - 9 * w ** 2 + s) / (-9 + 9 * w ** 2 + s) / 64, base ** 6),
            (mp.sqrt(6) * w / (-9 + 9 * w ** 2 + s), base ** 3)]


def _p_param_at_r(b, ctx):
    k, _, w = _w_k_k25(b, ctx)
    p = cf.p_from_kstar(k / w)
    built = cf.p_param_roundtrip(p, ctx)
    pairs = [(built.k, k), (built.w, w), (built.kstar * built.w, k)]
    pairs += [(v, mpf(0)) for v in cf.p_param_residuals(p, ctx).values()]
    return pairs


def _p_param_roundtrip(b, ctx):
    return [(v, mpf(0)) for v in cf.p_param_residuals(_real(b["p"]), ctx).values()]


def _p_dodecic(b, ctx):
    k, _, w = _w_k_k25(b, ctx)
    return _poly_pair(cf.p_polynomial(k), cf.p_from_kstar(k / w))


def _x_dodecic(b, ctx):
    k, k25, _ = _w_k_k25(b, ctx)
    return _poly_pair(cf.x_polynomial(k), mp.root(k / k25, 4))


def _x_dodecic_printed(b, ctx):
    k, k25, _ = _w_k_k25(b, ctx)
    return _poly_pair(cf.x_polynomial(k, as_printed=True), 1 / mp.sqrt(k25))


def _g_sextic(reading):
    def evaluate(b, ctx):
        return cf.g_sextic_residual(b["r"], ctx, kstar_reading=reading), mpf(0)
    return evaluate


def _g_cube(b, ctx):
    chain = cf.rr_chain(b["r"], ctx)
    k, k25, _ = _w_k_k25(b, ctx)
    c = cf.c_invariant(_sp(b, ctx).modulus, mp.sqrt(k / k25))
    return c / chain.M5 ** 3, chain.a_r


def _w_sextic(b, ctx):
    k, _, w = _w_k_k25(b, ctx)
    return _poly_pair(cf.w_sextic(k), w)


def _k_from_w(b, ctx):
    L = _real(b["L"])
    w = cf.w_from_L(L)
    k = w / cf.L_ratio(L) ** 2
    return _poly_pair(cf.w_sextic(k), w)


def _rr_deriv_forms(b, ctx):
    return cf.rr_deriv_closed(b["r"], ctx), cf.rr_deriv_quotient_form(b["r"], ctx)


def _rr_golden(b, ctx):
    sp = _sp(b, ctx)
    s5 = mp.sqrt(5)
    R = -mpf(1) / 2 - s5 / 2 + mp.sqrt((5 + s5) / 2)
    dR = (8 * mp.sqrt(mpf(2) / 5 * (9 + 5 * s5 - 2 * mp.sqrt(50 + 22 * s5)))
          * mp.exp(2 * mp.pi) / mp.pi ** 3 * gamma(mpf(5) / 4, ctx) ** 4)
    return [(_R(FractionKind.RR, sp.nome, ctx), R), (cf.rr_deriv_closed(b["r"], ctx), dR)]


def _gamma_K(b, ctx):
    return gamma(mpf(5) / 4, ctx) ** 4, mp.pi * ellK(mp.sqrt(2) / 2, ctx) ** 2 / 16


# --- H and theta functions --------------------------------------------------

def _h_closed(b, ctx):
    sp = _sp(b, ctx)
    H = _R(FractionKind.H, sp.nome, ctx)
    return [(cf.h_closed(b["r"], ctx).H, H), (cf.k_from_h(H), sp.k)]


def _h_m_quotient(b, ctx):
    nome = _sp(b, ctx).nome
    H = _R(FractionKind.H, nome, ctx)
    return 1 / H - H, (m_building(nome.scaled(2), ctx) / m_building(nome.scaled(4), ctx)) ** 2


def _m_theta(b, ctx):
    sp, quarter = _sp(b, ctx), _sp(b, ctx, Fraction(1, 4))
    nome = sp.nome
    t2 = theta(2, nome.scaled(Fraction(1, 2)), ctx)
    M = m_building(nome, ctx)
    return [(M, t2 / 2), (M, mp.sqrt(quarter.k * ellK(quarter.k, ctx) / (2 * mp.pi))),
            (psi(nome, ctx), nome.power(Fraction(-1, 8)) * t2 / 2),
            (fraction_direct(FractionKind.M, nome, ctx), M)]


def _m_theta_printed(b, ctx):
    sp, quarter = _sp(b, ctx), _sp(b, ctx, Fraction(1, 4))
    nome = sp.nome
    M = m_building(nome, ctx)
    return [(M, theta(2, nome.scaled(Fraction(1, 2)), ctx)),
            (M, nome.power(Fraction(-1, 8)) * mp.sqrt(quarter.k * ellK(quarter.k, ctx) / (2 * mp.pi)))]


def _H_at(a, ctx):
    return fraction_direct(FractionKind.H, _nome_at(a), ctx)


def _h_reflection(b, ctx):
    a = _real(b["a"])
    f = lambda x: _H_at(x, ctx) + 2 - 1 / _H_at(x, ctx)  # noqa: E731
    return f(a) * f(mp.pi ** 2 / a), mpf(8)


def _h_reflection_shifted(b, ctx):
    a = _real(b["a"])
    g = lambda x: 1 + mp.sqrt(2) + _H_at(x, ctx)  # noqa: E731
    return g(a) * g(mp.pi ** 2 / a), 2 * (2 + mp.sqrt(2))


def _psi_reflection(b, ctx):
    a = _real(b["a"])

    def f(x):
        n = _nome_at(x)
        return 2 - psi(n, ctx) ** 2 / (n.power(Fraction(1, 4)) * psi(n.scaled(2), ctx) ** 2)

    return f(a) * f(4 * mp.pi ** 2 / a), mpf(8)


def _psi_transform(double):
    def evaluate(b, ctx):
        a = _real(b["a"])
        bb = 2 * mp.pi / a
        if double:
            return (psi(_nome_at(2 * a * a), ctx),
                    mp.sqrt(bb / 2) / (2 * mp.sqrt(a)) * mp.exp(a * a / 4) * phi(-mp.exp(-bb * bb / 4), ctx))
        return (psi(_nome_at(a * a), ctx),
                mp.sqrt(bb) / (2 * mp.sqrt(a)) * mp.exp(a * a / 8) * phi(-mp.exp(-bb * bb / 2), ctx))
    return evaluate


def _phi_reflection(b, ctx):
    a = _real(b["a"])

    def g(x):
        e = mp.exp(-x)
        return 1 - phi(e, ctx) / phi(-e, ctx)

    return g(a) * g(mp.pi ** 2 / (4 * a)), mpf(2)


def _k_reflection(b, ctx):
    sp = _sp(b, ctx)
    kp = sp.kprime
    return [(_sp(b, ctx, Fraction(1, 4) / b["r"] ** 2).kprime, (1 - kp) / (1 + kp)),
            (sp.k, _sp(b, ctx, 1 / b["r"] ** 2).kprime)]


def _landen(b, ctx):
    sp, sp4 = _sp(b, ctx), _sp(b, ctx, 4)
    step = landen_4r(sp.modulus, ctx)
    return [(step.k, sp4.k), (step.kprime, sp4.kprime),
            (ellK(sp4.k, ctx), (1 + sp.kprime) / 2 * ellK(sp.k, ctx))]


def _h_duplication(b, ctx):
    nome = _sp(b, ctx).nome
    H, H2 = _R(FractionKind.H, nome, ctx), _R(FractionKind.H, nome.scaled(2), ctx)
    return H * H, (H2 - H2 * H2) / (1 + H2)


def _h_kprime(printed):
    def evaluate(b, ctx):
        sp = _sp(b, ctx)
        h = _R(FractionKind.H, sp.nome.scaled(2), ctx)
        if printed:
            return mp.sqrt(sp.kprime), (h + 2 * h - 1) / (h - 2 * h - 1)
        return mp.sqrt(sp.kprime), (h * h + 2 * h - 1) / (h * h - 2 * h - 1)
    return evaluate


def _h_golden(b, ctx):
    H = _R(FractionKind.H, _sp(b, ctx).nome, ctx)
    s2 = mp.sqrt(2)
    if b["r"] == Fraction(1, 4):
        return H, mp.sqrt(1 + 2 * s2 - 2 * mp.sqrt(2 + s2))
    return H, mp.sqrt(3 + 2 * s2 - 2 * mp.sqrt(4 + 3 * s2))


# --- cubic -------------------------------------------------------------------

def _k9_modular(b, ctx):
    sp, sp9 = _sp(b, ctx), _sp(b, ctx, 9)
    return mp.sqrt(sp.k * sp9.k) + mp.sqrt(sp.kprime * sp9.kprime), mpf(1)


def _v_closed(b, ctx):
    return cf.cubic_closed(b["r"], ctx).V, _R(FractionKind.V, _sp(b, ctx).nome, ctx)


def _cubic_inputs(b, ctx):
    sp, sp9 = _sp(b, ctx), _sp(b, ctx, 9)
    V = _R(FractionKind.V, sp.nome, ctx)
    return sp, sp9, V, sp.k * sp9.k


def _G_of_w(x):
    sx = mp.sqrt(x)
    inner = 1 - 3 * sx + 4 * x - 3 * x * sx + x * x
    return x / mp.sqrt(2 * sx - 3 * x + 2 * x * sx - 2 * sx * mp.sqrt(inner))


def _v_product_w(b, ctx):
    sp, sp9, _, w = _cubic_inputs(b, ctx)
    return [(_G_of_w(w), sp.k), ((1 - mp.sqrt(w)) ** 2 / sp.kprime, sp9.kprime)]


def _v_W_forms(b, ctx):
    sp, _, V, w = _cubic_inputs(b, ctx)
    k, kp = sp.k, sp.kprime
    W = cf.W_from_w(w)
    sw, sW = mp.sqrt(w), mp.sqrt(W)
    third = mpf(1) / 3
    return [(kp ** (2 * third) * mp.root(w, 4) / (mp.cbrt(2) * mp.cbrt(k) * (1 - sw)), V),
            (mp.cbrt(W - w * sw) / mp.root(W, 6) / (mp.cbrt(2) * (1 - sw)), V),
            (2 * V ** 3, sW / (1 + sW) ** 2),
            (k * k, sW * ((2 + sW) / (1 + 2 * sW)) ** 3)]


def _v_Z_relations(b, ctx):
    sp, _, V, w = _cubic_inputs(b, ctx)
    k23 = mp.cbrt(sp.k) ** 2
    Z = mp.root(cf.W_from_w(w), 12)
    v32 = mp.sqrt(2) * V * mp.sqrt(V)
    s = mp.sqrt(2 * V ** 3)
    terms = [s * k23, s * Z ** 2, -2 * k23 * Z ** 3, Z ** 5]
    return [(k23, Z ** 2 * (v32 + Z ** 3) / (2 * Z ** 3 - v32)),
            (sum(terms) / sum(abs(t) for t in terms), mpf(0)),
            (s * s, Z ** 6 / (1 + Z ** 6) ** 2)]


def _T_of(V):
    return mp.sqrt(1 - 8 * V ** 3)


def _v_T_modulus(b, ctx):
    sp, _, V, w = _cubic_inputs(b, ctx)
    T = _T_of(V)
    return [(sp.k ** 2, (1 - T) * (3 + T) ** 3 / ((1 + T) * (3 - T) ** 3)),
            ((1 - T) / (1 + T), mp.sqrt(cf.W_from_w(w)))]


def _T_pair(b, ctx):
    nome = _sp(b, ctx).nome
    return (_T_of(_R(FractionKind.V, nome, ctx)),
            _T_of(_R(FractionKind.V, nome.scaled(2), ctx)))


def _cubic_XY(b, ctx):
    T, T2 = _T_pair(b, ctx)
    X, Y = (1 - T) / (1 + T), (1 - T2) / (1 + T2)
    lhs = mp.sqrt(X) * ((2 + X) / (1 + 2 * X)) ** (mpf(3) / 2)
    rhs = 2 * mp.root(Y, 4) / (((1 + 2 * Y) / (2 + Y)) ** (mpf(3) / 4)
                               + mp.sqrt(Y) * ((2 + Y) / (1 + 2 * Y)) ** (mpf(3) / 4))
    return lhs, rhs


def _cubic_duplication(b, ctx):
    v, u = _T_pair(b, ctx)
    h = mpf(3) / 2
    lhs = mp.sqrt(1 - u) * (3 + u) ** h / (mp.sqrt(1 + u) * (3 - u) ** h)
    a = (3 - v) ** h * mp.sqrt(1 + v)
    return lhs, (a - 4 * v ** h) / (a + 4 * v ** h)


def _cubic_w_from_V(b, ctx):
    _, _, V, w = _cubic_inputs(b, ctx)
    V3 = V ** 3
    T = _T_of(V)
    printed = ((1 - 4 * V3 - 8 * V3 ** 2 - T) / (4 * V3 * (1 - 2 * V3 - T))) ** 2
    return [(printed, w), (cf.cubic_w_from_v(V), w)]


def _cubic_modular(b, ctx):
    nome = _sp(b, ctx).nome
    V, v3 = _R(FractionKind.V, nome, ctx), _R(FractionKind.V, nome.scaled(3), ctx)
    return V ** 3, v3 * (1 - v3 + v3 * v3) / (1 + 2 * v3 + 4 * v3 * v3)


def _k81(b, ctx):
    return cf.k81_from_v3(b["r"], ctx), _sp(b, ctx, 81).k


def _cubic_h_bridge(b, ctx):
    nome = _sp(b, ctx).nome
    u, v = _R(FractionKind.H, nome, ctx), _R(FractionKind.H, nome.scaled(6), ctx)
    T = _T_of(_R(FractionKind.V, nome, ctx))
    lhs = mp.sqrt(u ** 4 - 6 * u * u + 1) * (v * v + 2 * v - 1) / ((u * u + 1) * (v * v - 2 * v - 1))
    return lhs, 4 * T / ((1 + T) * (3 - T))


def _cubic_eval_a(b, ctx):
    s3 = mp.sqrt(3)
    printed = (-67 - 39 * s3 + (9 + 6 * s3) * mp.sqrt(2 * (12 + 7 * s3))) / mp.cbrt(4)
    return printed, _R(FractionKind.V, _sp(b, ctx).nome, ctx)


def _cubic_eval_b(b, ctx):
    T = _T_of(_R(FractionKind.V, _sp(b, ctx).nome, ctx))
    return (3 - T) ** 3 * (3 + T) ** 3 / ((1 - T) * (1 + T)), mpf(5832)


# --- S and Q -----------------------------------------------------------------

def _s_closed(b, ctx):
    sp, sp4 = _sp(b, ctx), _sp(b, ctx, 4)
    nome = sp.nome
    S = _R(FractionKind.S, nome, ctx)
    via_4r = (mp.root(sp4.k, 6) * mp.root(sp.kprime, 6)
              / (mp.root(2, 6) * mp.root(sp.k, 12) * mp.cbrt(sp4.kprime)))
    via_phi = nome.power(Fraction(1, 8)) * phi_cap(nome.scaled(2), ctx) ** 2 / phi_cap(nome, ctx)
    return [(cf.s_closed(b["r"], ctx), S), (via_4r, S), (via_phi, S)]


def _q_closed(b, ctx):
    sp = _sp(b, ctx)
    nome = sp.nome
    Q = _R(FractionKind.Q, nome, ctx)
    q2, q4 = nome.scaled(2), nome.scaled(4)
    eta_form = nome.power(Fraction(1, 2)) * f_minus(q4, ctx) ** 2 * phi_cap(q2, ctx) ** 2
    return [(cf.q_closed(b["r"], ctx), Q), (m_building(q2, ctx) ** 2, Q), (eta_form, Q)]


def _q_gamma(b, ctx):
    Q = _R(FractionKind.Q, _sp(b, ctx).nome, ctx)
    g = gamma(mpf(9) / 8, ctx) / gamma(mpf(5) / 8, ctx)
    return Q, (mp.sqrt(2) - 1) / mp.sqrt(2 * mp.pi) * g


def _q_modular(b, ctx):
    nome = _sp(b, ctx).nome
    Q = lambda n: _R(FractionKind.Q, nome.scaled(n), ctx)  # noqa: E731
    u, v = Q(1) / Q(2), Q(3) / Q(6)
    pos = v ** 4 + u ** 4 + 6 * v * v * u * u
    neg = v ** 3 * u ** 3 + 16 * v * u
    return pos / neg, mpf(1)


def _euler_cf(b, ctx):
    q = _real(b["q"])
    spec = CFSpec(lambda n: mpf(1), lambda n: mpf(1),
                  lambda n, nome: -nome.value ** n, lambda n, nome: 1 + nome.value ** n)
    lhs = eval_cf(spec, q, ctx)[0]
    rhs = sum_to_tolerance(lambda n: q ** (n * (n + 1) // 2), "series", ctx)
    return lhs, rhs


def _route(kind):
    def evaluate(b, ctx):
        nome = _sp(b, ctx).nome
        d = fraction_direct(kind, nome, ctx)
        return [(fraction_oracle(kind, nome, ctx), d), (cf.closed_form(kind, b["r"], ctx), d)]
    return evaluate


# ---------------------------------------------------------------------------
# the catalog
# ---------------------------------------------------------------------------

def _r(*values):
    return tuple({"r": Fraction(v)} for v in values)


def _a(*labels):
    return tuple({"a": lab} for lab in labels)


_KD = KNOWN_DISCREPANCY

_CHECKS = [
    # Rogers-Ramanujan
    IdentityCheck("rr_quotient_relation", "1/R - 1 - R as an eta quotient",
                  "1/R(q) - 1 - R(q) = f(-q^(1/5)) / (q^(1/5) f(-q^5))", ("rr", "theta"), R_GRID, _rr_quotient),
    IdentityCheck("rr_quintic_relation", "1/R^5 - 11 - R^5 as an eta quotient",
                  "1/R^5 - 11 - R^5 = f(-q)^6 / (q f(-q^5)^6)", ("rr", "theta"), R_GRID, _rr_quintic),
    IdentityCheck("modulus_product_form", "k_r from the product Phi(-q)",
                  "k = 8 q^(1/2) Phi^12 / (1 + sqrt(1 + 64 q Phi^24))", ("modulus", "theta"), R_GRID,
                  _modulus_product),
    IdentityCheck("phi_cap_elliptic", "Phi(-q) through k_r (leading factor 1)",
                  "Phi(-q) = 2^(-1/6) q^(-1/24) k^(1/12) / k'^(1/6)", ("theta", "modulus"), R_GRID,
                  _phi_cap_elliptic(1)),
    IdentityCheck("phi_cap_elliptic_as_printed", "Phi(-q) through k_r with the printed leading factor 2",
                  "Phi(-q) = 2 * 2^(-1/6) q^(-1/24) k^(1/12) / k'^(1/6)", ("theta", "modulus", "discrepancy"),
                  R_GRID, _phi_cap_elliptic(2), expected=_KD),
    IdentityCheck("eta_eighth_power_elliptic", "f(-q)^8 through k_r and K",
                  "f(-q)^8 = 2^(8/3) pi^-4 q^(-1/3) k^(2/3) k'^(8/3) K^4", ("theta", "modulus"), R_GRID,
                  _eta_eighth),
    IdentityCheck("eta_q2_sixth_power_elliptic", "f(-q^2)^6 through k_r and K",
                  "f(-q^2)^6 = 2 k k' K^3 / (pi^3 q^(1/2))", ("theta", "modulus"), R_GRID, _eta_q2_sixth),
    IdentityCheck("rr_singular_modulus_form", "R from k_r, k_25r and M_5",
                  "R = (-11/2 - a/2 + sqrt(125 + 22a + a^2)/2)^(1/5)", ("rr", "closed"), R_GRID, _rr_closed),
    IdentityCheck("rr_invariant", "the invariant a_r equals 1/R^5 - 11 - R^5",
                  "a = (k'/k'25)^2 sqrt(k/k25) M5^-3", ("rr", "closed"), R_GRID, _rr_invariant),
    IdentityCheck("rr_L_example", "the L = 1/3 example: radicals for w, k_25r, k_r and R at r[L]",
                  "w = sqrt(11/78)/3; R(exp(-pi sqrt(r[L]))) from A_L", ("rr", "closed"),
                  ({"L": Fraction(1, 3)},), _L_example),
    IdentityCheck("m5_sextic", "M_5 = K(k_25r)/K(k_r) solves its sextic",
                  "(5x - 1)^5 (1 - x) = 256 k^2 k'^2 x", ("rr", "poly"), R_GRID, _m5_sextic),
    IdentityCheck("k25_degree5_modular", "degree-5 modular equation for k_r, k_25r",
                  "k k25 + k' k'25 + 2 4^(1/3) (k k25 k' k'25)^(1/3) = 1", ("rr", "modular", "modulus"), R_GRID,
                  _k25_modular),
    IdentityCheck("w_L_parametrization", "k_r and k_25r from the L parametrization of w",
                  "sqrt(k25/w) = sqrt(w/k) = f(L); (k25 - w)/sqrt(k25 w) = sqrt(2/3) D(L)", ("rr", "param"),
                  R_GRID, _w_L_param),
    IdentityCheck("L_M_from_w", "L and M in terms of w",
                  "L = -9 + 9w^2 + sqrt(3) sqrt(27 + 74w^2 + 27w^4); M = (18 + L)/(64 + 3L)", ("rr", "param"),
                  R_GRID, _L_M_inverse),
    IdentityCheck("t_two_forms", "t from k, w and from y = M/L",
                  "t = (w - k)/sqrt(k w) = sqrt(2/3) (y^(-1/6) - 4 y^(1/6))", ("rr", "param"), R_GRID, _t_forms),
    IdentityCheck("M_over_L_closed_form", "M/L in terms of k and w",
                  "M/L = ((sqrt(3)(k - w) + sqrt(3k^2 + 26kw + 3w^2)) / (8 sqrt(2kw)))^6", ("rr", "param"),
                  R_GRID, _M_over_L),
    IdentityCheck("p_parametrization", "the p, W, T parametrization reproduces k_r and w",
                  "kstar w = k; p = (T(2+T)/(216+128T))^(1/6) = (W(2+W)/(6+8W))^(1/2)", ("rr", "param"),
                  R_GRID, _p_param_at_r),
    IdentityCheck("p_parametrization_roundtrip", "self-consistency of the p parametrization at free p",
                  "both p formulas, w from W, T from W, the W equation and the p dodecic", ("rr", "param"),
                  ({"p": "3/10"}, {"p": "9/20"}), _p_param_roundtrip),
    IdentityCheck("p_dodecic", "degree-12 polynomial in p at the parametrization value",
                  "k^2 + 2 sqrt(6) k k'^2 p - ... + 4096 k^2 p^12 = 0", ("rr", "poly"), R_GRID, _p_dodecic),
    IdentityCheck("x_dodecic", "degree-12 polynomial in x at x = (k_r/k_25r)^(1/4), x^4 coefficient 15k^2",
                  "k^2 + 4k'^2 k x - 6k^2 x^2 + ... + 15k^2 x^4 + ... + k^2 x^12 = 0", ("rr", "poly"), R_GRID,
                  _x_dodecic),
    IdentityCheck("x_dodecic_as_printed", "printed degree-12 polynomial (x^4 coefficient 15) at x = 1/sqrt(k_25r)",
                  "k^2 + 4k'^2 k x - ... + 15 x^4 + ... + k^2 x^12 = 0", ("rr", "poly", "discrepancy"), R_GRID,
                  _x_dodecic_printed, expected=_KD),
    IdentityCheck("G_sextic", "sextic in G = (1/R^5 - 11 - R^5)^(1/3) with kstar = sqrt(k_r/k_25r)",
                  "3125c^2 - 6250c^(5/3) G + ... + G^6 = 0", ("rr", "poly"), R_GRID, _g_sextic("ratio")),
    IdentityCheck("G_sextic_reciprocal_kstar", "the G sextic with kstar = 1/k_25r",
                  "3125c^2 - 6250c^(5/3) G + ... + G^6 = 0, kstar = 1/k25", ("rr", "poly", "discrepancy"), R_GRID,
                  _g_sextic("reciprocal"), expected=_KD),
    IdentityCheck("G_cube_invariant", "c_r M_5^-3 equals a_r",
                  "c = k'^2 kstar^5 / (kstar^4 - k^2); G^3 = c M5^-3", ("rr", "closed"), R_GRID, _g_cube),
    IdentityCheck("w_sextic", "sextic in w at w = sqrt(k_r k_25r)",
                  "k^6 + k^3(-16 + 10k^2) w + ... + w^6 = 0", ("rr", "poly"), R_GRID, _w_sextic),
    IdentityCheck("k_from_w_sextic", "k_r from the L form solves the w sextic",
                  "sqrt(w/k) = f(L) with w = w(L)", ("rr", "poly", "param"),
                  tuple({"L": v} for v in ("1/3", "1", "3", "10")), _k_from_w),
    IdentityCheck("rr_derivative_two_forms", "R'(q) by the quotient form and by the modulus form",
                  "R' = q^(-5/6) f(-q)^4 R (1/R^5 - 11 - R^5)^(1/6) / 5", ("rr", "derivative"), R_GRID,
                  _rr_deriv_forms),
    IdentityCheck("rr_golden_values", "R(exp(-2 pi)) and R'(exp(-2 pi)) against their radicals",
                  "R = -1/2 - sqrt(5)/2 + sqrt((5 + sqrt(5))/2)", ("rr", "golden", "derivative"), _r(4),
                  _rr_golden),
    IdentityCheck("gamma_K_link", "Gamma(5/4)^4 through K(sqrt(2)/2)",
                  "Gamma(5/4)^4 = pi K(1/sqrt(2))^2 / 16", ("golden", "modulus"), ({"x": "5/4"},), _gamma_K),
    # H and theta
    IdentityCheck("h_modulus_closed_form", "H from k_r, and k_r back from H",
                  "H = -P + sqrt(P^2 + 1), P = k/(1 - k'); k = 4(H - H^3)/(1 + H^2)^2", ("h", "closed"),
                  R_GRID, _h_closed),
    IdentityCheck("h_m_quotient", "1/H - H as a quotient of M",
                  "1/H(q) - H(q) = M(q^2)^2 / M(q^4)^2", ("h", "theta"), R_GRID, _h_m_quotient),
    IdentityCheck("m_theta2_half", "M(q) through theta_2 at q^(1/2) and k_{r/4}",
                  "M(q) = theta_2(q^(1/2))/2 = sqrt(k_{r/4} K(k_{r/4}) / (2 pi))", ("m", "h", "theta"), R_GRID,
                  _m_theta),
    IdentityCheck("m_theta2_as_printed", "printed M(q) = theta_2(q^(1/2)) = q^(-1/8) sqrt(k K / (2 pi))",
                  "M(q) = theta_2(q^(1/2)) = q^(-1/8) sqrt(k_{r/4} K / (2 pi))", ("m", "h", "theta", "discrepancy"),
                  R_GRID, _m_theta_printed, expected=_KD),
    IdentityCheck("landen_step", "k_4r and K(k_4r) from k_r",
                  "k_4r = (1 - k')/(1 + k'); K[4r] = (1 + k')/2 K[r]", ("h", "modulus", "modular"), R_GRID,
                  _landen),
    IdentityCheck("h_reflection", "product over ab = pi^2 of H + 2 - 1/H",
                  "(H(e^-a) + 2 - 1/H(e^-a)) (H(e^-b) + 2 - 1/H(e^-b)) = 8", ("h", "modular"),
                  _a("pi", "pi/2", "2*pi", "3"), _h_reflection),
    IdentityCheck("h_reflection_shifted", "product over ab = pi^2 of 1 + sqrt(2) + H",
                  "(1 + sqrt(2) + H(e^-a)) (1 + sqrt(2) + H(e^-b)) = 2(2 + sqrt(2))", ("h", "modular"),
                  _a("pi", "pi/2", "2*pi", "3"), _h_reflection_shifted),
    IdentityCheck("psi_reflection", "the H reflection written with psi, ab = 4 pi^2",
                  "(2 - psi(e^-a)^2 / (e^(-a/4) psi(e^-2a)^2)) (same at b) = 8", ("h", "theta", "modular"),
                  _a("2*pi", "pi", "3"), _psi_reflection),
    IdentityCheck("psi_modular_transform", "psi(e^(-a^2)) through phi(-e^(-b^2/2)), ab = 2 pi",
                  "psi(e^-a^2) = sqrt(b)/(2 sqrt(a)) e^(a^2/8) phi(-e^(-b^2/2))", ("theta",),
                  _a("sqrt(2*pi)", "1", "3/2"), _psi_transform(False)),
    IdentityCheck("psi_modular_transform_double", "psi(e^(-2a^2)) through phi(-e^(-b^2/4)), ab = 2 pi",
                  "psi(e^-2a^2) = sqrt(b/2)/(2 sqrt(a)) e^(a^2/4) phi(-e^(-b^2/4))", ("theta",),
                  _a("sqrt(2*pi)", "1", "3/2"), _psi_transform(True)),
    IdentityCheck("phi_quotient_reflection", "product over ab = pi^2/4 of 1 - phi(e^-a)/phi(-e^-a)",
                  "(1 - phi(e^-a)/phi(-e^-a)) (1 - phi(e^-b)/phi(-e^-b)) = 2", ("h", "theta", "modular"),
                  _a("pi/2", "1", "2"), _phi_reflection),
    IdentityCheck("k_reflection", "k'_{1/(4r)} = (1 - k'_r)/(1 + k'_r) and k_r = k'_{1/r}",
                  "k'_{1/(4r)} = (1 - k')/(1 + k'); k_r = k'_{1/r}", ("h", "modulus", "modular"), R_GRID,
                  _k_reflection),
    IdentityCheck("h_duplication", "H(q)^2 in terms of H(q^2)",
                  "H(q)^2 = (H(q^2) - H(q^2)^2) / (1 + H(q^2))", ("h", "modular"), R_GRID, _h_duplication),
    IdentityCheck("h_kprime_squared_reading", "sqrt(k'_r) through H(q^2), squared reading",
                  "sqrt(k') = (H(q^2)^2 + 2H(q^2) - 1) / (H(q^2)^2 - 2H(q^2) - 1)", ("h", "modulus"), R_GRID,
                  _h_kprime(False)),
    IdentityCheck("h_kprime_as_printed", "sqrt(k'_r) through H(q^2), as printed",
                  "sqrt(k') = (H(q^2) + 2H(q^2) - 1) / (H(q^2) - 2H(q^2) - 1)", ("h", "modulus", "discrepancy"),
                  R_GRID, _h_kprime(True), expected=_KD),
    IdentityCheck("h_golden_values", "H(exp(-pi/2)) and H(exp(-pi/sqrt(2))) against their radicals",
                  "H(e^(-pi/2)) = sqrt(1 + 2 sqrt(2) - 2 sqrt(2 + sqrt(2)))", ("h", "golden"), _r("1/4", "1/2"),
                  _h_golden),
    # cubic
    IdentityCheck("k9_degree3_modular", "degree-3 modular equation for k_r, k_9r",
                  "sqrt(k k9) + sqrt(k' k'9) = 1", ("cubic", "modular", "modulus"), R_GRID, _k9_modular),
    IdentityCheck("v_modulus_closed_form", "V from k_r and k_9r",
                  "V = 2^(-1/3) k9^(1/4) k'^(1/6) / (k^(1/12) k'9^(1/2))", ("cubic", "closed"), R_GRID, _v_closed),
    IdentityCheck("v_moduli_from_w", "k_r and k'_9r from w = k_r k_9r",
                  "k = G(w); k'9 = (1 - sqrt(w))^2 / k'", ("cubic", "modulus"), R_GRID, _v_product_w),
    IdentityCheck("v_W_forms", "V, k_r and W = W(w) in their several forms",
                  "2V^3 = sqrt(W)/(1 + sqrt(W))^2; k^2 = sqrt(W) ((2 + sqrt(W))/(1 + 2 sqrt(W)))^3",
                  ("cubic", "closed"), R_GRID, _v_W_forms),
    IdentityCheck("v_Z_relations", "k_r, s = sqrt(2V^3) and Z = W^(1/12)",
                  "s k^(2/3) + s Z^2 - 2k^(2/3) Z^3 + Z^5 = 0; s^2 = Z^6/(1 + Z^6)^2", ("cubic", "closed"),
                  R_GRID, _v_Z_relations),
    IdentityCheck("v_T_modulus", "k_r^2 through T = sqrt(1 - 8V^3), and sqrt(W) = (1 - T)/(1 + T)",
                  "k^2 = (1 - T)(3 + T)^3 / ((1 + T)(3 - T)^3)", ("cubic", "closed"), R_GRID, _v_T_modulus),
    IdentityCheck("cubic_X_Y_relation", "relation between X = sqrt(W(q)) and Y = sqrt(W(q^2))",
                  "X^(1/2) ((2 + X)/(1 + 2X))^(3/2) = 2Y^(1/4) / (...)", ("cubic", "modular"), R_GRID, _cubic_XY),
    IdentityCheck("cubic_T_duplication", "duplication between u = T(q^2) and v = T(q)",
                  "sqrt(1 - u)(3 + u)^(3/2) / (sqrt(1 + u)(3 - u)^(3/2)) = ...", ("cubic", "modular"), R_GRID,
                  _cubic_duplication),
    IdentityCheck("cubic_w_from_V", "k_r k_9r as a rational function of V and T",
                  "w = ((1 - 4V^3 - 8V^6 - T) / (4V^3 (1 - 2V^3 - T)))^2", ("cubic", "closed"), R_GRID,
                  _cubic_w_from_V),
    IdentityCheck("cubic_degree3_modular", "V(q)^3 in terms of V(q^3)",
                  "V^3 = v(1 - v + v^2)/(1 + 2v + 4v^2), v = V(q^3)", ("cubic", "modular"), R_GRID, _cubic_modular),
    IdentityCheck("k81_from_v_q3", "k_81r from k_r and V(q^3)",
                  "k81 = ((1 + 2v^2 - sqrt(1 - 8v^3)) / (1 + 2v^2 + sqrt(1 - 8v^3)))^2 k", ("cubic", "modular",
                                                                                          "modulus"),
                  _r("1/9", "1/4", "1/2", "1", "2", "3", "4"), _k81),
    IdentityCheck("cubic_h_bridge", "H(q), H(q^6) and T(q)",
                  "sqrt(u^4 - 6u^2 + 1)(v^2 + 2v - 1) / ((u^2 + 1)(v^2 - 2v - 1)) = 4T/((1 + T)(3 - T))",
                  ("cubic", "h", "modular"), _r("1/4", "1/2"), _cubic_h_bridge),
    IdentityCheck("cubic_eval_a", "printed radical for V(exp(-pi)) against the computed value",
                  "V(e^-pi) = 2^(-2/3) (-67 - 39 sqrt(3) + (9 + 6 sqrt(3)) sqrt(2(12 + 7 sqrt(3))))",
                  ("cubic", "golden", "discrepancy"), _r(1), _cubic_eval_a, expected=_KD),
    IdentityCheck("cubic_eval_b", "T(exp(-pi sqrt(2))) product equals 5832",
                  "(3 - T)^3 (3 + T)^3 / ((1 - T)(1 + T)) = 5832", ("cubic", "golden"), _r(2), _cubic_eval_b),
    # S and Q
    IdentityCheck("s_modulus_closed_form", "S through k_r, through k_4r and through Phi",
                  "S = k^(1/4)/sqrt(2) = q^(1/8) Phi(-q^2)^2 / Phi(-q)", ("s", "closed"), R_GRID, _s_closed),
    IdentityCheck("q_modulus_closed_form", "Q through K and k at r and 4r, through M and through f, Phi",
                  "Q = K(k4) sqrt(k4)/pi = K(k) k/(2 pi) = M(q^2)^2", ("q", "closed"), R_GRID, _q_closed),
    IdentityCheck("q_gamma_value", "Q(exp(-pi sqrt(2))) against its Gamma expression",
                  "Q = (sqrt(2) - 1)/sqrt(2 pi) Gamma(9/8)/Gamma(5/8)", ("q", "golden"), _r(2), _q_gamma),
    IdentityCheck("q_degree3_modular", "modular equation for u = Q(q)/Q(q^2), v = Q(q^3)/Q(q^6)",
                  "(v^4 + u^4 + 6v^2 u^2) / (v^3 u^3 + 16vu) = 1", ("q", "modular"), R_GRID, _q_modular),
    IdentityCheck("euler_cf", "Euler's continued fraction with b_n = q^n",
                  "1/(1 - b1/(1 + b1 - b2/(1 + b2 - ...))) = 1 + sum prod b_k", ("m", "theta"),
                  tuple({"q": v} for v in ("1/10", "3/10", "1/2")), _euler_cf),
] + [
    IdentityCheck(f"routes_{kind.value}", f"direct, product and closed-form routes for {kind.name}",
                  "recurrence = product form = closed form", ("routes", kind.value if kind.value != "v" else "cubic"),
                  R_GRID, _route(kind))
    for kind in FractionKind
]

CATALOG = build_catalog(_CHECKS)


# ---------------------------------------------------------------------------
# running
# ---------------------------------------------------------------------------

def _pairs(out):
    if isinstance(out, list):
        return out
    return [out]


def _evaluate(check: IdentityCheck, binding: dict, ctx: PrecisionContext) -> CheckResult:
    tol = check.tolerance(ctx)
    with ctx.workprec():
        try:
            pairs = _pairs(check.evaluate(binding, ctx))
        except (RCFError, ArithmeticError, ValueError) as exc:
            return CheckResult(check.id, binding, mp.nan, tol, FAIL, error=f"{type(exc).__name__}: {exc}")
        lhs, rhs = max(pairs, key=lambda p: residual(*p))
        res = residual(lhs, rhs)
    return CheckResult(check.id, binding, res, tol, _status(check.expected, res, tol), lhs, rhs)


def run_check(check_id: str, ctx: PrecisionContext = DEFAULT_CONTEXT) -> list[CheckResult]:
    """One :class:`CheckResult` per grid binding of the named check."""
    try:
        check = CATALOG[check_id]
    except KeyError:
        raise UnknownCheck(check_id) from None
    return [_evaluate(check, b, ctx) for b in check.grid]


def _run_remote(check_id, bits, guard):
    return run_check(check_id, PrecisionContext(bits, guard))


@dataclass
class SuiteReport:
    results: list[CheckResult] = field(default_factory=list)
    precision_bits: int = DEFAULT_CONTEXT.working_bits

    def count(self, *statuses) -> int:
        return sum(r.status in statuses for r in self.results)

    @property
    def success(self) -> bool:
        return self.count(FAIL) == 0

    def summary(self) -> dict:
        return {
            "total": len(self.results),
            "pass": self.count(PASS),
            "fail": self.count(FAIL),
            "known_discrepancy": self.count(KNOWN_DISCREPANCY_CONFIRMED),
            "surprise_pass": self.count(SURPRISE_PASS),
            "precision_bits": self.precision_bits,
        }

    def rows(self):
        for r in self.results:
            yield {
                "id": r.id,
                "params": r.params(),
                "residual": mp.nstr(r.residual, 6),
                "tolerance": mp.nstr(r.tolerance, 6),
                "status": r.status,
            }

    def to_json(self) -> str:
        return json.dumps({"results": list(self.rows()), "summary": self.summary()}, indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=["id", "params", "residual", "tolerance", "status"],
                                lineterminator="\n")
        writer.writeheader()
        for row in self.rows():
            row["params"] = ";".join(f"{k}={v}" for k, v in row["params"].items())
            writer.writerow(row)
        return buf.getvalue()

    def to_text(self) -> str:
        lines = []
        for r in self.results:
            params = ", ".join(f"{k}={v}" for k, v in r.params().items())
            line = f"{r.status:<28} {r.id:<32} {params:<16} residual={mp.nstr(r.residual, 3)}"
            if r.status != PASS and r.lhs is not None:
                line += f"  lhs={mp.nstr(r.lhs, 12)} rhs={mp.nstr(r.rhs, 12)}"
            if r.error:
                line += f"  ({r.error})"
            lines.append(line)
        s = self.summary()
        lines.append(f"{s['total']} results: {s['pass']} pass, {s['fail']} fail, "
                     f"{s['known_discrepancy']} known discrepancies, {s['surprise_pass']} surprise passes "
                     f"at {s['precision_bits']} bits")
        return "\n".join(lines)


def run_suite(selector: str | None = None, ctx: PrecisionContext = DEFAULT_CONTEXT,
              jobs: int = 1) -> SuiteReport:
    """Run every check whose id or tag equals ``selector`` (all checks if ``None``).

    With ``jobs > 1`` the checks run in worker processes; the report is
    ordered by check id either way.
    """
    ids = sorted(cid for cid, check in CATALOG.items() if check.matches(selector))
    if jobs > 1 and len(ids) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_run_remote, ids, [ctx.working_bits] * len(ids),
                                   [ctx.guard_bits] * len(ids)))
    else:
        chunks = [run_check(cid, ctx) for cid in ids]
    return SuiteReport([r for chunk in chunks for r in chunk], ctx.working_bits)
