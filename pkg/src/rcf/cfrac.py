"""Continued fractions: a generic evaluator and the six fractions studied here.

Every fraction has the shape::

    prefactor(q) / (b0 + a1/(b1 + a2/(b2 + ...)))

and is evaluated by backward recurrence with depth doubling.  Each kind
also has an independent product/series evaluation (:func:`fraction_oracle`)
used to cross-check the recurrence.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from mpmath import mp, mpf

from .errors import DomainError, NonConvergent
from .numerics import DEFAULT_CONTEXT, PrecisionContext
from .qseries import Nome, as_nome, f_minus, m_building, phi_cap, qpoch

__all__ = [
    "FractionKind",
    "CFSpec",
    "ConvergenceReport",
    "eval_cf",
    "cf_spec",
    "fraction_direct",
    "fraction_oracle",
    "central_difference",
    "rr_derivative_fd",
]

MAX_DEPTH = 2 ** 20


class FractionKind(enum.Enum):
    RR = "rr"  # Rogers-Ramanujan
    H = "h"    # Ramanujan-Goellnitz-Gordon
    V = "v"    # Ramanujan's cubic
    S = "s"
    Q = "q"
    M = "m"

    @classmethod
    def parse(cls, name) -> "FractionKind":
        if isinstance(name, cls):
            return name
        try:
            return cls(str(name).lower())
        except ValueError:
            raise DomainError(f"unknown fraction kind {name!r}") from None


@dataclass(frozen=True)
class CFSpec:
    """``prefactor(q) / (b0(q) + a(1,q)/(b(1,q) + a(2,q)/(b(2,q) + ...)))``."""

    prefactor: Callable[[Nome], mpf]
    b0: Callable[[Nome], mpf]
    a: Callable[[int, Nome], mpf]
    b: Callable[[int, Nome], mpf]


@dataclass(frozen=True)
class ConvergenceReport:
    depth_used: int
    last_delta: mpf


def _backward(spec: CFSpec, q: Nome, depth: int) -> mpf:
    tail = mpf(0)
    for n in range(depth, 0, -1):
        tail = spec.a(n, q) / (spec.b(n, q) + tail)
    return spec.b0(q) + tail


def eval_cf(spec: CFSpec, q, ctx: PrecisionContext = DEFAULT_CONTEXT, start_depth: int = 8):
    """Evaluate ``spec`` at ``q``; returns ``(value, ConvergenceReport)``.

    The depth doubles until two successive truncations agree to
    ``eps * |value|``.
    """
    q = as_nome(q)
    with ctx.workprec():
        eps = ctx.eps
        depth = start_depth
        prev = _backward(spec, q, depth)
        while True:
            depth *= 2
            if depth > MAX_DEPTH:
                raise NonConvergent(f"continued fraction unsettled at depth {MAX_DEPTH}")
            cur = _backward(spec, q, depth)
            delta = abs(mpf(1) / cur - mpf(1) / prev)
            if delta <= eps * abs(1 / cur):
                value = spec.prefactor(q) / cur
                return value, ConvergenceReport(depth, delta * abs(spec.prefactor(q)))
            prev = cur


def _one(q):
    return mpf(1)


def _one_n(n, q):
    return mpf(1)


def _root(e):
    return lambda q: q.power(Fraction(e))


def _q_pow(q: Nome, n: int) -> mpf:
    return q.value ** n


_SPECS = {
    FractionKind.RR: CFSpec(_root("1/5"), _one, lambda n, q: _q_pow(q, n), _one_n),
    FractionKind.H: CFSpec(_root("1/2"), lambda q: 1 + q.value,
                           lambda n, q: _q_pow(q, 2 * n),
                           lambda n, q: 1 + _q_pow(q, 2 * n + 1)),
    FractionKind.V: CFSpec(_root("1/3"), _one,
                           lambda n, q: _q_pow(q, n) + _q_pow(q, 2 * n), _one_n),
    # numerators q, q^2+q, q^3, q^4+q^2, q^5, ...
    FractionKind.S: CFSpec(_root("1/8"), _one,
                           lambda n, q: _q_pow(q, n) + (_q_pow(q, n // 2) if n % 2 == 0 else 0),
                           _one_n),
    # numerators q(1-q^(2n-1))^2, denominators (1-q)(1+q^(2n)); squares expanded
    FractionKind.Q: CFSpec(_root("1/2"), lambda q: 1 - q.value,
                           lambda n, q: q.value * (1 - 2 * _q_pow(q, 2 * n - 1) + _q_pow(q, 4 * n - 2)),
                           lambda n, q: (1 - q.value) * (1 + _q_pow(q, 2 * n))),
    FractionKind.M: CFSpec(_root("1/8"), _one,
                           lambda n, q: -_q_pow(q, n), lambda n, q: 1 + _q_pow(q, n)),
}


def cf_spec(kind) -> CFSpec:
    return _SPECS[FractionKind.parse(kind)]


def fraction_direct(kind, q, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpf:
    """The continued fraction ``kind`` at ``q``, by recurrence."""
    q = as_nome(q)
    if q.value == 0:
        raise DomainError("q must be positive")
    return _direct_cached(FractionKind.parse(kind), q, ctx)


@lru_cache(maxsize=4096)
def _direct_cached(kind: FractionKind, q: Nome, ctx: PrecisionContext) -> mpf:
    return eval_cf(_SPECS[kind], q, ctx)[0]


def _positive_root(b, c):
    """Positive root of ``x^2 + b x + c`` with ``c < 0``, without cancellation."""
    return -2 * c / (b + mp.sqrt(b * b - 4 * c))


def fraction_oracle(kind, q, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpf:
    """The fraction ``kind`` at ``q`` through q-products, independent of the recurrence.

    R comes from ``1/R - 1 - R = f(-q^(1/5)) / (q^(1/5) f(-q^5))`` and H from
    ``1/H - H = M(q^2)^2 / M(q^4)^2``; V, S, Q and M are plain products.
    """
    kind = FractionKind.parse(kind)
    q = as_nome(q)
    if q.value == 0:
        raise DomainError("q must be positive")
    with ctx.workprec():
        if kind is FractionKind.RR:
            q5 = q.scaled(Fraction(1, 5))
            rho = f_minus(q5, ctx) / (q5.value * f_minus(q.scaled(5), ctx))
            return _positive_root(1 + rho, -1)
        if kind is FractionKind.H:
            m = (m_building(q.scaled(2), ctx) / m_building(q.scaled(4), ctx)) ** 2
            return _positive_root(m, -1)
        if kind is FractionKind.V:
            # q^(1/3) (q; q^2)_inf / (q^3; q^6)_inf^3
            q2, q3, q6 = q.scaled(2), q.scaled(3), q.scaled(6)
            return q.power(Fraction(1, 3)) * qpoch(q.value, q2, None, ctx) / qpoch(q3.value, q6, None, ctx) ** 3
        if kind is FractionKind.S:
            # q^(1/8) (-q^2; q^2)_inf / (-q; q^2)_inf
            q2 = q.scaled(2)
            return q.power(Fraction(1, 8)) * phi_cap(q2, ctx) / qpoch(-q.value, q2, None, ctx)
        if kind is FractionKind.Q:
            # q^(1/2) (q^4; q^4)^2 / (q^2; q^4)^2
            q2, q4 = q.scaled(2), q.scaled(4)
            return q.power(Fraction(1, 2)) * (qpoch(q4.value, q4, None, ctx) / qpoch(q2.value, q4, None, ctx)) ** 2
        return m_building(q, ctx)


def central_difference(fn: Callable[[mpf], mpf], x, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """``(fn(x+h) - fn(x-h)) / 2h`` with ``h = 2**(-working_bits/3)``.

    Returns ``(derivative, error_scale)`` where ``error_scale = h**2`` is the
    order of the truncation error relative to the third derivative.
    """
    with ctx.workprec():
        x = x if isinstance(x, mpf) else mpf(x)
        h = mpf(2) ** (-(ctx.working_bits // 3))
        return (fn(x + h) - fn(x - h)) / (2 * h), h * h


def rr_derivative_fd(q, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Finite-difference ``R'(q)``; returns ``(derivative, error_scale)``.

    Needs ``working_bits >= 192`` so the ``O(h^2)`` truncation stays far
    below the tolerances the derivative is compared at.
    """
    if ctx.working_bits < 192:
        raise DomainError("finite-difference derivative needs working_bits >= 192")
    if not isinstance(q, mpf):
        q = mpf(q)
    if not 0 < q < 1:
        raise DomainError("q must lie in (0, 1)")
    return central_difference(lambda x: fraction_direct(FractionKind.RR, x, ctx), q, ctx)
