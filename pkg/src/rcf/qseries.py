"""q-Pochhammer products, theta functions and Ramanujan's psi/phi.

All functions take a real nome ``q`` either as a number or as a
:class:`Nome`.  A :class:`Nome` built from ``r`` remembers ``log q = -pi*sqrt(r)``
so fractional powers such as ``q**(1/24)`` come from a single ``exp``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, mpf

from .errors import DomainError, NonConvergent
from .numerics import DEFAULT_CONTEXT, PrecisionContext, sum_to_tolerance

__all__ = [
    "Nome",
    "as_nome",
    "qpoch",
    "f_minus",
    "phi_cap",
    "theta",
    "theta2_reduced",
    "psi",
    "phi",
    "m_building",
]

# Beyond this the series need thousands of terms; nothing here needs it.
Q_MAX = mpf("0.9")


@dataclass(frozen=True)
class Nome:
    """A real nome ``0 <= q < 1``, optionally carrying ``log q`` exactly."""

    value: mpf
    log: mpf | None = None

    @classmethod
    def from_r(cls, r, ctx: PrecisionContext = DEFAULT_CONTEXT) -> "Nome":
        with ctx.workprec():
            r = mpf(r.numerator) / r.denominator if isinstance(r, Fraction) else mpf(r)
            log = -mp.pi * mp.sqrt(r)
            return cls(mp.exp(log), log)

    def power(self, e) -> mpf:
        """``q**e`` for a rational or real exponent ``e``."""
        e = Fraction(e) if isinstance(e, (int, Fraction)) else e
        if isinstance(e, Fraction):
            if e.denominator == 1 and e >= 0:
                return self.value ** e.numerator
            e = mpf(e.numerator) / e.denominator
        if self.value == 0:
            if e > 0:
                return mpf(0)
            raise DomainError("non-positive power of q = 0")
        if self.log is not None:
            return mp.exp(self.log * e)
        return self.value ** e

    def __pow__(self, e):
        return self.power(e)

    def scaled(self, n) -> "Nome":
        """The nome ``q**n``."""
        value = self.power(n)
        if self.log is None:
            return Nome(value)
        n = mpf(n.numerator) / n.denominator if isinstance(n, Fraction) else n
        return Nome(value, self.log * n)


def as_nome(q, allow_negative: bool = False) -> Nome:
    """Validate ``q`` and wrap it in a :class:`Nome`.

    An ``mpf`` is taken as is; other types are converted at the ambient
    precision, so pass strings from inside ``ctx.workprec()``.
    """
    if isinstance(q, Nome):
        return q
    if not isinstance(q, mpf):
        q = mpf(q)
    lower = -1 if allow_negative else 0
    if not (lower <= q < 1) or (allow_negative and q == -1):
        raise DomainError(f"q = {mp.nstr(q, 10)} outside the unit interval")
    return Nome(q)


def _reject_slow(q: Nome):
    if abs(q.value) > Q_MAX:
        raise NonConvergent(f"|q| = {mp.nstr(abs(q.value), 8)} > {Q_MAX}: series too slow")


def qpoch(a, q, n=None, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpf:
    """The q-Pochhammer symbol ``(a; q)_n``; ``n=None`` means ``n = infinity``."""
    q = as_nome(q, allow_negative=True)
    with ctx.workprec():
        a = mpf(a)
        qv = q.value
        if n is not None:
            if n < 0:
                raise DomainError("negative length")
            out = mpf(1)
            term = a
            for _ in range(n):
                out *= 1 - term
                term *= qv
            return out
        _reject_slow(q)
        if a == 0:
            return mpf(1)
        return sum_to_tolerance(lambda k: 1 - a * qv ** k, "product", ctx)


def f_minus(q, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpf:
    """``f(-q) = (q; q)_inf``."""
    q = as_nome(q)
    return qpoch(q.value, q, None, ctx)


def phi_cap(q, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpf:
    """``Phi(-q) = (-q; q)_inf``."""
    q = as_nome(q)
    with ctx.workprec():
        return qpoch(-q.value, q, None, ctx)


def theta2_reduced(q, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpf:
    """``sum_{n>=0} q**(n*(n+1))``, so that ``theta_2(q) = 2 q**(1/4)`` times this."""
    q = as_nome(q)
    _reject_slow(q)
    qv = q.value
    return sum_to_tolerance(lambda n: qv ** (n * (n + 1)), "series", ctx)


def phi(q, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpf:
    """Ramanujan's ``phi(q) = sum_{n in Z} q**(n*n)``; negative ``q`` allowed."""
    q = as_nome(q, allow_negative=True)
    _reject_slow(q)
    qv = q.value
    return sum_to_tolerance(lambda n: 2 * qv ** (n * n) if n else mpf(1), "series", ctx)


def psi(q, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpf:
    """Ramanujan's ``psi(q) = sum_{n>=0} q**(n*(n+1)/2)``; negative ``q`` allowed."""
    q = as_nome(q, allow_negative=True)
    _reject_slow(q)
    qv = q.value
    return sum_to_tolerance(lambda n: qv ** (n * (n + 1) // 2), "series", ctx)


def theta(j: int, q, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpf:
    """Jacobi ``theta_j(q)`` at ``z = 0`` for ``j`` in 2, 3, 4."""
    q = as_nome(q)
    with ctx.workprec():
        if j == 2:
            return 2 * q.power(Fraction(1, 4)) * theta2_reduced(q, ctx)
        if j == 3:
            return phi(q, ctx)
        if j == 4:
            return phi(Nome(-q.value), ctx)
    raise DomainError(f"theta index must be 2, 3 or 4, got {j}")


def m_building(q, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpf:
    """``M(q) = q**(1/8) (q^2; q^2)_inf / (q; q^2)_inf``, which equals ``q**(1/8) psi(q)``."""
    q = as_nome(q)
    with ctx.workprec():
        q2 = q.scaled(2)
        return q.power(Fraction(1, 8)) * qpoch(q2.value, q2, None, ctx) / qpoch(q.value, q2, None, ctx)
