"""Complete elliptic integrals, singular moduli and modular multipliers.

``k_r`` denotes the modulus whose complete integrals satisfy
``K(k') / K(k) = sqrt(r)``.  It is computed from the nome
``q = exp(-pi*sqrt(r))`` through theta functions,
``k = theta_2(q)**2 / theta_3(q)**2`` and ``k' = theta_4(q)**2 / theta_3(q)**2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from mpmath import mp, mpf

from .errors import DomainError, PrecisionExhausted
from .numerics import DEFAULT_CONTEXT, PrecisionContext
from .qseries import Nome, phi, phi_cap, theta2_reduced

__all__ = [
    "Modulus",
    "SingularPoint",
    "MultiplierValue",
    "parse_r",
    "agm",
    "ellK",
    "modulus_from_r",
    "modulus_product_form",
    "multiplier",
    "landen_4r",
    "r_from_modulus",
    "gamma",
]


@dataclass(frozen=True)
class Modulus:
    k: mpf
    kprime: mpf

    @classmethod
    def from_k(cls, k, ctx: PrecisionContext = DEFAULT_CONTEXT) -> "Modulus":
        with ctx.workprec():
            k = mpf(k)
            if not 0 < k < 1:
                raise DomainError(f"modulus k = {mp.nstr(k, 10)} outside (0, 1)")
            return cls(k, mp.sqrt((1 - k) * (1 + k)))

    def defect(self) -> mpf:
        """``|k^2 + k'^2 - 1|``."""
        return abs(self.k ** 2 + self.kprime ** 2 - 1)


@dataclass(frozen=True)
class SingularPoint:
    r: Fraction | mpf
    sqrt_r: mpf
    q: mpf
    modulus: Modulus
    log_q: mpf

    @property
    def k(self) -> mpf:
        return self.modulus.k

    @property
    def kprime(self) -> mpf:
        return self.modulus.kprime

    @property
    def nome(self) -> Nome:
        return Nome(self.q, self.log_q)


@dataclass(frozen=True)
class MultiplierValue:
    n: int
    r: Fraction | mpf
    value: mpf


def parse_r(r) -> Fraction | mpf:
    """Normalise ``r``: exact rationals (ints, Fractions, strings like ``"5/2"``) stay exact."""
    if isinstance(r, bool):
        raise DomainError("r must be a number")
    if isinstance(r, int):
        out = Fraction(r)
    elif isinstance(r, Fraction):
        out = r
    elif isinstance(r, str):
        try:
            out = Fraction(r.strip())
        except ValueError:
            raise DomainError(f"cannot parse r = {r!r}") from None
    else:
        out = r if isinstance(r, mpf) else mpf(r)
    if out <= 0:
        raise DomainError(f"r must be positive, got {r}")
    return out


def _to_mpf(r) -> mpf:
    if isinstance(r, Fraction):
        return mpf(r.numerator) / r.denominator
    return mpf(r)


def agm(a, b, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpf:
    """Arithmetic-geometric mean of two positive reals."""
    with ctx.workprec():
        a, b = mpf(a), mpf(b)
        if a <= 0 or b <= 0:
            raise DomainError("agm needs positive arguments")
        tol = mpf(2) ** (2 - ctx.working_bits)
        while abs(a - b) > tol * a:
            a, b = (a + b) / 2, mp.sqrt(a * b)
        return (a + b) / 2


def ellK(k, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpf:
    """Complete elliptic integral of the first kind, ``K(k) = pi / (2 agm(1, k'))``."""
    with ctx.workprec():
        k = mpf(k)
        if not 0 <= k < 1:
            raise DomainError(f"K(k) needs 0 <= k < 1, got {mp.nstr(k, 10)}")
        return mp.pi / (2 * agm(1, mp.sqrt((1 - k) * (1 + k)), ctx))


@lru_cache(maxsize=1024)
def _singular_point(r, bits: int, guard: int) -> SingularPoint:
    ctx = PrecisionContext(bits, guard)
    with ctx.workprec():
        sqrt_r = mp.sqrt(_to_mpf(r))
        log_q = -mp.pi * sqrt_r
        if log_q < -bits * mp.ln2:
            raise PrecisionExhausted(f"q = exp(-pi*sqrt({r})) underflows {bits} bits")
        q = mp.exp(log_q)
        nome = Nome(q, log_q)
        t3 = phi(nome, ctx)
        t4 = phi(Nome(-q), ctx)
        # theta_2(q)^2 = 4 q^(1/2) (sum q^(n(n+1)))^2
        t2sq = 4 * nome.power(Fraction(1, 2)) * theta2_reduced(nome, ctx) ** 2
        k = t2sq / t3 ** 2
        kprime = (t4 / t3) ** 2
        return SingularPoint(r, sqrt_r, q, Modulus(k, kprime), log_q)


def modulus_from_r(r, ctx: PrecisionContext = DEFAULT_CONTEXT, scale=1) -> SingularPoint:
    """The singular point ``(r, q, k_r, k'_r)`` at ``scale * r``.

    Scaling happens here, exactly for rational ``r`` and at the working
    precision otherwise, so callers never round ``r`` at ambient precision.
    """
    r = parse_r(r)
    if scale != 1:
        scale = Fraction(scale)
        if isinstance(r, Fraction):
            r = r * scale
        else:
            with ctx.workprec():
                r = r * scale.numerator / scale.denominator
    return _singular_point(r, ctx.working_bits, ctx.guard_bits)


def modulus_product_form(point: SingularPoint, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpf:
    """``k_r`` from the product ``Phi(-q) = (-q; q)_inf``.

    ``k = 8 q^(1/2) Phi^12 / (1 + sqrt(1 + 64 q Phi^24))``; independent of the
    theta-quotient route used by :func:`modulus_from_r`.
    """
    with ctx.workprec():
        nome = point.nome
        p12 = phi_cap(nome, ctx) ** 12
        return 8 * nome.power(Fraction(1, 2)) * p12 / (1 + mp.sqrt(1 + 64 * nome.value * p12 ** 2))


def multiplier(n: int, r, ctx: PrecisionContext = DEFAULT_CONTEXT) -> MultiplierValue:
    """``M_n(r) = K(k_{n^2 r}) / K(k_r)``."""
    if n < 1:
        raise DomainError(f"multiplier degree must be positive, got {n}")
    r = parse_r(r)
    if n == 1:
        return MultiplierValue(1, r, mpf(1))
    with ctx.workprec():
        big = modulus_from_r(r, ctx, scale=n * n)
        small = modulus_from_r(r, ctx)
        return MultiplierValue(n, r, ellK(big.k, ctx) / ellK(small.k, ctx))


def landen_4r(m: Modulus, ctx: PrecisionContext = DEFAULT_CONTEXT) -> Modulus:
    """Modulus at ``4r`` from the modulus at ``r``: ``k_4r = (1 - k') / (1 + k')``."""
    with ctx.workprec():
        s = 1 + m.kprime
        # 1 - k' = k^2 / (1 + k') avoids cancellation for small k
        return Modulus(m.k ** 2 / s ** 2, 2 * mp.sqrt(m.kprime) / s)


def r_from_modulus(k, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpf:
    """Invert the singular modulus: ``r = (K(k') / K(k))**2``."""
    with ctx.workprec():
        m = Modulus.from_k(k, ctx)
        return (ellK(m.kprime, ctx) / ellK(m.k, ctx)) ** 2


def gamma(x, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpf:
    """Euler's Gamma function for ``x > 0``."""
    with ctx.workprec():
        x = _to_mpf(x) if isinstance(x, Fraction) else mpf(x)
        if x <= 0:
            raise DomainError(f"gamma is only provided for x > 0, got {mp.nstr(x, 10)}")
        return mp.gamma(x)
