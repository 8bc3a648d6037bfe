"""Precision context, tail-controlled summation and real-root isolation.

Every routine here runs on mpmath's multiprecision floats.  Precision is
never read from mpmath's global state: callers pass a
:class:`PrecisionContext` and the routines enter ``mp.workprec`` themselves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

from mpmath import mp, mpf

from .errors import Diverged, DomainError, NonConvergent, PrecisionExhausted

__all__ = [
    "PrecisionContext",
    "DEFAULT_CONTEXT",
    "RealPoly",
    "Root",
    "RootSet",
    "sum_to_tolerance",
    "real_roots",
    "polish_root",
]

TAIL_RATIO_CAP = mpf("0.99")


@dataclass(frozen=True)
class PrecisionContext:
    """Working precision plus the guard bits reserved for accumulated error.

    Arithmetic runs at ``working_bits``; results are promised to
    ``eps = 2**-(working_bits - guard_bits)`` times a stated scale.
    """

    working_bits: int = 256
    guard_bits: int = 32

    def __post_init__(self):
        if self.working_bits < 64:
            raise DomainError(f"working_bits must be >= 64, got {self.working_bits}")
        if not 0 <= self.guard_bits < self.working_bits:
            raise DomainError(f"guard_bits must lie in [0, working_bits), got {self.guard_bits}")

    @property
    def eps(self) -> mpf:
        return mpf(2) ** (self.guard_bits - self.working_bits)

    def workprec(self):
        """Context manager that sets mpmath to the working precision."""
        return mp.workprec(self.working_bits)

    def with_bits(self, working_bits: int) -> "PrecisionContext":
        return PrecisionContext(working_bits, self.guard_bits)

    def tolerance(self, factor=100) -> mpf:
        return self.eps * factor


DEFAULT_CONTEXT = PrecisionContext()


def sum_to_tolerance(term: Callable[[int], mpf], mode: str = "series",
                     ctx: PrecisionContext = DEFAULT_CONTEXT, start: int = 0) -> mpf:
    """Sum (or multiply) ``term(start), term(start+1), ...`` to precision ``ctx.eps``.

    In ``"series"`` mode the terms are added; in ``"product"`` mode they are
    the factors of an infinite product and their distance from 1 drives the
    stopping rule.  The tail is bounded geometrically using the ratio of the
    last two terms (capped at 0.99), so the terms must eventually decay at
    least geometrically.

    >>> sum_to_tolerance(lambda n: mpf(1) / 2**n)
    mpf('2.0')
    """
    if mode not in ("series", "product"):
        raise DomainError(f"mode must be 'series' or 'product', got {mode!r}")
    product = mode == "product"
    with ctx.workprec():
        eps = ctx.eps
        acc = mpf(1) if product else mpf(0)
        prev = None
        for i in range(10 * ctx.working_bits):
            t = term(start + i)
            if product:
                acc *= t
                size = abs(t - 1)
                threshold = eps
            else:
                acc += t
                size = abs(t)
                threshold = eps * max(1, abs(acc))
            if size == 0:
                ratio = mpf(0)
            elif prev:
                ratio = min(size / prev, TAIL_RATIO_CAP)
            else:
                ratio = TAIL_RATIO_CAP
            tail = size * ratio / (1 - ratio)
            if size <= threshold and tail <= threshold:
                return +acc
            prev = size
    raise NonConvergent(
        f"{mode} did not reach 2^-{ctx.working_bits - ctx.guard_bits} "
        f"within {10 * ctx.working_bits} terms")


@dataclass(frozen=True)
class RealPoly:
    """Polynomial with real coefficients, constant term first."""

    coefficients: tuple

    def __init__(self, coefficients: Sequence):
        coeffs = [mpf(c) for c in coefficients]
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        if not coeffs or coeffs[-1] == 0:
            raise DomainError("the zero polynomial has no degree")
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x):
        acc = mpf(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def scale(self, x) -> mpf:
        """Sum of the absolute values of the monomials at ``x``.

        Rounding error in evaluating the polynomial is proportional to this,
        so residuals are judged against ``eps * scale``.
        """
        ax = abs(x)
        acc = mpf(0)
        for c in reversed(self.coefficients):
            acc = acc * ax + abs(c)
        return acc

    def derivative(self) -> "RealPoly":
        if self.degree <= 0:
            return _ZeroPoly()
        return RealPoly([i * c for i, c in enumerate(self.coefficients)][1:])

    def __add__(self, other):
        other = other if isinstance(other, RealPoly) else RealPoly([other])
        n = max(len(self.coefficients), len(other.coefficients))
        a = self.coefficients + (mpf(0),) * (n - len(self.coefficients))
        b = other.coefficients + (mpf(0),) * (n - len(other.coefficients))
        return _poly_or_zero([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return RealPoly([-c for c in self.coefficients])

    def __sub__(self, other):
        other = other if isinstance(other, RealPoly) else RealPoly([other])
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, RealPoly):
            return _poly_or_zero([c * other for c in self.coefficients])
        out = [mpf(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            for j, b in enumerate(other.coefficients):
                out[i + j] += a * b
        return RealPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = RealPoly([1])
        for _ in range(n):
            out = out * self
        return out

    def cauchy_bound(self) -> mpf:
        lead = abs(self.coefficients[-1])
        return 1 + max((abs(c) / lead for c in self.coefficients[:-1]), default=mpf(0))

    def root_bound(self) -> mpf:
        """Fujiwara's bound on ``|x|`` over all roots; much tighter than Cauchy's
        when the coefficients span many orders of magnitude.  Floored at 1 so
        that a monomial still gets a non-empty search interval."""
        c = self.coefficients
        n = self.degree
        lead = abs(c[-1])
        terms = [mp.root(abs(c[n - i]) / lead, i) for i in range(1, n)]
        terms.append(mp.root(abs(c[0]) / (2 * lead), n))
        return max(2 * max(terms), mpf(1))


class _ZeroPoly(RealPoly):
    """The zero polynomial, only ever produced by arithmetic."""

    def __init__(self):
        object.__setattr__(self, "coefficients", (mpf(0),))

    @property
    def degree(self) -> int:
        return -1

    def __neg__(self):
        return self


def _poly_or_zero(coeffs):
    if all(c == 0 for c in coeffs):
        return _ZeroPoly()
    return RealPoly(coeffs)


@dataclass(frozen=True)
class Root:
    value: mpf
    bracket: tuple
    residual: mpf
    multiplicity: int = 1


@dataclass(frozen=True)
class RootSet:
    """Real roots of a polynomial, sorted, each with a certified bracket."""

    roots: tuple = field(default_factory=tuple)

    def __iter__(self) -> Iterator[Root]:
        return iter(self.roots)

    def __len__(self):
        return len(self.roots)

    def __getitem__(self, i) -> Root:
        return self.roots[i]

    @property
    def values(self) -> list:
        return [r.value for r in self.roots]

    def nearest(self, x) -> Root:
        if not self.roots:
            raise DomainError("empty root set")
        return min(self.roots, key=lambda r: abs(r.value - x))


def _bisect(f, a, b, fa, width):
    """Shrink a sign-change bracket of ``f`` until it is narrower than ``width``."""
    while b - a > width:
        m = (a + b) / 2
        fm = f(m)
        if fm == 0:
            return m, m
        if (fm < 0) == (fa < 0):
            a, fa = m, fm
        else:
            b = m
    return a, b


def _newton(p: RealPoly, dp: RealPoly, x, lo, hi, bits):
    for _ in range(4 * int(math.log2(bits)) + 40):
        d = dp(x)
        if d == 0:
            raise Diverged(f"zero derivative at {x}")
        step = p(x) / d
        x = x - step
        if not lo <= x <= hi:
            raise Diverged(f"Newton iterate {mp.nstr(x, 10)} left [{mp.nstr(lo, 10)}, {mp.nstr(hi, 10)}]")
        if abs(step) <= mpf(2) ** (-bits) * max(1, abs(x)):
            break
    return x


def polish_root(p: RealPoly, seed, ctx: PrecisionContext = DEFAULT_CONTEXT, bracket=None) -> mpf:
    """Newton-polish ``seed`` to a root of ``p``.

    ``bracket`` bounds the iteration; it defaults to ``seed`` plus or minus
    half of ``max(1, |seed|)``.  Leaving it raises :class:`Diverged`.
    """
    with ctx.workprec():
        seed = mpf(seed)
        if bracket is None:
            h = max(1, abs(seed)) / 2
            bracket = (seed - h, seed + h)
        lo, hi = (mpf(b) for b in bracket)
        x = _newton(p, p.derivative(), seed, lo, hi, ctx.working_bits)
        if abs(p(x)) > ctx.eps * p.scale(x):
            raise Diverged(f"residual {mp.nstr(abs(p(x)), 5)} above eps*scale after polishing")
        return +x


def real_roots(p: RealPoly, interval, ctx: PrecisionContext = DEFAULT_CONTEXT,
               min_depth: int | None = None) -> RootSet:
    """All real roots of ``p`` in the closed ``interval``.

    Roots are isolated by sign changes on a dyadic grid that is refined
    until the count is stable, narrowed by bisection and polished by
    Newton's method.  A root of multiplicity two shows up as a simple root
    of ``p'`` at which ``p`` vanishes to ``eps * scale``; it is reported
    with ``multiplicity=2``.  A near-touching dip that cannot be resolved at
    the working precision raises :class:`PrecisionExhausted`.

    An infinite endpoint is replaced by Fujiwara's bound on the roots.
    """
    if p.degree < 1:
        return RootSet(())
    with ctx.workprec():
        lo, hi = (mpf(v) for v in interval)
        bound = p.root_bound()
        if mp.isinf(hi):
            hi = bound
        if mp.isinf(lo):
            lo = -bound
        if not lo < hi:
            raise DomainError(f"empty interval [{lo}, {hi}]")
        eps = ctx.eps
        dp = p.derivative()
        depth = min_depth or max(8, math.ceil(math.log2(16 * p.degree)))
        found = None
        for d in range(depth, depth + 4):
            roots = _scan(p, dp, lo, hi, d, ctx)
            if found is not None and len(roots) == len(found):
                break
            found = roots
        roots = sorted(found, key=lambda r: r.value)
        for root in roots:
            if root.residual > eps * p.scale(root.value):
                raise PrecisionExhausted(f"root {mp.nstr(root.value, 10)} not resolved")
        return RootSet(tuple(roots))


def _scan(p, dp, lo, hi, depth, ctx):
    eps = ctx.eps
    bits = ctx.working_bits
    n = 2 ** depth
    xs = [lo + (hi - lo) * j / n for j in range(n + 1)]
    vs = [p(x) for x in xs]
    width = mpf(2) ** (-(bits // 2)) * max(1, abs(lo), abs(hi))
    roots = []

    def simple(a, b, fa):
        a, b = _bisect(p, a, b, fa, width)
        if a == b:
            x = a
        else:
            x = _newton(p, dp, (a + b) / 2, a, b, bits) if dp((a + b) / 2) != 0 else (a + b) / 2
        roots.append(Root(+x, (a, b), abs(p(x)), 1))

    for j in range(n):
        if vs[j] == 0:
            roots.append(Root(xs[j], (xs[j], xs[j]), mpf(0), 1))
        elif vs[j + 1] != 0 and (vs[j] < 0) != (vs[j + 1] < 0):
            simple(xs[j], xs[j + 1], vs[j])
    if vs[n] == 0:
        roots.append(Root(xs[n], (xs[n], xs[n]), mpf(0), 1))

    # Touching roots and close pairs: local minima of |p| without a sign change.
    for j in range(1, n):
        a, b = j - 1, j + 1
        if vs[a] == 0 or vs[j] == 0 or vs[b] == 0:
            continue
        if (vs[a] < 0) != (vs[j] < 0) or (vs[j] < 0) != (vs[b] < 0):
            continue
        if not (abs(vs[j]) <= abs(vs[a]) and abs(vs[j]) <= abs(vs[b])):
            continue
        da, db = dp(xs[a]), dp(xs[b])
        if da == 0 or db == 0 or (da < 0) == (db < 0):
            continue
        ca, cb = _bisect(dp, xs[a], xs[b], da, width)
        xc = (ca + cb) / 2
        ddp = dp.derivative()
        if ca != cb and ddp(xc) != 0:
            xc = _newton(dp, ddp, xc, ca, cb, bits)
        pc = p(xc)
        scale = p.scale(xc)
        if abs(pc) <= eps * scale:
            roots.append(Root(+xc, (ca, cb), abs(pc), 2))
        elif (pc < 0) != (vs[j] < 0):
            simple(xs[a], xc, vs[a])
            simple(xc, xs[b], pc)
        elif abs(pc) <= mp.sqrt(eps) * scale:
            raise PrecisionExhausted(
                f"near-double root at {mp.nstr(xc, 10)}: |p| = {mp.nstr(abs(pc), 5)} "
                f"cannot be resolved at {bits} bits")
    # a touching root found near a grid point may be found twice
    unique = []
    for r in sorted(roots, key=lambda r: r.value):
        if unique and abs(r.value - unique[-1].value) <= width * 4:
            if r.multiplicity > unique[-1].multiplicity:
                unique[-1] = r
            continue
        unique.append(r)
    return unique
