"""Zeta-side identities around the Bernoulli numbers.

Real-valued results use an explicit :class:`mpmath.ctx_mp.MPContext` built
per call from a ``dps`` argument, never the global ``mpmath.mp`` context, so
functions here are safe to call concurrently with different precisions.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from mpmath.ctx_mp import MPContext

from .engines import BernoulliTable, EngineKind, extend_table
from .kernel import DEFAULT_FACTORIALS

__all__ = [
    "GUARD_DIGITS",
    "ZetaDomainError",
    "ZetaCoefficient",
    "context",
    "to_mpf",
    "mpf_to_fraction",
    "euler_coefficient",
    "zeta_direct",
    "direct_tail_bound",
    "hasse_inner_sum",
    "hasse_tail_bound",
    "hasse_zeta",
    "hasse_zeta_exact",
    "kuo_rhs",
]

GUARD_DIGITS = 10


class ZetaDomainError(ValueError):
    pass


def context(dps: int) -> MPContext:
    """Fresh mpmath context carrying ``GUARD_DIGITS`` beyond ``dps``."""
    if dps < 1:
        raise ValueError(f"precision must be positive, got {dps}")
    ctx = MPContext()
    ctx.dps = dps + GUARD_DIGITS
    return ctx


def to_mpf(ctx: MPContext, q: Fraction):
    return ctx.mpf(q.numerator) / q.denominator


def mpf_to_fraction(x) -> Fraction:
    """Exact value of a finite binary float ``x``."""
    sign, man, exp, _ = x._mpf_
    if not man and exp:
        raise ValueError(f"not a finite number: {x}")
    q = Fraction(man) * Fraction(2) ** exp
    return -q if sign else q


@dataclass(frozen=True)
class ZetaCoefficient:
    """``zeta(2n) = q * pi^(2n)`` with ``q`` exact."""

    n: int
    q: Fraction

    def value(self, dps: int = 50):
        ctx = context(dps)
        return to_mpf(ctx, self.q) * ctx.pi ** (2 * self.n)


def euler_coefficient(n: int, table: BernoulliTable | None = None) -> ZetaCoefficient:
    """``q_n = (-1)^(n-1) 2^(2n-1) B_2n / (2n)!``; ``q_0 = -1/2``.

    Missing ``B_2n`` are filled in with the shortened engine.
    """
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if table is None:
        table = BernoulliTable()
    if 2 * n not in table:
        extend_table(table, 2 * n, EngineKind.SHORTENED)
    b = table.value(2 * n)
    # 2^(2n-1) is 1/2 at n = 0
    q = Fraction(4**n, 2) * b / DEFAULT_FACTORIALS[2 * n]
    if n % 2 == 0:
        q = -q
    return ZetaCoefficient(n, q)


def direct_tail_bound(s: float, terms: int) -> float:
    """Integral-test bound on ``sum_{k > terms} k^-s``: ``terms^(1-s)/(s-1)``."""
    return terms ** (1 - s) / (s - 1)


def zeta_direct(s, terms: int, dps: int = 30):
    """Partial sum ``sum_{k=1}^{terms} k^-s`` for real ``s > 1``.

    The truncation error is positive and below :func:`direct_tail_bound`.
    """
    if s <= 1:
        raise ZetaDomainError(f"direct series diverges for s = {s} <= 1")
    if terms < 1:
        raise ValueError(f"need at least one term, got {terms}")
    ctx = context(dps)
    if float(s).is_integer():
        p = int(s)
        return ctx.fsum(1 / ctx.mpf(k**p) for k in range(1, terms + 1))
    s = ctx.mpf(s)
    return ctx.fsum(ctx.mpf(k) ** -s for k in range(1, terms + 1))


def hasse_inner_sum(n: int, s: int = 0) -> Fraction:
    """Exact ``sum_{k=0}^{n} (-1)^k C(n, k) (k+1)^-s`` for integer ``s``."""
    total = Fraction(0)
    for k in range(n + 1):
        c = comb(n, k)
        term = Fraction(c, (k + 1) ** s) if s >= 0 else Fraction(c * (k + 1) ** -s)
        total += -term if k % 2 else term
    return total


def hasse_tail_bound(s, terms: int) -> float:
    """Truncation bound for :func:`hasse_zeta` at real ``s > 1``.

    For ``s > 0`` the inner sum equals
    ``(1/Gamma(s)) int_0^inf t^(s-1) e^-t (1 - e^-t)^n dt``, which lies in
    ``(0, 1]``, so the dropped terms total at most ``2^-(terms+1)``
    before the ``1/(1 - 2^(1-s))`` prefactor.
    """
    if s <= 1:
        raise ZetaDomainError(f"tail bound only derived for s > 1, got {s}")
    return 2.0 ** -(terms + 1) / (1 - 2.0 ** (1 - s))


def hasse_zeta_exact(s: int, terms: int) -> Fraction:
    """Hasse's series truncated after ``n = terms``, exactly, for integer ``s != 1``."""
    if s == 1:
        raise ZetaDomainError("Hasse series has a pole at s = 1")
    if terms < 0:
        raise ValueError(f"terms must be nonnegative, got {terms}")
    outer = Fraction(0)
    for n in range(terms + 1):
        outer += hasse_inner_sum(n, s) / 2 ** (n + 1)
    return outer / (1 - Fraction(2) ** (1 - s))


def hasse_zeta(s, terms: int, dps: int = 50):
    """Globally convergent series for zeta(s), truncated after ``n = terms``.

    ``(1/(1 - 2^(1-s))) sum_{n=0}^{terms} 2^-(n+1) sum_{k=0}^{n} (-1)^k C(n,k) (k+1)^-s``

    Integer ``s`` is summed in exact rationals and converted at the end, so
    ``hasse_zeta(0, N)`` is exactly ``-1/2``. For real ``s`` the only excluded
    point is ``s = 1``; the complex poles ``1 + 2 pi i m / ln 2`` are not
    reachable here.
    """
    if s == 1:
        raise ZetaDomainError("Hasse series has a pole at s = 1")
    if terms < 0:
        raise ValueError(f"terms must be nonnegative, got {terms}")
    ctx = context(dps)
    if float(s).is_integer():
        return to_mpf(ctx, hasse_zeta_exact(int(s), terms))
    s = ctx.mpf(s)
    outer = ctx.mpf(0)
    for n in range(terms + 1):
        inner = ctx.fsum((-1) ** k * comb(n, k) * ctx.power(k + 1, -s) for k in range(n + 1))
        outer += inner / ctx.mpf(2) ** (n + 1)
    return outer / (1 - ctx.power(2, 1 - s))


def kuo_rhs(n: int, zeta_inputs, dps: int = 50):
    """Right-hand side of Kuo's recurrence for zeta(2n).

    ``zeta_inputs[k]`` must hold zeta(2k) for ``k = 0 .. floor(n/2)``, with
    ``zeta_inputs[0] = -1/2``. The leading term is read as
    ``2^(2n-1) pi^(2n) / (4 ((n-1)!)^2 (2n-1))``.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    h = n // 2
    if len(zeta_inputs) < h + 1:
        raise ValueError(f"kuo_rhs({n}) needs zeta(0)..zeta({2 * h}), got {len(zeta_inputs)} values")
    ctx = context(dps)
    f = DEFAULT_FACTORIALS
    pi = ctx.pi
    two_pi = 2 * pi
    z = [ctx.mpf(v) if not isinstance(v, Fraction) else to_mpf(ctx, v) for v in zeta_inputs[: h + 1]]

    first = ctx.mpf(2) ** (2 * n - 1) * pi ** (2 * n) / (4 * f[n - 1] ** 2 * (2 * n - 1))

    single = ctx.fsum(
        (-1) ** k * z[k] * two_pi ** (2 * n - 2 * k) / (f[n - 2 * k] * (2 * n - 2 * k))
        for k in range(h + 1)
    ) / f[n - 1]

    double = ctx.fsum(
        (-1) ** (k + j) * z[k] * z[j] * two_pi ** (2 * n - 2 * k - 2 * j + 1)
        / (f[n - 2 * k] * f[n - 2 * j] * (2 * n - 2 * k - 2 * j + 1))
        for k in range(h + 1)
        for j in range(h + 1)
    ) / pi

    return first + single + double
