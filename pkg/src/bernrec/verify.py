"""Invariant suites run by ``bernrec verify``.

Each suite returns a :class:`SuiteResult`; a suite passes iff it recorded
no failures. Failure lines name the offending index and both values.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .engines import BernoulliTable, EngineKind, classical_value, extend_table
from .kernel import DEFAULT_FACTORIALS
from .zeta import (
    context,
    direct_tail_bound,
    euler_coefficient,
    hasse_inner_sum,
    hasse_tail_bound,
    hasse_zeta,
    hasse_zeta_exact,
    kuo_rhs,
    to_mpf,
    zeta_direct,
)

__all__ = [
    "SUITES",
    "DEFAULT_LIMITS",
    "KUO_RTOL",
    "GENFUN_TOL",
    "SuiteResult",
    "run_suite",
    "genfun_residual",
]

KUO_RTOL = 1e-8
KUO_DPS = 50
GENFUN_TOL = 1e-25
GENFUN_DPS = 50
GENFUN_X = Fraction(1, 10)
HASSE_TRIANGLE_TERMS = 40
DIRECT_TRIANGLE_TERMS = 10_000


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    failures: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def check(self, cond: bool, message: str) -> bool:
        self.checks += 1
        if not cond:
            self.failures.append(message)
        return cond

    def lines(self) -> list[str]:
        status = "PASS" if self.ok else "FAIL"
        out = [f"FAIL {m}" for m in self.failures]
        out += self.notes
        out.append(f"{status} {self.name}: {self.checks - len(self.failures)}/{self.checks} checks passed")
        return out


def check_cross(limit: int, seed: BernoulliTable | None = None) -> SuiteResult:
    """Shortened vs classical for every index ``1 .. limit``.

    Even indices compare the two engines. Odd indices compare the classical
    recurrence against the table's parity rule (``B_1 = -1/2``, else 0).
    """
    res = SuiteResult("cross")
    short = seed.copy(instrument=False) if seed is not None else BernoulliTable()
    extend_table(short, limit, EngineKind.SHORTENED)
    classic = BernoulliTable()
    extend_table(classic, limit, EngineKind.CLASSICAL)
    agree = 0
    for i in range(1, limit + 1):
        c = classical_value(i, classic) if i % 2 else classic.value(i)
        s = short.value(i)
        if res.check(c == s, f"B_{i}: shortened={s} classical={c}"):
            agree += 1
    res.notes.append(f"{agree}/{limit} indices agree")
    return res


def check_signs(limit: int, seed: BernoulliTable | None = None) -> SuiteResult:
    """``(-1)^(m+1) B_2m > 0`` for ``2m <= limit`` and ``B_odd = 0`` for ``3 <= odd <= limit``."""
    res = SuiteResult("signs")
    table = seed.copy(instrument=False) if seed is not None else BernoulliTable()
    extend_table(table, limit, EngineKind.SHORTENED)
    for two_m in range(2, limit + 1, 2):
        m = two_m // 2
        q = table.value(two_m)
        res.check((-1) ** (m + 1) * q > 0, f"B_{two_m} = {q} has the wrong sign")
    classic = BernoulliTable()
    extend_table(classic, limit, EngineKind.CLASSICAL)
    for n in range(3, limit + 1, 2):
        q = classical_value(n, classic)
        res.check(q == 0, f"B_{n}: classical={q} expected=0")
    return res


def check_kuo(limit: int, seed: BernoulliTable | None = None) -> SuiteResult:
    """Kuo's formula against Euler's ``q_n pi^2n`` for ``n = 1 .. limit``."""
    res = SuiteResult("kuo")
    table = seed.copy(instrument=False) if seed is not None else BernoulliTable()
    extend_table(table, 2 * limit, EngineKind.SHORTENED)
    zeta_vals = [euler_coefficient(k, table).value(KUO_DPS) for k in range(limit // 2 + 1)]
    worst = 0.0
    for n in range(1, limit + 1):
        exact = euler_coefficient(n, table).value(KUO_DPS)
        rhs = kuo_rhs(n, zeta_vals[: n // 2 + 1], dps=KUO_DPS)
        rel = float(abs(rhs - exact) / exact)
        worst = max(worst, rel)
        res.check(rel < KUO_RTOL, f"n={n}: kuo_rhs={rhs} euler={exact} rel={rel:.3e}")
    res.notes.append(f"max relative error {worst:.3e} (tolerance {KUO_RTOL:g})")
    return res


def check_hasse(limit: int, seed: BernoulliTable | None = None) -> SuiteResult:
    """zeta(0) = -1/2 exactly, the vanishing alternating sums, and the
    direct/Hasse/Euler triangle at s = 2, 4, 6, 8."""
    res = SuiteResult("hasse")
    half = Fraction(-1, 2)
    for terms in range(limit + 1):
        exact = hasse_zeta_exact(0, terms)
        res.check(exact == half, f"terms={terms}: hasse zeta(0)={exact} expected=-1/2")
        approx = hasse_zeta(0, terms)
        res.check(approx == -0.5, f"terms={terms}: hasse zeta(0)={approx} expected=-0.5")
    for n in range(1, limit + 1):
        inner = hasse_inner_sum(n, 0)
        res.check(inner == 0, f"n={n}: sum (-1)^k C(n,k)={inner} expected=0")
    res.notes.append("zeta(0) = -1/2 exactly" if res.ok else "zeta(0) mismatch")

    table = seed.copy(instrument=False) if seed is not None else BernoulliTable()
    h_terms = max(limit, HASSE_TRIANGLE_TERMS)
    for s in (2, 4, 6, 8):
        euler = euler_coefficient(s // 2, table).value(30)
        direct = zeta_direct(s, DIRECT_TRIANGLE_TERMS)
        hasse = hasse_zeta(s, h_terms, dps=30)
        d_tol = direct_tail_bound(s, DIRECT_TRIANGLE_TERMS)
        h_tol = hasse_tail_bound(s, h_terms)
        res.check(0 <= euler - direct <= d_tol, f"s={s}: direct={direct} euler={euler} bound={d_tol:.3e}")
        res.check(abs(euler - hasse) <= h_tol, f"s={s}: hasse={hasse} euler={euler} bound={h_tol:.3e}")
        res.check(abs(direct - hasse) <= d_tol + h_tol, f"s={s}: direct={direct} hasse={hasse}")
    return res


def genfun_residual(order: int, x: Fraction = GENFUN_X, dps: int = GENFUN_DPS, table: BernoulliTable | None = None):
    """``|sum_{k=0}^{order} B_k x^k/k! - x/(e^x - 1)|`` at ``dps`` digits."""
    if table is None:
        table = BernoulliTable()
    extend_table(table, order, EngineKind.SHORTENED)
    series = sum(
        (table.value(k) * x**k / DEFAULT_FACTORIALS[k] for k in range(order + 1)),
        Fraction(0),
    )
    ctx = context(dps)
    xm = to_mpf(ctx, x)
    return abs(to_mpf(ctx, series) - xm / ctx.expm1(xm))


def check_genfun(limit: int, seed: BernoulliTable | None = None) -> SuiteResult:
    res = SuiteResult("genfun")
    table = seed.copy(instrument=False) if seed is not None else None
    r = genfun_residual(limit, table=table)
    res.check(r < GENFUN_TOL, f"order={limit}: residual={r} tolerance={GENFUN_TOL:g}")
    res.notes.append(f"order {limit}, x={GENFUN_X}: residual {float(r):.3e}")
    return res


SUITES = {
    "cross": check_cross,
    "kuo": check_kuo,
    "hasse": check_hasse,
    "signs": check_signs,
    "genfun": check_genfun,
}

DEFAULT_LIMITS = {"cross": 100, "kuo": 20, "hasse": 40, "signs": 100, "genfun": 30}


def run_suite(name: str, limit: int | None = None, seed: BernoulliTable | None = None) -> SuiteResult:
    try:
        fn = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; known: {', '.join(SUITES)}") from None
    if limit is None:
        limit = DEFAULT_LIMITS[name]
    if limit < 0:
        raise ValueError(f"limit must be nonnegative, got {limit}")
    return fn(limit, seed)
