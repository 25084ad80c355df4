"""Bernoulli number engines.

Two ways to get ``B_{2n}`` from a memo table:

* the classical full-history recurrence ``sum_{j<=n} C(n+1, j) B_j = 0``
  solved for its top term, which reads every nonzero ``B_j`` with ``j < n``;
* the shortened recurrence obtained from Kuo's formula for ``zeta(2n)``,
  which reads only ``B_0, B_2, ..., B_{2 floor(n/2)}``.

Because the shortened form only needs the first half of the table, every
value in ``B_{2n+2} .. B_{4n+2}`` can be computed independently once
``B_0 .. B_{2n}`` are known. :func:`extend_table` builds tables in such
doubling waves, optionally across worker processes.
"""
from __future__ import annotations

import enum
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterator, Mapping

from .kernel import DEFAULT_FACTORIALS, coeff_a, coeff_b

__all__ = [
    "EngineKind",
    "OpCounts",
    "BernoulliTable",
    "InsufficientTableError",
    "bernoulli_classical",
    "classical_value",
    "bernoulli_shortened",
    "shared_coefficients",
    "extend_table",
    "waves",
]

B1 = Fraction(-1, 2)


class EngineKind(str, enum.Enum):
    CLASSICAL = "classical"
    SHORTENED = "shortened"

    def __str__(self) -> str:
        return self.value


class InsufficientTableError(LookupError):
    """A recurrence needed an entry that is not in the table."""

    def __init__(self, missing: int, requested: int):
        super().__init__(f"insufficient table: B_{missing} is missing (needed for B_{requested})")
        self.missing = missing
        self.requested = requested


@dataclass
class OpCounts:
    """Exact-arithmetic counters incremented by the engines themselves."""

    mults: int = 0
    adds: int = 0
    max_num_bits: int = 0

    def see(self, q: Fraction) -> None:
        bits = abs(q.numerator).bit_length()
        if bits > self.max_num_bits:
            self.max_num_bits = bits


class BernoulliTable:
    """Memo table of even-index Bernoulli numbers.

    Only even indices are stored; ``B_1 = -1/2`` lives in :attr:`b1` and
    odd indices above 1 are identically zero. With ``instrument=True`` every
    engine read is appended to :attr:`access_log` as ``(requested, read)``.
    """

    b1 = B1

    def __init__(self, values: Mapping[int, Fraction] | None = None, instrument: bool = False):
        self.values: dict[int, Fraction] = {0: Fraction(1)}
        self.access_log: list[tuple[int, int]] | None = [] if instrument else None
        if values:
            self.commit(values)

    def __contains__(self, index: int) -> bool:
        return index in self.values

    def __len__(self) -> int:
        return len(self.values)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BernoulliTable):
            return NotImplemented
        return self.values == other.values

    def __repr__(self) -> str:
        return f"BernoulliTable(frontier={self.frontier})"

    @property
    def instrumented(self) -> bool:
        return self.access_log is not None

    @property
    def frontier(self) -> int:
        """Largest even ``2n`` such that every ``B_{2m}``, ``2m <= 2n``, is stored."""
        two_n = 0
        while two_n + 2 in self.values:
            two_n += 2
        return two_n

    def copy(self, instrument: bool | None = None) -> BernoulliTable:
        t = BernoulliTable(instrument=self.instrumented if instrument is None else instrument)
        t.values = dict(self.values)
        return t

    def value(self, index: int) -> Fraction:
        """Unlogged lookup of any index, odd ones included."""
        if index == 1:
            return self.b1
        if index % 2:
            return Fraction(0)
        try:
            return self.values[index]
        except KeyError:
            raise KeyError(f"B_{index} not in table") from None

    def read(self, requested: int, index: int) -> Fraction:
        if index == 1:
            q = self.b1
        else:
            try:
                q = self.values[index]
            except KeyError:
                raise InsufficientTableError(index, requested) from None
        if self.access_log is not None:
            self.access_log.append((requested, index))
        return q

    def commit(self, values: Mapping[int, Fraction]) -> None:
        """Store a batch of even-index values after checking the table invariants."""
        for index in sorted(values):
            q = Fraction(values[index])
            if index < 0 or index % 2:
                raise ValueError(f"only even nonnegative indices are stored, got {index}")
            m = index // 2
            if index == 0 and q != 1:
                raise ValueError(f"B_0 must be 1, got {q}")
            if index == 2 and q != Fraction(1, 6):
                raise ValueError(f"B_2 must be 1/6, got {q}")
            if m >= 1 and (q > 0) != (m % 2 == 1):
                raise ValueError(f"B_{index} = {q} violates (-1)^(m+1) B_2m > 0")
            self.values[index] = q

    def reads_for(self, requested: int) -> list[int]:
        if self.access_log is None:
            raise RuntimeError("table is not instrumented")
        return [r for q, r in self.access_log if q == requested]

    def items(self) -> Iterator[tuple[int, Fraction]]:
        return iter(sorted(self.values.items()))


def classical_value(n: int, table: BernoulliTable, counts: OpCounts | None = None) -> Fraction:
    """Solve ``sum_{j=0}^{n} C(n+1, j) B_j = 0`` for ``B_n`` from stored values.

    Does not recurse or memoize. Odd ``j > 1`` terms are skipped since those
    Bernoulli numbers vanish.
    """
    if n == 0:
        return Fraction(1)
    s = Fraction(0)
    for j in range(n):
        if j > 1 and j % 2:
            continue
        term = comb(n + 1, j) * table.read(n, j)
        s += term
        if counts is not None:
            counts.mults += 1
            counts.adds += 1
            counts.see(term)
            counts.see(s)
    result = -s / (n + 1)
    if counts is not None:
        counts.mults += 1
        counts.see(result)
    return result


def bernoulli_classical(n: int, table: BernoulliTable, counts: OpCounts | None = None) -> Fraction:
    """``B_n`` by the classical recurrence, filling missing even entries first."""
    if n < 0:
        raise ValueError(f"index must be nonnegative, got {n}")
    if n % 2 == 0 and n in table.values:
        return table.values[n]
    for two_m in range(2, n, 2):
        if two_m not in table.values:
            table.commit({two_m: classical_value(two_m, table)})
    q = classical_value(n, table, counts)
    if n % 2 == 0:
        table.commit({n: q})
    return q


def shared_coefficients(n: int, table: BernoulliTable) -> list[Fraction]:
    """``c_k = B_{2k} / ((2k)! (n-2k)!)`` for ``k = 0 .. floor(n/2)``."""
    f = DEFAULT_FACTORIALS
    return [table.read(2 * n, 2 * k) / (f[2 * k] * f[n - 2 * k]) for k in range(n // 2 + 1)]


def bernoulli_shortened(two_n: int, table: BernoulliTable, counts: OpCounts | None = None) -> Fraction:
    """``B_{2n}`` from ``B_0 .. B_{2 floor(n/2)}`` only.

    ``B_{2n} = (-1)^(n-1) [a_n - b_n S1 + (2n)! S2]`` with
    ``S1 = sum_k c_k/(n-k)`` and ``S2 = sum_{k,j} c_k c_j/(2n-2k-2j+1)``.
    The double sum is symmetric in ``(k, j)``, so each off-diagonal pair is
    evaluated once and doubled. Summation order is fixed: ascending k, then
    ascending j.
    """
    if two_n < 2 or two_n % 2:
        raise ValueError(f"shortened recurrence needs a positive even index, got {two_n}")
    n = two_n // 2
    c = shared_coefficients(n, table)
    h = len(c) - 1
    if counts is not None:
        counts.mults += h + 1
        for q in c:
            counts.see(q)

    s1 = Fraction(0)
    for k in range(h + 1):
        s1 += c[k] / (n - k)
        if counts is not None:
            counts.mults += 1
            counts.adds += 1
            counts.see(s1)

    s2 = Fraction(0)
    for k in range(h + 1):
        inner = c[k] / (2 * n - 4 * k + 1)
        off = Fraction(0)
        for j in range(k + 1, h + 1):
            off += c[j] / (2 * n - 2 * k - 2 * j + 1)
            if counts is not None:
                counts.mults += 1
                counts.adds += 1
                counts.see(off)
        s2 += c[k] * (inner + 2 * off)
        if counts is not None:
            # inner division, doubling, product; inner + off, accumulate
            counts.mults += 3
            counts.adds += 2
            counts.see(s2)

    bracket = coeff_a(n) - coeff_b(n) * s1 + DEFAULT_FACTORIALS[2 * n] * s2
    result = bracket if n % 2 else -bracket
    if counts is not None:
        counts.mults += 2
        counts.adds += 2
        counts.see(result)
    return result


def waves(frontier: int, target: int) -> Iterator[tuple[int, list[int]]]:
    """Yield ``(frontier, targets)`` for each doubling wave up to ``target``."""
    target -= target % 2
    while frontier < target:
        n = frontier // 2
        hi = min(4 * n + 2, target)
        batch = list(range(frontier + 2, hi + 1, 2))
        yield frontier, batch
        frontier = hi


_WORKER_TABLE: BernoulliTable | None = None


def _init_worker(values: dict[int, Fraction], instrument: bool) -> None:
    global _WORKER_TABLE
    t = BernoulliTable(instrument=instrument)
    t.values = values
    _WORKER_TABLE = t


def _wave_task(two_n: int, count: bool) -> tuple[int, Fraction, list[tuple[int, int]] | None, OpCounts | None]:
    t = _WORKER_TABLE
    assert t is not None
    return _compute_target(t, two_n, count)


def _compute_target(frontier: BernoulliTable, two_n: int, count: bool):
    if frontier.access_log is not None:
        frontier.access_log = []
    counts = OpCounts() if count else None
    q = bernoulli_shortened(two_n, frontier, counts)
    return two_n, q, frontier.access_log, counts


def extend_table(
    table: BernoulliTable,
    target: int,
    engine: EngineKind | str = EngineKind.SHORTENED,
    parallel: bool = False,
    *,
    counts: dict[int, OpCounts] | None = None,
    max_workers: int | None = None,
) -> BernoulliTable:
    """Extend ``table`` in place so it holds every ``B_{2m}`` with ``2m <= target``.

    The shortened engine works in doubling waves: with ``B_0 .. B_{2n}``
    committed, all of ``B_{2n+2} .. B_{4n+2}`` are computed against that
    frozen frontier and committed together at the end of the wave. Results,
    access log order, and counters do not depend on ``parallel``.

    If ``counts`` is given, per-index :class:`OpCounts` are stored in it.
    """
    engine = EngineKind(engine)
    if target < 0:
        raise ValueError(f"target must be nonnegative, got {target}")

    if engine is EngineKind.CLASSICAL:
        for two_m in range(2, target + 1, 2):
            if two_m in table.values:
                continue
            oc = OpCounts() if counts is not None else None
            table.commit({two_m: classical_value(two_m, table, oc)})
            if counts is not None:
                counts[two_m] = oc
        return table

    start = table.frontier
    for frontier, batch in waves(start, target):
        snapshot = dict((k, v) for k, v in table.values.items() if k <= frontier)
        instrument = table.instrumented
        count = counts is not None
        if parallel and len(batch) > 1:
            workers = max_workers or min(len(batch), os.cpu_count() or 1)
            with ProcessPoolExecutor(
                max_workers=workers, initializer=_init_worker, initargs=(snapshot, instrument)
            ) as pool:
                results = list(pool.map(_wave_task, batch, [count] * len(batch)))
        else:
            ft = BernoulliTable(instrument=instrument)
            ft.values = snapshot
            results = [_compute_target(ft, two_n, count) for two_n in batch]

        # single-threaded commit in ascending index order
        new = {}
        for two_n, q, log, oc in results:
            new[two_n] = q
            if table.access_log is not None and log is not None:
                table.access_log.extend(log)
            if counts is not None:
                counts[two_n] = oc
        table.commit(new)
    return table
