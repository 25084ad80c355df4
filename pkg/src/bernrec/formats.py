"""Text formats: ratio tables, decimal rendering, and code tables."""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import IO, Iterable, Iterator

from .engines import BernoulliTable

__all__ = [
    "OutputFormat",
    "DIALECTS",
    "format_ratio",
    "format_decimal",
    "parse_ratio_lines",
    "read_ratio_table",
    "table_from_ratio",
    "ratio_lines",
    "render_bernoulli",
]

DIALECTS = ("csv", "text")


@dataclass(frozen=True)
class OutputFormat:
    """``ratio``, ``json``, ``decimal:D`` or ``code-table:DIALECT``."""

    kind: str
    digits: int | None = None
    dialect: str | None = None

    @classmethod
    def parse(cls, token: str) -> OutputFormat:
        name, _, arg = token.partition(":")
        if name in ("ratio", "json") and not arg:
            return cls(name)
        if name == "decimal":
            try:
                digits = int(arg)
            except ValueError:
                raise ValueError(f"decimal format needs a digit count, e.g. decimal:10 (got {token!r})") from None
            if digits < 1:
                raise ValueError(f"decimal digits must be >= 1, got {digits}")
            return cls("decimal", digits=digits)
        if name == "code-table":
            dialect = arg or "text"
            if dialect not in DIALECTS:
                raise ValueError(f"unknown code-table dialect {dialect!r}; known: {', '.join(DIALECTS)}")
            return cls("code-table", dialect=dialect)
        raise ValueError(f"unknown format {token!r}")

    def __str__(self) -> str:
        if self.kind == "decimal":
            return f"decimal:{self.digits}"
        if self.kind == "code-table":
            return f"code-table:{self.dialect}"
        return self.kind


def format_ratio(q: Fraction) -> str:
    return str(q)


def format_decimal(q: Fraction, digits: int) -> str:
    """Fixed-point rendering with ``digits`` fractional digits, rounded half-to-even.

    >>> format_decimal(Fraction(1, 6), 10)
    '0.1666666667'
    """
    scaled = round(q * 10**digits)  # Fraction.__round__ rounds half to even
    # a negative value that rounds to zero keeps its sign
    sign = "-" if q < 0 else ""
    whole, frac = divmod(abs(scaled), 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}"


def parse_ratio_lines(lines: Iterable[str]) -> Iterator[tuple[int, Fraction]]:
    """Parse ``index<TAB>num/den`` lines; ``#`` comments and blank lines are skipped."""
    for lineno, line in enumerate(lines, 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            idx, value = line.split("\t")
            yield int(idx), Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"line {lineno}: cannot parse {line!r}: {e}") from None


def read_ratio_table(fp: IO[str]) -> dict[int, Fraction]:
    return dict(parse_ratio_lines(fp))


def table_from_ratio(entries: dict[int, Fraction], instrument: bool = False) -> BernoulliTable:
    """Build a table from parsed ratio entries.

    Odd entries must agree with ``B_1 = -1/2`` and ``B_odd = 0``; even
    entries must be contiguous from 0 so the table has a clean frontier.
    """
    table = BernoulliTable(instrument=instrument)
    evens = {}
    for idx, q in entries.items():
        if idx < 0:
            raise ValueError(f"negative index {idx}")
        if idx % 2:
            if q != table.value(idx):
                raise ValueError(f"B_{idx} = {q} contradicts the known value {table.value(idx)}")
        else:
            evens[idx] = q
    if evens:
        top = max(evens)
        missing = [i for i in range(0, top + 1, 2) if i not in evens]
        if missing:
            raise ValueError(f"seed table has a gap: B_{missing[0]} is missing below B_{top}")
    table.commit(evens)
    return table


def ratio_lines(table: BernoulliTable, upto: int) -> Iterator[tuple[int, Fraction]]:
    """``(index, B_index)`` for 0, 1 and even indices up to ``upto``."""
    yield 0, table.value(0)
    if upto >= 1:
        yield 1, table.b1
    for i in range(2, upto + 1, 2):
        yield i, table.value(i)


def render_bernoulli(rows: Iterable[tuple[int, Fraction]], fmt: OutputFormat, out: IO[str]) -> None:
    rows = list(rows)
    if fmt.kind == "ratio":
        for i, q in rows:
            out.write(f"{i}\t{format_ratio(q)}\n")
    elif fmt.kind == "decimal":
        for i, q in rows:
            out.write(f"{i}\t{format_decimal(q, fmt.digits)}\n")
    elif fmt.kind == "json":
        # numerators/denominators as strings so non-Python readers keep every digit
        json.dump(
            [{"index": i, "numerator": str(q.numerator), "denominator": str(q.denominator)} for i, q in rows],
            out,
            indent=1,
        )
        out.write("\n")
    elif fmt.dialect == "csv":
        out.write("index,numerator,denominator\n")
        for i, q in rows:
            out.write(f"{i},{q.numerator},{q.denominator}\n")
    else:
        w_i = max(len("index"), *(len(str(i)) for i, _ in rows))
        w_n = max(len("numerator"), *(len(str(q.numerator)) for _, q in rows))
        out.write(f"{'index':>{w_i}}  {'numerator':>{w_n}}  denominator\n")
        for i, q in rows:
            out.write(f"{i:>{w_i}}  {q.numerator:>{w_n}}  {q.denominator}\n")
