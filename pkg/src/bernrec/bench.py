"""Benchmark harness for the two Bernoulli engines.

Each row describes producing one ``B_{2n}``: how many distinct table
entries the engine read, how many rational multiplications (divisions
included) and additions it performed, the largest numerator it formed, and
the median wall time over repeats. ``num_bits`` is a high-water mark: the
largest numerator bit length formed while building every value up to and
including that index.

Counters come from an instrumented :func:`extend_table` run; wall time comes
from separate uninstrumented calls so the logger is never timed.
"""
from __future__ import annotations

import csv
import io
import json
import statistics
import time
from dataclasses import asdict, dataclass, field, fields
from typing import IO, Iterable

import jsonschema

from .engines import (
    BernoulliTable,
    EngineKind,
    OpCounts,
    bernoulli_shortened,
    classical_value,
    extend_table,
)

__all__ = [
    "SCHEMA_VERSION",
    "FIELDS",
    "ROW_SCHEMA",
    "REPORT_SCHEMA",
    "BenchRow",
    "BenchReport",
    "count_dependencies",
    "expected_dependencies",
    "run_bench",
]

SCHEMA_VERSION = 1
FIELDS = ("engine", "index", "deps", "mults", "adds", "num_bits", "wall_ns")

ROW_SCHEMA = {
    "type": "object",
    "properties": {
        "engine": {"enum": [e.value for e in EngineKind]},
        "index": {"type": "integer", "minimum": 2, "multipleOf": 2},
        "deps": {"type": "integer", "minimum": 1},
        "mults": {"type": "integer", "minimum": 0},
        "adds": {"type": "integer", "minimum": 0},
        "num_bits": {"type": "integer", "minimum": 0},
        "wall_ns": {"type": "integer", "minimum": 0},
    },
    "required": list(FIELDS),
    "additionalProperties": False,
}

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$id": f"bernrec-bench-report/v{SCHEMA_VERSION}",
    "type": "array",
    "items": ROW_SCHEMA,
}


@dataclass
class BenchRow:
    engine: str
    index: int
    deps: int
    mults: int
    adds: int
    num_bits: int
    wall_ns: int


@dataclass
class BenchReport:
    rows: list[BenchRow] = field(default_factory=list)

    def records(self) -> list[dict]:
        return [asdict(r) for r in self.rows]

    def for_engine(self, engine: EngineKind | str) -> list[BenchRow]:
        engine = EngineKind(engine).value
        return [r for r in self.rows if r.engine == engine]

    def write_csv(self, fp: IO[str]) -> None:
        w = csv.DictWriter(fp, fieldnames=FIELDS, lineterminator="\n")
        w.writeheader()
        w.writerows(self.records())

    def write_json(self, fp: IO[str]) -> None:
        json.dump(self.records(), fp, indent=1)
        fp.write("\n")

    def to_csv(self) -> str:
        buf = io.StringIO()
        self.write_csv(buf)
        return buf.getvalue()

    def to_json(self) -> str:
        buf = io.StringIO()
        self.write_json(buf)
        return buf.getvalue()

    @classmethod
    def from_records(cls, records: Iterable[dict]) -> BenchReport:
        records = list(records)
        jsonschema.validate(records, REPORT_SCHEMA)
        return cls([BenchRow(**r) for r in records])

    @classmethod
    def from_json(cls, text: str) -> BenchReport:
        return cls.from_records(json.loads(text))

    @classmethod
    def from_csv(cls, text: str) -> BenchReport:
        reader = csv.DictReader(io.StringIO(text))
        if tuple(reader.fieldnames or ()) != FIELDS:
            raise ValueError(f"unexpected CSV header {reader.fieldnames}, want {list(FIELDS)}")
        ints = {f.name for f in fields(BenchRow)} - {"engine"}
        return cls.from_records({k: (int(v) if k in ints else v) for k, v in row.items()} for row in reader)


def expected_dependencies(engine: EngineKind | str, index: int) -> int:
    """Closed-form dependency counts for even ``index >= 2``."""
    if EngineKind(engine) is EngineKind.SHORTENED:
        return index // 2 // 2 + 1
    return (index - 1) // 2 + 2


def _prerequisites(engine: EngineKind, index: int) -> BernoulliTable:
    table = BernoulliTable()
    if engine is EngineKind.SHORTENED:
        extend_table(table, 2 * (index // 4), engine)
    else:
        extend_table(table, index - 2, engine)
    return table


def count_dependencies(engine: EngineKind | str, index: int) -> int:
    """Distinct table entries read by ``engine`` while producing ``B_index``."""
    engine = EngineKind(engine)
    if index < 2 or index % 2:
        raise ValueError(f"index must be even and >= 2, got {index}")
    table = _prerequisites(engine, index).copy(instrument=True)
    if engine is EngineKind.SHORTENED:
        bernoulli_shortened(index, table)
    else:
        classical_value(index, table)
    return len(set(table.reads_for(index)))


def _instrumented_pass(engine: EngineKind, max_index: int, parallel: bool):
    table = BernoulliTable(instrument=True)
    counts: dict[int, OpCounts] = {}
    extend_table(table, max_index, engine, parallel=parallel, counts=counts)
    deps: dict[int, set[int]] = {}
    for requested, read in table.access_log:
        deps.setdefault(requested, set()).add(read)
    out = {}
    peak = 0
    for i in sorted(counts):
        c = counts[i]
        peak = max(peak, c.max_num_bits)
        out[i] = (len(deps[i]), c.mults, c.adds, peak)
    return table, out


def run_bench(
    max_index: int,
    engines: Iterable[EngineKind | str] = tuple(EngineKind),
    repeats: int = 3,
    parallel: bool = False,
) -> BenchReport:
    """One row per engine and even index ``2 .. max_index``.

    Raises ``RuntimeError`` if counters differ between repeats.
    """
    if max_index < 2:
        raise ValueError(f"max_index must be >= 2, got {max_index}")
    if repeats < 1:
        raise ValueError(f"repeats must be positive, got {repeats}")
    max_index -= max_index % 2
    report = BenchReport()
    for engine in sorted({EngineKind(e) for e in engines}, key=list(EngineKind).index):
        counters = None
        walls: dict[int, list[int]] = {}
        for _ in range(repeats):
            table, c = _instrumented_pass(engine, max_index, parallel)
            if counters is not None and c != counters:
                raise RuntimeError(f"{engine} counters changed between repeats")
            counters = c
            plain = table.copy(instrument=False)
            for index in range(2, max_index + 1, 2):
                t0 = time.perf_counter_ns()
                if engine is EngineKind.SHORTENED:
                    bernoulli_shortened(index, plain)
                else:
                    classical_value(index, plain)
                walls.setdefault(index, []).append(time.perf_counter_ns() - t0)
        for index in range(2, max_index + 1, 2):
            deps, mults, adds, bits = counters[index]
            report.rows.append(
                BenchRow(engine.value, index, deps, mults, adds, bits, int(statistics.median(walls[index])))
            )
    return report
