import json

import jsonschema
import pytest

from bernrec.bench import (
    FIELDS,
    REPORT_SCHEMA,
    BenchReport,
    BenchRow,
    count_dependencies,
    expected_dependencies,
    run_bench,
)
from bernrec.engines import EngineKind


@pytest.mark.parametrize(
    "engine,index,expected",
    [("shortened", 2, 1), ("shortened", 8, 3), ("classical", 8, 5), ("classical", 2, 2)],
)
def test_count_dependencies_examples(engine, index, expected):
    assert count_dependencies(engine, index) == expected


def test_count_dependencies_closed_forms():
    for index in range(2, 81, 2):
        for engine in EngineKind:
            assert count_dependencies(engine, index) == expected_dependencies(engine, index)


@pytest.mark.parametrize("index", [0, 3])
def test_count_dependencies_rejects_bad_index(index):
    with pytest.raises(ValueError):
        count_dependencies("shortened", index)


def counters(report):
    return [(r.engine, r.index, r.deps, r.mults, r.adds, r.num_bits) for r in report.rows]


def test_smallest_run():
    r = run_bench(4, {EngineKind.CLASSICAL}, 3)
    assert [(x.engine, x.index) for x in r.rows] == [("classical", 2), ("classical", 4)]
    assert counters(r) == counters(run_bench(4, {"classical"}, 1))


def test_shortened_dependency_column():
    r = run_bench(40, {"shortened"}, 1)
    assert len(r.rows) == 20
    for row in r.rows:
        n = row.index // 2
        assert row.deps == n // 2 + 1


@pytest.fixture(scope="module")
def report_200():
    return run_bench(200, tuple(EngineKind), 3)


def test_shortened_reads_fewer_than_classical(report_200):
    short = {r.index: r.deps for r in report_200.for_engine("shortened")}
    classic = {r.index: r.deps for r in report_200.for_engine("classical")}
    assert set(short) == set(classic) == set(range(2, 201, 2))
    for index in range(6, 201, 2):
        assert short[index] < classic[index]


def test_num_bits_nondecreasing(report_200):
    for engine in EngineKind:
        bits = [r.num_bits for r in report_200.for_engine(engine)]
        assert all(a <= b for a, b in zip(bits, bits[1:]))


def test_counters_identical_serial_parallel():
    serial = run_bench(60, tuple(EngineKind), 1)
    par = run_bench(60, tuple(EngineKind), 2, parallel=True)
    assert counters(serial) == counters(par)


def test_report_roundtrips(report_200):
    csv_text = report_200.to_csv()
    assert csv_text.splitlines()[0] == ",".join(FIELDS)
    assert len(csv_text.splitlines()) == 1 + len(report_200.rows)
    assert BenchReport.from_csv(csv_text) == report_200
    data = json.loads(report_200.to_json())
    jsonschema.validate(data, REPORT_SCHEMA)
    assert [list(d) for d in data] == [list(FIELDS)] * len(data)
    assert BenchReport.from_json(report_200.to_json()) == report_200


@pytest.mark.parametrize(
    "patch",
    [{"engine": "lacunary"}, {"index": 3}, {"deps": -1}, {"wall_ns": 1.5}, {"extra": 1}],
)
def test_schema_rejects_bad_rows(patch):
    row = BenchRow("shortened", 4, 2, 1, 1, 1, 10).__dict__ | patch
    with pytest.raises(jsonschema.ValidationError):
        BenchReport.from_records([row])


def test_csv_header_checked():
    with pytest.raises(ValueError):
        BenchReport.from_csv("engine,index\nshortened,2\n")


def test_run_bench_arguments():
    with pytest.raises(ValueError):
        run_bench(0)
    with pytest.raises(ValueError):
        run_bench(4, repeats=0)
