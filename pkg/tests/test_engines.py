from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bernrec.engines import (
    BernoulliTable,
    EngineKind,
    InsufficientTableError,
    OpCounts,
    bernoulli_classical,
    bernoulli_shortened,
    classical_value,
    extend_table,
    shared_coefficients,
    waves,
)
from bernrec.kernel import factorial, is_canonical

from oracles import normalized_rhs


def table_through(two_n, engine=EngineKind.CLASSICAL, instrument=False):
    t = BernoulliTable(instrument=instrument)
    extend_table(t, two_n, engine)
    return t


@pytest.mark.parametrize(
    "n,expected",
    [(0, Fraction(1)), (1, Fraction(-1, 2)), (3, Fraction(0)), (4, Fraction(-1, 30))],
)
def test_classical_examples(n, expected):
    assert bernoulli_classical(n, BernoulliTable()) == expected


def test_classical_b4_against_brute(brute):
    assert brute[4] == Fraction(-1, 30)
    assert bernoulli_classical(4, BernoulliTable()) == brute[4]


def test_classical_matches_brute_oracle(brute):
    t = BernoulliTable()
    for n in range(len(brute)):
        assert bernoulli_classical(n, t) == brute[n], n


def test_classical_memoizes_even_values():
    t = BernoulliTable()
    bernoulli_classical(10, t)
    assert set(t.values) == {0, 2, 4, 6, 8, 10}


def test_classical_parity():
    t = BernoulliTable()
    for n in range(3, 100, 2):
        assert bernoulli_classical(n, t) == 0
    assert all(i % 2 == 0 for i in t.values)


@pytest.mark.parametrize("two_n,expected", [(2, Fraction(1, 6)), (4, Fraction(-1, 30)), (6, Fraction(1, 42))])
def test_shortened_examples(two_n, expected):
    t = table_through(2 * (two_n // 4))
    assert bernoulli_shortened(two_n, t) == expected


def test_shortened_b2_by_hand():
    # a_1 - b_1 * (1/1) + 2! * (1/3)
    assert Fraction(1, 2) - 1 + Fraction(2, 3) == Fraction(1, 6)
    assert bernoulli_shortened(2, BernoulliTable()) == Fraction(1, 6)


def test_shortened_b4_by_hand():
    assert -(2 - 4 + Fraction(61, 30)) == Fraction(-1, 30)


def test_shortened_matches_brute(brute):
    t = BernoulliTable()
    for two_n in range(2, len(brute), 2):
        t.commit({two_n: bernoulli_shortened(two_n, t)})
        assert t.values[two_n] == brute[two_n], two_n


def test_shortened_does_not_store_or_recurse():
    t = BernoulliTable()
    t.commit({2: Fraction(1, 6)})
    bernoulli_shortened(4, t)
    assert 4 not in t.values


def test_shortened_insufficient_table():
    t = BernoulliTable()
    with pytest.raises(InsufficientTableError) as exc:
        bernoulli_shortened(8, t)
    assert exc.value.missing == 2
    assert "B_2" in str(exc.value)


@pytest.mark.parametrize("two_n", [0, 3, -2])
def test_shortened_rejects_bad_index(two_n):
    with pytest.raises(ValueError):
        bernoulli_shortened(two_n, BernoulliTable())


@pytest.mark.parametrize(
    "n,expected",
    [
        (1, [Fraction(1)]),
        (2, [Fraction(1, 2), Fraction(1, 12)]),
        (4, [Fraction(1, 24), Fraction(1, 24), Fraction(-1, 720)]),
    ],
)
def test_shared_coefficients(n, expected):
    assert shared_coefficients(n, table_through(n)) == expected


def test_dependency_bound_property():
    t = table_through(200)
    for two_n in range(2, 201, 2):
        n = two_n // 2
        lt = t.copy(instrument=True)
        bernoulli_shortened(two_n, lt)
        reads = set(lt.reads_for(two_n))
        assert reads == set(range(0, 2 * (n // 2) + 1, 2))
        assert len(reads) == n // 2 + 1


def test_kuo3_identity(brute):
    t = BernoulliTable()
    for n in range(1, 51):
        t.commit({2 * n: bernoulli_shortened(2 * n, t)})
        assert t.values[2 * n] / factorial(2 * n) == normalized_rhs(n, brute), n


def test_sign_alternation(shortened_600):
    for two_m, q in shortened_600.items():
        m = two_m // 2
        if m:
            assert (-1) ** (m + 1) * q > 0


@pytest.mark.slow
def test_engine_equivalence_to_600(shortened_600, classical_600):
    assert shortened_600.frontier == classical_600.frontier == 600
    for i in range(0, 601, 2):
        assert shortened_600.values[i] == classical_600.values[i], i


def test_all_values_canonical(shortened_600):
    assert all(is_canonical(q) for _, q in shortened_600.items())


def test_table_invariants_enforced():
    t = BernoulliTable()
    with pytest.raises(ValueError):
        t.commit({3: Fraction(0)})
    with pytest.raises(ValueError):
        t.commit({4: Fraction(1, 30)})
    with pytest.raises(ValueError):
        t.commit({2: Fraction(1, 5)})
    with pytest.raises(ValueError):
        t.commit({0: Fraction(2)})
    assert t.values == {0: 1}


def test_table_value_handles_odd_indices():
    t = BernoulliTable()
    assert t.value(1) == Fraction(-1, 2)
    assert t.value(7) == 0
    with pytest.raises(KeyError):
        t.value(4)


def test_instrumentation_is_opt_in():
    t = table_through(20)
    assert t.access_log is None
    with pytest.raises(RuntimeError):
        t.reads_for(4)


def test_extend_empty_to_zero():
    t = extend_table(BernoulliTable(), 0)
    assert t.values == {0: Fraction(1)}


def test_extend_from_b2_to_6_reads_only_b0_b2():
    t = BernoulliTable({2: Fraction(1, 6)}, instrument=True)
    extend_table(t, 6)
    assert t.values[4] == Fraction(-1, 30)
    assert t.values[6] == Fraction(1, 42)
    assert t.access_log and max(r for _, r in t.access_log) <= 2


def test_extend_from_b8_to_18_is_one_wave(brute):
    seed = table_through(8)
    assert list(waves(8, 18)) == [(8, [10, 12, 14, 16, 18])]
    t = seed.copy(instrument=True)
    extend_table(t, 18)
    assert {req for req, _ in t.access_log} == {10, 12, 14, 16, 18}
    assert max(r for _, r in t.access_log) <= 8
    for i in range(10, 19, 2):
        assert t.values[i] == brute[i]


def test_wave_schedule_doubles():
    assert list(waves(0, 30)) == [(0, [2]), (2, [4, 6]), (6, [8, 10, 12, 14]), (14, list(range(16, 31, 2)))]


def test_wave_reads_stay_below_frontier():
    t = BernoulliTable(instrument=True)
    extend_table(t, 120)
    frontier_of = {}
    for frontier, batch in waves(0, 120):
        for i in batch:
            frontier_of[i] = frontier
    for req, read in t.access_log:
        assert read <= frontier_of[req]


def test_extend_classical_and_shortened_agree(brute):
    a = table_through(120, EngineKind.CLASSICAL)
    b = table_through(120, EngineKind.SHORTENED)
    assert a == b
    assert all(a.values[i] == brute[i] for i in a.values)


def test_extend_odd_target_rounds_down():
    t = extend_table(BernoulliTable(), 9)
    assert t.frontier == 8


def test_parallel_wave_is_deterministic():
    serial_counts, par_counts = {}, {}
    serial = extend_table(BernoulliTable(instrument=True), 80, counts=serial_counts)
    par = extend_table(BernoulliTable(instrument=True), 80, parallel=True, counts=par_counts, max_workers=2)
    assert serial == par
    assert serial.access_log == par.access_log
    assert serial_counts == par_counts


def test_op_counts_are_deterministic():
    t = table_through(60)
    c1, c2 = OpCounts(), OpCounts()
    bernoulli_shortened(60, t, c1)
    bernoulli_shortened(60, t, c2)
    assert c1 == c2 and c1.mults > 0 and c1.adds > 0


def test_classical_counts():
    t = table_through(8)
    c = OpCounts()
    classical_value(10, t, c)
    # B_0, B_1, B_2 .. B_8: six terms plus the final division
    assert (c.mults, c.adds) == (7, 6)


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 60))
def test_engine_equivalence_sampled(n):
    t = table_through(2 * n, EngineKind.CLASSICAL)
    assert bernoulli_shortened(2 * n, t) == t.values[2 * n]
