"""The five complementary-partition algorithms against the join oracle."""

import math

import pytest

from cumulants import (
    ALGORITHM_NAMES,
    CSP_ALGORITHMS,
    AlgebraConsistencyError,
    IncompatibleTypeError,
    SetPartition,
    bell_number,
    block_type,
    count_not_complementary,
    csp_twoblock,
    csp_twoblock_onevec,
    enumerate_partitions,
    from_indicator,
    is_complementary,
    swap_transfer,
    to_indicator,
)

CSP_1_234 = {
    "12|3|4", "13|2|4", "14|2|3", "123|4", "124|3",
    "12|34", "134|2", "13|24", "14|23", "1234",
}
CSP_123_4 = {
    "1|24|3", "1|2|34", "14|2|3", "1|234", "124|3",
    "13|24", "134|2", "12|34", "14|23", "1234",
}


@pytest.mark.parametrize("name", ALGORITHM_NAMES)
def test_known_lists(name):
    algo = CSP_ALGORITHMS[name]
    assert {q.render() for q in algo(SetPartition.parse("1|234")).complementary} == CSP_1_234
    assert {q.render() for q in algo(SetPartition.parse("123|4")).complementary} == CSP_123_4
    assert {q.render() for q in algo(SetPartition.parse("1|23")).complementary} == {"123", "13|2", "12|3"}


@pytest.mark.parametrize("name", ALGORITHM_NAMES)
def test_singletons_n2(name):
    got = CSP_ALGORITHMS[name](SetPartition.parse("1|2")).complementary
    assert [q.render() for q in got] == ["12"]


@pytest.mark.parametrize("name", ALGORITHM_NAMES)
def test_12_3(name):
    got = {q.render() for q in CSP_ALGORITHMS[name](SetPartition.parse("12|3")).complementary}
    assert got == {"123", "13|2", "1|23"}


@pytest.mark.parametrize("name", ALGORITHM_NAMES)
def test_one_block_input_is_complementary_to_everything(name):
    p = SetPartition.parse("1234")
    got = CSP_ALGORITHMS[name](p).complementary
    assert set(got) == set(enumerate_partitions(4))


def test_result_fields_and_order():
    p = SetPartition.parse("1|234")
    r = csp_twoblock(p)
    assert r.input == p
    assert r.algorithm == "twoblock"
    assert r.elapsed >= 0.0
    keys = [q.sort_key() for q in r.complementary]
    assert keys == sorted(keys)
    assert len(set(keys)) == len(keys)


def test_five_way_agreement_exhaustive_small():
    for n in range(2, 6):
        parts = enumerate_partitions(n)
        for p in parts:
            oracle = {q for q in parts if is_complementary(p, q)}
            for name in ALGORITHM_NAMES:
                got = set(CSP_ALGORITHMS[name](p).complementary)
                assert got == oracle, (name, p.render())


def test_complementarity_is_symmetric():
    parts = enumerate_partitions(5)
    table = {p: set(csp_twoblock(p).complementary) for p in parts}
    for p in parts:
        for q in parts:
            assert (q in table[p]) == (p in table[q])


# --- counting --------------------------------------------------------------


def test_count_not_complementary_examples():
    assert count_not_complementary(SetPartition.parse("1|234")) == 5
    assert count_not_complementary(SetPartition.parse("1|23")) == 2
    assert count_not_complementary(SetPartition.parse("1|2")) == 1
    assert count_not_complementary(SetPartition.parse("123")) == 0


def test_counting_identity_up_to_n6():
    for n in range(2, 7):
        for p in enumerate_partitions(n):
            direct = len(csp_twoblock(p).complementary)
            assert count_not_complementary(p) + direct == bell_number(n), p.render()


def test_count_matches_grouped_formula():
    """The literal subset inclusion-exclusion equals the evaluation grouped by
    common coarsenings (partitions of the block indexes, >= 2 parts)."""
    from cumulants.partitions import _iter_partition_keys

    for n in range(2, 7):
        for p in enumerate_partitions(n):
            m = p.num_blocks
            if m < 2:
                continue
            sizes = [len(b) for b in p.blocks]
            total = 0
            for rho in _iter_partition_keys(range(m)):
                parts = len(rho)
                if parts < 2:
                    continue
                term = math.factorial(parts - 1)
                if parts % 2:
                    term = -term
                for grp in rho:
                    term *= bell_number(sum(sizes[j] for j in grp))
                total += term
            assert count_not_complementary(p) == total, p.render()


# --- relabeling transfer ------------------------------------------------------


def test_swap_transfer_paper_example():
    source = SetPartition.parse("1|234")
    target = SetPartition.parse("123|4")
    moved = swap_transfer(source, csp_twoblock(source).complementary, target)
    assert {q.render() for q in moved} == CSP_123_4


def test_swap_transfer_identity():
    p = SetPartition.parse("12|34|5")
    own = csp_twoblock(p).complementary
    assert swap_transfer(p, own, p) == list(own)


def test_swap_transfer_small_oracle():
    source = SetPartition.parse("12|3")
    target = SetPartition.parse("13|2")
    moved = swap_transfer(source, csp_twoblock(source).complementary, target)
    assert set(moved) == set(csp_twoblock(target).complementary)


def test_swap_transfer_exhaustive_same_type_pairs():
    parts = enumerate_partitions(5)
    table = {p: csp_twoblock(p).complementary for p in parts}
    by_type = {}
    for p in parts:
        by_type.setdefault(block_type(p).parts, []).append(p)
    for group in by_type.values():
        for p in group:
            for q in group:
                assert set(swap_transfer(p, table[p], q)) == set(table[q]), (p, q)


def test_swap_transfer_type_mismatch():
    with pytest.raises(IncompatibleTypeError):
        swap_transfer(
            SetPartition.parse("1|23"),
            csp_twoblock(SetPartition.parse("1|23")).complementary,
            SetPartition.parse("1|2|3"),
        )


# --- indicator-level two-block variant ---------------------------------------------


def test_twoblock_onevec_example():
    mats = csp_twoblock_onevec(to_indicator(SetPartition.parse("1|23")))
    assert {from_indicator(m).render() for m in mats} == {"123", "13|2", "12|3"}


def test_twoblock_onevec_matches_transport():
    for n in range(2, 6):
        for p in enumerate_partitions(n):
            via_mat = csp_twoblock_onevec(to_indicator(p))
            via_sets = [to_indicator(q) for q in csp_twoblock(p).complementary]
            assert via_mat == via_sets, p.render()


def test_twoblock_onevec_two_column_count():
    # single split: the excluded family is the direct product of the two sides
    p = SetPartition.parse("12|345")
    got = csp_twoblock_onevec(to_indicator(p))
    assert len(got) == bell_number(5) - bell_number(2) * bell_number(3)


def test_stafford_consistency_check_runs_clean():
    # the coefficient-one assertion is exercised on every partition of [5]
    for p in enumerate_partitions(5):
        CSP_ALGORITHMS["stafford"](p)
