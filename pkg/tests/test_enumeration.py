from fractions import Fraction

import pytest

from graphinv.enumeration import (
    connected_counts,
    generator_lower_bound_report,
    graph_count,
    graph_count_series,
    pair_cycle_index_bruteforce,
    pair_group_cycle_index,
    ulam_condition_check,
    ulam_difference_table,
    ulam_table_csv,
)
from graphinv.errors import CapError


def test_cycle_index_n3_closed_form():
    z = pair_group_cycle_index(3)
    assert dict(z.terms) == {
        ((1, 3),): Fraction(1, 6),
        ((1, 1), (2, 1)): Fraction(1, 2),
        ((3, 1),): Fraction(1, 3),
    }


def test_cycle_index_n2():
    z = pair_group_cycle_index(2)
    assert dict(z.terms) == {((1, 1),): Fraction(1)}


def test_cycle_index_against_bruteforce():
    for n in (2, 3, 4, 5):
        assert pair_group_cycle_index(n) == pair_cycle_index_bruteforce(n)


def test_cycle_index_coefficients_sum_to_one():
    for n in range(2, 10):
        assert pair_group_cycle_index(n).coefficient_sum() == 1


def test_substitute_two_counts_classes():
    assert pair_group_cycle_index(4).substitute_value(lambda k: 2) == 11
    for n in range(2, 9):
        total = pair_group_cycle_index(n).substitute_value(lambda k: 2)
        assert total == sum(graph_count_series(n))


def test_graph_count_examples():
    assert graph_count(4, 3) == 3
    for n in range(2, 13):
        assert graph_count(n, 1) == 1
    assert graph_count(3, 4) == 0  # beyond the slot count


def test_count_symmetry_under_complementation():
    for n in range(2, 13):
        series = graph_count_series(n)
        assert series == series[::-1]


def test_ulam_table_quoted_cells():
    table = ulam_difference_table(12, 12)
    assert table[(2, 5)] == 1
    assert table[(8, 7)] == -8
    assert table[(12, 12)] == 1779
    # the published table prints 3 here; both counting routes give 1
    assert table[(7, 6)] == 1


def test_ulam_table_blank_rule():
    table = ulam_difference_table(12, 12)
    assert (4, 4) not in table  # past half of C(4,2)
    assert (7, 6) in table
    assert (11, 7) not in table


def test_ulam_csv_layout():
    csv = ulam_table_csv(6, 4)
    lines = csv.strip().split("\n")
    assert lines[0] == "d,4,5,6"
    assert lines[1] == "2,0,1,1"
    assert lines[3] == "4,,0,2"


def test_ulam_condition_examples():
    assert ulam_condition_check(4, 3)["inequality_holds"]
    assert not ulam_condition_check(6, 8)["inequality_holds"]
    minor = ulam_condition_check(3, 2, rank_support=4)["minor"]
    assert minor == {"v": 4, "rows": 1, "cols": 1, "rank": 1, "full_row_rank": True}


def test_ulam_minor_full_rank_small():
    for v in (3, 4, 5):
        for d in range(2, v * (v - 1) // 2 + 1):
            minor = ulam_condition_check(v - 1, d, rank_support=v)["minor"]
            if minor["rows"]:
                assert minor["full_row_rank"], (v, d)


def test_connected_counts():
    f, big_f = connected_counts(6)
    assert f[1:] == [1, 1, 3, 5, 12, 30]
    assert big_f[6] == 52
    report = generator_lower_bound_report(2)
    assert report == {"d": 2, "F": 2, "lower_bound": 3, "poset_degree": 9}


def test_caps():
    with pytest.raises(CapError):
        graph_count(13, 2)
    with pytest.raises(CapError):
        connected_counts(9)
