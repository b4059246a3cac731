"""Acceptance suite: one test per criterion, exact tolerances, timed budgets.

Each test prints a PASS/FAIL line (visible with -s or on failure) and asserts
the check outcome, including its time budget.  Two checks document published
values that are arithmetically impossible to reproduce; they are asserted
faithfully and fail with the witness in the message rather than being loosened:

  * criterion 08: one cell of the printed difference table, (d=7, n=6), reads 3
    but both counting routes (cycle index and exhaustive canonical enumeration)
    give 1 = -24 + 4 + 21;
  * criterion 10: the triple {K2, P3, P4} cannot separate the 4-vertex poset
    because the star and the triangle agree on every invariant of degree < 3
    and neither contains a 3-edge path.
"""

from graphinv import selftest


def _run(ident: str) -> None:
    result = selftest.run_one(ident)
    status = "PASS" if result.ok else "FAIL"
    print(f"criterion {result.ident}: {status} ({result.seconds:.2f}s <= {result.budget:.0f}s) {result.detail}")
    assert result.ok, f"criterion {result.ident} [{result.name}]: {result.detail}"
    assert result.seconds <= result.budget


def test_criterion_01_n3_multiplication_table():
    _run("01")


def test_criterion_02_n4_first_column():
    _run("02")


def test_criterion_03_printed_matrix_ordering():
    _run("03")


def test_criterion_04_power_laws():
    _run("04")


def test_criterion_05_coloring_refinement():
    _run("05")


def test_criterion_06_general_product():
    _run("06")


def test_criterion_07_three_way_agreement():
    _run("07")


def test_criterion_08_difference_table():
    _run("08")


def test_criterion_09_syzygy_and_relations():
    _run("09")


def test_criterion_10_separators():
    _run("10")


def test_criterion_11_inseparable_pairs():
    _run("11")


def test_criterion_12_complement_machinery():
    _run("12")


def test_criterion_13_minor_ranks():
    _run("13")


def test_criterion_14_multiset_values():
    _run("14")


def test_criterion_15_component_reconstruction():
    _run("15")


def test_cache_soundness():
    _run("16")
