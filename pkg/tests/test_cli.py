import json

import pytest

from graphinv.cli import main
from graphinv.smallgraphs import named_class


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_count_edges_in_triangle(capsys):
    code, out, _ = run_cli(capsys, "count", "--pattern", "0-1", "--host", "1-2,1-3,2-3", "--oracle")
    assert code == 0
    assert json.loads(out) == {"count": 3}


def test_count_graph6_input(capsys):
    k2 = named_class("K2").graph6
    k3 = named_class("K3").graph6
    code, out, _ = run_cli(capsys, "count", "--pattern", k2, "--host", k3)
    assert code == 0 and json.loads(out)["count"] == 3


def test_product_all_methods_agree(capsys):
    k2 = named_class("K2").graph6
    p3 = named_class("P3").graph6
    code, out, _ = run_cli(capsys, "product", "--n", "5", "--a", k2, "--b", p3, "--method", "all")
    assert code == 0
    payload = json.loads(out)
    assert payload["agreement"] is True
    assert payload["general"] is True
    coeffs = sorted(t["coeff"] for t in payload["terms"])
    assert coeffs == [1, 2, 2, 3, 3]


def test_general_product_verified(capsys):
    code, out, _ = run_cli(
        capsys, "general-product", "--a", named_class("K2").graph6, "--b",
        named_class("P3").graph6, "--verify",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["verified"] is True
    assert len(payload["terms"]) == 5


def test_enumerate_and_determinism(capsys):
    code, out1, _ = run_cli(capsys, "enumerate", "--n", "4")
    assert code == 0
    assert json.loads(out1)["count"] == 11
    code, out2, _ = run_cli(capsys, "enumerate", "--n", "4")
    assert out1 == out2


def test_mtransform_jobs_determinism(capsys):
    _, out1, _ = run_cli(capsys, "mtransform", "--n", "4", "--format", "csv", "--jobs", "1")
    _, out2, _ = run_cli(capsys, "mtransform", "--n", "4", "--format", "csv", "--jobs", "4")
    assert out1 == out2
    assert out1.splitlines()[1].startswith("?,1,0")


def test_invert_csv(capsys):
    code, out, _ = run_cli(capsys, "invert", "--n", "3", "--format", "csv")
    assert code == 0
    rows = [line.split(",")[1:] for line in out.strip().splitlines()[1:]]
    assert [[int(x) for x in r] for r in rows] == [
        [1, 0, 0, 0],
        [-1, 1, 0, 0],
        [1, -2, 1, 0],
        [-1, 3, -3, 1],
    ]


def test_separators_search(capsys):
    code, out, _ = run_cli(capsys, "separators", "--n", "3")
    assert code == 0
    payload = json.loads(out)
    assert payload["minimum_size"] == 1
    assert [named_class("K2").graph6] in payload["separators"]


def test_separators_set_check(capsys):
    k2 = named_class("K2").graph6
    code, out, _ = run_cli(capsys, "separators", "--n", "4", "--set", k2)
    payload = json.loads(out)
    assert code == 0 and payload["is_separator"] is False
    assert set(payload["witness"]) == {named_class("2K2").graph6, named_class("P3").graph6}


def test_inseparable_cli(capsys):
    code, out, _ = run_cli(capsys, "inseparable", "--d", "1")
    assert code == 0
    payload = json.loads(out)
    assert payload["T"] == named_class("2K2").graph6
    assert payload["U"] == named_class("P3").graph6
    assert payload["degree"] == 2 and payload["bound"] == 2


def test_reconstruct_cli(capsys):
    code, out, _ = run_cli(capsys, "reconstruct", "--host", "0-1,2-3")
    payload = json.loads(out)
    assert code == 0
    assert payload["components"] == [{"graph6": named_class("K2").graph6, "count": 2}]


def test_complement_solve_cli(capsys):
    k2 = named_class("K2").graph6
    k3 = named_class("K3").graph6
    code, out, _ = run_cli(capsys, "complement-solve", "--n", "4", "--g", k2, "--host", k3)
    payload = json.loads(out)
    assert code == 0
    assert payload["value_at_host"] == 3 and payload["direct"] == 3


def test_rank_minor_cli(capsys):
    code, out, _ = run_cli(capsys, "rank-minor", "--trivial-vars", "4", "--delta", "1", "--Delta", "2")
    payload = json.loads(out)
    assert code == 0
    assert payload == {"rows": 6, "cols": 4, "rank": 4, "full": True}


def test_ulam_table_csv_stable(capsys):
    _, out1, _ = run_cli(capsys, "ulam-table", "--max-n", "8", "--max-d", "8", "--format", "csv")
    _, out2, _ = run_cli(capsys, "ulam-table", "--max-n", "8", "--max-d", "8", "--format", "csv")
    assert out1 == out2
    assert out1.splitlines()[0] == "d,4,5,6,7,8"


def test_ulam_table_cache(tmp_path, capsys):
    args = ["ulam-table", "--max-n", "6", "--max-d", "6", "--format", "csv", "--cache-dir", str(tmp_path)]
    _, fresh, _ = run_cli(capsys, *args)
    assert list(tmp_path.iterdir())
    _, cached, _ = run_cli(capsys, *args)
    assert fresh == cached


def test_ulam_check_cli(capsys):
    code, out, _ = run_cli(capsys, "ulam-check", "--n", "4", "--d", "3")
    payload = json.loads(out)
    assert code == 0 and payload["inequality_holds"] is True


def test_multiset_eval_cli(capsys):
    code, out, _ = run_cli(capsys, "multiset-eval", "--m", "1,2", "--w", "2,2", "--group", "sym")
    assert code == 0 and json.loads(out)["value"] == 4
    code, out, _ = run_cli(
        capsys, "multiset-eval", "--m", "2,1", "--w", "2,2", "--group", "sym", "--op", "orbit-sum"
    )
    assert code == 0 and json.loads(out)["value"] == 16


def test_verify_relation_cli(capsys):
    k2 = named_class("K2").graph6
    p3 = named_class("P3").graph6
    relation = json.dumps(
        {
            "terms": [
                {"coeff": 1, "monomial": {p3: 1}},
                {"coeff": "-1/2", "monomial": {k2: 2}},
                {"coeff": "1/2", "monomial": {k2: 1}},
            ]
        }
    )
    code, out, _ = run_cli(capsys, "verify-relation", "--n", "3", "--relation", relation)
    assert code == 0 and json.loads(out)["holds"] is True


def test_precondition_violations_exit_2(capsys):
    code, _, err = run_cli(capsys, "count", "--pattern", "A_", "--host", "notagraph6~~~")
    assert code == 2 and "error:" in err
    code, _, err = run_cli(capsys, "enumerate", "--n", "9")
    assert code == 2
    code, _, err = run_cli(capsys, "inseparable", "--d", "0")
    assert code == 2


def test_unknown_command_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2
