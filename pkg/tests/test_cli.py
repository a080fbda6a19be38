import json

from tubelat.cli import run


def invoke(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_tubings_count(capsys):
    code, out, _ = invoke(capsys, "tubings", "--graph", "path:3", "--count")
    assert code == 0 and out.strip() == "5"


def test_tubings_json_deterministic(capsys):
    code, out1, _ = invoke(capsys, "--json", "tubings", "--graph", "cycle:4")
    code2, out2, _ = invoke(capsys, "--json", "tubings", "--graph", "cycle:4")
    assert code == code2 == 0
    assert out1 == out2
    assert len(json.loads(out1)) == 20


def test_check_filled_cycle4(capsys):
    code, out, _ = invoke(capsys, "--json", "check", "filled", "--graph", "cycle:4")
    assert code == 1
    payload = json.loads(out)
    assert payload["filled"] is False
    assert payload["witness"] == {"edge": [1, 4], "missing": [2, 4]}


def test_check_lattice_witness(capsys):
    # one of the seven non-lattice graphs on [4]
    import tempfile, os

    text = "4\n1 2\n1 3\n2 4\n"
    with tempfile.NamedTemporaryFile("w", suffix=".graph", delete=False) as fh:
        fh.write(text)
        path = fh.name
    try:
        code, out, _ = invoke(capsys, "--json", "check", "lattice", "--graph-file", path)
        assert code == 1
        payload = json.loads(out)
        assert payload["lattice"] is False
        assert len(payload["witness"]["minimal_bounds"]) >= 2
    finally:
        os.unlink(path)


def test_check_lattice_map(capsys):
    code, _, _ = invoke(capsys, "check", "lattice-map", "--graph", "path:4")
    assert code == 0
    code, out, _ = invoke(capsys, "--json", "check", "lattice-map", "--graph", "cycle:4")
    assert code == 1
    assert json.loads(out)["lattice_map"] is False


def test_check_nrc(capsys):
    code, _, _ = invoke(capsys, "check", "nrc", "--graph", "cycle:4")
    assert code == 0


def test_psi_command(capsys):
    code, out, _ = invoke(capsys, "--json", "psi", "--graph", "path:3", "--perm", "213")
    assert code == 0
    payload = json.loads(out)
    assert payload["tubes"] == [[2], [1, 2], [1, 2, 3]]


def test_congruence_commands(capsys):
    code, out, _ = invoke(capsys, "--json", "congruence", "generators", "--graph", "h:1:4")
    assert code == 0 and json.loads(out) == ["1-3:+", "2-4:+"]
    code, out, _ = invoke(
        capsys, "--json", "congruence", "classes", "--arcs", "2-4:+", "--n", "4"
    )
    assert code == 0
    classes = json.loads(out)
    assert sum(len(c) for c in classes) == 24
    code, out, _ = invoke(
        capsys, "--json", "congruence", "quotient", "--arcs", "", "--n", "3"
    )
    assert code == 0
    assert len(json.loads(out)["elements"]) == 6


def test_arc_commands(capsys):
    code, out, _ = invoke(capsys, "arc", "delete", "--arc", "2-5:-+", "--n", "5", "--k", "3")
    assert code == 0 and out.strip() == "2-4:+"
    code, out, _ = invoke(capsys, "--json", "arc", "insert", "--arc", "1-2:", "--n", "2", "--k", "2")
    assert code == 0 and json.loads(out) == ["1-3:+", "1-3:-"]
    code, _, _ = invoke(capsys, "arc", "subarc", "--arc", "2-4:+", "--arc2", "1-4:-+", "--n", "4")
    assert code == 0
    code, _, _ = invoke(capsys, "arc", "subarc", "--arc", "2-4:+", "--arc2", "1-4:--", "--n", "4")
    assert code == 1


def test_product_commands(capsys):
    code, out, _ = invoke(capsys, "--json", "product", "--left-perm", "21", "--right-perm", "12")
    assert code == 0
    payload = json.loads(out)
    assert len(payload["terms"]) == 6
    code, out, _ = invoke(
        capsys,
        "--json",
        "product",
        "--family",
        "path",
        "--left-perm",
        "1",
        "--right-perm",
        "21",
    )
    assert code == 0
    assert json.loads(out)["basis"] == "P"


def test_coproduct_commands(capsys):
    code, out, _ = invoke(capsys, "--json", "coproduct", "--perm", "3241")
    assert code == 0
    assert len(json.loads(out)["terms"]) == 5
    code, out, _ = invoke(
        capsys, "--json", "coproduct", "--family", "cycle", "--perm", "1234"
    )
    assert code == 0


def test_mobius_command(capsys):
    # the full interval of the pentagon carries mu = (-1)^(3-1) = 1
    code, out, _ = invoke(capsys, "mobius", "--graph", "path:3")
    assert code == 0
    assert out.strip() == "1"
    code, out, _ = invoke(capsys, "mobius", "--graph", "complete:2")
    assert code == 0 and out.strip() == "-1"


def test_family_commands(capsys):
    code, _, _ = invoke(capsys, "family", "admissible", "--family", "path", "--max-degree", "5")
    assert code == 0
    code, out, _ = invoke(
        capsys, "--json", "family", "restriction-compatible", "--family", "oddbip", "--max-degree", "5"
    )
    assert code == 1 and json.loads(out)["ok"] is False
    code, _, _ = invoke(
        capsys, "family", "translational", "--family", "h:2", "--max-degree", "5"
    )
    assert code == 0
    code, out, _ = invoke(
        capsys, "--json", "family", "insertional", "--family", "h:2", "--max-degree", "5"
    )
    assert code == 1 and "witness" in json.loads(out)
    code, _, _ = invoke(
        capsys, "family", "associative", "--family", "oddbip", "--max-degree", "4"
    )
    assert code == 0


def test_export_dot(capsys):
    code, out, _ = invoke(capsys, "export-dot", "--graph", "complete:2")
    assert code == 0
    assert out.startswith("digraph") and out.count("->") == 1
    code, out, _ = invoke(capsys, "export-dot", "--weak-order", "2")
    assert code == 0 and "12" in out and "21" in out
    code, out, _ = invoke(
        capsys,
        "export-dot",
        "--graph",
        "A:{2}:4",
        "--annotate-nonlattice",
    )
    assert code == 0


def test_annotated_nonlattice_dot(capsys):
    import tempfile, os

    with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as fh:
        fh.write(json.dumps({"n": 4, "edges": [[1, 2], [1, 3], [2, 4]]}))
        path = fh.name
    try:
        code, out, _ = invoke(
            capsys, "export-dot", "--graph-file", path, "--annotate-nonlattice"
        )
        assert code == 0 and "lightblue" in out
    finally:
        os.unlink(path)


def test_bad_input_exits_2(capsys):
    assert invoke(capsys, "tubings", "--graph", "nonsense")[0] == 2
    assert invoke(capsys, "psi", "--graph", "path:3", "--perm", "211")[0] == 2
    assert invoke(capsys, "tubings")[0] == 2
    assert invoke(capsys, "arc", "delete", "--arc", "9-2:", "--n", "4", "--k", "1")[0] == 2


def test_verify_smoke(capsys):
    code, out, _ = invoke(capsys, "verify", "--suite", "acceptance", "--max-n", "3")
    assert code == 0
    assert "checks passed" in out


def test_verify_all_maxn4(capsys):
    code, out, _ = invoke(capsys, "verify", "--suite", "all", "--max-n", "4")
    assert code == 0
    assert "31/31 checks passed" in out


def test_verify_parallel_jobs(capsys):
    from tubelat.verify import run_suite

    serial = run_suite(suite="examples", max_n=2)
    parallel = run_suite(suite="examples", max_n=2, jobs=2)
    assert [(r.name, r.ok, r.detail) for r in serial] == [
        (r.name, r.ok, r.detail) for r in parallel
    ]
