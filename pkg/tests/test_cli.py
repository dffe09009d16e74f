"""Command-line interface: exit codes, schemas, determinism, caching."""

import json


from cnspectra import cli, formulas, graphs


def run(capsys, argv):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_build_summary(capsys):
    code, out, _ = run(capsys, ["build", "--family", "gl2", "--q", "3"])
    assert code == cli.EXIT_OK
    doc = json.loads(out)
    assert doc["order"] == 48
    assert doc["ac_group"] is True
    assert doc["center_size"] == 2


def test_energy_exact_sz2_quotient(capsys):
    code, out, _ = run(
        capsys,
        ["energy", "--family", "sz2-quotient", "--z", "1", "--method", "exact"],
    )
    assert code == cli.EXIT_OK
    doc = json.loads(out)
    assert doc["le_cn"]["exact"] == [648, 19]
    assert doc["le_plus_cn"]["exact"] == [700, 19]
    assert doc["baseline"] == [612, 1]


def test_spectrum_schema(capsys):
    code, out, _ = run(
        capsys,
        ["spectrum", "--family", "qd", "--n", "4", "--matrix", "cnl",
         "--method", "both"],
    )
    assert code == cli.EXIT_OK
    doc = json.loads(out)
    assert doc["matrix"] == "CNL"
    assert doc["exact"] == [[0, 1, 9], [24, 1, 5]]
    assert len(doc["numeric"]) == 14
    assert doc["energy"]["exact"] == [1080, 7]
    assert doc["delta"] == [60, 7]


def test_spectrum_exact_on_non_clique_union_exits_2(capsys, tmp_path):
    p3 = graphs.make_graph(3, [[0, 1], [1, 2]])
    path = tmp_path / "p3.json"
    path.write_text(graphs.export_graph(p3, "json"))
    code, _, err = run(
        capsys, ["spectrum", "--graph", str(path), "--method", "exact"]
    )
    assert code == cli.EXIT_USAGE
    assert "clique-union" in err
    # numeric still works
    code, out, _ = run(
        capsys, ["spectrum", "--graph", str(path), "--method", "numeric"]
    )
    assert code == cli.EXIT_OK


def test_graph_dot_and_json(capsys):
    code, out, _ = run(capsys, ["graph", "--family", "sz2", "--format", "dot"])
    assert code == cli.EXIT_OK
    assert out.startswith("graph commuting {")
    code, out, _ = run(capsys, ["graph", "--family", "sz2", "--format", "json"])
    doc = json.loads(out)
    assert doc["n"] == 19


def test_classify_with_reference(capsys):
    code, out, _ = run(
        capsys,
        ["classify", "--family", "dicyclic", "--n", "6", "--method", "exact"],
    )
    assert code == cli.EXIT_OK
    doc = json.loads(out)
    assert doc["cnl"]["relation"] == "hyper"
    assert doc["cnsl"]["relation"] == "below"
    assert doc["match"] is True


def test_verify_family_range(capsys):
    code, out, err = run(
        capsys, ["verify", "--family", "qd", "--n", "4..6", "--jobs", "1"]
    )
    assert code == cli.EXIT_OK
    assert err == ""
    lines = [l for l in out.splitlines() if l.strip()]
    assert len(lines) == 3
    assert all("ok" in l for l in lines)


def test_verify_reports_mismatches(capsys, monkeypatch):
    # a deliberately wrong closed form must surface as exit 1 plus a
    # JSON discrepancy record on stderr
    real = formulas.eval_qd

    def broken(n):
        result = real(n)
        object.__setattr__(result, "le_cn", result.le_cn + 1)
        return result

    monkeypatch.setattr(formulas, "eval_qd", broken)
    code, out, err = run(
        capsys, ["verify", "--family", "qd", "--n", "4", "--jobs", "1"]
    )
    assert code == cli.EXIT_MISMATCH
    assert "MISMATCH" in out
    record = json.loads(err.splitlines()[0])
    assert record["field"] == "le_cn"


def test_verify_output_deterministic(capsys):
    argv = ["verify", "--family", "dihedral", "--m", "3..8", "--jobs", "1",
            "--format", "json"]
    _, out1, _ = run(capsys, argv)
    _, out2, _ = run(capsys, argv)
    assert out1 == out2


def test_sweep_csv_schema(capsys):
    code, out, _ = run(capsys, ["sweep", "--families", "qd"])
    assert code == cli.EXIT_OK
    lines = out.strip().splitlines()
    header = lines[0].split(",")
    assert header[:6] == [
        "family",
        "params",
        "vertices",
        "le_cn",
        "le_plus_cn",
        "baseline",
    ]
    assert len(lines) == 1 + 5  # n = 4..8
    # rationals render as num/den, never decimals
    assert "1080/7" in lines[1]
    assert all(row.endswith("True") for row in lines[1:])


def test_build_text_format(capsys):
    code, out, _ = run(
        capsys, ["build", "--family", "sz2", "--format", "text"]
    )
    assert code == cli.EXIT_OK
    assert "order: 20" in out
    assert "center_size: 1" in out


def test_sweep_json_carries_source_and_branch(capsys):
    code, out, _ = run(capsys, ["sweep", "--families", "psl", "--format", "json"])
    assert code == cli.EXIT_OK
    doc = json.loads(out.splitlines()[0])
    assert doc["source"] == "psl"
    assert doc["branch"] == "k=2"
    assert doc["cnl"]["energy"]["exact"] == [10788, 59]
    assert doc["delta"] == [174, 59]


def test_cache_round_trip(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("CN_SPECTRA_CACHE", str(tmp_path))
    argv = ["build", "--family", "metacyclic", "--m", "5", "--n", "2"]
    _, out1, _ = run(capsys, argv)
    cached = list(tmp_path.glob("group-*.json"))
    assert len(cached) == 1
    _, out2, _ = run(capsys, argv)  # second run hits the cache
    assert out1 == out2


def test_too_large_exits_3(capsys):
    code, _, err = run(capsys, ["build", "--family", "qd", "--n", "13"])
    assert code == cli.EXIT_RESOURCE
    assert "exceeds" in err


def test_bad_arguments_exit_2(capsys):
    code, _, _ = run(capsys, ["build", "--family", "noexist", "--n", "4"])
    assert code == cli.EXIT_USAGE
    code, _, _ = run(capsys, ["verify", "--family", "qd"])  # no range given
    assert code == cli.EXIT_USAGE
    code, _, _ = run(capsys, ["energy", "--graph", "/does/not/exist.json"])
    assert code == cli.EXIT_USAGE


def test_parallel_verify_matches_serial(capsys):
    argv = ["verify", "--family", "dicyclic", "--n", "2..6", "--format", "json"]
    _, serial, _ = run(capsys, argv + ["--jobs", "1"])
    _, parallel, _ = run(capsys, argv + ["--jobs", "2"])
    assert serial == parallel


def test_standard_instances_are_constructible_and_sorted():
    instances = cli.standard_instances()
    assert len(instances) > 80
    keys = [i.sort_key() for i in instances]
    assert keys == sorted(keys)
    assert len(set(keys)) == len(keys)
