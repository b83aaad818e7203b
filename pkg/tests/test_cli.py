import json

import pytest

from helper.documents import load_prismatoid
from helper.logging import LogLevel, get_log_level


def test_gen_writes_a_loadable_document(cli, workdir):
    assert cli.main(["--quiet", "gen", "--n-b", "8", "--n-a", "6", "--z", "0.3", "--seed", "4", "--out", "inst.json"]) == 0
    p, doc = load_prismatoid(workdir / "inst.json")
    assert (p.B.n, p.A.n, p.z) == (8, 6, 0.3)
    assert doc.metadata["seed"] == 4
    first = (workdir / "inst.json").read_text()
    cli.main(["--quiet", "gen", "--n-b", "8", "--n-a", "6", "--z", "0.3", "--seed", "4", "--out", "again.json"])
    assert (workdir / "again.json").read_text() == first


def test_gen_to_stdout(cli, workdir, capsys):
    assert cli.main(["--quiet", "gen", "--n-b", "5", "--n-a", "4"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert len(data["B"]) == 5 and len(data["A"]) == 4


def test_gen_rejects_small_polygons(cli, workdir):
    assert cli.main(["--quiet", "gen", "--n-b", "2", "--out", "x.json"]) == 2
    assert not (workdir / "x.json").exists()


def test_unfold_square_band(cli, workdir, write_doc, square_in_square):
    write_doc("square.json", square_in_square)
    code = cli.main(["--quiet", "unfold", "--in", "square.json", "--svg", "square.svg", "--json", "square.out.json"])
    assert code == 0
    assert (workdir / "square.svg").read_text().startswith("<svg")
    report = json.loads((workdir / "square.out.json").read_text())
    assert report["verdict"]["nonoverlapping"]
    assert report["plan"]["attachA"] == report["plan"]["witness"]["edge"]
    assert [f["id"] for f in report["layout"]["faces"]][-2:] == ["B", "A"]


def test_unfold_with_explicit_choices_and_sweep(cli, workdir, write_doc, square_in_square):
    write_doc("square.json", square_in_square)
    args = ["--quiet", "unfold", "--in", "square.json", "--witness", "0,2", "--cut", "1", "--attach-b", "2"]
    code = cli.main(args + ["--z-sweep", "0.1,0.2", "--json", "out.json"])
    report = json.loads((workdir / "out.json").read_text())
    assert report["plan"] == {"cut": 1, "attachB": 2, "attachA": 0, "witness": {"edge": 0, "apex": 2}}
    assert [s["z"] for s in report["sweep"]] == [0.1, 0.2]
    assert code in (0, 1)


@pytest.mark.parametrize("extra, code", [(["--witness", "0"], 2), (["--witness", "0,9"], 2), (["--cut", "99"], 1), (["--witness", "0,1"], 1)])
def test_unfold_rejects_bad_choices(cli, workdir, write_doc, square_in_square, extra, code):
    write_doc("square.json", square_in_square)
    assert cli.main(["--quiet", "unfold", "--in", "square.json"] + extra) == code


def test_unfold_exit_codes_for_bad_input(cli, workdir, write_doc, square_in_square):
    (workdir / "bad.json").write_text("{oops")
    assert cli.main(["--quiet", "unfold", "--in", "bad.json"]) == 2
    assert cli.main(["--quiet", "unfold", "--in", "missing.json"]) == 2
    write_doc("outside.json", {**square_in_square, "A": [[0.5, 0.5], [1.5, 0.5], [0.5, 0.9]]})
    assert cli.main(["--quiet", "unfold", "--in", "outside.json"]) == 1


def test_safe_cuts(cli, workdir, write_doc, square_in_square):
    write_doc("square.json", square_in_square)
    assert cli.main(["--quiet", "safe-cuts", "--in", "square.json", "--z-sweep", "0,0.2", "--json", "cuts.json"]) == 0
    data = json.loads((workdir / "cuts.json").read_text())
    assert data["lateralEdges"] == 8
    assert data["heights"][0] == {"z": 0.0, "safeCuts": list(range(8))}
    assert set(data["safeAtEveryHeight"]) <= set(range(8))


def test_rm_check(cli, workdir, write_doc, square_in_square):
    write_doc("square.json", {"polygon": square_in_square["B"]})
    assert cli.main(["--quiet", "rm-check", "--in", "square.json", "--json", "rm.json", "--svg", "rm.svg"]) == 0
    data = json.loads((workdir / "rm.json").read_text())
    assert data["n"] == 4
    assert {"edge": 0, "apex": 2} in [{"edge": w["edge"], "apex": w["apex"]} for w in data["witnesses"]]
    assert data["best"] is not None
    assert (workdir / "rm.svg").exists()


def test_rm_check_without_witness(cli, workdir, write_doc):
    spiked = [[1.0, 0.0], [0.3, 0.5196152422706632], [-0.5, 0.8660254037844386], [-0.6, 0.0], [-0.5, -0.8660254037844386], [0.3, -0.5196152422706632]]
    write_doc("spiked.json", {"polygon": spiked})
    assert cli.main(["--quiet", "rm-check", "--in", "spiked.json", "--json", "rm.json"]) == 1
    assert json.loads((workdir / "rm.json").read_text())["best"] is None


def test_phi_table(cli, workdir):
    assert cli.main(["--quiet", "phi", "--z-max", "1", "--z-step", "0.25", "--csv", "phi.csv", "--svg", "phi.svg"]) == 0
    lines = (workdir / "phi.csv").read_text().splitlines()
    assert lines[0] == "z,phi"
    assert len(lines) == 6
    assert float(lines[1].split(",")[1]) == pytest.approx(2.0943951, abs=1e-7)
    assert cli.main(["--quiet", "phi", "--z-step", "0", "--csv", "bad.csv"]) == 2


def test_validate_config(cli, workdir):
    assert cli.main(["validate-config"]) == 0
    (workdir / ".prismatoid-band-tools.json").write_text('{"zSweep": [1.0, 0.5]}')
    assert cli.main(["--quiet", "validate-config"]) == 2


def test_list_suites(cli, workdir, capsys):
    assert cli.main(["list-suites"]) == 0
    out = capsys.readouterr().out
    for name in ("geometry", "unfolder", "documents"):
        assert name in out


def test_verify_selected_suite(cli, workdir):
    code = cli.main(["--quiet", "verify", "--suite", "rotations", "--trials", "3", "--workers", "1", "--json", "report.json"])
    report = json.loads((workdir / "report.json").read_text())
    statuses = {s["name"]: s["status"] for s in report["suites"]}
    assert statuses["rotations"] == "passed"
    assert statuses["geometry"] == "skipped"
    assert code == 0


def test_log_level_flags(cli, workdir):
    cli.main(["--log-level", "ERROR", "phi", "--csv", "p.csv"])
    assert get_log_level() == LogLevel.ERROR


def test_usage_errors_exit_2(cli, workdir):
    with pytest.raises(SystemExit) as info:
        cli.main(["unfold", "--cut", "x"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        cli.main(["--quiet", "--verbose", "phi"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        cli.main([])
    assert info.value.code == 2


def test_exit_code_listing(cli, workdir, capsys):
    assert cli.main(["exit-codes"]) == 0
    out = capsys.readouterr().out
    assert "OVERLAP_FOUND" in out
    line = next(l for l in out.splitlines() if "DOCUMENT_INVALID" in l)
    assert line.split()[:5] == ["23", "-", "DOCUMENT_INVALID", "exit", "2"]
