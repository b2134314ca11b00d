import pytest

from hatguess.cli import main
from hatguess.covering import format_pointset, noncoverable_witness


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    report = {}
    for line in out.splitlines():
        if "\t" in line:
            k, v = line.split("\t", 1)
            report[k] = v
    return code, report, out


def test_hg_clique(capsys):
    code, rep, _ = run(capsys, "hg", "K3", "--max-q", "4")
    assert code == 0 and rep["hg"] == "3"
    assert rep["q4"].startswith("impossible") and rep["q3"].startswith("winning")


def test_bounds_layered(capsys):
    code, rep, _ = run(capsys, "bounds", "G2,4")
    assert code == 0 and rep["budget_bound"] == "7"
    code, rep, _ = run(capsys, "bounds", "K4")
    assert rep["degeneracy"] == "3"


def test_cover_six_set(tmp_path, capsys):
    f = tmp_path / "six.txt"
    f.write_text("2 6\n0 0\n0 1\n0 2\n1 0\n1 1\n1 2\n")
    code, rep, _ = run(capsys, "cover", str(f))
    assert code == 0 and rep["coverable"] == "no"
    f.write_text("2 5\n0 0\n0 1\n0 2\n1 0\n1 1\n")
    out = tmp_path / "cover.txt"
    code, rep, _ = run(capsys, "cover", str(f), "--recursive", "--out", str(out))
    assert code == 0 and rep["coverable"] == "yes" and rep["valid"] == "yes"
    assert len(out.read_text().splitlines()) == 5


def test_witness(capsys):
    code, rep, _ = run(capsys, "witness", "--d", "3")
    assert code == 0
    assert (rep["lower"], rep["upper"], rep["points"], rep["coverable"]) == ("23", "33", "34", "no")


def test_hsearch(capsys):
    code, rep, _ = run(capsys, "hsearch", "--d", "2", "--box", "2,3", "--size", "6")
    assert code == 0 and rep["all_coverable"] == "no" and rep["witness"]
    code, rep, _ = run(capsys, "hsearch", "--d", "2", "--box", "5,5", "--size", "5", "--budget", "10")
    assert code == 2


def test_seed_reproducibility(capsys):
    args = ["hsearch", "--d", "3", "--box", "4,4,4", "--size", "24", "--random", "30"]
    _, a, _ = run(capsys, *args, "--seed", "5")
    _, b, _ = run(capsys, "--seed", "5", *args)
    assert a == b and a["seed"] == "5"
    _, _, x = run(capsys, "random-strategy", "C4", "--q", "3", "--seed", "11")
    _, _, y = run(capsys, "random-strategy", "C4", "--q", "3", "--seed", "11")
    _, _, z = run(capsys, "random-strategy", "C4", "--q", "3", "--seed", "12")
    assert x == y != z


def test_strategy_verify_and_fool(tmp_path, capsys):
    s = tmp_path / "gdn.txt"
    assert run(capsys, "strategy", "gdn", "--d", "1", "--N", "4", "--out", str(s))[0] == 0
    code, rep, _ = run(capsys, "verify", "G1,4", str(s))
    assert code == 0 and rep["winning"] == "yes"
    r = tmp_path / "rand.txt"
    run(capsys, "random-strategy", "P4", "--q", "5", "--seed", "1", "--out", str(r))
    code, rep, _ = run(capsys, "fool", "P4", str(r), "5")
    assert code == 0 and rep["correct"] == "0"


def test_solve_writes_strategy(tmp_path, capsys):
    out = tmp_path / "c4.txt"
    code, rep, _ = run(capsys, "solve", "C4", "--q", "3", "--out", str(out))
    assert code == 0 and rep["status"] == "winning"
    code, rep, _ = run(capsys, "verify", "C4", str(out))
    assert rep["winning"] == "yes"


def test_book_fool(tmp_path, capsys):
    s = tmp_path / "book.txt"
    run(capsys, "random-strategy", "B2,3", "--q", "7", "--seed", "2", "--out", str(s))
    p = tmp_path / "six.txt"
    p.write_text(format_pointset(noncoverable_witness(2)))
    code, rep, _ = run(capsys, "book-fool", str(s), "--d", "2", "--n", "3", "--points", str(p))
    assert code == 0 and rep["correct"] == "0"


def test_exit_codes(tmp_path, capsys):
    assert main(["solve", "C5", "--q", "3", "--node-budget", "1000"]) == 2
    assert main(["hg", "Q7", "--max-q", "2"]) == 1
    assert main(["cover", str(tmp_path / "missing.txt")]) == 1
    bad = tmp_path / "bad.txt"
    bad.write_text("2 3\n0 0\n")
    assert main(["cover", str(bad)]) == 1
    with pytest.raises(SystemExit) as e:
        main(["hg", "K3"])
    assert e.value.code == 1


def test_help_documents_formats(capsys):
    with pytest.raises(SystemExit) as e:
        main(["--help"])
    assert e.value.code == 0
    out = capsys.readouterr().out
    for token in ("graph      :=", "strategy   :=", "pointset   :=", "cover      :=", "ordering   :="):
        assert token in out
