import pytest

from randtoeplitz.cli import main

COMMANDS = [
    ["fig1", "--n", "17", "--trials", "8"],
    ["fig2", "--m-values", "4,8", "--trials", "3"],
    ["spectrum", "--n", "17", "--trials", "3"],
    ["equidist", "--n-values", "9,17", "--symbol", "zero-phase"],
    ["solve", "--n", "17", "--symbol", "cosine", "--precond", "none"],
]


@pytest.mark.parametrize("argv", COMMANDS, ids=lambda a: a[0])
def test_rerun_byte_identical(argv, tmp_path):
    outs = []
    for i in range(2):
        path = tmp_path / f"out{i}.csv"
        assert main(argv + ["--out", str(path), "-q"]) == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1] and outs[0]


def test_jobs_do_not_change_output(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["fig1", "--n", "17", "--trials", "6", "--out", str(a), "-q"]) == 0
    assert main(["fig1", "--n", "17", "--trials", "6", "--jobs", "2", "--out", str(b), "-q"]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_stdout_and_summary(capsys):
    assert main(["fig1", "--n", "9", "--trials", "2", "--symbol", "cosine"]) == 0
    out, err = capsys.readouterr()
    assert out.startswith("t,iter_cg,iter_pcg\n")
    assert "mean iter_pcg" in err


def test_svg_written(tmp_path):
    svg = tmp_path / "f.svg"
    assert main(["fig1", "--n", "9", "--trials", "3", "--symbol", "cosine", "--out", str(tmp_path / "f.csv"),
                 "--svg", str(svg)]) == 0
    text = svg.read_text()
    assert text.count('class="series"') == 2 and text.count('class="legend"') == 2


@pytest.mark.parametrize("argv", [
    ["fig1", "--trials", "0"],
    ["fig1", "--tol", "-1"],
    ["fig2", "--m-min", "10", "--m-max", "5"],
    ["fig2", "--m-values", "a,b"],
    ["spectrum", "--epsilon", "0"],
    ["solve", "--symbol", "nope"],
])
def test_invalid_config_exits_2(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_package_error_exit_1(capsys):
    # dense eigenvalues are capped, so this is a resource error rather than a usage error
    rc = main(["equidist", "--n-values", "2048", "--symbol", "constant"])
    assert rc == 1
    assert "error" in capsys.readouterr().err


def test_empty_plot_still_writes_csv(tmp_path, capsys):
    # even N cosine: the Strang eigenvalue at pi is zero, so no trial has a spectrum
    csv, svg = tmp_path / "e.csv", tmp_path / "e.svg"
    rc = main(["spectrum", "--n", "16", "--trials", "1", "--symbol", "cosine", "--out", str(csv), "--svg", str(svg)])
    assert rc == 1 and not svg.exists()
    assert csv.read_text() == "t,index,eigenvalue\n1,-1,nan\n"
