"""CLI behaviour and exit codes."""

import pytest

from gemsurf_plots.cli import main

from conftest import synthetic_rows, write_stats_file


def test_renders_figure(tmp_path, capsys):
    stats = tmp_path / "stats.csv"
    write_stats_file(stats, synthetic_rows(5))
    out = tmp_path / "fig.svg"
    assert main(["--figure", "disconnected", "--input", str(stats),
                 "--output", str(out)]) == 0
    assert out.exists()
    assert str(out) in capsys.readouterr().out


def test_schema_error_exits_two(tmp_path, capsys):
    broken = tmp_path / "broken.csv"
    broken.write_text("n,mean_genus\n3,0.5\n")
    assert main(["--figure", "disconnected", "--input", str(broken),
                 "--output", str(tmp_path / "fig.svg")]) == 2
    assert "missing required columns" in capsys.readouterr().err


def test_unknown_figure_is_usage_error(tmp_path):
    with pytest.raises(SystemExit) as err:
        main(["--figure", "nonsense", "--input", "x", "--output", "y"])
    assert err.value.code == 2


def test_missing_input_file_exits_one(tmp_path, capsys):
    assert main(["--figure", "disconnected", "--input",
                 str(tmp_path / "absent.csv"),
                 "--output", str(tmp_path / "fig.svg")]) == 1
