from __future__ import annotations

import pytest

from forkscope_plots import PlotError, PlotSpec, render
from forkscope_plots.cli import main


def write_csv(path, header, rows):
    path.write_text(header + "\n" + "".join(f"{a},{b}\n" for a, b in rows))
    return str(path)


@pytest.fixture
def ccdf_csv(tmp_path):
    return write_csv(tmp_path / "ccdf_a.csv", "size,W", [(1, 7), (2, 6), (4, 4)])


@pytest.fixture
def delta_csv(tmp_path):
    return write_csv(
        tmp_path / "delta.csv", "size,deltaO", [(1, 0), (2, 3), (4, -1), (5, 0)]
    )


@pytest.fixture
def flat_delta_csv(tmp_path):
    return write_csv(tmp_path / "flat.csv", "size,deltaO", [(1, 0), (2, 0), (3, 0)])


@pytest.fixture
def contribution_csv(tmp_path):
    return write_csv(tmp_path / "contribution.csv", "size,count", [(2, 4), (4, 1)])


def test_ccdf_step_plot(tmp_path, ccdf_csv):
    out = render(PlotSpec("ccdf", (ccdf_csv,), str(tmp_path / "ccdf.png")))
    assert out.is_file() and out.stat().st_size > 0


def test_ccdf_overlays_multiple_series(tmp_path, ccdf_csv):
    second = write_csv(tmp_path / "ccdf_b.csv", "size,W", [(1, 7), (3, 3)])
    out = render(PlotSpec("ccdf", (ccdf_csv, second), str(tmp_path / "overlay.png")))
    assert out.is_file() and out.stat().st_size > 0


def test_delta_flat_zero_line(tmp_path, flat_delta_csv):
    out = render(PlotSpec("delta", (flat_delta_csv,), str(tmp_path / "flat.png")))
    assert out.is_file() and out.stat().st_size > 0


def test_contribution_scatter_over_delta_curve(tmp_path, delta_csv, contribution_csv):
    out = render(PlotSpec(
        "contribution", (delta_csv, contribution_csv), str(tmp_path / "contrib.png")
    ))
    assert out.is_file() and out.stat().st_size > 0


@pytest.mark.parametrize("suffix", [".png", ".svg"])
def test_rerendering_is_byte_identical(tmp_path, ccdf_csv, delta_csv, contribution_csv, suffix):
    specs = [
        PlotSpec("ccdf", (ccdf_csv,), str(tmp_path / f"a{suffix}")),
        PlotSpec("delta", (delta_csv,), str(tmp_path / f"b{suffix}"), log_y=False),
        PlotSpec("contribution", (delta_csv, contribution_csv), str(tmp_path / f"c{suffix}")),
    ]
    first = [render(s).read_bytes() for s in specs]
    second = [render(s).read_bytes() for s in specs]
    assert first == second


def test_missing_csv_rejected(tmp_path):
    with pytest.raises(PlotError, match="not found"):
        render(PlotSpec("ccdf", (str(tmp_path / "nope.csv"),), str(tmp_path / "x.png")))


def test_garbled_header_rejected(tmp_path):
    bad = write_csv(tmp_path / "bad.csv", "foo,bar", [(1, 2)])
    with pytest.raises(PlotError, match="unexpected header"):
        render(PlotSpec("ccdf", (bad,), str(tmp_path / "x.png")))


def test_non_numeric_row_rejected(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("size,W\n1,seven\n")
    with pytest.raises(PlotError, match="non-numeric"):
        render(PlotSpec("ccdf", (str(bad),), str(tmp_path / "x.png")))


def test_unwritable_output_rejected(tmp_path, ccdf_csv):
    with pytest.raises(PlotError, match="cannot write"):
        render(PlotSpec("ccdf", (ccdf_csv,), str(tmp_path / "no" / "dir" / "x.png")))


def test_unknown_kind_rejected(tmp_path, ccdf_csv):
    with pytest.raises(PlotError, match="unknown plot kind"):
        PlotSpec("pie", (ccdf_csv,), str(tmp_path / "x.png"))


def test_cli_roundtrip(tmp_path, ccdf_csv, capsys):
    out = tmp_path / "cli.png"
    rc = main(["--kind", "ccdf", "--in", ccdf_csv, "--out", str(out), "--no-log-y"])
    assert rc == 0
    assert out.is_file()
    rc = main(["--kind", "delta", "--in", ccdf_csv, "--out", str(out)])
    assert rc == 1
    assert "unexpected header" in capsys.readouterr().err
