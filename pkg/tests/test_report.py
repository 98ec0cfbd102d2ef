import json

import pytest

from hypercube_dml.core import Labeling, balance_report
from hypercube_dml.report import balance_json, balance_table, plot_balance, write_figures


def test_balance_table_q2():
    lab = Labeling(2, (0, 1, 2, 3))
    text = balance_table(lab, balance_report(lab))
    assert text.splitlines() == [
        "vertex\tlabel\tneighbor_sum\tc0\tc1",
        "0\t0\t3\t1\t1",
        "1\t1\t3\t1\t1",
        "2\t2\t3\t1\t1",
        "3\t3\t3\t1\t1",
    ]


def test_balance_json_fields(paper_labs):
    doc = json.loads(balance_json(balance_report(paper_labs[4])))
    assert set(doc) == {"n", "balanced", "counts", "witnesses"}
    assert doc["n"] == 6 and doc["balanced"] is False
    assert doc["counts"][0] == [1, 2, 6, 0, 2, 4]
    assert [0, 0] in doc["witnesses"]


@pytest.mark.parametrize("n", [2, 6])
def test_write_figures(tmp_path, n, paper_labs):
    lab = paper_labs[0] if n == 6 else Labeling(2, (0, 1, 2, 3))
    paths = write_figures(lab, balance_report(lab), tmp_path / "out", stem="x")
    assert [p.name for p in paths] == ["x_table.png", "x_sums.png", "x_balance.png"]
    assert all(p.stat().st_size > 1000 for p in paths)


def test_figures_without_report(tmp_path):
    paths = write_figures(Labeling(1, (0, 1)), None, tmp_path)
    assert len(paths) == 2


def test_plot_balance_returns_path(tmp_path):
    lab = Labeling(2, (0, 1, 2, 3))
    assert plot_balance(balance_report(lab), tmp_path / "b.png").exists()
