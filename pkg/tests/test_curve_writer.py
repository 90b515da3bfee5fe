"""Tests for the curve writer."""
import csv
import json

import pytest

from app import __version__
from app.exceptions import IoError
from app.models import CurveSeries
from app.utils.curve_writer import SCHEMA_VERSION, CurveWriter

SERIES = CurveSeries(name="demo curve", x_label="p", y_label="D", x=[0.0, 0.5, 1.0], y=[1.0, 0.25, 1.0],
                     metadata={"q": 2.0})


def test_csv_columns(tmp_path):
    path = CurveWriter(str(tmp_path)).write(SERIES, "csv")
    assert path.endswith("demo_curve.csv")
    with open(path, newline="", encoding="utf-8") as f:
        rows = list(csv.DictReader(f))
    assert [float(r["p"]) for r in rows] == SERIES.x
    assert [float(r["D"]) for r in rows] == SERIES.y


def test_json_payload(tmp_path):
    path = CurveWriter(str(tmp_path)).write(SERIES, "json")
    with open(path, encoding="utf-8") as f:
        doc = json.load(f)
    assert doc["schema_version"] == SCHEMA_VERSION
    assert doc["tool_version"] == __version__
    assert doc["metadata"] == {"q": 2.0}
    assert doc["y"] == SERIES.y


def test_output_is_reproducible(tmp_path):
    writer = CurveWriter(str(tmp_path))
    first = open(writer.write(SERIES, "json"), "rb").read()
    second = open(writer.write(SERIES, "json"), "rb").read()
    assert first == second


def test_write_all(tmp_path):
    other = SERIES.model_copy(update={"name": "other"})
    paths = CurveWriter(str(tmp_path)).write_all([SERIES, other])
    assert len(paths) == 2 and paths[0] != paths[1]


def test_unwritable_target(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    with pytest.raises(IoError):
        CurveWriter(str(blocker)).write(SERIES)
