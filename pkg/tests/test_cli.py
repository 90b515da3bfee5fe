"""Tests for the command line dispatcher."""
import json
import logging

import numpy as np
import pytest

from app.config import reset_settings
from app.main import dispatch
from app.models import GrayImage
from app.utils.pgm import read_pgm, write_pgm


def run(capsys, *argv):
    code = dispatch(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_wq_example(capsys):
    code, out = run(capsys, "wq", "--z", "1", "--q", "2")
    assert code == 0
    assert out == {"value": pytest.approx(0.5)}


def test_wq_several_points(capsys):
    code, out = run(capsys, "wq", "--z", "1,3", "--q", "2", "--closed-form")
    assert code == 0
    assert out["values"] == pytest.approx([0.5, 0.75])


def test_lambertw_omega(capsys):
    _, out = run(capsys, "lambertw", "--z", "1")
    assert out["value"] == pytest.approx(0.5671432904, abs=1e-9)


def test_numbers_prime_power(capsys):
    code, out = run(capsys, "numbers", "--n", "8", "--q", "1")
    assert code == 0
    assert out["randomness"] == -1.0
    assert out["distance"] == 0.0
    assert out["factors"] == [[2, 3]]


def test_numbers_out_of_range_is_domain_error(capsys):
    code, out = run(capsys, "numbers", "--n", "1")
    assert code == 2
    assert out["error"] == "OutOfRange"


def test_segment_writes_binarized_image(capsys, tmp_path):
    rng = np.random.default_rng(7)
    pixels = np.hstack([rng.integers(45, 56, size=(16, 8)), rng.integers(195, 206, size=(16, 8))])
    src = write_pgm(GrayImage(pixels=pixels.astype(np.uint8)), tmp_path / "img.pgm")
    dst = tmp_path / "out" / "bin.pgm"
    code, out = run(capsys, "segment", "--in", src, "--q", "0.5", "--method", "disentropy", "--out", str(dst))
    assert code == 0
    assert 56 <= out["threshold"] <= 195
    binary = read_pgm(dst)
    assert np.all(binary.pixels[:, :8] == 0) and np.all(binary.pixels[:, 8:] == 255)


def test_missing_input_is_io_error(capsys, tmp_path):
    code, out = run(capsys, "segment", "--in", str(tmp_path / "absent.pgm"))
    assert code == 3
    assert out["error"] == "IoError"


def test_unknown_subcommand_is_usage_error(capsys):
    code, out = run(capsys, "nosuch")
    assert code == 1
    assert out["error"] == "UsageError"


def test_validation_error_is_usage_error(capsys):
    code, out = run(capsys, "channel", "--pc", "1.5")
    assert code == 1
    assert out["error"] == "UsageError"


def test_operator_unsolvable_keeps_error_name(capsys):
    cnot = "[[1,0,0,0],[0,1,0,0],[0,0,0,1],[0,0,1,0]]"
    code, out = run(capsys, "operator", "--matrix", cnot, "--q", "2")
    assert code == 2
    assert out["error"] == "EigenDomainError"
    assert out["details"]["eigenvalues"] == [-1.0]


def test_operator_number_spectrum(capsys):
    code, out = run(capsys, "operator", "--matrix", "[[0,0],[0,1]]", "--q", "2")
    assert code == 0
    assert np.allclose(out["matrix"], [[0.0, 0.0], [0.0, 0.5]])


def test_disentropy_command(capsys):
    _, out = run(capsys, "disentropy", "--p", "1", "--q", "2")
    assert out["disentropy"] == pytest.approx(0.5)


def test_monogamy_trials_are_seeded(capsys):
    _, first = run(capsys, "monogamy", "--trials", "20", "--seed", "3")
    _, second = run(capsys, "monogamy", "--trials", "20", "--seed", "3")
    assert first == second
    assert first["violations"] == 0


def test_figure_writes_curves(capsys, tmp_path):
    code, out = run(capsys, "figure", "--which", "fig12", "--set", "points=101",
                    "--format", "csv", "--output-dir", str(tmp_path))
    assert code == 0
    assert len(out["files"]) == 3
    assert out["series"][0]["metadata"]["roots"][0] == pytest.approx(0.1251, abs=2e-3)
    assert (tmp_path / "fig12_randomness.csv").exists()


def test_figure_output_is_deterministic(capsys, tmp_path):
    args = ("figure", "--which", "fig3", "--set", "points=11", "--format", "json", "--output-dir", str(tmp_path))
    run(capsys, *args)
    first = (tmp_path / "fig3_sum.json").read_bytes()
    run(capsys, *args)
    assert (tmp_path / "fig3_sum.json").read_bytes() == first


def test_typicality_long_sampled_sequence(capsys):
    code, out = run(capsys, "typicality", "--p", "0.5,0.3,0.2", "--n", "1000", "--seed", "5")
    assert code == 0
    assert sum(out["counts"]) == 1000
    assert out["log2_card_bounds"][1] == pytest.approx(1000 * (1.4854752972273344 + 0.05))


@pytest.mark.parametrize("argv", [
    ("holevo", "--trials", "100", "--q", "1.5"),
    ("qfano", "--trials", "100", "--channel", "depolarizing", "--p", "0.2"),
    ("qfano", "--trials", "100", "--channel", "bit_flip", "--p", "0.3", "--q", "2"),
])
def test_bound_reporters_are_seeded_and_logged(capsys, caplog, argv):
    with caplog.at_level(logging.INFO, logger="app.routes.quantum"):
        code, first = run(capsys, *argv, "--seed", "8")
        _, second = run(capsys, *argv, "--seed", "8")
    assert code == 0
    assert first == second
    assert first["trials"] == 100
    assert 0 <= first["satisfied"] <= 100
    assert sum("satisfied in" in r.getMessage() for r in caplog.records) == 2


def test_settings_defaults_reach_handlers(capsys, monkeypatch, tmp_path):
    _, explicit = run(capsys, "holevo", "--trials", "5", "--seed", "3")
    monkeypatch.setenv("SEED", "3")
    monkeypatch.setenv("OUTPUT_FORMAT", "csv")
    monkeypatch.setenv("OUTPUT_DIR", str(tmp_path / "curves"))
    reset_settings()
    _, from_env = run(capsys, "holevo", "--trials", "5")
    assert from_env == explicit
    code, out = run(capsys, "figure", "--which", "fig12", "--set", "points=11")
    assert code == 0
    assert (tmp_path / "curves" / "fig12_randomness.csv").exists()


def test_malformed_image_is_format_error(capsys, tmp_path):
    bad = tmp_path / "bad.pgm"
    bad.write_bytes(b"P7\n2 2\n255\n\x00\x00\x00\x00")
    code, out = run(capsys, "segment", "--in", str(bad))
    assert code == 3
    assert out["error"] == "FormatError"
    assert out["details"]["offset"] == 0
