import math
import os
import subprocess

import pytest

import tunnelph as tp

SQUARE = [("a", 0, 0), ("b", 1, 0), ("c", 1, 1), ("d", 0, 1)]


def test_square_barcode():
    b = tp.persistence(SQUARE, max_filtration=2.0)
    h1 = b.bars(1)
    assert len(h1) == 1
    assert h1[0].birth == pytest.approx(1.0)
    assert h1[0].death == pytest.approx(math.sqrt(2))
    assert tp.betti_numbers(b, 1.2) == (1, 1)
    assert tp.persistent_betti(b, 1.1, 0.4) == (1, 0)
    assert sum(p.censored for p in b.bars(0)) == 1


def test_errors_map_to_python_types():
    with pytest.raises(ValueError):
        tp.persistence([("a", 0, 0), ("a", 1, 1)])
    b = tp.persistence(SQUARE, max_filtration=2.0)
    with pytest.raises(tp.InputError):
        tp.betti_numbers(b, 3.0)
    with pytest.raises(ArithmeticError):
        tp.train_classifier([[0.5], [0.5], [-1.0]], [1, -1, 1], gamma=1e14)


def test_features_hand_case():
    b = tp.Barcode([(0, 0, math.inf), (0, 0, 3), (0, 0, 2), (1, 2, 4), (1, 1, 1.8)], 10.0)
    f = tp.extract_features(b, 10.0)
    assert f == pytest.approx([15, 2.8, 3, 2, 5, 2.5, 2, 2, 2, 3, 0, 0, 3, 2])
    assert tp.feature_category(8) == "geometric"


def test_lssvm_regression_interpolates():
    m = tp.train_regressor([[0.0], [1.0], [2.0]], [1.0, 3.0, 5.0], gamma=1e6, kernel="linear")
    assert m.predict([1.0]) == pytest.approx(3.0, abs=1e-4)
    assert sum(m.alphas) == pytest.approx(0.0, abs=1e-10)
    assert tp.kkt_residual(m, [[0.0], [1.0], [2.0]], [1.0, 3.0, 5.0]) <= 1e-8
    again = tp.LssvmModel.from_json(m.to_json())
    assert again.predict([0.5]) == m.predict([0.5])


def test_blast_preset():
    load = tp.paper_load()
    assert load["hole_peak"] == 1.5e9
    assert load["uniform_peak"] == pytest.approx(1.38e8)
    prof = tp.load_profile(load["uniform_peak"])
    assert prof[0] == (0.0, 0.0)
    assert prof[-1][0] == 0.035 and prof[-1][1] == 0.0
    assert max(prof, key=lambda s: s[1])[0] == 0.005


def test_warning_on_fixture():
    r = tp.evaluate_warning(tp.fixture_series(8))
    assert r["triggered"] and r["trigger_event"] == 5
    assert r["at_threshold_event"] == 4
    assert not tp.evaluate_warning([22.0] * 6)["triggered"]


def test_run_all_fixture(tmp_path):
    files = tp.run_all(tmp_path, mode="fixture")
    assert "experiment_report.json" in files
    assert (tmp_path / "warning_report.json").exists()


@pytest.mark.skipif("TUNNELPH_CLI" not in os.environ, reason="cli path not provided")
def test_cli_gate_exit_code():
    r = subprocess.run([os.environ["TUNNELPH_CLI"], "warn", "--fixture", "table6", "--gate"], capture_output=True)
    assert r.returncode == 3
