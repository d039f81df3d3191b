import json

import numpy as np
import pytest

from cudqsd.discrimination import theory_report
from cudqsd.montecarlo import NoiseModel
from cudqsd.qudit import CoefficientProfile
from cudqsd.sweep import (CSV_COLUMNS, EmptyResultError, SweepError, SweepGrid, error_histograms,
                          export, load_csv, load_json, r_histogram, run_sweep, summarize, to_csv)


@pytest.fixture(scope="module")
def rows_d4():
    return run_sweep(SweepGrid(4, shots_per_input=10**4, seed=1))


def test_default_grid_sizes():
    for d in (2, 4, 9):
        g = SweepGrid(d)
        assert g.size == (d - 1) * 10
        assert len(g.points()) == g.size
    assert SweepGrid(4).xi_prime_values == (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0)


def test_rows(rows_d4):
    assert len(rows_d4) == 30
    for r in rows_d4:
        assert r.theory.p_cud >= r.theory.p_ud
        assert r.xi == pytest.approx(r.xi_prime * 0.88**4)
    assert [(r.j0, r.xi_prime) for r in rows_d4][:2] == [(1, 0.1), (1, 0.2)]


def test_d9_grid_size():
    assert len(run_sweep(SweepGrid(9, shots_per_input=10))) == 80


def test_ideal_large_shots_ratio():
    rows = run_sweep(SweepGrid(4, shots_per_input=10**6, seed=3))
    for r in rows:
        assert abs(r.estimate.r_vs_theory_ud - r.theory.r_theory) < 0.02


def test_parallel_matches_serial():
    g = SweepGrid(4, shots_per_input=2000, seed=5, noise=NoiseModel(0.05))
    assert to_csv(run_sweep(g)) == to_csv(run_sweep(g, workers=4))


def test_rows_independent_of_grid_subset():
    full = run_sweep(SweepGrid(4, shots_per_input=500, seed=2))
    part = run_sweep(SweepGrid(4, j0_values=(2,), shots_per_input=500, seed=2))
    assert [r.record() for r in full if r.j0 == 2] == [r.record() for r in part]


def test_profile_failure_reports_coordinates():
    with pytest.raises(SweepError, match="j0=5"):
        run_sweep(SweepGrid(4, j0_values=(5,), shots_per_input=10))


def test_p_perp_nonincreasing_in_xi_prime():
    for d in (4, 9):
        for j0 in range(1, d):
            p = [theory_report(CoefficientProfile(d, j0, k / 10).coefficients()).p_perp for k in range(11)]
            assert np.all(np.diff(p) <= 1e-15)


def test_ideal_dominance():
    for d in (2, 3, 4, 9):
        for j0 in range(1, d):
            for xp in (0.0, 0.5, 1.0):
                t = theory_report(CoefficientProfile(d, j0, xp).coefficients())
                assert t.r_theory >= 1.0
                if t.dim_inconclusive > 1 and xp > 0:
                    assert t.r_theory > 1.0
                else:
                    assert t.r_theory == pytest.approx(1.0, abs=1e-14)


class TestHistograms:
    @pytest.mark.parametrize("d, j0, expected", [(4, 3, 2.1578947368421058), (9, 8, 3.9403341288782756)])
    def test_max_theory_ratio(self, d, j0, expected):
        rows = run_sweep(SweepGrid(d, shots_per_input=10))
        h = r_histogram(rows, source="theory")
        assert h.max == pytest.approx(expected, abs=1e-12)
        best = max(rows, key=lambda r: r.theory.r_theory)
        assert (best.j0, best.xi_prime) == (j0, 1.0)

    def test_ideal_estimated_max(self):
        h = r_histogram(run_sweep(SweepGrid(4, shots_per_input=10**6, seed=0)))
        assert h.max == pytest.approx(2.1578947368421058, abs=0.02)

    def test_counts_and_edges(self, rows_d4):
        h = r_histogram(rows_d4, bins=20)
        assert len(h.counts) == 20 and len(h.bin_edges) == 21
        assert h.total == 30
        assert np.all(np.diff(h.bin_edges) > 0)

    def test_excludes_orthogonal_sets(self):
        rows = run_sweep(SweepGrid(4, xi_prime_values=(0.0, 0.5), shots_per_input=100))
        assert r_histogram(rows).total == 3

    def test_all_orthogonal_is_error(self):
        rows = run_sweep(SweepGrid(4, xi_prime_values=(0.0,), shots_per_input=100))
        with pytest.raises(EmptyResultError):
            r_histogram(rows)

    def test_degenerate_qubit_ratio(self):
        h = r_histogram(run_sweep(SweepGrid(2, shots_per_input=10)), source="theory")
        assert h.min == h.max == 1.0
        assert h.counts[0] == 10

    def test_error_histograms(self, rows_d4):
        hs = error_histograms(rows_d4)
        assert set(hs) == {"p_perp", "p_me_conclusive", "p_me_inconclusive"}
        assert all(h.total == 30 for h in hs.values())
        # 10^4 shots: spread but well below 5 %
        assert hs["p_perp"].max > 0 and all(h.max < 5 for h in hs.values())

    def test_error_histograms_infinite_shots(self):
        rows = run_sweep(SweepGrid(4, expected_counts=True))
        for h in error_histograms(rows).values():
            assert h.counts[0] == 30

    def test_noisy_errors_follow_closed_form(self):
        gamma = 0.05
        exact = run_sweep(SweepGrid(4, noise=NoiseModel(gamma), expected_counts=True))
        sampled = run_sweep(SweepGrid(4, noise=NoiseModel(gamma), shots_per_input=10**6, seed=0))
        for r, s in zip(exact, sampled):
            p = r.theory.p_perp
            closed = 100 * abs(p - ((1 - gamma) * p + gamma / 2)) / p
            assert r.errors["p_perp"] == pytest.approx(closed, abs=1e-9)
            # 5 binomial standard deviations of the mean over 4 inputs, in percent
            sigma = 100 * np.sqrt(p * (1 - p) / (4 * 10**6)) / p
            assert abs(s.errors["p_perp"] - closed) <= 5 * sigma

    def test_empty_rows(self):
        with pytest.raises(EmptyResultError):
            error_histograms([])


class TestExport:
    def test_csv_layout(self, rows_d4, tmp_path):
        path = export(rows_d4, "csv", tmp_path / "s.csv")
        raw = path.read_bytes()
        assert b"\r" not in raw
        lines = raw.decode("utf-8").splitlines()
        assert len(lines) == 31
        assert tuple(lines[0].split(",")) == CSV_COLUMNS

    def test_csv_full_precision(self, rows_d4, tmp_path):
        recs = load_csv(export(rows_d4, "csv", tmp_path / "s.csv"))
        assert recs == [r.record() for r in rows_d4]

    def test_json_roundtrip(self, rows_d4, tmp_path):
        grid = SweepGrid(4, shots_per_input=10**4, seed=1)
        meta, recs = load_json(export(rows_d4, "json", tmp_path / "s.json", grid))
        assert recs == [r.record() for r in rows_d4]
        assert meta["d"] == 4 and meta["xi_prime_grid_assumed"] is True
        assert set(recs[0]) == set(CSV_COLUMNS)

    def test_empty_rows_header_only(self, tmp_path):
        text = export([], "csv", tmp_path / "e.csv").read_text()
        assert text == ",".join(CSV_COLUMNS) + "\n"
        assert json.loads(export([], "json", tmp_path / "e.json").read_text())["rows"] == []

    def test_bad_path(self, rows_d4, tmp_path):
        with pytest.raises(OSError, match="missing"):
            export(rows_d4, "csv", tmp_path / "missing" / "s.csv")

    def test_bad_format(self, rows_d4, tmp_path):
        with pytest.raises(ValueError):
            export(rows_d4, "xml", tmp_path / "s.xml")

    def test_byte_identical_reruns(self, tmp_path):
        g = SweepGrid(4, noise=NoiseModel(0.02), shots_per_input=5000, seed=9)
        a = export(run_sweep(g), "csv", tmp_path / "a.csv").read_bytes()
        b = export(run_sweep(g), "csv", tmp_path / "b.csv").read_bytes()
        assert a == b


def test_summarize(rows_d4):
    s = summarize(rows_d4)
    assert s["rows"] == 30 and s["nonorthogonal_rows"] == 30
    assert s["r_th"]["max"] == pytest.approx(2.1578947368421058)
    assert {"dpp", "dpmc", "dpmi", "r_est"} <= set(s)
