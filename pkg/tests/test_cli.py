import json

import numpy as np
import pytest

from framekit.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


class TestGen:
    def test_block_frame_file(self, capsys, tmp_path):
        path = tmp_path / "f.json"
        code, report = run_json(capsys, "gen", "block", "--blocks", "3", "--out", str(path))
        assert code == 0
        assert report["results"] == {
            "path": str(path),
            "dim": 6,
            "size": 9,
            "blocks": 3,
        }
        doc = json.loads(path.read_text())
        assert doc["dim"] == 6 and len(doc["vectors"]) == 9 and doc["blocks"] == 3

    def test_lemma5_values(self, capsys, tmp_path):
        path = tmp_path / "b.json"
        code, report = run_json(capsys, "gen", "lemma5", "--n", "2", "--out", str(path))
        assert code == 0
        doc = json.loads(path.read_text())
        assert doc["vectors"] == [
            [0.5, -0.5],
            [-0.5, 0.5],
            [1.0 / np.sqrt(2.0), 1.0 / np.sqrt(2.0)],
        ]

    def test_onb(self, capsys, tmp_path):
        path = tmp_path / "e.json"
        code, report = run_json(capsys, "gen", "onb", "--dim", "4", "--out", str(path))
        assert code == 0
        doc = json.loads(path.read_text())
        assert doc["vectors"] == [list(row) for row in np.eye(4)]

    def test_invalid_params_exit_code(self, capsys, tmp_path):
        code, report = run_json(
            capsys, "gen", "perturbed", "--blocks", "3", "--eps", "1.5",
            "--out", str(tmp_path / "x.json"),
        )
        assert code == 3
        assert "error" in report

    def test_usage_error_is_exit_2(self, tmp_path):
        with pytest.raises(SystemExit) as info:
            main(["gen", "nonsense", "--out", str(tmp_path / "x.json")])
        assert info.value.code == 2

    def test_gen_is_idempotent_at_file_level(self, capsys, tmp_path):
        p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
        run(capsys, "gen", "block", "--blocks", "4", "--out", str(p1))
        run(capsys, "gen", "block", "--blocks", "4", "--out", str(p2))
        assert p1.read_bytes() == p2.read_bytes()


class TestAnalyze:
    def test_block_frame_report(self, capsys, tmp_path):
        path = tmp_path / "f.json"
        run(capsys, "gen", "block", "--blocks", "3", "--out", str(path))
        code, report = run_json(capsys, "analyze", str(path))
        assert code == 0
        res = report["results"]
        assert res["excess"] == 3
        assert res["bounds"]["lower"] == pytest.approx(1.0, abs=1e-10)
        assert res["bounds"]["upper"] == pytest.approx(1.0, abs=1e-10)
        assert res["tight"]["is_tight"] is True

    def test_onb_report(self, capsys, tmp_path):
        path = tmp_path / "e.json"
        run(capsys, "gen", "onb", "--dim", "3", "--out", str(path))
        code, report = run_json(capsys, "analyze", str(path))
        res = report["results"]
        assert res["excess"] == 0
        assert res["riesz"]["is_riesz_basis_for_space"] is True

    def test_perturbed_bounds_inside_guarantee(self, capsys, tmp_path):
        path = tmp_path / "g.json"
        run(capsys, "gen", "perturbed", "--blocks", "4", "--eps", "0.3", "--out", str(path))
        code, report = run_json(capsys, "analyze", str(path))
        b = report["results"]["bounds"]
        assert 0.49 - 1e-10 <= b["lower"] <= b["upper"] <= 1.69 + 1e-10

    def test_malformed_file(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        code, report = run_json(capsys, "analyze", str(path))
        assert code == 3
        assert "line 1" in report["error"]

    def test_deterministic_reports(self, capsys, tmp_path):
        path = tmp_path / "f.json"
        run(capsys, "gen", "block", "--blocks", "3", "--out", str(path))
        _, out1 = run(capsys, "analyze", str(path))
        _, out2 = run(capsys, "analyze", str(path))
        assert out1 == out2

    def test_csv_frame_input(self, capsys, tmp_path):
        path = tmp_path / "f.csv"
        run(capsys, "gen", "onb", "--dim", "2", "--out", str(path))
        code, report = run_json(capsys, "analyze", str(path))
        assert code == 0
        assert report["results"]["dim"] == 2


class TestTransform:
    def test_identity_matrix_round_trips_frame(self, capsys, tmp_path):
        src = tmp_path / "f.json"
        run(capsys, "gen", "block", "--blocks", "2", "--out", str(src))
        mat = tmp_path / "u.csv"
        mat.write_text("\n".join(",".join("1.0" if i == j else "0.0" for j in range(5)) for i in range(5)) + "\n")
        out = tmp_path / "g.json"
        code, report = run_json(capsys, "transform", str(src), "--matrix", str(mat), "--out", str(out))
        assert code == 0
        # canonical serialisation of the source (no block metadata) equals the output
        canonical = tmp_path / "c.json"
        from framekit import load_frame, save_frame

        frame, _ = load_frame(src)
        save_frame(canonical, frame)
        assert out.read_bytes() == canonical.read_bytes()
        assert report["results"]["criterion_agrees"] is True

    def test_zero_matrix_flags_not_a_frame(self, capsys, tmp_path):
        src = tmp_path / "f.json"
        run(capsys, "gen", "onb", "--dim", "2", "--out", str(src))
        mat = tmp_path / "u.csv"
        mat.write_text("0.0,0.0\n0.0,0.0\n")
        out = tmp_path / "g.json"
        code, report = run_json(capsys, "transform", str(src), "--matrix", str(mat), "--out", str(out))
        assert code == 0
        assert report["results"]["gamma"] == 0.0
        assert report["results"]["is_frame_for_source_span"] is False
        assert report["results"]["kernel_identity"]["agree"] is True

    def test_recover_convenience(self, capsys, tmp_path):
        src, dst = tmp_path / "f.json", tmp_path / "g.json"
        run(capsys, "gen", "onb", "--dim", "2", "--out", str(src))
        run(capsys, "gen", "lemma5", "--n", "2", "--out", str(dst))
        mat_out = tmp_path / "u.json"
        code, report = run_json(
            capsys, "transform", str(src), "--recover", str(dst), "--matrix-out", str(mat_out)
        )
        assert code == 0
        assert report["results"]["fit_residual"] == pytest.approx(0.0, abs=1e-12)
        assert mat_out.exists()


class TestPerturb:
    def test_block_pair_report(self, capsys, tmp_path):
        f, g = tmp_path / "f.json", tmp_path / "g.json"
        run(capsys, "gen", "block", "--blocks", "4", "--out", str(f))
        run(capsys, "gen", "perturbed", "--blocks", "4", "--eps", "0.3", "--out", str(g))
        code, report = run_json(
            capsys, "perturb", str(f), str(g), "--lam", "0.0", "--mu", "0.3",
            "--violation-trials", "100",
        )
        assert code == 0
        res = report["results"]
        cert = res["certificate"]
        assert cert["lambda"] == 0.0 and cert["mu"] == 0.3
        assert cert["admissible"] and cert["psd_passed"]
        assert cert["predicted"] == pytest.approx([0.49, 1.69])
        lo, hi = cert["measured"]
        assert cert["predicted"][0] - 1e-9 <= lo <= hi <= cert["predicted"][1] + 1e-9
        assert res["excess"]["equal"] is True
        assert res["tail_profile"]["cut_points"][0] == 0
        assert res["tail_profile"]["tail_norms"][-1] == 0.0
        assert res["violation_witness"] is None

    def test_shape_mismatch_is_contract_failure(self, capsys, tmp_path):
        f, g = tmp_path / "f.json", tmp_path / "g.json"
        run(capsys, "gen", "onb", "--dim", "2", "--out", str(f))
        run(capsys, "gen", "onb", "--dim", "3", "--out", str(g))
        code, report = run_json(capsys, "perturb", str(f), str(g), "--lam", "0", "--mu", "0")
        assert code == 3 and "error" in report


class TestUbc:
    def test_exact_mode_on_small_family(self, capsys, tmp_path):
        path = tmp_path / "e.json"
        run(capsys, "gen", "onb", "--dim", "3", "--out", str(path))
        code, report = run_json(capsys, "ubc", str(path))
        assert code == 0
        assert report["results"]["mode"] == "exact"
        assert report["results"]["value"] == pytest.approx(1.0)

    def test_dependent_family_reports_unbounded(self, capsys, tmp_path):
        path = tmp_path / "f.json"
        run(capsys, "gen", "lemma5", "--n", "3", "--out", str(path))
        code, report = run_json(capsys, "ubc", str(path))
        assert code == 0
        assert report["results"]["unbounded"] is True
        assert len(report["results"]["kernel_witness"]) == 4

    def test_estimate_mode_deterministic_with_seed(self, capsys, tmp_path):
        path = tmp_path / "f.json"
        run(capsys, "gen", "block", "--blocks", "3", "--out", str(path))
        # drop to the extracted subset to get an independent family
        from framekit import Frame, extract_riesz_subset, load_frame, save_frame

        frame, _ = load_frame(path)
        indices, _ = extract_riesz_subset(frame)
        save_frame(path, Frame(frame.matrix[:, indices]))
        _, out1 = run(capsys, "ubc", str(path), "--mode", "estimate", "--seed", "9")
        _, out2 = run(capsys, "ubc", str(path), "--mode", "estimate", "--seed", "9")
        assert out1 == out2

    def test_env_seed_override(self, capsys, tmp_path, monkeypatch):
        path = tmp_path / "e.json"
        run(capsys, "gen", "onb", "--dim", "4", "--out", str(path))
        monkeypatch.setenv("FRAMEKIT_SEED", "123")
        code, report = run_json(capsys, "ubc", str(path), "--mode", "estimate")
        assert code == 0
        assert report["results"]["seed"] == 123


class TestPrune:
    def test_block_frame_certified(self, capsys, tmp_path):
        path = tmp_path / "f.json"
        run(capsys, "gen", "block", "--blocks", "4", "--out", str(path))
        code, report = run_json(capsys, "prune", str(path), "--eps", "0.5")
        assert code == 0
        res = report["results"]
        assert res["feasible"] and res["certified"]
        assert res["remainder"]["lower"] >= res["target_lower"] - 1e-9

    def test_epsilon_above_bound_rejected(self, capsys, tmp_path):
        path = tmp_path / "e.json"
        run(capsys, "gen", "onb", "--dim", "2", "--out", str(path))
        code, report = run_json(capsys, "prune", str(path), "--eps", "2.0")
        assert code == 3


class TestRepro:
    def test_lemma6_growth_table(self, capsys):
        code, report = run_json(capsys, "repro", "lemma6", "--max-n", "8")
        assert code == 0
        res = report["results"]
        assert res["all_rows_pass"] is True
        for row in res["rows"]:
            assert row["ubc"] >= row["growth_bound"] - 1e-9

    def test_bounds_experiment(self, capsys):
        code, report = run_json(capsys, "repro", "bounds", "--blocks", "8", "--eps", "0.3")
        assert code == 0
        res = report["results"]
        assert res["inside"] is True
        assert res["guaranteed"] == pytest.approx([0.49, 1.69])

    def test_theorem2_all_agree(self, capsys):
        code, report = run_json(capsys, "repro", "theorem2", "--trials", "50", "--seed", "7")
        assert code == 0
        res = report["results"]
        assert res["agree_count"] == 50 and res["all_agree"] is True
        assert len(res["rows"]) == 50

    def test_theorem2_deterministic(self, capsys):
        _, out1 = run(capsys, "repro", "theorem2", "--trials", "20", "--seed", "3")
        _, out2 = run(capsys, "repro", "theorem2", "--trials", "20", "--seed", "3")
        assert out1 == out2

    def test_counterexample_experiment(self, capsys):
        code, report = run_json(
            capsys, "repro", "counterexample", "--blocks", "4", "--eps", "0.3"
        )
        assert code == 0
        res = report["results"]
        assert res["certificates_pass"] is True
        assert res["subfamily_is_riesz_basis"] is True
        assert res["subfamily_bound_ok"] is True
        assert res["strictly_decreasing"] is True

    def test_unknown_experiment_is_usage_error(self):
        with pytest.raises(SystemExit) as info:
            main(["repro", "nonsense"])
        assert info.value.code == 2


class TestReportShape:
    def test_report_keys_and_float_format(self, capsys, tmp_path):
        path = tmp_path / "f.json"
        run(capsys, "gen", "block", "--blocks", "2", "--out", str(path))
        code, out = run(capsys, "analyze", str(path))
        report = json.loads(out)
        assert list(report.keys()) == ["command", "inputs", "results", "tolerances", "version"]
        assert report["version"]
        # 17-significant-digit rendering round-trips doubles exactly
        assert "9.9999999999999998e-13" in out
        assert report["tolerances"]["rank_rel"] == 1e-12
        assert report["results"]["certified_lower"] == pytest.approx(0.5, abs=1e-12)
