"""Command-line surface: preset grids, scenario files, output manifest."""

import json
import os

import pytest

from swarmsim import cli


TINY = {
    "fleet_size": 3,
    "duration": 40.0,
    "arena_radius": 10.0,
    "controller_mode": "distributed",
    "seed": 9,
}


def write_doc(tmp_path, doc, name="scn.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


class TestPresetGrids:

    def test_cell_counts(self):
        assert len(cli.preset_runs("fig2", 1)) == 4
        assert len(cli.preset_runs("fig3", 1)) == 7
        assert len(cli.preset_runs("fig4", 1)) == 8
        assert len(cli.preset_runs("fig5", 1)) == 12

    def test_labels_unique_and_stable(self):
        for name in ("fig2", "fig3", "fig4", "fig5"):
            cells = cli.preset_runs(name, 3)
            labels = [lab for lab, _ in cells]
            assert len(set(labels)) == len(labels)
            again = cli.preset_runs(name, 3)
            assert [(lab, sc) for lab, sc in again] == cells

    def test_seed_is_threaded_through(self):
        for _, sc in cli.preset_runs("fig2", 17):
            assert sc.seed == 17

    def test_ladder_durations_shrink(self):
        cells = dict(cli.preset_runs("fig3", 1))
        sizes = sorted(int(lab.split("_")[1]) for lab in cells)
        assert sizes == [12, 100, 500, 1000, 2000, 5000, 10000]
        assert cells["fleet_12"].duration > cells["fleet_10000"].duration
        for sc in cells.values():
            assert sc.controller_mode == "centralized"

    def test_fig5_grid_axes(self):
        cells = dict(cli.preset_runs("fig5", 1))
        assert set(cells) == {
            "m100_k1", "m100_k2", "m100_k4", "m100_k8",
            "m50_k1", "m50_k2", "m50_k4", "m50_k8",
            "m25_k1", "m25_k2", "m25_k4", "m25_k8"}
        assert cells["m25_k8"].net_latency_multiplier == 0.25
        assert cells["m25_k8"].scheduler_agents == 8
        assert cells["m100_k1"].net_latency_multiplier == 1.0

    def test_fig4_mixes_modes_and_failures(self):
        cells = dict(cli.preset_runs("fig4", 1))
        assert cells["distributed_1000_hetfail"].failures.enabled
        assert not cells["distributed_1000_het"].failures.enabled
        assert cells["centralized_12_het"].heterogeneity.enabled
        assert cells["centralized_12_het"].fleet_size == 12

    def test_unknown_preset_rejected(self):
        with pytest.raises(ValueError):
            cli.preset_runs("fig9", 1)


class TestValidate:

    def test_ok(self, tmp_path, capsys):
        assert cli.main(["validate", write_doc(tmp_path, TINY)]) == 0
        assert "ok" in capsys.readouterr().out

    def test_unknown_key_named(self, tmp_path, capsys):
        doc = dict(TINY, fleet_sizes=4)
        assert cli.main(["validate", write_doc(tmp_path, doc)]) == 1
        assert "fleet_sizes" in capsys.readouterr().err

    def test_missing_fleet_size_named(self, tmp_path, capsys):
        doc = dict(TINY)
        del doc["fleet_size"]
        assert cli.main(["validate", write_doc(tmp_path, doc)]) == 1
        assert "fleet_size" in capsys.readouterr().err

    def test_all_violations_reported(self, tmp_path, capsys):
        doc = dict(TINY, duration=-5.0, arena_radius=0.0)
        assert cli.main(["validate", write_doc(tmp_path, doc)]) == 1
        err = capsys.readouterr().err
        assert "duration" in err and "arena_radius" in err

    def test_malformed_json_located(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text('{"fleet_size": 3,,}')
        assert cli.main(["validate", str(path)]) == 1
        assert "line 1" in capsys.readouterr().err

    def test_missing_file(self, tmp_path, capsys):
        assert cli.main(["validate", str(tmp_path / "nope.json")]) == 1

    def test_bool_is_not_a_number(self, tmp_path, capsys):
        doc = dict(TINY, fleet_size=True)
        assert cli.main(["validate", write_doc(tmp_path, doc)]) == 1
        assert "fleet_size" in capsys.readouterr().err


class TestRun:

    def test_manifest_complete(self, tmp_path, capsys):
        out = str(tmp_path / "out")
        code = cli.main(["run", write_doc(tmp_path, TINY), "--out", out])
        assert code == 0
        for name in ("tasks.csv", "sched_cdf.csv", "exec_cdf.csv",
                     "summary.txt"):
            path = os.path.join(out, name)
            assert os.path.getsize(path) > 0
        summary = open(os.path.join(out, "summary.txt")).read()
        assert "tasks_completed=" in summary
        assert "seed=9" in summary

    def test_rerun_is_byte_identical(self, tmp_path, capsys):
        doc = write_doc(tmp_path, TINY)
        out_a, out_b = str(tmp_path / "a"), str(tmp_path / "b")
        assert cli.main(["run", doc, "--out", out_a]) == 0
        assert cli.main(["run", doc, "--out", out_b]) == 0
        for name in ("tasks.csv", "sched_cdf.csv", "exec_cdf.csv",
                     "summary.txt"):
            a = open(os.path.join(out_a, name), "rb").read()
            b = open(os.path.join(out_b, name), "rb").read()
            assert a == b

    def test_seed_flag_overrides_file(self, tmp_path, capsys):
        doc = write_doc(tmp_path, TINY)
        out_a, out_b = str(tmp_path / "a"), str(tmp_path / "b")
        assert cli.main(["run", doc, "--out", out_a]) == 0
        assert cli.main(["run", doc, "--seed", "10", "--out", out_b]) == 0
        a = open(os.path.join(out_a, "tasks.csv")).read()
        b = open(os.path.join(out_b, "tasks.csv")).read()
        assert a != b
        assert "seed=10" in open(os.path.join(out_b, "summary.txt")).read()

    def test_invalid_doc_fails_before_output(self, tmp_path, capsys):
        doc = write_doc(tmp_path, dict(TINY, fleet_size=-3))
        out = str(tmp_path / "out")
        assert cli.main(["run", doc, "--out", out]) == 1
        assert not os.path.exists(os.path.join(out, "tasks.csv"))


class TestPreset:

    def test_tiny_grid_end_to_end(self, tmp_path, capsys, monkeypatch):
        # shrink the fig2 grid so the full preset path stays test-sized
        small = [("cell_a", cli.scenario_from_dict(dict(TINY, seed=1))),
                 ("cell_b", cli.scenario_from_dict(
                     dict(TINY, seed=1, controller_mode="centralized")))]
        monkeypatch.setitem(cli.__dict__, "preset_runs",
                            lambda name, seed: [
                                (lab, cli.scenario_from_dict(
                                    dict(cli.scenario_to_dict(sc),
                                         seed=seed)))
                                for lab, sc in small])
        out = str(tmp_path / "grid")
        code = cli.main(["preset", "fig2", "--seed", "4", "--repeats", "2",
                         "--out", out])
        assert code == 0
        for label in ("cell_a", "cell_b"):
            for seed in (4, 5):
                run_dir = os.path.join(out, "%s_s%d" % (label, seed))
                for name in ("tasks.csv", "sched_cdf.csv", "exec_cdf.csv",
                             "summary.txt"):
                    assert os.path.getsize(os.path.join(run_dir, name)) > 0
        combined = open(os.path.join(out, "combined.csv")).read()
        assert combined.startswith("label,seed,metric,value\n")
        assert ",sched," in combined
        cells = open(os.path.join(out, "cells.csv")).read().splitlines()
        assert cells[0].startswith("label,runs,")
        assert len(cells) == 3

    def test_parallel_output_matches_serial(self, tmp_path, capsys,
                                            monkeypatch):
        small = [("one", cli.scenario_from_dict(dict(TINY, seed=1))),
                 ("two", cli.scenario_from_dict(dict(TINY, seed=1,
                                                     duration=25.0)))]
        monkeypatch.setitem(cli.__dict__, "preset_runs",
                            lambda name, seed: [
                                (lab, cli.scenario_from_dict(
                                    dict(cli.scenario_to_dict(sc),
                                         seed=seed)))
                                for lab, sc in small])
        outs = {}
        for workers, sub in (("1", "serial"), ("3", "parallel")):
            monkeypatch.setenv("SWARMSIM_MAX_WORKERS", workers)
            out = str(tmp_path / sub)
            assert cli.main(["preset", "fig2", "--repeats", "2",
                             "--out", out]) == 0
            outs[sub] = out
        for root, _, files in os.walk(outs["serial"]):
            rel = os.path.relpath(root, outs["serial"])
            for name in files:
                a = open(os.path.join(root, name), "rb").read()
                b = open(os.path.join(outs["parallel"], rel, name),
                         "rb").read()
                assert a == b, name
