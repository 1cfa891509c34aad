"""Command-line front end: run scenario files, regenerate presets, validate.

Scenario files are single JSON documents mirroring the Scenario type
field-for-field; unknown keys are a hard error so typos in calibration work
surface immediately. Preset grids are pure functions of (name, seed):
regenerating a preset always yields the same scenario list. Repeats use
consecutive seeds from the base seed.

Independent preset runs may execute in parallel worker processes
(SWARMSIM_MAX_WORKERS caps the pool); each run writes only its own output
directory and the combined tables are assembled in a fixed order after all
runs complete, so parallelism never changes any output byte.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import experiments_calibration
from .engine import run
from .metrics import export_cdf, percentile, summary_lines, write_task_csv
from .scenario import (Scenario, ScenarioError, scenario_from_dict,
                       scenario_to_dict, validate_scenario)

# fig3 rung durations: sized so every rung collects a few thousand
# scheduling samples (slow small fleets need long runs) while the big
# saturated rungs stay within desk-scale wall time
LADDER = (12, 100, 500, 1000, 2000, 5000, 10000)
LADDER_DURATION = {12: 50000.0, 100: 7000.0, 500: 1200.0, 1000: 600.0,
                   2000: 600.0, 5000: 500.0, 10000: 600.0}

# fleet-12 comparison cells stop early so the opening burst of assignments,
# made while the whole fleet is still idle and selection quality matters,
# dominates the sample set instead of vanishing into the busy steady state
SMALL_FLEET_DURATION = 120.0
BASE_DURATION = 600.0

PRESET_NAMES = ("fig2", "fig3", "fig4", "fig5", "calibrate")


def preset_runs(name: str, seed: int) -> list[tuple[str, Scenario]]:
    """One (label, scenario) pair per grid cell, in fixed order."""
    cells: list[tuple[str, Scenario]] = []
    if name == "fig2":
        for mode in ("centralized", "distributed"):
            for fleet in (12, 1000):
                dur = SMALL_FLEET_DURATION if fleet == 12 else BASE_DURATION
                cells.append(("%s_%d" % (mode, fleet),
                              Scenario(fleet_size=fleet, controller_mode=mode,
                                       duration=dur, seed=seed)))
    elif name == "fig3":
        for fleet in LADDER:
            cells.append(("fleet_%d" % fleet,
                          Scenario(fleet_size=fleet,
                                   controller_mode="centralized",
                                   duration=LADDER_DURATION[fleet],
                                   seed=seed)))
    elif name == "fig4":
        for mode in ("centralized", "distributed"):
            for fleet in (12, 1000):
                for failures in (False, True):
                    label = "%s_%d_%s" % (mode, fleet,
                                          "hetfail" if failures else "het")
                    cells.append((label, experiments_calibration.degraded_cell(
                        mode, failures, seed, fleet_size=fleet)))
    elif name == "fig5":
        for mult in (1.0, 0.5, 0.25):
            for agents in (1, 2, 4, 8):
                label = "m%d_k%d" % (round(mult * 100), agents)
                cells.append((label,
                              Scenario(fleet_size=1000,
                                       controller_mode="centralized",
                                       duration=BASE_DURATION, seed=seed,
                                       net_latency_multiplier=mult,
                                       scheduler_agents=agents)))
    else:
        raise ValueError("unknown preset %r" % name)
    return cells


def _percentile_or_blank(samples: list[float], p: float) -> str:
    return repr(percentile(samples, p)) if samples else ""


def write_run_outputs(result, out_dir: str, extra=()):
    os.makedirs(out_dir, exist_ok=True)
    rep = result.report
    write_task_csv(sorted(result.records.values(), key=lambda r: r.task_id),
                   os.path.join(out_dir, "tasks.csv"))
    for fname, samples in (("sched_cdf.csv", rep.scheduling_latency),
                           ("exec_cdf.csv", rep.task_execution)):
        path = os.path.join(out_dir, fname)
        if samples:
            export_cdf(samples, path)
        else:
            with open(path, "w", newline="\n") as fh:
                fh.write("value,cum_fraction\n")
    with open(os.path.join(out_dir, "summary.txt"), "w", newline="\n") as fh:
        for line in summary_lines(rep, extra=list(extra)):
            fh.write(line + "\n")


def _run_cell(args):
    label, seed, doc, out_dir = args
    scenario = scenario_from_dict(doc)
    result = run(scenario)
    write_run_outputs(result, out_dir,
                      extra=[("cell", label), ("seed", seed)])
    rep = result.report
    return (label, seed, rep.scheduling_latency, rep.task_execution,
            rep.tasks_completed, rep.tasks_incomplete)


def _worker_count(n_jobs: int) -> int:
    cap = os.environ.get("SWARMSIM_MAX_WORKERS")
    limit = int(cap) if cap else (os.cpu_count() or 1)
    return max(1, min(n_jobs, limit))


def cmd_run(path: str, seed: int | None, out_dir: str) -> int:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    except json.JSONDecodeError as exc:
        print("error: %s: parse error at line %d column %d: %s"
              % (path, exc.lineno, exc.colno, exc.msg), file=sys.stderr)
        return 1
    if seed is not None:
        if not isinstance(doc, dict):
            print("error: scenario: expected an object", file=sys.stderr)
            return 1
        doc["seed"] = seed
    try:
        scenario = scenario_from_dict(doc)
    except ScenarioError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    violations = validate_scenario(scenario)
    if violations:
        for v in violations:
            print("invalid: %s" % v, file=sys.stderr)
        return 1
    result = run(scenario)
    write_run_outputs(result, out_dir, extra=[("seed", scenario.seed)])
    rep = result.report
    print("completed %d/%d tasks in %s sim-seconds; outputs in %s"
          % (rep.tasks_completed, rep.tasks_enqueued,
             repr(scenario.duration), out_dir))
    return 0


def cmd_preset(name: str, seed: int, repeats: int, out_dir: str) -> int:
    if name == "calibrate":
        return _cmd_calibrate(out_dir)
    try:
        base_cells = preset_runs(name, seed)
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    jobs = []
    for rep_idx in range(repeats):
        for label, _ in base_cells:
            run_seed = seed + rep_idx
            doc = scenario_to_dict(dict(preset_runs(name, run_seed))[label])
            jobs.append((label, run_seed, doc,
                         os.path.join(out_dir, "%s_s%d" % (label, run_seed))))
    os.makedirs(out_dir, exist_ok=True)
    workers = _worker_count(len(jobs))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_run_cell, jobs))
    else:
        outcomes = [_run_cell(job) for job in jobs]

    # combined long-format table and per-cell pooled summary; outcomes
    # arrive in submission order, so the files come out identical no
    # matter how many workers ran
    by_label: dict[str, dict] = {
        label: {"sched": [], "exec": [], "completed": 0, "incomplete": 0,
                "runs": 0}
        for label, _ in base_cells}
    with open(os.path.join(out_dir, "combined.csv"), "w",
              newline="\n") as fh:
        fh.write("label,seed,metric,value\n")
        for label, run_seed, sched, execs, completed, incomplete in outcomes:
            cell = by_label[label]
            cell["sched"] += sched
            cell["exec"] += execs
            cell["completed"] += completed
            cell["incomplete"] += incomplete
            cell["runs"] += 1
            for metric, samples in (("sched", sched), ("exec", execs)):
                for value in samples:
                    fh.write("%s,%d,%s,%s\n"
                             % (label, run_seed, metric, repr(value)))
    with open(os.path.join(out_dir, "cells.csv"), "w", newline="\n") as fh:
        fh.write("label,runs,completed,incomplete,"
                 "sched_n,sched_mean,sched_p50,sched_p90,sched_p95,sched_p99,"
                 "exec_n,exec_mean,exec_p50,exec_p95\n")
        for label, _ in base_cells:
            cell = by_label[label]
            sched, execs = cell["sched"], cell["exec"]
            fh.write(",".join([
                label, str(cell["runs"]), str(cell["completed"]),
                str(cell["incomplete"]), str(len(sched)),
                repr(math.fsum(sched) / len(sched)) if sched else "",
                _percentile_or_blank(sched, 0.5),
                _percentile_or_blank(sched, 0.9),
                _percentile_or_blank(sched, 0.95),
                _percentile_or_blank(sched, 0.99),
                str(len(execs)),
                repr(math.fsum(execs) / len(execs)) if execs else "",
                _percentile_or_blank(execs, 0.5),
                _percentile_or_blank(execs, 0.95),
            ]) + "\n")
    print("%s: %d runs complete; outputs in %s"
          % (name, len(jobs), out_dir))
    return 0


def _cmd_calibrate(out_dir: str) -> int:
    report = experiments_calibration.run_calibration(out=out_dir)
    for r in report.results:
        print("target %s: mean=%.4f seeds=%s band=[%.2f, %.2f] anchor=%.2f %s"
              % (r.name, r.mean,
                 "/".join("%.4f" % v for v in r.per_seed),
                 r.lo, r.hi, r.anchor, "PASS" if r.ok else "FAIL"))
    print("calibration %s; report in %s"
          % ("passed" if report.ok else "FAILED",
             os.path.join(out_dir, "calibration.json")))
    return 0 if report.ok else 1


def cmd_validate(path: str) -> int:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    except json.JSONDecodeError as exc:
        print("error: %s: parse error at line %d column %d: %s"
              % (path, exc.lineno, exc.colno, exc.msg), file=sys.stderr)
        return 1
    try:
        scenario = scenario_from_dict(doc)
    except ScenarioError as exc:
        print("invalid: %s" % exc, file=sys.stderr)
        return 1
    violations = validate_scenario(scenario)
    if violations:
        for v in violations:
            print("invalid: %s" % v, file=sys.stderr)
        return 1
    print("ok")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="swarmsim",
        description="drone swarm coordination simulator")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one scenario file")
    p_run.add_argument("file")
    p_run.add_argument("--seed", type=int, default=None)
    p_run.add_argument("--out", default="out")

    p_preset = sub.add_parser("preset", help="run an experiment preset")
    p_preset.add_argument("name", choices=PRESET_NAMES)
    p_preset.add_argument("--seed", type=int, default=1)
    p_preset.add_argument("--repeats", type=int, default=3)
    p_preset.add_argument("--out", default=None)

    p_val = sub.add_parser("validate", help="check a scenario file")
    p_val.add_argument("file")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "run":
        return cmd_run(args.file, args.seed, args.out)
    if args.command == "preset":
        out_dir = args.out if args.out is not None else "out_%s" % args.name
        return cmd_preset(args.name, args.seed, args.repeats, out_dir)
    return cmd_validate(args.file)


if __name__ == "__main__":
    sys.exit(main())
