"""Command-line front end.

Subcommands: ``axioms``, ``evaluate``, ``proof-check``, ``mc``, ``fuzz``, ``sweep``.

Exit codes: 0 every check passed, 1 a mathematical check failed (the report
carries the witness), 2 invalid config or violated hypothesis, 3 enumeration
budget exceeded.  The worker count for ``fuzz`` and ``sweep`` comes from the
``HJSEMIGROUP_WORKERS`` environment variable.
"""

from __future__ import annotations

import argparse
import copy
import csv
import io
import itertools
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import serialize as ser
from .bounds import BoundParams, TailVariant, evaluate_hj, hm_bound, lt_bound
from .distributions import DEFAULT_BUDGET
from .errors import BudgetExceeded, ConfigError, HJError, InstanceMismatch
from .fuzzing import FuzzLimits, fuzz_case, run_case
from .montecarlo import VIOLATES, mc_estimate
from .proof import verify_decomposition, verify_ebounds
from .semigroup import check_axioms, make_semigroup

EXIT_OK, EXIT_FAIL, EXIT_INVALID, EXIT_BUDGET = 0, 1, 2, 3
WORKERS_ENV = "HJSEMIGROUP_WORKERS"
CSV_COLUMNS = ["scenario-id", "k", "n_vec", "t_vec", "s", "variant", "lhs", "rhs", "slack", "holds"]


def _workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def _pmap(fn, items):
    items = list(items)
    workers = _workers()
    if workers == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(workers) as pool:
        return list(pool.map(fn, items))


def _variants(cfg: dict) -> list[TailVariant]:
    v = cfg.get("variant", "both")
    if v == "both":
        return [TailVariant.MAX_INCREMENT, TailVariant.ORDER_STATISTIC]
    return [TailVariant.parse(v)]


def _checks_status(checks: list[dict]) -> str:
    return "pass" if all(c["passed"] for c in checks) else "fail"


def _normalized(cfg: dict, sc=None) -> dict:
    out = {k: v for k, v in cfg.items() if k not in ("out", "format")}
    if sc is not None:
        out.update(ser.scenario_to_config(sc))
        out.pop("n", None)
    return out


def _require_params(cfg: dict) -> dict:
    if "params" not in cfg:
        raise ConfigError("config needs 'params' (n_vec, t_vec, s)")
    return cfg["params"]


def _single_params(cfg: dict) -> BoundParams:
    raw = _require_params(cfg)
    if any(isinstance(t, list) for t in raw["t_vec"]) or isinstance(raw["s"], list):
        raise ConfigError("grids of thresholds are only allowed in sweep mode")
    return ser.params_from_config(raw)


# ---------------------------------------------------------------------------
# modes


def run_axioms(cfg: dict) -> dict:
    if "semigroup" not in cfg:
        raise ConfigError("axioms mode needs 'semigroup'")
    try:
        sg = make_semigroup(cfg["semigroup"])
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    rep = check_axioms(sg, cfg.get("trials", 1000), cfg.get("seed", 0))
    body = ser.axioms_to_dict(rep)
    checks = [{"name": name, "passed": a["passed"]} for name, a in body["axioms"].items()]
    return {"mode": "axioms", "config": _normalized(cfg), "report": body, "checks": checks, "status": _checks_status(checks)}


def run_evaluate(cfg: dict) -> dict:
    sc = ser.scenario_from_config(cfg)
    p = _single_params(cfg)
    budget = cfg.get("budget", DEFAULT_BUDGET)
    evals = [evaluate_hj(sc, p, v, budget) for v in _variants(cfg)]
    checks = [{"name": f"bound_holds[{r.tail_variant.value}]", "passed": r.holds} for r in evals]
    return {
        "mode": "evaluate",
        "config": _normalized(cfg, sc),
        "evaluations": [ser.evaluation_to_dict(r) for r in evals],
        "checks": checks,
        "status": _checks_status(checks),
    }


def run_proof_check(cfg: dict) -> dict:
    sc = ser.scenario_from_config(cfg)
    p = _single_params(cfg)
    budget = cfg.get("budget", DEFAULT_BUDGET)
    dec = verify_decomposition(sc, p, budget)
    checks = [ser.check_to_dict(c) for c in dec.checks]
    for t in sorted(set(p.t_vec)):
        for gamma in range(1, sc.n + 1):
            for alpha in range(gamma):
                checks.extend(ser.check_to_dict(c) for c in verify_ebounds(sc, alpha, gamma, t, budget))
    return {
        "mode": "proof-check",
        "config": _normalized(cfg, sc),
        "decomposition": ser.decomposition_to_dict(dec),
        "checks": checks,
        "status": _checks_status(checks),
    }


def run_mc(cfg: dict) -> dict:
    sc = ser.scenario_from_config(cfg)
    p = _single_params(cfg)
    variant = cfg.get("variant", "max")
    if variant == "both":
        variant = "max"
    rep = mc_estimate(sc, p, cfg.get("samples", 10_000), cfg.get("seed", 0), cfg.get("level", 0.99), variant)
    checks = [{"name": f"no_violation[{k}]", "passed": v != VIOLATES} for k, v in rep.verdicts.items()]
    return {
        "mode": "mc",
        "config": _normalized(cfg, sc),
        "report": ser.mc_to_dict(rep),
        "checks": checks,
        "status": _checks_status(checks),
    }


def _fuzz_one(args):
    seed, index, limits = args
    r = run_case(seed, index, limits, proof=True)
    return r


def run_fuzz(cfg: dict) -> dict:
    fz = cfg.get("fuzz", {})
    count = fz.get("count", 100)
    if count < 1:
        raise ConfigError(f"fuzz count must be >= 1, got {count}")
    seed = cfg.get("seed", 0)
    limits = FuzzLimits(
        max_n=fz.get("max_n", 6), max_support=fz.get("max_support", 3), max_k=fz.get("max_k", 3)
    )
    results = _pmap(_fuzz_one, [(seed, i, limits) for i in range(count)])
    failures = []
    for r in results:
        kinds = []
        if not r.holds_max:
            kinds.append("bound[max-increment]")
        if not r.holds_order:
            kinds.append("bound[order-statistic]")
        if not r.order_le_max:
            kinds.append("tail_domination")
        kinds += [f"proof:{name}" for name in r.proof_failures]
        if kinds:
            sc, p = fuzz_case(seed, r.index, limits)
            failures.append(
                {
                    "index": r.index,
                    "failed": kinds,
                    "anchor_gap_exceeds_t1": r.anchor_gap,
                    "scenario": ser.scenario_to_config(sc),
                    "params": ser.params_to_config(p),
                }
            )
    summary = {
        "cases": count,
        "holds": {
            TailVariant.MAX_INCREMENT.value: sum(r.holds_max for r in results),
            TailVariant.ORDER_STATISTIC.value: sum(r.holds_order for r in results),
        },
        "min_slack": {
            TailVariant.MAX_INCREMENT.value: ser.frac_str(min(r.slack_max for r in results)),
            TailVariant.ORDER_STATISTIC.value: ser.frac_str(min(r.slack_order for r in results)),
        },
        "tail_domination": sum(r.order_le_max for r in results),
        "proof_replay_passes": sum(not r.proof_failures for r in results),
        "anchor_gap_cases": sum(r.anchor_gap for r in results),
    }
    checks = [
        {"name": "bound_holds_all", "passed": all(r.holds_max and r.holds_order for r in results)},
        {"name": "tail_domination_all", "passed": all(r.order_le_max for r in results)},
        {"name": "proof_replay_all", "passed": all(not r.proof_failures for r in results)},
    ]
    return {
        "mode": "fuzz",
        "config": {"mode": "fuzz", "seed": seed, "fuzz": {"count": count, "max_n": limits.max_n, "max_support": limits.max_support, "max_k": limits.max_k}},
        "summary": summary,
        "failures": failures,
        "checks": checks,
        "status": _checks_status(checks),
    }


def _grid(raw: dict) -> list[BoundParams]:
    axes = [t if isinstance(t, list) else [t] for t in raw["t_vec"]]
    s_axis = raw["s"] if isinstance(raw["s"], list) else [raw["s"]]
    out = []
    for combo in itertools.product(*axes, s_axis):
        out.append(ser.params_from_config({"n_vec": raw["n_vec"], "t_vec": list(combo[:-1]), "s": combo[-1]}))
    return out


def _sweep_point(args):
    cfg, index, p = args
    sc = ser.scenario_from_config(cfg)
    budget = cfg.get("budget", DEFAULT_BUDGET)
    sid = f"grid-{index:04d}"
    base = {
        "scenario-id": sid,
        "k": p.k,
        "n_vec": ";".join(map(str, p.n_vec)),
        "t_vec": ";".join(ser.frac_str(t) for t in p.t_vec),
        "s": ser.frac_str(p.s),
    }
    rows = []
    for v in (TailVariant.MAX_INCREMENT, TailVariant.ORDER_STATISTIC):
        r = evaluate_hj(sc, p, v, budget)
        rows.append({**base, "variant": v.value, "lhs": ser.frac_str(r.lhs), "rhs": ser.frac_str(r.rhs), "slack": ser.frac_str(r.slack), "holds": r.holds})
    t = p.t_vec[0]
    lt = lt_bound(sc, t, p.s, budget)
    rows.append({**base, "variant": "LT", "lhs": ser.frac_str(lt.lhs), "rhs": ser.frac_str(lt.rhs), "slack": ser.frac_str(lt.rhs - lt.lhs), "holds": lt.holds})
    hm = hm_bound(sc, p.K, t, p.s, budget)
    rhs = "inf" if hm.rhs is None else ser.frac_str(hm.rhs)
    slack = "inf" if hm.rhs is None else ser.frac_str(hm.rhs - hm.lhs)
    rows.append({**base, "variant": "HM", "lhs": ser.frac_str(hm.lhs), "rhs": rhs, "slack": slack, "holds": hm.holds})
    return rows


def run_sweep(cfg: dict) -> dict:
    raw = _require_params(cfg)
    sc = ser.scenario_from_config(cfg)
    points = _grid(raw)
    for p in points:
        p.check(sc.n)
    norm = _normalized(cfg, sc)
    batches = _pmap(_sweep_point, [(norm, i, p) for i, p in enumerate(points)])
    rows = [row for batch in batches for row in batch]
    checks = [{"name": "all_rows_hold", "passed": all(r["holds"] for r in rows)}]
    return {"mode": "sweep", "config": norm, "rows": rows, "checks": checks, "status": _checks_status(checks)}


MODES = {
    "axioms": run_axioms,
    "evaluate": run_evaluate,
    "proof-check": run_proof_check,
    "mc": run_mc,
    "fuzz": run_fuzz,
    "sweep": run_sweep,
}


def run(config: dict) -> tuple[int, dict]:
    """Validate and execute one configuration; returns ``(exit code, report)``.

    Errors are mapped to exit codes 2 and 3 rather than raised; the report then
    holds an ``error`` entry.
    """
    cfg = copy.deepcopy(config)
    try:
        ser.validate_config(cfg)
        if "mode" not in cfg:
            raise ConfigError("config needs 'mode'")
        report = MODES[cfg["mode"]](cfg)
    except BudgetExceeded as exc:
        return EXIT_BUDGET, {"mode": cfg.get("mode"), "error": f"budget exceeded: {exc}", "status": "error"}
    except (HJError, InstanceMismatch, ValueError) as exc:
        return EXIT_INVALID, {"mode": cfg.get("mode"), "error": f"{type(exc).__name__}: {exc}", "status": "error"}
    return (EXIT_OK if report["status"] == "pass" else EXIT_FAIL), report


def to_csv(report: dict) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in report.get("rows", []):
        writer.writerow({k: row[k] for k in CSV_COLUMNS})
    return buf.getvalue()


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hjsemigroup", description="Check tail bounds for partial-product walks in metric semigroups.")
    sub = parser.add_subparsers(dest="mode", required=True)
    for name in MODES:
        sp = sub.add_parser(name)
        sp.add_argument("--config", type=Path, help="JSON configuration file")
        sp.add_argument("--variant", choices=["max", "order", "both"])
        sp.add_argument("--seed", type=int)
        sp.add_argument("--samples", type=int)
        sp.add_argument("--budget", type=int)
        sp.add_argument("--out", type=Path)
        sp.add_argument("--format", choices=["json", "csv"])
        if name == "axioms":
            sp.add_argument("--family", help='semigroup descriptor, e.g. "SymCayley(4)"')
            sp.add_argument("--trials", type=int)
        if name == "mc":
            sp.add_argument("--level", type=float)
        if name == "fuzz":
            sp.add_argument("--count", type=int)
            sp.add_argument("--max-n", type=int)
            sp.add_argument("--max-support", type=int)
            sp.add_argument("--max-k", type=int)
    return parser


def _merge_args(cfg: dict, args: argparse.Namespace) -> dict:
    cfg["mode"] = args.mode
    for key in ("variant", "seed", "samples", "budget", "format"):
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    if args.out is not None:
        cfg["out"] = str(args.out)
    if getattr(args, "family", None):
        cfg["semigroup"] = args.family
    if getattr(args, "trials", None) is not None:
        cfg["trials"] = args.trials
    if getattr(args, "level", None) is not None:
        cfg["level"] = args.level
    if args.mode == "fuzz":
        fz = cfg.setdefault("fuzz", {})
        for key in ("count", "max_n", "max_support", "max_k"):
            val = getattr(args, key, None)
            if val is not None:
                fz[key] = val
    return cfg


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    cfg: dict = {}
    if args.config is not None:
        try:
            cfg = json.loads(args.config.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            print(f"error: cannot read config {args.config}: {exc}", file=sys.stderr)
            return EXIT_INVALID
        if not isinstance(cfg, dict):
            print("error: config must be a JSON object", file=sys.stderr)
            return EXIT_INVALID
    cfg = _merge_args(cfg, args)
    code, report = run(cfg)
    if "error" in report:
        print(f"error: {report['error']}", file=sys.stderr)
    elif code == EXIT_FAIL:
        failed = [c["name"] for c in report.get("checks", []) if not c["passed"]]
        print(f"check failed: {', '.join(failed)}", file=sys.stderr)
    text = to_csv(report) if cfg.get("format") == "csv" and "rows" in report else ser.dumps(report)
    if cfg.get("out"):
        Path(cfg["out"]).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
