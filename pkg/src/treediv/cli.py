"""Command-line experiment harness.

Three subcommands: `run` executes one seeded run and prints it as a CSV
row, `experiment` sweeps a scenario grid with replications and writes
per-run, aggregate and strategy-comparison CSV files, and `construct`
emits the closed-form balanced populations and decompositions as edge
lists.

A scenario is a flat key-value text file, one `key = value` per line,
lists comma-separated, `#` comments allowed:

    scenario_id = table1_n50
    instance = unit              # unit | euclidean
    n = 50
    mu = 2, 10, 25
    alpha = unconstrained        # or e.g. 0.05, 0.1, 0.5, 1.0
    strategy = uniform:1, poisson
    replications = 30
    base_seed = 1

Per-run seeds are derived deterministically by mixing (base_seed,
cell_index, replication) through a seed sequence, so output is
reproducible byte for byte no matter how many worker processes run the
replications.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from pathlib import Path

import numpy as np

from .construct import balanced_population, cycle_decomposition, path_decomposition
from .diversity import population_diversity, usage_spread
from .ea import EAConfig, run
from .graphs import GraphInstance, edge_of, euclidean_instance, unit_complete
from .mutation import parse_strategy
from .stats import mann_whitney_u, summarize

__all__ = [
    "RUN_COLUMNS",
    "Scenario",
    "ScenarioError",
    "parse_scenario",
    "derive_seed",
    "run_single",
    "run_scenario",
    "main",
]

RUN_COLUMNS = [
    "scenario_id",
    "n",
    "m",
    "mu",
    "alpha",
    "strategy",
    "seed",
    "replication",
    "evaluations",
    "hit_budget",
    "d_o_abs",
    "d_o_pct",
    "maxdeg_div_pct",
    "leaf_div_pct",
    "diam_div_pct",
]

AGG_COLUMNS = [
    "scenario_id",
    "n",
    "m",
    "mu",
    "alpha",
    "strategy",
    "replications",
    "hit_budget_count",
    "evaluations_mean",
    "evaluations_std",
    "d_o_abs_mean",
    "d_o_pct_mean",
    "d_o_pct_std",
    "maxdeg_div_pct_mean",
    "maxdeg_div_pct_std",
    "leaf_div_pct_mean",
    "leaf_div_pct_std",
    "diam_div_pct_mean",
    "diam_div_pct_std",
]

CMP_COLUMNS = [
    "scenario_id",
    "n",
    "mu",
    "alpha",
    "metric",
    "strategy",
    "vs_strategy",
    "alternative",
    "u_statistic",
    "p_value",
    "significant",
]

SIGNIFICANCE_LEVEL = 0.05


class ScenarioError(ValueError):
    def __init__(self, key: str, message: str):
        super().__init__(f"scenario key '{key}': {message}")
        self.key = key


@dataclass
class Scenario:
    scenario_id: str
    instance: str  # "unit" | "euclidean"
    n: int
    mu_values: list[int]
    alpha_values: list[float]
    strategies: list[str]  # canonical labels
    replications: int = 30
    base_seed: int = 0
    instance_seed: int = 0
    budget: int | None = None  # None: mu * n^2 per cell
    stop_at_max: bool = True
    instance_per_replication: bool = False
    allow_mu_above_half: bool = False

    def cells(self) -> list[tuple[int, int, float, str]]:
        """(cell_index, mu, alpha, strategy) in deterministic grid order."""
        grid = product(self.mu_values, self.alpha_values, self.strategies)
        return [(i, mu, alpha, strat) for i, (mu, alpha, strat) in enumerate(grid)]


def _parse_bool(raw: str, key: str) -> bool:
    low = raw.strip().lower()
    if low in ("true", "yes", "1"):
        return True
    if low in ("false", "no", "0"):
        return False
    raise ScenarioError(key, f"expected a boolean, got {raw!r}")


def _parse_alpha_list(raw: str) -> list[float]:
    low = raw.strip().lower()
    if low in ("unconstrained", "inf", "infinity"):
        return [math.inf]
    values = []
    for piece in raw.split(","):
        a = float(piece)
        if a < 0:
            raise ValueError(f"alpha must be >= 0, got {a}")
        values.append(a)
    return values


def parse_scenario(path) -> Scenario:
    """Read a scenario file; raises ScenarioError naming the offending key."""
    raw: dict[str, str] = {}
    text = Path(path).read_text(encoding="utf-8")
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise ScenarioError(body.split()[0], f"line {lineno} is not 'key = value'")
        key, value = body.split("=", 1)
        key = key.strip()
        if key in raw:
            raise ScenarioError(key, "duplicate key")
        raw[key] = value.strip()

    known = {
        "scenario_id",
        "instance",
        "n",
        "instance_seed",
        "mu",
        "alpha",
        "strategy",
        "replications",
        "budget",
        "base_seed",
        "stop_at_max",
        "instance_per_replication",
        "allow_mu_above_half",
    }
    for key in raw:
        if key not in known:
            raise ScenarioError(key, "unknown key")
    for key in ("instance", "n", "mu", "strategy"):
        if key not in raw:
            raise ScenarioError(key, "missing required key")

    def parse_with(key, fn):
        try:
            return fn(raw[key])
        except ScenarioError:
            raise
        except Exception as exc:
            raise ScenarioError(key, str(exc)) from exc

    instance = raw["instance"].strip().lower()
    if instance not in ("unit", "euclidean"):
        raise ScenarioError("instance", f"expected unit or euclidean, got {raw['instance']!r}")
    n = parse_with("n", int)
    if n < 4:
        raise ScenarioError("n", f"need n >= 4, got {n}")
    mu_values = parse_with("mu", lambda v: [int(x) for x in v.split(",") if x.strip()])
    if not mu_values:
        raise ScenarioError("mu", "empty grid")
    if any(mu < 1 for mu in mu_values):
        raise ScenarioError("mu", "population sizes must be >= 1")
    strategies = parse_with(
        "strategy", lambda v: [parse_strategy(x).label for x in v.split(",") if x.strip()]
    )
    if not strategies:
        raise ScenarioError("strategy", "empty grid")
    alpha_values = parse_with("alpha", _parse_alpha_list) if "alpha" in raw else [math.inf]
    if not alpha_values:
        raise ScenarioError("alpha", "empty grid")

    scenario = Scenario(
        scenario_id=raw.get("scenario_id", Path(path).stem),
        instance=instance,
        n=n,
        mu_values=mu_values,
        alpha_values=alpha_values,
        strategies=strategies,
        replications=parse_with("replications", int) if "replications" in raw else 30,
        base_seed=parse_with("base_seed", int) if "base_seed" in raw else 0,
        instance_seed=parse_with("instance_seed", int) if "instance_seed" in raw else 0,
        budget=parse_with("budget", int) if "budget" in raw else None,
        stop_at_max=(
            parse_with("stop_at_max", lambda v: _parse_bool(v, "stop_at_max"))
            if "stop_at_max" in raw
            else True
        ),
        instance_per_replication=(
            parse_with(
                "instance_per_replication",
                lambda v: _parse_bool(v, "instance_per_replication"),
            )
            if "instance_per_replication" in raw
            else False
        ),
        allow_mu_above_half=(
            parse_with("allow_mu_above_half", lambda v: _parse_bool(v, "allow_mu_above_half"))
            if "allow_mu_above_half" in raw
            else False
        ),
    )
    if scenario.replications < 1:
        raise ScenarioError("replications", "must be >= 1")
    if not scenario.allow_mu_above_half:
        for mu in scenario.mu_values:
            if mu > scenario.n // 2:
                raise ScenarioError(
                    "mu",
                    f"mu={mu} exceeds floor(n/2)={scenario.n // 2}; "
                    "set allow_mu_above_half = true to override",
                )
    return scenario


def derive_seed(base_seed: int, cell_index: int, replication: int) -> int:
    """Deterministic per-run seed mixed from the scenario base seed, the
    grid cell and the replication index; collision-free in practice and
    directly reusable with `run --seed`."""
    ss = np.random.SeedSequence((base_seed, cell_index, replication))
    return int(ss.generate_state(1, np.uint32)[0])


_INSTANCE_CACHE: dict[tuple, GraphInstance] = {}


def _instance_for(kind: str, n: int, instance_seed: int) -> GraphInstance:
    key = (kind, n, instance_seed)
    if key not in _INSTANCE_CACHE:
        _INSTANCE_CACHE[key] = (
            unit_complete(n) if kind == "unit" else euclidean_instance(n, instance_seed)
        )
    return _INSTANCE_CACHE[key]


def run_single(
    scenario_id: str,
    kind: str,
    n: int,
    instance_seed: int,
    mu: int,
    alpha: float,
    strategy_label: str,
    budget: int | None,
    stop_at_max: bool,
    seed: int,
    replication: int = 0,
) -> dict:
    """Execute one run and flatten it into a CSV row dict."""
    graph = _instance_for(kind, n, instance_seed)
    cfg = EAConfig(
        mu=mu,
        alpha=alpha,
        strategy=parse_strategy(strategy_label),
        budget=budget,
        seed=seed,
        stop_at_max=stop_at_max,
    )
    rec = run(graph, cfg)
    return {
        "scenario_id": scenario_id,
        "n": n,
        "m": graph.m,
        "mu": mu,
        "alpha": alpha,
        "strategy": strategy_label,
        "seed": seed,
        "replication": replication,
        "evaluations": rec.evaluations,
        "hit_budget": int(rec.hit_budget),
        "d_o_abs": rec.d_o_abs,
        "d_o_pct": rec.d_o_pct,
        "maxdeg_div_pct": rec.feature_div["max_degree"],
        "leaf_div_pct": rec.feature_div["leaf_count"],
        "diam_div_pct": rec.feature_div["diameter"],
    }


def _run_task(task: dict) -> dict:
    return run_single(**task)


def run_scenario(scenario: Scenario, jobs: int = 1) -> tuple[list[dict], list[dict], list[dict]]:
    """All replications of every grid cell, plus aggregate and pairwise
    strategy-comparison tables. Row order is (cell, replication) regardless
    of how many worker processes execute the runs."""
    tasks = []
    for cell_index, mu, alpha, strat in scenario.cells():
        for rep in range(scenario.replications):
            iseed = scenario.instance_seed
            if scenario.instance_per_replication:
                iseed += rep
            tasks.append(
                {
                    "scenario_id": scenario.scenario_id,
                    "kind": scenario.instance,
                    "n": scenario.n,
                    "instance_seed": iseed,
                    "mu": mu,
                    "alpha": alpha,
                    "strategy_label": strat,
                    "budget": scenario.budget,
                    "stop_at_max": scenario.stop_at_max,
                    "seed": derive_seed(scenario.base_seed, cell_index, rep),
                    "replication": rep,
                }
            )
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_run_task, tasks, chunksize=4))
    else:
        rows = [_run_task(t) for t in tasks]

    agg_rows = _aggregate(scenario, rows)
    cmp_rows = _comparisons(scenario, rows)
    return rows, agg_rows, cmp_rows


def _cell_rows(rows: list[dict], mu: int, alpha: float, strat: str) -> list[dict]:
    return [r for r in rows if r["mu"] == mu and r["alpha"] == alpha and r["strategy"] == strat]


def _aggregate(scenario: Scenario, rows: list[dict]) -> list[dict]:
    out = []
    for _, mu, alpha, strat in scenario.cells():
        cell = _cell_rows(rows, mu, alpha, strat)
        evals = summarize(r["evaluations"] for r in cell)
        pct = summarize(r["d_o_pct"] for r in cell)
        out.append(
            {
                "scenario_id": scenario.scenario_id,
                "n": scenario.n,
                "m": scenario.n * (scenario.n - 1) // 2,
                "mu": mu,
                "alpha": alpha,
                "strategy": strat,
                "replications": len(cell),
                "hit_budget_count": sum(r["hit_budget"] for r in cell),
                "evaluations_mean": evals.mean,
                "evaluations_std": evals.std,
                "d_o_abs_mean": summarize(r["d_o_abs"] for r in cell).mean,
                "d_o_pct_mean": pct.mean,
                "d_o_pct_std": pct.std,
                **{
                    f"{col}_{stat}": getattr(summarize(r[col] for r in cell), stat)
                    for col in ("maxdeg_div_pct", "leaf_div_pct", "diam_div_pct")
                    for stat in ("mean", "std")
                },
            }
        )
    return out


def _comparisons(scenario: Scenario, rows: list[dict]) -> list[dict]:
    """One row per ordered strategy pair per cell and metric; "significant"
    means the first strategy is better (fewer evaluations, or higher
    diversity) at the 5 percent level."""
    out = []
    if len(scenario.strategies) < 2:
        return out
    for mu in scenario.mu_values:
        for alpha in scenario.alpha_values:
            per_strategy = {
                s: _cell_rows(rows, mu, alpha, s) for s in scenario.strategies
            }
            for metric, alternative in (("evaluations", "less"), ("d_o_pct", "greater")):
                for a in scenario.strategies:
                    for b in scenario.strategies:
                        if a == b:
                            continue
                        xs = [r[metric] for r in per_strategy[a]]
                        ys = [r[metric] for r in per_strategy[b]]
                        u, p = mann_whitney_u(xs, ys, alternative=alternative)
                        out.append(
                            {
                                "scenario_id": scenario.scenario_id,
                                "n": scenario.n,
                                "mu": mu,
                                "alpha": alpha,
                                "metric": metric,
                                "strategy": a,
                                "vs_strategy": b,
                                "alternative": alternative,
                                "u_statistic": u,
                                "p_value": p,
                                "significant": int(p < SIGNIFICANCE_LEVEL),
                            }
                        )
    return out


def _format_value(value) -> str:
    if isinstance(value, float):
        if math.isinf(value):
            return "inf"
        return repr(value)
    return str(value)


def write_csv(path, columns: list[str], rows: list[dict]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_format_value(row[c]) for c in columns])


# ---------------------------------------------------------------------------
# subcommands


def _cmd_run(args) -> int:
    row = run_single(
        scenario_id="adhoc",
        kind=args.kind,
        n=args.n,
        instance_seed=args.instance_seed,
        mu=args.mu,
        alpha=args.alpha,
        strategy_label=parse_strategy(args.strategy).label,
        budget=args.budget,
        stop_at_max=not args.no_stop_at_max,
        seed=args.seed,
    )
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(RUN_COLUMNS)
    writer.writerow([_format_value(row[c]) for c in RUN_COLUMNS])
    return 0


def _cmd_experiment(args) -> int:
    try:
        scenario = parse_scenario(args.scenario)
    except (OSError, ScenarioError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    rows, agg_rows, cmp_rows = run_scenario(scenario, jobs=args.jobs)
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    base = outdir / scenario.scenario_id
    write_csv(f"{base}_runs.csv", RUN_COLUMNS, rows)
    write_csv(f"{base}_aggregate.csv", AGG_COLUMNS, agg_rows)
    write_csv(f"{base}_comparisons.csv", CMP_COLUMNS, cmp_rows)
    print(f"wrote {base}_runs.csv ({len(rows)} runs)")
    print(f"wrote {base}_aggregate.csv ({len(agg_rows)} cells)")
    print(f"wrote {base}_comparisons.csv ({len(cmp_rows)} comparisons)")
    for row in agg_rows:
        print(
            f"  mu={row['mu']} alpha={_format_value(row['alpha'])} {row['strategy']}: "
            f"evals {row['evaluations_mean']:.2f} +- {row['evaluations_std']:.1f}, "
            f"d_o {row['d_o_pct_mean']:.2f}%"
        )
    return 0


def _cmd_construct(args) -> int:
    lines: list[str] = []
    if args.mu is not None:
        pop = balanced_population(args.n, args.mu)
        for tid, tree in enumerate(pop.trees):
            for u, v in tree.edge_pairs():
                lines.append(f"{tid} {u} {v}")
        if args.verify:
            lo, hi = usage_spread(pop)
            if hi - lo > 1:
                print(f"spread=({lo},{hi}) FAIL", file=sys.stderr)
                return 1
            lines.append(f"spread=({lo},{hi}) OK")
            if args.mu <= args.n // 2:
                d = population_diversity(pop)
                dmax = pop.max_diversity()
                if d != dmax:
                    print(f"D_o={d} != max={dmax} FAIL", file=sys.stderr)
                    return 1
                lines.append(f"edge-disjoint, D_o={d}=max OK")
    else:
        decomp = path_decomposition(args.n) if args.n % 2 == 0 else cycle_decomposition(args.n)
        for pid, part in enumerate(decomp.parts):
            for e in part:
                u, v = edge_of(e, args.n)
                lines.append(f"{pid} {u} {v}")
        if args.verify:
            seen: set[int] = set()
            for part in decomp.parts:
                if seen & set(part):
                    print("parts not edge-disjoint FAIL", file=sys.stderr)
                    return 1
                seen |= set(part)
            if len(seen) != args.n * (args.n - 1) // 2:
                print("parts do not cover the graph FAIL", file=sys.stderr)
                return 1
            lines.append(f"decomposition OK ({len(decomp.parts)} {decomp.kind})")
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def _alpha_flag(raw: str) -> float:
    values = _parse_alpha_list(raw)
    if len(values) != 1:
        raise argparse.ArgumentTypeError("expected a single alpha value")
    return values[0]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="treediv",
        description="Evolve and analyse diverse populations of spanning trees.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="one seeded run, printed as a CSV row")
    p_run.add_argument("--n", type=int, required=True, help="node count (>= 4)")
    p_run.add_argument("--mu", type=int, required=True, help="population size (>= 1)")
    p_run.add_argument("--kind", choices=("unit", "euclidean"), default="unit")
    p_run.add_argument("--instance-seed", type=int, default=0)
    p_run.add_argument("--alpha", type=_alpha_flag, default=math.inf,
                       help="quality slack; 'unconstrained' or a float >= 0")
    p_run.add_argument("--strategy", default="uniform:1",
                       help="uniform:L or poisson[:LAMBDA]")
    p_run.add_argument("--budget", type=int, default=None, help="default mu*n^2")
    p_run.add_argument("--seed", type=int, default=0)
    p_run.add_argument("--no-stop-at-max", action="store_true",
                       help="always spend the full budget")
    p_run.set_defaults(func=_cmd_run)

    p_exp = sub.add_parser("experiment", help="replicated grid sweep from a scenario file")
    p_exp.add_argument("scenario", help="scenario file path")
    p_exp.add_argument("--outdir", default=".", help="directory for the CSV outputs")
    p_exp.add_argument("--jobs", type=int, default=1, help="worker processes")
    p_exp.set_defaults(func=_cmd_experiment)

    p_con = sub.add_parser("construct", help="emit balanced populations / decompositions")
    p_con.add_argument("--n", type=int, required=True)
    p_con.add_argument("--mu", type=int, default=None,
                       help="emit a balanced mu-tree population instead of a decomposition")
    p_con.add_argument("--verify", action="store_true",
                       help="re-check the construction invariants")
    p_con.add_argument("--out", default=None, help="write to a file instead of stdout")
    p_con.set_defaults(func=_cmd_construct)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "run":
        if args.n < 4:
            parser.error(f"--n must be >= 4, got {args.n}")
        if args.mu < 1:
            parser.error(f"--mu must be >= 1, got {args.mu}")
        if args.budget is not None and args.budget < 1:
            parser.error(f"--budget must be >= 1, got {args.budget}")
        try:
            parse_strategy(args.strategy)
        except ValueError as exc:
            parser.error(str(exc))
    if args.command == "construct":
        if args.n < 4:
            parser.error(f"--n must be >= 4, got {args.n}")
        if args.n % 2 and args.n < 5 and args.mu is None:
            parser.error(f"odd n must be >= 5 for a cycle decomposition, got {args.n}")
        if args.mu is not None and args.mu < 1:
            parser.error(f"--mu must be >= 1, got {args.mu}")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
