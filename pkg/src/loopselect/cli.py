"""Command-line front end: generate, plan, sweep, certify.

Exit codes: 0 success, 1 usage error, 2 data error, 3 exact-computation
guard exceeded. All CSV outputs start with a metadata comment block (seed,
instance size, maximum degree) followed by a header row, so every artifact
is reproducible from its own header.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from . import certify as cert
from . import io as gio
from .errors import InstanceTooLargeError, ParseError
from .generate import GenSpec, generate_exchange_graph, generate_pose_graph, sample_ground_truth
from .graph import IndividualUniform, Plan, TotalNonuniform, TotalUniform
from .objectives import DCritObjective, ModularObjective, TreeConnObjective
from .planners import (
    PlannerConfig,
    e_greedy,
    m_greedy,
    random_baseline,
    s_greedy,
    v_greedy,
)

__all__ = ["main", "SweepSpec", "sweep_rows"]

PLANNERS = ("mgreedy", "egreedy", "vgreedy", "sgreedy", "random")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags; the exit-code contract wants 1
    def error(self, message):
        raise _UsageError(message)


def _parse_grid(spec):
    """Grid syntax: a single value, 'a,b,c', or 'start:step:end' (inclusive)."""
    try:
        if ":" in spec:
            start, step, end = (float(t) for t in spec.split(":"))
            if step <= 0:
                raise ValueError
            out = []
            x = start
            while x <= end + 1e-9:
                out.append(x)
                x += step
            return [int(v) if float(v).is_integer() else v for v in out]
        return [
            int(t) if float(t).is_integer() else float(t)
            for t in spec.split(",")
            if t != ""
        ]
    except ValueError:
        raise _UsageError(f"bad grid spec {spec!r}") from None


def _budget(regime, b, graph):
    if regime == "tu":
        return TotalUniform(int(b))
    if regime == "tn":
        return TotalNonuniform(float(b))
    if regime == "iu":
        limits = [int(t) for t in str(b).split("/")]
        return IndividualUniform.by_robot(graph, limits)
    raise _UsageError(f"unknown regime {regime!r}")


def _objective(name, graph, pose_graph):
    if name == "modular":
        return ModularObjective(graph)
    if pose_graph is None:
        raise _UsageError(f"objective {name!r} needs --pose-input")
    if name == "dcrit":
        return DCritObjective(graph, pose_graph)
    if name == "treeconn":
        return TreeConnObjective(graph, pose_graph)
    raise _UsageError(f"unknown objective {name!r}")


def _run_planner(name, graph, config, objective):
    if name == "mgreedy":
        return m_greedy(graph, config.k, config.cb, objective, lazy=config.lazy)
    if name == "egreedy":
        return e_greedy(graph, config.k, config.cb, objective, lazy=config.lazy)
    if name == "vgreedy":
        return v_greedy(graph, config.k, config.cb, objective, lazy=config.lazy)
    if name == "sgreedy":
        return s_greedy(graph, config.k, config.cb, objective, lazy=config.lazy)
    if name == "random":
        return (
            random_baseline(graph, config.k, config.cb, objective, config.seed),
            None,
        )
    raise _UsageError(f"unknown planner {name!r}")


def _check_planner_regime(planner, regime, objective_name):
    if planner == "mgreedy" and objective_name != "modular":
        raise _UsageError("mgreedy requires the modular objective")
    if planner in ("egreedy", "vgreedy", "sgreedy", "random") and regime != "tu":
        raise _UsageError(f"{planner} requires the tu regime")


def _meta_block(graph, seed):
    return [
        f"# seed={seed}",
        f"# robots={graph.num_robots} n={graph.num_vertices} m={graph.num_edges}",
        f"# delta={graph.max_degree()}",
    ]


def _infinite_budget_value(graph, objective):
    return objective.value([e.id for e in graph.edges])


# -- subcommands ----------------------------------------------------------------


def _cmd_generate(args):
    spec = GenSpec(
        num_robots=args.robots,
        vertices_per_robot=args.verts,
        edge_density=args.density,
        num_edges=args.edges,
        seed=args.seed,
        max_degree=args.cap_degree,
    )
    graph = generate_exchange_graph(spec)
    gio.save_exchange_graph(graph, args.output)
    if args.pose_output:
        gio.save_pose_graph(generate_pose_graph(spec, graph), args.pose_output)
    if args.truth_output:
        gt = sample_ground_truth(graph, args.seed)
        with open(args.truth_output, "w", encoding="utf-8") as fh:
            fh.write(gio.serialize_ground_truth(gt))
    print(
        f"generated n={graph.num_vertices} m={graph.num_edges} "
        f"delta={graph.max_degree()} -> {args.output}"
    )
    return 0


def _load_inputs(args):
    graph = gio.load_exchange_graph(args.input)
    if args.cap_degree is not None:
        graph = graph.cap_degree(args.cap_degree)
    pose_graph = gio.load_pose_graph(args.pose_input) if args.pose_input else None
    return graph, pose_graph


def _cmd_plan(args):
    graph, pose_graph = _load_inputs(args)
    _check_planner_regime(args.planner, args.regime, args.objective)
    objective = _objective(args.objective, graph, pose_graph)
    config = PlannerConfig(
        k=args.k,
        cb=_budget(args.regime, args.b, graph),
        lazy=args.lazy,
        seed=args.seed,
    )
    plan, _trace = _run_planner(args.planner, graph, config, objective)
    delta = graph.max_degree()
    b_int = int(args.b) if args.regime == "tu" else None
    alpha = (
        cert.alpha_apriori(b_int, args.k, delta)
        if args.regime == "tu" and b_int and args.k >= 1 and delta >= 1
        else ""
    )
    if args.output:
        payload = {
            "format": "loopselect-plan",
            "planner": args.planner,
            "objective": args.objective,
            "regime": args.regime,
            "b": args.b,
            "k": args.k,
            "vertices": list(plan.vertices),
            "edges": list(plan.edges),
            "achieved_value": plan.achieved_value,
        }
        with open(args.output, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=1)
            fh.write("\n")
    print(
        f"planner={args.planner} value={plan.achieved_value!r} "
        f"|V|={len(plan.vertices)} |E|={len(plan.edges)} delta={delta} "
        f"alpha_apriori={alpha!r}"
    )
    return 0


def _load_plan(path, graph):
    with open(path, "r", encoding="utf-8") as fh:
        payload = json.load(fh)
    if payload.get("format") != "loopselect-plan":
        raise ParseError(1, "not a loopselect plan file")
    plan = Plan(
        vertices=tuple(payload["vertices"]),
        edges=tuple(payload["edges"]),
        achieved_value=float(payload["achieved_value"]),
    )
    return plan, payload


def _cmd_certify(args):
    graph, pose_graph = _load_inputs(args)
    plan, payload = _load_plan(args.plan, graph)
    objective = _objective(payload["objective"], graph, pose_graph)
    k = int(payload["k"])
    cb = _budget(payload["regime"], payload["b"], graph)
    if not graph.check_plan(plan, k, cb):
        raise ParseError(1, "plan file fails feasibility against this graph")
    achieved = objective.value(plan.edges)
    delta = graph.max_degree()
    b_for_alpha = int(payload["b"]) if payload["regime"] == "tu" else None

    opt = upt = None
    if args.level == "brute":
        opt, _ = cert.brute_force_opt(graph, k, cb, objective)
    if payload["regime"] == "tu" and payload["objective"] == "modular":
        upt = cert.lp_upper_bound_modular(graph, k, int(payload["b"]))
    elif args.level == "lp":
        print(
            "warning: LP certification needs modular objective under tu; skipped",
            file=sys.stderr,
        )
    alpha = (
        cert.alpha_apriori(b_for_alpha, k, delta)
        if b_for_alpha and b_for_alpha >= 1 and k >= 1 and delta >= 1
        else 0.0
    )
    c = cert.Certificate(
        achieved=achieved, opt=opt, upt=upt, alpha_apriori=alpha
    )
    print(cert.CSV_HEADER)
    print(c.csv_row(args.input, payload["b"], k, delta))
    if c.ratio_lb is not None:
        print(f"ratio_lb={c.ratio_lb!r}", file=sys.stderr)
    return 0


@dataclass(frozen=True)
class SweepSpec:
    """One experiment grid: budgets x planners on a fixed instance.

    ``certify`` is "none", "lp", or "brute"; guard violations during brute
    certification downgrade that cell with a warning instead of aborting the
    sweep. Cells are evaluated in deterministic (b, k, planner) order.
    """

    bs: tuple = ()
    ks: tuple = ()
    objective: str = "modular"
    regime: str = "tu"
    planners: tuple = ("sgreedy",)
    certify: str = "none"
    lazy: bool = False
    seed: int = 0

    def __post_init__(self):
        if not self.bs or not self.ks:
            raise ValueError("empty budget grid")
        if self.certify not in ("none", "lp", "brute"):
            raise ValueError(f"unknown certification level {self.certify!r}")


def sweep_rows(graph, pose_graph, spec: SweepSpec) -> list[str]:
    """CSV lines (metadata comments, header, one row per grid cell)."""
    for p in spec.planners:
        _check_planner_regime(p, spec.regime, spec.objective)
    objective = _objective(spec.objective, graph, pose_graph)
    norm = _infinite_budget_value(graph, objective)
    delta = graph.max_degree()

    rows = _meta_block(graph, spec.seed)
    rows.append(
        "b,k,planner,achieved,normalized,opt,upt,gap_pct,"
        "alpha_apriori,alpha_e_post,alpha_v_post,ratio_lb"
    )
    for b in spec.bs:
        for k in spec.ks:
            cb = _budget(spec.regime, b, graph)
            opt = upt = None
            level = spec.certify
            if level == "brute":
                try:
                    opt, _ = cert.brute_force_opt(graph, int(k), cb, objective)
                except InstanceTooLargeError:
                    print(
                        f"warning: brute guard exceeded at b={b} k={k}; "
                        "downgrading certification",
                        file=sys.stderr,
                    )
                    level = "lp"
            if level in ("lp", "brute") and spec.regime == "tu" and spec.objective == "modular":
                upt = cert.lp_upper_bound_modular(graph, int(k), int(b))
            alpha_ok = (
                spec.regime == "tu" and int(k) >= 1 and delta >= 1 and int(b) >= 1
            )
            for planner in spec.planners:
                config = PlannerConfig(
                    k=int(k), cb=cb, lazy=spec.lazy, seed=spec.seed
                )
                plan, trace = _run_planner(planner, graph, config, objective)
                alpha = cert.alpha_apriori(int(b), int(k), delta) if alpha_ok else 0.0
                a_e = a_v = ""
                if (
                    trace is not None
                    and planner in ("egreedy", "vgreedy", "sgreedy")
                    and alpha_ok
                ):
                    a_e, a_v = cert.alpha_posteriori(trace, int(b), int(k), delta)
                ref = opt if opt is not None else upt
                gap = (
                    repr((ref - plan.achieved_value) / norm * 100.0)
                    if ref is not None and norm > 0
                    else ""
                )
                ratio = (
                    repr(plan.achieved_value / upt) if upt not in (None, 0) else ""
                )
                rows.append(
                    ",".join(
                        [
                            str(b),
                            str(k),
                            planner,
                            repr(plan.achieved_value),
                            repr(plan.achieved_value / norm) if norm > 0 else "",
                            "" if opt is None else repr(opt),
                            "" if upt is None else repr(upt),
                            gap,
                            repr(alpha),
                            repr(a_e) if a_e != "" else "",
                            repr(a_v) if a_v != "" else "",
                            ratio,
                        ]
                    )
                )
    return rows


def _alpha_surface_rows(bs, ks, delta, kappa_deltas):
    rows = [f"# delta={delta}", "b,k,alpha_apriori"]
    grid = cert.alpha_apriori_grid(bs, ks, delta)
    for i, b in enumerate(bs):
        for j, k in enumerate(ks):
            rows.append(f"{b},{k},{float(grid[i, j])!r}")
    if kappa_deltas:
        rows.append("kappa,delta,alpha_tilde")
        for d in kappa_deltas:
            for b in bs:
                for k in ks:
                    kappa = b / k
                    rows.append(f"{kappa!r},{d},{cert.alpha_tilde(kappa, d)!r}")
    return rows


def _write_rows(rows, output):
    text = "\n".join(rows) + "\n"
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_sweep(args):
    bs = _parse_grid(args.b)
    ks = _parse_grid(args.k)
    if not bs or not ks:
        raise _UsageError("empty budget grid")

    if args.alpha_only:
        kappa_deltas = _parse_grid(args.kappa_deltas) if args.kappa_deltas else ()
        _write_rows(_alpha_surface_rows(bs, ks, args.delta, kappa_deltas), args.output)
        return 0

    if not args.input:
        raise _UsageError("sweep needs --input (or use --alpha-only)")
    graph, pose_graph = _load_inputs(args)
    spec = SweepSpec(
        bs=tuple(bs),
        ks=tuple(ks),
        objective=args.objective,
        regime=args.regime,
        planners=tuple(p.strip() for p in args.planners.split(",") if p.strip()),
        certify=args.certify,
        lazy=args.lazy,
        seed=args.seed,
    )
    _write_rows(sweep_rows(graph, pose_graph, spec), args.output)
    return 0


# -- argument wiring --------------------------------------------------------------


def _build_parser():
    top = _Parser(prog="loopselect", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a synthetic instance to disk")
    g.add_argument("--robots", type=int, default=3)
    g.add_argument("--verts", type=int, default=3, help="vertices per robot")
    g.add_argument("--density", type=float, default=None)
    g.add_argument("--edges", type=int, default=None)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--cap-degree", type=int, default=None)
    g.add_argument("--output", required=True)
    g.add_argument("--pose-output", default=None)
    g.add_argument("--truth-output", default=None)
    g.set_defaults(func=_cmd_generate)

    p = sub.add_parser("plan", help="run one planner on one instance")
    p.add_argument("--input", required=True)
    p.add_argument("--pose-input", default=None)
    p.add_argument("--objective", default="modular", choices=["modular", "dcrit", "treeconn"])
    p.add_argument("--regime", default="tu", choices=["tu", "tn", "iu"])
    p.add_argument("--planner", default="sgreedy", choices=PLANNERS)
    p.add_argument("-b", required=True, help="budget (tu: int, tn: float, iu: l0/l1/...)")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--lazy", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cap-degree", type=int, default=None)
    p.add_argument("--output", default=None, help="plan JSON path")
    p.set_defaults(func=_cmd_plan)

    s = sub.add_parser("sweep", help="run a budget grid and emit CSV")
    s.add_argument("--input", default=None)
    s.add_argument("--pose-input", default=None)
    s.add_argument("--objective", default="modular", choices=["modular", "dcrit", "treeconn"])
    s.add_argument("--regime", default="tu", choices=["tu", "tn", "iu"])
    s.add_argument("--planners", default="sgreedy", help="comma list of planners")
    s.add_argument("-b", required=True, help="grid: value, list, or start:step:end")
    s.add_argument("-k", required=True, help="grid: value, list, or start:step:end")
    s.add_argument("--certify", default="none", choices=["none", "lp", "brute"])
    s.add_argument("--lazy", action="store_true")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--cap-degree", type=int, default=None)
    s.add_argument("--alpha-only", action="store_true", help="emit guarantee surfaces, run nothing")
    s.add_argument("--delta", type=int, default=None, help="max degree for --alpha-only")
    s.add_argument("--kappa-deltas", default=None, help="emit budget-ratio curves for these deltas")
    s.add_argument("--output", default=None)
    s.set_defaults(func=_cmd_sweep)

    c = sub.add_parser("certify", help="bound the quality of a saved plan")
    c.add_argument("--input", required=True)
    c.add_argument("--pose-input", default=None)
    c.add_argument("--plan", required=True)
    c.add_argument("--level", default="lp", choices=["lp", "brute"])
    c.add_argument("--cap-degree", type=int, default=None)
    c.set_defaults(func=_cmd_certify)

    return top


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "sweep" and args.alpha_only and args.delta is None:
            raise _UsageError("--alpha-only needs --delta")
        return args.func(args)
    except _UsageError as err:
        print(f"usage error: {err}", file=sys.stderr)
        return 1
    except InstanceTooLargeError as err:
        print(f"guard exceeded: {err}", file=sys.stderr)
        print("hint: retry with --certify lp or a smaller instance", file=sys.stderr)
        return 3
    except (ParseError, OSError, ValueError, json.JSONDecodeError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
