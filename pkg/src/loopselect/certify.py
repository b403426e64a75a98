"""Ground truth and bounds: brute-force optima, LP certification, approximation factors.

Three independent routes to the optimum (or an upper bound on it) back every
guarantee the planners advertise:

* ``brute_force_opt`` — exact optimum by nested enumeration: every
  budget-feasible vertex subset, with the inner edge problem solved in closed
  form (modular) or by enumeration (general monotone objectives).
* ``lp_upper_bound_modular`` / ``ilp_opt_modular`` — the natural LP
  relaxation of the modular cardinality-budget problem over vertex and edge
  indicators, and its exact integral optimum via branch and bound.
* ``alpha_apriori`` / ``alpha_posteriori`` / ``alpha_tilde`` — the closed-form
  approximation factors of the combined greedy planner, before and after a
  run, plus the budget-ratio approximation used for plotting guarantees
  independent of any instance.
"""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import InstanceTooLargeError
from .graph import Plan, TotalUniform, TotalNonuniform, IndividualUniform
from .objectives import ModularObjective, g_modular
from .planners import m_greedy
from .simplex import simplex_max

__all__ = [
    "Certificate",
    "CSV_HEADER",
    "brute_force_opt",
    "lp_upper_bound_modular",
    "ilp_opt_modular",
    "alpha_apriori",
    "alpha_apriori_grid",
    "alpha_tilde",
    "alpha_posteriori",
]

ENUM_GUARD = 2**20   # max feasible vertex subsets / inner enumerations
VALUE_TIE_TOL = 1e-12
LP_TOL = 1e-7

CSV_HEADER = (
    "instance,b,k,delta,achieved,opt,upt,"
    "alpha_apriori,alpha_e_post,alpha_v_post,ratio_lb"
)


@dataclass
class Certificate:
    """Achieved value next to whatever bounds were computed for one instance."""

    achieved: float
    opt: float | None = None
    upt: float | None = None
    alpha_apriori: float = 0.0
    alpha_e_post: float = 0.0
    alpha_v_post: float = 0.0

    @property
    def ratio_lb(self) -> float | None:
        """Lower bound on the empirical approximation ratio, achieved / UPT."""
        if self.upt is None or self.upt <= 0:
            return None
        return self.achieved / self.upt

    def csv_row(self, instance_id, b, k, delta) -> str:
        def fmt(x):
            return "" if x is None else repr(float(x))

        return ",".join(
            [
                str(instance_id),
                str(b),
                str(k),
                str(delta),
                fmt(self.achieved),
                fmt(self.opt),
                fmt(self.upt),
                fmt(self.alpha_apriori),
                fmt(self.alpha_e_post),
                fmt(self.alpha_v_post),
                fmt(self.ratio_lb),
            ]
        )


# -- exact optimum by enumeration -------------------------------------------


def _feasible_vertex_subsets(graph, cb):
    """Yield all budget-feasible vertex subsets as sorted tuples."""
    vids = sorted(v.id for v in graph.vertices)
    if isinstance(cb, TotalUniform):
        top = min(cb.b, len(vids))
        total = sum(math.comb(len(vids), s) for s in range(top + 1))
        if total > ENUM_GUARD:
            raise InstanceTooLargeError(
                f"instance too large: {total} feasible vertex subsets"
            )
        for s in range(top + 1):
            yield from itertools.combinations(vids, s)
        return
    if isinstance(cb, TotalNonuniform):
        weights = {vid: graph.vertex(vid).weight for vid in vids}
        count = 0

        def rec(idx, chosen, spent):
            nonlocal count
            if idx == len(vids):
                count += 1
                if count > ENUM_GUARD:
                    raise InstanceTooLargeError(
                        "instance too large: feasible vertex subsets exceed guard"
                    )
                yield tuple(chosen)
                return
            vid = vids[idx]
            if spent + weights[vid] <= cb.b + 1e-9:
                chosen.append(vid)
                yield from rec(idx + 1, chosen, spent + weights[vid])
                chosen.pop()
            yield from rec(idx + 1, chosen, spent)

        yield from rec(0, [], 0.0)
        return
    if isinstance(cb, IndividualUniform):
        per_block = []
        for block, limit in zip(cb.blocks, cb.limits):
            ids = sorted(block)
            subsets = [
                combo
                for s in range(min(limit, len(ids)) + 1)
                for combo in itertools.combinations(ids, s)
            ]
            per_block.append(subsets)
        total = math.prod(len(s) for s in per_block)
        if total > ENUM_GUARD:
            raise InstanceTooLargeError(
                f"instance too large: {total} feasible vertex subsets"
            )
        for parts in itertools.product(*per_block):
            yield tuple(sorted(itertools.chain.from_iterable(parts)))
        return
    raise TypeError(f"unsupported budget {cb!r}")


def brute_force_opt(graph, k, cb, objective):
    """Exact optimum over all feasible (vertex set, edge set) pairs.

    Enumerates every budget-feasible vertex subset; for each, solves the best
    at-most-k edge subproblem over the covered edges (closed form when the
    objective is modular, enumeration of min(k, covered)-subsets otherwise —
    monotonicity makes the largest admissible size optimal). Ties between
    vertex subsets break to the lexicographically smallest id tuple.
    Guarded to ``ENUM_GUARD`` enumerations on each level.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    modular = getattr(objective, "kind", None) == "modular"
    fmemo: dict[frozenset, float] = {}
    imemo: dict[tuple, tuple[float, tuple[int, ...]]] = {}
    inner_count = 0

    def inner(covered) -> tuple[float, tuple[int, ...]]:
        nonlocal inner_count
        F = tuple(sorted(covered))
        m = min(k, len(F))
        key = (F, m)
        if key in imemo:
            return imemo[key]
        if modular:
            ranked = sorted(F, key=lambda eid: (-graph.edge(eid).p, eid))[:m]
            best = (
                math.fsum(graph.edge(eid).p for eid in ranked),
                tuple(ranked),
            )
        else:
            combos = [F] if m == len(F) else itertools.combinations(F, m)
            best_v = -math.inf
            best_set: tuple[int, ...] = ()
            for combo in combos:
                inner_count += 1
                if inner_count > ENUM_GUARD:
                    raise InstanceTooLargeError(
                        "instance too large: inner edge enumeration exceeds guard"
                    )
                fs = frozenset(combo)
                if fs not in fmemo:
                    fmemo[fs] = objective.value(combo)
                val = fmemo[fs]
                if val > best_v + VALUE_TIE_TOL or (
                    abs(val - best_v) <= VALUE_TIE_TOL and combo < best_set
                ):
                    best_v, best_set = val, tuple(combo)
            best = (best_v if best_v > -math.inf else 0.0, best_set)
        imemo[key] = best
        return best

    best_value = 0.0
    best_vset: tuple[int, ...] = ()
    best_edges: tuple[int, ...] = ()
    for vset in _feasible_vertex_subsets(graph, cb):
        covered = graph.edges_incident(vset)
        value, witness = inner(covered)
        if value > best_value + VALUE_TIE_TOL or (
            abs(value - best_value) <= VALUE_TIE_TOL and vset < best_vset
        ):
            best_value, best_vset, best_edges = value, vset, witness
    plan = Plan(
        vertices=best_vset, edges=best_edges, achieved_value=best_value
    )
    return best_value, plan


# -- LP relaxation and exact ILP (modular, cardinality budget) ----------------


def _modular_lp(graph, k, b, fixed0=frozenset(), fixed1=frozenset()):
    """LP relaxation value and free-vertex solution, with some vertices fixed.

    Variables are vertex indicators (free vertices only; fixed ones are
    substituted out) and edge indicators. Returns ``(pi, value)`` where pi
    maps free vertex id -> fractional value, or None when infeasible.
    """
    n1 = len(fixed1)
    if n1 > b:
        return None
    free = [v.id for v in graph.vertices if v.id not in fixed0 and v.id not in fixed1]
    col_of = {vid: i for i, vid in enumerate(free)}
    nf = len(free)
    m = len(graph.edges)
    nvar = nf + m

    c = np.zeros(nvar)
    rows = []
    rhs = []
    for i in range(nf):  # pi <= 1
        r = np.zeros(nvar)
        r[i] = 1.0
        rows.append(r)
        rhs.append(1.0)
    for j, e in enumerate(graph.edges):  # ell <= 1
        r = np.zeros(nvar)
        r[nf + j] = 1.0
        rows.append(r)
        rhs.append(1.0)
        c[nf + j] = e.p
    r = np.zeros(nvar)  # sum pi <= b - |fixed1|
    r[:nf] = 1.0
    rows.append(r)
    rhs.append(float(b - n1))
    r = np.zeros(nvar)  # sum ell <= k
    r[nf:] = 1.0
    rows.append(r)
    rhs.append(float(k))
    for j, e in enumerate(graph.edges):  # ell_e <= pi_u + pi_v
        r = np.zeros(nvar)
        r[nf + j] = 1.0
        ones = 0
        for end in (e.u, e.v):
            if end in col_of:
                r[col_of[end]] = -1.0
            elif end in fixed1:
                ones += 1
        rows.append(r)
        rhs.append(float(ones))
    x, value = simplex_max(c, np.array(rows), np.array(rhs))
    pi = {vid: float(x[col_of[vid]]) for vid in free}
    return pi, value


def lp_upper_bound_modular(graph, k, b) -> float:
    """Optimal value of the LP relaxation; an upper bound on the exact optimum."""
    if k < 0 or b < 0:
        raise ValueError("budgets must be non-negative")
    _, value = _modular_lp(graph, k, b)
    return value


def ilp_opt_modular(graph, k, b, stats=None) -> float:
    """Exact integral optimum via branch and bound on the LP relaxation.

    Branches on the most fractional vertex indicator, explores nodes in
    best-bound order, and evaluates integral nodes exactly through the
    closed-form inner solve. ``stats``, when given a dict, receives the
    number of branched nodes and LP solves.
    """
    if k < 0 or b < 0:
        raise ValueError("budgets must be non-negative")
    top = min(b, len(graph.vertices))
    total = sum(math.comb(len(graph.vertices), s) for s in range(top + 1))
    if total > ENUM_GUARD:
        raise InstanceTooLargeError(
            f"instance too large: {total} feasible vertex subsets"
        )

    objective = ModularObjective(graph)
    incumbent = m_greedy(graph, k, TotalUniform(b), objective)[0].achieved_value
    nodes_branched = 0
    lp_solves = 0

    def solve(fixed0, fixed1):
        nonlocal lp_solves
        lp_solves += 1
        return _modular_lp(graph, k, b, fixed0, fixed1)

    root = solve(frozenset(), frozenset())
    counter = itertools.count()
    heap = []
    if root is not None:
        pi, bound = root
        heap.append((-bound, next(counter), frozenset(), frozenset(), pi))

    while heap:
        neg_bound, _, fixed0, fixed1, pi = heapq.heappop(heap)
        bound = -neg_bound
        if bound <= incumbent + 1e-9:
            break  # best-bound order: nothing left can improve
        frac = {vid: val for vid, val in pi.items() if min(val, 1.0 - val) > 1e-9}
        if not frac:
            chosen = set(fixed1) | {vid for vid, val in pi.items() if val > 0.5}
            value = g_modular(graph, chosen, k)[0]
            if value > incumbent:
                incumbent = value
            continue
        branch_vid = min(frac, key=lambda vid: (abs(frac[vid] - 0.5), vid))
        nodes_branched += 1
        for child0, child1 in (
            (fixed0 | {branch_vid}, fixed1),
            (fixed0, fixed1 | {branch_vid}),
        ):
            sol = solve(child0, child1)
            if sol is None:
                continue
            child_pi, child_bound = sol
            if child_bound > incumbent + 1e-9:
                heapq.heappush(
                    heap,
                    (-child_bound, next(counter), child0, child1, child_pi),
                )

    if stats is not None:
        stats["nodes"] = nodes_branched
        stats["lp_solves"] = lp_solves
    return incumbent


# -- approximation factors ----------------------------------------------------


def alpha_apriori(b, k, delta) -> float:
    """A-priori factor of the combined greedy planner.

    ``1 - exp(-min(1, gamma))`` with ``gamma = max(b/k, floor(k/delta)/b)``:
    the better of the edge arm's and the vertex arm's guarantees.
    """
    if b < 1 or k < 1 or delta < 1:
        raise ValueError("b, k, and delta must be at least 1")
    gamma = max(b / k, math.floor(k / delta) / b)
    return 1.0 - math.exp(-min(1.0, gamma))


def alpha_apriori_grid(bs, ks, delta) -> np.ndarray:
    """Vectorized :func:`alpha_apriori` over a budget grid; shape (len(bs), len(ks))."""
    if delta < 1:
        raise ValueError("delta must be at least 1")
    b = np.asarray(bs, dtype=float).reshape(-1, 1)
    k = np.asarray(ks, dtype=float).reshape(1, -1)
    if np.any(b < 1) or np.any(k < 1):
        raise ValueError("b and k must be at least 1")
    gamma = np.maximum(b / k, np.floor(k / delta) / b)
    return 1.0 - np.exp(-np.minimum(1.0, gamma))


def alpha_tilde(kappa, delta) -> float:
    """Budget-ratio approximation of the a-priori factor.

    Replaces ``floor(k/delta)`` with ``k/delta`` so the guarantee depends only
    on the budget ratio ``kappa = b/k`` and the maximum degree.
    """
    if kappa <= 0:
        raise ValueError("kappa must be positive")
    if delta < 1:
        raise ValueError("delta must be at least 1")
    return 1.0 - math.exp(-min(1.0, max(kappa, 1.0 / (kappa * delta))))


def _alpha_edge_arm(tr, b, k) -> float:
    n_e = tr.phase_count("phase1")
    if tr.exhausted:
        # the arm holds every edge, so its solution is optimal for the
        # computation-only relaxation; report the a-priori count
        n_e = max(n_e, min(b, k))
    return 1.0 - math.exp(-min(1.0, n_e / k))


def _alpha_vertex_arm(tr, b) -> float:
    n_v = len(tr.steps)
    if tr.exhausted:
        n_v = max(n_v, b)
    return 1.0 - math.exp(-min(1.0, n_v / b))


def alpha_posteriori(trace, b, k, delta) -> tuple[float, float]:
    """A-posteriori factors from an actual run: (edge arm, vertex arm).

    Uses the realized selection counts instead of their worst-case lower
    bounds, so each factor is at least its a-priori counterpart. Only traces
    of the edge, vertex, or combined greedy planners qualify; the missing arm
    of a single-arm trace reports 0.
    """
    if b < 1 or k < 1 or delta < 1:
        raise ValueError("b, k, and delta must be at least 1")
    if trace.algorithm == "s-greedy" and trace.children:
        return (
            _alpha_edge_arm(trace.children["edge-arm"], b, k),
            _alpha_vertex_arm(trace.children["vertex-arm"], b),
        )
    if trace.algorithm == "e-greedy":
        return _alpha_edge_arm(trace, b, k), 0.0
    if trace.algorithm == "v-greedy":
        return 0.0, _alpha_vertex_arm(trace, b)
    raise ValueError(
        f"trace from {trace.algorithm!r} has no a-posteriori factors"
    )
