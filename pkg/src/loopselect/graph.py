"""Exchange graphs, communication budgets, plans, and cover primitives.

An exchange graph describes a multi-robot rendezvous: one vertex per
broadcastable observation (owned by exactly one robot, with a positive
broadcast cost) and one edge per candidate inter-robot match, annotated with
the probability that verifying the pair yields a true loop closure. Because
both observations of a pair live on different robots, the graph is r-partite.

A candidate edge can only be verified once at least one of its endpoints has
been broadcast, so the verifiable edge sets are exactly those covered by the
broadcast vertex set. Planners therefore produce a ``Plan``: an ordered
vertex selection plus an ordered edge selection covered by it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InstanceTooLargeError

__all__ = [
    "Vertex",
    "Edge",
    "ExchangeGraph",
    "Plan",
    "TotalUniform",
    "TotalNonuniform",
    "IndividualUniform",
    "CommBudget",
    "min_vertex_cover_bruteforce",
]

WEIGHT_TOL = 1e-9  # absolute tolerance for real-valued budget comparisons
COVER_GUARD = 25   # max distinct endpoints for the exact cover search


@dataclass(frozen=True)
class Vertex:
    """One observation: owned by ``robot``, broadcast cost ``weight`` > 0."""

    id: int
    robot: int
    weight: float = 1.0


@dataclass(frozen=True)
class Edge:
    """Candidate match between observations ``u`` and ``v``, true with probability ``p``."""

    id: int
    u: int
    v: int
    p: float


@dataclass(frozen=True)
class Plan:
    """A broadcast/verify decision.

    ``vertices`` and ``edges`` preserve selection order. A plan is feasible
    for budgets (k, cb) when it verifies at most k edges, every selected edge
    is covered by the selected vertices, and the vertex set satisfies cb;
    see :meth:`ExchangeGraph.check_plan`.
    """

    vertices: tuple[int, ...] = ()
    edges: tuple[int, ...] = ()
    achieved_value: float = 0.0


@dataclass(frozen=True)
class TotalUniform:
    """Broadcast at most ``b`` observations in total (cardinality constraint)."""

    b: int


@dataclass(frozen=True)
class TotalNonuniform:
    """Total broadcast weight at most ``b`` (knapsack constraint)."""

    b: float


@dataclass(frozen=True)
class IndividualUniform:
    """At most ``limits[i]`` broadcasts from block i (partition matroid constraint).

    ``blocks`` must partition the vertex ids. :meth:`by_robot` builds the
    natural partition in which block i holds robot i's observations.
    """

    blocks: tuple[tuple[int, ...], ...]
    limits: tuple[int, ...]

    def __post_init__(self):
        if len(self.blocks) != len(self.limits):
            raise ValueError("need one limit per block")
        if any(b < 0 for b in self.limits):
            raise ValueError("block limits must be non-negative")

    @classmethod
    def by_robot(cls, graph, limits):
        """Partition vertices by owning robot; ``limits`` has one entry per robot."""
        limits = tuple(int(b) for b in limits)
        if len(limits) != graph.num_robots:
            raise ValueError(
                f"expected {graph.num_robots} limits, got {len(limits)}"
            )
        blocks = tuple(
            tuple(v.id for v in graph.vertices if v.robot == r)
            for r in range(graph.num_robots)
        )
        return cls(blocks=blocks, limits=limits)


CommBudget = TotalUniform | TotalNonuniform | IndividualUniform


class ExchangeGraph:
    """Simple undirected r-partite graph of observations and candidate matches.

    Immutable after construction; every query is read-only and safe to call
    concurrently. Construction is permissive so that :meth:`validate` can
    report all invariant violations of an instance as data; parsers and
    generators are expected to reject instances with a non-empty report.
    """

    def __init__(self, num_robots, vertices, edges):
        self.num_robots = int(num_robots)
        self.vertices = tuple(vertices)
        self.edges = tuple(edges)
        self._vmap = {v.id: v for v in self.vertices}
        self._emap = {e.id: e for e in self.edges}
        incident = {v.id: [] for v in self.vertices}
        for e in self.edges:
            if e.u in incident:
                incident[e.u].append(e.id)
            if e.v in incident and e.v != e.u:
                incident[e.v].append(e.id)
        self._incident = {vid: tuple(eids) for vid, eids in incident.items()}

    # -- basic queries ----------------------------------------------------

    @property
    def num_vertices(self):
        return len(self.vertices)

    @property
    def num_edges(self):
        return len(self.edges)

    def vertex(self, vid) -> Vertex:
        try:
            return self._vmap[vid]
        except KeyError:
            raise ValueError(f"unknown vertex id {vid!r}") from None

    def edge(self, eid) -> Edge:
        try:
            return self._emap[eid]
        except KeyError:
            raise ValueError(f"unknown edge id {eid!r}") from None

    def incident(self, vid) -> tuple[int, ...]:
        """Edge ids incident to one vertex."""
        self.vertex(vid)
        return self._incident.get(vid, ())

    def degree(self, vid) -> int:
        return len(self.incident(vid))

    def max_degree(self) -> int:
        """Maximum vertex degree; 0 for an edgeless graph."""
        if not self.vertices:
            return 0
        return max(len(eids) for eids in self._incident.values())

    def edges_incident(self, vertex_ids) -> set[int]:
        """All edge ids with at least one endpoint in ``vertex_ids``."""
        out = set()
        for vid in vertex_ids:
            out.update(self.incident(vid))
        return out

    def is_cover(self, vertex_ids, edge_ids) -> bool:
        """True iff every edge in ``edge_ids`` has an endpoint in ``vertex_ids``."""
        vs = set(vertex_ids)
        for vid in vs:
            self.vertex(vid)
        for eid in edge_ids:
            e = self.edge(eid)
            if e.u not in vs and e.v not in vs:
                return False
        return True

    # -- validation --------------------------------------------------------

    def validate(self) -> list[str]:
        """All invariant violations of this instance; empty means valid."""
        bad = []
        if self.num_robots < 2:
            bad.append(f"num_robots must be at least 2, got {self.num_robots}")
        vids = [v.id for v in self.vertices]
        if sorted(vids) != list(range(len(vids))):
            bad.append("vertex ids must be dense, 0-based, and unique")
        for v in self.vertices:
            if not 0 <= v.robot < self.num_robots:
                bad.append(f"vertex {v.id}: robot {v.robot} out of range")
            if not v.weight > 0:
                bad.append(f"vertex {v.id}: weight must be positive")
        eids = [e.id for e in self.edges]
        if sorted(eids) != list(range(len(eids))):
            bad.append("edge ids must be dense, 0-based, and unique")
        seen_pairs = set()
        for e in self.edges:
            if e.u not in self._vmap or e.v not in self._vmap:
                bad.append(f"edge {e.id}: unknown endpoint")
                continue
            if e.u == e.v:
                bad.append(f"edge {e.id}: self-loop")
                continue
            ru, rv = self._vmap[e.u].robot, self._vmap[e.v].robot
            if ru == rv:
                bad.append(f"edge {e.id}: not r-partite (both endpoints on robot {ru})")
            pair = (min(e.u, e.v), max(e.u, e.v))
            if pair in seen_pairs:
                bad.append(f"edge {e.id}: duplicate of pair {pair}")
            seen_pairs.add(pair)
            if not 0.0 <= e.p <= 1.0:
                bad.append(f"edge {e.id}: probability out of range ({e.p})")
        return bad

    # -- budgets and plans ---------------------------------------------------

    def budget_satisfied(self, vertex_ids, cb) -> bool:
        """Evaluate the communication-budget predicate for ``vertex_ids``."""
        vs = set(vertex_ids)
        if isinstance(cb, TotalUniform):
            return len(vs) <= cb.b
        if isinstance(cb, TotalNonuniform):
            total = math.fsum(self.vertex(v).weight for v in vs)
            return total <= cb.b + WEIGHT_TOL
        if isinstance(cb, IndividualUniform):
            block_of = {}
            for i, block in enumerate(cb.blocks):
                for vid in block:
                    block_of[vid] = i
            counts = [0] * len(cb.blocks)
            for vid in vs:
                self.vertex(vid)
                if vid not in block_of:
                    raise ValueError(f"vertex {vid} is outside every budget block")
                counts[block_of[vid]] += 1
            return all(c <= b for c, b in zip(counts, cb.limits))
        raise TypeError(f"unsupported budget {cb!r}")

    def check_plan(self, plan, k, cb) -> bool:
        """Feasibility of a plan under (k, cb).

        Checks the witness cover the plan carries rather than solving a cover
        existence problem: at most k edges, every selected edge covered by the
        selected vertices, and the vertex set within budget.
        """
        for vid in plan.vertices:
            self.vertex(vid)
        for eid in plan.edges:
            self.edge(eid)
        if len(plan.edges) > k:
            return False
        if not self.is_cover(plan.vertices, plan.edges):
            return False
        return self.budget_satisfied(plan.vertices, cb)

    # -- derived graphs -----------------------------------------------------

    def cap_degree(self, max_degree) -> "ExchangeGraph":
        """Subgraph in which every vertex keeps at most ``max_degree`` edges.

        Edges are admitted in order of decreasing probability (ties to the
        lower edge id) while both endpoints still have residual degree, so
        the most probable candidates survive. Kept edges are renumbered
        densely in ascending original-id order; vertices are unchanged.
        """
        if max_degree < 1:
            raise ValueError("max_degree must be at least 1")
        residual = {v.id: max_degree for v in self.vertices}
        admitted = []
        for e in sorted(self.edges, key=lambda e: (-e.p, e.id)):
            if residual.get(e.u, 0) > 0 and residual.get(e.v, 0) > 0:
                admitted.append(e)
                residual[e.u] -= 1
                residual[e.v] -= 1
        admitted.sort(key=lambda e: e.id)
        renumbered = tuple(
            Edge(id=i, u=e.u, v=e.v, p=e.p) for i, e in enumerate(admitted)
        )
        return ExchangeGraph(self.num_robots, self.vertices, renumbered)

    # -- dunder -------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, ExchangeGraph):
            return NotImplemented
        return (
            self.num_robots == other.num_robots
            and self.vertices == other.vertices
            and self.edges == other.edges
        )

    def __repr__(self):
        return (
            f"ExchangeGraph(robots={self.num_robots}, "
            f"vertices={self.num_vertices}, edges={self.num_edges})"
        )


def min_vertex_cover_bruteforce(graph, edge_ids, weighted=False) -> set[int]:
    """Exact minimum vertex cover of the edge set ``edge_ids``.

    Minimizes cardinality, or total vertex weight when ``weighted``; ties
    break to the lexicographically smallest id set. Exponential-time branch
    and bound on the endpoints of the edge set, guarded to at most
    ``COVER_GUARD`` distinct endpoints.
    """
    edges = [graph.edge(eid) for eid in sorted(set(edge_ids))]
    if not edges:
        return set()
    candidates = sorted({e.u for e in edges} | {e.v for e in edges})
    if len(candidates) > COVER_GUARD:
        raise InstanceTooLargeError(
            f"instance too large for exact cover ({len(candidates)} candidate vertices)"
        )
    cost_of = {
        vid: (graph.vertex(vid).weight if weighted else 1.0) for vid in candidates
    }

    best_cost = math.inf
    best_key = None

    def covered(e, sel):
        return e.u in sel or e.v in sel

    def search(idx, selected, cost):
        nonlocal best_cost, best_key
        if cost - best_cost > WEIGHT_TOL:
            return
        while idx < len(edges) and covered(edges[idx], selected):
            idx += 1
        if idx == len(edges):
            key = tuple(sorted(selected))
            if cost < best_cost - WEIGHT_TOL or (
                abs(cost - best_cost) <= WEIGHT_TOL
                and (best_key is None or key < best_key)
            ):
                best_cost = cost
                best_key = key
            return
        e = edges[idx]
        for vid in sorted((e.u, e.v)):
            selected.add(vid)
            search(idx + 1, selected, cost + cost_of[vid])
            selected.discard(vid)

    search(0, set(), 0.0)
    return set(best_key)
