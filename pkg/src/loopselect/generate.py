"""Synthetic instance generation: exchange graphs, pose graphs, ground truth.

All generation is a pure function of its spec and seed. Randomness uses
numpy's PCG64 generator (a named, documented algorithm with stable streams),
so instances reproduce exactly across platforms and sessions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Edge, ExchangeGraph, Vertex
from .objectives import PoseGraph

__all__ = [
    "GenSpec",
    "GroundTruth",
    "generate_exchange_graph",
    "generate_pose_graph",
    "sample_ground_truth",
    "demo_rendezvous_graph",
]


@dataclass(frozen=True)
class GenSpec:
    """Knobs for synthetic instances.

    Either ``edge_density`` (fraction of all inter-robot pairs) or
    ``num_edges`` (exact count) selects how many candidate edges to draw.
    Probabilities are i.i.d. uniform on (0, 1) unless ``probabilities``
    supplies a fixed list. ``max_degree`` optionally caps the result (the
    most probable edges survive). Pose-graph knobs shape the backbone:
    one odometry chain per robot with ``poses_per_robot`` poses (defaults to
    ``vertices_per_robot`` so every observation sits on its own pose).
    """

    num_robots: int = 2
    vertices_per_robot: int = 3
    edge_density: float | None = None
    num_edges: int | None = None
    probabilities: tuple[float, ...] | None = None
    seed: int = 0
    max_degree: int | None = None
    poses_per_robot: int | None = None
    odometry_weight: float = 1.0
    candidate_weight: float = 1.0

    def __post_init__(self):
        if self.num_robots < 2:
            raise ValueError("need at least 2 robots")
        if self.vertices_per_robot < 1:
            raise ValueError("need at least 1 vertex per robot")
        if self.edge_density is None and self.num_edges is None:
            raise ValueError("set edge_density or num_edges")
        if self.edge_density is not None and not 0.0 <= self.edge_density <= 1.0:
            raise ValueError("edge_density must be within [0, 1]")


@dataclass(frozen=True)
class GroundTruth:
    """Realized truth of every candidate edge (independent Bernoulli draws)."""

    realized: tuple[bool, ...]

    def true_count(self, edge_ids) -> int:
        return sum(1 for eid in edge_ids if self.realized[eid])


def generate_exchange_graph(spec: GenSpec) -> ExchangeGraph:
    """Random r-partite exchange graph; deterministic per seed.

    Vertex ids are robot-major (robot 0 owns ids 0..V-1 and so on). Candidate
    inter-robot pairs are sampled without replacement, then probabilities are
    drawn, then the optional degree cap is applied.
    """
    rng = np.random.default_rng(spec.seed)
    r, nv = spec.num_robots, spec.vertices_per_robot
    vertices = tuple(
        Vertex(id=i, robot=i // nv, weight=1.0) for i in range(r * nv)
    )
    pairs = [
        (u, v)
        for u in range(r * nv)
        for v in range(u + 1, r * nv)
        if u // nv != v // nv
    ]
    m = spec.num_edges if spec.num_edges is not None else round(
        spec.edge_density * len(pairs)
    )
    if not 0 <= m <= len(pairs):
        raise ValueError(
            f"infeasible density: want {m} edges out of {len(pairs)} candidate pairs"
        )
    idx = sorted(rng.choice(len(pairs), size=m, replace=False).tolist()) if m else []
    if spec.probabilities is not None:
        if len(spec.probabilities) != m:
            raise ValueError("fixed probability list must have one entry per edge")
        ps = list(spec.probabilities)
    else:
        ps = rng.uniform(0.0, 1.0, size=m).tolist()
    edges = tuple(
        Edge(id=i, u=pairs[j][0], v=pairs[j][1], p=ps[i])
        for i, j in enumerate(idx)
    )
    graph = ExchangeGraph(r, vertices, edges)
    if spec.max_degree is not None:
        graph = graph.cap_degree(spec.max_degree)
    bad = graph.validate()
    if bad:
        raise AssertionError(f"generator produced an invalid graph: {bad}")
    return graph


def generate_pose_graph(spec: GenSpec, graph: ExchangeGraph) -> PoseGraph:
    """Backbone pose graph aligned with a generated exchange graph.

    Each robot contributes one odometry chain laid out on its own grid row;
    consecutive chains are bridged so the base graph is connected. Exchange
    vertex i sits on pose ``robot * poses_per_robot + (i mod poses)``, and
    every exchange edge maps to the pose pair of its endpoints.
    """
    r = spec.num_robots
    ppr = spec.poses_per_robot or spec.vertices_per_robot
    num_poses = r * ppr
    w = spec.odometry_weight
    base = []
    for robot in range(r):
        start = robot * ppr
        for j in range(ppr - 1):
            base.append((start + j, start + j + 1, w))
        if robot + 1 < r:  # bridge to the next chain
            base.append((start + ppr - 1, (robot + 1) * ppr, w))
    poses = tuple(
        (float(j), float(robot), 0.0)
        for robot in range(r)
        for j in range(ppr)
    )

    def pose_of(vid):
        v = graph.vertex(vid)
        return v.robot * ppr + (vid - v.robot * spec.vertices_per_robot) % ppr

    candidate_map = {
        e.id: (pose_of(e.u), pose_of(e.v), spec.candidate_weight)
        for e in graph.edges
    }
    pg = PoseGraph(
        num_poses=num_poses,
        base_edges=tuple(base),
        candidate_map=candidate_map,
        anchor=0,
        poses=poses,
    )
    bad = pg.validate()
    if bad or not pg.is_connected():
        raise AssertionError(f"generator produced an invalid pose graph: {bad}")
    return pg


def sample_ground_truth(graph: ExchangeGraph, seed) -> GroundTruth:
    """One Bernoulli draw per edge with its own probability; deterministic per seed."""
    rng = np.random.default_rng(seed)
    draws = rng.random(graph.num_edges)
    return GroundTruth(
        realized=tuple(bool(d < e.p) for d, e in zip(draws, graph.edges))
    )


def demo_rendezvous_graph(probabilities=None) -> ExchangeGraph:
    """Canonical 3-robot demo instance: 9 observations, 8 candidate matches.

    Its minimum vertex cover has exactly 3 vertices (one per robot), which
    makes it a handy worked example for covers, budgets, and planner smoke
    tests. Pass 8 probabilities to override the defaults.
    """
    if probabilities is None:
        probabilities = (0.9, 0.85, 0.8, 0.75, 0.7, 0.65, 0.6, 0.55)
    if len(probabilities) != 8:
        raise ValueError("need exactly 8 probabilities")
    vertices = tuple(Vertex(id=i, robot=i // 3, weight=1.0) for i in range(9))
    pairs = [(0, 4), (1, 3), (1, 7), (1, 8), (4, 6), (1, 6), (2, 4), (5, 6)]
    edges = tuple(
        Edge(id=i, u=u, v=v, p=p)
        for i, ((u, v), p) in enumerate(zip(pairs, probabilities))
    )
    return ExchangeGraph(3, vertices, edges)
