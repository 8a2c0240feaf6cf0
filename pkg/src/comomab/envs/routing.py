"""Source-to-destination routing with per-edge delay and energy costs.

Graph file format, one directed edge per line (``#`` starts a comment)::

    src dst delay_max energy_max delay_lo delay_hi energy_lo energy_hi

Delay and energy on an edge are uniform on ``[lo, hi]`` with
``0 <= lo <= hi <= max``. Edge rewards are ``1 - delay / delay_max`` and
``1 - energy / energy_max``. Parallel edges are allowed. Actions are the
simple paths from source to destination, found by depth-first search
with out-edges visited in (destination name, file order); arms are the
edges that lie on at least one such path.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..core import Action, ActionSet
from ..exceptions import ConfigError
from .base import Environment


@dataclass(frozen=True)
class Edge:
    src: str
    dst: str
    delay_max: float
    energy_max: float
    delay_lo: float
    delay_hi: float
    energy_lo: float
    energy_hi: float

    def __post_init__(self):
        for lo, hi, top, what in (
            (self.delay_lo, self.delay_hi, self.delay_max, "delay"),
            (self.energy_lo, self.energy_hi, self.energy_max, "energy"),
        ):
            if not (top > 0 and 0 <= lo <= hi <= top):
                raise ConfigError(
                    f"edge {self.src}->{self.dst}: need 0 <= {what}_lo <= {what}_hi <= {what}_max > 0"
                )


@dataclass
class RoutingConfig:
    edges: list
    source: str
    destination: str
    max_path_length: int | None = None

    @property
    def nodes(self) -> list:
        seen = {}
        for e in self.edges:
            seen.setdefault(e.src, None)
            seen.setdefault(e.dst, None)
        return list(seen)


def read_edge_list(path) -> list:
    edges = []
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 8:
            raise ConfigError(f"{path}:{lineno}: expected 8 fields, got {len(parts)}")
        try:
            nums = [float(x) for x in parts[2:]]
        except ValueError:
            raise ConfigError(f"{path}:{lineno}: non-numeric edge parameter") from None
        edges.append(Edge(parts[0], parts[1], *nums))
    return edges


def simple_paths(edges, source, destination, max_length=None) -> list:
    """All simple ``source -> destination`` paths as tuples of edge indices."""
    out_edges = {}
    for idx, e in enumerate(edges):
        out_edges.setdefault(e.src, []).append(idx)
    for lst in out_edges.values():
        lst.sort(key=lambda i: (edges[i].dst, i))

    paths = []
    path: list = []
    visited = {source}

    def dfs(node):
        if node == destination:
            paths.append(tuple(path))
            return
        if max_length is not None and len(path) >= max_length:
            return
        for idx in out_edges.get(node, ()):
            nxt = edges[idx].dst
            if nxt in visited:
                continue
            visited.add(nxt)
            path.append(idx)
            dfs(nxt)
            path.pop()
            visited.remove(nxt)

    if source != destination:
        dfs(source)
    return paths


class RoutingEnvironment(Environment):
    def __init__(self, cfg: RoutingConfig):
        self.cfg = cfg
        cap = cfg.max_path_length
        if cap is None:
            cap = len(cfg.nodes)
        paths = simple_paths(cfg.edges, cfg.source, cfg.destination, cap)
        if not paths:
            raise ConfigError(f"no path from {cfg.source!r} to {cfg.destination!r}")
        used = sorted({i for p in paths for i in p})
        self.arm_edges = [cfg.edges[i] for i in used]
        arm_of = {edge_idx: arm for arm, edge_idx in enumerate(used)}
        self.paths = paths
        actions = [Action.unit([arm_of[i] for i in p], len(used)) for p in paths]
        self.action_set = ActionSet(actions, len(used), dimension=2)

        e = self.arm_edges
        self._lo = np.array([[x.delay_lo, x.energy_lo] for x in e])
        self._hi = np.array([[x.delay_hi, x.energy_hi] for x in e])
        self._top = np.array([[x.delay_max, x.energy_max] for x in e])

    def true_means(self):
        return 1.0 - 0.5 * (self._lo + self._hi) / self._top

    def sample(self, arms, rng):
        arms = np.asarray(arms, dtype=np.intp)
        lo, hi = self._lo[arms], self._hi[arms]
        cost = lo + (hi - lo) * rng.random(lo.shape)
        return 1.0 - cost / self._top[arms]
