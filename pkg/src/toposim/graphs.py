"""Dependence graphs with prescribed topology and hop-based mixing weights.

Builders cover the circular ladder (one main cycle), the double circular
ladder (two main cycles, lobes glued along a shared rung) and quotient grids
(a rectangular grid with edge identifications yielding a torus, cylinder or
pole-collapsed sphere).  Mixing weights decay as 1/(1 + hops) out to a cutoff.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import shortest_path


class DisconnectedGraphError(ValueError):
    """Raised when an operation requires a connected graph."""


class DetectabilityWarning(UserWarning):
    """A prescribed cycle is too small relative to the mixing cutoff.

    Features survive in the persistence diagram only when the cycle's hop
    diameter is at least twice the cutoff K; below that the mixing weights
    short-circuit the cycle.
    """


@dataclass(eq=False)
class PatternGraph:
    """Undirected connected graph with named topology.

    edges are canonical (u < v) pairs; main_cycles lists one representative
    vertex cycle per prescribed topological loop (used for detectability
    checks and documentation, not for computation).
    """

    node_count: int
    edges: tuple[tuple[int, int], ...]
    kind: str = "custom"
    main_cycles: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        canon = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at node {u}")
            if not (0 <= u < self.node_count and 0 <= v < self.node_count):
                raise ValueError(f"edge ({u}, {v}) out of range for P={self.node_count}")
            canon.add((min(u, v), max(u, v)))
        self.edges = tuple(sorted(canon))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.node_count, dtype=int)
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    @cached_property
    def hop_dist(self) -> np.ndarray:
        return hop_distances(self)


@dataclass(frozen=True)
class MixingWeights:
    """Hop-decay mixing matrix W[p, q] = 1/(1 + d(p, q)) for d <= cutoff."""

    matrix: np.ndarray
    cutoff: int
    source_kind: str = "custom"

    @property
    def node_count(self) -> int:
        return self.matrix.shape[0]


def hop_distances(g: PatternGraph) -> np.ndarray:
    """All-pairs shortest-path hop counts; errors out on disconnected input."""
    n = g.node_count
    if not g.edges:
        if n == 1:
            return np.zeros((1, 1), dtype=np.int64)
        raise DisconnectedGraphError("graph has no edges")
    rows = [u for u, v in g.edges] + [v for u, v in g.edges]
    cols = [v for u, v in g.edges] + [u for u, v in g.edges]
    adj = coo_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))
    dist = shortest_path(adj.tocsr(), method="D", unweighted=True, directed=False)
    if np.isinf(dist).any():
        raise DisconnectedGraphError("graph is disconnected")
    return dist.astype(np.int64)


def mixing_weights(g: PatternGraph, cutoff: int) -> MixingWeights:
    """Weights 1/(1 + hops) within `cutoff` hops, 0 beyond; warns when a
    prescribed main cycle is too small to stay detectable at this cutoff."""
    if cutoff < 1:
        raise ValueError("cutoff must be >= 1")
    d = g.hop_dist
    w = np.where(d <= cutoff, 1.0 / (1.0 + d), 0.0)
    for cyc in g.main_cycles:
        diameter = len(cyc) // 2
        if diameter < 2 * cutoff:
            warnings.warn(
                f"{g.kind}: main cycle of length {len(cyc)} has hop diameter "
                f"{diameter} < 2*K={2 * cutoff}; its loop may not be "
                f"recoverable from the mixed series",
                DetectabilityWarning,
                stacklevel=2,
            )
    return MixingWeights(matrix=w, cutoff=int(cutoff), source_kind=g.kind)


# ---------------------------------------------------------------------------
# builders


def circular_ladder(n: int) -> PatternGraph:
    """Two concentric n-cycles joined by n rungs (2n nodes, 3n edges)."""
    if n < 3:
        raise ValueError("circular ladder needs n >= 3 rungs")
    edges = []
    for i in range(n):
        edges.append((i, (i + 1) % n))  # outer ring
        edges.append((n + i, n + (i + 1) % n))  # inner ring
        edges.append((i, n + i))  # rung
    return PatternGraph(
        node_count=2 * n,
        edges=tuple(edges),
        kind="circular_ladder",
        main_cycles=(tuple(range(n)),),
    )


def double_circular_ladder(n1: int, n2: int | None = None) -> PatternGraph:
    """Two circular-ladder lobes glued along one shared rung.

    Lobe A is a circular ladder on n1 rungs (outer 0..n1-1, inner
    n1..2n1-1); lobe B reuses A's rung (0, n1) and adds n2-1 fresh outer and
    inner nodes, so P = 2*n1 + 2*n2 - 2.  The default (8, 8) gives P = 30.
    """
    if n2 is None:
        n2 = n1
    if n1 < 3 or n2 < 3:
        raise ValueError("each lobe needs at least 3 rungs")
    edges = []
    for i in range(n1):
        edges.append((i, (i + 1) % n1))
        edges.append((n1 + i, n1 + (i + 1) % n1))
        edges.append((i, n1 + i))
    s = 2 * n1  # first new outer node of lobe B
    t = 2 * n1 + n2 - 1  # first new inner node of lobe B
    outer_b = [0] + [s + i for i in range(n2 - 1)]
    inner_b = [n1] + [t + i for i in range(n2 - 1)]
    for i in range(n2):
        edges.append((outer_b[i], outer_b[(i + 1) % n2]))
        edges.append((inner_b[i], inner_b[(i + 1) % n2]))
        edges.append((outer_b[i], inner_b[i]))  # (0, n1) duplicates the shared rung
    return PatternGraph(
        node_count=2 * n1 + 2 * n2 - 2,
        edges=tuple(edges),
        kind="double_circular_ladder",
        main_cycles=(tuple(range(n1)), tuple(outer_b)),
    )


def quotient_grid(rows: int, cols: int, surface: str) -> PatternGraph:
    """Rectangular grid with edge identifications.

    torus:    wrap both directions (P = rows*cols, all degrees 4).
    cylinder: wrap columns only (P = rows*cols).
    sphere:   wrap columns and collapse the top and bottom rows each to a
              single pole node (P = (rows-2)*cols + 2, pole degree = cols).
    """
    if rows < 3 or cols < 3:
        raise ValueError("quotient grid needs rows >= 3 and cols >= 3")
    if surface not in ("torus", "cylinder", "sphere"):
        raise ValueError(f"unknown surface {surface!r}")

    if surface in ("torus", "cylinder"):
        n = rows * cols
        node = lambda r, c: r * cols + c
        edges = []
        for r in range(rows):
            for c in range(cols):
                edges.append((node(r, c), node(r, (c + 1) % cols)))
                if r + 1 < rows:
                    edges.append((node(r, c), node(r + 1, c)))
                elif surface == "torus":
                    edges.append((node(r, c), node(0, c)))
        cycles = [tuple(node(0, c) for c in range(cols))]
        if surface == "torus":
            cycles.append(tuple(node(r, 0) for r in range(rows)))
        return PatternGraph(
            node_count=n,
            edges=tuple(edges),
            kind=f"quotient_grid_{surface}",
            main_cycles=tuple(cycles),
        )

    # sphere: inner rings plus two poles
    inner_rows = rows - 2
    north = inner_rows * cols
    south = north + 1
    node = lambda r, c: r * cols + c  # r indexes inner rings 0..inner_rows-1
    edges = []
    for r in range(inner_rows):
        for c in range(cols):
            edges.append((node(r, c), node(r, (c + 1) % cols)))
            if r + 1 < inner_rows:
                edges.append((node(r, c), node(r + 1, c)))
    for c in range(cols):
        edges.append((north, node(0, c)))
        edges.append((south, node(inner_rows - 1, c)))
    return PatternGraph(
        node_count=inner_rows * cols + 2,
        edges=tuple(edges),
        kind="quotient_grid_sphere",
        main_cycles=(),
    )


def custom_graph(node_count: int, edges, main_cycles=()) -> PatternGraph:
    """Wrap an explicit edge list (e.g. two tori glued along a cycle)."""
    return PatternGraph(
        node_count=node_count,
        edges=tuple(tuple(e) for e in edges),
        kind="custom",
        main_cycles=tuple(tuple(c) for c in main_cycles),
    )


# ---------------------------------------------------------------------------
# edge-list text format: one "u v" pair per line, zero-based ids, '#' comments


def save_edge_list(g: PatternGraph, path) -> None:
    lines = [f"# kind: {g.kind}", f"# nodes: {g.node_count}"]
    lines += [f"{u} {v}" for u, v in g.edges]
    Path(path).write_text("\n".join(lines) + "\n")


def load_edge_list(path) -> PatternGraph:
    """Parse the edge-list format; node count defaults to max id + 1 unless a
    '# nodes:' comment says otherwise."""
    edges = []
    node_count = None
    kind = "custom"
    for ln, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("nodes:"):
                node_count = int(body.split(":", 1)[1])
            elif body.startswith("kind:"):
                kind = body.split(":", 1)[1].strip()
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"{path}:{ln}: expected 'u v', got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise ValueError(f"{path}:{ln}: non-integer node id in {raw!r}") from exc
        edges.append((u, v))
    if not edges:
        raise ValueError(f"{path}: no edges found")
    if node_count is None:
        node_count = max(max(u, v) for u, v in edges) + 1
    return PatternGraph(node_count=node_count, edges=tuple(edges), kind=kind)
