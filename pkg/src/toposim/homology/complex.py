"""Vietoris-Rips filtration built from a distance matrix.

A simplex enters the filtration at its diameter (max pairwise distance), so
enumerating simplices up to dimension max_dim + 1 under a threshold and
sorting each dimension by (value, lexicographic tuple) yields the filtration
order.  Enumeration is numba-compiled: at P = 153 the top dimension holds
~22M tetrahedra.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

_MAX_TOP_SIMPLICES = 300_000_000  # memory guard for the (P choose 4) explosion


@njit(cache=True)
def _count_triangles(d, thr):
    p = d.shape[0]
    n = 0
    for i in range(p - 2):
        for j in range(i + 1, p - 1):
            dij = d[i, j]
            if dij > thr:
                continue
            for k in range(j + 1, p):
                m = dij
                if d[i, k] > m:
                    m = d[i, k]
                if d[j, k] > m:
                    m = d[j, k]
                if m <= thr:
                    n += 1
    return n


@njit(cache=True)
def _fill_triangles(d, thr, verts, vals):
    p = d.shape[0]
    n = 0
    for i in range(p - 2):
        for j in range(i + 1, p - 1):
            dij = d[i, j]
            if dij > thr:
                continue
            for k in range(j + 1, p):
                m = dij
                if d[i, k] > m:
                    m = d[i, k]
                if d[j, k] > m:
                    m = d[j, k]
                if m <= thr:
                    verts[n, 0] = i
                    verts[n, 1] = j
                    verts[n, 2] = k
                    vals[n] = m
                    n += 1
    return n


@njit(cache=True)
def _count_tets(d, thr):
    p = d.shape[0]
    n = 0
    for i in range(p - 3):
        for j in range(i + 1, p - 2):
            dij = d[i, j]
            if dij > thr:
                continue
            for k in range(j + 1, p - 1):
                m3 = dij
                if d[i, k] > m3:
                    m3 = d[i, k]
                if d[j, k] > m3:
                    m3 = d[j, k]
                if m3 > thr:
                    continue
                for l in range(k + 1, p):
                    m = m3
                    if d[i, l] > m:
                        m = d[i, l]
                    if d[j, l] > m:
                        m = d[j, l]
                    if d[k, l] > m:
                        m = d[k, l]
                    if m <= thr:
                        n += 1
    return n


@njit(cache=True)
def _fill_tets(d, thr, verts, vals):
    p = d.shape[0]
    n = 0
    for i in range(p - 3):
        for j in range(i + 1, p - 2):
            dij = d[i, j]
            if dij > thr:
                continue
            for k in range(j + 1, p - 1):
                m3 = dij
                if d[i, k] > m3:
                    m3 = d[i, k]
                if d[j, k] > m3:
                    m3 = d[j, k]
                if m3 > thr:
                    continue
                for l in range(k + 1, p):
                    m = m3
                    if d[i, l] > m:
                        m = d[i, l]
                    if d[j, l] > m:
                        m = d[j, l]
                    if d[k, l] > m:
                        m = d[k, l]
                    if m <= thr:
                        verts[n, 0] = i
                        verts[n, 1] = j
                        verts[n, 2] = k
                        verts[n, 3] = l
                        vals[n] = m
                        n += 1
    return n


@dataclass
class FilteredComplex:
    """Simplices per dimension, each sorted by (filtration value, lex tuple).

    Vertices are implicit (all at value 0).  Within the global filtration
    order ties between dimensions break lower-dimension-first, so every face
    precedes its cofaces.
    """

    n_vertices: int
    max_dim: int
    threshold: float
    edge_verts: np.ndarray  # (E, 2) int32
    edge_values: np.ndarray
    tri_verts: np.ndarray  # (T, 3) int32
    tri_values: np.ndarray
    tet_verts: np.ndarray  # (Q, 4) int32
    tet_values: np.ndarray

    def counts(self) -> tuple[int, int, int, int]:
        return (
            self.n_vertices,
            len(self.edge_values),
            len(self.tri_values),
            len(self.tet_values),
        )

    def simplices(self):
        """All simplices as (vertex tuple, dim, value) in global filtration
        order (value, dim, lex).  Materializes everything: small inputs only."""
        out = [((v,), 0, 0.0) for v in range(self.n_vertices)]
        for verts, vals, dim in (
            (self.edge_verts, self.edge_values, 1),
            (self.tri_verts, self.tri_values, 2),
            (self.tet_verts, self.tet_values, 3),
        ):
            out.extend(
                (tuple(int(x) for x in verts[i]), dim, float(vals[i]))
                for i in range(len(vals))
            )
        out.sort(key=lambda s: (s[2], s[1], s[0]))
        return out


def _sorted_by_value(verts: np.ndarray, vals: np.ndarray):
    # enumeration emits lex order; a stable sort on value keeps lex ties
    order = np.argsort(vals, kind="stable")
    return np.ascontiguousarray(verts[order]), vals[order]


def rips_complex(distance, max_dim: int, threshold: float = 1.0) -> FilteredComplex:
    """Build the Vietoris-Rips filtration of a metric up to max_dim + 1.

    distance must be square, symmetric, nonnegative with a zero diagonal;
    max_dim in {0, 1, 2}; simplices with diameter > threshold are excluded.
    """
    d = np.ascontiguousarray(np.asarray(distance, dtype=np.float64))
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise ValueError(f"distance matrix must be square, got shape {d.shape}")
    p = d.shape[0]
    if p < 1:
        raise ValueError("need at least one point")
    if np.abs(np.diagonal(d)).max(initial=0.0) > 1e-12:
        raise ValueError("distance matrix diagonal must be zero")
    if (d < 0).any():
        raise ValueError("distance entries must be >= 0")
    asym = np.abs(d - d.T).max(initial=0.0)
    if asym > 1e-12:
        raise ValueError(f"distance matrix not symmetric (max deviation {asym:.3g})")
    d = np.triu(d, 1) + np.triu(d, 1).T  # canonicalize tiny asymmetries away
    if max_dim not in (0, 1, 2):
        raise ValueError("max_dim must be 0, 1 or 2")
    if threshold <= 0:
        raise ValueError("threshold must be > 0")
    if max_dim == 2 and p >= 4:
        est = p * (p - 1) * (p - 2) * (p - 3) // 24
        if est > _MAX_TOP_SIMPLICES:
            raise ValueError(
                f"P={p} implies up to {est} tetrahedra; too large for max_dim=2"
            )

    iu, ju = np.triu_indices(p, 1)
    evals_all = d[iu, ju]
    keep = evals_all <= threshold
    edge_verts = np.stack([iu[keep], ju[keep]], axis=1).astype(np.int32)
    edge_values = evals_all[keep]
    edge_verts, edge_values = _sorted_by_value(edge_verts, edge_values)

    tri_verts = np.empty((0, 3), dtype=np.int32)
    tri_values = np.empty(0)
    tet_verts = np.empty((0, 4), dtype=np.int32)
    tet_values = np.empty(0)
    if max_dim >= 1 and p >= 3:
        n = _count_triangles(d, threshold)
        tri_verts = np.empty((n, 3), dtype=np.int32)
        tri_values = np.empty(n)
        _fill_triangles(d, threshold, tri_verts, tri_values)
        tri_verts, tri_values = _sorted_by_value(tri_verts, tri_values)
    if max_dim >= 2 and p >= 4:
        n = _count_tets(d, threshold)
        tet_verts = np.empty((n, 4), dtype=np.int32)
        tet_values = np.empty(n)
        _fill_tets(d, threshold, tet_verts, tet_values)
        tet_verts, tet_values = _sorted_by_value(tet_verts, tet_values)

    return FilteredComplex(
        n_vertices=p,
        max_dim=int(max_dim),
        threshold=float(threshold),
        edge_verts=edge_verts,
        edge_values=edge_values,
        tri_verts=tri_verts,
        tri_values=tri_values,
        tet_verts=tet_verts,
        tet_values=tet_values,
    )
