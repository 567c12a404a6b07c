"""GF(2) boundary-matrix reduction with the clearing optimization.

Dimensions are processed top-down: reducing the tetrahedron boundary first
identifies every triangle that gives birth to a 2-dimensional class, and
those columns can be skipped ("cleared") in the triangle reduction, which
cuts the second pass from all triangles down to the H1 killers.  Columns are
kept sparse (ascending row indices) in one shared pool, indexed by the pivot
row that owns them: a column is only ever stored once, when it claims a
pivot, and never modified afterwards.

Connected components (dimension 0) use union-find over edges in filtration
order instead of matrix reduction; the resulting diagram is identical.
"""
from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True, inline="always")
def _merge_xor(a, na, pool, off, nb, out):
    """Symmetric difference of ascending a[:na] and pool[off:off+nb] into out."""
    i = 0
    j = 0
    k = 0
    while i < na and j < nb:
        x = a[i]
        y = pool[off + j]
        if x < y:
            out[k] = x
            i += 1
            k += 1
        elif x > y:
            out[k] = y
            j += 1
            k += 1
        else:
            i += 1
            j += 1
    while i < na:
        out[k] = a[i]
        i += 1
        k += 1
    while j < nb:
        out[k] = pool[off + j]
        j += 1
        k += 1
    return k


@njit(cache=True)
def _reduce_tets(tet_verts, b2, b3, tri_pos, n_tris):
    """Reduce the tetrahedron->triangle boundary matrix.

    tet_verts: (Q, 4) sorted vertex tuples in filtration (column) order.
    tri_pos: colex-rank -> sorted triangle index lookup.
    Returns (pair_rows, pair_cols, n_pairs, tri_paired) where each pair maps
    a pivot triangle (row) to the tetrahedron (column) that kills its class.
    """
    n_cols = tet_verts.shape[0]
    pivot_owner = np.full(n_tris, -1, np.int64)
    col_start = np.full(n_tris, -1, np.int64)
    col_len = np.zeros(n_tris, np.int64)
    pool = np.empty(1 << 20, np.int32)
    pool_n = 0
    pair_rows = np.empty(n_tris, np.int64)
    pair_cols = np.empty(n_tris, np.int64)
    n_pairs = 0
    cur = np.empty(n_tris + 4, np.int32)
    tmp = np.empty(n_tris + 4, np.int32)
    for j in range(n_cols):
        a = tet_verts[j, 0]
        b = tet_verts[j, 1]
        c = tet_verts[j, 2]
        d = tet_verts[j, 3]
        r0 = tri_pos[b3[c] + b2[b] + a]  # facet (a,b,c)
        r1 = tri_pos[b3[d] + b2[b] + a]  # facet (a,b,d)
        r2 = tri_pos[b3[d] + b2[c] + a]  # facet (a,c,d)
        r3 = tri_pos[b3[d] + b2[c] + b]  # facet (b,c,d)
        # sort the four row indices ascending (sorting network)
        if r0 > r1:
            r0, r1 = r1, r0
        if r2 > r3:
            r2, r3 = r3, r2
        if r0 > r2:
            r0, r2 = r2, r0
        if r1 > r3:
            r1, r3 = r3, r1
        if r1 > r2:
            r1, r2 = r2, r1
        cur[0] = r0
        cur[1] = r1
        cur[2] = r2
        cur[3] = r3
        n_cur = 4
        while n_cur > 0:
            low = cur[n_cur - 1]
            own = pivot_owner[low]
            if own < 0:
                pivot_owner[low] = j
                while pool_n + n_cur > pool.size:
                    grown = np.empty(pool.size * 2, np.int32)
                    grown[:pool_n] = pool[:pool_n]
                    pool = grown
                col_start[low] = pool_n
                col_len[low] = n_cur
                pool[pool_n : pool_n + n_cur] = cur[:n_cur]
                pool_n += n_cur
                pair_rows[n_pairs] = low
                pair_cols[n_pairs] = j
                n_pairs += 1
                break
            n_cur = _merge_xor(cur, n_cur, pool, col_start[low], col_len[low], tmp)
            swap = cur
            cur = tmp
            tmp = swap
    tri_paired = pivot_owner >= 0
    return pair_rows[:n_pairs], pair_cols[:n_pairs], tri_paired


@njit(cache=True)
def _reduce_tris(tri_verts, skip, b2, edge_pos, n_edges):
    """Reduce the triangle->edge boundary matrix, skipping cleared columns.

    Returns (pair_rows, pair_cols, edge_paired, positive_cols): pairs map a
    pivot edge to its killing triangle; positive_cols marks non-skipped
    triangle columns that reduced to zero (births of 2-dimensional classes).
    """
    n_cols = tri_verts.shape[0]
    pivot_owner = np.full(n_edges, -1, np.int64)
    col_start = np.full(n_edges, -1, np.int64)
    col_len = np.zeros(n_edges, np.int64)
    pool = np.empty(1 << 16, np.int32)
    pool_n = 0
    pair_rows = np.empty(n_edges, np.int64)
    pair_cols = np.empty(n_edges, np.int64)
    n_pairs = 0
    positive_cols = np.zeros(n_cols, np.bool_)
    cur = np.empty(n_edges + 3, np.int32)
    tmp = np.empty(n_edges + 3, np.int32)
    for j in range(n_cols):
        if skip[j]:
            continue
        a = tri_verts[j, 0]
        b = tri_verts[j, 1]
        c = tri_verts[j, 2]
        r0 = edge_pos[b2[b] + a]  # edge (a,b)
        r1 = edge_pos[b2[c] + a]  # edge (a,c)
        r2 = edge_pos[b2[c] + b]  # edge (b,c)
        if r0 > r1:
            r0, r1 = r1, r0
        if r1 > r2:
            r1, r2 = r2, r1
        if r0 > r1:
            r0, r1 = r1, r0
        cur[0] = r0
        cur[1] = r1
        cur[2] = r2
        n_cur = 3
        while n_cur > 0:
            low = cur[n_cur - 1]
            own = pivot_owner[low]
            if own < 0:
                pivot_owner[low] = j
                while pool_n + n_cur > pool.size:
                    grown = np.empty(pool.size * 2, np.int32)
                    grown[:pool_n] = pool[:pool_n]
                    pool = grown
                col_start[low] = pool_n
                col_len[low] = n_cur
                pool[pool_n : pool_n + n_cur] = cur[:n_cur]
                pool_n += n_cur
                pair_rows[n_pairs] = low
                pair_cols[n_pairs] = j
                n_pairs += 1
                break
            n_cur = _merge_xor(cur, n_cur, pool, col_start[low], col_len[low], tmp)
            swap = cur
            cur = tmp
            tmp = swap
        if n_cur == 0:
            positive_cols[j] = True
    edge_paired = pivot_owner >= 0
    return pair_rows[:n_pairs], pair_cols[:n_pairs], edge_paired, positive_cols


@njit(cache=True)
def _find(parent, x):
    root = x
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        nxt = parent[x]
        parent[x] = root
        x = nxt
    return root


@njit(cache=True)
def _h0_union_find(edge_verts, edge_values, n_vertices):
    """Union-find over edges in filtration order.

    Returns (merge_deaths, positive_edge, n_components): a death per merging
    edge, a flag for cycle-creating edges, and the final component count.
    """
    parent = np.arange(n_vertices)
    n_edges = edge_verts.shape[0]
    merge_deaths = np.empty(n_edges)
    positive_edge = np.zeros(n_edges, np.bool_)
    n_merges = 0
    for e in range(n_edges):
        ru = _find(parent, edge_verts[e, 0])
        rv = _find(parent, edge_verts[e, 1])
        if ru == rv:
            positive_edge[e] = True
        else:
            if ru < rv:
                parent[rv] = ru
            else:
                parent[ru] = rv
            merge_deaths[n_merges] = edge_values[e]
            n_merges += 1
    return merge_deaths[:n_merges], positive_edge, n_vertices - n_merges


def _positions_from_ranks(verts: np.ndarray, ranks_size: int, rank_of) -> np.ndarray:
    """Lookup table colex-rank -> sorted index for one simplex dimension."""
    pos = np.full(ranks_size, -1, dtype=np.int64)
    pos[rank_of(verts)] = np.arange(verts.shape[0], dtype=np.int64)
    return pos


def reduce_complex(cx):
    """Run the full persistence reduction on a FilteredComplex.

    Returns a dict of raw pairing data consumed by diagram assembly:
    per-dimension finite pairs as (birth_value, death_value) arrays plus
    essential birth values, all before zero-persistence filtering.
    """
    p = cx.n_vertices
    nv = np.arange(p + 1, dtype=np.int64)
    b2 = nv * (nv - 1) // 2
    b3 = nv * (nv - 1) * (nv - 2) // 6

    out = {
        "h0_deaths": np.empty(0),
        "n_components": p,
        "h1_pairs": (np.empty(0), np.empty(0)),
        "h1_essential_births": np.empty(0),
        "h2_pairs": (np.empty(0), np.empty(0)),
        "h2_essential_births": np.empty(0),
    }

    n_edges = cx.edge_verts.shape[0]
    if n_edges:
        deaths, positive_edge, n_comp = _h0_union_find(
            cx.edge_verts.astype(np.int64), cx.edge_values, p
        )
        out["h0_deaths"] = deaths
        out["n_components"] = int(n_comp)
    else:
        positive_edge = np.zeros(0, dtype=bool)

    if cx.max_dim < 1:
        return out

    n_tris = cx.tri_verts.shape[0]
    tri_paired = np.zeros(n_tris, dtype=bool)
    if cx.max_dim >= 2 and cx.tet_verts.shape[0]:
        tri_pos = _positions_from_ranks(
            cx.tri_verts,
            int(b3[p]),
            lambda v: b3[v[:, 2]] + b2[v[:, 1]] + v[:, 0],
        )
        rows, cols, tri_paired = _reduce_tets(
            cx.tet_verts.astype(np.int64), b2, b3, tri_pos, n_tris
        )
        out["h2_pairs"] = (cx.tri_values[rows], cx.tet_values[cols])

    if n_tris:
        edge_pos = _positions_from_ranks(
            cx.edge_verts,
            int(b2[p]),
            lambda v: b2[v[:, 1]] + v[:, 0],
        )
        rows, cols, edge_paired, positive_tris = _reduce_tris(
            cx.tri_verts.astype(np.int64), tri_paired, b2, edge_pos, n_edges
        )
        out["h1_pairs"] = (cx.edge_values[rows], cx.tri_values[cols])
    else:
        edge_paired = np.zeros(n_edges, dtype=bool)
        positive_tris = np.zeros(n_tris, dtype=bool)

    # cycle-creating edges never killed by a triangle: essential 1-classes
    out["h1_essential_births"] = cx.edge_values[positive_edge & ~edge_paired]
    if cx.max_dim >= 2:
        # 2-class births neither killed by a tetrahedron nor cleared
        out["h2_essential_births"] = cx.tri_values[positive_tris]
    return out
