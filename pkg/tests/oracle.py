"""Independent brute-force oracles used by the test suite.

Everything here is deliberately naive: dense matrices, textbook algorithms,
no shared code with the package under test.
"""
from __future__ import annotations

from itertools import combinations

import numpy as np


# ---------------------------------------------------------------------------
# persistence: full dense boundary-matrix reduction over GF(2)


def naive_persistence(dist, max_dim, threshold=1.0, cap=None):
    """Persistence diagram by global dense column reduction.

    Enumerates every simplex of dimension <= max_dim + 1 whose diameter is
    <= threshold, sorts all of them by (filtration value, dimension,
    lexicographic vertex tuple), builds the single global boundary matrix
    over GF(2) and runs the textbook left-to-right reduction.

    Returns a sorted list of (dim, birth, death, essential) with
    zero-persistence pairs dropped and essential classes capped at `cap`
    (default: threshold).
    """
    dist = np.asarray(dist, dtype=float)
    n = dist.shape[0]
    if cap is None:
        cap = threshold

    simplices = [((v,), 0.0) for v in range(n)]
    for d in range(1, max_dim + 2):
        for verts in combinations(range(n), d + 1):
            diam = max(dist[a, b] for a, b in combinations(verts, 2))
            if diam <= threshold:
                simplices.append((verts, diam))
    simplices.sort(key=lambda s: (s[1], len(s[0]), s[0]))
    index = {verts: i for i, (verts, _) in enumerate(simplices)}

    m = len(simplices)
    B = np.zeros((m, m), dtype=bool)
    for j, (verts, _) in enumerate(simplices):
        if len(verts) == 1:
            continue
        for face in combinations(verts, len(verts) - 1):
            B[index[face], j] = True

    # left-to-right reduction
    owner = {}  # low row -> column
    lows = np.full(m, -1)
    for j in range(m):
        while B[:, j].any():
            low = np.flatnonzero(B[:, j])[-1]
            if low in owner:
                B[:, j] ^= B[:, owner[low]]
            else:
                owner[low] = j
                lows[j] = low
                break

    paired_rows = set(owner.keys())
    features = []
    for j in range(m):
        if lows[j] >= 0:
            i = lows[j]
            dim = len(simplices[i][0]) - 1
            birth, death = simplices[i][1], simplices[j][1]
            if death > birth and dim <= max_dim:
                features.append((dim, birth, death, False))
        elif j not in paired_rows:
            # zero column never used as a pivot row: essential class
            dim = len(simplices[j][0]) - 1
            if dim <= max_dim:
                features.append((dim, simplices[j][1], cap, True))
    # a zero column that *is* some pivot row is a positive simplex whose
    # class dies later; it was already reported through its killer above
    features.sort()
    return features


# ---------------------------------------------------------------------------
# graphs: breadth-first search from scratch


def bfs_hops(n, edges):
    """All-pairs hop counts by repeated BFS over an adjacency list.

    Unreachable pairs are left at -1.
    """
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    out = np.full((n, n), -1, dtype=int)
    for s in range(n):
        out[s, s] = 0
        frontier = [s]
        level = 0
        while frontier:
            level += 1
            nxt = []
            for u in frontier:
                for w in adj[u]:
                    if out[s, w] < 0:
                        out[s, w] = level
                        nxt.append(w)
            frontier = nxt
    return out


# ---------------------------------------------------------------------------
# AR(2): closed-form spectral density from the characteristic roots


def ar2_density_from_roots(root_magnitude, phase, noise_sd, freqs):
    """Spectral density of the AR(2) process written via its roots.

    The transfer function is 1 / ((1 - (z1/M e^{i2 pi psi})) ...) evaluated on
    the unit circle; formulated independently of the package's phi1/phi2 path.
    """
    z = np.exp(-2j * np.pi * np.asarray(freqs))
    r1 = np.exp(2j * np.pi * phase) / root_magnitude
    r2 = np.exp(-2j * np.pi * phase) / root_magnitude
    denom = (1.0 - r1 * z) * (1.0 - r2 * z)
    return noise_sd**2 / np.abs(denom) ** 2


def yule_walker_lag1(phi1, phi2):
    """Lag-1 autocorrelation of a stationary AR(2): rho1 = phi1 / (1 - phi2)."""
    return phi1 / (1.0 - phi2)
