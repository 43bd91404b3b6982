"""Independent oracles and fixture builders shared across the test suite.

Everything here is deliberately written against the definitions, not the
library code paths: dense high-precision brute force for the information
measures, exhaustive partition enumeration for modularity, a standalone
union-find for connectivity. Oracles must stay independent of the code they
check.
"""

from __future__ import annotations

import random
from fractions import Fraction
from pathlib import Path

import mpmath
import numpy as np

from citeheat.corpus import AlignedTensor, JournalRegistry

mpmath.mp.dps = 40

LABELS = ("2011", "2012", "2013")


# ---------------------------------------------------------------------------
# Tensor fixtures
# ---------------------------------------------------------------------------

def node_names(n: int) -> list[str]:
    return [f"J{i:03d}" for i in range(n)]


def make_tensor(grids, labels=LABELS) -> AlignedTensor:
    """Aligned tensor from three dense (citing, cited) integer grids."""
    grids = [np.asarray(g, dtype=np.int64) for g in grids]
    n = grids[0].shape[0]
    registry = JournalRegistry.from_names(node_names(n))
    year_cells = []
    for grid in grids:
        cells = {}
        for c in range(n):
            for d in range(n):
                if grid[c, d] > 0:
                    cells[(c, d)] = int(grid[c, d])
        year_cells.append(cells)
    return AlignedTensor.from_year_cells(registry, labels, year_cells)


def random_active_grids(rng: np.random.Generator, n: int, density: float = 0.5,
                        high: int = 30) -> list[np.ndarray]:
    """Three random count grids where every node is citing-active each year."""
    grids = []
    for _ in range(3):
        grid = rng.integers(0, high + 1, size=(n, n))
        grid[rng.random((n, n)) > density] = 0
        for c in range(n):  # keep every node on the citing side
            grid[c, (c + 1) % n] = max(1, int(grid[c, (c + 1) % n]))
        grids.append(grid.astype(np.int64))
    return grids


def write_edge_list(path: Path, cells: dict, comment: str = "") -> None:
    lines = []
    if comment:
        lines.append(f"# {comment}")
    for (citing, cited), count in sorted(cells.items()):
        lines.append(f"{citing}\t{cited}\t{count}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def dyad_fixture_cells() -> dict[str, dict]:
    """12 journals: a stable 10-node background ring plus one dyad whose
    forward link rises 29 -> 54 -> 106 while the reverse stays 5 -> 5 -> 7."""
    background = [f"Bkg{i:02d}" for i in range(10)]
    rising = {"2011": 29, "2012": 54, "2013": 106}
    reverse = {"2011": 5, "2012": 5, "2013": 7}
    years: dict[str, dict] = {}
    for label in LABELS:
        cells = {}
        for i, node in enumerate(background):
            cells[(node, background[(i + 1) % 10])] = 200
        cells[("Pers Med", "Genet Med")] = rising[label]
        cells[("Genet Med", "Pers Med")] = reverse[label]
        years[label] = cells
    return years


# ---------------------------------------------------------------------------
# High-precision information-measure oracles (dense, mpmath)
# ---------------------------------------------------------------------------

def mp_freq(count: int, total: int) -> mpmath.mpf:
    return mpmath.mpf(int(count)) / mpmath.mpf(int(total))


def mp_kl_cell(q, p) -> mpmath.mpf:
    if q == 0:
        return mpmath.mpf(0)
    return q * mpmath.log(q / p, 2)


def oracle_pair(prior_grid: np.ndarray, post_grid: np.ndarray) -> dict:
    """Dense brute-force evaluation of one year-pair transition.

    Returns the per-cell bit matrix (NaN outside the valid mask), the cited
    and citing margin vectors and the grand total, all computed in 40-digit
    arithmetic and cast to float at the end.
    """
    n = prior_grid.shape[0]
    g_prior = int(prior_grid.sum())
    g_post = int(post_grid.sum())
    cells = np.full((n, n), np.nan)
    cited_margin = [mpmath.mpf(0)] * n
    citing_margin = [mpmath.mpf(0)] * n
    grand = mpmath.mpf(0)
    for c in range(n):
        for d in range(n):
            if prior_grid[c, d] <= 0:
                continue
            p = mp_freq(prior_grid[c, d], g_prior)
            q = mp_freq(post_grid[c, d], g_post)
            value = mp_kl_cell(q, p)
            cells[c, d] = float(value)
            citing_margin[c] += value
            cited_margin[d] += value
            grand += value
    return {
        "cells": cells,
        "cited": np.array([float(v) for v in cited_margin]),
        "citing": np.array([float(v) for v in citing_margin]),
        "grand": float(grand),
    }


def oracle_triangle(grids) -> dict:
    """Dense brute-force triangle scores over cells live in all years."""
    g = [int(grid.sum()) for grid in grids]
    n = grids[0].shape[0]
    scores = np.full((n, n), np.nan)
    values = []
    for c in range(n):
        for d in range(n):
            if any(grid[c, d] <= 0 for grid in grids):
                continue
            p = mp_freq(grids[0][c, d], g[0])
            p_mid = mp_freq(grids[1][c, d], g[1])
            q = mp_freq(grids[2][c, d], g[2])
            score = mp_kl_cell(p_mid, p) + mp_kl_cell(q, p_mid) - mp_kl_cell(q, p)
            scores[c, d] = float(score)
            values.append(float(score))
    values = np.array(values)
    return {
        "scores": scores,
        "mean": float(values.mean()) if values.size else float("nan"),
        "sd": float(values.std()) if values.size else float("nan"),
    }


def exact_frequencies(cells: dict) -> dict:
    """Exact-rational relative frequencies of a sparse count map."""
    total = sum(cells.values())
    return {key: Fraction(count, total) for key, count in cells.items()}


def solve_triangle_frequencies(a_bits: float, b_bits: float, c_bits: float):
    """Frequencies (p, p', q) whose three KL terms hit given targets.

    Inverts p'*log2(p'/p) = a, q*log2(q/p') = b, q*log2(q/p) = c in closed
    form: q/p' = (c-b)/a, q = b / log2(q/p'), p from the first equation.
    """
    s = (c_bits - b_bits) / a_bits
    q = b_bits / mpmath.log(s, 2)
    p_mid = q / s
    p = p_mid * mpmath.power(2, -(a_bits / p_mid))
    return float(p), float(p_mid), float(q)


def triangle_anchor_tensor(terms_mbits=(1.251, 2.465, 4.728), grand=10**9):
    """Two-node tensor whose (A, B) cell carries the requested KL terms.

    Counts are the target frequencies scaled to ``grand`` and rounded; the
    (B, A) cell absorbs the remainder so every year totals ``grand``.
    """
    p, p_mid, q = solve_triangle_frequencies(*(t / 1000.0 for t in terms_mbits))
    cell_counts = [round(p * grand), round(p_mid * grand), round(q * grand)]
    grids = []
    for count in cell_counts:
        grid = np.zeros((2, 2), dtype=np.int64)
        grid[0, 1] = count          # (A, B): A cites B
        grid[1, 0] = grand - count  # (B, A) filler keeps the total fixed
        grids.append(grid)
    return make_tensor(grids)


# ---------------------------------------------------------------------------
# Graph oracles
# ---------------------------------------------------------------------------

class UnionFind:
    def __init__(self, items):
        self.parent = {item: item for item in items}

    def find(self, item):
        root = item
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[item] != root:
            self.parent[item], item = root, self.parent[item]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra

    def groups(self):
        out: dict = {}
        for item in self.parent:
            out.setdefault(self.find(item), set()).add(item)
        return sorted((sorted(g) for g in out.values()), key=lambda g: (-len(g), g[0]))


def modularity_oracle(nodes, edges, assignment) -> float:
    """Dense adjacency-matrix modularity: (1/2m) sum_ij (A_ij - k_i k_j / 2m) delta."""
    index = {v: i for i, v in enumerate(nodes)}
    n = len(nodes)
    A = np.zeros((n, n))
    for u, v, w in edges:
        A[index[u], index[v]] += w
        A[index[v], index[u]] += w
    two_m = A.sum()
    if two_m == 0:
        return 0.0
    k = A.sum(axis=1)
    q = 0.0
    for i, u in enumerate(nodes):
        for j, v in enumerate(nodes):
            if assignment[u] == assignment[v]:
                q += A[i, j] - k[i] * k[j] / two_m
    return q / two_m


def all_partitions(items: list):
    """Every set partition of ``items`` (Bell-number many)."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for smaller in all_partitions(rest):
        for i in range(len(smaller)):
            yield smaller[:i] + [smaller[i] + [first]] + smaller[i + 1:]
        yield smaller + [[first]]


def best_partition_q(nodes, edges) -> float:
    """Brute-force maximum modularity over every partition.

    Block-sum evaluation of Q = sum_c [e_c/m - (d_c/2m)^2]; agrees with
    modularity_oracle but avoids rebuilding the adjacency matrix per
    partition (Bell(8) = 4140 of them).
    """
    nodes = list(nodes)
    strength = {v: 0.0 for v in nodes}
    m = 0.0
    for u, v, w in edges:
        m += w
        strength[u] += w
        strength[v] += w
    if m == 0:
        return 0.0
    best = -np.inf
    for blocks in all_partitions(nodes):
        assign = {v: i for i, block in enumerate(blocks) for v in block}
        intra = [0.0] * len(blocks)
        for u, v, w in edges:
            if assign[u] == assign[v]:
                intra[assign[u]] += w
        q = 0.0
        for i, block in enumerate(blocks):
            d = sum(strength[v] for v in block)
            q += intra[i] / m - (d / (2.0 * m)) ** 2
        if q > best:
            best = q
    return best


def random_graph_edges(rng: random.Random, n: int, p: float):
    """G(n, p) with unit weights; may be disconnected or empty."""
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges.append((u, v, 1.0))
    return edges
