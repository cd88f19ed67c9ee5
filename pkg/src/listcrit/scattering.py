"""Distance constants for scattered precoloured vertices and a small-scale harness.

``D(M, k)`` is ``M + 2`` for ``k <= 1`` and grows by ``16 k^2`` per step.
A set is M-scattered when its vertices are pairwise at distance at least
``max(D(M, 2M+11), D(M, 2) + D(M, 6) + 1)``; for ``M = 2`` that is 19828.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

from .coloring import normalize_lists, solve_extension
from .plane_graph import INF, PlaneGraph, bfs_distances, from_faces, random_plane_graph


def compute_D(m: int, k: int) -> int:
    if m < 0:
        raise ValueError("m must be nonnegative")
    if k <= 1:
        return m + 2
    # closed form of the recursion: m + 2 + 16 * (sum_{j=2..k} j^2)
    return m + 2 + 16 * (k * (k + 1) * (2 * k + 1) // 6 - 1)


@lru_cache(maxsize=None)
def _D_recursive(m: int, k: int) -> int:
    if k <= 1:
        return m + 2
    return _D_recursive(m, k - 1) + 16 * k * k


@dataclass(frozen=True)
class ScatterParams:
    M: int
    threshold: int


def scatter_threshold(m: int) -> int:
    return max(compute_D(m, 2 * m + 11), compute_D(m, 2) + compute_D(m, 6) + 1)


def scatter_params(m: int) -> ScatterParams:
    return ScatterParams(m, scatter_threshold(m))


def min_pairwise_distance(g: PlaneGraph, x: Iterable[int]) -> float:
    xs = sorted(set(x))
    best = INF
    for i, v in enumerate(xs):
        dist = bfs_distances(g, v)
        for w in xs[i + 1:]:
            best = min(best, dist[w])
    return best


def is_M_scattered(g: PlaneGraph, x: Iterable[int], m: int, threshold: int | None = None) -> bool:
    """Pairwise distance at least the threshold (``scatter_threshold(m)`` by default)."""
    if threshold is None:
        threshold = scatter_threshold(m)
    return min_pairwise_distance(g, x) >= threshold


@dataclass
class AlbertsonReport:
    colorable: bool
    coloring: dict | None
    precolored: list[int]
    min_distance: float
    required_distance: int
    hypothesis_met: bool
    sizes_ok: bool
    # below the true threshold the run is evidence only, never a proof
    label: str = "property evidence"
    counterexample: dict | None = field(default=None)

    def as_dict(self) -> dict:
        md = self.min_distance
        return {
            "label": self.label,
            "colorable": self.colorable,
            "precolored": self.precolored,
            "min_distance": None if md == INF else int(md),
            "required_distance": self.required_distance,
            "hypothesis_met": self.hypothesis_met,
            "sizes_ok": self.sizes_ok,
            "counterexample": self.counterexample,
        }


def albertson_check(g: PlaneGraph, lists, required_distance: int | None = None) -> AlbertsonReport:
    """Colour ``g`` from lists of size one or five and report the hypothesis status.

    ``required_distance`` defaults to the M=2 threshold.  Smaller values turn
    the run into property evidence, which is what the label says unless the
    true threshold is met.
    """
    lists = normalize_lists(g, lists)
    thr = scatter_threshold(2)
    req = thr if required_distance is None else required_distance
    sizes_ok = all(len(lists[v]) in (1, 5) for v in range(g.n))
    pre = sorted(v for v in range(g.n) if len(lists[v]) == 1)
    md = min_pairwise_distance(g, pre)
    hyp = sizes_ok and md >= req
    col = solve_extension(g, lists)
    rep = AlbertsonReport(col is not None, col, pre, md, req, hyp, sizes_ok)
    if hyp and req >= thr:
        rep.label = "theorem instance"
    if hyp and col is None:
        rep.counterexample = {
            "plg": g.to_plg(),
            "lists": {v: sorted(lists[v]) for v in range(g.n)},
        }
    return rep


def random_strip_graph(length: int, rng: random.Random) -> PlaneGraph:
    """Triangulated ladder on ``2 * length`` vertices.

    Top row ``0..length-1``, bottom row ``length..2*length-1``; each square
    gets one of its two diagonals at random.  Its diameter grows linearly,
    which lets far apart precoloured vertices fit on few vertices.
    """
    top = list(range(length))
    bot = [length + i for i in range(length)]
    faces = []
    for i in range(length - 1):
        if rng.random() < 0.5:
            faces += [[bot[i], bot[i + 1], top[i]], [bot[i + 1], top[i + 1], top[i]]]
        else:
            faces += [[bot[i], bot[i + 1], top[i + 1]], [bot[i], top[i + 1], top[i]]]
    outer = top + bot[::-1]
    return from_faces(2 * length, faces, outer)


def random_albertson_instance(n: int, rng: random.Random, min_dist: int = 12, palette: int = 9):
    """Random connected plane graph with a scattered set of size-1 lists.

    Returns ``(g, lists)``.  Half of the graphs are long strips so that more
    than one precoloured vertex fits.  Precoloured vertices are drawn one by
    one among the vertices still at distance at least ``min_dist`` from all
    earlier picks; the rest get 5-lists.
    """
    if rng.random() < 0.5:
        g = random_plane_graph(n, rng, edge_prob=rng.random())
    else:
        g = random_strip_graph(max(2, n // 2), rng)
    chosen: list[int] = []
    far = list(range(g.n))
    while far and len(chosen) < 4:
        v = rng.choice(far)
        chosen.append(v)
        dist = bfs_distances(g, v)
        far = [w for w in far if dist[w] >= min_dist]
    lists = {}
    for v in range(g.n):
        if v in chosen:
            lists[v] = frozenset([rng.randrange(palette)])
        else:
            lists[v] = frozenset(rng.sample(range(palette), 5))
    return g, lists
