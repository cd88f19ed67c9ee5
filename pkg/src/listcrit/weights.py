"""Face/vertex weights and the inequalities evaluated on concrete graphs.

All arithmetic is done with :class:`fractions.Fraction`; a check returns a
boolean together with its slack (right side minus left side).
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .coloring import Subgraph, normalize_lists
from .plane_graph import (
    PlaneGraph,
    cut_vertices,
    is_connected,
    outer_cycle,
    outer_face,
    trace_faces,
)


class HypothesisWarning(UserWarning):
    """A bound was evaluated on an input outside the hypotheses of its statement."""


@dataclass
class WeightReport:
    face_weights: list[tuple[tuple[int, ...], int]]
    vertex_weights: dict[int, int]
    total: int
    bound: Fraction | None = None
    slack: Fraction | None = None
    holds: bool | None = None
    warnings: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "faces": [{"walk": list(w), "weight": x} for w, x in self.face_weights],
            "vertices": {str(v): x for v, x in sorted(self.vertex_weights.items())},
            "total": self.total,
            "bound": None if self.bound is None else str(self.bound),
            "slack": None if self.slack is None else str(self.slack),
            "holds": self.holds,
            "warnings": list(self.warnings),
        }


def _path_vertices(p) -> list[int]:
    if isinstance(p, Subgraph):
        return sorted(p.vertices)
    return list(p)


def compute_weight(g: PlaneGraph, p, lists) -> WeightReport:
    """Weight of ``g`` relative to a subgraph ``p`` of the outer face.

    Internal faces weigh ``|f| - 3``, the outer face 0.  Vertices of ``p``
    weigh 1 when they are cut-vertices, other outer vertices ``|L(v)| - 3``
    and interior vertices 0.
    """
    lists = normalize_lists(g, lists)
    P = _path_vertices(p)
    of = outer_face(g)
    H = set(of.vertices)
    bad = [v for v in P if v not in H]
    if bad:
        raise ValueError(f"vertices {bad} of p are not on the outer face")
    cuts = cut_vertices(g)
    Pset = set(P)
    vw = {}
    for v in range(g.n):
        if v in Pset:
            vw[v] = 1 if v in cuts else 0
        elif v in H:
            vw[v] = len(lists[v]) - 3
        else:
            vw[v] = 0
    fw = []
    for f in trace_faces(g):
        if f.darts and of.darts and of.darts[0] in f.darts:
            continue
        if not f.darts and f.vertex == of.vertex:
            continue
        fw.append((f.vertices, f.length - 3))
    total = sum(vw.values()) + sum(x for _, x in fw)
    return WeightReport(fw, vw, total)


def _is_cycle_plus_chord(g: PlaneGraph, cyc: Sequence[int]) -> bool:
    return g.n == len(cyc) and g.m == len(cyc) + 1


def check_preouf(g: PlaneGraph, lists) -> tuple[bool, Fraction, WeightReport]:
    """Weight plus ``n_int / (2|H| + 2)`` against ``|H| - 9/2``.

    The outer face must be a cycle ``H``.  Hypotheses that cannot be checked
    cheaply, or that fail (``H`` plus a single chord, interior lists shorter
    than 5), are reported as warnings; the inequality is still evaluated.
    """
    lists = normalize_lists(g, lists)
    cyc = outer_cycle(g)
    h = len(cyc)
    rep = compute_weight(g, cyc, lists)
    n_int = g.n - h
    Hs = set(cyc)
    if _is_cycle_plus_chord(g, cyc):
        rep.warnings.append("graph is the outer cycle plus one chord; the bound does not apply")
    if any(len(lists[v]) < 5 for v in range(g.n) if v not in Hs):
        rep.warnings.append("an interior list has fewer than five colours")
    lhs = Fraction(rep.total) + Fraction(n_int, 2 * h + 2)
    rep.bound = Fraction(2 * h - 9, 2)
    rep.slack = rep.bound - lhs
    rep.holds = rep.slack >= 0
    for w in rep.warnings:
        warnings.warn(w, HypothesisWarning, stacklevel=2)
    return rep.holds, rep.slack, rep


def check_prepathw(g: PlaneGraph, p: Sequence[int], lists) -> tuple[bool, Fraction, WeightReport]:
    """Weight against ``len(p) - 2`` where ``len`` counts edges of the path."""
    p = list(p)
    rep = compute_weight(g, p, lists)
    ell = len(p) - 1
    rep.bound = Fraction(ell - 2)
    rep.slack = rep.bound - rep.total
    rep.holds = rep.slack >= 0
    return rep.holds, rep.slack, rep


def check_qsum(h: PlaneGraph) -> tuple[bool, int, int]:
    """Sum of ``|f|^2 - 2`` over all faces against ``4n^2 - 8n + 2``."""
    if not is_connected(h):
        raise ValueError("graph must be connected")
    n = h.n
    lhs = sum(f.length ** 2 - 2 for f in trace_faces(h))
    rhs = 4 * n * n - 8 * n + 2
    return lhs <= rhs, lhs, rhs


def check_size_bounds(g: PlaneGraph, h_or_p, lists=None, mode: str = "connsg") -> tuple[bool, int, int]:
    """Vertex count against ``8 |V(H)|^2`` (connsg) or ``8 l(P)^2`` (boundsize).

    ``h_or_p`` is the precoloured subgraph (vertex set or :class:`Subgraph`)
    in connsg mode, and the path vertex sequence in boundsize mode.
    Returns ``(holds, |V(g)|, bound)``.
    """
    if mode == "connsg":
        verts = h_or_p.vertices if isinstance(h_or_p, Subgraph) else set(h_or_p)
        bound = 8 * len(verts) ** 2
    elif mode == "boundsize":
        p = _path_vertices(h_or_p)
        ell = len(p) - 1
        bound = 8 * ell * ell
        if lists is not None:
            lists = normalize_lists(g, lists)
            three = {v for v in range(g.n) if len(lists[v]) == 3 and v not in set(p)}
            if any(g.has_edge(u, v) for u in three for v in three if u < v):
                warnings.warn("two adjacent vertices with lists of size three", HypothesisWarning, stacklevel=2)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return g.n <= bound, g.n, bound


def path_length(p: Iterable[int]) -> int:
    return len(list(p)) - 1
