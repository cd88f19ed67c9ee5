"""Plane graphs given by rotation systems.

A :class:`PlaneGraph` stores, for every vertex, the clockwise cyclic order of
its neighbours together with one directed edge (a *dart*) that lies on the
outer face.  Faces are never stored; they are traced from the rotations.

Face tracing convention: the successor of the dart ``u -> v`` is
``v -> w`` where ``w`` follows ``u`` in the clockwise rotation at ``v``.  With
clockwise rotations this keeps the traced face on the left of every dart, so
bounded faces come out counter-clockwise and the outer face clockwise.
"""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

Dart = tuple[int, int]
INF = float("inf")


class EmbeddingError(ValueError):
    """Raised for rotation systems that do not describe a simple plane graph."""


@dataclass(frozen=True)
class FaceWalk:
    darts: tuple[Dart, ...]
    # isolated vertices have an empty walk but still own one face
    vertex: int | None = None

    @property
    def length(self) -> int:
        return len(self.darts)

    def __len__(self) -> int:
        return len(self.darts)

    @property
    def vertices(self) -> tuple[int, ...]:
        if not self.darts:
            return () if self.vertex is None else (self.vertex,)
        return tuple(u for u, _ in self.darts)


@dataclass(frozen=True, eq=False)
class PlaneGraph:
    rotations: tuple[tuple[int, ...], ...]
    outer: Dart | int | None = None
    _pos: tuple[dict, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        rot = tuple(tuple(int(w) for w in r) for r in self.rotations)
        object.__setattr__(self, "rotations", rot)
        n = len(rot)
        pos = []
        for v, r in enumerate(rot):
            p = {}
            for i, w in enumerate(r):
                if not 0 <= w < n:
                    raise EmbeddingError(f"vertex {v}: neighbour {w} out of range")
                if w == v:
                    raise EmbeddingError(f"loop at vertex {v}")
                if w in p:
                    raise EmbeddingError(f"repeated neighbour {w} at vertex {v}")
                p[w] = i
            pos.append(p)
        for v, r in enumerate(rot):
            for w in r:
                if v not in pos[w]:
                    raise EmbeddingError(f"asymmetric adjacency {v}-{w}")
        object.__setattr__(self, "_pos", tuple(pos))
        outer = self.outer
        if outer is None and n:
            outer = next(((v, r[0]) for v, r in enumerate(rot) if r), 0)
        if isinstance(outer, (tuple, list)):
            u, v = int(outer[0]), int(outer[1])
            if not (0 <= u < n and v in pos[u]):
                raise EmbeddingError(f"outer dart {u}>{v} is not an edge")
            outer = (u, v)
        elif outer is not None:
            outer = int(outer)
            if not 0 <= outer < n:
                raise EmbeddingError(f"outer vertex {outer} out of range")
        object.__setattr__(self, "outer", outer)

    # basic queries -------------------------------------------------------
    @property
    def n(self) -> int:
        return len(self.rotations)

    @property
    def m(self) -> int:
        return sum(len(r) for r in self.rotations) // 2

    def __len__(self) -> int:
        return self.n

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.rotations[v]

    def degree(self, v: int) -> int:
        return len(self.rotations[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._pos[u]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, r in enumerate(self.rotations) for v in r if u < v]

    def darts(self) -> list[Dart]:
        return [(u, v) for u, r in enumerate(self.rotations) for v in r]

    def succ(self, v: int, u: int) -> int:
        """Neighbour following ``u`` clockwise around ``v``."""
        r = self.rotations[v]
        return r[(self._pos[v][u] + 1) % len(r)]

    def pred(self, v: int, u: int) -> int:
        r = self.rotations[v]
        return r[(self._pos[v][u] - 1) % len(r)]

    def next_dart(self, d: Dart) -> Dart:
        u, v = d
        return (v, self.succ(v, u))

    def adjacency(self) -> list[set[int]]:
        return [set(r) for r in self.rotations]

    def mirror(self) -> "PlaneGraph":
        """Reflection: every rotation reversed, outer face kept."""
        outer = self.outer
        if isinstance(outer, tuple):
            # the reversed dart lies on the same (now mirrored) outer face
            outer = (outer[1], outer[0])
        return PlaneGraph(tuple(tuple(reversed(r)) for r in self.rotations), outer)

    def relabel(self, perm: Sequence[int]) -> "PlaneGraph":
        """Rename vertex ``v`` to ``perm[v]``."""
        n = self.n
        rot: list = [None] * n
        for v, r in enumerate(self.rotations):
            rot[perm[v]] = tuple(perm[w] for w in r)
        outer = self.outer
        if isinstance(outer, tuple):
            outer = (perm[outer[0]], perm[outer[1]])
        elif outer is not None:
            outer = perm[outer]
        return PlaneGraph(tuple(rot), outer)

    # serialization --------------------------------------------------------
    def to_plg(self) -> str:
        return write_plg(self)

    @classmethod
    def from_plg(cls, text: str) -> "PlaneGraph":
        return read_plg(text)

    def __eq__(self, other):
        if not isinstance(other, PlaneGraph):
            return NotImplemented
        return self.rotations == other.rotations and self.outer == other.outer

    def __hash__(self):
        return hash((self.rotations, self.outer))

    def __repr__(self):
        return f"PlaneGraph(n={self.n}, m={self.m}, outer={self.outer})"


# construction helpers -------------------------------------------------------

def from_faces(n: int, faces: Iterable[Sequence[int]], outer: Sequence[int] | None = None) -> PlaneGraph:
    """Build a plane graph from all of its facial cycles.

    Bounded faces are listed counter-clockwise.  ``outer`` is the outer face
    listed in the same left-hand orientation, i.e. the boundary of the disk
    read clockwise.  If it is omitted the first listed face is used as outer
    face.  Every dart must occur in exactly one face and the darts at each
    vertex must form a single rotation cycle.
    """
    faces = [list(f) for f in faces]
    if outer is not None:
        faces.append(list(outer))
        outer_face = list(outer)
    else:
        outer_face = faces[0]
    succ: list[dict[int, int]] = [dict() for _ in range(n)]
    for f in faces:
        k = len(f)
        for i in range(k):
            u, v, w = f[i - 1], f[i], f[(i + 1) % k]
            if u in succ[v]:
                raise EmbeddingError(f"dart {u}>{v} appears in two faces")
            succ[v][u] = w
    rot = []
    for v in range(n):
        s = succ[v]
        if not s:
            rot.append(())
            continue
        start = min(s)
        order = [start]
        w = s[start]
        while w != start:
            order.append(w)
            if len(order) > len(s):
                raise EmbeddingError(f"rotation at {v} is not a single cycle")
            w = s[w]
        if len(order) != len(s):
            raise EmbeddingError(f"rotation at {v} is not a single cycle")
        rot.append(tuple(order))
    anchor: Dart | int
    if len(outer_face) >= 2:
        anchor = (outer_face[0], outer_face[1])
    else:
        anchor = outer_face[0]
    return PlaneGraph(tuple(rot), anchor)


def cycle_graph(k: int) -> PlaneGraph:
    """The cycle ``0 1 ... k-1`` drawn counter-clockwise."""
    if k < 3:
        raise ValueError("a cycle needs at least three vertices")
    return from_faces(k, [list(range(k))], list(reversed(range(k))))


def path_graph(n: int) -> PlaneGraph:
    if n < 1:
        raise ValueError("path needs a vertex")
    rot = []
    for v in range(n):
        rot.append(tuple(w for w in (v - 1, v + 1) if 0 <= w < n))
    return PlaneGraph(tuple(rot), (0, 1) if n > 1 else 0)


def wheel_graph(k: int) -> PlaneGraph:
    """Rim ``0..k-1`` counter-clockwise, hub ``k``."""
    faces = [[k, i, (i + 1) % k] for i in range(k)]
    return from_faces(k + 1, faces, list(reversed(range(k))))


def k4_graph() -> PlaneGraph:
    # outer triangle 0 1 2, vertex 3 inside
    return wheel_graph(3)


# faces ----------------------------------------------------------------------

def trace_faces(g: PlaneGraph) -> list[FaceWalk]:
    """All facial walks; each dart lies in exactly one of them.

    Components are traced independently, so a graph with ``C`` components
    yields ``E - V + 2C`` walks; isolated vertices get an empty walk.
    """
    seen = set()
    faces = []
    for v in range(g.n):
        if not g.rotations[v]:
            faces.append(FaceWalk((), v))
    for d in g.darts():
        if d in seen:
            continue
        walk = []
        e = d
        while e not in seen:
            seen.add(e)
            walk.append(e)
            e = g.next_dart(e)
        if e != d:
            raise EmbeddingError("face tracing did not close up")
        faces.append(FaceWalk(tuple(walk)))
    return faces


def face_of(g: PlaneGraph, d: Dart) -> FaceWalk:
    walk = [d]
    e = g.next_dart(d)
    while e != d:
        walk.append(e)
        e = g.next_dart(e)
        if len(walk) > 2 * g.m:
            raise EmbeddingError("face tracing did not close up")
    return FaceWalk(tuple(walk))


def outer_face(g: PlaneGraph) -> FaceWalk:
    if isinstance(g.outer, tuple):
        return face_of(g, g.outer)
    return FaceWalk((), g.outer)


def outer_vertices(g: PlaneGraph) -> list[int]:
    """Vertices on the outer walk, in walk order, without repetition."""
    out = []
    seen = set()
    for v in outer_face(g).vertices:
        if v not in seen:
            seen.add(v)
            out.append(v)
    return out


def outer_cycle(g: PlaneGraph) -> list[int]:
    """The outer face as a cycle, listed counter-clockwise.

    Raises :class:`ValueError` when the outer walk is not a cycle.
    """
    walk = outer_face(g).vertices
    if len(walk) < 3 or len(set(walk)) != len(walk):
        raise ValueError("outer face is not bounded by a cycle")
    return list(reversed(walk))


def components(g: PlaneGraph) -> list[list[int]]:
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        stack = [s]
        while stack:
            u = stack.pop()
            for w in g.rotations[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def is_connected(g: PlaneGraph) -> bool:
    return g.n <= 1 or len(components(g)) == 1


def face_count(g: PlaneGraph) -> int:
    """Number of faces of the drawing in the plane (or sphere)."""
    c = len(components(g))
    return len(trace_faces(g)) - max(c - 1, 0)


def euler_holds(g: PlaneGraph) -> bool:
    c = len(components(g))
    return g.n - g.m + face_count(g) == 1 + c


def cut_vertices(g: PlaneGraph) -> set[int]:
    """Articulation points (iterative Hopcroft-Tarjan)."""
    n = g.n
    disc = [-1] * n
    low = [0] * n
    cuts = set()
    t = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = t
        t += 1
        children = 0
        stack = [(root, -1, iter(g.rotations[root]))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] == -1:
                    disc[w] = low[w] = t
                    t += 1
                    if v == root:
                        children += 1
                    stack.append((w, v, iter(g.rotations[w])))
                    advanced = True
                    break
                if w != parent:
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                p = stack[-1][0]
                low[p] = min(low[p], low[v])
                if p != root and low[v] >= disc[p]:
                    cuts.add(p)
        if children > 1:
            cuts.add(root)
    return cuts


# distances -----------------------------------------------------------------

def bfs_distances(g: PlaneGraph, source: int) -> list[float]:
    dist: list[float] = [INF] * g.n
    dist[source] = 0
    q = deque([source])
    while q:
        u = q.popleft()
        for w in g.rotations[u]:
            if dist[w] == INF:
                dist[w] = dist[u] + 1
                q.append(w)
    return dist


def distance(g: PlaneGraph, u: int, v: int) -> float:
    for x in (u, v):
        if not 0 <= x < g.n:
            raise ValueError(f"invalid vertex {x}")
    return bfs_distances(g, u)[v]


# cycles, chords, interiors --------------------------------------------------

def _check_cycle(g: PlaneGraph, cycle: Sequence[int]) -> list[int]:
    cyc = list(cycle)
    if len(cyc) > 3 and cyc[0] == cyc[-1]:
        cyc = cyc[:-1]
    if len(cyc) < 3 or len(set(cyc)) != len(cyc):
        raise ValueError("not a cycle")
    for i in range(len(cyc)):
        if not g.has_edge(cyc[i - 1], cyc[i]):
            raise ValueError(f"not a cycle: {cyc[i - 1]}-{cyc[i]} is not an edge")
    return cyc


def chords_and_k_chords(g: PlaneGraph, cycle: Sequence[int], k: int = 1) -> list[tuple[int, ...]]:
    """All chords (``k == 1``) or ``k``-chords of ``cycle``.

    A ``k``-chord is a path with ``k`` edges whose ends lie on the cycle and
    whose inner vertices avoid it; for ``k == 1`` cycle edges are excluded.
    Each path is reported once, oriented from its smaller end.
    """
    if k < 1:
        raise ValueError("k must be positive")
    cyc = _check_cycle(g, cycle)
    on = set(cyc)
    cyc_edges = {frozenset((cyc[i - 1], cyc[i])) for i in range(len(cyc))}
    found = set()

    def extend(path):
        last = path[-1]
        if len(path) == k:
            for w in g.rotations[last]:
                if w in on and (k > 1 or frozenset((path[0], w)) not in cyc_edges):
                    if k > 1 and w == path[0]:
                        continue
                    p = tuple(path) + (w,)
                    found.add(min(p, p[::-1]))
            return
        for w in g.rotations[last]:
            if w not in on and w not in path:
                path.append(w)
                extend(path)
                path.pop()

    for s in cyc:
        extend([s])
    return sorted(found)


def _face_sides(g: PlaneGraph, cyc: list[int]):
    """Split the faces of ``g`` by the Jordan curve ``cyc``.

    Returns ``(face_id, sides)`` where ``face_id`` maps darts to face index and
    ``sides[f]`` is 0 for faces left of ``cyc[0] -> cyc[1]`` and 1 otherwise.
    """
    faces = trace_faces(g)
    face_id = {}
    for i, f in enumerate(faces):
        for d in f.darts:
            face_id[d] = i
    cyc_edges = {frozenset((cyc[i - 1], cyc[i])) for i in range(len(cyc))}
    nbrs = [set() for _ in faces]
    for (u, v), i in face_id.items():
        if frozenset((u, v)) in cyc_edges:
            continue
        j = face_id[(v, u)]
        nbrs[i].add(j)
        nbrs[j].add(i)
    side = [None] * len(faces)
    # walking the cycle forwards, its left faces form one side
    seeds0 = [face_id[(cyc[i], cyc[(i + 1) % len(cyc)])] for i in range(len(cyc))]
    seeds1 = [face_id[(cyc[(i + 1) % len(cyc)], cyc[i])] for i in range(len(cyc))]
    for s, seeds in ((0, seeds0), (1, seeds1)):
        stack = [f for f in seeds if side[f] is None]
        for f in stack:
            side[f] = s
        while stack:
            f = stack.pop()
            for h in nbrs[f]:
                if side[h] is None:
                    side[h] = s
                    stack.append(h)
                elif side[h] != s:
                    raise ValueError("cycle does not separate the faces")
    return faces, face_id, side


def _subgraph_from_darts(g: PlaneGraph, keep_darts: set, keep_vertices: Iterable[int], outer: Dart):
    verts = sorted(set(keep_vertices))
    relabel = {v: i for i, v in enumerate(verts)}
    rot = []
    for v in verts:
        rot.append(tuple(relabel[w] for w in g.rotations[v] if (v, w) in keep_darts))
    anchor = (relabel[outer[0]], relabel[outer[1]])
    return PlaneGraph(tuple(rot), anchor), relabel


def interior_subgraph(g: PlaneGraph, cycle: Sequence[int]):
    """The part of ``g`` drawn in the closed disk bounded by ``cycle``.

    The disk is the side of the cycle not containing the outer face.  The
    result has the cycle as its outer face.  Returns ``(graph, relabel)``
    where ``relabel`` maps old vertex ids to new ones.
    """
    cyc = _check_cycle(g, cycle)
    faces, face_id, side = _face_sides(g, cyc)
    if not isinstance(g.outer, tuple):
        raise ValueError("graph has no outer dart")
    outer_side = side[face_id[g.outer]]
    cyc_edges = {frozenset((cyc[i - 1], cyc[i])) for i in range(len(cyc))}
    on_cycle_outer_dart = [
        d for d in face_id if frozenset(d) in cyc_edges and side[face_id[d]] == outer_side
    ]
    outer_face_walk = faces[face_id[g.outer]]
    if all(frozenset(d) in cyc_edges for d in outer_face_walk.darts) and len(outer_face_walk) == len(cyc):
        # the cycle is the outer boundary itself; its disk is the whole graph
        # unless the caller means the outer side, which we reject
        pass
    inner = 1 - outer_side
    keep_darts = set()
    keep_vertices = set(cyc)
    for i, f in enumerate(faces):
        if side[i] == inner:
            for d in f.darts:
                keep_darts.add(d)
                keep_darts.add((d[1], d[0]))
                keep_vertices.update(d)
    if not keep_darts:
        raise ValueError("cycle bounds the outer side")
    anchor = on_cycle_outer_dart[0]
    return _subgraph_from_darts(g, keep_darts, keep_vertices, anchor)


def cut_along_path(g: PlaneGraph, q: Sequence[int]):
    """Split the vertices of ``q`` (all but its last) into left/right copies.

    ``q[0]`` must lie on the outer face.  Returns ``(graph, q_left, q_right,
    origin)``: the two boundary paths ending in the shared copy of ``q[-1]``
    and, for every new vertex, the original vertex it came from.  The cut
    slit becomes part of the outer face.
    """
    q = list(q)
    k = len(q) - 1
    if k < 1:
        raise ValueError("path must have at least one edge")
    if len(set(q)) != len(q):
        raise ValueError("not a path")
    for a, b in zip(q, q[1:]):
        if not g.has_edge(a, b):
            raise ValueError(f"{a}-{b} is not an edge")
    walk = outer_face(g).darts
    q0 = q[0]
    angle = None
    for i, (a, b) in enumerate(walk):
        if b == q0:
            angle = (a, walk[(i + 1) % len(walk)][1])
            break
    if angle is None:
        raise ValueError("q[0] is not on the outer face")
    index = {v: i for i, v in enumerate(q)}
    # side of each dart leaving a split vertex: 'L' or 'R'
    side: dict[Dart, str] = {}
    for i in range(k):
        v = q[i]
        rot = g.rotations[v]
        nxt = q[i + 1]
        start = g._pos[v][nxt]
        order = [rot[(start + j) % len(rot)] for j in range(1, len(rot))]
        if i == 0:
            # clockwise: q1, R_0 ..., a, [outer face], b, L_0 ...
            a = angle[0]
            s = "L" if a == nxt else "R"
            for w in order:
                side[(v, w)] = s
                if w == a:
                    s = "L"
        else:
            prv = q[i - 1]
            s = "R"
            for w in order:
                if w == prv:
                    s = "L"
                    continue
                side[(v, w)] = s
    n = g.n
    new_id: dict[tuple[int, str], int] = {}
    origin = list(range(n))
    for i in range(k):
        new_id[(q[i], "L")] = q[i]
        new_id[(q[i], "R")] = n + i
        origin.append(q[i])

    def copy_of(v: int, dart_to: int) -> int:
        if v in index and index[v] < k:
            return new_id[(v, side[(v, dart_to)])]
        return v

    rot: list = [None] * (n + k)
    for v in range(n):
        if v in index and index[v] < k:
            continue
        r = []
        for w in g.rotations[v]:
            if w in index and index[w] < k:
                if v == q[k] and w == q[k - 1]:
                    r.extend([n + k - 1, w])
                    continue
                r.append(copy_of(w, v))
            else:
                r.append(w)
        rot[v] = tuple(r)
    for i in range(k):
        v = q[i]
        nxt = q[i + 1]
        rot_v = g.rotations[v]
        start = g._pos[v][nxt]
        order = [rot_v[(start + j) % len(rot_v)] for j in range(1, len(rot_v))]
        right_nxt = n + i + 1 if i + 1 < k else q[k]
        left_nxt = nxt
        rr = [right_nxt]
        ll = []
        for w in order:
            if i > 0 and w == q[i - 1]:
                continue
            target = copy_of(w, v)
            (rr if side[(v, w)] == "R" else ll).append(target)
        if i > 0:
            rr.append(n + i - 1)
            ll = [q[i - 1]] + ll
        ll.append(left_nxt)
        rot[v] = tuple(ll)
        rot[n + i] = tuple(rr)
    q_left = [q[i] for i in range(k)] + [q[k]]
    q_right = [n + i for i in range(k)] + [q[k]]
    anchor = (n + k - 1, q[k])
    return PlaneGraph(tuple(rot), anchor), q_left, q_right, origin


def split_face_to_cycle(g: PlaneGraph, f: FaceWalk | Sequence[Dart]):
    """Turn the closed walk ``f`` into a cycle, keeping what lies to its left.

    Each visit of the walk to a vertex becomes its own vertex, each dart of
    the walk becomes an edge of the new cycle ``C`` (so ``|C| = |f|``), and
    the part of ``g`` drawn on the left of the walk is copied unchanged.  For
    a face of ``g`` nothing lies strictly inside and the result is the bare
    cycle.  Returns ``(graph, cycle, origin)``.
    """
    darts = list(f.darts if isinstance(f, FaceWalk) else f)
    L = len(darts)
    if L < 3:
        if L == 0:
            raise ValueError("empty walk")
    for i in range(L):
        if darts[i][1] != darts[(i + 1) % L][0]:
            raise ValueError("darts do not form a closed walk")
        if not g.has_edge(*darts[i]):
            raise ValueError("walk uses a non-edge")
    # angle at visit i: between incoming darts[i-1] and outgoing darts[i]
    angle_owner: dict[Dart, int] = {}
    for i in range(L):
        u, v = darts[i - 1]
        w = darts[i][1]
        x = g.succ(v, u)
        while x != w:
            angle_owner[(v, x)] = i
            x = g.succ(v, x)
    walk_vertices = {d[0] for d in darts}
    # flood fill the region left of the walk
    inside = set()
    stack = [x for (_, x) in angle_owner if x not in walk_vertices]
    for x in stack:
        inside.add(x)
    while stack:
        u = stack.pop()
        for w in g.rotations[u]:
            if w not in walk_vertices and w not in inside:
                inside.add(w)
                stack.append(w)
    inside_sorted = sorted(inside)
    new = {v: L + i for i, v in enumerate(inside_sorted)}
    origin = [darts[i][0] for i in range(L)] + inside_sorted

    def target(v: int, w: int) -> int:
        # copy of w seen from v (v inside or on the walk)
        if w in new:
            return new[w]
        return angle_owner[(w, v)] if (w, v) in angle_owner else None

    rot: list = [None] * (L + len(inside_sorted))
    for i in range(L):
        u, v = darts[i - 1]
        w = darts[i][1]
        r = [(i - 1) % L]
        x = g.succ(v, u)
        while x != w:
            if x in new:
                r.append(new[x])
            else:
                j = angle_owner.get((x, v))
                if j is None:
                    raise ValueError("chord of the walk region is not supported")
                r.append(j)
            x = g.succ(v, x)
        r.append((i + 1) % L)
        rot[i] = tuple(r)
    for v in inside_sorted:
        r = []
        for w in g.rotations[v]:
            if w in new:
                r.append(new[w])
            else:
                r.append(angle_owner[(w, v)])
        rot[new[v]] = tuple(r)
    g2 = PlaneGraph(tuple(rot), (1 % L, 0))
    return g2, list(range(L)), origin


# canonical form -------------------------------------------------------------

def _code_from(g: PlaneGraph, start: Dart, marks) -> tuple:
    label = {start[0]: 0}
    order = [start[0]]
    first = {start[0]: start[1]}
    code = []
    i = 0
    while i < len(order):
        v = order[i]
        i += 1
        rot = g.rotations[v]
        code.append(-1 - (marks.get(v, 0) if marks else 0))
        if not rot:
            continue
        p = g._pos[v][first[v]]
        for j in range(len(rot)):
            w = rot[(p + j) % len(rot)]
            if w not in label:
                label[w] = len(order)
                order.append(w)
                first[w] = v
            code.append(label[w])
    return tuple(code)


def _component_code(g: PlaneGraph, starts: Iterable[Dart], marks) -> tuple:
    best = None
    for d in starts:
        c = _code_from(g, d, marks)
        if best is None or c < best:
            best = c
    return best


def canonical_form(g: PlaneGraph, marks: Mapping[int, int] | Sequence[int] | None = None) -> bytes:
    """Isomorphism invariant of the plane graph with its outer face.

    Two graphs receive the same string iff some homeomorphism of the sphere,
    possibly orientation reversing, maps one onto the other, keeping the
    outer face and any integer vertex marks.  Components other than the one
    holding the outer dart are compared as free plane graphs.
    """
    if marks is not None and not isinstance(marks, Mapping):
        marks = {v: int(m) for v, m in enumerate(marks)}
    marks = dict(marks or {})
    mir = g.mirror()
    comps = components(g)
    anchor_vertex = g.outer[0] if isinstance(g.outer, tuple) else g.outer
    parts = []
    for comp in comps:
        if len(comp) == 1 and not g.rotations[comp[0]]:
            parts.append((0 if comp[0] == anchor_vertex else 1, (-1 - marks.get(comp[0], 0),)))
            continue
        if anchor_vertex in comp and isinstance(g.outer, tuple):
            walk = outer_face(g).darts
            c1 = _component_code(g, walk, marks)
            c2 = _component_code(mir, [(b, a) for (a, b) in walk], marks)
            parts.append((0, min(c1, c2)))
        else:
            ds = [(u, w) for u in comp for w in g.rotations[u]]
            c1 = _component_code(g, ds, marks)
            c2 = _component_code(mir, ds, marks)
            parts.append((1, min(c1, c2)))
    parts.sort()
    out = []
    for tag, code in parts:
        out.append(str(tag) + ":" + ",".join(map(str, code)))
    return ("|".join(out)).encode()


def are_isomorphic_bruteforce(g1: PlaneGraph, g2: PlaneGraph, marks1=None, marks2=None) -> bool:
    """Plane isomorphism by trying every vertex bijection (tiny graphs only).

    Reflections are allowed and the outer face must map to the outer face.
    """
    from itertools import permutations

    if g1.n != g2.n or g1.m != g2.m:
        return False
    m1 = dict(marks1 or {})
    m2 = dict(marks2 or {})
    outer2 = set(outer_face(g2).darts) if g2.n else set()
    for perm in permutations(range(g2.n)):
        if any(m1.get(v, 0) != m2.get(perm[v], 0) for v in range(g1.n)):
            continue
        if any(not g2.has_edge(perm[u], perm[v]) for u, v in g1.edges()):
            continue
        h = g1.relabel(perm)
        for cand in (h, h.mirror()):
            if not all(_same_cyclic(cand.rotations[v], g2.rotations[v]) for v in range(g2.n)):
                continue
            if not g2.n or set(outer_face(cand).darts) == outer2:
                return True
    return False


def _same_cyclic(r: tuple, target: tuple) -> bool:
    if len(r) != len(target):
        return False
    if not r:
        return True
    try:
        i = target.index(r[0])
    except ValueError:
        return False
    return target[i:] + target[:i] == r


# random plane graphs --------------------------------------------------------

def random_plane_graph(n: int, rng: random.Random, edge_prob: float = 0.5) -> PlaneGraph:
    """Random connected plane graph on ``n`` vertices.

    Grows a random plane tree and then inserts random non-parallel edges
    inside faces, which keeps the embedding planar and simple.
    """
    if n < 1:
        raise ValueError("need at least one vertex")
    rot: list[list[int]] = [[] for _ in range(n)]
    for v in range(1, n):
        u = rng.randrange(v)
        r = rot[u]
        r.insert(rng.randrange(len(r) + 1) if r else 0, v)
        rot[v].append(u)
    g = PlaneGraph(tuple(tuple(r) for r in rot))
    tries = int(edge_prob * 3 * n) + 1
    for _ in range(tries):
        faces = [f for f in trace_faces(g) if len(f) >= 4]
        if not faces:
            break
        f = rng.choice(faces)
        L = len(f)
        i, j = rng.randrange(L), rng.randrange(L)
        if i == j:
            continue
        a_in, a = f.darts[i - 1]
        b_in, b = f.darts[j - 1]
        if a == b or g.has_edge(a, b):
            continue
        g = _insert_edge(g, a, f.darts[i][1], b, f.darts[j][1])
    # pick a random face as the outer one
    faces = trace_faces(g)
    f = rng.choice(faces)
    outer = f.darts[0] if f.darts else f.vertex
    return PlaneGraph(g.rotations, outer)


def _insert_edge(g: PlaneGraph, a: int, a_next: int, b: int, b_next: int) -> PlaneGraph:
    """Add edge ``ab`` inside the face whose walk leaves ``a`` towards ``a_next``."""
    rot = [list(r) for r in g.rotations]
    # in the face, the walk arrives at a and leaves to a_next = succ(a, prev);
    # the new neighbour goes just before a_next in the rotation
    ra = rot[a]
    ra.insert(ra.index(a_next), b)
    rb = rot[b]
    rb.insert(rb.index(b_next), a)
    return PlaneGraph(tuple(tuple(r) for r in rot), g.outer)


# PLG/1 text format -----------------------------------------------------------

def write_plg(g: PlaneGraph) -> str:
    lines = [str(g.n)]
    for v, r in enumerate(g.rotations):
        lines.append(f"{v}:" + "".join(f" {w}" for w in r))
    if isinstance(g.outer, tuple):
        lines.append(f"outer: {g.outer[0]}>{g.outer[1]}")
    elif g.outer is not None:
        lines.append(f"outer: vertex {g.outer}")
    else:
        lines.append("outer: none")
    return "\n".join(lines) + "\n"


class ParseError(ValueError):
    def __init__(self, msg: str, line: int, col: int = 1):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line = line
        self.col = col


def read_plg(text: str) -> PlaneGraph:
    lines = text.splitlines()
    if not lines:
        raise ParseError("empty input", 1)
    try:
        n = int(lines[0].strip())
    except ValueError:
        raise ParseError("expected vertex count", 1) from None
    if len(lines) < n + 2:
        raise ParseError("truncated graph", len(lines) + 1)
    rot = []
    for i in range(n):
        ln = i + 2
        line = lines[i + 1]
        head, sep, tail = line.partition(":")
        if not sep:
            raise ParseError("missing ':'", ln, len(line) + 1)
        try:
            v = int(head)
        except ValueError:
            raise ParseError("bad vertex id", ln) from None
        if v != i:
            raise ParseError(f"expected vertex {i}", ln)
        try:
            rot.append(tuple(int(t) for t in tail.split()))
        except ValueError:
            raise ParseError("bad neighbour list", ln, len(head) + 2) from None
    last = lines[n + 1]
    ln = n + 2
    if not last.startswith("outer:"):
        raise ParseError("expected 'outer:'", ln)
    spec = last[len("outer:"):].strip()
    outer: Dart | int | None
    if spec == "none":
        outer = None
    elif spec.startswith("vertex"):
        try:
            outer = int(spec[len("vertex"):])
        except ValueError:
            raise ParseError("bad outer vertex", ln, 8) from None
    else:
        a, sep, b = spec.partition(">")
        try:
            outer = (int(a), int(b))
        except ValueError:
            raise ParseError("bad outer dart", ln, 8) from None
    try:
        return PlaneGraph(tuple(rot), outer)
    except EmbeddingError as e:
        raise ParseError(str(e), ln) from None
