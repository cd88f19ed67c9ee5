"""Exact list colouring: extension, non-extendable precolourings, criticality.

Lists are mappings ``vertex -> iterable of colours``; colours are any
sortable hashables (normally small integers).  Internally every list becomes
a bitmask over the sorted union of all colours and the search works on
those masks.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator, Mapping, Sequence

from .plane_graph import PlaneGraph, bfs_distances, outer_face

ListAssignment = dict[int, frozenset]
Precoloring = dict[int, int]


@dataclass(frozen=True)
class Subgraph:
    """A subgraph ``T`` given by its vertices and edges."""

    vertices: frozenset
    edges: frozenset = frozenset()

    @classmethod
    def path(cls, seq: Sequence[int]) -> "Subgraph":
        return cls(frozenset(seq), frozenset(frozenset(e) for e in zip(seq, seq[1:])))

    @classmethod
    def cycle(cls, seq: Sequence[int]) -> "Subgraph":
        seq = list(seq)
        es = {frozenset((seq[i - 1], seq[i])) for i in range(len(seq))}
        return cls(frozenset(seq), frozenset(es))

    @classmethod
    def induced(cls, g: PlaneGraph, verts: Iterable[int]) -> "Subgraph":
        vs = frozenset(verts)
        es = frozenset(frozenset((u, v)) for u, v in g.edges() if u in vs and v in vs)
        return cls(vs, es)

    def has_edge(self, u: int, v: int) -> bool:
        return frozenset((u, v)) in self.edges


def as_subgraph(t) -> Subgraph:
    if isinstance(t, Subgraph):
        return t
    return Subgraph(frozenset(t))


@dataclass
class CriticalityCertificate:
    # deletion ('edge', u, v) or ('vertex', v) -> witness precolouring of T
    witnesses: dict = field(default_factory=dict)
    missing: list = field(default_factory=list)


def normalize_lists(g: PlaneGraph, lists) -> ListAssignment:
    if isinstance(lists, Mapping):
        items = lists.items()
    else:
        items = enumerate(lists)
    out = {v: frozenset(c) for v, c in items}
    missing = [v for v in range(g.n) if v not in out]
    if missing:
        raise ValueError(f"vertices without a list: {missing[:5]}")
    return out


class _Encoder:
    """Colour <-> bit mapping shared by one call."""

    def __init__(self, lists: ListAssignment, extra: Iterable = ()):
        colors = set(extra)
        for c in lists.values():
            colors |= c
        self.colors = sorted(colors)
        self.bit = {c: i for i, c in enumerate(self.colors)}

    def mask(self, cs: Iterable) -> int:
        m = 0
        for c in cs:
            m |= 1 << self.bit[c]
        return m

    def color(self, mask: int):
        return self.colors[mask.bit_length() - 1]


def _search(adj: Sequence[Sequence[int]], dom: list[int]) -> list[int] | None:
    """Backtracking with minimum remaining values and forward checking.

    ``dom`` holds bitmask domains and is modified in place.  Returns one
    colour mask per vertex or ``None``.
    """
    n = len(dom)
    if any(d == 0 for d in dom):
        return None
    # a vertex with more colours than live neighbours can always be coloured
    # last, so peel such vertices off and search only the core
    done = [False] * n
    deg = [len(a) for a in adj]
    stack = [v for v in range(n) if dom[v].bit_count() > deg[v]]
    peeled = []
    while stack:
        v = stack.pop()
        if done[v]:
            continue
        done[v] = True
        peeled.append(v)
        for w in adj[v]:
            if not done[w]:
                deg[w] -= 1
                if dom[w].bit_count() > deg[w]:
                    stack.append(w)
    result = [0] * n

    def rec(left: int) -> bool:
        if left == 0:
            return True
        best = -1
        bc = 1 << 30
        for v in range(n):
            if not done[v]:
                c = dom[v].bit_count()
                if c < bc:
                    bc, best = c, v
                    if c == 1:
                        break
        v = best
        d = dom[v]
        done[v] = True
        while d:
            bit = d & -d
            d ^= bit
            changed = []
            ok = True
            for w in adj[v]:
                if not done[w] and dom[w] & bit:
                    dom[w] ^= bit
                    changed.append(w)
                    if dom[w] == 0:
                        ok = False
                        break
            if ok:
                result[v] = bit
                if rec(left - 1):
                    return True
            for w in changed:
                dom[w] |= bit
        done[v] = False
        return False

    if not rec(n - len(peeled)):
        return None
    for v in reversed(peeled):
        d = dom[v]
        for w in adj[v]:
            d &= ~result[w]
        result[v] = d & -d
    return result


def colorable_masks(adj: Sequence[Sequence[int]], dom: Sequence[int]) -> bool:
    return _search(adj, list(dom)) is not None


def _fixed_domains(g: PlaneGraph, enc: _Encoder, lists: ListAssignment, fixed: Mapping[int, object]):
    dom = [enc.mask(lists[v]) for v in range(g.n)]
    for v, c in fixed.items():
        if c not in lists[v]:
            raise ValueError(f"fixed colour {c!r} of vertex {v} is not in its list")
        dom[v] = 1 << enc.bit[c]
    return dom


def _precheck_fixed(g: PlaneGraph, fixed: Mapping[int, object]) -> bool:
    for v, c in fixed.items():
        for w in g.rotations[v]:
            if w in fixed and fixed[w] == c:
                return False
    return True


def solve_extension(g: PlaneGraph, lists, fixed: Mapping[int, object] | None = None) -> dict | None:
    """An L-colouring of ``g`` agreeing with ``fixed``, or ``None`` if none exists.

    Raises :class:`ValueError` when a fixed colour is missing from its list.
    A ``fixed`` that is improper on ``g`` simply has no extension.
    """
    lists = normalize_lists(g, lists)
    fixed = dict(fixed or {})
    enc = _Encoder(lists)
    dom = _fixed_domains(g, enc, lists, fixed)
    if not _precheck_fixed(g, fixed):
        return None
    res = _search(g.rotations, dom)
    if res is None:
        return None
    return {v: enc.color(res[v]) for v in range(g.n)}


def is_proper_coloring(g: PlaneGraph, coloring: Mapping[int, object], lists=None) -> bool:
    if lists is not None:
        lists = normalize_lists(g, lists)
    for v in range(g.n):
        if v not in coloring:
            return False
        if lists is not None and coloring[v] not in lists[v]:
            return False
    return all(coloring[u] != coloring[v] for u, v in g.edges())


def reduced_lists(g: PlaneGraph, lists, fixed: Mapping[int, object]) -> ListAssignment:
    """Remove colours of precoloured neighbours; precoloured vertices become singletons."""
    lists = normalize_lists(g, lists)
    out = {}
    for v in range(g.n):
        if v in fixed:
            out[v] = frozenset([fixed[v]])
        else:
            taken = {fixed[w] for w in g.rotations[v] if w in fixed}
            out[v] = lists[v] - taken
    return out


def precolorings(t: Subgraph, lists: ListAssignment) -> Iterator[Precoloring]:
    """All L-colourings of ``t`` (proper on the edges of ``t`` only)."""
    verts = sorted(t.vertices)
    nbrs = {v: [w for w in verts if t.has_edge(v, w)] for v in verts}
    cur: dict = {}

    def rec(i):
        if i == len(verts):
            yield dict(cur)
            return
        v = verts[i]
        for c in sorted(lists[v]):
            if any(cur.get(w) == c for w in nbrs[v]):
                continue
            cur[v] = c
            yield from rec(i + 1)
            del cur[v]

    yield from rec(0)


def _extends(adj, enc: _Encoder, base_dom: list[int], phi: Mapping[int, object]) -> bool:
    dom = list(base_dom)
    for v, c in phi.items():
        bit = 1 << enc.bit[c]
        if not dom[v] & bit:
            return False
        dom[v] = bit
    for v, c in phi.items():
        for w in adj[v]:
            if w in phi and phi[w] == c:
                return False
    return _search(adj, dom) is not None


def nonextendable_precolorings(g: PlaneGraph, t, lists) -> list[Precoloring]:
    """The L-colourings of ``t`` that do not extend to ``g``."""
    t = as_subgraph(t)
    lists = normalize_lists(g, lists)
    enc = _Encoder(lists)
    base = [enc.mask(lists[v]) for v in range(g.n)]
    return [phi for phi in precolorings(t, lists) if not _extends(g.rotations, enc, base, phi)]


def _deletions(g: PlaneGraph, t: Subgraph) -> list[tuple]:
    dels = []
    for u, v in g.edges():
        if not t.has_edge(u, v):
            dels.append(("edge", u, v))
    for v in range(g.n):
        if v not in t.vertices and not g.rotations[v]:
            dels.append(("vertex", v))
    return dels


def _adj_without(g: PlaneGraph, deletion) -> list[list[int]]:
    adj = [list(r) for r in g.rotations]
    if deletion[0] == "edge":
        _, u, v = deletion
        adj[u].remove(v)
        adj[v].remove(u)
    return adj


def is_T_critical(g: PlaneGraph, t, lists) -> tuple[bool, CriticalityCertificate]:
    """Decide whether ``g`` is ``t``-critical for ``lists``.

    Only maximal proper subgraphs containing ``t`` need checking: deleting
    one edge outside ``t`` or one isolated vertex outside ``t``.  The
    certificate records one witness precolouring per deletion.
    """
    t = as_subgraph(t)
    lists = normalize_lists(g, lists)
    dels = _deletions(g, t)
    if not dels and all(v in t.vertices for v in range(g.n)):
        raise ValueError("g equals t")
    enc = _Encoder(lists)
    base = [enc.mask(lists[v]) for v in range(g.n)]
    adjs = {d: _adj_without(g, d) for d in dels}
    pending = list(dels)
    cert = CriticalityCertificate()
    for phi in precolorings(t, lists):
        if not pending:
            break
        if _extends(g.rotations, enc, base, phi):
            continue
        still = []
        for d in pending:
            if d[0] == "vertex":
                ok = _extends(adjs[d], enc, _drop_vertex(base, d[1]), phi)
            else:
                ok = _extends(adjs[d], enc, base, phi)
            if ok:
                cert.witnesses[d] = dict(phi)
            else:
                still.append(d)
        pending = still
    cert.missing = pending
    return not pending, cert


def _drop_vertex(base: list[int], v: int) -> list[int]:
    # an isolated vertex only matters through an empty list
    dom = list(base)
    dom[v] = dom[v] or 1
    return dom


def verify_certificate(g: PlaneGraph, t, lists, cert: CriticalityCertificate) -> bool:
    """Re-check every witness with :func:`solve_extension`."""
    t = as_subgraph(t)
    lists = normalize_lists(g, lists)
    for d in _deletions(g, t):
        phi = cert.witnesses.get(d)
        if phi is None:
            return False
        if solve_extension(g, lists, phi) is not None:
            return False
        if d[0] == "edge":
            rot = [tuple(w for w in r if not (u == d[1] and w == d[2]) and not (u == d[2] and w == d[1]))
                   for u, r in enumerate(g.rotations)]
            h = PlaneGraph(tuple(rot), None)
            if solve_extension(h, lists, phi) is None:
                return False
        else:
            keep = [v for v in range(g.n) if v != d[1]]
            idx = {v: i for i, v in enumerate(keep)}
            h = PlaneGraph(tuple(tuple(idx[w] for w in g.rotations[v]) for v in keep), None)
            sub = {idx[v]: lists[v] for v in keep}
            if solve_extension(h, sub, {idx[v]: c for v, c in phi.items()}) is None:
                return False
    return True


def is_valid_assignment(
    g: PlaneGraph,
    p: Sequence[int],
    x: Iterable[int],
    lists,
    m: int = 0,
) -> bool:
    """The size/distance conditions for an ``m``-valid assignment.

    ``p`` is a path on the outer face (possibly empty), ``x`` the set of
    precoloured vertices.  With ``x`` empty and ``m == 0`` this is plain
    validity with respect to ``p``.
    """
    lists = normalize_lists(g, lists)
    P = set(p)
    X = set(x)
    H = set(outer_face(g).vertices) if g.n else set()
    for v in range(g.n):
        size = len(lists[v])
        if v in X:
            if size != 1:
                return False
        elif v in P:
            continue
        elif v in H:
            if not 3 <= size <= 5:
                return False
        elif size != 5:
            return False
    sub = sorted(P | X)
    idx = {v: i for i, v in enumerate(sub)}
    adj = [[idx[w] for w in g.rotations[v] if w in idx] for v in sub]
    enc = _Encoder(lists)
    if sub and not colorable_masks(adj, [enc.mask(lists[v]) for v in sub]):
        return False
    for v in X:
        dist = bfs_distances(g, v)
        for w in range(g.n):
            if w != v and dist[w] <= m:
                if w in P or len(lists[w]) != 5:
                    return False
    return True


def brute_force_colorings(g: PlaneGraph, lists) -> Iterator[dict]:
    """Every L-colouring of ``g`` by plain enumeration (oracle for tests)."""
    lists = normalize_lists(g, lists)
    order = list(range(g.n))
    for combo in product(*(sorted(lists[v]) for v in order)):
        if all(combo[u] != combo[v] for u, v in g.edges()):
            yield dict(zip(order, combo))


# LST/1 list files and v=c precolourings ------------------------------------

def write_lists(lists: Mapping[int, Iterable]) -> str:
    lines = ["LST/1"]
    for v in sorted(lists):
        lines.append(f"{v}:" + "".join(f" {c}" for c in sorted(lists[v])))
    return "\n".join(lines) + "\n"


def read_lists(text: str) -> ListAssignment:
    """Parse ``v: c1 c2 ...`` lines; an optional ``LST/1`` header and blank lines are skipped."""
    from .plane_graph import ParseError

    out: ListAssignment = {}
    for ln, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if not s or s == "LST/1" or s.startswith("#"):
            continue
        head, sep, tail = line.partition(":")
        if not sep:
            raise ParseError("missing ':'", ln, len(line) + 1)
        try:
            v = int(head)
        except ValueError:
            raise ParseError("bad vertex id", ln) from None
        if v in out:
            raise ParseError(f"vertex {v} listed twice", ln)
        cols = []
        col = len(head) + 2
        for tok in tail.split():
            try:
                cols.append(int(tok))
            except ValueError:
                raise ParseError(f"bad colour {tok!r}", ln, line.index(tok, col - 1) + 1) from None
        out[v] = frozenset(cols)
    return out


def read_precoloring(text: str) -> Precoloring:
    """Parse ``v=c`` lines."""
    from .plane_graph import ParseError

    out: Precoloring = {}
    for ln, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        a, sep, b = s.partition("=")
        if not sep:
            raise ParseError("expected v=c", ln)
        try:
            out[int(a)] = int(b)
        except ValueError:
            raise ParseError("expected integers in v=c", ln) from None
    return out


def write_precoloring(phi: Mapping[int, object]) -> str:
    return "".join(f"{v}={phi[v]}\n" for v in sorted(phi))
