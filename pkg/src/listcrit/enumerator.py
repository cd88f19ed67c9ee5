"""Generation of plane graphs that are critical for a precoloured outer cycle or path.

Cycle mode follows the inductive scheme: seeds (a cycle with a chord, or a
cycle with one vertex seeing at least three cycle vertices), smaller
critical graphs pasted into the seed faces, then repeated growth by a
degree-three vertex on three consecutive outer vertices.  Every candidate
goes through cheap necessary conditions and then an exact search for a
list assignment that makes it critical.

Path mode turns cycle catalogs into path catalogs by deleting the inner
vertices of the complementary path, which reduces list sizes of their
neighbours.

Criticality is decided in two independent ways.  Small list patterns are
checked exhaustively over all precolourings up to colour symmetry.  General
list assignments are searched for with a SAT solver and every answer is
turned into a :class:`CriticalityCertificate` that the backtracking solver
re-checks from scratch.
"""
from __future__ import annotations

import itertools
import json
import logging
import time
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

import networkx as nx

from .coloring import CriticalityCertificate, Subgraph, _search, verify_certificate
from .plane_graph import (
    PlaneGraph,
    canonical_form,
    cycle_graph,
    from_faces,
    outer_cycle,
    outer_face,
    trace_faces,
)

log = logging.getLogger(__name__)

EXACT = "exact-critical"
SURVIVOR = "heuristic-survivor"


# --------------------------------------------------------------------------
# budgets and verdicts

@dataclass
class Budget:
    """Resource limits for the list search.

    ``seconds`` bounds the wall time of one enumeration (``None`` means no
    limit); ``max_universe`` caps the number of list colours tried by the
    SAT search and ``sat_rounds`` the refinement rounds per universe.
    """

    seconds: float | None = None
    max_universe: int = 5
    sat_rounds: int = 4000
    _t0: float = field(default=0.0, repr=False)

    def start(self) -> "Budget":
        self._t0 = time.monotonic()
        return self

    def exhausted(self) -> bool:
        return self.seconds is not None and time.monotonic() - self._t0 > self.seconds


@dataclass
class Verdict:
    # True / False when decided, None when the budget ran out first
    critical: bool | None
    method: str
    reason: str = ""
    lists: dict | None = None
    certificate: CriticalityCertificate | None = None

    @property
    def status(self) -> str:
        if self.critical:
            return EXACT
        if self.critical is None:
            return SURVIVOR
        return "not-critical"


# --------------------------------------------------------------------------
# small geometry helpers

def bounded_faces(g: PlaneGraph) -> list[list[int]]:
    """Vertex sequences of the bounded faces, counter-clockwise."""
    ow = set(outer_face(g).darts)
    return [list(f.vertices) for f in trace_faces(g) if f.darts and f.darts[0] not in ow]


def _build(n: int, faces: Iterable[Sequence[int]], cyc_ccw: Sequence[int]) -> PlaneGraph:
    return from_faces(n, faces, list(reversed(cyc_ccw)))


def _key(g: PlaneGraph, marks=None) -> str:
    return canonical_form(g, marks).decode()


def is_near_triangulation(g: PlaneGraph) -> bool:
    return all(len(f) == 3 for f in bounded_faces(g))


def _orientations(cyc: list[int], faces: list[list[int]]):
    k = len(cyc)
    for refl in (False, True):
        for r in range(k):
            c = cyc[r:] + cyc[:r]
            ff = faces
            if refl:
                c = [c[0]] + c[1:][::-1]
                ff = [f[::-1] for f in faces]
            yield c, ff


# --------------------------------------------------------------------------
# seeds, pasting, growth

@dataclass(frozen=True)
class SeedGraph:
    graph: PlaneGraph
    family: str  # "H_A" (cycle plus chord) or "H_B" (cycle plus a vertex)
    length: int


def _chord_seed(k: int, j: int) -> PlaneGraph:
    cyc = list(range(k))
    return _build(k, [cyc[: j + 1], cyc[j:] + [0]], cyc)


def _hub_seed(k: int, nbrs: Sequence[int]) -> PlaneGraph:
    cyc = list(range(k))
    t = len(nbrs)
    faces = []
    for i in range(t):
        a, b = nbrs[i], nbrs[(i + 1) % t]
        seg = [a]
        x = a
        while x != b:
            x = (x + 1) % k
            seg.append(x)
        faces.append([k] + seg)
    return _build(k + 1, faces, cyc)


def generate_seeds(k: int, chordless: bool = False) -> list[SeedGraph]:
    """All seeds with outer cycle length at most ``k``, up to isomorphism."""
    if k < 3:
        raise ValueError("k must be at least 3")
    out = []
    seen = set()
    for L in range(3, k + 1):
        if not chordless:
            for j in range(2, L - 1):
                g = _chord_seed(L, j)
                key = _key(g)
                if key not in seen:
                    seen.add(key)
                    out.append(SeedGraph(g, "H_A", L))
        for t in range(3, L + 1):
            for S in itertools.combinations(range(L), t):
                if S[0] != 0:
                    continue
                g = _hub_seed(L, S)
                key = _key(g)
                if key not in seen:
                    seen.add(key)
                    out.append(SeedGraph(g, "H_B", L))
    return out


def paste_into_faces(
    base: PlaneGraph,
    catalog: Mapping[int, Sequence[PlaneGraph]],
    faces: Sequence[int] | None = None,
) -> list[PlaneGraph]:
    """All graphs obtained by gluing catalog graphs into bounded faces of ``base``.

    ``catalog`` maps an outer cycle length to graphs with that outer cycle.
    Each chosen face is either left alone or filled with one catalog graph in
    any rotation or reflection.  Results are deduplicated by canonical form;
    the unmodified base is always included.  Faces whose boundary is not a
    cycle, or whose length has no catalog graphs, are left alone.
    """
    return list(_paste_iter(base, catalog, faces))


def _fill_options(L: int, catalog) -> list:
    opts = [None]
    for h in catalog.get(L, ()):
        fs = bounded_faces(h)
        cyc = outer_cycle(h)
        seen = set()
        for c, ff in _orientations(cyc, fs):
            sig = (tuple(c), h.n)
            if sig in seen:
                continue
            seen.add(sig)
            opts.append((c, ff, h.n))
    return opts


def _paste_iter(base: PlaneGraph, catalog, faces=None) -> Iterator[PlaneGraph]:
    cyc = outer_cycle(base)
    fs = bounded_faces(base)
    idx = range(len(fs)) if faces is None else faces
    choices = []
    for i, f in enumerate(fs):
        if i in idx and len(set(f)) == len(f):
            choices.append(_fill_options(len(f), catalog))
        else:
            choices.append([None])
    seen = set()
    for combo in itertools.product(*choices):
        n = base.n
        new_faces = []
        for f, opt in zip(fs, combo):
            if opt is None:
                new_faces.append(f)
                continue
            c, ff, hn = opt
            m = {c[j]: f[j] for j in range(len(c))}
            for v in range(hn):
                if v not in m:
                    m[v] = n
                    n += 1
            new_faces.extend([m[v] for v in face] for face in ff)
        g = _build(n, new_faces, cyc)
        key = _key(g)
        if key not in seen:
            seen.add(key)
            yield g


def grow_degree3(g: PlaneGraph) -> list[PlaneGraph]:
    """Add a vertex joined to three consecutive outer vertices, once per position.

    The middle vertex becomes interior and the outer cycle keeps its length.
    """
    try:
        cyc = outer_cycle(g)
    except ValueError:
        return []
    k = len(cyc)
    if k < 3:
        return []
    fs = bounded_faces(g)
    out = []
    seen = set()
    for i in range(k):
        a, b, c = cyc[i - 1], cyc[i], cyc[(i + 1) % k]
        w = g.n
        nf = fs + [[b, a, w], [c, b, w]]
        newc = cyc[:i] + [w] + cyc[i + 1:]
        h = _build(g.n + 1, nf, newc)
        key = _key(h)
        if key not in seen:
            seen.add(key)
            out.append(h)
    return out


# --------------------------------------------------------------------------
# necessary conditions

def _t_vertices(t) -> frozenset:
    if isinstance(t, Subgraph):
        return t.vertices
    return frozenset(t)


def _interior_bound(h: int) -> float:
    return (2 * h + 2) * (h - 4.5)


def heuristic_filters(g: PlaneGraph, t, sizes: Mapping[int, int]) -> tuple[bool, str]:
    """Cheap necessary conditions for criticality; ``(keep, reason)``.

    A vertex outside ``t`` needs degree at least its list size, and the
    vertices whose degree equals their list size induce a graph whose blocks
    are complete graphs or odd cycles.  When ``t`` is the whole outer cycle
    and every other list has size five, the number of interior vertices is
    also bounded in terms of the cycle length.
    """
    T = _t_vertices(t)
    low = []
    for v in range(g.n):
        if v in T:
            continue
        s = sizes[v]
        d = g.degree(v)
        if d < s:
            return False, f"vertex {v} has degree {d} below list size {s}"
        if d == s:
            low.append(v)
    if low:
        G = nx.Graph()
        G.add_nodes_from(low)
        ls = set(low)
        for u in low:
            for w in g.rotations[u]:
                if w in ls:
                    G.add_edge(u, w)
        for comp in nx.biconnected_components(G):
            nn = len(comp)
            mm = G.subgraph(comp).number_of_edges()
            if mm == nn * (nn - 1) // 2:
                continue
            if mm == nn and nn % 2 == 1:
                continue
            return False, f"low-degree block {sorted(comp)} is neither complete nor an odd cycle"
    try:
        cyc = outer_cycle(g)
    except ValueError:
        cyc = None
    if cyc is not None and set(cyc) == T and all(sizes[v] == 5 for v in range(g.n) if v not in T):
        h = len(cyc)
        if h >= 5 and g.n - h > _interior_bound(h):
            return False, "more interior vertices than any critical graph of this outer length allows"
    return True, "keep"


# --------------------------------------------------------------------------
# exhaustive criticality test for one list assignment

class _Instance:
    """Graph split into the precoloured part ``T`` and the rest."""

    def __init__(self, g: PlaneGraph, t_order: Sequence[int], t_edges: set):
        self.g = g
        self.t_order = list(t_order)
        self.T = set(t_order)
        self.t_edges = t_edges
        self.inner = [v for v in range(g.n) if v not in self.T]
        self.idx = {v: i for i, v in enumerate(self.inner)}
        self.iadj = [[self.idx[w] for w in g.rotations[v] if w in self.idx] for v in self.inner]
        self.spokes = [[w for w in g.rotations[v] if w in self.T] for v in self.inner]
        self.deletions = [("edge", u, v) for u, v in g.edges() if frozenset((u, v)) not in t_edges]
        self.chords = [d for d in self.deletions if d[1] in self.T and d[2] in self.T]

    def subgraph(self) -> Subgraph:
        return Subgraph(frozenset(self.T), frozenset(self.t_edges))


def _t_colorings(inst: _Instance, classes: list[list[int]], fresh_base: int) -> Iterator[dict]:
    """Proper colourings of ``T`` up to permutations inside each colour class.

    Colours outside every list are interchangeable; they are numbered from
    ``fresh_base`` in order of first use.
    """
    order = inst.t_order
    pos = {v: i for i, v in enumerate(order)}
    back = [[w for w in inst.g.rotations[v] if w in pos and pos[w] < i and frozenset((v, w)) in inst.t_edges]
            for i, v in enumerate(order)]
    cur = [None] * len(order)
    used = [0] * len(classes)

    def rec(i, nfresh):
        if i == len(order):
            yield {order[j]: cur[j] for j in range(len(order))}
            return
        banned = {cur[pos[w]] for w in back[i]}
        for ci, cl in enumerate(classes):
            u = used[ci]
            for j in range(min(u + 1, len(cl))):
                c = cl[j]
                if c in banned:
                    continue
                cur[i] = c
                if j == u:
                    used[ci] += 1
                    yield from rec(i + 1, nfresh)
                    used[ci] -= 1
                else:
                    yield from rec(i + 1, nfresh)
        for j in range(nfresh + 1):
            c = fresh_base + j
            if c in banned:
                continue
            cur[i] = c
            yield from rec(i + 1, max(nfresh, j + 1))
        cur[i] = None

    yield from rec(0, 0)


def critical_for_lists(inst: _Instance, lists: Mapping[int, frozenset]) -> tuple[bool, dict]:
    """Exhaustive test of ``T``-criticality for fixed lists on the non-``T`` vertices.

    Returns ``(critical, witnesses)`` where ``witnesses`` maps each deletion
    to a precolouring of ``T`` that extends after the deletion only.
    """
    colors = sorted(set().union(*(lists[v] for v in inst.inner))) if inst.inner else []
    bit = {c: 1 << i for i, c in enumerate(colors)}
    lmask = [sum(bit[c] for c in lists[v]) for v in inst.inner]
    sig: dict[tuple, list[int]] = {}
    for c in colors:
        sig.setdefault(tuple(c in lists[v] for v in inst.inner), []).append(c)
    classes = [sig[s] for s in sorted(sig)]
    fresh_base = (max(colors) + 1) if colors else 0
    pending = set(inst.deletions)
    chord_set = set(inst.chords)
    witnesses = {}
    memo: dict = {}
    adj_wo = {}
    for d in inst.deletions:
        _, u, v = d
        if u in inst.idx and v in inst.idx:
            a2 = [list(a) for a in inst.iadj]
            i, j = inst.idx[u], inst.idx[v]
            a2[i].remove(j)
            a2[j].remove(i)
            adj_wo[d] = a2

    def colorable(tag, adj, dom):
        key = (tag, tuple(dom))
        r = memo.get(key)
        if r is None:
            r = _search(adj, list(dom)) is not None
            memo[key] = r
        return r

    for phi in _t_colorings(inst, classes, fresh_base):
        bad = [d for d in inst.chords if phi[d[1]] == phi[d[2]]]
        if len(bad) >= 2:
            continue
        dom = []
        for i, v in enumerate(inst.inner):
            m = lmask[i]
            for h in inst.spokes[i]:
                m &= ~bit.get(phi[h], 0)
            dom.append(m)
        if bad:
            d = bad[0]
            if d in pending and colorable(None, inst.iadj, dom):
                pending.discard(d)
                witnesses[d] = dict(phi)
            continue
        if colorable(None, inst.iadj, dom):
            continue
        for d in list(pending):
            if d in chord_set:
                continue
            _, u, v = d
            if u in inst.T or v in inst.T:
                h, x = (u, v) if u in inst.T else (v, u)
                b = bit.get(phi[h], 0)
                i = inst.idx[x]
                if not b or not lmask[i] & b:
                    continue
                if any(phi[h2] == phi[h] for h2 in inst.spokes[i] if h2 != h):
                    continue
                d2 = list(dom)
                d2[i] |= b
                ok = colorable(None, inst.iadj, d2)
            else:
                ok = colorable(d, adj_wo[d], dom)
            if ok:
                pending.discard(d)
                witnesses[d] = dict(phi)
        if not pending:
            break
    return not pending, witnesses


# --------------------------------------------------------------------------
# SAT search for a list assignment (lazy refinement)

def _sat_search(inst: _Instance, sizes: Mapping[int, int], U: int, budget: Budget):
    """Search lists over ``U`` colours making the instance critical.

    Returns ``("sat", lists, witnesses)``, ``("unsat", None, None)`` or
    ``("unknown", None, None)``.  Interior colourings that defeat a candidate
    witness are added as blocking constraints one at a time.
    """
    from pysat.card import CardEnc, EncType
    from pysat.formula import IDPool
    from pysat.solvers import Solver

    inner = inst.inner
    nI = len(inner)
    T = inst.t_order
    F = U  # a colour outside every list, private to each precoloured vertex
    pool = IDPool()
    L = lambda i, c: pool.id(("L", i, c))
    clauses = []
    for i, v in enumerate(inner):
        enc = CardEnc.equals([L(i, c) for c in range(U)], bound=sizes[v], vpool=pool, encoding=EncType.seqcounter)
        clauses += enc.clauses
    # colours are interchangeable: keep membership columns in decreasing lex order
    rows = sorted(range(nI), key=lambda i: (-sizes[inner[i]], -len(inst.iadj[i]), i))
    for c in range(U - 1):
        prev = None
        for i in rows:
            a, b = L(i, c), L(i, c + 1)
            head = [] if prev is None else [-prev]
            clauses.append(head + [-b, a])
            eq = pool.id(("E", i, c))
            clauses.append(head + [a, b, eq])
            clauses.append(head + [-a, -b, eq])
            prev = eq
    spokes = [(h, i) for i in range(nI) for h in inst.spokes[i]]
    inner_edges = [(i, j) for i in range(nI) for j in inst.iadj[i] if i < j]
    t_pairs = [tuple(e) for e in inst.t_edges]
    normal = []
    for d in inst.deletions:
        _, eu, ev = d
        P = lambda h, c, d=d: pool.id(("P", d, h, c))
        C = lambda i, c, d=d: pool.id(("C", d, i, c))
        for h in T:
            lits = [P(h, c) for c in range(U + 1)]
            clauses += CardEnc.equals(lits, bound=1, vpool=pool, encoding=EncType.pairwise).clauses
        for a, b in t_pairs:
            for c in range(U):
                clauses.append([-P(a, c), -P(b, c)])
        for ch in inst.chords:
            a, b = ch[1], ch[2]
            if ch == d:
                # the deleted chord gets equal ends; two fresh ends share one colour
                for c in range(U + 1):
                    clauses.append([-P(a, c), P(b, c)])
            else:
                for c in range(U):
                    clauses.append([-P(a, c), -P(b, c)])
        for i in range(nI):
            clauses += CardEnc.equals([C(i, c) for c in range(U)], bound=1, vpool=pool, encoding=EncType.pairwise).clauses
            for c in range(U):
                clauses.append([-C(i, c), L(i, c)])
        for i, j in inner_edges:
            if {inner[i], inner[j]} == {eu, ev}:
                continue
            for c in range(U):
                clauses.append([-C(i, c), -C(j, c)])
        for h, i in spokes:
            if {h, inner[i]} == {eu, ev}:
                continue
            for c in range(U):
                clauses.append([-C(i, c), -P(h, c)])
        if d not in inst.chords:
            normal.append(d)
    s = Solver(name="cadical153", bootstrap_with=clauses)
    try:
        for _ in range(budget.sat_rounds):
            if budget.exhausted():
                return "unknown", None, None
            if not s.solve():
                return "unsat", None, None
            model = set(x for x in s.get_model() if x > 0)
            lists = {inner[i]: frozenset(c for c in range(U) if L(i, c) in model) for i in range(nI)}
            wit = {}
            for d in inst.deletions:
                phi = {}
                for j, h in enumerate(T):
                    c = next(c for c in range(U + 1) if pool.id(("P", d, h, c)) in model)
                    phi[h] = c if c < U else U + j
                if d in inst.chords and phi[d[1]] >= U:
                    phi[d[2]] = phi[d[1]]
                wit[d] = phi
            new = []
            for d in normal:
                phi = wit[d]
                dom = []
                for i, v in enumerate(inner):
                    m = 0
                    for c in lists[v]:
                        if all(phi[h] != c for h in inst.spokes[i]):
                            m |= 1 << c
                    dom.append(m)
                res = _search(inst.iadj, dom)
                if res is not None:
                    new.append(tuple(r.bit_length() - 1 for r in res))
            if not new:
                return "sat", lists, wit
            for kappa in set(new):
                for d in normal:
                    clause = [-L(i, kappa[i]) for i in range(nI)]
                    clause += [pool.id(("P", d, h, kappa[i])) for h, i in spokes]
                    s.add_clause(clause)
        return "unknown", None, None
    finally:
        s.delete()


# --------------------------------------------------------------------------
# the combined test

def _instance(g: PlaneGraph, t) -> _Instance:
    if not isinstance(t, Subgraph):
        t = Subgraph.path(list(t))
    # walk along the edges of t so that properness is checked early
    order = []
    seen = set()
    for s in sorted(t.vertices):
        if s in seen:
            continue
        stack = [s]
        while stack:
            v = stack.pop()
            if v in seen:
                continue
            seen.add(v)
            order.append(v)
            stack.extend(sorted((w for w in g.rotations[v] if t.has_edge(v, w) and w not in seen), reverse=True))
    return _Instance(g, order, set(t.edges))


def _full_lists(inst: _Instance, lists: Mapping[int, frozenset], witnesses: Mapping) -> dict:
    out = {v: frozenset(lists[v]) for v in inst.inner}
    allc = set().union(*out.values()) if out else set()
    for phi in witnesses.values():
        allc |= set(phi.values())
    for v in inst.T:
        out[v] = frozenset(allc)
    return out


def _certify(inst: _Instance, lists, witnesses) -> CriticalityCertificate:
    cert = CriticalityCertificate(witnesses=dict(witnesses))
    full = _full_lists(inst, lists, witnesses)
    if not verify_certificate(inst.g, inst.subgraph(), full, cert):
        raise RuntimeError("criticality certificate failed independent verification")
    return cert


def exact_criticality_over_lists(
    g: PlaneGraph,
    t,
    sizes: Mapping[int, int],
    budget: Budget | None = None,
) -> Verdict:
    """Decide whether some lists of the given sizes make ``g`` critical for ``t``.

    ``t`` is the precoloured subgraph: a :class:`Subgraph`, or a vertex
    sequence read as a path.
    Order of attempts: necessary conditions, nested lists ``{0..s-1}``
    (equal lists when all sizes agree), then a SAT search over growing
    colour universes.  Reaching a universe of ``sum(sizes)`` colours without
    success proves non-criticality; running out of budget first gives an
    undecided verdict.
    """
    budget = budget or Budget().start()
    keep, why = heuristic_filters(g, t, sizes)
    if not keep:
        return Verdict(False, "filter", why)
    inst = _instance(g, t)
    if not inst.deletions:
        return Verdict(False, "trivial", "graph equals the precoloured subgraph")
    nested = {v: frozenset(range(sizes[v])) for v in inst.inner}
    ok, wit = critical_for_lists(inst, nested)
    if ok:
        return Verdict(True, "nested", "", nested, _certify(inst, nested, wit))
    if not inst.inner:
        return Verdict(False, "exhaustive", "no vertices outside the precoloured part")
    top = max(sizes[v] for v in inst.inner)
    total = sum(sizes[v] for v in inst.inner)
    if top == total:
        return Verdict(False, "exhaustive", "only one list pattern up to renaming")
    for U in range(top + 1, min(total, budget.max_universe) + 1):
        st, lists, wit = _sat_search(inst, sizes, U, budget)
        if st == "sat":
            return Verdict(True, f"sat-{U}", "", lists, _certify(inst, lists, wit))
        if st == "unknown":
            return Verdict(None, f"sat-{U}", "budget exhausted")
        if U == total:
            return Verdict(False, "sat-complete", f"no lists over {U} colours")
    return Verdict(None, f"sat-{min(total, budget.max_universe)}", "colour universe cap reached")


# --------------------------------------------------------------------------
# catalog entries

@dataclass
class CatalogEntry:
    graph: PlaneGraph
    boundary: tuple[int, ...]  # outer cycle (counter-clockwise) or precoloured path
    mode: str  # "cycle" or "path"
    sizes: dict[int, int]  # list size per vertex, 1 on precoloured vertices
    status: str
    method: str = ""
    lists: dict | None = None
    certificate: CriticalityCertificate | None = None
    key: str = ""

    @property
    def path(self) -> tuple[int, ...]:
        return self.boundary

    @property
    def cycle(self) -> tuple[int, ...]:
        return self.boundary

    @property
    def length(self) -> int:
        return len(self.boundary) if self.mode == "cycle" else len(self.boundary) - 1

    @property
    def interior_count(self) -> int:
        return self.graph.n - len(self.boundary)

    @property
    def precolored(self) -> Subgraph:
        if self.mode == "cycle":
            return Subgraph.cycle(self.boundary)
        return Subgraph.path(self.boundary)

    @property
    def chordless(self) -> bool:
        b = self.boundary
        k = len(b)
        return not any(self.graph.has_edge(b[i], b[j]) for i in range(k) for j in range(i + 2, k)
                       if not (i == 0 and j == k - 1))

    def full_lists(self) -> dict:
        """Witness lists with the precoloured vertices given every colour used."""
        if self.lists is None:
            return None
        inst = _instance(self.graph, self.precolored)
        wit = self.certificate.witnesses if self.certificate else {}
        return _full_lists(inst, self.lists, wit)

    def to_json(self) -> dict:
        cert = None
        if self.certificate is not None:
            cert = [{"deletion": list(d), "precoloring": {str(v): c for v, c in sorted(phi.items())}}
                    for d, phi in sorted(self.certificate.witnesses.items())]
        return {
            "key": self.key,
            "mode": self.mode,
            "boundary": list(self.boundary),
            "vertices": self.graph.n,
            "edges": self.graph.m,
            "plg": self.graph.to_plg(),
            "sizes": {str(v): s for v, s in sorted(self.sizes.items())},
            "status": self.status,
            "method": self.method,
            "near_triangulation": is_near_triangulation(self.graph),
            "lists": None if self.lists is None else {str(v): sorted(c) for v, c in sorted(self.lists.items())},
            "certificate": cert,
        }


@dataclass
class Catalog:
    length: int
    mode: str
    chordless: bool
    entries: list[CatalogEntry]
    survivors: list[CatalogEntry]
    complete: bool
    candidates: int = 0
    seconds: float = 0.0

    def near_triangulations(self) -> list[CatalogEntry]:
        return [e for e in self.entries if is_near_triangulation(e.graph)]

    def counts(self) -> dict:
        return {
            "exact_critical": len(self.entries),
            "near_triangulations": len(self.near_triangulations()),
            "survivors": len(self.survivors),
            "candidates": self.candidates,
            "complete": self.complete,
        }

    def to_json(self) -> dict:
        return {
            "length": self.length,
            "mode": self.mode,
            "chordless": self.chordless,
            "counts": self.counts(),
            "seconds": round(self.seconds, 3),
            "entries": [e.to_json() for e in self.entries],
            "survivors": [e.to_json() for e in self.survivors],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1, sort_keys=True)


def _entry(g: PlaneGraph, boundary, mode: str, sizes: dict, v: Verdict, key: str) -> CatalogEntry:
    full = {b: 1 for b in boundary}
    full.update(sizes)
    return CatalogEntry(g, tuple(boundary), mode, full, v.status, v.method, v.lists, v.certificate, key)


# --------------------------------------------------------------------------
# the enumerator

class Enumerator:
    """Caches catalogs so that each outer length is generated once."""

    def __init__(self, budget: Budget | None = None):
        self.budget = budget or Budget()
        self._chordless: dict[int, Catalog] = {}
        self._all: dict[int, Catalog] = {}
        self._path: dict[int, Catalog] = {}

    # -- cycle mode ---------------------------------------------------------

    def _classify(self, g: PlaneGraph, cyc, key, entries, survivors) -> Verdict:
        sizes = {v: 5 for v in range(g.n) if v not in set(cyc)}
        v = exact_criticality_over_lists(g, Subgraph.cycle(cyc), sizes, self.budget)
        log.info("cycle %d: n=%d %s via %s %s", len(cyc), g.n, v.status, v.method, v.reason)
        if v.critical is True:
            entries.append(_entry(g, cyc, "cycle", sizes, v, key))
        elif v.critical is None:
            survivors.append(_entry(g, cyc, "cycle", sizes, v, key))
        return v

    def chordless(self, k: int) -> Catalog:
        if k in self._chordless:
            return self._chordless[k]
        if k < 3:
            raise ValueError("k must be at least 3")
        prior = {L: self.chordless(L) for L in range(3, k)}
        self.budget.start()
        t0 = time.monotonic()
        paste_cat = {L: [e.graph for e in c.entries] for L, c in prior.items()}
        complete = all(c.complete for c in prior.values())
        entries: list[CatalogEntry] = []
        survivors: list[CatalogEntry] = []
        seen = set()
        queue = []
        for t in range(3, k + 1):
            for S in itertools.combinations(range(k), t):
                if S[0] != 0:
                    continue
                seed = _hub_seed(k, S)
                for g in _paste_iter(seed, paste_cat):
                    key = _key(g)
                    if key in seen:
                        continue
                    seen.add(key)
                    v = self._classify(g, outer_cycle(g), key, entries, survivors)
                    if v.critical:
                        queue.append(g)
        while queue:
            g = queue.pop()
            for h in grow_degree3(g):
                key = _key(h)
                if key in seen:
                    continue
                seen.add(key)
                v = self._classify(h, outer_cycle(h), key, entries, survivors)
                if v.critical:
                    queue.append(h)
        if survivors:
            complete = False
        cat = _finish(Catalog(k, "cycle", True, entries, survivors, complete, len(seen)), t0)
        self._chordless[k] = cat
        return cat

    def all_cycles(self, k: int) -> Catalog:
        """Critical graphs with outer cycle length ``k``, chords allowed."""
        if k in self._all:
            return self._all[k]
        base = self.chordless(k)
        prior = {L: self.all_cycles(L) for L in range(3, k)}
        self.budget.start()
        t0 = time.monotonic()
        paste_cat = {L: [e.graph for e in c.entries] for L, c in prior.items()}
        entries = list(base.entries)
        survivors = list(base.survivors)
        complete = base.complete and all(c.complete for c in prior.values())
        seen = {e.key for e in entries} | {e.key for e in survivors}
        for j in range(2, k - 1):
            for g in _paste_iter(_chord_seed(k, j), paste_cat):
                key = _key(g)
                if key in seen:
                    continue
                seen.add(key)
                self._classify(g, outer_cycle(g), key, entries, survivors)
        if survivors:
            complete = False
        cat = _finish(Catalog(k, "cycle", False, entries, survivors, complete, len(seen)), t0)
        self._all[k] = cat
        return cat

    # -- path mode ----------------------------------------------------------

    def path(self, ell: int) -> Catalog:
        """Critical graphs for a precoloured path with ``ell`` edges.

        Lists outside the path have sizes 3 to 5 with the size-3 vertices
        pairwise non-adjacent; the graphs are cut out of cycle catalogs of
        length ``ell + 2`` to ``2 ell + 1``.
        """
        if ell in self._path:
            return self._path[ell]
        if ell < 1:
            raise ValueError("path length must be positive")
        sources = [self.all_cycles(L) for L in range(ell + 2, 2 * ell + 2)]
        self.budget.start()
        t0 = time.monotonic()
        entries: list[CatalogEntry] = []
        survivors: list[CatalogEntry] = []
        seen = set()
        complete = all(c.complete for c in sources)
        for cat in sources:
            for src in cat.entries:
                for g, p, sizes in _cut_paths(src.graph, list(src.boundary), ell):
                    marks = {v: 1 for v in p}
                    marks.update({v: 10 + s for v, s in sizes.items()})
                    key = _key(g, marks)
                    if key in seen:
                        continue
                    seen.add(key)
                    v = exact_criticality_over_lists(g, Subgraph.path(p), sizes, self.budget)
                    if v.critical:
                        entries.append(_entry(g, p, "path", sizes, v, key))
                    elif v.critical is None:
                        survivors.append(_entry(g, p, "path", sizes, v, key))
        if survivors:
            complete = False
        cat = _finish(Catalog(ell, "path", False, entries, survivors, complete, len(seen)), t0)
        self._path[ell] = cat
        return cat


def _finish(cat: Catalog, t0: float) -> Catalog:
    cat.entries.sort(key=lambda e: e.key)
    cat.survivors.sort(key=lambda e: e.key)
    cat.seconds = time.monotonic() - t0
    return cat


def _cut_paths(g: PlaneGraph, cyc: list[int], ell: int):
    """Delete the inner vertices of the path complementary to each ``ell``-edge subpath."""
    k = len(cyc)
    for i in range(k):
        p = [cyc[(i + j) % k] for j in range(ell + 1)]
        q = [cyc[(i + j) % k] for j in range(ell, k + 1)]  # from p's end back to p's start
        q_inner = q[1:-1]
        Qi = set(q_inner)
        P = set(p)
        okq = True
        for a, w in enumerate(q_inner):
            allowed = {q[a], q[a + 2]}
            for x in g.rotations[w]:
                if x in allowed or (x not in P and x not in set(q)):
                    continue
                okq = False
        if not okq:
            continue
        keep = [v for v in range(g.n) if v not in Qi]
        sizes = {}
        ok = True
        for v in keep:
            if v in P:
                continue
            s = 5 - sum(1 for w in g.rotations[v] if w in Qi)
            if not 3 <= s <= 5:
                ok = False
                break
            sizes[v] = s
        if not ok:
            continue
        three = [v for v, s in sizes.items() if s == 3]
        if len(three) != len(q_inner) - 1:
            continue
        if any(g.has_edge(a, b) for a, b in itertools.combinations(three, 2)):
            continue
        h, ren = _delete_vertices(g, Qi, p)
        yield h, [ren[v] for v in p], {ren[v]: s for v, s in sizes.items()}


def _delete_vertices(g: PlaneGraph, gone: set, p: list[int]):
    keep = [v for v in range(g.n) if v not in gone]
    # path vertices first so that the path reads 0..ell
    order = list(p) + [v for v in keep if v not in set(p)]
    ren = {v: i for i, v in enumerate(order)}
    rot = [()] * len(order)
    for v in order:
        rot[ren[v]] = tuple(ren[w] for w in g.rotations[v] if w not in gone)
    # the outer face now runs along the path and across the former interior
    anchor = (ren[p[1]], ren[p[0]])
    h = PlaneGraph(tuple(rot), anchor)
    return h, ren


_DEFAULT: Enumerator | None = None


def default_enumerator() -> Enumerator:
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = Enumerator()
    return _DEFAULT


def enumerate_critical(
    k: int,
    chordless: bool = True,
    mode: str = "cycle",
    budget: Budget | None = None,
    enumerator: Enumerator | None = None,
) -> Catalog:
    """Catalog of critical graphs.

    In cycle mode ``k`` is the outer cycle length; in path mode it is the
    number of path edges (``chordless`` is then ignored).  A fresh
    :class:`Enumerator` is used when a budget is given, otherwise a shared
    cached one.
    """
    if enumerator is None:
        enumerator = Enumerator(budget) if budget is not None else default_enumerator()
    if mode == "cycle":
        return enumerator.chordless(k) if chordless else enumerator.all_cycles(k)
    if mode == "path":
        return enumerator.path(k)
    raise ValueError(f"unknown mode {mode!r}")
