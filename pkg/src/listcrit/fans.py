"""Fans, fat fans and fan processions on a base path ``x y z``.

Vertex ids of built graphs: ``x, y, z = 0, 1, 2``; the rest of the outer
path from ``x`` to ``z`` (the *rim*) and the apexes of fat fans follow.
Drawings put ``y`` on top and the rim along the bottom from left to right.

The module also holds an exact verifier for the extension behaviour of
processions under dangerous list assignments.  It runs a dynamic program
along the rim over *symbolic* colours: every list is chosen only up to a
permutation of colours that the future cannot distinguish, so a finite
search covers all dangerous assignments up to colour bijection.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Iterable, Iterator, Sequence

from .coloring import Subgraph, nonextendable_precolorings, normalize_lists, solve_extension
from .plane_graph import PlaneGraph, canonical_form, from_faces, outer_cycle, trace_faces, outer_face

FAN = "fan"
FAT = "fat"


@dataclass(frozen=True)
class FanProcessionSpec:
    """Segments ``(kind, order)`` from ``x`` to ``z``; kind is ``fan`` or ``fat``."""

    segments: tuple[tuple[str, int], ...]

    def __post_init__(self):
        segs = tuple((str(k), int(n)) for k, n in self.segments)
        object.__setattr__(self, "segments", segs)
        if not segs:
            raise ValueError("a procession needs at least one segment")
        for kind, n in segs:
            if kind == FAN and n < 0:
                raise ValueError("fan order must be >= 0")
            if kind == FAT and n < 1:
                raise ValueError("fat fan order must be >= 1")
            if kind not in (FAN, FAT):
                raise ValueError(f"unknown segment kind {kind!r}")

    @property
    def is_even(self) -> bool:
        return all(n % 2 == 0 for kind, n in self.segments if kind == FAT)

    @property
    def vertex_count(self) -> int:
        return 3 + (len(self.segments) - 1) + sum(n + (kind == FAT) for kind, n in self.segments)

    def normalized(self) -> "FanProcessionSpec":
        """Merge adjacent fans: ``fan(a), fan(b)`` is the same graph as ``fan(a+b+1)``."""
        out: list[tuple[str, int]] = []
        for kind, n in self.segments:
            if kind == FAN and out and out[-1][0] == FAN:
                out[-1] = (FAN, out[-1][1] + n + 1)
            else:
                out.append((kind, n))
        return FanProcessionSpec(tuple(out))

    @property
    def is_single_fan(self) -> bool:
        return all(kind == FAN for kind, _ in self.segments)

    def __str__(self) -> str:
        return ",".join(f"{'fatfan' if k == FAT else 'fan'}:{n}" for k, n in self.segments)

    @classmethod
    def parse(cls, text: str) -> "FanProcessionSpec":
        segs = []
        for part in text.split(","):
            part = part.strip()
            m = re.fullmatch(r"(fan|fatfan|fat)\s*:\s*(\d+)", part)
            if not m:
                raise ValueError(f"bad segment {part!r}")
            segs.append((FAT if m.group(1) != "fan" else FAN, int(m.group(2))))
        return cls(tuple(segs))


@dataclass(frozen=True)
class Procession:
    graph: PlaneGraph
    spec: FanProcessionSpec
    base: tuple[int, int, int]
    rim: tuple[int, ...]
    # one entry per segment: (start index on rim, end index on rim, apex or None)
    parts: tuple[tuple[int, int, int | None], ...]

    @property
    def interior(self) -> list[int]:
        return [a for _, _, a in self.parts if a is not None]


def build_procession(spec: FanProcessionSpec | Sequence[tuple[str, int]]) -> Procession:
    if not isinstance(spec, FanProcessionSpec):
        spec = FanProcessionSpec(tuple(spec))
    x, y, z = 0, 1, 2
    nxt = 3
    k = len(spec.segments)
    seps = list(range(nxt, nxt + k - 1))
    nxt += k - 1
    ends = [x] + seps + [z]
    faces = []
    rim = [x]
    parts = []
    for i, (kind, n) in enumerate(spec.segments):
        a, b = ends[i], ends[i + 1]
        start = len(rim) - 1
        apex = None
        if kind == FAT:
            apex = nxt
            nxt += 1
            faces.append([y, a, apex])
            faces.append([y, apex, b])
            top = apex
        else:
            top = y
        ws = list(range(nxt, nxt + n))
        nxt += n
        chain = [a] + ws + [b]
        for j in range(len(chain) - 1):
            faces.append([top, chain[j], chain[j + 1]])
        rim.extend(ws + [b])
        parts.append((start, len(rim) - 1, apex))
    outer = [y] + list(reversed(rim))
    g = from_faces(nxt, faces, outer)
    return Procession(g, spec, (x, y, z), tuple(rim), tuple(parts))


def build_fan(n: int) -> Procession:
    if n < 0:
        raise ValueError("fan order must be >= 0")
    return build_procession([(FAN, n)])


def build_fat_fan(n: int) -> Procession:
    if n < 1:
        raise ValueError("fat fan order must be >= 1")
    return build_procession([(FAT, n)])


def _marks(base) -> dict[int, int]:
    return {base[0]: 1, base[1]: 2, base[2]: 3}


def recognize_procession(g: PlaneGraph, base: Sequence[int]) -> FanProcessionSpec | None:
    """The normalized spec of ``g`` as a procession with base ``base``, or ``None``.

    The candidate spec is read off the neighbourhood of the middle base
    vertex along the outer path; it is accepted only if rebuilding it gives
    the same marked plane graph.
    """
    x, y, z = base
    try:
        cyc = outer_cycle(g)
    except ValueError:
        return None
    k = len(cyc)
    if y not in cyc or k < 3:
        return None
    i = cyc.index(y)
    nb = {cyc[i - 1], cyc[(i + 1) % k]}
    if nb != {x, z}:
        return None
    # rim from x to z avoiding y
    if cyc[i - 1] == x:
        rim = [cyc[(i - 1 - j) % k] for j in range(k - 1)]
    else:
        rim = [cyc[(i + 1 + j) % k] for j in range(k - 1)]
    if rim[0] != x or rim[-1] != z:
        return None
    on_rim = set(rim)
    hits = [j for j, v in enumerate(rim) if g.has_edge(v, y)]
    if not hits or hits[0] != 0 or hits[-1] != len(rim) - 1:
        return None
    segs: list[tuple[str, int]] = []
    run = 0
    for a, b in zip(hits, hits[1:]):
        if b == a + 1:
            run += 1
            continue
        if run:
            segs.append((FAN, run - 1))
            run = 0
        common = [w for w in g.rotations[y] if w not in on_rim
                  and g.has_edge(w, rim[a]) and g.has_edge(w, rim[b])]
        if len(common) != 1:
            return None
        segs.append((FAT, b - a - 1))
    if run:
        segs.append((FAN, run - 1))
    try:
        spec = FanProcessionSpec(tuple(segs)).normalized()
    except ValueError:
        return None
    built = build_procession(spec)
    if built.graph.n != g.n or built.graph.m != g.m:
        return None
    if canonical_form(built.graph, _marks(built.base)) != canonical_form(g, _marks(base)):
        return None
    return spec


def is_near_triangulation(g: PlaneGraph) -> bool:
    of = outer_face(g)
    return all(f.length == 3 for f in trace_faces(g) if of.darts[0] not in f.darts)


def is_dangerous(proc: Procession, lists) -> bool:
    lists = normalize_lists(proc.graph, lists)
    outer = set(proc.rim) | set(proc.base)
    for v in range(proc.graph.n):
        if v in proc.base:
            continue
        want = 3 if v in outer else 5
        if len(lists[v]) != want:
            return False
    return True


def dangerous_witness(proc: Procession) -> tuple[dict[int, frozenset], dict[int, int]] | None:
    """A dangerous assignment and one base precolouring that does not extend.

    Colours: ``x`` gets 0, ``y`` gets 1.  Every rim vertex is forced in turn
    (its list holds the colour of ``y``, the forced colour of its
    predecessor and one new colour); an even fat fan forbids one colour at
    its far end, which the next rim list then exploits.  Returns ``None``
    for odd processions, which admit no such witness.
    """
    if not proc.spec.is_even:
        return None
    g = proc.graph
    x, y, z = proc.base
    c = 1
    fresh = iter(range(2, 10 ** 6))
    lists: dict[int, frozenset] = {}
    forced = 0  # colour forced on the current rim vertex
    forbidden_end = None
    rim = proc.rim
    for start, end, apex in proc.parts:
        if apex is None:
            for j in range(start + 1, end + 1):
                v = rim[j]
                if v == z:
                    forbidden_end = forced
                    break
                t = next(fresh)
                lists[v] = frozenset({c, forced, t})
                forced = t
        else:
            q, s1, s2 = next(fresh), next(fresh), next(fresh)
            lists[apex] = frozenset({forced, q, c, s1, s2})
            inner = [rim[j] for j in range(start + 1, end)]
            for w in inner[:-1]:
                lists[w] = frozenset({s1, s2, forced})
            lists[inner[-1]] = frozenset({s1, s2, q})
            if rim[end] == z:
                forbidden_end = q
            else:
                t = next(fresh)
                lists[rim[end]] = frozenset({c, q, t})
                forced = t
    phi = {x: 0, y: c, z: forbidden_end}
    for v, col in phi.items():
        lists[v] = frozenset({col})
    return lists, phi


def count_bad_precolorings(proc: Procession | PlaneGraph, base=None, lists=None) -> tuple[int, list[dict]]:
    """Non-extendable precolourings of the base path.

    Base vertices range over the union of all lists plus enough fresh
    colours, unless ``lists`` already restricts them to at most one colour.
    """
    if isinstance(proc, Procession):
        g = proc.graph
        base = proc.base if base is None else base
    else:
        g = proc
    lists = dict(lists)
    universe = set()
    for v, cs in lists.items():
        if v not in base:
            universe |= set(cs)
    extra = max(universe | {0}) + 1
    full = frozenset(universe | {extra, extra + 1, extra + 2})
    lsts = {}
    for v in range(g.n):
        if v in base and (v not in lists or len(lists[v]) != 1):
            lsts[v] = full
        else:
            lsts[v] = frozenset(lists[v])
    bad = nonextendable_precolorings(g, Subgraph.path(list(base)), lsts)
    return len(bad), bad


def enumerate_specs(max_vertices: int) -> list[FanProcessionSpec]:
    """Normalized specs with at most ``max_vertices`` vertices, sorted."""
    out = set()

    def rec(segs, nv):
        if segs:
            sp = FanProcessionSpec(tuple(segs))
            if sp.vertex_count <= max_vertices:
                out.add(sp.normalized())
        for kind in (FAN, FAT):
            lo = 0 if kind == FAN else 1
            for n in range(lo, max_vertices):
                cost = n + (kind == FAT) + (1 if segs else 0)
                if nv + cost > max_vertices:
                    break
                rec(segs + [(kind, n)], nv + cost)

    rec([], 3)
    return sorted(out, key=lambda s: (s.vertex_count, str(s)))


# exact dynamic program over symbolic colours ------------------------------

_TEMP = 10 ** 6  # ids for apex colours while a fat fan is being processed


def _canon(named: frozenset, sets: Sequence[frozenset], fixed: frozenset = frozenset(), abstract: bool = False):
    """Relabel colours that are neither named nor fixed by their membership signature.

    With ``abstract`` the sets of size >= 2 are collapsed to ANY first; that
    is only sound where the next use of a set is :func:`_step`.
    """
    if abstract:
        sets = [_abs(s) for s in sets]
    free = set()
    for s in sets:
        free |= _colors(s)
    free -= named
    free -= fixed
    sig = {u: tuple(u in s for s in sets) for u in free}
    order = sorted(free, key=lambda u: sig[u])
    base = max(named | {-1}) + 1
    ren = {u: base + i for i, u in enumerate(order)}
    return tuple(s if s == ANY else frozenset(ren.get(u, u) for u in s) for s in sets)


def _choices(classes: list[list[int]], size: int, start_new: int) -> Iterator[frozenset]:
    """Lists of ``size`` colours up to permutations inside each class.

    ``classes`` are groups of interchangeable colours; colours outside all
    classes are interchangeable with brand new ones, numbered from
    ``start_new``.
    """
    caps = [len(c) for c in classes]

    def rec(i, left, acc):
        if i == len(classes):
            yield acc + list(range(start_new, start_new + left))
            return
        for t in range(min(caps[i], left), -1, -1):
            yield from rec(i + 1, left - t, acc + classes[i][:t])

    for lst in rec(0, size, []):
        yield frozenset(lst)


def _classes(named: Iterable[int], sets: Sequence[frozenset], fixed: Iterable[int] = ()) -> list[list[int]]:
    named = set(named) | set(fixed)
    groups: dict[tuple, list[int]] = {}
    allc = set()
    for s in sets:
        allc |= _colors(s)
    for u in sorted(allc - named):
        groups.setdefault(tuple(u in s for s in sets), []).append(u)
    return [[u] for u in sorted(named)] + [groups[k] for k in sorted(groups)]


# A vertex with two or more options never blocks its successor, so sets of
# size >= 2 are collapsed to ANY; only empty sets and singletons keep content.
ANY = frozenset({-1})


def _abs(s) -> frozenset:
    return s if len(s) <= 1 else ANY


def _colors(s) -> frozenset:
    return frozenset() if s is ANY or s == ANY else s


def _step(prev: frozenset, lst: frozenset, banned: Iterable[int]) -> frozenset:
    """Colours of ``lst`` usable next to a vertex whose options are ``prev``."""
    out = set(lst) - set(banned)
    if len(prev) == 0:
        return frozenset()
    if len(prev) == 1 and prev != ANY:
        out -= prev
    return frozenset(out)


@dataclass
class DPResult:
    spec: FanProcessionSpec
    pairs: tuple[tuple[int, int], ...]
    # one entry per reachable end configuration: tuple of bad-colour sets per pair,
    # where the marker "fresh" stands for any colour not seen in the lists
    outcomes: set = field(default_factory=set)
    states_seen: int = 0


def _bad_after_fan(S: frozenset, c: int, cands: Iterable) -> frozenset:
    out = set()
    if S == ANY:
        return frozenset()
    for zeta in cands:
        if zeta == c:
            continue
        if all(p == zeta for p in S):
            out.add(zeta)
    return frozenset(out)


def _bad_after_fat(reach: dict, c: int, cands: Iterable) -> frozenset:
    out = set()
    for zeta in cands:
        if zeta == c:
            continue
        ok = True
        for d, R in reach.items():
            if d == zeta:
                continue
            if R == ANY or any(p != zeta for p in R):
                ok = False
                break
        if ok:
            out.add(zeta)
    return frozenset(out)


def _top(named, sets, exclude=frozenset()) -> int:
    used = set(named)
    for S in sets:
        used |= _colors(S)
    used -= set(exclude)
    return max(used | {0}) + 1


def _keys(yl: frozenset, c: int) -> tuple:
    return tuple(sorted(d for d in yl if d != c))


def _fat_invariant(d, named, yl, pairs, rs) -> tuple:
    # permutation-invariant description of apex colour ``d``
    out = []
    for per, (a, c) in zip(rs, pairs):
        own = None
        hits = 0
        for e, R in zip(_keys(yl, c), per):
            R = _abs(R)
            if R == ANY:
                kind = 0
            elif not R:
                kind = 1
            else:
                (u,) = R
                kind = 2 if u in named else (3 if u == e else (4 if u in yl else 5))
            if e == d:
                own = (kind, next(iter(R)) if kind == 2 else -1)
            if R != ANY and d in R:
                hits += 1
        out.append((own, hits))
    return tuple(out)


_FAT_CACHE: dict = {}


def _canon_fat(named: frozenset, yl: frozenset, pairs, rs) -> tuple:
    """Canonical inner state of a fat fan, also up to permuting apex colours."""
    memo = (named, yl, tuple(pairs), rs)
    hit = _FAT_CACHE.get(memo)
    if hit is not None:
        return hit
    temps = sorted(u for u in yl if u not in named)
    inv = {d: _fat_invariant(d, named, yl, pairs, rs) for d in temps}
    temps.sort(key=lambda d: inv[d])
    groups = []
    for d in temps:
        if groups and inv[groups[-1][0]] == inv[d]:
            groups[-1].append(d)
        else:
            groups.append([d])
    best = None
    for combo in product(*(permutations(gr) for gr in groups)):
        flat_order = [d for gr in combo for d in gr]
        ren = {d: _TEMP + i for i, d in enumerate(flat_order)}
        per_pair = []
        for per, (a, c) in zip(rs, pairs):
            d2 = {}
            for d, R in zip(_keys(yl, c), per):
                d2[ren.get(d, d)] = R if R == ANY else frozenset(ren.get(u, u) for u in R)
            per_pair.append([d2[k] for k in sorted(d2)])
        flat = [R for per in per_pair for R in per]
        cf = _canon(named, flat, frozenset(ren.values()), abstract=True)
        key = tuple(tuple(sorted(R)) for R in cf)
        if best is None or key < best[0]:
            best = (key, cf)
    it = iter(best[1])
    out = tuple(tuple(next(it) for _ in per) for per in rs)
    if len(_FAT_CACHE) > 200000:
        _FAT_CACHE.clear()
    _FAT_CACHE[memo] = out
    return out


def _alive(st) -> bool:
    return all(len(S) <= 1 for S in st)


def _alive_fat(rs) -> bool:
    # two apex colours with several options each already cover the whole list
    return all(sum(1 for R in per if len(R) > 1) <= 1 for per in rs)


def procession_dp(spec: FanProcessionSpec, pairs: Sequence[tuple[int, int]], joint: bool = False) -> DPResult:
    """All reachable bad-``z``-colour patterns for the given ``(x, y)`` colourings.

    ``pairs`` fixes the colours of ``x`` and ``y`` for each tracked base
    precolouring using small named colours.  The result lists, for every
    dangerous assignment up to colour bijection, the sets of colours of
    ``z`` that complete each pair to a non-extendable precolouring.

    With ``joint`` only assignments that can make every pair bad at once are
    followed: a pair whose current vertex has two or more options stays
    that way, so such states are dropped between segments.
    """
    pairs = tuple(pairs)
    named = frozenset(c for p in pairs for c in p)
    states = {tuple(frozenset({a}) for a, _ in pairs)}
    res = DPResult(spec, pairs)
    segs = spec.segments
    FRESH = "fresh"
    for si, (kind, n) in enumerate(segs):
        last = si == len(segs) - 1
        if kind == FAN:
            cur = states
            for j in range(n + 1):
                if last and j == n:
                    for st in cur:
                        cands = set(named) | set().union(*map(_colors, st)) | {FRESH}
                        res.outcomes.add(tuple(_bad_after_fan(S, c, cands) for S, (a, c) in zip(st, pairs)))
                    cur = set()
                    break
                nxt = set()
                for st in cur:
                    for lst in _choices(_classes(named, st), 3, _top(named, st)):
                        ns = tuple(_step(S, lst, [c]) for S, (a, c) in zip(st, pairs))
                        if not joint or _alive(ns):
                            nxt.add(_canon(named, ns))
                res.states_seen += len(nxt)
                cur = nxt
            states = cur
            continue
        # fat fan: choose the apex list, then walk its fan keeping one set per apex colour
        cur = set()
        for st in states:
            for ylist in _choices(_classes(named, st), 5, _top(named, st)):
                ren = {}
                for u in sorted(ylist):
                    if u not in named:
                        ren[u] = _TEMP + len(ren)
                yl = frozenset(ren.get(u, u) for u in ylist)
                st2 = [frozenset(ren.get(u, u) for u in S) for S in st]
                rs = tuple(tuple(S - {d} for d in _keys(yl, c)) for S, (a, c) in zip(st2, pairs))
                if not joint or _alive_fat(rs):
                    cur.add((yl, _canon_fat(named, yl, pairs, rs)))
        for j in range(n):
            nxt = set()
            for yl, rs in cur:
                fixed = yl - named
                flat = [R for per in rs for R in per]
                for lst in _choices(_classes(named, flat, fixed), 3, _top(named, flat, fixed)):
                    nr = tuple(
                        tuple(_step(R, lst, [d]) for R, d in zip(per, _keys(yl, c)))
                        for per, (a, c) in zip(rs, pairs)
                    )
                    if not joint or _alive_fat(nr):
                        nxt.add((yl, _canon_fat(named, yl, pairs, nr)))
            res.states_seen += len(nxt)
            cur = nxt
        new_states = set()
        for yl, rs in cur:
            if last:
                flat = [R for per in rs for R in per]
                cands = set(named) | set().union(*map(_colors, flat)) | set(yl) | {FRESH}
                res.outcomes.add(tuple(
                    _bad_after_fat(dict(zip(_keys(yl, c), per)), c, cands)
                    for per, (a, c) in zip(rs, pairs)
                ))
                continue
            fixed = yl - named
            flat = [R for per in rs for R in per]
            for lst in _choices(_classes(named, flat, fixed), 3, _top(named, flat, fixed)):
                outs = []
                for per, (a, c) in zip(rs, pairs):
                    S = set()
                    for R, d in zip(per, _keys(yl, c)):
                        S |= _step(R, lst, [c, d])
                    # apex colours are ordinary colours again from here on
                    outs.append(frozenset(S))
                if not joint or _alive(outs):
                    new_states.add(_canon(named, outs))
        res.states_seen += len(new_states)
        states = new_states
    return res


@dataclass
class ClaimReport:
    spec: FanProcessionSpec
    max_bad_same_xy: int
    two_distinct: bool
    some_bad: bool
    violations: list[str]


_SECOND_PAIRS = [(0, 2), (1, 0), (1, 2), (2, 0), (2, 1), (2, 3)]


def verify_procession_claims(spec: FanProcessionSpec) -> ClaimReport:
    """Exact check of the two-precolouring claims for one procession.

    Part one: for every dangerous assignment, two non-extendable
    precolourings agreeing on ``x`` and ``y`` are equal.  Part two: two
    different non-extendable precolourings force a single fan.
    """
    one = procession_dp(spec, [(0, 1)])
    worst = 0
    some = False
    viol = []
    for (bad,) in one.outcomes:
        worst = max(worst, len(bad))
        some = some or bool(bad)
        if "fresh" in bad or len(bad) > 1:
            viol.append(f"{spec}: {len(bad)} bad colours of z for fixed x, y")
            break
    two = False
    for p2 in _SECOND_PAIRS:
        r = procession_dp(spec, [(0, 1), p2], joint=True)
        for b1, b2 in r.outcomes:
            if b1 and b2:
                two = True
                break
        if two:
            break
    if two and not spec.normalized().is_single_fan:
        viol.append(f"{spec}: two different bad precolourings but not a single fan")
    if not spec.is_even and some:
        viol.append(f"{spec}: odd procession with a bad precolouring")
    return ClaimReport(spec, worst, two, some, viol)


def verify_extthom(entries: Iterable, check_witness: bool = True) -> dict:
    """Check path-mode catalog entries with a length-2 path.

    Each entry must be an even procession on its base and its witness lists
    must be dangerous.  Returns a report whose ``exceptions`` list must be
    empty.
    """
    exceptions = []
    seen = []
    for e in entries:
        g = e.graph
        base = tuple(e.path)
        spec = recognize_procession(g, base)
        if spec is None:
            exceptions.append({"entry": e.key, "reason": "not a procession"})
            continue
        if not spec.is_even:
            exceptions.append({"entry": e.key, "reason": f"odd procession {spec}"})
            continue
        if check_witness and e.lists is not None:
            proc = build_procession(spec)
            outer = set(outer_cycle(g))
            ok = all(len(e.lists[v]) == (3 if v in outer else 5) for v in range(g.n) if v not in base)
            if not ok:
                exceptions.append({"entry": e.key, "reason": "witness lists are not dangerous"})
                continue
        seen.append(str(spec))
    return {"recognized": seen, "exceptions": exceptions}
