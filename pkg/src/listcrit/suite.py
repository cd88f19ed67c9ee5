"""The acceptance checks, one function per criterion.

Each check returns a :class:`CheckResult` whose :meth:`~CheckResult.line`
is the one-line report used by ``listcrit verify-suite`` and by the test
suite.  Scales are pinned here; ``quick=True`` shrinks the randomized
trial counts and skips length 8, for smoke runs only.
"""
from __future__ import annotations

import random
import time
import warnings
from dataclasses import dataclass
from typing import Callable

from . import fans
from .coloring import brute_force_colorings, is_proper_coloring, is_valid_assignment, solve_extension
from .enumerator import Enumerator, is_near_triangulation
from .plane_graph import (
    PlaneGraph,
    outer_face,
    outer_vertices,
    random_plane_graph,
)
from .scattering import albertson_check, compute_D, random_albertson_instance, scatter_threshold
from .weights import HypothesisWarning, check_prepathw, check_preouf, check_qsum, check_size_bounds

TARGET_COUNTS = {6: 3, 7: 6, 8: 34}
EXTENDED_COUNTS = {9: 182}


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"[{tag}] {self.number:>2} {self.name}: {self.detail} ({self.seconds:.1f}s)"


def _timed(number: int, name: str, fn: Callable[[], tuple[bool, str]]) -> CheckResult:
    t0 = time.perf_counter()
    ok, detail = fn()
    return CheckResult(number, name, ok, detail, time.perf_counter() - t0)


# 1 ------------------------------------------------------------------------

def check_constant() -> CheckResult:
    def run():
        t0 = time.perf_counter()
        d = compute_D(2, 15)
        thr = scatter_threshold(2)
        ms = (time.perf_counter() - t0) * 1000
        ok = d == 19828 and thr == 19828 and ms < 1.0
        return ok, f"D(2,15)={d}, threshold(2)={thr}, {ms:.3f} ms"

    return _timed(1, "distance constant", run)


# 2, 3 ----------------------------------------------------------------------

def check_catalog_counts(enum: Enumerator, lengths=(6, 7, 8)) -> CheckResult:
    def run():
        parts = []
        ok = True
        for k in lengths:
            cat = enum.chordless(k)
            got = len(cat.near_triangulations())
            want = TARGET_COUNTS[k]
            ok &= got == want
            extra = "" if cat.complete else f", {len(cat.survivors)} undecided"
            parts.append(f"k={k}: {got}/{want} ({len(cat.entries)} critical{extra}, {cat.seconds:.0f}s)")
        return ok, "; ".join(parts)

    return _timed(2, "chordless catalog counts", run)


def check_extended_count(enum: Enumerator) -> CheckResult:
    def run():
        cat = enum.chordless(9)
        got = len(cat.near_triangulations())
        return got == EXTENDED_COUNTS[9], f"k=9: {got}/{EXTENDED_COUNTS[9]}, complete={cat.complete}"

    return _timed(2, "extended count (length 9)", run)


def _interior(entry) -> list[int]:
    b = set(entry.boundary)
    return [v for v in range(entry.graph.n) if v not in b]


def _family(entry) -> str | None:
    g = entry.graph
    inside = _interior(entry)
    if len(inside) == 1:
        return "one interior vertex"
    if len(entry.boundary) != 6 or any(g.degree(v) != 5 for v in inside):
        return None
    if len(inside) == 2 and g.has_edge(*inside):
        return "two adjacent degree-5 vertices"
    if len(inside) == 3 and all(g.has_edge(a, b) for i, a in enumerate(inside) for b in inside[i + 1:]):
        return "three pairwise adjacent degree-5 vertices"
    return None


def check_small_structure(enum: Enumerator) -> CheckResult:
    def run():
        msgs = []
        ok = True
        for k in (3, 4):
            c = enum.chordless(k)
            if c.entries or c.survivors:
                ok = False
                msgs.append(f"k={k} not empty")
        c5 = enum.chordless(5)
        fam5 = {_family(e) for e in c5.entries}
        if not c5.entries or fam5 != {"one interior vertex"} or c5.survivors:
            ok = False
            msgs.append(f"k=5 families {sorted(map(str, fam5))}")
        c6 = enum.chordless(6)
        fam6 = [_family(e) for e in c6.entries]
        want = {"one interior vertex", "two adjacent degree-5 vertices", "three pairwise adjacent degree-5 vertices"}
        if None in fam6 or set(fam6) != want or c6.survivors:
            ok = False
            msgs.append(f"k=6 families {fam6}")
        detail = "; ".join(msgs) if msgs else (
            f"k=3,4 empty; k=5 {len(c5.entries)} graph(s), one interior vertex; "
            f"k=6 {len(c6.entries)} graphs in the three families"
        )
        return ok, detail

    return _timed(3, "short-cycle structure", run)


# 4 ------------------------------------------------------------------------

def check_bounds(enum: Enumerator, cycle_lengths=range(5, 9), path_lengths=(2, 3)) -> CheckResult:
    def run():
        nc = npth = 0
        bad = []
        skipped = 0
        for k in cycle_lengths:
            cat = enum.chordless(k) if k == max(cycle_lengths) else enum.all_cycles(k)
            for e in cat.entries:
                with warnings.catch_warnings(record=True) as w:
                    warnings.simplefilter("always", HypothesisWarning)
                    holds, slack, rep = check_preouf(e.graph, e.full_lists())
                if any("one chord" in str(x.message) for x in w):
                    skipped += 1
                    continue
                nc += 1
                if not holds:
                    bad.append(f"cycle {k} {e.key[:12]} slack {slack}")
        for ell in path_lengths:
            for e in enum.path(ell).entries:
                npth += 1
                lists = e.full_lists()
                h1, s1, _ = check_prepathw(e.graph, list(e.boundary), lists)
                h2, n, bound = check_size_bounds(e.graph, list(e.boundary), mode="boundsize")
                if not h1:
                    bad.append(f"path {ell} {e.key[:12]} weight slack {s1}")
                if not h2:
                    bad.append(f"path {ell} {e.key[:12]} has {n} > {bound} vertices")
        detail = f"{nc} cycle entries, {npth} path entries, {skipped} cycle-plus-chord skipped, {len(bad)} violations"
        if bad:
            detail += ": " + "; ".join(bad[:5])
        return not bad and nc > 0 and npth > 0, detail

    return _timed(4, "weight and size bounds", run)


# 5, 6 ----------------------------------------------------------------------

_CLAIMS: dict = {}


def _claims(max_vertices: int) -> dict:
    if max_vertices not in _CLAIMS:
        _CLAIMS[max_vertices] = {str(s): (s, fans.verify_procession_claims(s)) for s in fans.enumerate_specs(max_vertices)}
    return _CLAIMS[max_vertices]


def check_procession_equivalence(enum: Enumerator, max_vertices: int = 12) -> CheckResult:
    def run():
        issues = []
        entries = enum.path(2).entries
        rep = fans.verify_extthom(entries)
        issues += [f"entry {x['entry'][:12]}: {x['reason']}" for x in rep["exceptions"]]
        n_even = n_odd = 0
        for name, (spec, cr) in _claims(max_vertices).items():
            proc = fans.build_procession(spec)
            if spec.is_even:
                n_even += 1
                wit = fans.dangerous_witness(proc)
                if wit is None or not cr.some_bad:
                    issues.append(f"{name}: no dangerous assignment with a bad precolouring")
                    continue
                lists, phi = wit
                if not fans.is_dangerous(proc, lists) or solve_extension(proc.graph, lists, phi) is not None:
                    issues.append(f"{name}: witness does not certify")
            else:
                n_odd += 1
                if cr.some_bad:
                    issues.append(f"{name}: odd procession with a bad precolouring")
        detail = (f"{len(entries)} path entries recognized ({', '.join(rep['recognized'])}); "
                  f"{n_even} even processions with witnesses; {n_odd} odd with none")
        if issues:
            detail += "; " + "; ".join(issues[:5])
        return not issues and len(entries) > 0, detail

    return _timed(5, "path length two equals even processions", run)


def check_procession_claims(max_vertices: int = 12) -> CheckResult:
    def run():
        viol = []
        singles = 0
        for name, (spec, cr) in _claims(max_vertices).items():
            viol += cr.violations
            if cr.two_distinct:
                singles += 1
        detail = f"{len(_claims(max_vertices))} processions, {singles} with two bad precolourings (all single fans), {len(viol)} violations"
        if viol:
            detail += ": " + "; ".join(viol[:5])
        return not viol, detail

    return _timed(6, "at most one bad precolouring per x,y", run)


# 7 to 10 -------------------------------------------------------------------

def random_valid_instance(rng: random.Random, max_n: int = 12, palette: int = 8):
    """Connected plane graph, a precoloured outer edge, 3-lists outside, 5-lists inside."""
    n = rng.randint(2, max_n)
    g = random_plane_graph(n, rng, edge_prob=rng.random())
    of = outer_face(g)
    a, b = of.darts[0]
    H = set(outer_vertices(g))
    ca, cb = rng.sample(range(palette), 2)
    lists = {}
    for v in range(g.n):
        if v == a:
            lists[v] = frozenset([ca])
        elif v == b:
            lists[v] = frozenset([cb])
        elif v in H:
            lists[v] = frozenset(rng.sample(range(palette), 3))
        else:
            lists[v] = frozenset(rng.sample(range(palette), 5))
    return g, (a, b), lists


def check_thomassen(trials: int = 10000, seed: int = 7) -> CheckResult:
    def run():
        rng = random.Random(seed)
        fails = 0
        for _ in range(trials):
            g, p, lists = random_valid_instance(rng)
            if not is_valid_assignment(g, p, [], lists):
                raise AssertionError("generator produced an invalid assignment")
            col = solve_extension(g, lists)
            if col is None or not is_proper_coloring(g, col, lists):
                fails += 1
        return fails == 0, f"{trials} instances, {fails} failures"

    return _timed(7, "outer-edge 3/5 assignments colourable", run)


def random_plane_tree(n: int, rng: random.Random) -> PlaneGraph:
    rot: list[list[int]] = [[] for _ in range(n)]
    for v in range(1, n):
        u = rng.randrange(v)
        rot[u].insert(rng.randrange(len(rot[u]) + 1), v)
        rot[v].append(u)
    return PlaneGraph(tuple(tuple(r) for r in rot), (0, rot[0][0]) if n > 1 else 0)


def check_face_square_sum(trials: int = 10000, seed: int = 8) -> CheckResult:
    def run():
        rng = random.Random(seed)
        bad = 0
        trees = 0
        for n in range(2, 13):
            for _ in range(20):
                ok, lhs, rhs = check_qsum(random_plane_tree(n, rng))
                trees += 1
                bad += lhs != rhs
        worse = 0
        for _ in range(trials):
            g = random_plane_graph(rng.randint(1, 12), rng, edge_prob=rng.random())
            ok, lhs, rhs = check_qsum(g)
            worse += not ok
        return bad == 0 and worse == 0, f"{trees} trees with equality ({bad} off), {trials} graphs, {worse} violations"

    return _timed(8, "face square sum", run)


def check_solver(trials: int = 1000, seed: int = 9) -> CheckResult:
    def run():
        rng = random.Random(seed)
        bad = 0
        sat = 0
        for _ in range(trials):
            n = rng.randint(1, 8)
            g = random_plane_graph(n, rng, edge_prob=rng.random())
            U = rng.randint(1, 5)
            lists = {v: frozenset(c for c in range(U) if rng.random() < 0.6) for v in range(n)}
            col = solve_extension(g, lists)
            brute = next(brute_force_colorings(g, lists), None)
            if (col is None) != (brute is None):
                bad += 1
            elif col is not None:
                sat += 1
                if not is_proper_coloring(g, col, lists):
                    bad += 1
        return bad == 0, f"{trials} instances ({sat} colourable), {bad} disagreements"

    return _timed(9, "solver agrees with brute force", run)


def check_albertson(trials: int = 1000, seed: int = 10) -> CheckResult:
    def run():
        rng = random.Random(seed)
        ce = 0
        multi = 0
        labels = set()
        for _ in range(trials):
            g, lists = random_albertson_instance(rng.randint(20, 60), rng, min_dist=12)
            rep = albertson_check(g, lists, required_distance=12)
            labels.add(rep.label)
            multi += len(rep.precolored) >= 2
            if rep.hypothesis_met and not rep.colorable:
                ce += 1
        ok = ce == 0 and labels == {"property evidence"}
        return ok, f"{trials} instances ({multi} with 2+ precoloured), {ce} counterexamples, labelled {sorted(labels)}"

    return _timed(10, "scattered precolouring (property evidence)", run)


# ---------------------------------------------------------------------------

def run_suite(quick: bool = False, extended: bool = False, enum: Enumerator | None = None,
              report: Callable[[CheckResult], None] | None = None) -> list[CheckResult]:
    enum = enum or Enumerator()
    scale = 10 if quick else 1
    lengths = (6, 7) if quick else (6, 7, 8)
    checks = [
        check_constant,
        lambda: check_catalog_counts(enum, lengths),
        lambda: check_small_structure(enum),
        lambda: check_bounds(enum, range(5, max(lengths) + 1)),
        lambda: check_procession_equivalence(enum, 9 if quick else 12),
        lambda: check_procession_claims(9 if quick else 12),
        lambda: check_thomassen(10000 // scale),
        lambda: check_face_square_sum(10000 // scale),
        lambda: check_solver(1000 // scale),
        lambda: check_albertson(1000 // scale),
    ]
    if extended:
        checks.append(lambda: check_extended_count(enum))
    out = []
    for fn in checks:
        r = fn()
        out.append(r)
        if report:
            report(r)
    return out
