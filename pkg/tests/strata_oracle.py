"""Brute-force generation of reduced relative strata over a single relative point.

Enumerates every bipartite tree between active and contracted vertices, every
edge ramification, every placement of marks and every local ramification of
marks on active vertices, then filters by validity, the relative conditions
and realizability (via the exhaustive permutation oracle).  Slow, but shares
no search logic with the library enumerator.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import hurwitz_oracle
from relsmooth.conditions import check_relative
from relsmooth.graph import DualMapGraph, Edge, MarkedPoint, Vertex, canonical_form, validate
from relsmooth.hurwitz import partitions


@lru_cache(maxsize=None)
def _cover_exists(d: int, profiles: tuple[tuple[int, ...], ...]) -> bool:
    options = [[tuple(sorted(p + mu, reverse=True)) for mu in partitions(d - sum(p))] for p in profiles]
    for full in itertools.product(*options):
        b = 2 * d - 2 - sum(d - len(p) for p in full)
        if b < 0:
            continue
        classes = [p for p in full if p != (1,) * d] + [(2,) + (1,) * (d - 2)] * b
        if hurwitz_oracle.tuples(d, classes):
            return True
    return False


def _realizable(g: DualMapGraph) -> bool:
    for v in g.active_vertices:
        parts = [m.local_ramification for m in g.marks_on(v.id) if m.target is not None]
        parts += [e.index_at(v.id) for e in g.edges_at(v.id)]
        if parts and not _cover_exists(v.degree, (tuple(sorted(parts, reverse=True)),)):
            return False
    return True


def _trees(s: int, c: int):
    pairs = [(a, s + b) for a in range(s) for b in range(c)]
    n = s + c
    for chosen in itertools.combinations(pairs, n - 1):
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x

        ok = True
        for u, w in chosen:
            ru, rw = find(u), find(w)
            if ru == rw:
                ok = False
                break
            parent[ru] = rw
        if ok:
            yield chosen


def strata_keys(gamma, target, d: int, max_contracted: int = 2) -> set[str]:
    tangencies = gamma.tangencies("inf")
    n_free = gamma.n_free
    found = set()
    for degrees in partitions(d):
        s = len(degrees)
        for c in range(0, max_contracted + 1):
            if s + c > 1 and c == 0:
                continue
            vertices = tuple(Vertex.active(i, deg) for i, deg in enumerate(degrees)) + tuple(
                Vertex.contracted(s + j, "inf") for j in range(c))
            n = s + c
            for tree in (_trees(s, c) if n > 1 else [()]):
                for rams in itertools.product(*(range(1, degrees[u] + 1) for u, _ in tree)):
                    edges = tuple(Edge(i, pair, r) for i, (pair, r) in enumerate(zip(tree, rams)))
                    for homes in itertools.product(range(n), repeat=len(tangencies) + n_free):
                        rel_homes, free_homes = homes[: len(tangencies)], homes[len(tangencies):]
                        choices = []
                        for t, h in zip(tangencies, rel_homes):
                            choices.append(range(1, degrees[h] + 1) if h < s else [None])
                        for locals_ in itertools.product(*choices):
                            # free marks take the lowest ids, as in the default assignment
                            marks = [MarkedPoint(i + 1, h, 0) for i, h in enumerate(free_homes)]
                            marks += [MarkedPoint(n_free + i + 1, h, t, "inf", loc)
                                      for i, (t, h, loc) in enumerate(zip(tangencies, rel_homes, locals_))]
                            g = DualMapGraph(vertices, edges, tuple(marks), target, d)
                            if not validate(g).ok:
                                continue
                            if not check_relative(g, gamma, realizability=False).ok:
                                continue
                            if not _realizable(g):
                                continue
                            found.add(canonical_form(g))
    return found
