"""Boundary strata of the relative moduli space at small degree.

Only degenerations over the relative points are enumerated: every node joins
an active component to a component contracted to some relative point, and no
component is contracted to a non-relative point.  Nodes between active
components away from the relative points do not affect membership and are
out of scope.

Strata are emitted in reduced form, one per isomorphism class, sorted by
canonical key.
"""

from __future__ import annotations

import itertools
from builtins import enumerate as _enumerate
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

from .conditions import TangencyData, is_K_Gamma, is_M_Gamma, is_N_Gamma
from .errors import CapacityError, InconsistentGammaError, InputError, UnstableVertexError
from .graph import DualMapGraph, Edge, MarkedPoint, Vertex, canonical_form, canonical_relabel, validate
from .hurwitz import D_MAX, partitions, partially_realizable, RamificationProblem
from .target import STACKY, StackyTarget


@dataclass(frozen=True)
class EnumerationOptions:
    max_degree: int = 6
    max_marks: int = 8
    max_contracted_per_fiber: int = 4
    labeled_marks: bool = False
    jobs: int = 1
    max_active: int | None = None


@dataclass(frozen=True)
class Stratum:
    graph: DualMapGraph
    dimension: int
    codimension: int
    is_M: bool
    is_N: bool
    is_K: bool
    key: str

    def to_dict(self) -> dict:
        from .graph import key_digest, to_dict

        return {
            "key": key_digest(self.key),
            "dimension": self.dimension,
            "codimension": self.codimension,
            "is_M": self.is_M,
            "is_N": self.is_N,
            "is_K": self.is_K,
            "graph": to_dict(self.graph),
        }


# -- dimension ---------------------------------------------------------------


def dimension(g: DualMapGraph | Stratum, gamma: TangencyData | None = None) -> int:
    """Expected dimension of the stratum of maps with combinatorial type ``g``.

    An active vertex of degree ``δ`` with ``k`` special points contributes
    ``2δ + k - 2`` (maps of degree ``δ`` with ``k`` marks, modulo
    automorphisms) minus ``e`` for every special point sent to a prescribed
    point with ramification ``e``: marks with a target, nodes to contracted
    components, and active-active nodes with a recorded target.  An
    active-active node without a recorded target costs 1, since both sides
    must land on the same point.  A contracted vertex contributes ``k - 3``.
    """
    if isinstance(g, Stratum):
        g = g.graph
    total = 0
    for v in g.vertices:
        k = g.special_points(v.id)
        if not v.is_active:
            if k < 3:
                raise UnstableVertexError(f"contracted vertex {v.id} has {k} < 3 special points")
            total += k - 3
            continue
        cost = 0
        for m in g.marks_on(v.id):
            if m.target is not None:
                cost += m.local_ramification
        for e in g.edges_at(v.id):
            other = g.vertex(e.other(v.id))
            if not other.is_active or e.target is not None:
                cost += e.index_at(v.id)
            else:
                cost += 1
        total += 2 * v.degree + k - 2 - cost
    return total


# -- enumeration -------------------------------------------------------------


def _compositions(n: int, k: int):
    """Ordered ways to write ``n`` as ``k`` non-negative parts."""
    if k == 0:
        if n == 0:
            yield ()
        return
    if k == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in _compositions(n - first, k - 1):
            yield (first,) + rest


def _bounded_splits(n: int, caps: tuple[int, ...]):
    """Ways to write ``n`` as parts ``x_i`` with ``0 <= x_i <= caps[i]``."""
    if not caps:
        if n == 0:
            yield ()
        return
    rest_cap = sum(caps[1:])
    for first in range(max(0, n - rest_cap), min(n, caps[0]) + 1):
        for rest in _bounded_splits(n - first, caps[1:]):
            yield (first,) + rest


@dataclass(frozen=True)
class _Fiber:
    """Configuration over one relative point for a fixed list of active degrees."""

    point: str
    n_contracted: int
    placement: tuple[tuple[int, ...], ...]  # per class: counts per slot (actives then contracted)
    edges: tuple[tuple[int, ...], ...]  # per active: ramification to each contracted vertex (0 = no node)


def _fibers(degrees: tuple[int, ...], point: str, classes: tuple[tuple[int, int], ...],
            k_max: int, n_free: int):
    s = len(degrees)
    for k in range(k_max + 1):
        slots = s + k
        for placement in itertools.product(*(list(_compositions(c, slots)) for _, c in classes)):
            load = [sum(t * placement[ci][x] for ci, (t, _) in _enumerate(classes)) for x in range(slots)]
            if any(load[v] > degrees[v] for v in range(s)):
                continue
            column = load[s:]
            if any(c == 0 for c in column):
                continue
            residual = [degrees[v] - load[v] for v in range(s)]
            for edges in _edge_matrices(residual, column):
                sig = []
                ok = True
                for E in range(k):
                    n_edges = sum(1 for v in range(s) if edges[v][E])
                    n_marks = sum(placement[ci][s + E] for ci in range(len(classes)))
                    if n_marks + n_edges + n_free < 3:
                        ok = False
                        break
                    sig.append((tuple(placement[ci][s + E] for ci in range(len(classes))),
                                tuple(edges[v][E] for v in range(s))))
                # contracted vertices over one point are interchangeable
                if ok and sig == sorted(sig):
                    yield _Fiber(point, k, placement, edges)


def _edge_matrices(residual: list[int], column: list[int]):
    """Non-negative matrices with row sums ``residual`` and column sums ``column``."""
    s, k = len(residual), len(column)
    if k == 0:
        if all(r == 0 for r in residual):
            yield tuple(() for _ in range(s))
        return

    def rows(v, remaining):
        if v == s:
            if all(c == 0 for c in remaining):
                yield ()
            return
        for row in _bounded_splits(residual[v], tuple(remaining)):
            nxt = [c - x for c, x in zip(remaining, row)]
            for rest in rows(v + 1, nxt):
                yield (row,) + rest

    yield from rows(0, list(column))


def _is_tree(n_vertices: int, edges: list[tuple[int, int]]) -> bool:
    if len(edges) != n_vertices - 1:
        return False
    parent = list(range(n_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, w in edges:
        a, b = find(u), find(w)
        if a == b:
            return False
        parent[a] = b
    return True


@lru_cache(maxsize=None)
def _realizable(degree: int, profiles: tuple[tuple[int, ...], ...]) -> bool:
    return partially_realizable(RamificationProblem(degree, tuple((str(i), p) for i, p in _enumerate(profiles))))


def _mark_classes(gamma: TangencyData):
    """Mark classes (point or None, tangency) with their ids in order."""
    free = list(gamma.free_marks) if gamma.free_marks is not None else list(range(1, gamma.n_free + 1))
    next_id = gamma.n_free + 1
    classes: dict[tuple[str | None, int], list[int]] = {}
    if free:
        classes[(None, 0)] = free
    for c in gamma.relative:
        ids = list(c.marks) if c.marks is not None else list(range(next_id, next_id + len(c.tangencies)))
        next_id += len(c.tangencies)
        for t, mid in zip(c.tangencies, ids):
            classes.setdefault((c.point, t), []).append(mid)
    return classes


def _id_assignments(ids: list[int], counts: tuple[int, ...], labeled: bool):
    """Split ``ids`` into consecutive groups of the given sizes (every split when labeled)."""
    if not labeled:
        out, i = [], 0
        for c in counts:
            out.append(ids[i:i + c])
            i += c
        yield out
        return

    def rec(pool, rest):
        if not rest:
            yield []
            return
        for chosen in itertools.combinations(pool, rest[0]):
            left = [x for x in pool if x not in chosen]
            for tail in rec(left, rest[1:]):
                yield [list(chosen)] + tail

    yield from rec(ids, list(counts))


def _check_gamma(gamma: TangencyData, target: StackyTarget, d: int) -> TangencyData:
    for c in gamma.relative:
        if c.tangencies and sum(c.tangencies) != d:
            raise InconsistentGammaError(
                f"tangencies over {c.point!r} sum to {sum(c.tangencies)}, expected the degree {d}"
            )
        if target.kind(c.point) == STACKY:
            raise InputError(f"relative point {c.point!r} has a nontrivial stabilizer")
    return TangencyData(gamma.n_free, tuple(c for c in gamma.relative if c.tangencies), gamma.free_marks)


def _graphs_for_degrees(degrees: tuple[int, ...], gamma: TangencyData, target: StackyTarget,
                        d: int, opts: EnumerationOptions) -> list[tuple[str, DualMapGraph]]:
    s = len(degrees)
    mark_classes = _mark_classes(gamma)
    per_point = []
    for c in gamma.relative:
        classes = tuple(sorted(Counter(c.tangencies).items()))
        per_point.append((c.point, classes, list(_fibers(degrees, c.point, classes,
                                                           opts.max_contracted_per_fiber, gamma.n_free))))
    found: dict[str, DualMapGraph] = {}
    for combo in itertools.product(*(f for _, _, f in per_point)):
        n_con = sum(f.n_contracted for f in combo)
        n_vertices = s + n_con
        edge_pairs = []
        offset = s
        for f in combo:
            for v in range(s):
                for E in range(f.n_contracted):
                    if f.edges[v][E]:
                        edge_pairs.append((v, offset + E))
            offset += f.n_contracted
        if not _is_tree(n_vertices, edge_pairs):
            continue
        profiles_ok = True
        for v in range(s):
            profiles = []
            for (point, classes, _), f in zip(per_point, combo):
                parts = [t for ci, (t, _) in _enumerate(classes) for _ in range(f.placement[ci][v])]
                parts += [e for e in f.edges[v] if e]
                profiles.append(tuple(sorted(parts, reverse=True)))
            if not _realizable(degrees[v], tuple(sorted(profiles))):
                profiles_ok = False
                break
        if not profiles_ok:
            continue
        for free in _compositions(gamma.n_free, n_vertices):
            for g in _build(degrees, per_point, combo, free, edge_pairs, mark_classes, target, d, opts):
                key = canonical_form(g)
                if key not in found:
                    found[key] = g
    return list(found.items())


def _build(degrees, per_point, combo, free, edge_pairs, mark_classes, target, d, opts):
    s = len(degrees)
    vertices = [Vertex.active(v, deg) for v, deg in _enumerate(degrees)]
    offset = s
    slot_of = []  # per point: map local slot -> global vertex id
    for f in combo:
        vertices += [Vertex.contracted(offset + E, f.point) for E in range(f.n_contracted)]
        slot_of.append(list(range(s)) + list(range(offset, offset + f.n_contracted)))
        offset += f.n_contracted
    n_vertices = len(vertices)
    special = Counter()
    for u, w in edge_pairs:
        special[u] += 1
        special[w] += 1
    edges = []
    for (point, classes, _), f, slots in zip(per_point, combo, slot_of):
        for v in range(s):
            for E in range(f.n_contracted):
                e = f.edges[v][E]
                if e:
                    edges.append(Edge(len(edges), (v, slots[s + E]), e))
    # placements: (class key, counts per global vertex)
    groups = []
    if free and sum(free):
        groups.append(((None, 0), None, tuple(free)))
    for (point, classes, _), f, slots in zip(per_point, combo, slot_of):
        for ci, (t, _) in _enumerate(classes):
            counts = [0] * n_vertices
            for local, c in _enumerate(f.placement[ci]):
                counts[slots[local]] += c
            groups.append(((point, t), point, tuple(counts)))
    for vid in range(s, n_vertices):
        marks_here = sum(counts[vid] for _, _, counts in groups)
        if marks_here + special[vid] < 3:
            return
    for choice in itertools.product(*(
        list(_id_assignments(mark_classes[key], counts, opts.labeled_marks)) for key, _, counts in groups
    )):
        marks = []
        for (key, point, _), split in zip(groups, choice):
            for vid, ids in _enumerate(split):
                for mid in ids:
                    marks.append(MarkedPoint(mid, vid, key[1], point))
        marks.sort(key=lambda m: m.id)
        yield DualMapGraph(tuple(vertices), tuple(edges), tuple(marks), target, d, (),
                           opts.labeled_marks)


def _worker(args):
    return _graphs_for_degrees(*args)


def enumerate_strata(gamma: TangencyData, target: StackyTarget, d: int,
              opts: EnumerationOptions | None = None) -> list[Stratum]:
    """Every realizable combinatorial type passing the relative conditions, up to isomorphism."""
    opts = opts or EnumerationOptions()
    cap = min(opts.max_degree, D_MAX)
    if d < 1:
        raise InputError("degree must be positive")
    if d > cap:
        raise CapacityError(f"degree {d} exceeds the enumeration cap {cap}")
    if gamma.n_marks > opts.max_marks:
        raise CapacityError(f"{gamma.n_marks} marks exceed the cap {opts.max_marks}")
    gamma = _check_gamma(gamma, target, d)
    target = target.with_relative(gamma.points)

    max_active = opts.max_active or d
    if not gamma.relative:
        max_active = 1
    jobs_args = [(degrees, gamma, target, d, opts) for degrees in partitions(d) if len(degrees) <= max_active]
    if opts.jobs > 1 and len(jobs_args) > 1:
        with ProcessPoolExecutor(max_workers=opts.jobs) as pool:
            results = list(pool.map(_worker, jobs_args))
    else:
        results = [_worker(a) for a in jobs_args]

    merged: dict[str, DualMapGraph] = {}
    for chunk in results:
        for key, g in chunk:
            merged.setdefault(key, g)

    smooth = _smooth_dimension(gamma, target, d)
    out = []
    for key in sorted(merged):
        g = canonical_relabel(merged[key])
        if not validate(g).ok or not is_K_Gamma(g, gamma):  # pragma: no cover - construction guarantees both
            continue
        dim = dimension(g)
        out.append(Stratum(g, dim, smooth - dim, is_M_Gamma(g, gamma), is_N_Gamma(g, gamma), True, key))
    return out


def _smooth_dimension(gamma: TangencyData, target: StackyTarget, d: int) -> int:
    """Dimension of the locus of maps with smooth source."""
    cost = sum(sum(c.tangencies) for c in gamma.relative)
    return 2 * d + gamma.n_marks - 2 - cost


def strata_table(strata: list[Stratum]) -> str:
    from .graph import key_digest

    lines = [f"{'key':<14}{'dim':>4}{'codim':>6}  {'M':<2}{'N':<2}{'K':<2} vertices"]
    for s in strata:
        g = s.graph
        verts = " ".join(f"A{v.degree}" if v.is_active else f"E@{v.target}" for v in g.vertices)
        flags = "".join(("y " if f else "n ") for f in (s.is_M, s.is_N, s.is_K))
        lines.append(f"{key_digest(s.key):<14}{s.dimension:>4}{s.codimension:>6}  {flags}{verts}")
    return "\n".join(lines) + "\n"


# the module-level name mirrors the operation; the builtin stays available as ``_enumerate``
enumerate = enumerate_strata

__all__ = ["EnumerationOptions", "Stratum", "dimension", "enumerate", "enumerate_strata", "strata_table"]
