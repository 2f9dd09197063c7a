"""Realizability of genus-zero covers of the projective line with prescribed branching.

A cover of degree ``d`` with branch profiles ``λ_1..λ_s`` (plus ``b`` extra
simple branch points, where Riemann-Hurwitz forces
``b = 2d - 2 - Σ(d - ℓ(λ_i))``) corresponds to a tuple of permutations
``σ_1..σ_s, τ_1..τ_b`` in ``S_d`` with the prescribed cycle types, product
equal to the identity, generating a transitive subgroup.

Tuple counts are computed by dynamic programming over the pair
(partial product, orbit partition so far).  Both are only relevant up to
simultaneous conjugation, and the conjugacy type of such a pair is the
multiset over orbit blocks of the cycle type of the product restricted to
each block, which keeps the state space tiny for ``d <= 7``.
"""

from __future__ import annotations

import itertools
import warnings
from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .errors import CapacityError

D_MAX = 7
COVER_LIMIT = 50_000

Perm = tuple[int, ...]
StateType = tuple[tuple[int, ...], ...]


def partitions(n: int, largest: int | None = None):
    """Partitions of ``n`` as non-increasing tuples, in reverse lexicographic order."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def compose(p: Perm, q: Perm) -> Perm:
    """``p ∘ q``: apply ``q`` first."""
    return tuple(p[i] for i in q)


def cycles(p: Perm) -> list[list[int]]:
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if not seen[i]:
            cyc = []
            j = i
            while not seen[j]:
                seen[j] = True
                cyc.append(j)
                j = p[j]
            out.append(cyc)
    return out


def cycle_type(p: Perm) -> tuple[int, ...]:
    return tuple(sorted((len(c) for c in cycles(p)), reverse=True))


@lru_cache(maxsize=None)
def _by_type(d: int) -> dict[tuple[int, ...], tuple[Perm, ...]]:
    out = defaultdict(list)
    for p in itertools.permutations(range(d)):
        out[cycle_type(p)].append(p)
    return {k: tuple(v) for k, v in out.items()}


def class_elements(d: int, lam: tuple[int, ...]) -> tuple[Perm, ...]:
    return _by_type(d)[tuple(sorted(lam, reverse=True))]


# -- state types ---------------------------------------------------------------


def _state_type(h: Perm, root: list[int]) -> StateType:
    buckets = defaultdict(list)
    for c in cycles(h):
        buckets[root[c[0]]].append(len(c))
    return tuple(sorted(tuple(sorted(v, reverse=True)) for v in buckets.values()))


def _join(root: list[int], tau: Perm) -> list[int]:
    parent = list(root)

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in enumerate(tau):
        a, b = find(i), find(j)
        if a != b:
            parent[max(a, b)] = min(a, b)
    return [find(i) for i in range(len(root))]


@lru_cache(maxsize=None)
def _representative(T: StateType) -> tuple[Perm, tuple[int, ...]]:
    perm: list[int] = []
    root: list[int] = []
    for block in T:
        start = len(perm)
        for length in block:
            base = len(perm)
            perm.extend(base + (k + 1) % length for k in range(length))
        root.extend([start] * (len(perm) - start))
    return tuple(perm), tuple(root)


@lru_cache(maxsize=None)
def _transition(T: StateType, lam: tuple[int, ...]) -> tuple[tuple[StateType, int], ...]:
    g, root = _representative(T)
    d = len(g)
    out: Counter = Counter()
    for tau in class_elements(d, lam):
        out[_state_type(compose(g, tau), _join(list(root), tau))] += 1
    return tuple(sorted(out.items()))


def _initial(d: int) -> StateType:
    return tuple((1,) for _ in range(d))


def _final(d: int) -> StateType:
    return ((1,) * d,)


@lru_cache(maxsize=4096)
def transitive_factorizations(d: int, classes: tuple[tuple[int, ...], ...]) -> int:
    """Number of tuples with the given cycle types, product 1, transitive action."""
    states: dict[StateType, int] = {_initial(d): 1}
    for lam in classes:
        nxt: Counter = Counter()
        for T, c in states.items():
            for T2, k in _transition(T, lam):
                nxt[T2] += c * k
        states = nxt
    return states.get(_final(d), 0)


def _completions(d: int, classes) -> list[dict[StateType, int]]:
    layers = [{_initial(d)}]
    for lam in classes:
        layers.append({T2 for T in layers[-1] for T2, _ in _transition(T, lam)})
    comp: list[dict[StateType, int]] = [dict() for _ in layers]
    comp[-1] = {_final(d): 1}
    for k in range(len(classes) - 1, -1, -1):
        for T in layers[k]:
            n = sum(c * comp[k + 1].get(T2, 0) for T2, c in _transition(T, classes[k]))
            if n:
                comp[k][T] = n
    return comp


def factorization_tuples(d: int, classes):
    """Yield every transitive tuple with product 1, pruned by completion counts."""
    classes = tuple(tuple(sorted(c, reverse=True)) for c in classes)
    comp = _completions(d, classes)
    if not comp[0].get(_initial(d)):
        return
    identity = tuple(range(d))

    def walk(k, g, root, acc):
        if k == len(classes):
            yield tuple(acc)
            return
        for tau in class_elements(d, classes[k]):
            h = compose(g, tau)
            r = _join(root, tau)
            if comp[k + 1].get(_state_type(h, r)):
                acc.append(tau)
                yield from walk(k + 1, h, r, acc)
                acc.pop()

    yield from walk(0, identity, list(range(d)), [])


def canonical_tuple(perms) -> tuple[Perm, ...]:
    """Representative of a transitive tuple up to simultaneous conjugation."""
    d = len(perms[0]) if perms else 0
    best = None
    for s in range(d):
        label = {s: 0}
        order = [s]
        i = 0
        while i < len(order):
            x = order[i]
            i += 1
            for p in perms:
                if p[x] not in label:
                    label[p[x]] = len(label)
                    order.append(p[x])
        inv = order
        rel = tuple(tuple(label[p[inv[k]]] for k in range(d)) for p in perms)
        if best is None or rel < best:
            best = rel
    return best


# -- problems ------------------------------------------------------------------


@dataclass(frozen=True)
class RamificationProblem:
    """Degree plus (label, cycle lengths) prescriptions; parts summing below d are partial."""

    degree: int
    prescribed: tuple[tuple[str, tuple[int, ...]], ...] = ()

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError("degree must be positive")
        norm = []
        labels = set()
        for label, parts in self.prescribed:
            parts = tuple(sorted((int(x) for x in parts), reverse=True))
            if label in labels:
                raise ValueError(f"point {label!r} prescribed twice")
            labels.add(label)
            if any(x < 1 for x in parts):
                raise ValueError(f"{label}: parts must be positive")
            if any(x > self.degree for x in parts) or sum(parts) > self.degree:
                raise ValueError(f"{label}: profile {parts} exceeds degree {self.degree}")
            norm.append((label, parts))
        object.__setattr__(self, "prescribed", tuple(norm))

    @property
    def is_full(self) -> bool:
        return all(sum(p) == self.degree for _, p in self.prescribed)

    def rh_extra_branch_points(self) -> int:
        d = self.degree
        return 2 * d - 2 - sum(d - len(p) for _, p in self.prescribed)


@dataclass(frozen=True)
class Realizability:
    exists: bool
    count: Fraction
    covers: int | None
    rh_extra_branch_points: int
    tuples: int

    def to_dict(self) -> dict:
        return {
            "exists": self.exists,
            "count": str(self.count),
            "covers": self.covers,
            "rh_extra_branch_points": self.rh_extra_branch_points,
            "tuples": self.tuples,
        }


def complete_profiles(p: RamificationProblem) -> list[RamificationProblem]:
    """All completions of partial profiles to partitions of the degree."""
    d = p.degree
    options = []
    for label, parts in p.prescribed:
        rest = d - sum(parts)
        found = sorted({tuple(sorted(parts + mu, reverse=True)) for mu in partitions(rest)}, reverse=True)
        options.append([(label, c) for c in found])
    return [RamificationProblem(d, tuple(choice)) for choice in itertools.product(*options)]


def _check_capacity(d: int, d_max: int) -> None:
    if d_max > D_MAX:
        warnings.warn(f"raising the degree cap above {D_MAX} makes exhaustive searches slow", stacklevel=3)
    if d > d_max:
        raise CapacityError(f"degree {d} exceeds the exhaustive-search cap {d_max}")


def realizable(p: RamificationProblem, d_max: int = D_MAX, cover_limit: int = COVER_LIMIT) -> Realizability:
    """Existence and counts of genus-zero covers realizing full profiles.

    ``count`` is the automorphism-weighted Hurwitz count (tuples / d!) as an
    exact rational; ``covers`` is the number of isomorphism classes, or
    ``None`` when there are more than ``cover_limit`` tuples to classify.
    """
    _check_capacity(p.degree, d_max)
    if not p.is_full:
        raise ValueError("partial profiles: use complete_profiles or partially_realizable")
    d = p.degree
    b = p.rh_extra_branch_points()
    if b < 0:
        return Realizability(False, Fraction(0), 0, b, 0)
    classes = tuple(parts for _, parts in p.prescribed if parts != (1,) * d) + ((2,) + (1,) * (d - 2),) * b
    n = transitive_factorizations(d, classes)
    covers = None
    if n <= cover_limit:
        covers = len({canonical_tuple(t) for t in factorization_tuples(d, classes)})
    return Realizability(n > 0, Fraction(n, factorial(d)), covers, b, n)


def partially_realizable(p: RamificationProblem, d_max: int = D_MAX) -> bool:
    _check_capacity(p.degree, d_max)
    return any(_exists(c.degree, tuple(parts for _, parts in c.prescribed)) for c in complete_profiles(p))


@lru_cache(maxsize=None)
def _exists(d: int, profiles: tuple[tuple[int, ...], ...]) -> bool:
    b = 2 * d - 2 - sum(d - len(p) for p in profiles)
    if b < 0:
        return False
    classes = tuple(sorted(p for p in profiles if p != (1,) * d)) + ((2,) + (1,) * (d - 2),) * b
    return transitive_factorizations(d, classes) > 0


def vertex_problem(g, vid: int) -> RamificationProblem:
    """Branching prescribed at an active vertex by its marks and nodes, grouped by image point."""
    v = g.vertex(vid)
    if not v.is_active:
        raise ValueError(f"vertex {vid} is contracted")
    by_point = defaultdict(list)
    for m in g.marks_on(vid):
        if m.target is not None:
            by_point[m.target].append(m.local_ramification)
    for e in g.edges_at(vid):
        image = g.edge_image(e)
        if image is not None:
            by_point[image].append(e.index_at(vid))
    return RamificationProblem(v.degree, tuple((k, tuple(by_point[k])) for k in sorted(by_point)))


def vertex_realizable(g, vid: int, d_max: int = D_MAX) -> bool:
    return partially_realizable(vertex_problem(g, vid), d_max)
