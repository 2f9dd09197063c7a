from __future__ import annotations

import itertools
from collections import Counter
from fractions import Fraction
from math import factorial, prod

import pytest

import hurwitz_oracle as oracle
from conftest import star, totally_ramified_comb
from relsmooth.errors import CapacityError
from relsmooth.hurwitz import (
    RamificationProblem,
    canonical_tuple,
    class_elements,
    complete_profiles,
    factorization_tuples,
    partially_realizable,
    partitions,
    realizable,
    transitive_factorizations,
    vertex_problem,
    vertex_realizable,
)


def _problem(d, profiles):
    return RamificationProblem(d, tuple((f"x{i}", p) for i, p in enumerate(profiles)))


def _classes(d, profiles):
    b = 2 * d - 2 - sum(d - len(p) for p in profiles)
    return [p for p in profiles if p != (1,) * d] + [(2,) + (1,) * (d - 2)] * b


def test_partitions():
    assert list(partitions(4)) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert [len(list(partitions(n))) for n in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]


def test_class_sizes():
    for d in range(1, 6):
        for lam in partitions(d):
            c = Counter(lam)
            size = factorial(d) // (prod(lam) * prod(factorial(k) for k in c.values()))
            assert len(class_elements(d, lam)) == size


def test_two_totally_ramified_points_in_degree_three():
    r = realizable(_problem(3, [(3,), (3,)]))
    assert r.exists and r.covers == 1 and r.rh_extra_branch_points == 0
    assert r.count == Fraction(1, 3)


def test_parity_violations_are_not_realizable():
    for d, profiles in [(2, [(2,), (2,), (2,)]), (3, [(3,), (3,), (3,)]), (4, [(4,), (4,), (2, 2)])]:
        r = realizable(_problem(d, profiles))
        assert not r.exists and r.rh_extra_branch_points < 0 and r.covers == 0


def test_known_non_realizable_profile():
    # the classical exception: (2,2), (2,2), (3,1) in degree 4 has no genus-zero cover
    r = realizable(_problem(4, [(2, 2), (2, 2), (3, 1)]))
    assert r.rh_extra_branch_points == 0 and not r.exists


def test_simple_hurwitz_numbers():
    # genus zero, only simple branching: d^(d-3) (2d-2)! / d!
    for d in range(1, 8):
        r = realizable(RamificationProblem(d))
        assert r.count == Fraction(d) ** (d - 3) * Fraction(factorial(2 * d - 2), factorial(d))


def test_one_part_double_hurwitz_numbers():
    # one arbitrary profile μ plus simple branching: r!/|Aut μ| d^(ℓ-3) Π μ_i^μ_i / μ_i!
    for d in range(1, 7):
        for mu in partitions(d):
            ell = len(mu)
            r = d + ell - 2
            aut = prod(factorial(k) for k in Counter(mu).values())
            expected = Fraction(factorial(r), aut) * Fraction(d) ** (ell - 3) * prod(
                Fraction(m**m, factorial(m)) for m in mu)
            got = realizable(_problem(d, [mu]), cover_limit=0).count
            assert got == expected, (d, mu)


def test_counts_match_exhaustive_oracle_small_degree():
    for d in (1, 2, 3):
        parts = list(partitions(d))
        for k in range(0, 5):
            for profiles in itertools.combinations_with_replacement(parts, k):
                r = realizable(_problem(d, list(profiles)))
                if r.rh_extra_branch_points < 0:
                    assert not r.exists
                    continue
                classes = _classes(d, profiles)
                assert r.tuples == len(oracle.tuples(d, classes))
                assert r.covers == oracle.covers(d, classes)


def test_complete_profiles():
    p = RamificationProblem(4, (("a", (2,)), ("b", (1, 1, 1, 1))))
    got = [c.prescribed for c in complete_profiles(p)]
    assert got == [(("a", (2, 2)), ("b", (1, 1, 1, 1))), (("a", (2, 1, 1)), ("b", (1, 1, 1, 1)))]
    assert all(c.is_full for c in complete_profiles(p))


def test_partial_realizability():
    assert partially_realizable(RamificationProblem(4, (("a", (3,)),)))
    assert not partially_realizable(RamificationProblem(2, (("a", (2,)), ("b", (2,)), ("c", (2,)))))


def test_problem_validation():
    with pytest.raises(ValueError):
        RamificationProblem(0)
    with pytest.raises(ValueError):
        RamificationProblem(3, (("a", (2, 2)),))
    with pytest.raises(ValueError):
        RamificationProblem(3, (("a", (1,)), ("a", (2,))))
    with pytest.raises(ValueError):
        realizable(RamificationProblem(3, (("a", (2,)),)))


def test_capacity():
    with pytest.raises(CapacityError):
        realizable(RamificationProblem(8))
    with pytest.raises(CapacityError):
        partially_realizable(RamificationProblem(5), d_max=4)


def test_count_is_symmetric_in_order():
    for d in (3, 4, 5):
        for profiles in [[(3,) + (1,) * (d - 3), (2,) + (1,) * (d - 2), (d,)], [(d,), (2, 2) + (1,) * (d - 4) if d >= 4 else (2, 1)]]:
            counts = {transitive_factorizations(d, tuple(p)) for p in itertools.permutations(_classes(d, profiles))}
            assert len(counts) == 1


def test_padding_with_unramified_points():
    for d in (2, 3, 4):
        for lam in partitions(d):
            a = realizable(_problem(d, [lam]))
            b = realizable(_problem(d, [lam, (1,) * d, (1,) * d]))
            assert (a.tuples, a.covers) == (b.tuples, b.covers)


def test_enumerated_tuples_are_distinct_and_complete():
    d, classes = 4, ((3, 1), (2, 1, 1), (2, 1, 1), (2, 1, 1))
    mine = list(factorization_tuples(d, classes))
    assert len(mine) == len(set(mine)) == transitive_factorizations(d, classes)
    assert set(mine) == set(oracle.tuples(d, classes))


def test_canonical_tuple_is_conjugation_invariant():
    d, classes = 4, ((4,), (2, 1, 1), (2, 1, 1), (2, 1, 1))
    ts = list(factorization_tuples(d, classes))
    reps = {canonical_tuple(t) for t in ts}
    assert len(reps) == oracle.covers(d, classes)


def test_vertex_problems():
    g = star([2, 3], [1, 1, 3])
    assert vertex_problem(g, 1).prescribed == (("inf", (2,)),)
    assert vertex_realizable(g, 2)
    comb = totally_ramified_comb(4)
    assert vertex_problem(comb, 0).prescribed == (("inf", (4,)),)
    with pytest.raises(ValueError):
        vertex_problem(comb, 1)
