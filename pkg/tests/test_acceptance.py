"""Exit criteria. Each test is one criterion; the summary prints one line per test.

Every check is exact; the only tolerances are the wall-clock budgets.
"""

import random
import time
from functools import lru_cache
from itertools import product

import pytest

from geode.paths import (
    MONOID_CLASSES,
    PathClass,
    assemble_reverse,
    factor_reverse,
    heights,
    is_in_class,
    oracle_series,
    prime_class_of,
    prime_factorize,
    schutzenberger_check,
    verify_prime_gf,
    wiener_hopf_factor,
)
from geode.series import TruncationContext, series_set_y
from geode.solver import (
    GeodeBundle,
    compute_G,
    conjecture_coefficients,
    evaluate_geode_at_zero_sum,
    random_zero_sum_vectors,
    solve_S,
    solve_wiener_hopf_pair,
    verify_core_identities,
    verify_wiener_hopf,
)
from geode.specializations import SPECIALIZATIONS, closed_form_expand, specialize_named

from oracles import nonnegative_path_weights, transfer_counts

pytestmark = pytest.mark.acceptance

STEPS = (-1, 0, 1, 2)


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


def paths_up_to(n):
    return [p for L in range(n + 1) for p in product(STEPS, repeat=L)]


def test_1_oracle_equivalence():
    """1. oracle = S, G, H at (m=3, D=4) and (m=2, D=5), < 10 s"""
    with Timer() as tm:
        for m, D in ((3, 4), (2, 5)):
            b = GeodeBundle.build(TruncationContext(m, D))
            assert oracle_series("excursion", b.context) == b.S
            assert oracle_series("nonnegative", b.context) == b.G
            assert oracle_series("positive", b.context) == b.H
    assert tm.elapsed < 10


def test_2_core_identity_suite():
    """2. core identities and nonnegative integer coefficients for m <= 5, D <= 5, < 5 s"""
    with Timer() as tm:
        for m in range(1, 6):
            for D in range(0, 6):
                report = verify_core_identities(GeodeBundle.build(TruncationContext(m, D)))
                assert report.passed, (m, D, report.table())
    assert tm.elapsed < 5


def test_3_prime_generating_functions():
    """3. arch / prime-nonnegative / prime-positive gf at m=3, D=4, < 10 s"""
    with Timer() as tm:
        ctx = TruncationContext(3, 4)
        S = solve_S(ctx)
        for cls in ("arch", "prime-nonnegative", "prime-positive"):
            report = verify_prime_gf(cls, ctx, S)
            assert report.passed, report.table()
    assert tm.elapsed < 10


def test_4_wiener_hopf_pair():
    """4. 1 - y S(y) = (1 - y - S1) N(y) and N(1) = G at m=3, D=3, D_y=6, < 5 s"""
    with Timer() as tm:
        ctx = TruncationContext(3, 3, 6)
        w = solve_wiener_hopf_pair(ctx)
        report = verify_wiener_hopf(w)
        assert report.passed, report.table()
        assert series_set_y(w.N_y, 1) == compute_G(solve_S(ctx.without_y()))
    assert tm.elapsed < 5


def test_5_zero_sum_conjecture():
    """5. G(0,-f,f,...,-f,f) = sum k^n f^n for k=1..4 to f^10 (< 2 s); H = G on 20 random zero-sum points"""
    with Timer() as tm:
        for k in range(1, 5):
            c = conjecture_coefficients(k)
            ev = evaluate_geode_at_zero_sum(c, 10)
            assert ev.terms() == [k**n for n in range(11)]
            assert ev.agrees
    assert tm.elapsed < 2
    # independent route: weighted count of nonnegative paths by number of up steps
    for k in range(1, 5):
        assert nonnegative_path_weights(conjecture_coefficients(k), 10) == [k**n for n in range(11)]
    rng = random.Random(20251014)
    for c in random_zero_sum_vectors(rng, 20, max_m=4):
        ev = evaluate_geode_at_zero_sum(c, 8)
        assert ev.route == "series"
        assert ev.H == ev.G, c
        assert ev.G == ev.closed_form, c


def test_6_specializations():
    """6. five sequences = path oracle = closed form, 12 terms, < 5 s"""
    with Timer() as tm:
        for name, spec in SPECIALIZATIONS.items():
            seq = list(specialize_named(name, 12).terms)
            cls = "excursion" if spec.base == "S" else "positive"
            assert seq == transfer_counts({0: spec.t1, 1: spec.t2}, 12, cls), name
            assert seq == closed_form_expand(name, 12).coefficients(), name
    assert tm.elapsed < 5


@lru_cache(maxsize=None)
def _irreducible(p, cls):
    if not p or not is_in_class(p, cls):
        return False
    return not any(is_in_class(p[:i], cls) and is_in_class(p[i:], cls) for i in range(1, len(p)))


def _factorization_count(p, cls):
    ways = [1] + [0] * len(p)
    for j in range(1, len(p) + 1):
        ways[j] = sum(ways[i] for i in range(j) if ways[i] and _irreducible(p[i:j], cls))
    return ways[-1]


def test_7_factorization_round_trips():
    """7. Lemma, Wiener-Hopf and prime factorizations reassemble and are unique, <= 8 steps, < 60 s"""
    prime_classes = (PathClass.EXCURSION, PathClass.NONNEGATIVE, PathClass.POSITIVE, PathClass.REVERSE_POSITIVE)
    with Timer() as tm:
        for p in paths_up_to(8):
            n = -heights(p)[-1]
            for strict, cls in ((False, "reverse-nonnegative"), (True, "reverse-positive")):
                if is_in_class(p, cls):
                    es = factor_reverse(p, strict)
                    assert assemble_reverse(es, strict) == p
                    assert len(es) == (n if strict else n + 1)
                    assert all(is_in_class(e, "excursion") for e in es)
            a, b, c = wiener_hopf_factor(p)
            assert a + b + c == p
            assert is_in_class(a, "reverse-positive") and is_in_class(b, "excursion") and is_in_class(c, "positive")
            for cls in prime_classes:
                if not is_in_class(p, cls):
                    continue
                factors = prime_factorize(p, cls)
                assert tuple(s for f in factors for s in f) == p
                pc = prime_class_of(cls)
                for f in factors:
                    assert _irreducible(f, cls)
                    assert pc is None or is_in_class(f, pc)
                assert _factorization_count(p, cls) == 1
    assert tm.elapsed < 60


def test_8_schutzenberger_criterion():
    """8. p, pq, qr, r in M implies q in M for all triples of <= 4 steps, five classes, < 60 s"""
    paths = paths_up_to(4)
    with Timer() as tm:
        for cls in MONOID_CLASSES:
            member = {p for p in paths_up_to(8) if is_in_class(p, cls)}
            for q in paths:
                if q in member:
                    continue  # conclusion holds for every p, r
                lefts = [p for p in paths if p in member and p + q in member]
                rights = [r for r in paths if r in member and q + r in member]
                # every other triple with this q has a false premise
                for p in lefts:
                    for r in rights:
                        assert schutzenberger_check(cls, p, q, r), (cls, p, q, r)
                assert not (lefts and rights), (cls, q)
    assert tm.elapsed < 60
