import random
from fractions import Fraction

import pytest

from geode.errors import InsufficientPrecisionError, ZeroSumError
from geode.paths import WeightScheme, oracle_series
from geode.series import Monomial, Series, TruncationContext, series_substitute, variables
from geode.solver import (
    GeodeBundle,
    compute_G,
    compute_H,
    conjecture_coefficients,
    evaluate_geode_at_zero_sum,
    iterate_S,
    random_zero_sum_vectors,
    solve_S,
    solve_wiener_hopf_pair,
    verify_core_identities,
    verify_wiener_hopf,
    wiener_hopf_context,
)

from oracles import PREDICATES, brute_counts


def from_counts(ctx, counts):
    return Series(ctx, counts)


# counts read off by listing excursions / nonnegative / positive paths by hand
S_22 = {(0, 0, 0): 1, (1, 0, 0): 1, (0, 1, 0): 1, (2, 0, 0): 1, (1, 1, 0): 3, (0, 2, 0): 2}
G_22 = {(0, 0, 0): 1, (1, 0, 0): 1, (0, 1, 0): 2, (2, 0, 0): 1, (1, 1, 0): 5, (0, 2, 0): 5}
H_22 = {(0, 0, 0): 1, (0, 1, 0): 1, (1, 1, 0): 1, (0, 2, 0): 2}


def test_small_window_values():
    ctx = TruncationContext(2, 2)
    S = solve_S(ctx)
    assert S == from_counts(ctx, S_22)
    assert compute_G(S) == from_counts(ctx, G_22)
    assert compute_H(S) == from_counts(ctx, H_22)


@pytest.mark.parametrize("name,table", [("excursion", S_22), ("nonnegative", G_22), ("positive", H_22)])
def test_hand_tables_match_brute_force(name, table):
    assert brute_counts(PREDICATES[name], 2, 2) == table


@pytest.mark.parametrize("m,D", [(1, 4), (2, 3), (3, 2)])
def test_against_brute_force(m, D):
    ctx = TruncationContext(m, D)
    S = solve_S(ctx)
    assert S == Series(ctx, brute_counts(PREDICATES["excursion"], m, D))
    assert compute_G(S) == Series(ctx, brute_counts(PREDICATES["nonnegative"], m, D))
    assert compute_H(S) == Series(ctx, brute_counts(PREDICATES["positive"], m, D))


def test_single_variable_is_geometric():
    for D in range(6):
        ctx = TruncationContext(1, D)
        S = solve_S(ctx)
        assert S.coefficients() == [1] * (D + 1)
        assert compute_G(S) == S
        assert compute_H(S) == Series.one(ctx)


def test_defining_equation_residual():
    ctx = TruncationContext(3, 4)
    S = solve_S(ctx)
    ts = variables(ctx)
    assert S - 1 - sum((t * S ** n for n, t in enumerate(ts, start=1)), Series.zero(ctx)) == Series.zero(ctx)


def test_degree_one_coefficients_of_G():
    m = 5
    ctx = TruncationContext(m, 1)
    G = compute_G(solve_S(ctx))
    for n in range(1, m + 1):
        e = [0] * m
        e[n - 1] = 1
        assert G.coeff(Monomial(tuple(e), 0)) == n


def test_H_has_no_t1_term():
    ctx = TruncationContext(3, 3)
    H = compute_H(solve_S(ctx))
    assert H.coeff(Monomial((1, 0, 0), 0)) == 0


def test_fixed_point_stabilization():
    ctx = TruncationContext(3, 5)
    S = solve_S(ctx)
    for k, Sk in enumerate(iterate_S(variables(ctx))):
        low = TruncationContext(3, min(k, 5))
        assert Sk.truncate(low) == S.truncate(low)
        if k >= ctx.degree:
            assert Sk == S
        if k > ctx.degree + 1:
            break


@pytest.mark.parametrize("m", range(1, 6))
@pytest.mark.parametrize("D", range(0, 6))
def test_core_identities_all_windows(m, D):
    report = verify_core_identities(GeodeBundle.build(TruncationContext(m, D)))
    assert report.passed, report.table()
    assert len(report.checks) == 6


def test_perturbed_G_is_reported():
    ctx = TruncationContext(3, 3)
    b = GeodeBundle.build(ctx)
    bump = Series(ctx, {(1, 1, 0, 0): 1})
    bad = GeodeBundle(ctx, b.S, b.S1, b.G + bump, b.H)
    report = verify_core_identities(bad)
    check = report["S = 1 + G*S1"]
    assert not check.passed
    # G*S1 moves first at t1 * (t1 t2)
    assert check.failing_monomial == Monomial((2, 1, 0), 0)
    assert report["S*(1 - H*S1) = 1"].passed


def test_report_json():
    report = verify_core_identities(GeodeBundle.build(TruncationContext(2, 2)))
    doc = report.to_json()
    assert [c["pass"] for c in doc["checks"]] == [True] * 6
    assert all(set(c) == {"name", "degree", "pass", "failing_monomial"} for c in doc["checks"])


# -- y-weighted pair ----------------------------------------------------------


def test_wiener_hopf_examples():
    ctx = wiener_hopf_context(2, 2)
    w = solve_wiener_hopf_pair(ctx)
    assert w.S_y.coeff(Monomial((0, 1), 1)) == 1
    assert w.N_y.coeff(Monomial((0, 1), 0)) == 1
    assert w.N_y.coeff(Monomial((0, 1), 1)) == 1


@pytest.mark.parametrize("m,D", [(2, 2), (2, 3), (3, 2)])
def test_wiener_hopf_against_brute_force(m, D):
    ctx = wiener_hopf_context(m, D)
    w = solve_wiener_hopf_pair(ctx)
    assert w.S_y == Series(ctx, brute_counts(PREDICATES["excursion"], m, D, y_weighted=True))
    assert w.N_y == Series(ctx, brute_counts(PREDICATES["nonnegative"], m, D, y_weighted=True))


def test_wiener_hopf_matches_package_oracle():
    ctx = wiener_hopf_context(3, 3)
    w = solve_wiener_hopf_pair(ctx)
    assert w.N_y == oracle_series("nonnegative", ctx, WeightScheme(y_weighted=True))
    assert verify_wiener_hopf(w).passed


def test_wiener_hopf_needs_y_room():
    with pytest.raises(InsufficientPrecisionError):
        solve_wiener_hopf_pair(TruncationContext(3, 3, 5))


# -- zero-sum substitutions ---------------------------------------------------


def test_conjecture_vectors():
    assert conjecture_coefficients(1) == (0, -1, 1)
    assert conjecture_coefficients(2) == (0, -1, 1, -1, 1)
    assert conjecture_coefficients(0) == (0,)


@pytest.mark.parametrize("k", [1, 2])
def test_conjecture_small(k):
    ev = evaluate_geode_at_zero_sum(conjecture_coefficients(k), 6)
    assert ev.terms() == [k**n for n in range(7)]
    assert ev.agrees


def test_alternating_case():
    ev = evaluate_geode_at_zero_sum((1, -1), 6)
    assert ev.terms() == [(-1) ** n for n in range(7)]


@pytest.mark.parametrize("c", [(0, -1, 1), (1, -1), (Fraction(1, 2), 1, Fraction(-3, 2)), (2, -3, 0, 1)])
def test_routes_agree(c):
    a = evaluate_geode_at_zero_sum(c, 6, route="series")
    b = evaluate_geode_at_zero_sum(c, 6, route="image")
    assert a.G == b.G and a.H == b.H and a.agrees


def test_image_route_matches_substitution_of_G():
    # nonzero-sum point too: the image construction is the substitution of G
    c = (1, 2, -1)
    ctx = TruncationContext(3, 5)
    S = solve_S(ctx)
    direct = series_substitute(compute_G(S), c, 5)
    from geode.solver import _G_images, _solve_S_images
    from geode.series import univariate

    f = Series.variable(univariate(5), 1)
    ts = [f.scale(v) for v in c]
    assert _G_images(_solve_S_images(ts), ts) == direct


def test_zero_sum_errors():
    with pytest.raises(ZeroSumError):
        evaluate_geode_at_zero_sum((1, 1), 4)
    with pytest.raises(InsufficientPrecisionError):
        evaluate_geode_at_zero_sum((1, -1), 4, ctx=TruncationContext(2, 3))
    with pytest.raises(InsufficientPrecisionError):
        evaluate_geode_at_zero_sum((1, 0, -1), 4, ctx=TruncationContext(2, 4))


def test_random_vectors_sum_to_zero():
    vs = random_zero_sum_vectors(random.Random(3), 50)
    assert all(sum(v) == 0 and 2 <= len(v) <= 4 for v in vs)
