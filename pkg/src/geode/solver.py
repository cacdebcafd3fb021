"""S, G, H and the y-weighted pair S(y), N(y) in a truncation window.

All constructions take the images of t_1..t_m as a list of series, so the
same code computes the multivariate series (images = the variables) or their
image under a substitution t_n -> c_n x^{e_n} (images = those univariate
series).  Since substitution is a ring homomorphism that commutes with the
fixed-point iteration and with reciprocals of units, the two agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from math import comb
from typing import Iterator, Sequence

from .errors import InsufficientPrecisionError, ZeroSumError
from .report import Check, VerificationReport, equal_check, zero_check
from .series import (
    Series,
    TruncationContext,
    normalize,
    series_set_y,
    series_substitute,
    sum_series,
    univariate,
    variables,
)


def _partial_geometric(S: Series, m: int) -> list:
    """[1, 1+S, 1+S+S^2, ..., 1+S+...+S^(m-1)]."""
    out = [Series.one(S.context)]
    for _ in range(m - 1):
        out.append(1 + S * out[-1])
    return out


def _power_sum(S: Series, ts: Sequence[Series]) -> Series:
    # sum_n t_n S^n by Horner
    acc = Series.zero(S.context)
    for t in reversed(ts):
        acc = S * (t + acc)
    return acc


def iterate_S(ts: Sequence[Series]) -> Iterator[Series]:
    """Fixed-point iterates S0 = 1, S(k+1) = 1 + sum t_n S(k)^n."""
    ctx = ts[0].context
    S = Series.one(ctx)
    while True:
        yield S
        S = 1 + _power_sum(S, ts)


def _solve_S_images(ts: Sequence[Series]) -> Series:
    limit = ts[0].context.degree + 2
    prev = None
    for k, S in enumerate(iterate_S(ts)):
        if S == prev:
            return S
        if k > limit:
            raise RuntimeError("fixed-point iteration did not stabilize")
        prev = S


def _G_images(S: Series, ts: Sequence[Series]) -> Series:
    geo = _partial_geometric(S, len(ts))
    return (1 - sum_series(S.context, (t * g for t, g in zip(ts, geo)))).reciprocal()


def _H_images(S: Series, ts: Sequence[Series]) -> Series:
    geo = _partial_geometric(S, len(ts))
    return (1 - sum_series(S.context, (t * (g - 1) for t, g in zip(ts, geo)))).reciprocal()


def solve_S(ctx: TruncationContext) -> Series:
    """The unique series with S = 1 + sum_{n<=m} t_n S^n in ``ctx``."""
    if ctx.y_degree:
        raise ValueError("solve_S works in a y-free window; use solve_wiener_hopf_pair")
    return _solve_S_images(variables(ctx))


def compute_G(S: Series) -> Series:
    """G = 1 / (1 - sum t_n (1 + S + ... + S^(n-1)))."""
    return _G_images(S, variables(S.context))


def compute_H(S: Series) -> Series:
    """H = 1 / (1 - sum_{n>=2} t_n (S + ... + S^(n-1)))."""
    return _H_images(S, variables(S.context))


def S1_series(ctx: TruncationContext) -> Series:
    return sum_series(ctx, variables(ctx))


@dataclass(frozen=True)
class GeodeBundle:
    context: TruncationContext
    S: Series
    S1: Series
    G: Series
    H: Series

    @classmethod
    def build(cls, ctx: TruncationContext) -> "GeodeBundle":
        S = solve_S(ctx)
        return cls(ctx, S, S1_series(ctx), compute_G(S), compute_H(S))

    def series(self, name: str) -> Series:
        return {"S": self.S, "S1": self.S1, "G": self.G, "H": self.H}[name]


@lru_cache(maxsize=32)
def cached_bundle(ctx: TruncationContext) -> GeodeBundle:
    """GeodeBundle.build, memoized per window (bundles are immutable)."""
    return GeodeBundle.build(ctx)


def _coefficient_check(name: str, bundle: GeodeBundle) -> Check:
    for s in (bundle.S, bundle.G, bundle.H):
        for mon, c in s.items():
            if not isinstance(c, int) or c < 0:
                return Check(name, bundle.context.degree, False, mon)
    return Check(name, bundle.context.degree, True)


def verify_core_identities(bundle: GeodeBundle) -> VerificationReport:
    ts = variables(bundle.context)
    S, S1, G, H = bundle.S, bundle.S1, bundle.G, bundle.H
    arches = sum_series(bundle.context, (t * g for t, g in zip(ts, _powers(S, len(ts)))))
    checks = (
        zero_check("S*(1 - sum t_n S^(n-1)) = 1", S * (1 - arches) - 1),
        zero_check("S*(1 - H*S1) = 1", S * (1 - H * S1) - 1),
        equal_check("S = 1 + G*S1", S, 1 + G * S1),
        equal_check("G = S*H", G, S * H),
        equal_check("1/H - 1/G = S1", H.reciprocal() - G.reciprocal(), S1),
        _coefficient_check("S, G, H nonnegative integral", bundle),
    )
    return VerificationReport(checks)


def _powers(S: Series, m: int) -> list:
    """[1, S, ..., S^(m-1)]."""
    out = [Series.one(S.context)]
    for _ in range(m - 1):
        out.append(out[-1] * S)
    return out


# -- y-weighted excursions and nonnegative paths -----------------------------


def wiener_hopf_context(m: int, degree: int) -> TruncationContext:
    """Window whose y-range holds every down step of a degree-bounded path."""
    return TruncationContext(m, degree, (m - 1) * degree)


@dataclass(frozen=True)
class WienerHopfBundle:
    context: TruncationContext
    S_y: Series
    N_y: Series

    def S_at_one(self) -> Series:
        return series_set_y(self.S_y, 1)

    def N_at_one(self) -> Series:
        return series_set_y(self.N_y, 1)


def solve_wiener_hopf_pair(ctx: TruncationContext) -> WienerHopfBundle:
    """S(y) and N(y): excursions and nonnegative paths, y per down step.

    An excursion whose first step is the up step n-1 factors as
    U_{n-1} E_1 D E_2 ... D E_n, carrying n-1 down steps at top level, so
    S(y) = 1 + sum_n t_n y^(n-1) S(y)^n.  N(y) then comes from splitting
    every path into a reverse-positive part and a nonnegative part:
    1 - y S(y) = (1 - y - S1) N(y).
    """
    need = (ctx.m - 1) * ctx.degree
    if ctx.y_degree < need:
        raise InsufficientPrecisionError(f"y_degree {ctx.y_degree} < (m-1)*degree = {need}")
    y = Series.y(ctx)
    ts = variables(ctx)
    weighted = [t * y ** (n - 1) for n, t in enumerate(ts, start=1)]
    S_y = _solve_S_images(weighted)
    S1 = sum_series(ctx, ts)
    N_y = (1 - y - S1).reciprocal() * (1 - y * S_y)
    return WienerHopfBundle(ctx, S_y, N_y)


def verify_wiener_hopf(bundle: WienerHopfBundle) -> VerificationReport:
    ctx = bundle.context
    y = Series.y(ctx)
    S1 = S1_series(ctx)
    plain = ctx.without_y()
    S = solve_S(plain)
    checks = (
        equal_check("1 - y*S(y) = (1 - y - S1)*N(y)", 1 - y * bundle.S_y, (1 - y - S1) * bundle.N_y),
        equal_check("S(1) = S", bundle.S_at_one(), S),
        equal_check("N(1) = G", bundle.N_at_one(), compute_G(S)),
    )
    return VerificationReport(checks)


# -- zero-sum substitutions --------------------------------------------------


def conjecture_coefficients(k: int) -> tuple:
    """(0, -1, 1, ..., -1, 1) with 2k+1 entries."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    return (0,) + tuple((-1) ** (n - 1) for n in range(2, 2 * k + 2))


@dataclass(frozen=True)
class ZeroSumEvaluation:
    coefficients: tuple
    degree: int
    G: Series
    H: Series
    closed_form: Series
    route: str

    @property
    def agrees(self) -> bool:
        return self.G == self.closed_form and self.H == self.G

    def terms(self) -> list:
        return self.G.coefficients()


MULTIVARIATE_LIMIT = 1000


def window_size(m: int, D: int) -> int:
    """Number of monomials of t-degree at most D in m variables."""
    return comb(m + D, m)


def evaluate_geode_at_zero_sum(c: Sequence, N: int, ctx: TruncationContext = None, route: str = "auto") -> ZeroSumEvaluation:
    """G and H at t_n = c_n f (sum c_n = 0), against 1/(1 - sum n c_n f).

    ``route="series"`` builds G and H in the full multivariate window and then
    substitutes; ``route="image"`` runs the same construction directly on the
    images c_n f.  ``"auto"`` picks the multivariate route when the window has
    at most ``MULTIVARIATE_LIMIT`` monomials.
    """
    c = tuple(normalize(Fraction(v) if isinstance(v, str) else v) for v in c)
    if not c:
        raise ValueError("need at least one coefficient")
    if sum(c) != 0:
        raise ZeroSumError(f"coefficients sum to {sum(c)}, not 0")
    if ctx is None:
        ctx = TruncationContext(len(c), N)
    if ctx.m < len(c) or ctx.degree < N:
        raise InsufficientPrecisionError(f"window {ctx} too small for {len(c)} variables to degree {N}")
    if route == "auto":
        route = "series" if window_size(ctx.m, ctx.degree) <= MULTIVARIATE_LIMIT else "image"
    if route == "series":
        bundle = cached_bundle(ctx)
        G = series_substitute(bundle.G, c, N)
        H = series_substitute(bundle.H, c, N)
    elif route == "image":
        f = Series.variable(univariate(N), 1)
        ts = [f.scale(v) for v in c]
        S = _solve_S_images(ts)
        G, H = _G_images(S, ts), _H_images(S, ts)
    else:
        raise ValueError(f"unknown route {route!r}")
    rate = sum(n * v for n, v in enumerate(c, start=1))
    closed = (1 - Series.variable(univariate(N), 1).scale(rate)).reciprocal()
    return ZeroSumEvaluation(c, N, G, H, closed, route)


def verify_zero_sum(vectors: Sequence, N: int) -> VerificationReport:
    checks = []
    for c in vectors:
        ev = evaluate_geode_at_zero_sum(c, N)
        label = ",".join(str(v) for v in ev.coefficients)
        checks.append(equal_check(f"G({label}) closed form", ev.G, ev.closed_form))
        checks.append(equal_check(f"H({label}) = G({label})", ev.H, ev.G))
    return VerificationReport(tuple(checks))


def random_zero_sum_vectors(rng, count: int, max_m: int = 4, max_num: int = 5, max_den: int = 4) -> list:
    """Random rational vectors of length 2..max_m summing to zero."""
    out = []
    for _ in range(count):
        m = rng.randint(2, max_m)
        head = [Fraction(rng.randint(-max_num, max_num), rng.randint(1, max_den)) for _ in range(m - 1)]
        out.append(tuple(normalize(v) for v in head + [-sum(head)]))
    return out
