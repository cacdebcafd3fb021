"""Two-variable specializations (t_n = 0 for n > 2) and their classical sequences."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable

from .errors import GeodeError
from .report import VerificationReport, equal_check
from .series import (
    Series,
    TruncationContext,
    series_mul,
    series_sqrt_univariate,
    series_substitute,
    univariate,
)
from .solver import compute_G, compute_H, solve_S


@dataclass(frozen=True)
class NamedSpecialization:
    name: str
    base: str  # "S" or "H"
    t1: tuple  # (coefficient, exponent) for t_1
    t2: tuple


SPECIALIZATIONS = {
    s.name: s
    for s in (
        NamedSpecialization("catalan", "S", (0, 1), (1, 1)),
        NamedSpecialization("motzkin", "S", (1, 1), (1, 2)),
        NamedSpecialization("riordan", "H", (1, 1), (1, 2)),
        NamedSpecialization("schroeder_large", "S", (1, 1), (1, 1)),
        NamedSpecialization("schroeder_small", "H", (1, 1), (1, 1)),
    )
}

DEFAULT_TERMS = 12


def get_specialization(name: str) -> NamedSpecialization:
    try:
        return SPECIALIZATIONS[name]
    except KeyError:
        raise GeodeError(f"unknown sequence {name!r}; choose from {', '.join(SPECIALIZATIONS)}") from None


@dataclass(frozen=True)
class SequenceResult:
    name: str
    terms: tuple

    def __len__(self):
        return len(self.terms)

    def to_json(self) -> dict:
        return {"name": self.name, "terms": [str(t) for t in self.terms]}

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def _check_terms(N: int) -> None:
    if N < 1:
        raise ValueError("need at least one term")


def substitute_recipe(s: Series, spec: NamedSpecialization, N: int) -> Series:
    """Apply the recipe's t_1, t_2 images to ``s``, keeping x^0..x^(N-1)."""
    return series_substitute(s, [spec.t1, spec.t2], N - 1)


def specialize_named(name: str, N: int = DEFAULT_TERMS) -> SequenceResult:
    """First N coefficients of S or H under the named substitution."""
    _check_terms(N)
    spec = get_specialization(name)
    S = solve_S(TruncationContext(2, N))
    base = S if spec.base == "S" else compute_H(S)
    coeffs = substitute_recipe(base, spec, N).coefficients()
    if not all(isinstance(c, int) and c >= 0 for c in coeffs):
        raise ArithmeticError(f"{name}: non-integral or negative coefficient in {coeffs}")
    return SequenceResult(name, tuple(coeffs))


def _monomial(ctx: TruncationContext, coeff, exp: int) -> Series:
    if not coeff or exp > ctx.degree:
        return Series.zero(ctx)
    return Series.from_coefficients([0] * exp + [coeff], ctx.degree)


def _valuation(s: Series) -> int:
    return min(mon.t[0] for mon, _ in s.items())


def _shift_down(s: Series, v: int, N: int) -> Series:
    return Series.from_coefficients(s.coefficients()[v : v + N + 1], N)


def _exact_quotient(num: Series, den: Series, N: int) -> Series:
    """num / den truncated after x^N, for den = x^v * unit dividing num."""
    v = _valuation(den)
    low = num.coefficients()[:v]
    if any(low):
        raise ArithmeticError("closed form is not a power series")
    return series_mul(_shift_down(num, v, N), _shift_down(den, v, N).reciprocal())


def closed_form_expand(name: str, N: int = DEFAULT_TERMS) -> Series:
    """Expand the radical closed form of S or H for the named sequence.

    S = (1 - t1 - sqrt((1-t1)^2 - 4 t2)) / (2 t2)
    H = (1 + t1 - sqrt((1-t1)^2 - 4 t2)) / (2 (t1 + t2))
    evaluated along the recipe; returns x^0..x^(N-1).
    """
    _check_terms(N)
    spec = get_specialization(name)
    probe = univariate(max(spec.t1[1], spec.t2[1]) + 1)
    T1p, T2p = _monomial(probe, *spec.t1), _monomial(probe, *spec.t2)
    v = _valuation(2 * T2p if spec.base == "S" else 2 * (T1p + T2p))
    ctx = univariate(N - 1 + v)
    T1, T2 = _monomial(ctx, *spec.t1), _monomial(ctx, *spec.t2)
    one = Series.one(ctx)
    radicand = (one - T1) * (one - T1) - 4 * T2
    root = series_sqrt_univariate(radicand, ctx.degree)
    if spec.base == "S":
        num, den = one - T1 - root, 2 * T2
    else:
        num, den = one + T1 - root, 2 * (T1 + T2)
    return _exact_quotient(num, den, N - 1)


def verify_specialization_identities(
    N: int = DEFAULT_TERMS,
    closed_form: Callable[[str, int], Series] = closed_form_expand,
) -> VerificationReport:
    if N < 2:
        raise ValueError("N must be at least 2")
    checks = []
    for name in SPECIALIZATIONS:
        seq = specialize_named(name, N)
        expanded = closed_form(name, N).coefficients()
        checks.append(
            equal_check(
                f"{name}: substitution = closed form",
                Series.from_coefficients(seq.terms),
                Series.from_coefficients(expanded),
            )
        )
    ctx = TruncationContext(2, N)
    S = solve_S(ctx)
    G, H = compute_G(S), compute_H(S)
    t2 = Series.variable(ctx, 2)
    checks.append(equal_check("H = 1 + t2*G", H, 1 + t2 * G))
    checks.append(equal_check("G = S*H", G, S * H))
    return VerificationReport(tuple(checks))
