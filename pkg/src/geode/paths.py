"""Lattice paths as integer step sequences: classes, enumeration, factorizations.

A path ``(s_1, ..., s_k)`` starts at height 0 and visits heights
``s_1, s_1+s_2, ...``.  Up step ``n >= 0`` weighs ``t_{n+1}``; the down step
``-1`` weighs 1, or ``y`` under a y-weighted scheme.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum
from itertools import accumulate
from typing import Iterable, Iterator, Sequence, Union

from .errors import (
    InfiniteEnumerationError,
    NotFactorableError,
    NotInClassError,
    UnsupportedStepError,
)
from .report import VerificationReport, equal_check
from .series import Series, TruncationContext, sum_series, variables

Path = tuple


class PathClass(str, Enum):
    EXCURSION = "excursion"
    NONNEGATIVE = "nonnegative"
    POSITIVE = "positive"
    REVERSE_NONNEGATIVE = "reverse-nonnegative"
    REVERSE_POSITIVE = "reverse-positive"
    ARCH = "arch"
    PRIME_NONNEGATIVE = "prime-nonnegative"
    PRIME_POSITIVE = "prime-positive"
    ANY = "any"


MONOID_CLASSES = (
    PathClass.EXCURSION,
    PathClass.NONNEGATIVE,
    PathClass.POSITIVE,
    PathClass.REVERSE_NONNEGATIVE,
    PathClass.REVERSE_POSITIVE,
)

# subsets of the nonnegative paths: finitely many for a fixed multiset of up steps
_FLOORED = {
    PathClass.EXCURSION,
    PathClass.NONNEGATIVE,
    PathClass.POSITIVE,
    PathClass.ARCH,
    PathClass.PRIME_NONNEGATIVE,
    PathClass.PRIME_POSITIVE,
}

_PRIME_OF = {
    PathClass.EXCURSION: PathClass.ARCH,
    PathClass.NONNEGATIVE: PathClass.PRIME_NONNEGATIVE,
    PathClass.POSITIVE: PathClass.PRIME_POSITIVE,
}


def as_class(c: Union[str, PathClass]) -> PathClass:
    return c if isinstance(c, PathClass) else PathClass(c)


def parse_path(text: str) -> Path:
    text = text.strip()
    if not text:
        return ()
    return tuple(int(part) for part in text.split(","))


def format_path(p: Sequence[int]) -> str:
    return ",".join(str(s) for s in p)


def heights(p: Sequence[int]) -> list:
    """Heights of all vertices, starting with the initial 0."""
    return [0, *accumulate(p)]


def reverse(p: Sequence[int]) -> Path:
    return tuple(-s for s in reversed(p))


def _require_lukasiewicz(p: Sequence[int]) -> None:
    if any(s < -1 for s in p):
        raise UnsupportedStepError(f"path {format_path(p)} has a step below -1")


def _nonneg_cuts(h: list) -> list:
    # interior i with h[i] <= every later height
    cuts, low = [], None
    for i in range(len(h) - 1, 0, -1):
        low = h[i] if low is None else min(low, h[i])
        if i < len(h) - 1 and h[i] <= low:
            cuts.append(i)
    return cuts[::-1]


def _positive_cuts(h: list) -> list:
    # interior i with h[i] < every later height
    cuts, low = [], None
    for i in range(len(h) - 1, 0, -1):
        if low is not None and h[i] < low:
            cuts.append(i)
        low = h[i] if low is None else min(low, h[i])
    return cuts[::-1]


def is_in_class(p: Sequence[int], c: Union[str, PathClass]) -> bool:
    c = as_class(c)
    h = heights(p)
    if c is PathClass.ANY:
        return True
    if c is PathClass.NONNEGATIVE:
        return min(h) >= 0
    if c is PathClass.POSITIVE:
        return all(x > 0 for x in h[1:])
    if c is PathClass.EXCURSION:
        return min(h) >= 0 and h[-1] == 0
    if c is PathClass.REVERSE_NONNEGATIVE:
        return h[-1] <= min(h)
    if c is PathClass.REVERSE_POSITIVE:
        return all(x > h[-1] for x in h[:-1])
    if c is PathClass.ARCH:
        return len(p) > 0 and h[-1] == 0 and all(x > 0 for x in h[1:-1])
    _require_lukasiewicz(p)
    if c is PathClass.PRIME_NONNEGATIVE:
        return len(p) > 0 and min(h) >= 0 and not _nonneg_cuts(h)
    if c is PathClass.PRIME_POSITIVE:
        return len(p) > 0 and all(x > 0 for x in h[1:]) and not _positive_cuts(h)
    raise ValueError(f"unknown class {c}")


def is_irreducible(p: Sequence[int], c: Union[str, PathClass]) -> bool:
    """Brute force: nonempty member of ``c`` with no split into two nonempty members."""
    c = as_class(c)
    if not p or not is_in_class(p, c):
        return False
    return not any(is_in_class(p[:i], c) and is_in_class(p[i:], c) for i in range(1, len(p)))


# -- enumeration -------------------------------------------------------------


def _arrangements(counts: dict, floor: bool) -> Iterator[list]:
    """Distinct step sequences from a multiset, ascending lexicographic.

    With ``floor`` set, prefixes dipping below height 0 are pruned.
    """
    steps = sorted(counts)
    total = sum(counts.values())
    seq = []

    def rec(height):
        if len(seq) == total:
            yield list(seq)
            return
        for s in steps:
            if counts[s] and (not floor or height + s >= 0):
                counts[s] -= 1
                seq.append(s)
                yield from rec(height + s)
                seq.pop()
                counts[s] += 1

    yield from rec(0)


def enumerate_class(c: Union[str, PathClass], ups: Iterable[int], down_count="all") -> list:
    """Every path in ``c`` with exactly the up steps ``ups`` (a multiset).

    ``down_count="all"`` ranges over 0..sum(ups) down steps and is allowed
    only for classes that never go below the axis.  Output is sorted by
    number of down steps, then lexicographically.
    """
    c = as_class(c)
    ups = list(ups)
    if any(u < 0 for u in ups):
        raise ValueError("up steps must be nonnegative")
    if down_count == "all":
        if c not in _FLOORED:
            raise InfiniteEnumerationError(f"class {c.value} needs an explicit down_count")
        downs = range(sum(ups) + 1)
    else:
        if down_count < 0:
            raise ValueError("down_count must be nonnegative")
        downs = [down_count]
    out = []
    for d in downs:
        counts = Counter(ups)
        counts[-1] += d
        for seq in _arrangements(dict(counts), floor=c in _FLOORED):
            if is_in_class(seq, c):
                out.append(tuple(seq))
    return out


@dataclass(frozen=True)
class WeightScheme:
    """Up step n weighs t_{n+1}; down steps weigh y when ``y_weighted``."""

    y_weighted: bool = False


def iter_floored_paths(m: int, degree: int, max_downs: int = None) -> Iterator[Path]:
    """All nonnegative paths with steps -1..m-1 and at most ``degree`` up steps."""
    seq = []

    def rec(height, ups, downs):
        yield tuple(seq)
        if height > 0 and (max_downs is None or downs < max_downs):
            seq.append(-1)
            yield from rec(height - 1, ups, downs + 1)
            seq.pop()
        if ups < degree:
            for s in range(m):
                seq.append(s)
                yield from rec(height + s, ups + 1, downs)
                seq.pop()

    yield from rec(0, 0, 0)


def path_monomial(p: Sequence[int], m: int, y_weighted: bool = False) -> tuple:
    key = [0] * (m + 1)
    for s in p:
        if s >= 0:
            key[s] += 1
        elif y_weighted:
            key[-1] += 1
    return tuple(key)


def oracle_series(c: Union[str, PathClass], ctx: TruncationContext, weights: WeightScheme = WeightScheme()) -> Series:
    """Generating function of class ``c`` by exhaustive path enumeration."""
    c = as_class(c)
    if c not in _FLOORED:
        raise InfiniteEnumerationError(f"class {c.value} has infinitely many paths per monomial")
    max_downs = ctx.y_degree if weights.y_weighted else None
    counts = Counter()
    for p in iter_floored_paths(ctx.m, ctx.degree, max_downs):
        if is_in_class(p, c):
            counts[path_monomial(p, ctx.m, weights.y_weighted)] += 1
    return Series(ctx, dict(counts))


# -- factorizations ------------------------------------------------------------


def factor_reverse(p: Sequence[int], strict: bool = False) -> list:
    """Excursions E_1, ..., E_{n+1} with p = E_1 D E_2 D ... D E_{n+1}.

    ``p`` must be reverse-nonnegative and end at height -n.  With ``strict``
    (reverse-positive ``p``) the last excursion is empty and dropped, so
    p = E_1 D ... E_n D.
    """
    p = tuple(p)
    _require_lukasiewicz(p)
    cls = PathClass.REVERSE_POSITIVE if strict else PathClass.REVERSE_NONNEGATIVE
    if not is_in_class(p, cls):
        raise NotFactorableError(f"path {format_path(p)} is not {cls.value}")
    factors, start, height, floor = [], 0, 0, 0
    for i, s in enumerate(p):
        height += s
        if height < floor:
            # steps >= -1, so this is a down step onto a new low level
            factors.append(p[start:i])
            start, floor = i + 1, height
    factors.append(p[start:])
    if strict:
        assert factors[-1] == ()
        factors.pop()
    return factors


def assemble_reverse(factors: Sequence[Path], strict: bool = False) -> Path:
    out = []
    for i, e in enumerate(factors):
        out.extend(e)
        if strict or i < len(factors) - 1:
            out.append(-1)
    return tuple(out)


def wiener_hopf_factor(p: Sequence[int]) -> tuple:
    """Cut at the first and last lowest points: (reverse-positive, excursion, positive)."""
    p = tuple(p)
    h = heights(p)
    low = min(h)
    first = h.index(low)
    last = len(h) - 1 - h[::-1].index(low)
    return p[:first], p[first:last], p[last:]


def prime_factorize(p: Sequence[int], c: Union[str, PathClass]) -> list:
    """Unique factorization of ``p`` into primes of the free monoid ``c``."""
    c = as_class(c)
    p = tuple(p)
    _require_lukasiewicz(p)
    if c not in (PathClass.EXCURSION, PathClass.NONNEGATIVE, PathClass.POSITIVE, PathClass.REVERSE_POSITIVE):
        raise ValueError(f"no prime factorization implemented for {c.value}")
    if not is_in_class(p, c):
        raise NotInClassError(f"path {format_path(p)} is not {c.value}")
    h = heights(p)
    if c is PathClass.EXCURSION:
        cuts = [i for i in range(1, len(p)) if h[i] == 0]
    elif c is PathClass.NONNEGATIVE:
        cuts = _nonneg_cuts(h)
    elif c is PathClass.POSITIVE:
        cuts = _positive_cuts(h)
    else:
        # new strict record lows
        cuts, low = [], 0
        for i in range(1, len(p)):
            if h[i] < low:
                cuts.append(i)
                low = h[i]
    bounds = [0, *cuts, len(p)]
    return [p[a:b] for a, b in zip(bounds, bounds[1:]) if b > a]


def prime_class_of(c: Union[str, PathClass]):
    """Tag of the primes of ``c`` when one exists (reverse-positive has none)."""
    return _PRIME_OF.get(as_class(c))


def schutzenberger_check(c: Union[str, PathClass], p, q, r) -> bool:
    """Whether p, pq, qr, r in M implies q in M for this one triple."""
    c = as_class(c)
    p, q, r = tuple(p), tuple(q), tuple(r)
    premise = (
        is_in_class(p, c)
        and is_in_class(r, c)
        and is_in_class(p + q, c)
        and is_in_class(q + r, c)
    )
    return not premise or is_in_class(q, c)


# -- prime generating functions -------------------------------------------------


def _geometric_sums(S: Series, m: int, start: int) -> list:
    # entry n (n = 0..m-1) is S^start + ... + S^n
    powers = [Series.one(S.context)]
    for _ in range(m - 1):
        powers.append(powers[-1] * S)
    out, acc = [], Series.zero(S.context)
    for n in range(m):
        if n >= start:
            acc = acc + powers[n]
        out.append(acc)
    return out


def prime_gf_formula(c: Union[str, PathClass], S: Series) -> Series:
    """arch: sum t_{n+1} S^n; prime-nonnegative: sum t_{n+1}(1+...+S^n);
    prime-positive: sum t_{n+1}(S+...+S^n)."""
    c = as_class(c)
    ctx = S.context
    ts = variables(ctx)
    m = ctx.m
    if c is PathClass.ARCH:
        powers = [Series.one(ctx)]
        for _ in range(m - 1):
            powers.append(powers[-1] * S)
        return sum_series(ctx, (t * s for t, s in zip(ts, powers)))
    if c is PathClass.PRIME_NONNEGATIVE:
        return sum_series(ctx, (t * s for t, s in zip(ts, _geometric_sums(S, m, 0))))
    if c is PathClass.PRIME_POSITIVE:
        return sum_series(ctx, (t * s for t, s in zip(ts, _geometric_sums(S, m, 1))))
    raise ValueError(f"{c.value} is not a prime class")


def verify_prime_gf(c: Union[str, PathClass], ctx: TruncationContext, S: Series) -> VerificationReport:
    c = as_class(c)
    check = equal_check(f"{c.value} paths: oracle = formula", oracle_series(c, ctx), prime_gf_formula(c, S))
    return VerificationReport((check,))
