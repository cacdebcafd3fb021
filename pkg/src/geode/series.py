"""Exact truncated multivariate power series in t_1..t_m and y.

A series lives in a :class:`TruncationContext` ``(m, degree, y_degree)``:
variables ``t_n`` with ``n > m`` are identically zero, monomials of total
t-degree above ``degree`` are discarded and so are y-exponents above
``y_degree``.  The discarded monomials form an ideal, so every ring operation
below is exact in the quotient ring.

Coefficients are Python ``int`` when integral and ``Fraction`` otherwise.
Internally a monomial is the flat tuple ``(e_1, ..., e_m, y)``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from operator import add, sub
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence, Union

from .errors import (
    BoundsError,
    ContextMismatchError,
    InsufficientPrecisionError,
    NoSquareRootError,
    NotInvertibleError,
)

Coeff = Union[int, Fraction]


def normalize(c) -> Coeff:
    """Return ``c`` as an int when it is integral, else as a Fraction."""
    if isinstance(c, int):
        return c
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


def parse_rational(text: str) -> Coeff:
    return normalize(Fraction(text.strip()))


def format_rational(c: Coeff) -> str:
    c = normalize(c)
    if isinstance(c, int):
        return str(c)
    return f"{c.numerator}/{c.denominator}"


def _exact_div(a: Coeff, b: Coeff) -> Coeff:
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        return q if r == 0 else Fraction(a, b)
    return normalize(Fraction(a) / b)


class Monomial(NamedTuple):
    """Exponents of t_1..t_m plus the exponent of y."""

    t: tuple
    y: int = 0

    @property
    def degree(self) -> int:
        return sum(self.t)

    @classmethod
    def from_key(cls, key: tuple) -> "Monomial":
        return cls(tuple(key[:-1]), key[-1])

    def key(self) -> tuple:
        return (*self.t, self.y)

    def __str__(self) -> str:
        return _format_key(self.key())


@dataclass(frozen=True)
class TruncationContext:
    """Finite window ``(m, degree, y_degree)`` on the power series ring."""

    m: int
    degree: int
    y_degree: int = 0

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"m must be positive, got {self.m}")
        if self.degree < 0 or self.y_degree < 0:
            raise ValueError("degree bounds must be nonnegative")

    def admits(self, key: tuple) -> bool:
        return (
            len(key) == self.m + 1
            and min(key) >= 0
            and sum(key[:-1]) <= self.degree
            and key[-1] <= self.y_degree
        )

    def without_y(self) -> "TruncationContext":
        return TruncationContext(self.m, self.degree, 0)

    def monomials(self) -> tuple:
        """All flat monomial keys of the window, in canonical order."""
        return _all_keys(self)

    def to_json(self) -> dict:
        return {"m": self.m, "degree": self.degree, "y_degree": self.y_degree}

    @classmethod
    def from_json(cls, obj: Mapping) -> "TruncationContext":
        return cls(int(obj["m"]), int(obj["degree"]), int(obj.get("y_degree", 0)))


def univariate(N: int) -> TruncationContext:
    """Context for a series in a single variable, truncated after x^N."""
    return TruncationContext(1, N, 0)


def _order_key(key: tuple):
    # graded on t-degree; within a degree, higher powers of earlier variables first
    return (sum(key[:-1]), tuple(-e for e in key[:-1]), key[-1])


def _compositions(m: int, d: int) -> Iterator[tuple]:
    if m == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in _compositions(m - 1, d - first):
            yield (first, *rest)


@lru_cache(maxsize=64)
def _all_keys(ctx: TruncationContext) -> tuple:
    keys = [
        (*t, y)
        for d in range(ctx.degree + 1)
        for t in _compositions(ctx.m, d)
        for y in range(ctx.y_degree + 1)
    ]
    keys.sort(key=_order_key)
    return tuple(keys)


def _format_key(key: tuple) -> str:
    parts = []
    for i, e in enumerate(key[:-1], start=1):
        if e == 1:
            parts.append(f"t{i}")
        elif e:
            parts.append(f"t{i}^{e}")
    if key[-1] == 1:
        parts.append("y")
    elif key[-1]:
        parts.append(f"y^{key[-1]}")
    return "*".join(parts) or "1"


class Series:
    """Immutable sparse truncated power series with exact coefficients."""

    __slots__ = ("context", "_terms", "_graded")

    def __init__(self, context: TruncationContext, terms: Mapping = None, *, _trusted=False):
        self.context = context
        if _trusted:
            self._terms = terms
        else:
            clean = {}
            for mon, c in (terms or {}).items():
                key = tuple(mon.key() if isinstance(mon, Monomial) else mon)
                if not context.admits(key):
                    raise BoundsError(f"monomial {key} outside {context}")
                c = normalize(c)
                if c:
                    clean[key] = normalize(clean.get(key, 0) + c)
                    if not clean[key]:
                        del clean[key]
            self._terms = clean
        self._graded = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, ctx: TruncationContext) -> "Series":
        return cls(ctx, {}, _trusted=True)

    @classmethod
    def constant(cls, ctx: TruncationContext, c=1) -> "Series":
        c = normalize(c)
        return cls(ctx, {(0,) * (ctx.m + 1): c} if c else {}, _trusted=True)

    @classmethod
    def one(cls, ctx: TruncationContext) -> "Series":
        return cls.constant(ctx, 1)

    @classmethod
    def variable(cls, ctx: TruncationContext, n: int) -> "Series":
        """The series t_n; zero when n > m or the window has degree 0."""
        if n < 1:
            raise ValueError(f"variables are t_1, t_2, ...; got t_{n}")
        if n > ctx.m or ctx.degree < 1:
            return cls.zero(ctx)
        key = [0] * (ctx.m + 1)
        key[n - 1] = 1
        return cls(ctx, {tuple(key): 1}, _trusted=True)

    @classmethod
    def y(cls, ctx: TruncationContext) -> "Series":
        if ctx.y_degree < 1:
            return cls.zero(ctx)
        return cls(ctx, {(0,) * ctx.m + (1,): 1}, _trusted=True)

    @classmethod
    def from_coefficients(cls, coeffs: Sequence, N: int = None) -> "Series":
        """Univariate series sum c_k x^k; ``N`` defaults to len(coeffs) - 1."""
        N = len(coeffs) - 1 if N is None else N
        ctx = univariate(max(N, 0))
        return cls(ctx, {(k, 0): c for k, c in enumerate(coeffs) if k <= N})

    # -- accessors --------------------------------------------------------

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def items(self) -> Iterator[tuple]:
        """(Monomial, coefficient) pairs in canonical order."""
        for key in sorted(self._terms, key=_order_key):
            yield Monomial.from_key(key), self._terms[key]

    @property
    def terms(self) -> dict:
        return dict(self.items())

    def coeff(self, mon) -> Coeff:
        return series_coeff(self, mon)

    def constant_term(self) -> Coeff:
        return self._terms.get((0,) * (self.context.m + 1), 0)

    def coefficients(self) -> list:
        """Dense coefficient list of a univariate series, x^0..x^N."""
        if self.context.m != 1:
            raise ValueError("coefficients() needs a univariate series")
        return [self._terms.get((k, 0), 0) for k in range(self.context.degree + 1)]

    def graded(self) -> list:
        # (t-degree, y, key, coeff) sorted by t-degree; cached for mul
        if self._graded is None:
            self._graded = sorted(
                ((sum(k[:-1]), k[-1], k, c) for k, c in self._terms.items()),
                key=lambda r: r[0],
            )
        return self._graded

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self._terms.values())

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self._terms.values())

    def first_term(self):
        """Leading (Monomial, coeff) in canonical order, or None if zero."""
        return next(self.items(), None)

    def truncate(self, ctx: TruncationContext) -> "Series":
        """Restrict to a smaller (or equal) window with the same m."""
        if ctx.m != self.context.m:
            raise ContextMismatchError("truncate cannot change m")
        return Series(ctx, {k: c for k, c in self._terms.items() if ctx.admits(k)}, _trusted=True)

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "Series":
        if isinstance(other, Series):
            return other
        if isinstance(other, (int, Fraction)):
            return Series.constant(self.context, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else series_add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return series_neg(self)

    def __sub__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else series_add(self, series_neg(other))

    def __rsub__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else series_add(other, series_neg(self))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Series):
            return NotImplemented
        return series_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result, base = Series.one(self.context), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c) -> "Series":
        c = normalize(c)
        if not c:
            return Series.zero(self.context)
        return Series(self.context, {k: normalize(v * c) for k, v in self._terms.items()}, _trusted=True)

    def reciprocal(self) -> "Series":
        return series_reciprocal(self)

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return self.context == other.context and self._terms == other._terms

    __hash__ = None

    # -- text / json ------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for mon, c in self.items():
            key = mon.key()
            body = _format_key(key)
            mag = abs(c)
            if body == "1":
                piece = format_rational(mag)
            elif mag == 1:
                piece = body
            else:
                piece = f"{format_rational(mag)}*{body}"
            sign = "-" if c < 0 else "+"
            out.append((sign, piece))
        first_sign, first = out[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, piece in out[1:]:
            text += f" {sign} {piece}"
        return text

    def __repr__(self) -> str:
        return f"Series({self.context}, {self})"

    def to_json(self) -> dict:
        return {
            "context": self.context.to_json(),
            "terms": [
                {"t": list(mon.t), "y": mon.y, "coeff": format_rational(c)}
                for mon, c in self.items()
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def from_json(cls, obj: Mapping) -> "Series":
        ctx = TruncationContext.from_json(obj["context"])
        terms = {}
        for term in obj["terms"]:
            key = (*(int(e) for e in term["t"]), int(term.get("y", 0)))
            if key in terms:
                raise ValueError(f"duplicate monomial {key}")
            terms[key] = parse_rational(str(term["coeff"]))
        return cls(ctx, terms)

    @classmethod
    def loads(cls, text: str) -> "Series":
        return cls.from_json(json.loads(text))


def _check_same(a: Series, b: Series) -> None:
    if a.context != b.context:
        raise ContextMismatchError(f"{a.context} vs {b.context}")


def series_coeff(s: Series, mon) -> Coeff:
    key = tuple(mon.key() if isinstance(mon, Monomial) else mon)
    if not s.context.admits(key):
        raise BoundsError(f"monomial {key} outside {s.context}")
    return s._terms.get(key, 0)


def series_add(a: Series, b: Series) -> Series:
    _check_same(a, b)
    out = dict(a._terms)
    for k, c in b._terms.items():
        v = out.get(k, 0) + c
        if v:
            out[k] = normalize(v)
        else:
            out.pop(k, None)
    return Series(a.context, out, _trusted=True)


def series_neg(a: Series) -> Series:
    return Series(a.context, {k: -c for k, c in a._terms.items()}, _trusted=True)


def series_mul(a: Series, b: Series) -> Series:
    """Truncated Cauchy product."""
    _check_same(a, b)
    D, Dy = a.context.degree, a.context.y_degree
    left, right = a.graded(), b.graded()
    if len(left) > len(right):
        left, right = right, left
    out = {}
    get = out.get
    for da, ya, ka, ca in left:
        lim = D - da
        ylim = Dy - ya
        for db, yb, kb, cb in right:
            if db > lim:
                break
            if yb > ylim:
                continue
            key = tuple(map(add, ka, kb))
            out[key] = get(key, 0) + ca * cb
    return Series(a.context, {k: normalize(c) for k, c in out.items() if c}, _trusted=True)


def series_reciprocal(a: Series) -> Series:
    """Inverse of a unit, solved one total degree at a time.

    With ``a = a0 + r`` the coefficient of a monomial ``k`` in the inverse is
    ``-(1/a0) * sum_j r_j b_{k-j}`` over the nonconstant terms ``j`` dividing
    ``k``; every such ``k - j`` has strictly smaller total degree.
    """
    ctx = a.context
    zero = (0,) * (ctx.m + 1)
    a0 = a._terms.get(zero, 0)
    if not a0:
        raise NotInvertibleError("constant term is zero")
    rest = [(k, c) for k, c in a._terms.items() if k != zero]
    b = {zero: _exact_div(1, a0)}
    # total-degree order so every k - j is already known
    for key in sorted(ctx.monomials(), key=sum):
        if key == zero:
            continue
        acc = 0
        for kj, cj in rest:
            diff = tuple(map(sub, key, kj))
            if min(diff) >= 0:
                bj = b.get(diff)
                if bj:
                    acc += cj * bj
        if acc:
            b[key] = _exact_div(-acc, a0)
    return Series(ctx, b, _trusted=True)


def _as_subst(entry):
    if isinstance(entry, tuple):
        c, e = entry
    else:
        c, e = entry, 1
    c = normalize(c)
    if e < 1 or int(e) != e:
        raise ValueError(f"substitution exponent must be a positive integer, got {e}")
    return c, int(e)


def series_substitute(s: Series, subst: Sequence, N: int, y=None) -> Series:
    """Replace each t_n by c_n * x^{e_n} and truncate after x^N.

    ``subst[n-1]`` is ``(c_n, e_n)`` or a bare ``c_n`` (meaning e_n = 1);
    missing trailing entries map to zero.  ``y`` gives the value of y and is
    required when ``s`` has y-terms.  The caller is responsible for ``s``
    carrying every y-exponent that contributes when y is nonzero.
    """
    ctx = s.context
    if N < 0:
        raise ValueError("N must be nonnegative")
    pairs = [_as_subst(e) for e in subst]
    for n, (c, _) in enumerate(pairs[ctx.m:], start=ctx.m + 1):
        if c:
            raise InsufficientPrecisionError(f"t_{n} is outside the window m={ctx.m}")
    pairs = (pairs + [(0, 1)] * ctx.m)[: ctx.m]
    live = [e for c, e in pairs if c]
    if live and min(live) * ctx.degree < N:
        raise InsufficientPrecisionError(
            f"degree {ctx.degree} with minimal exponent {min(live)} cannot determine x^{N}"
        )
    if y is None and any(k[-1] for k in s._terms):
        raise ValueError("series has y-terms; supply a value for y")
    yv = normalize(y) if y is not None else 0
    out = {}
    for key, c in s._terms.items():
        xdeg = 0
        val = c
        for (cn, en), e in zip(pairs, key[:-1]):
            if e:
                if not cn:
                    val = 0
                    break
                val *= cn ** e
                xdeg += en * e
        if not val or xdeg > N:
            continue
        if key[-1]:
            val *= yv ** key[-1]
        if val:
            out[(xdeg, 0)] = out.get((xdeg, 0), 0) + val
    return Series(univariate(N), {k: normalize(v) for k, v in out.items() if v}, _trusted=True)


def series_set_y(s: Series, value) -> Series:
    """Evaluate y at ``value``, giving a y-free series in the same t-window.

    Exact only if every contributing y-exponent fits in the window.
    """
    value = normalize(value)
    out = {}
    for key, c in s._terms.items():
        k = (*key[:-1], 0)
        out[k] = out.get(k, 0) + c * value ** key[-1]
    return Series(s.context.without_y(), {k: normalize(v) for k, v in out.items() if v}, _trusted=True)


def _rational_sqrt(c: Coeff) -> Coeff:
    c = Fraction(c)
    if c <= 0:
        raise NoSquareRootError(f"constant term {c} has no positive rational square root")
    p, q = math.isqrt(c.numerator), math.isqrt(c.denominator)
    if p * p != c.numerator or q * q != c.denominator:
        raise NoSquareRootError(f"constant term {c} is not a rational square")
    return normalize(Fraction(p, q))


def series_sqrt_univariate(s: Series, N: int) -> Series:
    """Square root with positive constant term, truncated after x^N."""
    if s.context.m != 1 or s.context.y_degree:
        raise ValueError("sqrt needs a univariate series")
    if N > s.context.degree:
        raise InsufficientPrecisionError(f"series known to x^{s.context.degree}, asked for x^{N}")
    a = s.coefficients()
    r0 = _rational_sqrt(a[0])
    r = [r0]
    two_r0 = 2 * r0
    for n in range(1, N + 1):
        acc = a[n] - sum(r[k] * r[n - k] for k in range(1, n))
        r.append(_exact_div(acc, two_r0))
    return Series.from_coefficients(r, N)


def variables(ctx: TruncationContext) -> list:
    """[t_1, ..., t_m] as series."""
    return [Series.variable(ctx, n) for n in range(1, ctx.m + 1)]


def sum_series(ctx: TruncationContext, items: Iterable[Series]) -> Series:
    total = Series.zero(ctx)
    for s in items:
        total = total + s
    return total
