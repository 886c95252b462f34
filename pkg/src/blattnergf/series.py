"""Exact truncated multivariate power series.

A series stands for ``e^offset * sum_k c_k x^k`` with ``x_i = e^{-alpha_i}``,
so the exponent vector ``k`` of a term is the (nonnegative, integral) drop
below the offset weight.  Truncation is by total degree, with an optional
per-variable box.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, Sequence

from .rootsys import graded_lex_key


class SeriesError(ValueError):
    pass


def _zero(r: int) -> tuple:
    return (0,) * r


def _fmt_rational(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def exponent_grid(rank: int, trunc: int, box: Sequence[int] | None = None) -> list[tuple]:
    """All exponent vectors of total degree <= trunc (inside ``box``), graded-lex sorted."""
    caps = [trunc] * rank if box is None else [min(trunc, b) for b in box]
    if any(c < 0 for c in caps) or trunc < 0:
        return []
    pts = [k for k in product(*(range(c + 1) for c in caps)) if sum(k) <= trunc]
    pts.sort(key=graded_lex_key)
    return pts


class TruncatedSeries:
    """Immutable series value; zero coefficients are never stored."""

    __slots__ = ("offset", "terms", "trunc", "rank")

    def __init__(self, offset: Iterable, terms: Mapping, trunc: int):
        self.offset = tuple(Fraction(x) for x in offset)
        self.rank = len(self.offset)
        self.trunc = trunc
        clean = {}
        for k, c in terms.items():
            k = tuple(k)
            if len(k) != self.rank:
                raise SeriesError(f"exponent {k} does not match rank {self.rank}")
            if any(e < 0 for e in k):
                raise SeriesError(f"negative exponent {k}")
            if c and sum(k) <= trunc:
                clean[k] = int(c)
        self.terms = clean

    @classmethod
    def one(cls, rank: int, trunc: int, offset=None) -> "TruncatedSeries":
        return cls(offset if offset is not None else _zero(rank), {_zero(rank): 1}, trunc)

    @classmethod
    def monomial(cls, k, trunc: int, coeff: int = 1, offset=None) -> "TruncatedSeries":
        k = tuple(k)
        return cls(offset if offset is not None else _zero(len(k)), {k: coeff}, trunc)

    def __repr__(self):
        return f"TruncatedSeries(offset={self.offset}, trunc={self.trunc}, nterms={len(self.terms)})"

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.offset, self.trunc, self.terms) == (other.offset, other.trunc, other.terms)

    def __hash__(self):
        return hash((self.offset, self.trunc, frozenset(self.terms.items())))

    def items(self) -> list[tuple[tuple, int]]:
        """Nonzero terms in graded-lex order."""
        return sorted(self.terms.items(), key=lambda kv: graded_lex_key(kv[0]))

    def coefficient(self, k) -> int:
        k = tuple(k)
        if sum(k) > self.trunc:
            raise SeriesError(f"exponent {k} lies beyond truncation degree {self.trunc}")
        return self.terms.get(k, 0)

    def weight_of(self, k) -> tuple:
        """The weight ``offset - sum k_i alpha_i`` carried by exponent ``k``."""
        return tuple(o - e for o, e in zip(self.offset, k))

    def exponent_of(self, mu) -> tuple | None:
        """Inverse of ``weight_of``; None when ``mu`` is off the lattice below offset."""
        diff = [o - Fraction(m) for o, m in zip(self.offset, mu)]
        if any(d.denominator != 1 or d < 0 for d in diff):
            return None
        return tuple(int(d) for d in diff)

    def truncate(self, n: int) -> "TruncatedSeries":
        if n > self.trunc:
            raise SeriesError(f"cannot raise truncation from {self.trunc} to {n}")
        return TruncatedSeries(self.offset, self.terms, n)

    def _check_rank(self, other: "TruncatedSeries"):
        if self.rank != other.rank:
            raise SeriesError(f"rank mismatch: {self.rank} vs {other.rank}")

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return add(self, other)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return sub(self, other)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return mul(self, other)

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(self.offset, {k: -c for k, c in self.terms.items()}, self.trunc)

    def is_zero(self) -> bool:
        return not self.terms

    def first_negative(self):
        """Graded-lex-first term with negative coefficient, or None."""
        for k, c in self.items():
            if c < 0:
                return k, c
        return None

    def to_json(self) -> dict:
        return {
            "offset": [_fmt_rational(x) for x in self.offset],
            "trunc": self.trunc,
            "terms": [{"k": list(k), "c": str(c)} for k, c in self.items()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "TruncatedSeries":
        terms = {tuple(t["k"]): int(t["c"]) for t in data["terms"]}
        return cls([Fraction(x) for x in data["offset"]], terms, int(data["trunc"]))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=False)

    def to_csv(self, include_zeros: bool = False) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if self.rank == 2:
            w.writerow(["k", "l", "coefficient"])
        else:
            w.writerow([f"k{i + 1}" for i in range(self.rank)] + ["coefficient"])
        rows = exponent_grid(self.rank, self.trunc) if include_zeros else [k for k, _ in self.items()]
        for k in rows:
            w.writerow(list(k) + [self.terms.get(k, 0)])
        return buf.getvalue()


def add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    a._check_rank(b)
    if a.offset != b.offset:
        raise SeriesError(f"cannot add series with offsets {a.offset} and {b.offset}; rebase first")
    n = min(a.trunc, b.trunc)
    out = {k: c for k, c in a.terms.items() if sum(k) <= n}
    for k, c in b.terms.items():
        if sum(k) <= n:
            out[k] = out.get(k, 0) + c
    return TruncatedSeries(a.offset, out, n)


def sub(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return add(a, -b)


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    a._check_rank(b)
    n = min(a.trunc, b.trunc)
    out: dict = {}
    bt = [(k, sum(k), c) for k, c in b.terms.items()]
    for ka, ca in a.terms.items():
        da = sum(ka)
        if da > n:
            continue
        for kb, db, cb in bt:
            if da + db > n:
                continue
            k = tuple(x + y for x, y in zip(ka, kb))
            out[k] = out.get(k, 0) + ca * cb
    offset = tuple(x + y for x, y in zip(a.offset, b.offset))
    return TruncatedSeries(offset, out, n)


def rebase(s: TruncatedSeries, offset) -> TruncatedSeries:
    """Re-express ``s`` relative to a higher offset, shifting exponents up.

    Degree bookkeeping follows the exponents, so the truncation grows by
    the total shift.
    """
    offset = tuple(Fraction(x) for x in offset)
    shift = [o - p for o, p in zip(offset, s.offset)]
    if any(d.denominator != 1 or d < 0 for d in shift):
        raise SeriesError(f"offset {offset} does not lie above {s.offset} on the root lattice")
    shift = [int(d) for d in shift]
    terms = {tuple(x + d for x, d in zip(k, shift)): c for k, c in s.terms.items()}
    return TruncatedSeries(offset, terms, s.trunc + sum(shift))


@dataclass(frozen=True)
class FactoredRational:
    """``coeff * e^offset * x^shift * prod(1 - x^a) / prod(1 - x^b)``."""

    rank: int
    numerator: tuple = ()
    denominator: tuple = ()
    offset: tuple = None
    shift: tuple = None
    coeff: int = 1

    def __post_init__(self):
        r = self.rank
        object.__setattr__(self, "numerator", tuple(tuple(a) for a in self.numerator))
        object.__setattr__(self, "denominator", tuple(tuple(a) for a in self.denominator))
        object.__setattr__(
            self, "offset", tuple(Fraction(x) for x in (self.offset if self.offset is not None else _zero(r)))
        )
        object.__setattr__(self, "shift", tuple(self.shift) if self.shift is not None else _zero(r))
        for a in self.numerator + self.denominator + (self.shift, self.offset):
            if len(a) != r:
                raise SeriesError(f"factor {a} does not match rank {r}")
        for a in self.numerator + self.denominator:
            if any(e < 0 for e in a):
                raise SeriesError(f"factor exponent {a} must be nonnegative")
        if any(e < 0 for e in self.shift):
            raise SeriesError("monomial shift must be nonnegative")

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "offset": [_fmt_rational(x) for x in self.offset],
            "shift": list(self.shift),
            "coeff": str(self.coeff),
            "numerator": [list(a) for a in self.numerator],
            "denominator": [list(a) for a in self.denominator],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "FactoredRational":
        num = [tuple(a) for a in data.get("numerator", [])]
        den = [tuple(a) for a in data.get("denominator", [])]
        rank = data.get("rank")
        if rank is None:
            sample = num + den + ([tuple(data["shift"])] if "shift" in data else [])
            if not sample:
                raise SeriesError("cannot infer rank of factored rational")
            rank = len(sample[0])
        return cls(
            rank=int(rank),
            numerator=num,
            denominator=den,
            offset=[Fraction(x) for x in data["offset"]] if "offset" in data else None,
            shift=data.get("shift"),
            coeff=int(data.get("coeff", 1)),
        )


def _multiply_binomial(c: dict, order: list, a: tuple) -> None:
    # c <- c * (1 - x^a), in place; descending order reads old values.
    for k in reversed(order):
        src = tuple(x - y for x, y in zip(k, a))
        if min(src) >= 0:
            v = c.get(src)
            if v:
                c[k] = c.get(k, 0) - v


def _divide_binomial(c: dict, order: list, a: tuple) -> None:
    # c <- c / (1 - x^a), in place; ascending order reads updated values.
    for k in order:
        src = tuple(x - y for x, y in zip(k, a))
        if min(src) >= 0:
            v = c.get(src)
            if v:
                c[k] = c.get(k, 0) + v


def expand(fr: FactoredRational, trunc: int, box: Sequence[int] | None = None) -> TruncatedSeries:
    """Exact expansion of a factored rational up to total degree ``trunc``.

    With ``box``, only exponents ``k <= box`` are computed; the result then
    still carries ``trunc`` but is zero outside the box, so it should only
    be read inside it.
    """
    if trunc < 0:
        raise SeriesError("truncation degree must be >= 0")
    for a in fr.denominator:
        if not any(a):
            raise SeriesError("denominator factor (1 - 1) is not invertible")
    r = fr.rank
    order = exponent_grid(r, trunc, box)
    c: dict = {}
    if fr.coeff and sum(fr.shift) <= trunc and (box is None or all(s <= b for s, b in zip(fr.shift, box))):
        c[fr.shift] = fr.coeff
    for a in fr.numerator:
        if not any(a):
            c.clear()
            break
        _multiply_binomial(c, order, a)
    for a in fr.denominator:
        if sum(a) <= trunc:
            _divide_binomial(c, order, a)
    return TruncatedSeries(fr.offset, c, trunc)


def substitute_zero(obj, j: int):
    """Set ``x_j = 0`` and drop coordinate ``j``."""
    if isinstance(obj, TruncatedSeries):
        if not 0 <= j < obj.rank:
            raise SeriesError(f"variable index {j} out of range")
        terms = {k[:j] + k[j + 1:]: c for k, c in obj.terms.items() if k[j] == 0}
        return TruncatedSeries(obj.offset[:j] + obj.offset[j + 1:], terms, obj.trunc)
    if isinstance(obj, FactoredRational):
        if not 0 <= j < obj.rank:
            raise SeriesError(f"variable index {j} out of range")
        drop = lambda a: a[:j] + a[j + 1:]
        # a factor (1 - x^a) with a_j > 0 becomes 1
        return FactoredRational(
            rank=obj.rank - 1,
            numerator=[drop(a) for a in obj.numerator if a[j] == 0],
            denominator=[drop(a) for a in obj.denominator if a[j] == 0],
            offset=drop(obj.offset),
            shift=drop(obj.shift),
            coeff=obj.coeff if obj.shift[j] == 0 else 0,
        )
    raise TypeError(f"cannot substitute into {type(obj).__name__}")


def polynomial(terms: Mapping, trunc: int, offset=None) -> TruncatedSeries:
    terms = {tuple(k): v for k, v in terms.items()}
    rank = len(next(iter(terms))) if terms else len(offset)
    return TruncatedSeries(offset if offset is not None else _zero(rank), terms, trunc)


def divide_by_binomials(s: TruncatedSeries, factors: Iterable, box: Sequence[int] | None = None) -> TruncatedSeries:
    """``s / prod(1 - x^a)`` expanded to ``s.trunc`` (inside ``box`` if given)."""
    order = exponent_grid(s.rank, s.trunc, box)
    inside = set(order)
    c = {k: v for k, v in s.terms.items() if k in inside}
    for a in factors:
        a = tuple(a)
        if not any(a):
            raise SeriesError("denominator factor (1 - 1) is not invertible")
        _divide_binomial(c, order, a)
    return TruncatedSeries(s.offset, c, s.trunc)
