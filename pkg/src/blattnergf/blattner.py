"""Gradations, the noncompact partition function and Blattner's formula.

``B(delta, mu) = sum_{w in W_k} (-1)^l(w) Q(w.delta - mu)`` where ``Q``
counts multisets of noncompact positive roots and ``w.xi`` is the
rho_c-shifted action.  The generating function ``b(delta)`` is produced two
ways: from the closed product (character times a ratio of root products)
and pointwise from the alternating sum.  The second is the oracle for the
first.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Iterable, NamedTuple, Sequence

from . import rootsys
from .rootsys import (
    GROUP_BOUND,
    RootSystem,
    WeylElement,
    apply,
    as_weight,
    coroot_pairing,
    enumerate_group,
    inner,
    inverse,
    length_in,
    reflect,
    simple_system,
)
from .series import (
    FactoredRational,
    TruncatedSeries,
    divide_by_binomials,
    expand,
    exponent_grid,
    mul,
)


class BlattnerError(ValueError):
    pass


class PreconditionError(BlattnerError):
    """An operation's hypothesis does not hold (distinct from a failed check)."""


def _half_sum(roots) -> tuple:
    if not roots:
        return ()
    r = len(roots[0])
    return tuple(Fraction(sum(g[i] for g in roots), 2) for i in range(r))


class Gradation:
    """A root system with a Z2-grading fixed by the compact simple roots.

    ``compact`` holds 0-based indices of the simple roots with theta = 0.
    Weyl groups are enumerated on first use; ``grade`` forces them.
    """

    def __init__(self, rs: RootSystem, compact: Iterable[int] = (), bound: int = GROUP_BOUND):
        self.rs = rs
        compact = frozenset(int(i) for i in compact)
        bad = [i for i in compact if not 0 <= i < rs.rank]
        if bad:
            raise BlattnerError(f"compact simple root indices {sorted(bad)} out of range for rank {rs.rank}")
        self.compact = compact
        self.theta = tuple(0 if i in compact else 1 for i in range(rs.rank))
        self.bound = bound
        self.positive_compact = tuple(g for g in rs.positive_roots if self.grade_of(g) == 0)
        self.positive_noncompact = tuple(g for g in rs.positive_roots if self.grade_of(g) == 1)
        self.rho_c = _half_sum(self.positive_compact) or (Fraction(0),) * rs.rank
        self.rho_nc = _half_sum(self.positive_noncompact) or (Fraction(0),) * rs.rank
        self.pi_k = tuple(simple_system(rs, self.positive_compact))
        self.pi_c = tuple(rs.simple_roots[i] for i in sorted(compact))
        self._q_lock = threading.Lock()
        self._q_box: tuple | None = None
        self._q_table: dict = {}

    def __repr__(self):
        return f"Gradation({self.rs.label}, compact={self.compact_labels})"

    @property
    def rank(self) -> int:
        return self.rs.rank

    @property
    def label(self) -> str:
        return self.rs.label

    @property
    def compact_labels(self) -> list[int]:
        """1-based compact simple root indices, for display and JSON."""
        return [i + 1 for i in sorted(self.compact)]

    def descriptor(self) -> dict:
        d = self.rs.datum
        return {"family": d.family, "rank": d.rank, "compact": self.compact_labels}

    def grade_of(self, g) -> int:
        return sum(c * t for c, t in zip(g, self.theta)) % 2

    @cached_property
    def W_k(self) -> tuple:
        return tuple(enumerate_group(self.rs, self.pi_k, self.bound, positive=self.positive_compact))

    @cached_property
    def W_c(self) -> tuple:
        return tuple(enumerate_group(self.rs, self.pi_c, self.bound, positive=self.positive_compact))

    @cached_property
    def _wk_by_matrix(self) -> dict:
        return {w.matrix: w for w in self.W_k}

    @cached_property
    def longest_element(self) -> WeylElement:
        return max(self.W_k, key=lambda w: w.length)

    def verify(self) -> None:
        """Check the structural invariants; raises BlattnerError on failure."""
        rs = self.rs
        pc, pn = set(self.positive_compact), set(self.positive_noncompact)
        if pc & pn or pc | pn != set(rs.positive_roots):
            raise BlattnerError("compact and noncompact roots do not partition the positive roots")
        rho = _half_sum(rs.positive_roots)
        if tuple(a + b for a, b in zip(self.rho_c, self.rho_nc)) != rho:
            raise BlattnerError("rho_c + rho_nc differs from rho")
        for a in self.pi_c:
            if a not in self.pi_k:
                raise BlattnerError(f"compact simple root {a} is not simple in the compact subsystem")
        wk = self._wk_by_matrix
        for v in self.W_c:
            if v.matrix not in wk:
                raise BlattnerError("W_c is not contained in W_k")
            if {apply(v.matrix, g) for g in pn} != pn:
                raise BlattnerError("an element of W_c does not preserve the noncompact positive roots")

    # -- lattice predicates -------------------------------------------------

    def k_pairings(self, xi) -> list[Fraction]:
        return [coroot_pairing(self.rs, xi, a) for a in self.pi_k]

    def is_k_integral(self, xi) -> bool:
        return all(p.denominator == 1 for p in self.k_pairings(xi))

    def is_k_dominant(self, xi) -> bool:
        return all(p >= 0 for p in self.k_pairings(xi))

    def require_weight(self, xi, what: str = "weight") -> tuple:
        xi = as_weight(xi)
        if len(xi) != self.rank:
            raise BlattnerError(f"{what} needs {self.rank} coordinates, got {len(xi)}")
        return xi

    def require_dominant(self, delta) -> tuple:
        delta = self.require_weight(delta, "delta")
        pairings = self.k_pairings(delta)
        if any(p.denominator != 1 for p in pairings):
            raise BlattnerError(f"delta={_fmt(delta)} is not k-integral; use normalize_delta on an integral weight")
        if any(p < 0 for p in pairings):
            raise BlattnerError(f"delta={_fmt(delta)} is not k-dominant; normalize it with normalize_delta first")
        return delta

    def require_integral(self, mu, what: str = "mu") -> tuple:
        mu = self.require_weight(mu, what)
        if not self.is_k_integral(mu):
            raise BlattnerError(f"{what}={_fmt(mu)} is not in P(k)")
        return mu

    # -- partition function table ------------------------------------------

    def _q_lookup(self, k: tuple) -> int:
        box = self._q_box
        if box is None or any(x > b for x, b in zip(k, box)):
            with self._q_lock:
                box = self._q_box
                if box is None or any(x > b for x, b in zip(k, box)):
                    old = box or (0,) * self.rank
                    box = tuple(max(x, 2 * b, 4) for x, b in zip(k, old))
                    self._q_table = _partition_table(self.positive_noncompact, box)
                    self._q_box = box
        return self._q_table.get(k, 0)


def _fmt(w) -> str:
    return "(" + ",".join(str(x) for x in w) + ")"


def _partition_table(parts: Sequence[tuple], box: tuple) -> dict:
    # One pass per part: t[k] += t[k - part], ascending so parts can repeat.
    pts = list(product(*(range(b + 1) for b in box)))
    t = dict.fromkeys(pts, 0)
    t[(0,) * len(box)] = 1
    for g in parts:
        for k in pts:
            src = tuple(x - y for x, y in zip(k, g))
            if min(src) >= 0:
                t[k] += t[src]
    return t


def grade(rs: RootSystem, compact_simples: Iterable[int] = (), bound: int = GROUP_BOUND) -> Gradation:
    """Build a gradation and verify its invariants (enumerates W_k and W_c)."""
    gr = Gradation(rs, compact_simples, bound)
    gr.verify()
    return gr


def partition_Q(gr: Gradation, xi) -> int:
    """Number of ways to write ``xi`` as a sum of noncompact positive roots."""
    xi = tuple(Fraction(x) for x in xi)
    if any(x.denominator != 1 or x < 0 for x in xi):
        return 0
    return gr._q_lookup(tuple(int(x) for x in xi))


def dot(gr: Gradation, w: WeylElement, xi) -> tuple:
    rho = gr.rho_c
    shifted = tuple(Fraction(x) + r for x, r in zip(xi, rho))
    return tuple(a - r for a, r in zip(apply(w.matrix, shifted), rho))


def blattner_sum(gr: Gradation, delta, mu) -> int:
    """The alternating sum itself, without any hypothesis on ``delta``."""
    delta, mu = as_weight(delta), as_weight(mu)
    total = 0
    for w in gr.W_k:
        arg = tuple(a - m for a, m in zip(dot(gr, w, delta), mu))
        q = partition_Q(gr, arg)
        if q:
            total += w.sign * q
    return total


def blattner_B(gr: Gradation, delta, mu) -> int:
    delta = gr.require_dominant(delta)
    mu = gr.require_integral(mu)
    return blattner_sum(gr, delta, mu)


class Normalized(NamedTuple):
    """``delta`` is the dominant representative of the dot orbit and ``sign``
    is ``(-1)^l(v)``, so ``B(original, mu) = sign * B(delta, mu)``.  A singular
    orbit has ``delta=None`` and ``sign=0``."""

    delta: tuple | None
    sign: int

    @property
    def singular(self) -> bool:
        return self.sign == 0


def normalize_delta(gr: Gradation, delta) -> Normalized:
    delta = gr.require_integral(delta, "delta")
    rs, rho = gr.rs, gr.rho_c
    lam = tuple(d + r for d, r in zip(delta, rho))
    sign = 1
    while True:
        neg = next((a for a in gr.pi_k if inner(rs, lam, a) < 0), None)
        if neg is None:
            break
        lam = reflect(rs, neg, lam)
        sign = -sign
    if any(inner(rs, lam, a) == 0 for a in gr.pi_k):
        return Normalized(None, 0)
    return Normalized(tuple(x - r for x, r in zip(lam, rho)), sign)


@dataclass(frozen=True)
class CharacterSeries:
    highest_weight: tuple
    weights: dict  # weight -> multiplicity

    @property
    def dimension(self) -> int:
        return sum(self.weights.values())

    def multiplicity(self, gamma) -> int:
        return self.weights.get(as_weight(gamma), 0)

    def as_series(self, trunc: int) -> TruncatedSeries:
        hw = self.highest_weight
        terms = {}
        for g, m in self.weights.items():
            terms[tuple(int(h - x) for h, x in zip(hw, g))] = m
        return TruncatedSeries(hw, terms, trunc)


def weyl_dimension(gr: Gradation, delta) -> Fraction:
    rs, rho = gr.rs, gr.rho_c
    out = Fraction(1)
    for g in gr.positive_compact:
        out *= inner(rs, tuple(d + r for d, r in zip(delta, rho)), g) / inner(rs, rho, g)
    return out


def character(gr: Gradation, delta) -> CharacterSeries:
    """Weight multiplicities of the irreducible k-module of highest weight delta.

    Weyl's numerator is divided exactly by the compact root product inside
    the box ``[0, delta - w0.delta]``, which holds every weight.
    """
    delta = gr.require_dominant(delta)
    if not gr.positive_compact or not any(delta):
        return CharacterSeries(delta, {delta: 1})
    num = {}
    for w in gr.W_k:
        k = tuple(d - x for d, x in zip(delta, dot(gr, w, delta)))
        if any(x.denominator != 1 or x < 0 for x in k):
            raise BlattnerError("Weyl numerator left the cone below delta")
        k = tuple(int(x) for x in k)
        num[k] = num.get(k, 0) + w.sign
    box = tuple(int(d - x) for d, x in zip(delta, dot(gr, gr.longest_element, delta)))
    depth = sum(box)
    quotient = divide_by_binomials(TruncatedSeries(delta, num, depth), gr.positive_compact, box)
    weights = {quotient.weight_of(k): c for k, c in quotient.terms.items()}
    if any(c < 0 for c in weights.values()):
        raise BlattnerError("character has a negative multiplicity; division was not exact")
    return CharacterSeries(delta, weights)


def b_factored(gr: Gradation) -> FactoredRational:
    """``prod_{Phi_c^+}(1 - x^g) / prod_{Phi_nc^+}(1 - x^g)``, i.e. b(0)."""
    return FactoredRational(gr.rank, numerator=gr.positive_compact, denominator=gr.positive_noncompact)


def b_series_rational(gr: Gradation, delta, trunc: int) -> TruncatedSeries:
    delta = gr.require_dominant(delta)
    base = expand(b_factored(gr), trunc)
    if not any(delta):
        return base
    return mul(character(gr, delta).as_series(trunc), base)


def b_series_direct(gr: Gradation, delta, trunc: int) -> TruncatedSeries:
    """Evaluate B(delta, mu) at every mu = delta - k with |k| <= trunc."""
    delta = gr.require_dominant(delta)
    terms = {}
    for k in exponent_grid(gr.rank, trunc):
        mu = tuple(d - x for d, x in zip(delta, k))
        c = blattner_sum(gr, delta, mu)
        if c:
            terms[k] = c
    return TruncatedSeries(delta, terms, trunc)


def convolution_B(gr: Gradation, delta, mu) -> int:
    """``sum_gamma m_gamma B(0, mu - gamma)`` over the weights of L_k(delta)."""
    delta = gr.require_dominant(delta)
    mu = gr.require_integral(mu)
    zero = (Fraction(0),) * gr.rank
    total = 0
    for g, m in character(gr, delta).weights.items():
        total += m * blattner_sum(gr, zero, tuple(a - b for a, b in zip(mu, g)))
    return total


def in_W_c(gr: Gradation, v: WeylElement) -> bool:
    return any(u.matrix == v.matrix for u in gr.W_c)


def check_skew_symmetry(gr: Gradation, delta, mu, v: WeylElement) -> bool:
    if not in_W_c(gr, v):
        raise PreconditionError("v is not an element of W_c")
    lhs = blattner_B(gr, delta, dot(gr, v, mu))
    return lhs == v.sign * blattner_B(gr, delta, mu)


def stabilizes_noncompact(gr: Gradation, w: WeylElement) -> bool:
    pn = set(gr.positive_noncompact)
    return {apply(w.matrix, g) for g in pn} == pn


def check_lemma_Q(gr: Gradation, w: WeylElement, grid: Iterable | None = None) -> bool:
    """Check ``Q(w^-1 xi) == Q(xi)`` on ``grid`` (default: the box [0, 6]^r)."""
    if not stabilizes_noncompact(gr, w):
        raise PreconditionError("w does not map the noncompact positive roots onto themselves")
    winv = inverse(w.matrix)
    if grid is None:
        grid = product(range(7), repeat=gr.rank)
    return all(partition_Q(gr, apply(winv, xi)) == partition_Q(gr, xi) for xi in grid)


@dataclass(frozen=True)
class HCStatus:
    mu: tuple
    lam: tuple
    g_dominant: bool
    g_regular: bool

    @property
    def discrete_series(self) -> bool:
        return self.g_dominant and self.g_regular


def hc_status(gr: Gradation, mu) -> HCStatus:
    """Harish-Chandra parameter ``mu - rho_nc + rho_c`` and its g-dominance/regularity."""
    mu = gr.require_weight(mu, "mu")
    lam = tuple(m - n + c for m, n, c in zip(mu, gr.rho_nc, gr.rho_c))
    rs = gr.rs
    return HCStatus(
        mu=mu,
        lam=lam,
        g_dominant=rootsys.is_dominant(rs, lam, rs.simple_roots),
        g_regular=rootsys.is_regular(rs, lam, rs.positive_roots),
    )


def length_of(gr: Gradation, w: WeylElement) -> int:
    return length_in(w.matrix, gr.positive_compact)
