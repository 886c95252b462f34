"""Root systems of finite type in simple-root coordinates.

Roots are integer tuples, weights are tuples of ``Fraction`` in the same
basis.  The invariant form is the symmetrized Cartan matrix, scaled so the
shortest roots of each component have squared length 2.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm
from typing import Iterable, Sequence

Weight = tuple  # tuple[Fraction, ...]
Root = tuple  # tuple[int, ...]
Matrix = tuple  # tuple[tuple[int, ...], ...]

GROUP_BOUND = 10**6

FAMILIES = "ABCDEFG"


# Known |Phi^+| used as a sanity check on the closure.
def _expected_positive_count(family: str, rank: int) -> int:
    n = rank
    return {
        "A": n * (n + 1) // 2,
        "B": n * n,
        "C": n * n,
        "D": n * (n - 1),
        "E": {6: 36, 7: 63, 8: 120}.get(n, -1),
        "F": 24,
        "G": 6,
    }[family]


class RootSystemError(ValueError):
    pass


class GroupBoundError(RootSystemError):
    """Raised when a reflection group grows past the safety bound."""


def as_weight(coords: Iterable) -> Weight:
    return tuple(Fraction(c) for c in coords)


def check_rank(family: str, rank: int) -> None:
    if family not in FAMILIES:
        raise RootSystemError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
    if not isinstance(rank, int) or rank < 1:
        raise RootSystemError(f"rank must be a positive integer, got {rank!r}")
    if family == "B" and rank < 2:
        raise RootSystemError("type B requires rank >= 2")
    if family == "C" and rank < 2:
        raise RootSystemError("type C requires rank >= 2")
    if family == "D" and rank < 3:
        raise RootSystemError("type D requires rank >= 3")
    if family == "E" and rank not in (6, 7, 8):
        raise RootSystemError("type E requires rank 6, 7 or 8")
    if family == "F" and rank != 4:
        raise RootSystemError("type F requires rank 4")
    if family == "G" and rank != 2:
        raise RootSystemError("type G requires rank 2")


def cartan_matrix(family: str, rank: int) -> list[list[int]]:
    """Cartan matrix with ``a[i][j] = 2(a_i, a_j) / (a_i, a_i)``.

    Bourbaki numbering, except G2 where index 0 is the long root so that
    ``(alpha, beta)`` reads as (long, short).
    """
    check_rank(family, rank)
    n = rank
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, aij=-1, aji=-1):
        a[i][j] = aij
        a[j][i] = aji

    if family in "ABC":
        for i in range(n - 1):
            link(i, i + 1)
        if family == "B":
            # a_{n-1} short
            link(n - 2, n - 1, -1, -2)
        elif family == "C":
            # a_{n-1} long
            link(n - 2, n - 1, -2, -1)
    elif family == "D":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif family == "E":
        link(0, 2)
        link(1, 3)
        for i in range(2, n - 1):
            link(i, i + 1)
    elif family == "F":
        link(0, 1)
        link(1, 2, -1, -2)
        link(2, 3)
    elif family == "G":
        # a_0 long, a_1 short
        link(0, 1, -1, -3)
    return a


def symmetrizer(a: Sequence[Sequence[int]]) -> list[int]:
    """Minimal positive integers d with ``d_i a_ij`` symmetric, per component."""
    n = len(a)
    d: list[Fraction | None] = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        comp = [start]
        queue = deque([start])
        while queue:
            i = queue.popleft()
            for j in range(n):
                if j != i and a[i][j] != 0 and d[j] is None:
                    # d_i a_ij = d_j a_ji
                    d[j] = d[i] * a[i][j] / a[j][i]
                    comp.append(j)
                    queue.append(j)
        den = lcm(*(d[i].denominator for i in comp))
        ints = [int(d[i] * den) for i in comp]
        g = gcd(*ints)
        for i, v in zip(comp, ints):
            d[i] = Fraction(v // g)
    out = [int(x) for x in d]
    for i in range(n):
        for j in range(n):
            if out[i] * a[i][j] != out[j] * a[j][i]:
                raise RootSystemError("Cartan matrix is not symmetrizable")
    return out


def components(a: Sequence[Sequence[int]]) -> list[list[int]]:
    """Connected components of the Dynkin diagram, as sorted index lists."""
    n = len(a)
    seen = [False] * n
    out = []
    for s in range(n):
        if seen[s]:
            continue
        seen[s] = True
        comp, stack = [], [s]
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if not seen[j] and a[i][j] != 0:
                    seen[j] = True
                    stack.append(j)
        out.append(sorted(comp))
    return out


def classify_cartan(a: Sequence[Sequence[int]]) -> list[tuple[str, int]]:
    """Identify the Cartan type of each connected component.

    Returns a sorted list of ``(family, rank)``.  Small coincidences are
    reported under one name: B2 = C2 is "B2", D3 = A3 is "A3".
    """
    out = []
    for comp in components(a):
        sub = [[a[i][j] for j in comp] for i in comp]
        n = len(comp)
        degree = [sum(1 for j in range(n) if j != i and sub[i][j] != 0) for i in range(n)]
        edges = sum(degree) // 2
        if edges != n - 1:
            raise RootSystemError("Cartan matrix is not of finite type (diagram has a cycle)")
        multiple = [(i, j) for i in range(n) for j in range(i + 1, n) if sub[i][j] * sub[j][i] > 1]
        if any(sub[i][j] * sub[j][i] > 3 for i, j in multiple):
            raise RootSystemError("Cartan matrix is not of finite type")
        branch = [i for i in range(n) if degree[i] == 3]
        if any(x > 3 for x in degree) or len(branch) > 1 or (branch and multiple) or len(multiple) > 1:
            raise RootSystemError("Cartan matrix is not of finite type")
        if not multiple and not branch:
            out.append(("A", n))
            continue
        if multiple:
            i, j = multiple[0]
            prod = sub[i][j] * sub[j][i]
            if prod == 3:
                if n != 2:
                    raise RootSystemError("Cartan matrix is not of finite type")
                out.append(("G", 2))
                continue
            if n == 2:
                out.append(("B", 2))
                continue
            ends = {i, j}
            leaf_edge = any(degree[k] == 1 for k in ends)
            if leaf_edge:
                # the double bond sits at an end of the chain: B or C
                leaf = i if degree[i] == 1 else j
                other = j if leaf == i else i
                # a short leaf has the -2 entry in its row: type B
                if sub[leaf][other] == -2:
                    out.append(("B", n))
                else:
                    out.append(("C", n))
                continue
            if n == 4:
                out.append(("F", 4))
                continue
            raise RootSystemError("Cartan matrix is not of finite type")
        # simply laced with one branch node: D or E
        c = branch[0]
        arms = []
        for nb in (j for j in range(n) if j != c and sub[c][j] != 0):
            length, prev, cur = 1, c, nb
            while True:
                nxt = [k for k in range(n) if k not in (prev, cur) and sub[cur][k] != 0]
                if not nxt:
                    break
                prev, cur = cur, nxt[0]
                length += 1
            arms.append(length)
        arms.sort()
        if arms[0] == 1 and arms[1] == 1:
            out.append(("A", 3) if n == 3 else ("D", n))
        elif arms[:2] == [1, 2] and arms[2] in (2, 3, 4):
            out.append(("E", n))
        else:
            raise RootSystemError("Cartan matrix is not of finite type")
    return sorted(out)


def type_label(types: Sequence[tuple[str, int]]) -> str:
    return "x".join(f"{f}{r}" for f, r in types) if types else "0"


@dataclass(frozen=True)
class CartanDatum:
    family: str
    rank: int
    cartan_matrix: Matrix
    symmetrizer: tuple

    def __post_init__(self):
        a, d, n = self.cartan_matrix, self.symmetrizer, self.rank
        if len(a) != n or any(len(row) != n for row in a):
            raise RootSystemError("Cartan matrix shape does not match rank")
        for i in range(n):
            if a[i][i] != 2:
                raise RootSystemError("Cartan matrix diagonal must be 2")
            for j in range(n):
                if i != j and a[i][j] > 0:
                    raise RootSystemError("Cartan matrix off-diagonal entries must be <= 0")
                if d[i] * a[i][j] != d[j] * a[j][i]:
                    raise RootSystemError("symmetrizer does not symmetrize the Cartan matrix")


@dataclass(frozen=True)
class WeylElement:
    matrix: Matrix
    word: tuple = ()
    length: int = 0

    def __call__(self, v):
        return apply(self.matrix, v)

    @property
    def sign(self) -> int:
        return -1 if self.length % 2 else 1


def apply(m: Matrix, v):
    return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in m)


def matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n)
    )


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def graded_lex_key(k):
    """Sort key: total degree first, then larger leading coordinates first."""
    return (sum(k), tuple(-c for c in k))


class RootSystem:
    """A reduced finite root system given by its Cartan matrix."""

    def __init__(self, datum: CartanDatum):
        self.datum = datum
        self.rank = datum.rank
        a, d = datum.cartan_matrix, datum.symmetrizer
        n = self.rank
        self.form: Matrix = tuple(tuple(d[i] * a[i][j] for j in range(n)) for i in range(n))
        self.positive_roots: tuple = tuple(sorted(self._closure(), key=graded_lex_key))
        self._root_set = frozenset(self.positive_roots) | frozenset(
            tuple(-c for c in r) for r in self.positive_roots
        )
        if datum.family in FAMILIES:
            expected = _expected_positive_count(datum.family, n)
            if len(self.positive_roots) != expected:
                raise RootSystemError(
                    f"closure produced {len(self.positive_roots)} positive roots, expected {expected}"
                )

    @classmethod
    def from_cartan(cls, a: Sequence[Sequence[int]]) -> "RootSystem":
        types = classify_cartan(a)
        family = types[0][0] if len(types) == 1 else type_label(types)
        datum = CartanDatum(
            family=family,
            rank=len(a),
            cartan_matrix=tuple(tuple(row) for row in a),
            symmetrizer=tuple(symmetrizer(a)),
        )
        return cls(datum)

    def __repr__(self):
        return f"RootSystem({self.label})"

    @cached_property
    def types(self) -> list[tuple[str, int]]:
        return classify_cartan(self.datum.cartan_matrix)

    @property
    def label(self) -> str:
        return type_label(self.types)

    @property
    def simple_roots(self) -> tuple:
        n = self.rank
        return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))

    @property
    def roots(self) -> frozenset:
        return self._root_set

    def is_root(self, v) -> bool:
        return tuple(v) in self._root_set

    def _closure(self) -> set:
        a = self.datum.cartan_matrix
        n = self.rank
        simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        found = set(simple)
        layer = list(simple)
        while layer:
            nxt = []
            for g in layer:
                for i in range(n):
                    # alpha_i-string through g: g - p a_i, ..., g + q a_i
                    p = 0
                    while True:
                        c = list(g)
                        c[i] -= p + 1
                        if tuple(c) in found:
                            p += 1
                        else:
                            break
                    pairing = sum(g[j] * a[i][j] for j in range(n))
                    q = p - pairing
                    if q > 0:
                        h = list(g)
                        h[i] += 1
                        h = tuple(h)
                        if h not in found:
                            found.add(h)
                            nxt.append(h)
            layer = nxt
        return found


def build_root_system(family: str, rank: int) -> RootSystem:
    a = cartan_matrix(family, rank)
    datum = CartanDatum(
        family=family,
        rank=rank,
        cartan_matrix=tuple(tuple(row) for row in a),
        symmetrizer=tuple(symmetrizer(a)),
    )
    return RootSystem(datum)


def _check_dim(rs: RootSystem, *vs) -> None:
    for v in vs:
        if len(v) != rs.rank:
            raise RootSystemError(f"expected {rs.rank} coordinates, got {len(v)}")


def inner(rs: RootSystem, xi, eta) -> Fraction:
    _check_dim(rs, xi, eta)
    f = rs.form
    n = rs.rank
    return Fraction(sum(xi[i] * f[i][j] * eta[j] for i in range(n) for j in range(n)))


def _require_root(rs: RootSystem, g) -> None:
    _check_dim(rs, g)
    if not rs.is_root(tuple(g)):
        raise RootSystemError(f"{tuple(g)} is not a root of {rs.label}")


def coroot_pairing(rs: RootSystem, xi, g) -> Fraction:
    """``2(xi, g) / (g, g)``."""
    _require_root(rs, g)
    return 2 * inner(rs, xi, g) / inner(rs, g, g)


def reflect(rs: RootSystem, g, xi) -> Weight:
    c = coroot_pairing(rs, xi, g)
    return tuple(Fraction(x) - c * y for x, y in zip(xi, g))


def reflection_matrix(rs: RootSystem, g) -> Matrix:
    _require_root(rs, g)
    n = rs.rank
    cols = []
    for j in range(n):
        e = tuple(int(i == j) for i in range(n))
        img = reflect(rs, g, e)
        cols.append([int(x) for x in img])
    return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))


def simple_system(rs: RootSystem, roots: Iterable) -> list:
    """Members of ``roots`` that are not the sum of two members."""
    rl = sorted({tuple(r) for r in roots}, key=graded_lex_key)
    rset = set(rl)
    out = []
    for g in rl:
        decomposable = any(
            tuple(x - y for x, y in zip(g, h)) in rset for h in rl if h != g
        )
        if not decomposable:
            out.append(g)
    return out


def length_in(w: Matrix, positive: Iterable) -> int:
    """``|w(positive) ∩ -positive|``."""
    pos = set(positive)
    return sum(1 for g in pos if tuple(-c for c in apply(w, g)) in pos)


def enumerate_group(
    rs: RootSystem,
    generators: Sequence,
    bound: int = GROUP_BOUND,
    positive: Iterable | None = None,
) -> list[WeylElement]:
    """Breadth-first closure of the group generated by reflections.

    Elements carry their word length in ``generators``.  When ``positive``
    is given (the positive roots of the subsystem that ``generators`` is a
    simple system of), the length is recomputed as the number of those
    roots sent negative and must agree with the word length.
    """
    n = rs.rank
    gens = [reflection_matrix(rs, g) for g in generators]
    e = identity(n)
    seen = {e: WeylElement(e, (), 0)}
    queue = deque([seen[e]])
    while queue:
        w = queue.popleft()
        for idx, s in enumerate(gens):
            m = matmul(w.matrix, s)
            if m in seen:
                continue
            el = WeylElement(m, w.word + (idx,), w.length + 1)
            seen[m] = el
            if len(seen) > bound:
                raise GroupBoundError(f"reflection group exceeds safety bound of {bound} elements")
            queue.append(el)
    out = list(seen.values())
    if positive is not None:
        pos = list(positive)
        for w in out:
            if length_in(w.matrix, pos) != w.length:
                raise RootSystemError(
                    "generators are not a simple system: word length disagrees with inversion count"
                )
    return out


def is_dominant(rs: RootSystem, xi, simple_set: Iterable) -> bool:
    return all(inner(rs, xi, a) >= 0 for a in simple_set)


def is_regular(rs: RootSystem, xi, root_set: Iterable) -> bool:
    return all(inner(rs, xi, a) != 0 for a in root_set)


def inverse(m: Matrix) -> Matrix:
    """Exact inverse of a unimodular integer matrix."""
    n = len(m)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise RootSystemError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    out = [[aug[i][n + j] for j in range(n)] for i in range(n)]
    if any(x.denominator != 1 for row in out for x in row):
        raise RootSystemError("matrix is not unimodular")
    return tuple(tuple(int(x) for x in row) for row in out)
