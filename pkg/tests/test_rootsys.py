from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from blattnergf.rootsys import (
    GroupBoundError,
    RootSystem,
    RootSystemError,
    apply,
    build_root_system,
    cartan_matrix,
    classify_cartan,
    coroot_pairing,
    enumerate_group,
    identity,
    inner,
    is_dominant,
    is_regular,
    length_in,
    matmul,
    reflect,
    reflection_matrix,
    simple_system,
)

ALL_TYPES = [
    ("A", 1), ("A", 2), ("A", 3), ("A", 5), ("B", 2), ("B", 3), ("B", 4), ("C", 3), ("C", 4),
    ("D", 4), ("D", 5), ("E", 6), ("E", 7), ("E", 8), ("F", 4), ("G", 2),
]

ALPHA, BETA = (1, 0), (0, 1)


def brute_force_roots(rs):
    """All roots as the orbit of the simple roots under simple reflections."""
    gens = [reflection_matrix(rs, a) for a in rs.simple_roots]
    roots = set(rs.simple_roots)
    frontier = list(roots)
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = apply(s, g)
                if h not in roots:
                    roots.add(h)
                    nxt.append(h)
        frontier = nxt
    return roots


@pytest.mark.parametrize("family,rank", ALL_TYPES)
def test_closure_matches_reflection_orbit(family, rank):
    rs = build_root_system(family, rank)
    assert brute_force_roots(rs) == set(rs.roots)
    for g in rs.positive_roots:
        assert all(c >= 0 for c in g)


@pytest.mark.parametrize("family,rank", ALL_TYPES)
def test_form_symmetric_positive_definite(family, rank):
    rs = build_root_system(family, rank)
    f = rs.form
    n = rs.rank
    assert all(f[i][j] == f[j][i] for i in range(n) for j in range(n))
    # leading principal minors
    import sympy

    m = sympy.Matrix(f)
    assert all(m[:k, :k].det() > 0 for k in range(1, n + 1))
    assert min(f[i][i] for i in range(n)) == 2


def test_g2_roots():
    rs = build_root_system("G", 2)
    assert set(rs.positive_roots) == {(1, 0), (0, 1), (1, 1), (1, 2), (1, 3), (2, 3)}
    assert rs.positive_roots[:2] == ((1, 0), (0, 1))


def test_small_counts():
    assert build_root_system("A", 1).positive_roots == ((1,),)
    assert len(build_root_system("A", 3).positive_roots) == 3 * 4 // 2


@pytest.mark.parametrize(
    "family,rank",
    [("D", 2), ("E", 5), ("F", 3), ("G", 3), ("B", 1), ("C", 1), ("H", 3), ("A", 0)],
)
def test_rank_restrictions(family, rank):
    with pytest.raises(RootSystemError):
        build_root_system(family, rank)


def test_inner_examples():
    rs = build_root_system("G", 2)
    assert inner(rs, ALPHA, ALPHA) / inner(rs, BETA, BETA) == 3
    assert inner(rs, (0, 0), (3, 5)) == 0
    assert inner(rs, (1, 1), (1, 3)) == 0
    with pytest.raises(RootSystemError):
        inner(rs, (1, 0, 0), (1, 0))


def test_coroot_pairing_examples():
    rs = build_root_system("G", 2)
    assert coroot_pairing(rs, (1, 2), (1, 1)) == 1
    assert coroot_pairing(rs, (0, 0), (1, 3)) == 0
    assert coroot_pairing(rs, ALPHA, ALPHA) == 2
    with pytest.raises(RootSystemError):
        coroot_pairing(rs, (1, 0), (1, 4))


def test_reflect_examples():
    rs = build_root_system("G", 2)
    rho = (1, 2)
    assert reflect(rs, (1, 1), rho) == (0, 1)
    assert reflect(rs, (1, 3), rho) == (0, -1)
    assert reflect(rs, (1, 1), (0, 0)) == (0, 0)
    with pytest.raises(RootSystemError):
        reflect(rs, (2, 2), rho)


@pytest.mark.parametrize("family,rank", [("G", 2), ("B", 3), ("C", 3), ("F", 4)])
def test_reflection_properties(family, rank):
    rs = build_root_system(family, rank)
    grid = list(product(range(-2, 3), repeat=rank))[::7]
    for g in rs.positive_roots:
        s = reflection_matrix(rs, g)
        assert matmul(s, s) == identity(rank)
        assert {apply(s, h) for h in rs.roots} == set(rs.roots)
        assert reflect(rs, g, g) == tuple(-Fraction(c) for c in g)
        for xi in grid:
            assert reflect(rs, g, reflect(rs, g, xi)) == xi
            if inner(rs, xi, g) == 0:
                assert reflect(rs, g, xi) == xi


def test_scale_invariance():
    rs = build_root_system("G", 2)
    scaled = build_root_system("G", 2)
    scaled.form = tuple(tuple(5 * x for x in row) for row in rs.form)
    grid = list(product(range(-3, 4), repeat=2))
    for g in rs.positive_roots:
        for xi in grid:
            assert coroot_pairing(rs, xi, g) == coroot_pairing(scaled, xi, g)
            assert reflect(rs, g, xi) == reflect(scaled, g, xi)
    pk = [(1, 1), (1, 3)]
    for xi in grid:
        assert is_dominant(rs, xi, pk) == is_dominant(scaled, xi, pk)
        assert is_regular(rs, xi, rs.positive_roots) == is_regular(scaled, xi, rs.positive_roots)


def test_simple_system():
    g2 = build_root_system("G", 2)
    assert simple_system(g2, [(1, 1), (1, 3)]) == [(1, 1), (1, 3)]
    assert simple_system(g2, []) == []
    a2 = build_root_system("A", 2)
    assert simple_system(a2, [(1, 1)]) == [(1, 1)]
    b3 = build_root_system("B", 3)
    assert simple_system(b3, b3.positive_roots) == list(b3.simple_roots)


def brute_force_group(rs, gens):
    mats = [reflection_matrix(rs, g) for g in gens]
    group = {identity(rs.rank)}
    changed = True
    while changed:
        changed = False
        for a in list(group):
            for s in mats:
                m = matmul(a, s)
                if m not in group:
                    group.add(m)
                    changed = True
    return group


def test_enumerate_group_g2_compact():
    rs = build_root_system("G", 2)
    pk = [(1, 1), (1, 3)]
    pos = [(1, 1), (1, 3)]
    els = enumerate_group(rs, pk, positive=pos)
    assert len(els) == 4
    assert sorted(w.length for w in els) == [0, 1, 1, 2]
    assert {w.matrix for w in els} == brute_force_group(rs, pk)


def test_enumerate_group_trivial():
    rs = build_root_system("G", 2)
    els = enumerate_group(rs, [])
    assert len(els) == 1 and els[0].matrix == identity(2) and els[0].length == 0


def test_enumerate_group_b2_generic():
    rs = build_root_system("B", 2)
    # compact positive roots of B2 with no compact simple roots
    compact = [g for g in rs.positive_roots if sum(g) % 2 == 0]
    assert compact == [(1, 1)]
    els = enumerate_group(rs, simple_system(rs, compact), positive=compact)
    assert {w.matrix for w in els} == brute_force_group(rs, compact)
    assert len(els) == 2


@pytest.mark.parametrize("family,rank", [("B", 3), ("D", 4), ("G", 2), ("A", 4)])
def test_full_weyl_group(family, rank):
    rs = build_root_system(family, rank)
    order = {"B3": 48, "D4": 192, "G2": 12, "A4": 120}[f"{family}{rank}"]
    els = enumerate_group(rs, rs.simple_roots, positive=rs.positive_roots)
    assert len(els) == order
    for w in els:
        assert {apply(w.matrix, g) for g in rs.roots} == set(rs.roots)
        assert length_in(w.matrix, rs.positive_roots) == w.length


def test_group_bound():
    rs = build_root_system("D", 4)
    with pytest.raises(GroupBoundError):
        enumerate_group(rs, rs.simple_roots, bound=100)


def test_dominance_regularity():
    rs = build_root_system("G", 2)
    assert is_dominant(rs, (1, 2), [(1, 1), (1, 3)])
    assert is_dominant(rs, (0, 0), rs.positive_roots)
    assert not is_regular(rs, (0, 0), rs.positive_roots)
    assert not is_dominant(rs, (-1, -1), rs.simple_roots)


@pytest.mark.parametrize("family,rank", ALL_TYPES)
def test_classify_cartan_roundtrip(family, rank):
    expected = {("D", 3): ("A", 3)}.get((family, rank), (family, rank))
    assert classify_cartan(cartan_matrix(family, rank)) == [expected]


def test_from_cartan_levi():
    c4 = cartan_matrix("C", 4)
    sub = [[c4[i][j] for j in (1, 2, 3)] for i in (1, 2, 3)]
    assert RootSystem.from_cartan(sub).label == "C3"
    sub = [[c4[i][j] for j in (0, 1, 2)] for i in (0, 1, 2)]
    assert RootSystem.from_cartan(sub).label == "A3"
    a4 = cartan_matrix("A", 4)
    sub = [[a4[i][j] for j in (0, 1, 3)] for i in (0, 1, 3)]
    rs = RootSystem.from_cartan(sub)
    assert rs.label == "A1xA2"
    assert len(rs.positive_roots) == 4


@given(st.tuples(*[st.integers(-5, 5)] * 2), st.tuples(*[st.integers(-5, 5)] * 2))
def test_form_symmetry_property(xi, eta):
    rs = build_root_system("G", 2)
    assert inner(rs, xi, eta) == inner(rs, eta, xi)
    if any(xi):
        assert inner(rs, xi, xi) > 0
