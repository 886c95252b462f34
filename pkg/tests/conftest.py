from fractions import Fraction
from itertools import product

import pytest

from blattnergf.blattner import Gradation, grade
from blattnergf.rootsys import build_root_system

# (family, rank, 0-based compact simple roots)
TEST_GRADATIONS = [
    ("G", 2, ()),
    ("G", 2, (1,)),
    ("G", 2, (0,)),
    ("A", 2, ()),
    ("A", 3, (1,)),
    ("B", 2, ()),
    ("B", 2, (0,)),
]

_cache = {}


def gradation(family, rank, compact=()) -> Gradation:
    key = (family, rank, tuple(compact))
    if key not in _cache:
        _cache[key] = grade(build_root_system(family, rank), compact)
    return _cache[key]


def gid(p):
    f, r, c = p
    return f"{f}{r}-" + ("".join(str(i + 1) for i in c) or "generic")


def dominant_weights(gr, count, span=3, include_zero=False):
    """The first ``count`` k-dominant integral weights on a half-integer grid, smallest first."""
    steps = [Fraction(i, 2) for i in range(-2 * span, 2 * span + 1)]
    found = []
    for w in product(steps, repeat=gr.rank):
        if not include_zero and not any(w):
            continue
        if gr.is_k_integral(w) and gr.is_k_dominant(w):
            found.append(w)
    found.sort(key=lambda w: (sum(abs(x) for x in w), w))
    return found[:count]


def integral_weights(gr, span=3):
    steps = [Fraction(i, 2) for i in range(-2 * span, 2 * span + 1)]
    return [w for w in product(steps, repeat=gr.rank) if gr.is_k_integral(w)]


@pytest.fixture
def g2():
    return gradation("G", 2)


@pytest.fixture
def g2_beta():
    return gradation("G", 2, (1,))


# -- acceptance reporting ---------------------------------------------------

ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        ok, text = ACCEPTANCE[num]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {text}")
