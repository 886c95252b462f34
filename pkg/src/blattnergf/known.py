"""Tabulated closed forms of b(0) and their partial-fraction splittings.

Exponent vectors are in simple-root coordinates with the numbering used by
``rootsys`` (Bourbaki; G2 as (long, short)).  All gradations here have no
compact simple roots, except ``G2_beta`` which makes the short simple root
compact.
"""

from __future__ import annotations

from .series import FactoredRational


def _fr(num, den, shift=None, coeff=1):
    rank = len((num or den or [shift])[0])
    return FactoredRational(rank, numerator=num, denominator=den, shift=shift, coeff=coeff)


# b(0) as a single fraction, keyed by algebra label.
PRODUCT_FORMS: dict[str, FactoredRational] = {
    "A1": _fr([], [(1,)]),
    "A2": _fr([(1, 1)], [(1, 0), (0, 1)]),
    "A3": _fr([(1, 1, 0), (0, 1, 1)], [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]),
    "A4": _fr(
        [(1, 1, 0, 0), (0, 1, 1, 0), (0, 0, 1, 1), (1, 1, 1, 1)],
        [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (1, 1, 1, 0), (0, 1, 1, 1)],
    ),
    "B2": _fr([(1, 1)], [(1, 0), (0, 1), (1, 2)]),
    "B3": _fr(
        [(1, 1, 0), (0, 1, 1), (1, 1, 2)],
        [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (0, 1, 2), (1, 2, 2)],
    ),
    "C3": _fr(
        [(1, 1, 0), (0, 1, 1), (1, 2, 1)],
        [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (0, 2, 1), (2, 2, 1)],
    ),
    "C4": _fr(
        [(1, 1, 0, 0), (0, 1, 1, 0), (0, 0, 1, 1), (1, 1, 1, 1), (0, 1, 2, 1), (1, 2, 2, 1)],
        [
            (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (1, 1, 1, 0),
            (0, 1, 1, 1), (0, 0, 2, 1), (1, 1, 2, 1), (0, 2, 2, 1), (2, 2, 2, 1),
        ],
    ),
    "D4": _fr(
        [(1, 1, 0, 0), (0, 1, 1, 0), (0, 1, 0, 1), (1, 1, 1, 1)],
        [
            (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1),
            (1, 1, 1, 0), (1, 1, 0, 1), (0, 1, 1, 1), (1, 2, 1, 1),
        ],
    ),
    "G2": _fr([(1, 1), (1, 3)], [(1, 0), (0, 1), (1, 2), (2, 3)]),
    "G2_beta": _fr([(2, 3), (0, 1)], [(1, 0), (1, 1), (1, 2), (1, 3)]),
}

# Splittings into termwise-nonnegative summands.
CERTIFICATES: dict[str, list[FactoredRational]] = {
    "A1": [_fr([], [(1,)])],
    "A2": [
        _fr([], [], shift=(0, 0)),
        _fr([], [(1, 0)], shift=(1, 0)),
        _fr([], [(0, 1)], shift=(0, 1)),
    ],
    "A3": [
        _fr([], [(0, 0, 1), (1, 0, 0)]),
        _fr([], [(0, 1, 0), (1, 1, 1)], shift=(0, 1, 0)),
    ],
    "B2": [
        _fr([], [(0, 2), (1, 0)]),
        _fr([], [(0, 2), (1, 2)], shift=(0, 1)),
    ],
    "C3": [
        _fr([], [(1, 0, 0), (0, 2, 1)]),
        _fr([], [(1, 0, 0), (0, 0, 1), (2, 2, 1)], shift=(1, 0, 1)),
        _fr([], [(0, 2, 1), (2, 2, 1), (1, 1, 1)], shift=(2, 3, 2)),
        _fr([], [(0, 2, 1), (2, 2, 1), (0, 0, 1)], shift=(0, 0, 1)),
        _fr([], [(0, 2, 1), (2, 2, 1), (0, 1, 0)], shift=(0, 1, 0)),
    ],
    "D4": [
        _fr([], [(1, 2, 1, 1), (1, 0, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]),
        _fr([], [(1, 1, 0, 1), (0, 1, 0, 0), (0, 1, 1, 1), (1, 1, 1, 0)], shift=(0, 1, 0, 0)),
    ],
    "G2": [
        _fr([], [(1, 0), (1, 2)]),
        _fr([], [(0, 1), (2, 3)], shift=(0, 1)),
    ],
}

# A signed splitting of the G2 form with the short simple root compact.
G2_BETA_SPLITTING: list[FactoredRational] = [
    _fr([], [(1, 0), (1, 2)]),
    _fr([], [(2, 0), (1, 1)], shift=(1, 0)),
    _fr([], [(2, 0), (1, 3)], shift=(1, 0), coeff=-1),
    _fr([], [(2, 0), (1, 3)], shift=(0, 1), coeff=-1),
    _fr([], [(2, 0), (1, 3)], shift=(1, 2), coeff=-1),
]

# Negative coefficients named alongside the product forms.
WITNESSES: dict[str, tuple[tuple[int, ...], int]] = {
    "A4": ((1, 2, 2, 1), -1),
    "B3": ((2, 3, 3), -1),
    "C4": ((1, 3, 3, 2), -1),
}

B_POSITIVE = ("A1", "A2", "A3", "B2", "C3", "D4", "G2")
