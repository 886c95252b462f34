"""Scanning b(0) for negative coefficients and the b-positivity classification."""

from __future__ import annotations

import itertools
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .blattner import BlattnerError, Gradation, b_factored
from .rootsys import RootSystem, build_root_system, classify_cartan, type_label
from .series import FactoredRational, TruncatedSeries, add, expand, substitute_zero

NONNEGATIVE = "nonnegative"
NEGATIVE = "negative"

DEFAULT_TRUNC = 12


@dataclass(frozen=True)
class ScanReport:
    algebra: str
    compact: tuple
    trunc: int
    verdict: str
    witness: tuple | None = None  # (exponent, coefficient)

    def __post_init__(self):
        if (self.witness is None) != (self.verdict == NONNEGATIVE):
            raise ValueError("witness must be present exactly when a negative coefficient was found")
        if self.witness is not None and self.witness[1] >= 0:
            raise ValueError("witness coefficient must be negative")

    @property
    def nonnegative(self) -> bool:
        return self.verdict == NONNEGATIVE

    def to_json(self) -> dict:
        out = {
            "algebra": self.algebra,
            "compact": list(self.compact),
            "trunc": self.trunc,
            "verdict": self.verdict,
            "witness": None,
        }
        if self.witness is not None:
            out["witness"] = {"k": list(self.witness[0]), "c": str(self.witness[1])}
        return out


def scan_series(gr: Gradation, s: TruncatedSeries) -> ScanReport:
    neg = s.first_negative()
    verdict = NONNEGATIVE if neg is None else NEGATIVE
    return ScanReport(gr.label, tuple(gr.compact_labels), s.trunc, verdict, neg)


def scan_negative(gr: Gradation, trunc: int) -> ScanReport:
    """Expand b(0) to degree ``trunc`` and report the first negative term."""
    if gr.compact:
        raise BlattnerError("b-positivity is defined for the gradation with no compact simple roots")
    if trunc < 1:
        raise BlattnerError("truncation degree must be >= 1")
    return scan_series(gr, expand(b_factored(gr), trunc))


def levi_restrict(gr: Gradation, keep: Iterable[int]) -> Gradation:
    """Gradation of the semisimple Levi factor on the kept simple roots (0-based).

    Coordinates of the result follow the sorted order of ``keep``.
    """
    keep = sorted(set(int(i) for i in keep))
    if not keep:
        raise BlattnerError("a Levi restriction needs at least one kept simple root")
    if any(not 0 <= i < gr.rank for i in keep):
        raise BlattnerError(f"kept indices {keep} out of range for rank {gr.rank}")
    a = gr.rs.datum.cartan_matrix
    sub = [[a[i][j] for j in keep] for i in keep]
    rs = RootSystem.from_cartan(sub)
    compact = [pos for pos, i in enumerate(keep) if i in gr.compact]
    return Gradation(rs, compact, gr.bound)


def dropped_variables(rank: int, keep: Iterable[int]) -> list[int]:
    keep = set(keep)
    return [j for j in range(rank) if j not in keep]


def restrict_series(s, rank: int, keep: Iterable[int]):
    """Set every variable outside ``keep`` to zero (works on series or factored forms)."""
    for j in sorted(dropped_variables(rank, keep), reverse=True):
        s = substitute_zero(s, j)
    return s


# -- certificates -------------------------------------------------------------


@dataclass(frozen=True)
class Certificate:
    target: FactoredRational
    summands: tuple
    name: str = ""

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "target": self.target.to_json(),
            "summands": [s.to_json() for s in self.summands],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Certificate":
        return cls(
            target=FactoredRational.from_json(data["target"]),
            summands=tuple(FactoredRational.from_json(s) for s in data["summands"]),
            name=data.get("name", ""),
        )


@dataclass(frozen=True)
class CertificateCheck:
    ok: bool
    trunc: int
    mismatch: tuple | None = None  # (k, target coefficient, summed coefficient)
    negative: tuple | None = None  # (summand index, k, coefficient)

    def __bool__(self):
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return f"certificate verified to degree {self.trunc}"
        if self.mismatch is not None:
            k, t, s = self.mismatch
            return f"sum of summands differs from target at {list(k)}: {s} != {t}"
        i, k, c = self.negative
        return f"summand {i} has coefficient {c} at {list(k)}"

    def to_json(self) -> dict:
        out = {"ok": self.ok, "trunc": self.trunc, "message": self.describe()}
        if self.mismatch is not None:
            k, t, s = self.mismatch
            out["mismatch"] = {"k": list(k), "target": str(t), "sum": str(s)}
        if self.negative is not None:
            i, k, c = self.negative
            out["negative"] = {"summand": i, "k": list(k), "c": str(c)}
        return out


def verify_certificate(cert: Certificate, trunc: int) -> CertificateCheck:
    if trunc < 1:
        raise BlattnerError("truncation degree must be >= 1")
    target = expand(cert.target, trunc)
    parts = [expand(s, trunc) for s in cert.summands]
    total = TruncatedSeries(target.offset, {}, trunc)
    for p in parts:
        total = add(total, p)
    diff = total - target
    if not diff.is_zero():
        k = diff.items()[0][0]
        return CertificateCheck(False, trunc, mismatch=(k, target.terms.get(k, 0), total.terms.get(k, 0)))
    for i, p in enumerate(parts):
        neg = p.first_negative()
        if neg is not None:
            return CertificateCheck(False, trunc, negative=(i, neg[0], neg[1]))
    return CertificateCheck(True, trunc)


def known_certificates() -> dict[str, Certificate]:
    from .known import CERTIFICATES, PRODUCT_FORMS

    return {
        name: Certificate(PRODUCT_FORMS[name], tuple(parts), name)
        for name, parts in CERTIFICATES.items()
    }


# -- classification -----------------------------------------------------------

# rank <= 5 plus D4, one name per isomorphism class
DEFAULT_CATALOG = (
    [("A", n) for n in range(1, 6)]
    + [("B", n) for n in range(2, 6)]
    + [("C", n) for n in range(3, 6)]
    + [("D", 4), ("D", 5), ("F", 4), ("G", 2)]
    + [("E", 6), ("E", 7), ("E", 8)]
)
LEVI_ONLY = frozenset("EF")


@dataclass
class ClassifyEntry:
    family: str
    rank: int
    report: ScanReport | None
    # (1-based kept simple roots, Levi type) of a negative Levi factor, if any
    levi_exclusion: tuple | None = None

    @property
    def label(self) -> str:
        return f"{self.family}{self.rank}"

    @property
    def b_positive(self) -> bool | None:
        """True when nothing negative was found: neither directly nor via a Levi factor.

        None for an unscanned entry that no scanned-negative Levi factor excludes.
        """
        if self.report is not None and not self.report.nonnegative:
            return False
        if self.levi_exclusion is not None:
            return False
        return None if self.report is None else True

    def to_json(self) -> dict:
        out = {
            "algebra": self.label,
            "b_positive_up_to_trunc": self.b_positive,
            "report": self.report.to_json() if self.report else None,
            "levi_exclusion": None,
        }
        if self.levi_exclusion is not None:
            keep, lab = self.levi_exclusion
            out["levi_exclusion"] = {"keep": list(keep), "levi": lab}
        return out


def _scan_entry(args) -> ScanReport:
    family, rank, trunc = args
    gr = Gradation(build_root_system(family, rank))
    return scan_negative(gr, trunc)


def levi_factors(family: str, rank: int) -> list[tuple[tuple, list[tuple[str, int]]]]:
    """All proper Levi subsystems as (1-based kept indices, component types)."""
    from .rootsys import cartan_matrix

    a = cartan_matrix(family, rank)
    out = []
    for size in range(1, rank):
        for keep in itertools.combinations(range(rank), size):
            sub = [[a[i][j] for j in keep] for i in keep]
            out.append((tuple(i + 1 for i in keep), classify_cartan(sub)))
    return out


def classify(
    catalog: Sequence[tuple[str, int]] = DEFAULT_CATALOG,
    trunc: int = DEFAULT_TRUNC,
    jobs: int = 1,
    levi_only: Iterable[str] = LEVI_ONLY,
) -> list[ClassifyEntry]:
    """Scan b(0) for each catalog entry, then mark entries with a negative Levi factor.

    Families in ``levi_only`` are not expanded; they are decided purely by
    whether a scanned-negative algebra sits inside them as a Levi factor.
    """
    levi_only = set(levi_only)
    scan = [(f, r, trunc) for f, r in catalog if f not in levi_only]
    if jobs > 1 and len(scan) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            reports = list(ex.map(_scan_entry, scan))
    else:
        reports = [_scan_entry(x) for x in scan]
    by_label = {f"{f}{r}": rep for (f, r, _), rep in zip(scan, reports)}
    negative = {lab for lab, rep in by_label.items() if not rep.nonnegative}
    out = []
    for f, r in catalog:
        entry = ClassifyEntry(f, r, by_label.get(f"{f}{r}"))
        for keep, types in levi_factors(f, r):
            hit = [f"{a}{b}" for a, b in types if f"{a}{b}" in negative]
            if hit:
                entry.levi_exclusion = (keep, type_label(types))
                break
        out.append(entry)
    return out


def classification_table(entries: Sequence[ClassifyEntry]) -> str:
    return json.dumps([e.to_json() for e in entries], indent=2)
