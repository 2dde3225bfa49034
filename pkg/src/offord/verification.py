"""Exhaustive re-verification of the selection-count bounds.

Two entry points: `verify_lemma_comput` sweeps the five small-matrix bound
claims (two or three rows, capped weight and width), `verify_main_theorem`
sweeps every reduced k x l class and checks both the bound and the exact
equality characterization.  All candidates are zero-column-free class
representatives; zero columns only scale counts by powers of two and are
accounted for arithmetically.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional

from .bounds import EqualityClass, classify_equality, exclusion_star_keys, lo_bound
from .enumeration import enumerate_reduced_matrices, first_row_shapes
from .matrices import (
    CapacityError,
    SignMatrix,
    canonical_form,
    format_matrix,
    omega_counts_batch,
)


@dataclass(frozen=True)
class Violation:
    matrix: SignMatrix
    count: int
    bound: int
    note: str = ""


@dataclass
class VerificationReport:
    scope: str
    bound_text: str
    candidates: int = 0
    excluded: int = 0
    max_omega: int = 0
    max_omega_matrix: Optional[SignMatrix] = None
    max_ratio: tuple[int, int] = (0, 1)  # max |omega| / 2**s as a reduced fraction
    max_ratio_matrix: Optional[SignMatrix] = None
    violations: list[Violation] = field(default_factory=list)
    equality_witnesses: list[tuple[SignMatrix, str]] = field(default_factory=list)
    partial: bool = False
    elapsed_ms: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.violations and not self.partial

    def observe(self, matrix: SignMatrix, count: int) -> None:
        self.candidates += 1
        if count > self.max_omega:
            self.max_omega = count
            self.max_omega_matrix = matrix
        num, den = count, 1 << matrix.ncols
        if num * self.max_ratio[1] > self.max_ratio[0] * den:
            g = gcd(num, den) or 1
            self.max_ratio = (num // g, den // g)
            self.max_ratio_matrix = matrix

    def sort_listings(self) -> None:
        self.violations.sort(key=lambda v: canonical_form(v.matrix))
        self.equality_witnesses.sort(key=lambda w: canonical_form(w[0]))

    def merge(self, other: "VerificationReport") -> None:
        self.candidates += other.candidates
        self.excluded += other.excluded
        if other.max_omega > self.max_omega:
            self.max_omega = other.max_omega
            self.max_omega_matrix = other.max_omega_matrix
        a, b = self.max_ratio
        c, d = other.max_ratio
        if c * b > a * d:
            self.max_ratio = other.max_ratio
            self.max_ratio_matrix = other.max_ratio_matrix
        self.violations.extend(other.violations)
        self.equality_witnesses.extend(other.equality_witnesses)
        self.partial = self.partial or other.partial

    def to_json(self) -> dict:
        def matrix_lines(m: Optional[SignMatrix]) -> Optional[list[str]]:
            return format_matrix(m).strip().split("\n") if m is not None else None

        return {
            "scope": self.scope,
            "candidates": self.candidates,
            "excluded": self.excluded,
            "maxOmega": self.max_omega,
            "maxOmegaMatrix": matrix_lines(self.max_omega_matrix),
            "maxRatio": f"{self.max_ratio[0]}/{self.max_ratio[1]}",
            "maxRatioMatrix": matrix_lines(self.max_ratio_matrix),
            "bound": self.bound_text,
            "violations": [
                {"matrix": matrix_lines(v.matrix), "count": v.count,
                 "bound": v.bound, "note": v.note}
                for v in self.violations
            ],
            "equalityWitnesses": [
                {"matrix": matrix_lines(m), "class": cls}
                for m, cls in self.equality_witnesses
            ],
            "partial": self.partial,
            "elapsedMs": round(self.elapsed_ms, 3),
        }

    def to_json_text(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


@dataclass(frozen=True)
class LemmaPart:
    """One exhaustive claim: rows, weight window, width cap, count bound.

    The bound is ratio_num/ratio_den of 2**s, strict or not; excluded
    classes (when any) are the overlap-diagonal shapes for this row count.
    """

    rows: int
    weight_lo: int
    weight_hi: int
    col_cap: int
    ratio_num: int
    ratio_den: int
    strict: bool
    has_exclusion: bool


LEMMA_PARTS: dict[str, LemmaPart] = {
    "i": LemmaPart(2, 6, 7, 14, 1, 2, False, False),
    "ii": LemmaPart(2, 4, 5, 10, 5, 8, True, False),
    "iii": LemmaPart(2, 3, 3, 6, 9, 16, False, True),
    "iv": LemmaPart(3, 4, 5, 15, 1, 2, False, False),
    "v": LemmaPart(3, 3, 3, 9, 1, 2, False, True),
}

_BATCH = 4096


def _check_batch(report: VerificationReport, part: LemmaPart,
                 batch: list[SignMatrix]) -> None:
    by_cols: dict[int, list[SignMatrix]] = {}
    for m in batch:
        by_cols.setdefault(m.ncols, []).append(m)
    for s, group in by_cols.items():
        masks = [tuple(zip(m.plus_masks, m.minus_masks)) for m in group]
        counts = omega_counts_batch(masks, s)
        bound = (part.ratio_num << s) // part.ratio_den
        for m, count in zip(group, counts):
            report.observe(m, count)
            over = count >= bound if part.strict else count > bound
            if over:
                report.violations.append(Violation(m, count, bound))
            elif not part.strict and count == bound:
                report.equality_witnesses.append((m, "bound attained"))
    batch.clear()


def verify_lemma_comput(part_name: str, *, exclusion: bool = True,
                        max_cols: Optional[int] = None,
                        first_row: Optional[tuple[int, int, int]] = None,
                        budget_seconds: Optional[float] = None,
                        threads: int = 1) -> VerificationReport:
    """Exhaustively check one of the five small-matrix bound claims.

    `exclusion=False` keeps the excluded classes in scope (diagnostic: the
    run then reports them as violations).  `max_cols` below the part's cap
    restricts the sweep and marks the report as partial coverage.
    """
    if part_name not in LEMMA_PARTS:
        raise ValueError(f"unknown part {part_name!r}; expected one of {sorted(LEMMA_PARTS)}")
    part = LEMMA_PARTS[part_name]
    cap = part.col_cap if max_cols is None else min(max_cols, part.col_cap)
    restricted = cap < part.col_cap

    scope = (f"part {part_name}: k={part.rows}, max row weight in "
             f"[{part.weight_lo},{part.weight_hi}], columns <= {cap}")
    cmp = "<" if part.strict else "<="
    bound_text = f"|omega| {cmp} {part.ratio_num}/{part.ratio_den} * 2**s"
    report = VerificationReport(scope=scope, bound_text=bound_text, partial=restricted)

    start = time.monotonic()
    if threads > 1 and first_row is None:
        _verify_lemma_parallel(report, part_name, part, cap, exclusion, threads)
        report.sort_listings()
        report.elapsed_ms = (time.monotonic() - start) * 1000
        return report

    excl_keys = exclusion_star_keys(part.rows) if (exclusion and part.has_exclusion) else None
    batch: list[SignMatrix] = []
    for m in enumerate_reduced_matrices(part.rows, 2, part.weight_hi, cap,
                                        first_row=first_row):
        if max(m.weights) < part.weight_lo:
            continue
        if excl_keys is not None and m.ncols <= part.rows + 2 \
                and canonical_form(m) in excl_keys:
            report.excluded += 1
            continue
        batch.append(m)
        if len(batch) >= _BATCH:
            _check_batch(report, part, batch)
            if budget_seconds is not None and time.monotonic() - start > budget_seconds:
                report.partial = True
                break
    _check_batch(report, part, batch)
    report.sort_listings()
    report.elapsed_ms = (time.monotonic() - start) * 1000
    return report


def _lemma_partition(args: tuple) -> VerificationReport:
    part_name, shape, exclusion, cap = args
    return verify_lemma_comput(part_name, exclusion=exclusion, max_cols=cap,
                               first_row=shape)


def _verify_lemma_parallel(report: VerificationReport, part_name: str,
                           part: LemmaPart, cap: int, exclusion: bool,
                           threads: int) -> None:
    import multiprocessing as mp

    shapes = first_row_shapes(part.rows, 2, part.weight_hi, cap)
    jobs = [(part_name, shape, exclusion, cap) for shape in shapes]
    restricted = report.partial
    with mp.get_context("fork").Pool(threads) as pool:
        for sub in pool.imap_unordered(_lemma_partition, jobs, chunksize=4):
            report.merge(sub)
    report.partial = restricted


def verify_main_theorem(k: int, l: int) -> VerificationReport:
    """Sweep all reduced k x l classes; check the bound and the equality set.

    Zero columns are folded in by enumerating zero-column-free cores with
    s <= l columns and scaling each count by 2**(l-s).  For 1 <= k <= l-1
    a candidate must attain the bound exactly when its core matches one of
    the four templates.
    """
    if not (1 <= k <= 3 and 1 <= l <= 6):
        raise CapacityError("exhaustive range is 1 <= k <= 3, 1 <= l <= 6")
    bound = lo_bound(k, l).value
    check_classes = 1 <= k <= l - 1
    scope = f"main bound: k={k}, l={l}"
    report = VerificationReport(scope=scope, bound_text=f"|omega| <= {bound}")
    start = time.monotonic()

    by_cols: dict[int, list[SignMatrix]] = {}
    for core in enumerate_reduced_matrices(k, 2, l, l):
        by_cols.setdefault(core.ncols, []).append(core)

    for s, group in sorted(by_cols.items()):
        masks = [tuple(zip(m.plus_masks, m.minus_masks)) for m in group]
        counts = omega_counts_batch(masks, s)
        pad = 1 << (l - s)
        for core, core_count in zip(group, counts):
            total = core_count * pad
            report.candidates += 1
            if total > report.max_omega:
                report.max_omega = total
                report.max_omega_matrix = core
            if total > bound:
                report.violations.append(Violation(core, total, bound))
                continue
            if not check_classes:
                continue
            padded = SignMatrix(
                tuple(row + (0,) * (l - s) for row in core.entries), l)
            kind = classify_equality(padded).kind
            attains = total == bound
            if attains and kind is EqualityClass.NONE:
                report.violations.append(Violation(
                    core, total, bound, "attains the bound but matches no template"))
            elif not attains and kind is not EqualityClass.NONE:
                report.violations.append(Violation(
                    core, total, bound, f"matches template {kind.value} without attaining the bound"))
            elif attains:
                report.equality_witnesses.append((core, kind.value))
    num, den = report.max_omega, 1 << l
    g = gcd(num, den) or 1
    report.max_ratio = (num // g, den // g)
    report.max_ratio_matrix = report.max_omega_matrix
    report.sort_listings()
    report.elapsed_ms = (time.monotonic() - start) * 1000
    return report


def equality_class_labels(report: VerificationReport) -> set[str]:
    return {cls for _, cls in report.equality_witnesses}
