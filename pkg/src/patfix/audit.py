"""Cross-verification engine: every closed form, structural generator,
generating function, recurrence and bound is compared cell by cell
against the exhaustive oracle, which is ground truth by decree.

A discrepancy is a statement about the audited route, never something to
auto-correct: the report carries the first counterexample and the repo
tracks known findings in DISCREPANCIES.md.  Reports serialize to JSON
deterministically (wall-clock durations stay in memory only), so two
runs at the same n_max produce byte-identical output.
"""

from __future__ import annotations

import itertools
import json
import time
from dataclasses import dataclass, field

from . import formulas, generators
from .equivalence import divergence_witness, super_wilf_classes
from .formulas import (
    DISCREPANT,
    RECURRENCES,
    VERIFIED,
    Undefined,
    evaluate,
    get_formula,
    recurrence_check,
    sum_identity,
)
from .genfun import gf_for_k, series_coefficients, sum_over_k
from .oracle import count_table, enumerate_avoiders, refined_count
from .perms import ALL_PATTERNS, PatternSet

__all__ = [
    "AuditReport",
    "Cell",
    "SuperWilfAudit",
    "audit_all",
    "audit_formula",
    "audit_generator",
    "audit_super_wilf",
    "reports_to_json",
]

#: Row-level checks (sums, emptiness) have no meaningful k; their cells
#: carry k = -1.
ROW_LEVEL = -1


@dataclass(frozen=True)
class Cell:
    """One compared cell; ``formula_value`` is whatever the audited
    route claimed, ``oracle_value`` is the brute-force truth."""

    n: int
    k: int
    formula_value: str
    oracle_value: str
    match: bool


@dataclass
class AuditReport:
    item_id: str
    kind: str
    status: str
    n_max: int
    cells_checked: int
    cells_skipped: int
    counterexample: Cell | None
    duration_s: float
    detail: str = ""
    cells: list[Cell] = field(default_factory=list, repr=False)

    @property
    def verified(self) -> bool:
        return self.status == VERIFIED

    def to_json_dict(self) -> dict:
        ce = None
        if self.counterexample is not None:
            c = self.counterexample
            ce = {
                "n": c.n,
                "k": c.k,
                "formula_value": c.formula_value,
                "oracle_value": c.oracle_value,
            }
        out = {
            "formula": self.item_id,
            "kind": self.kind,
            "status": self.status,
            "n_max": self.n_max,
            "cells_checked": self.cells_checked,
            "cells_skipped": self.cells_skipped,
            "counterexample": ce,
        }
        if self.detail:
            out["detail"] = self.detail
        return out


class _Tally:
    """Shared bookkeeping for a sweep of cell comparisons."""

    def __init__(self) -> None:
        self.start = time.perf_counter()
        self.checked = 0
        self.skipped = 0
        self.cells: list[Cell] = []
        self.counterexample: Cell | None = None

    def compare(self, n: int, k: int, claimed: str, oracle: str) -> None:
        ok = claimed == oracle
        cell = Cell(n, k, claimed, oracle, ok)
        self.checked += 1
        self.cells.append(cell)
        if not ok and self.counterexample is None:
            self.counterexample = cell

    def report(self, item_id: str, kind: str, n_max: int, detail: str = "") -> AuditReport:
        status = VERIFIED if self.counterexample is None else DISCREPANT
        return AuditReport(
            item_id=item_id,
            kind=kind,
            status=status,
            n_max=n_max,
            cells_checked=self.checked,
            cells_skipped=self.skipped,
            counterexample=self.counterexample,
            duration_s=time.perf_counter() - self.start,
            detail=detail,
            cells=self.cells,
        )


def _gen_item_id(patterns: PatternSet) -> str:
    return "gen-" + patterns.canonical().replace(",", "-")


def audit_formula(formula_id: str, n_max: int, *, cap: int | None = None) -> AuditReport:
    """Compare a registered closed form against the oracle on its whole
    stated domain up to n_max; out-of-domain cells are skipped and
    counted.  The formula's status field is stamped with the verdict."""
    f = get_formula(formula_id)
    tally = _Tally()
    for n in range(n_max + 1):
        if n < f.min_n:
            tally.skipped += n + 1
            continue
        row = refined_count(n, f.patterns, cap=cap)
        for k in range(n + 1):
            v = evaluate(formula_id, n, k)
            if v is Undefined.OUT_OF_DOMAIN:
                tally.skipped += 1
                continue
            claimed = "non-integral" if v is Undefined.NON_INTEGRAL else str(v)
            tally.compare(n, k, claimed, str(row[k]))
    report = tally.report(formula_id, "formula", n_max)
    f.status = report.status
    return report


def audit_generator(patterns, n_max: int, *, cap: int | None = None) -> AuditReport:
    """Set equality of the structural construction against the oracle
    enumeration, plus the refined histogram cell by cell."""
    ps = patterns if isinstance(patterns, PatternSet) else PatternSet(patterns)
    tally = _Tally()
    sets_diverge_at: int | None = None
    first_diff: tuple[str, str] | None = None
    for n in range(n_max + 1):
        built = generators.generate(ps, n)
        truth = list(enumerate_avoiders(n, ps, cap=cap))
        if built != truth and sets_diverge_at is None:
            sets_diverge_at = n
            missing = sorted(set(truth) - set(built))
            spurious = sorted(set(built) - set(truth))
            first_diff = (
                spurious[0].compact() if spurious else "-",
                missing[0].compact() if missing else "-",
            )
        hist = [0] * (n + 1)
        for p in built:
            hist[p.fixed_point_count()] += 1
        row = refined_count(n, ps, cap=cap)
        for k in range(n + 1):
            tally.compare(n, k, str(hist[k]), str(row[k]))
    detail = ""
    if sets_diverge_at is not None:
        detail = (
            f"sets first differ at n={sets_diverge_at}"
            f" (spurious={first_diff[0]}, missing={first_diff[1]})"
        )
        if tally.counterexample is None:
            # Same histogram but different members; surface it anyway.
            tally.counterexample = Cell(
                sets_diverge_at, ROW_LEVEL, first_diff[0], first_diff[1], False
            )
            tally.checked += 1
    return tally.report(_gen_item_id(ps), "generator", n_max, detail)


def audit_recurrence(formula_id: str, n_max: int, *, cap: int | None = None) -> AuditReport:
    rep = recurrence_check(formula_id, n_max, cap=cap)
    tally = _Tally()
    tally.checked = rep.cells_checked
    for n, k, lhs, rhs in rep.violations:
        cell = Cell(n, k, str(rhs), str(lhs), False)
        tally.cells.append(cell)
        if tally.counterexample is None:
            tally.counterexample = cell
    item_id = "rec-" + formula_id.removeprefix("thm3-").removeprefix("thm-")
    return tally.report(item_id, "recurrence", n_max)


def audit_gf_coefficients(n_max: int, *, cap: int | None = None) -> AuditReport:
    """Series coefficients of every gf_for_k against the oracle table."""
    ps = PatternSet.parse("231,321")
    tally = _Tally()
    for n in range(n_max + 1):
        row = refined_count(n, ps, cap=cap)
        for k in range(n + 1):
            coeff = series_coefficients(gf_for_k(k), n)[n]
            tally.compare(n, k, str(coeff), str(row[k]))
    return tally.report("gf-231-321", "genfun", n_max)


def audit_gf_sum(n_max: int, *, cap: int | None = None) -> AuditReport:
    """The summed series against the oracle row totals (which the
    separate sum identity pins to 2^(n-1))."""
    ps = PatternSet.parse("231,321")
    sums = sum_over_k(n_max, n_max)
    tally = _Tally()
    for n in range(n_max + 1):
        total = sum(refined_count(n, ps, cap=cap))
        tally.compare(n, ROW_LEVEL, str(sums[n]), str(total))
    return tally.report("gf-sum-231-321", "genfun", n_max)


def audit_sum_identity(patterns, n_max: int, *, cap: int | None = None) -> AuditReport:
    ps = patterns if isinstance(patterns, PatternSet) else PatternSet(patterns)
    tally = _Tally()
    for n in range(1, n_max + 1):
        claimed = sum_identity(ps, n)
        total = sum(refined_count(n, ps, cap=cap))
        tally.compare(n, ROW_LEVEL, str(claimed), str(total))
    item_id = "sum-" + ps.canonical().replace(",", "-")
    return tally.report(item_id, "identity", n_max)


def audit_small_class_bound(n_max: int, *, cap: int | None = None) -> AuditReport:
    """Every pattern set of cardinality >= 4 has refined counts in
    {0, 1, 2} at every (n, k)."""
    tally = _Tally()
    detail = ""
    for size in (4, 5, 6):
        for combo in itertools.combinations(ALL_PATTERNS, size):
            ps = PatternSet(combo)
            for n in range(n_max + 1):
                row = refined_count(n, ps, cap=cap)
                for k in range(n + 1):
                    ok = row[k] in (0, 1, 2)
                    tally.checked += 1
                    if not ok and tally.counterexample is None:
                        tally.counterexample = Cell(
                            n, k, "0|1|2", str(row[k]), False
                        )
                        detail = f"violated by {{{ps.canonical()}}}"
    return tally.report("bound-size-ge-4", "property", n_max, detail)


def audit_vanishing(n_max: int, *, cap: int | None = None) -> AuditReport:
    """No permutation of size >= 5 avoids both monotone patterns."""
    ps = PatternSet.parse("123,321")
    tally = _Tally()
    for n in range(5, n_max + 1):
        total = sum(refined_count(n, ps, cap=cap))
        tally.compare(n, ROW_LEVEL, "0", str(total))
    return tally.report("empty-123-321", "property", n_max)


def audit_all(n_max: int, *, cap: int | None = None) -> list[AuditReport]:
    """Audit everything: all registered formulas, every structural
    family, the recurrences, the generating functions, the summation
    identities, the cardinality >= 4 bound and the monotone emptiness.
    Deterministic order, no omissions."""
    reports = [audit_formula(fid, n_max, cap=cap) for fid in formulas.formula_ids()]
    for fam in generators.supported_families():
        reports.append(audit_generator(fam.patterns, n_max, cap=cap))
    for rec_id in RECURRENCES:
        reports.append(audit_recurrence(rec_id, n_max, cap=cap))
    reports.append(audit_gf_coefficients(n_max, cap=cap))
    reports.append(audit_gf_sum(n_max, cap=cap))
    reports.append(audit_sum_identity("132,321", n_max, cap=cap))
    reports.append(audit_sum_identity("231,321", n_max, cap=cap))
    reports.append(audit_small_class_bound(n_max, cap=cap))
    reports.append(audit_vanishing(n_max, cap=cap))
    return reports


def reports_to_json(reports: list[AuditReport]) -> str:
    return json.dumps([r.to_json_dict() for r in reports], indent=2)


# ---------------------------------------------------------------------------
# refined-equivalence claims
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SuperWilfClaim:
    name: str
    members: tuple[str, ...]
    holds: bool
    witness: tuple[int, int] | None


@dataclass(frozen=True)
class SuperWilfAudit:
    n_max: int
    claims: tuple[SuperWilfClaim, ...]

    @property
    def all_hold(self) -> bool:
        return all(c.holds for c in self.claims)

    def to_json_dict(self) -> dict:
        return {
            "n_max": self.n_max,
            "empirical": True,
            "claims": [
                {
                    "name": c.name,
                    "members": list(c.members),
                    "holds": c.holds,
                    "witness": None if c.witness is None else {"n": c.witness[0], "k": c.witness[1]},
                }
                for c in self.claims
            ],
        }


_SUPER_WILF_CLAIMS: tuple[tuple[str, tuple[str, ...]], ...] = (
    ("singletons-132-213-321", ("132", "213", "321")),
    ("singletons-231-312", ("231", "312")),
    ("pairs-132-213-with-231-312", ("132,231", "132,312", "213,231", "213,312")),
)


def audit_super_wilf(n_max: int, *, cap: int | None = None) -> SuperWilfAudit:
    """Check, empirically up to n_max, the three known equivalences that
    go beyond the symmetry group: {132}, {213}, {321} share one refined
    table; {231}, {312} share one; and the four mixed pairs share one."""
    checks = []
    for name, members in _SUPER_WILF_CLAIMS:
        sets = [PatternSet.parse(m) for m in members]
        classes = super_wilf_classes(sets, n_max, cap=cap)
        holds = len(classes) == 1
        witness = None
        if not holds:
            a = classes[0].members[0]
            b = classes[1].members[0]
            witness = divergence_witness(a, b, n_max, cap=cap)
        checks.append(SuperWilfClaim(name, members, holds, witness))
    return SuperWilfAudit(n_max, tuple(checks))
