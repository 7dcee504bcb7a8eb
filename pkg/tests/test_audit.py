import json

import pytest

from patfix.audit import (
    audit_all,
    audit_formula,
    audit_generator,
    audit_recurrence,
    audit_gf_coefficients,
    audit_gf_sum,
    audit_small_class_bound,
    audit_sum_identity,
    audit_super_wilf,
    audit_vanishing,
    reports_to_json,
)
from patfix.formulas import DISCREPANT, UNTESTED, VERIFIED, formula_ids, get_formula


class TestFormulaAudit:
    def test_verified_formula(self):
        report = audit_formula("thm-123-321", 8)
        assert report.status == VERIFIED
        assert report.counterexample is None
        assert report.cells_checked == sum(n + 1 for n in range(9))
        assert get_formula("thm-123-321").status == VERIFIED

    def test_discrepant_formula_carries_counterexample(self):
        report = audit_formula("thm3-132-213-231", 9)
        assert report.status == DISCREPANT
        c = report.counterexample
        assert (c.n, c.k) == (4, 0)
        assert (c.formula_value, c.oracle_value) == ("5", "3")
        assert get_formula("thm3-132-213-231").status == DISCREPANT

    def test_wrong_pair_clause_detected(self):
        report = audit_formula("thm-132-231", 9)
        assert report.status == DISCREPANT
        c = report.counterexample
        assert (c.n, c.k, c.formula_value, c.oracle_value) == (4, 1, "6", "2")

    def test_skipped_cells_counted(self):
        report = audit_formula("thm-132-231", 5)
        # Sizes 0..2 are below the stated domain.
        assert report.cells_skipped == 1 + 2 + 3

    def test_unknown_formula(self):
        with pytest.raises(ValueError):
            audit_formula("no-such", 5)


class TestOtherItems:
    def test_generator_items(self):
        good = audit_generator("231,312", 7)
        assert good.status == VERIFIED
        bad = audit_generator("132,213,231", 7)
        assert bad.status == DISCREPANT
        assert (bad.counterexample.n, bad.counterexample.k) == (2, 2)
        assert "missing=12" in bad.detail

    def test_recurrence_items(self):
        for fid in ("thm-132-231", "thm-231-312", "thm-231-321", "thm3-231-312-321"):
            assert audit_recurrence(fid, 8).status == VERIFIED

    def test_gf_items(self):
        assert audit_gf_coefficients(8).status == VERIFIED
        assert audit_gf_sum(8).status == VERIFIED

    def test_identity_items(self):
        assert audit_sum_identity("132,321", 8).status == VERIFIED
        assert audit_sum_identity("231,321", 8).status == VERIFIED

    def test_property_items(self):
        assert audit_small_class_bound(7).status == VERIFIED
        assert audit_vanishing(8).status == VERIFIED


class TestAuditAll:
    def test_completeness_and_statuses(self):
        reports = audit_all(6)
        ids = [r.item_id for r in reports]
        # Every registered formula is audited, no omissions.
        for fid in formula_ids():
            assert fid in ids
        assert len(ids) == len(set(ids))
        for r in reports:
            assert r.status in (VERIFIED, DISCREPANT)
            assert r.status != UNTESTED

    def test_expected_discrepancy_set(self):
        reports = audit_all(6)
        bad = sorted(r.item_id for r in reports if r.status == DISCREPANT)
        assert bad == [
            "gen-132-213-231",
            "thm-132-231",
            "thm-213-231",
            "thm3-132-213-231",
        ]

    def test_json_is_reproducible_and_well_formed(self):
        a = reports_to_json(audit_all(5))
        b = reports_to_json(audit_all(5))
        assert a == b
        payload = json.loads(a)
        for item in payload:
            assert set(item) >= {
                "formula", "status", "n_max", "cells_checked",
                "cells_skipped", "counterexample",
            }
            assert item["status"] in ("verified", "discrepant")
            if item["counterexample"] is not None:
                assert set(item["counterexample"]) == {
                    "n", "k", "formula_value", "oracle_value",
                }
                assert isinstance(item["counterexample"]["formula_value"], str)


class TestSuperWilfAudit:
    def test_claims_hold(self):
        report = audit_super_wilf(8)
        assert report.all_hold
        assert [c.name for c in report.claims] == [
            "singletons-132-213-321",
            "singletons-231-312",
            "pairs-132-213-with-231-312",
        ]

    def test_weak_evidence_still_holds(self):
        assert audit_super_wilf(3).all_hold
        assert audit_super_wilf(0).all_hold

    def test_json_shape(self):
        payload = audit_super_wilf(4).to_json_dict()
        assert payload["empirical"] is True
        assert all(c["holds"] for c in payload["claims"])
