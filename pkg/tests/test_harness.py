import json
from dataclasses import replace

import pytest

from neighborly.config import Config
from neighborly.constants import ComponentType, DeletionRule, SignConvention
from neighborly.errors import BudgetExceededError, ValidationError
from neighborly.identities import first_component_terms, gf_sequence, rr1_product
from neighborly.qseries import Series, geometric_inverse_factor
from neighborly.services import harness
from neighborly.services.harness import (
    Mismatch,
    Report,
    VerificationHarness,
    check_prune_consistency,
    check_signature_consistency,
    edgevertex_buckets,
    first_component_split,
    gf_by_parts,
    run_all,
    signature_sum,
    signed_sum,
)
from neighborly.signatures import PrunedChain, prune, signature_closed

SMALL = Config(
    max_weight=14,
    signature_weight=10,
    prune_weight=12,
    n_parts=6,
    q_order=12,
    x_order=5,
    chain_max=20,
    chain_brute_max=8,
)


def test_signed_sum_is_rr1_numerator():
    assert signed_sum(12, 1) == Series.from_terms({0: 1, 2: -1, 3: -1, 9: 1, 11: 1}, 12)


def test_signed_sum_without_ones_is_rr2_numerator():
    assert signed_sum(12, 2) == Series.from_terms({0: 1, 4: -1, 5: -1, 6: -1}, 12)


def test_signed_sum_rejects_zero_min_part():
    with pytest.raises(ValidationError):
        signed_sum(5, 0)


def test_signature_sum_over_all_partitions_matches():
    assert signature_sum(16) == signed_sum(16, 1)


def test_gf_by_parts_small():
    assert gf_by_parts(0, 10) == Series.one(10)
    assert gf_by_parts(1, 10).is_zero()
    assert gf_by_parts(2, 10) == -Series.monomial(2, 10) * geometric_inverse_factor(1, 10)


def test_edgevertex_buckets_small():
    buckets = edgevertex_buckets(10)
    assert buckets[(0, 0)] == Series.one(10)
    assert buckets[(2, 1)] == -Series.monomial(2, 10) * geometric_inverse_factor(1, 10)
    assert buckets[(3, 2)] == Series.monomial(4, 10) * geometric_inverse_factor(1, 10)
    assert not any(parts == 1 for parts, _ in buckets)


def test_first_component_split_matches_recurrence_terms():
    gf = gf_sequence(6, 16)
    for n in range(1, 7):
        split = first_component_split(16, n)
        assert split == first_component_terms(n, gf), n


def test_literal_rule_misfiles_the_four_edge_chain():
    split = first_component_split(10, 5, DeletionRule.LITERAL)
    terms = first_component_terms(5, gf_sequence(5, 10))
    # (1,1,2,3,3) keeps only 1<->1 under the literal rule.
    assert split[ComponentType.PAIR].coeff(10) != terms[ComponentType.PAIR].coeff(10)


def test_signature_consistency_passes():
    report = check_signature_consistency(10)
    assert report.status == "PASS"
    assert report.counts["partitions"] > 0


def test_signature_consistency_of_weight_zero():
    report = check_signature_consistency(0)
    assert report.passed
    assert report.counts == {"partitions": 1, "admissible": 1}


def test_injected_sign_flip_is_caught():
    report = check_signature_consistency(6, closed=lambda g: -signature_closed(g)[0])
    assert report.status == "FAIL"
    first = report.mismatches[0]
    assert first.location == 0
    assert first.label.startswith("closed")


def test_prune_consistency_passes():
    assert check_prune_consistency(16).passed
    assert check_prune_consistency(16, DeletionRule.EXAMPLE).passed


def test_prune_consistency_flags_chains_with_the_wrong_kept_parity(monkeypatch):
    def keep_everything(g, rule=DeletionRule.LITERAL):
        pruned = prune(g, rule)
        return replace(pruned, chains=tuple(PrunedChain(c.length, ()) for c in pruned.chains))

    monkeypatch.setattr(harness, "prune", keep_everything)
    report = check_prune_consistency(12)
    labels = [m.label for m in report.mismatches]
    assert "kept edges of chain 4 1,2,3,4/1" in labels
    assert all(label.startswith("kept edges of chain") for label in labels)


def test_prune_consistency_of_weight_two():
    report = check_prune_consistency(2)
    assert report.passed
    assert report.counts["admissible"] == 2


def test_budget_errors_propagate():
    with pytest.raises(BudgetExceededError):
        signed_sum(12, 1, max_count=5)


def test_small_config_passes_every_check():
    reports = run_all(SMALL)
    assert [r.check for r in reports] == list(SMALL.checks)
    assert [r.check for r in reports if not r.passed] == []


def test_controls_report_witnesses():
    report = VerificationHarness(SMALL).run("controls")
    assert report.passed
    assert report.counts["witnesses"]["perturbed_rr1"] == 7
    assert report.counts["witnesses"]["dropped_qx_term"] == [1, 1]
    assert report.counts["witnesses"]["sign_flip"].startswith("closed")


def test_controls_fire_with_zero_orders():
    config = SMALL.with_overrides(max_weight=0, x_order=0, q_order=0)
    report = VerificationHarness(config).run("controls")
    assert report.passed
    assert report.counts["witnesses"] == {
        "perturbed_rr1": 0,
        "sign_flip": "closed /",
        "dropped_qx_term": [1, 1],
    }


def test_printed_odd_convention_fails_edgevertex():
    config = SMALL.with_overrides(sign_convention=SignConvention.PRINTED)
    report = VerificationHarness(config).run("edgevertex")
    assert report.status == "FAIL"
    assert report.counts["matching_odd_conventions"] == ["shifted"]


def test_empty_check_list_gives_no_reports():
    assert run_all(SMALL.with_overrides(checks=())) == []


def test_unknown_check_is_rejected():
    with pytest.raises(ValidationError):
        VerificationHarness(SMALL).run("nope")


def test_rr1_report_records_q8_split():
    report = VerificationHarness(SMALL).run("rr1")
    assert report.counts["q8"] == {"positive": 2, "negative": 2}
    assert report.series == rr1_product(14)
    assert report.to_dict()["series"] == {"order": 14, "coeffs": list(rr1_product(14).coeffs)}


def test_series_mismatches_are_located():
    report = Report("rr1")
    report.add_series_mismatches("product", rr1_product(10), rr1_product(10))
    assert report.passed
    report.add_series_mismatches("product", rr1_product(10), rr1_product(10) + Series.monomial(7, 10))
    assert report.mismatches == [Mismatch(7, 0, 1, "product")]


def test_report_schema_excludes_timing_by_default():
    report = Report("rr1", {"max_weight": 3}, [Mismatch((1, 2), 0, 5, "x")], {"partitions": 4})
    report.elapsed = 1.5
    data = report.to_dict()
    assert data == {
        "check": "rr1",
        "params": {"max_weight": 3},
        "status": "FAIL",
        "mismatches": [{"location": [1, 2], "expected": 0, "actual": 5, "label": "x"}],
        "counts": {"partitions": 4},
    }
    assert json.loads(json.dumps(report.to_dict(include_timing=True)))["counts"]["seconds"] == 1.5


@pytest.mark.slow
def test_default_config_passes_every_check():
    reports = run_all(Config())
    assert {r.check: r.status for r in reports} == {name: "PASS" for name in Config().checks}
