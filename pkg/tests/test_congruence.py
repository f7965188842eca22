"""Congruence verification engine, witness machinery, and the scanner."""

import random

import pytest

from growthcong import (
    WitnessCandidate,
    beta_delta,
    partition_table,
    reports_to_csv,
    reports_to_json,
    residues_cong1,
    scan_progressions,
    verify_atkin_k2,
    verify_cong1,
    verify_examples_11_12,
    verify_gamma_progression,
    verify_ramanujan,
    verify_sym,
    witness_search,
)
from growthcong.congruence import BudgetExceededError, witness_primes
from growthcong.reports import FAIL, PASS, TRIVIAL_PASS


def test_residues_cong1():
    assert (24 * residues_cong1(5, 4)) % 5**4 == 1
    assert residues_cong1(5, 4) == 599
    assert residues_cong1(7, 4) == 2301
    with pytest.raises(ValueError):
        residues_cong1(2, 1)


def test_ramanujan_small_moduli():
    for ell, j in ((5, 1), (5, 2), (7, 1), (7, 2), (11, 1)):
        report = verify_ramanujan(ell, j, 2000)
        assert report.status == PASS and report.tested > 10, (ell, j)


def test_ramanujan_against_direct_scan():
    # cross-check the filter: every qualifying n <= 500 directly
    table = partition_table(500)
    report = verify_ramanujan(5, 2, 500)
    direct = [n for n in range(501) if (24 * n) % 25 == 1 and table[n] % 25]
    assert report.passed and direct == []
    assert report.tested == len([n for n in range(501) if (24 * n) % 25 == 1])


def test_cong1_trivial_range():
    for j in (2, 3):
        report = verify_cong1(5, j, 50)
        assert report.status == TRIVIAL_PASS and report.tested == 0


def test_cong1_effective_range():
    report = verify_cong1(5, 4, 20)
    assert report.status == PASS and report.tested == 21
    report = verify_cong1(7, 4, 5)
    assert report.status == PASS and report.tested == 6


def test_atkin_k2():
    assert verify_atkin_k2(5, 3, 50).status == TRIVIAL_PASS
    report = verify_atkin_k2(5, 4, 30)
    assert report.status == PASS and report.tested == 31


def test_intro_examples():
    reports = verify_examples_11_12(300)
    assert len(reports) == 7
    assert all(r.status == PASS for r in reports)


def test_gamma_progression_detects_counterexamples():
    # gamma_alt(n) mod 2 is not identically zero: the claim must FAIL
    report = verify_gamma_progression(1, 0, 2, 30, provenance="negative control")
    assert report.status == FAIL
    assert report.counterexamples[0][0] == 0  # gamma_alt(0) = 1


def test_example_progression_spot_check():
    # the full block at its stated ranges runs in the acceptance suite
    report = verify_gamma_progression(2 * 5**4, 1198, 5, 3, provenance="spot")
    assert report.passed and report.tested == 4
    report = verify_gamma_progression(2 * 7**4, 4602, 7, 2, provenance="spot")
    assert report.passed and report.tested == 3


def test_budget_enforcement():
    with pytest.raises(BudgetExceededError):
        verify_gamma_progression(2 * 5**4, 1198, 5, 200, memory_budget=1000)


def test_beta_delta_identities():
    rng = random.Random(20260823)
    primes = [p for p in range(5, 400) if all(p % d for d in range(2, p))]
    for _ in range(1000):
        ell = rng.choice([5, 7, 11, 13, 29, 31])
        q = rng.choice([p for p in primes if p != ell and p not in (2, 3)])
        n = rng.randrange(0, 10**6)
        beta, delta = beta_delta(ell, q)
        m = 2 if ell <= 23 else 1
        assert 24 * delta == q * ell**m * beta + 1
        assert (q * ell**m * (24 * n + beta) + 1) % 12 == 0
        assert (q * ell**m * (24 * n + beta) + 1) // 12 == 2 * q * ell**m * n + 2 * delta


def test_beta_delta_rejects_bad_arguments():
    with pytest.raises(ValueError):
        beta_delta(5, 3)


def test_witness_candidate_consistency_guard():
    beta, delta = beta_delta(5, 719)
    WitnessCandidate(5, 1, 719, beta, delta, evidence=10)
    with pytest.raises(ValueError):
        WitnessCandidate(5, 1, 719, beta, delta + 1, evidence=10)


def test_witness_primes():
    primes = witness_primes(5, 1, 5000)
    assert primes[0] == 719  # smallest prime == -1 (mod 720)
    assert all(q % 720 == 719 for q in primes)


def test_witness_search_small_scale():
    candidates = witness_search(5, 1, 1500, 15)
    assert [c.q for c in candidates] == sorted(c.q for c in candidates)
    for cand in candidates:
        recheck = verify_sym(cand.ell, cand.j, cand.q, 5)
        assert recheck.passed


def test_witness_search_deterministic():
    a = witness_search(5, 1, 800, 12)
    b = witness_search(5, 1, 800, 12)
    assert [(c.q, c.evidence) for c in a] == [(c.q, c.evidence) for c in b]


def test_verify_sym_filter_and_map():
    report = verify_sym(5, 1, 719, 10)
    assert report.claim.progression == (2 * 719 * 25, 2 * 749)
    assert report.skipped == 2  # n with gcd(24n + 1, 3595) > 1
    assert report.passed


def test_scan_recovers_classical_progression():
    claims = scan_progressions("p", 5, 7, 200)
    assert any(c.progression == (5, 4) for c in claims)


def test_scan_finds_no_parity_progression():
    assert scan_progressions("p", 2, 10, 300) == []


def test_scan_recovers_intro_classes_at_doubled_argument():
    claims = scan_progressions("p_2", 5, 10, 400)
    pairs = {c.progression for c in claims}
    assert {(5, 2), (5, 3), (5, 4)} <= pairs
    # the even-argument classes the growth statement uses
    assert {(10, 2), (10, 4), (10, 8)} <= pairs


def canon_reports(reports):
    """JSON with the wall-clock field removed (the only nondeterminism)."""
    import json

    docs = json.loads(reports_to_json(reports))
    for d in docs:
        d.pop("elapsed")
    return json.dumps(docs, sort_keys=True)


def test_threaded_reports_are_byte_identical():
    one = verify_examples_11_12(400, threads=1)
    four = verify_examples_11_12(400, threads=4)
    assert canon_reports(one) == canon_reports(four)


def test_report_serialization_is_deterministic():
    reports = verify_examples_11_12(100)
    assert canon_reports(reports) == canon_reports(verify_examples_11_12(100))
    csv_text = reports_to_csv(reports)
    assert csv_text.splitlines()[0].startswith("claim,provenance,status")
    assert len(csv_text.splitlines()) == len(reports) + 1
