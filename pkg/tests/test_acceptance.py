"""Acceptance gate: one test per criterion, with a printed verdict line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines.  Documented reference-table discrepancies (transcription typos and
the dual identities that only hold at tangent level) are asserted to occur
*exactly* as annotated in the fixtures: silently absorbing them, or any
unannotated mismatch, fails the gate.
"""

import time

import numpy as np
import pytest

from braidforge import bialgebra, braid, dual, fixtures, rtt
from braidforge.freealg import GEN_INDEX, change_basis_deg2, counit_values, hat_change
from braidforge.linalg import QQ, subspace_equal
from braidforge.util import canonical_json

tol = 1e-9
SAMPLES = 100
BOUND = 2.0
CASES = [str(c) for c in braid.ALL_CASES]


def verdict(n, ok, detail):
    line = f"[criterion {n}] {'PASS' if ok else 'FAIL'} - {detail}"
    print(line)
    assert ok, line




def test_criterion_1_constant_ybe():
    start = time.monotonic()
    for case in braid.ALL_CASES:
        rhat = braid.build_constant_rhat(case)
        assert braid.check_constant_ybe(rhat), case
        assert braid.check_constant_braid(rhat), case
    corrupted = braid.build_constant_rhat(braid.ALL_CASES[0])
    corrupted[0, 0] = corrupted[0, 0] + QQ(1, 10)
    assert not braid.check_constant_ybe(corrupted)
    elapsed = time.monotonic() - start
    verdict(1, elapsed < 5.0,
            f"8/8 constant solutions verified exactly, corrupted matrix "
            f"rejected ({elapsed:.2f} s)")


def test_criterion_2_baxterized_identities():
    start = time.monotonic()
    rng = np.random.default_rng(0)
    worst = 0.0
    for _ in range(SAMPLES):
        p = braid.sample_params(rng, BOUND)
        th, th2 = (float(x) for x in rng.uniform(-BOUND, BOUND, size=2))
        worst = max(worst, braid.check_braid_baxterized(p, th, th2))
        worst = max(worst, braid.check_ybe_baxterized(p, th, th2))
        worst = max(worst, float(np.max(np.abs(
            braid.build_rhat(p, 0.0) - np.eye(9)))))
        worst = max(worst, float(np.max(np.abs(
            braid.build_rhat(p, th) @ braid.build_rhat(p, -th) - np.eye(9)))))
    elapsed = time.monotonic() - start
    verdict(2, worst < tol and elapsed < 10.0,
            f"braid/YBE/regularity/inverse residuals < {tol:g} over "
            f"{SAMPLES} seeded samples (max {worst:.2e}, {elapsed:.2f} s)")


def test_criterion_3_rtt_derivation():
    start = time.monotonic()
    derivations = rtt.derive_all_cases(cross_check=True)
    diffs = {}
    for case in CASES:
        der = derivations[case]  # built with the two-strategy cross-check
        assert der.relations_original.dim == 40
        assert der.relations_tilde.dim == 40
        transcribed = fixtures.case_relation_set(case)
        if not subspace_equal(der.relations_tilde.subspace, transcribed.subspace):
            derived_words = set(der.relations_tilde.zero_words() or [])
            reference_words = set(transcribed.zero_words() or [])
            diffs[case] = {
                "derived_only": sorted(derived_words - reference_words),
                "reference_only": sorted(reference_words - derived_words),
            }
    elapsed = time.monotonic() - start
    for case, diff in diffs.items():
        print(f"  itemized diff {case}: {diff}")
    verdict(3, not diffs and elapsed < 60.0,
            f"8/8 derived ideals have dimension 40 and equal the "
            f"transcribed lists (zero diffs, {elapsed:.2f} s)")


def test_criterion_4_classification(derivations):
    report = rtt.classify(derivations)
    stated = all(report.witnesses[p] for p in rtt.STATED_WITNESS_PAIRS)
    searched = report.searched[("+-+", "++-")] > 0
    verdict(4, stated and searched and report.cross_class_witnesses == 0,
            "four conjugation classes verified (stated witnesses exact, "
            f"searched witness found for +-+ ~ ++-, "
            f"0/{report.cross_class_pairs_checked} cross-class witnesses)")


def test_criterion_5_bialgebra_axioms(derivations, hat_relations):
    start = time.monotonic()
    table = bialgebra.coproduct_table("original")
    for case in CASES:
        rel = derivations[case].relations_original
        ok, witnesses = bialgebra.check_coproduct_compatibility(rel, table)
        assert ok, (case, witnesses)
        assert bialgebra.check_counit(rel), case
    for basis in ("original", "tilde", "hat"):
        t = bialgebra.coproduct_table(basis)
        assert bialgebra.check_coassociativity_deg1(t), basis
        assert bialgebra.check_counit_laws_deg1(t), basis
    elapsed = time.monotonic() - start
    verdict(5, elapsed < 30.0,
            f"(q x q)(delta r) = 0 and eps(r) = 0 for all 8 ideals; "
            f"coassociativity and counit laws hold in all three bases "
            f"({elapsed:.2f} s)")


def test_criterion_6_hat_coproduct_recomputation():
    documented = {}
    for basis in ("original", "tilde", "hat"):
        fx = fixtures.coproduct_fixture(basis)
        out = bialgebra.diff_against_fixture(basis, fx.payload)
        assert not out["unexpected"], (basis, out["unexpected"])
        documented[basis] = sorted(out["documented"])
    eps = counit_values("hat")
    counit_ok = (eps[GEN_INDEX["k"]] == QQ(1, 2) and eps[GEN_INDEX["l"]] == QQ(1, 2)
                 and eps[GEN_INDEX["r"]] == QQ(1)
                 and all(not eps[GEN_INDEX[g]] for g in "mnpqst"))
    expected = {"original": [], "tilde": ["m", "s"], "hat": ["m"]}
    verdict(6, documented == expected and counit_ok,
            "recomputed tables match the displays up to exactly the "
            f"documented typo lines {documented['tilde'] + documented['hat']} "
            "(plus the typographical one in the original display); "
            "hat counit = (1/2, 1/2, 1, 0...)")


def test_criterion_7_dual_suite(hat_relations, dual_identities):
    start = time.monotonic()
    dual4 = dual.DualAlgebra(dual.GradedQuotient(hat_relations, 4))
    report = dual.run_dual_suite(dual4, dual_identities)
    elapsed = time.monotonic() - start

    by_name = {r["name"]: r for r in report["identities"]}
    # the identities singled out by the gate, verifiable at all degrees
    for name in ("[S,P] = M", "K^1 M = 2^1 M", "K^2 M = 2^2 M",
                 "K^3 M = 2^3 M", "M^2 = 0", "N^2 = 0", "P^2 = 0",
                 "Q^2 = 0", "S^2 = 0", "T^2 = 0", "M K = 0", "K N = 0",
                 "T M = 0", "M Q = 0", "P N = 0", "N S = 0"):
        assert by_name[name]["status"] == "verified", name

    documented = {r["name"] for r in report["identities"]
                  if r["status"] == "documented-fail"}
    for r in sorted(report["identities"], key=lambda r: r["name"]):
        if r["status"] == "documented-fail":
            print(f"  DOCUMENTED-DIFF {r['name']} fails at {r['witness']}"
                  + (f" (holds as {r['holds_as']})" if r.get("holds_as") else ""))
    assert by_name["[Q,T] = N"].get("holds_as_verified") is True

    assert all(p["status"] == "verified" for p in report["primitivity"])
    assert report["unit_law"]["ok"]
    assert report["associativity"]["ok"]
    assert report["negative_control"]["fails_as_required"]
    assert report["negative_control"]["witness"] == "p~"

    ok = report["clean"] and elapsed < 300.0
    verdict(7, ok,
            f"{report['counts']['verified']} identity instances verified on "
            f"all normal words of degree <= 4; {len(documented)} displayed "
            "identities fail exactly as annotated (11 hold at tangent level "
            "only, 2 are display misprints); primitivity 9/9, unit law, "
            f"associativity over 729 triples, negative control "
            f"({elapsed:.1f} s)")


def test_criterion_8_deterministic_reports(tmp_path):
    import contextlib
    import io

    from braidforge.cli import main

    pairs = []
    for args, fname in (
        (["verify-ybe", "--baxterized", "--samples=25", "--seed=0"], "ybe"),
        (["derive", "--case=-+-", "--diff-paper"], "derive"),
        (["dual", "--max-degree=2"], "dual"),
    ):
        paths = []
        for run in (1, 2):
            path = tmp_path / f"{fname}{run}.json"
            with contextlib.redirect_stdout(io.StringIO()):
                code = main(args + [f"--json={path}"])
            assert code in (0, 1)
            paths.append(path.read_bytes())
        pairs.append(paths[0] == paths[1])
    verdict(8, all(pairs),
            "repeated seeded runs produce byte-identical JSON reports "
            "(verify-ybe, derive, dual)")
