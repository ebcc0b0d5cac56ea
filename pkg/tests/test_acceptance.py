"""Acceptance gate: every primary criterion at its stated tolerance.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one PASS line
per criterion.  The census criterion enumerates all 134,217,728 matrices
and dominates the runtime (a few minutes on one core).
"""

import math
import time
from fractions import Fraction

import numpy as np
import pytest

from bwmllsm import (
    check_corollary2,
    check_theorem1,
    check_theorem2,
    detect_bwm_violations_exact,
    detect_violations,
    enumerate_census,
    make_pcm,
    min_runs,
    no_detection_probability,
    saaty_census_witness_family,
    solve_llsm,
    solve_llsm_bwm_closed_form,
    spanning_tree_oracle,
    to_incomplete_pcm,
    validate_bwm,
)
from conftest import (
    consistent_pcm_vector,
    example1_instance,
    random_instance,
    random_theorem1_instance,
    random_theorem2_instance,
)

pytestmark = pytest.mark.acceptance


def report(name: str) -> None:
    print(f"\nACCEPTANCE {name}: PASS")


class TestA1Example1Golden:
    def test_example1_weights_and_violation(self):
        inst = example1_instance()
        published = (0.2645, 0.2778, 0.1310, 0.1310, 0.1310, 0.0648)

        for pv in (solve_llsm_bwm_closed_form(inst), solve_llsm(to_incomplete_pcm(inst))):
            assert np.max(np.abs(pv.w_sum - np.array(published))) < 5e-4

        exact = detect_bwm_violations_exact(inst)
        assert exact.has_violation
        assert [(v.i, v.j) for v in exact.strict] == [(1, 2)]
        assert exact.offending_alternatives() == (2,)

        pcm = to_incomplete_pcm(inst)
        floaty = detect_violations(pcm, solve_llsm(pcm))
        assert [(v.i, v.j) for v in floaty.violations] == [(1, 2)]
        report("example1-golden")


class TestA2Prop1Census:
    def test_full_census_counts_and_witnesses(self):
        t0 = time.perf_counter()
        census = enumerate_census(6, range(2, 10), fixed_p=Fraction(2))
        elapsed = time.perf_counter() - t0

        assert census.total == 134_217_728
        assert census.theorem1_fixed_p == 40_353_607
        assert census.violating == 56
        assert len(census.witnesses) == 56

        family = {w.free_entry_tuple() for w in saaty_census_witness_family()}
        found = {w.free_entry_tuple() for w in census.witnesses}
        assert found == family

        # 15-minute target is for 8 cores; hold the single-process run to it too
        assert elapsed < 900, f"census took {elapsed:.0f}s"
        print(f"\n  census wall time: {elapsed:.1f}s, ties surfaced: {census.tie_matrices}")
        report("full-census")

    def test_census_determinism_across_thread_counts(self):
        # full n=5 Saaty census (2,097,152 matrices) under three schedules
        runs = [
            enumerate_census(5, range(2, 10), jobs=1),
            enumerate_census(5, range(2, 10), jobs=2),
            enumerate_census(5, range(2, 10), jobs=3, chunk_target=1 << 12),
        ]
        assert len({r.signature() for r in runs}) == 1
        report("census-determinism")


class TestA3GuaranteeSuites:
    def test_theorem1_guarantee_100k(self):
        rng = np.random.default_rng(2024)
        for _ in range(100_000):
            n = int(rng.integers(3, 13))
            inst = random_theorem1_instance(rng, n, p=2)
            assert check_theorem1(inst, Fraction(2)).theorem1.passed
            assert not detect_bwm_violations_exact(inst).has_violation
        report("theorem1-guarantee")

    def test_theorem2_guarantee_100k(self):
        rng = np.random.default_rng(2025)
        for _ in range(100_000):
            n = int(rng.integers(4, 13))
            inst = random_theorem2_instance(rng, n, p=2)
            assert check_theorem2(inst, Fraction(2)).theorem2.passed
            assert not detect_bwm_violations_exact(inst).has_violation
        report("theorem2-guarantee")


class TestA4ClosedFormEquivalence:
    def test_closed_form_matches_general_10k(self):
        rng = np.random.default_rng(4242)
        worst = 0.0
        for _ in range(10_000):
            n = int(rng.integers(3, 13))
            inst = random_instance(rng, n)
            y_closed = solve_llsm_bwm_closed_form(inst).y
            y_general = solve_llsm(to_incomplete_pcm(inst)).y
            worst = max(worst, float(np.max(np.abs(y_closed - y_general))))
        assert worst <= 1e-10, f"max log-space deviation {worst:.3e}"
        print(f"\n  max closed-vs-general deviation: {worst:.3e}")
        report("closed-form-equivalence")


class TestA5SpanningTreeOracle:
    @staticmethod
    def deviation(inst) -> float:
        pcm = to_incomplete_pcm(inst)
        return float(np.max(np.abs(spanning_tree_oracle(pcm).y - solve_llsm(pcm).y)))

    def test_oracle_equivalence_up_to_n5(self):
        import itertools

        from bwmllsm import instance_from_entries

        worst = 0.0
        # n = 3: all 512 Saaty-scale instances
        for entries in itertools.product(range(2, 10), repeat=3):
            worst = max(worst, self.deviation(instance_from_entries(entries, 3)))
        # n = 4, 5: broad seeded samples over the full scale
        rng = np.random.default_rng(5150)
        for n, count in ((4, 1000), (5, 1000)):
            for _ in range(count):
                worst = max(worst, self.deviation(random_instance(rng, n)))
        # and the published 6-alternative example
        worst = max(worst, self.deviation(example1_instance()))
        assert worst <= 1e-10, f"max oracle deviation {worst:.3e}"
        print(f"\n  max spanning-tree oracle deviation: {worst:.3e}")
        report("spanning-tree-oracle")


class TestA6DetectionMath:
    def test_q_and_min_runs(self):
        p = Fraction(56, 8 ** 9)
        q = no_detection_probability(p, 10_000)
        assert abs(q - 0.9958) < 5e-4, f"q = {q}"
        assert min_runs(p, 0.5) == 1_661_297
        report("detection-math")


class TestA7Corollary2Boundary:
    @staticmethod
    def qualifying(n):
        middles = list(range(2, n))
        return validate_bwm(
            n, 1, n,
            best_to_others={j: 2 for j in middles},
            others_to_worst={j: 2 for j in middles},
            best_to_worst=9,
        )

    def test_pass_at_26_fail_at_27(self):
        assert check_corollary2(self.qualifying(26)).corollary2.passed
        assert not check_corollary2(self.qualifying(27)).corollary2.passed
        report("corollary2-boundary")


class TestA8ConsistencyRecovery:
    def test_consistent_pcms_recovered_1k(self):
        rng = np.random.default_rng(808)
        worst = 0.0
        for _ in range(1000):
            n = int(rng.integers(3, 9))
            v = consistent_pcm_vector(rng, n)
            entries = {
                (i + 1, j + 1): v[i] / v[j] for i in range(n) for j in range(n)
            }
            pcm = make_pcm(n, entries)
            y = solve_llsm(pcm).y
            target = np.array([math.log(x.numerator) - math.log(x.denominator) for x in v])
            target -= target.mean()
            worst = max(worst, float(np.max(np.abs(y - target))))
        assert worst <= 1e-12, f"max log-space error {worst:.3e}"
        print(f"\n  max consistency-recovery error: {worst:.3e}")
        report("consistency-recovery")
