"""Violation detection (exact and float) and the condition checkers."""

from fractions import Fraction

import numpy as np
import pytest

from bwmllsm import (
    InvalidPError,
    LengthMismatchError,
    PriorityVector,
    TooSmallNError,
    check_corollary2,
    check_theorem1,
    check_theorem2,
    derive_p,
    detect_bwm_violations_exact,
    detect_violations,
    diagnose,
    make_pcm,
    solve_llsm,
    theorem2_bound,
    to_incomplete_pcm,
    validate_bwm,
)
from conftest import (
    random_instance,
    random_theorem1_instance,
    random_theorem2_instance,
)


def brute_force_violations(pcm, y):
    """Independent O(n^2) recount of the definition."""
    out = []
    for i in range(1, pcm.n + 1):
        for j in range(1, pcm.n + 1):
            if i != j and pcm.known(i, j) and pcm.get(i, j) > 1 and y[i - 1] <= y[j - 1]:
                out.append((i, j))
    return sorted(out)


def tie_instance():
    """a_26 = 8 with every other judgment 2: y_2 equals y_1 exactly."""
    return validate_bwm(6, 1, 6, {2: 2, 3: 2, 4: 2, 5: 2},
                        {2: 8, 3: 2, 4: 2, 5: 2}, 2)


class TestDetectViolations:
    def test_example1(self, example1):
        pcm = to_incomplete_pcm(example1)
        pv = solve_llsm(pcm)
        report = detect_violations(pcm, pv)
        assert [(v.i, v.j, v.value) for v in report.violations] == [(1, 2, Fraction(2))]
        assert report.has_violation and not report.exact
        assert pv.w_sum[0] <= pv.w_sum[1]

    def test_consistent_matrix_clean(self):
        v = (1, 2, 4, 8)
        entries = {(i + 1, j + 1): Fraction(v[i], v[j]) for i in range(4) for j in range(4)}
        pcm = make_pcm(4, entries)
        report = detect_violations(pcm, solve_llsm(pcm))
        assert report.violations == ()

    def test_recount_oracle_after_swap(self):
        rng = np.random.default_rng(21)
        for _ in range(60):
            n = int(rng.integers(3, 9))
            pcm = to_incomplete_pcm(random_instance(rng, n))
            y = solve_llsm(pcm).y.copy()
            i, j = rng.choice(n, size=2, replace=False)
            y[i], y[j] = y[j], y[i]
            pv = PriorityVector(y=y)  # deliberately unnormalised: detection only uses order
            report = detect_violations(pcm, pv)
            assert sorted((v.i, v.j) for v in report.violations) == brute_force_violations(pcm, y)

    def test_length_mismatch(self, example1):
        with pytest.raises(LengthMismatchError):
            detect_violations(to_incomplete_pcm(example1), PriorityVector.from_logs(np.zeros(4)))

    def test_transpose_reciprocal_symmetry(self):
        rng = np.random.default_rng(22)
        for _ in range(40):
            n = int(rng.integers(3, 9))
            pcm = to_incomplete_pcm(random_instance(rng, n))
            pv = solve_llsm(pcm)
            mirrored = make_pcm(pcm.n, {(j, i): v for (i, j), v in pcm.entries.items()})
            flagged = {(v.i, v.j) for v in detect_violations(pcm, pv).violations}
            flagged_mirror = {
                (v.i, v.j) for v in detect_violations(mirrored, pv.reciprocal()).violations
            }
            assert flagged_mirror == {(j, i) for (i, j) in flagged}


class TestDetectExact:
    def test_example1(self, example1):
        report = detect_bwm_violations_exact(example1)
        assert report.exact
        assert [(v.i, v.j) for v in report.strict] == [(1, 2)]
        assert report.offending_alternatives() == (2,)
        assert report.bwm_summary[2].ge_best and not report.bwm_summary[2].tie_best
        assert not report.bwm_summary[3].ge_best

    def test_symmetric_instance_clean(self):
        inst = validate_bwm(5, 1, 5, {2: 4, 3: 4, 4: 4}, {2: 4, 3: 4, 4: 4}, 4)
        report = detect_bwm_violations_exact(inst)
        assert report.violations == ()

    def test_exact_tie_surfaces(self):
        report = detect_bwm_violations_exact(tie_instance())
        assert not report.has_violation
        assert report.has_tie
        assert [(v.i, v.j, v.tie) for v in report.ties] == [(1, 2, True)]
        assert report.bwm_summary[2].tie_best

    def test_fraction_entries_match_integer_path(self):
        # same matrix expressed with denominator-2 rationals scaled back up
        inst_int = validate_bwm(4, 1, 4, {2: 4, 3: 2}, {2: 6, 3: 3}, 4)
        inst_frac = validate_bwm(4, 1, 4, {2: "8/2", 3: 2}, {2: 6, 3: "6/2"}, 4)
        rep_int = detect_bwm_violations_exact(inst_int)
        rep_frac = detect_bwm_violations_exact(inst_frac)
        assert [(v.i, v.j, v.tie) for v in rep_int.violations] == [
            (v.i, v.j, v.tie) for v in rep_frac.violations
        ]

    def test_agrees_with_float_path(self):
        rng = np.random.default_rng(23)
        ambiguous_band = 1e-9
        for _ in range(300):
            n = int(rng.integers(3, 10))
            inst = random_instance(rng, n)
            exact = detect_bwm_violations_exact(inst)
            pcm = to_incomplete_pcm(inst)
            pv = solve_llsm(pcm)
            floaty = detect_violations(pcm, pv)
            y = pv.y
            certain = {
                (v.i, v.j)
                for v in floaty.violations
                if abs(y[v.i - 1] - y[v.j - 1]) > ambiguous_band
            }
            exact_strict = {(v.i, v.j) for v in exact.strict}
            # outside the float ambiguity band the two paths agree exactly
            assert certain == {
                (i, j) for (i, j) in exact_strict
                if abs(y[i - 1] - y[j - 1]) > ambiguous_band
            }


class TestDeriveP:
    def test_example1(self, example1):
        assert derive_p(example1) == 2

    def test_all_nines(self):
        inst = validate_bwm(4, 1, 4, {2: 9, 3: 9}, {2: 9, 3: 9}, 9)
        assert derive_p(inst) == 9

    def test_minimum_across_all_judgments(self):
        inst = validate_bwm(4, 1, 4, {2: 3, 3: 4}, {2: 2, 3: 5}, 5)
        assert derive_p(inst) == 2


class TestTheorem1:
    def test_example1_fails(self, example1):
        diag = check_theorem1(example1, Fraction(2))
        assert not diag.theorem1.passed
        assert diag.theorem1.bound == 8
        assert diag.max_entry == 9

    def test_lowered_entry_passes_and_is_clean(self, example1):
        inst = validate_bwm(6, 1, 6, {2: 2, 3: 2, 4: 2, 5: 2},
                            {2: 8, 3: 2, 4: 2, 5: 2}, 2)
        diag = check_theorem1(inst, Fraction(2))
        assert diag.theorem1.passed
        assert not detect_bwm_violations_exact(inst).has_violation
        pcm = to_incomplete_pcm(inst)
        assert not detect_violations(pcm, solve_llsm(pcm)).has_violation

    def test_all_entries_equal_p(self):
        inst = validate_bwm(4, 1, 4, {2: 3, 3: 3}, {2: 3, 3: 3}, 3)
        assert check_theorem1(inst, Fraction(3)).theorem1.passed

    def test_invalid_p(self, example1):
        with pytest.raises(InvalidPError):
            check_theorem1(example1, Fraction(1))

    def test_lower_bound_direction_monotone(self):
        rng = np.random.default_rng(24)
        for _ in range(100):
            n = int(rng.integers(3, 9))
            inst = random_theorem1_instance(rng, n, p=3)
            assert all(v >= 3 for v in inst.dominant_entries())
            # dominance with p implies dominance with any smaller p' > 1
            for p_smaller in (Fraction(2), Fraction(3, 2)):
                diag = check_theorem1(inst, p_smaller)
                assert diag.max_entry >= p_smaller  # lower bounds never fail
                if not diag.theorem1.passed:
                    assert diag.max_entry > p_smaller ** 3


class TestTheorem2:
    def test_example1_fails_bw_not_maximal(self, example1):
        diag = check_theorem2(example1, Fraction(2))
        assert not diag.theorem2.passed
        assert not diag.bw_maximal

    def test_maximal_bw_passes(self):
        inst = validate_bwm(6, 1, 6, {2: 9, 3: 2, 4: 2, 5: 2},
                            {2: 2, 3: 2, 4: 2, 5: 2}, 9)
        diag = check_theorem2(inst, Fraction(2))
        assert diag.theorem2.passed
        assert diag.theorem2.bound == pytest.approx(2 ** (13 / 3), rel=1e-12)
        assert diag.theorem2.bound == pytest.approx(20.158, abs=1e-2)

    def test_bound_approaches_cube(self):
        assert theorem2_bound(Fraction(2), 1003) == pytest.approx(8.0, rel=0.01)

    def test_too_small_n(self):
        inst = validate_bwm(3, 1, 3, {2: 2}, {2: 2}, 2)
        with pytest.raises(TooSmallNError):
            check_theorem2(inst, Fraction(2))

    def test_invalid_p(self, example1):
        with pytest.raises(InvalidPError):
            check_theorem2(example1, Fraction(1, 2))


class TestCorollary2:
    @staticmethod
    def qualifying_instance(n):
        middles = list(range(2, n))
        return validate_bwm(
            n, 1, n,
            best_to_others={j: 2 for j in middles},
            others_to_worst={j: 2 for j in middles},
            best_to_worst=9,
        )

    def test_boundary_26_vs_27(self):
        assert check_corollary2(self.qualifying_instance(26)).corollary2.passed
        assert not check_corollary2(self.qualifying_instance(27)).corollary2.passed

    def test_example1_fails(self, example1):
        diag = check_corollary2(example1)
        assert not diag.corollary2.passed
        assert not diag.bw_maximal

    def test_off_scale_entry_fails(self):
        inst = validate_bwm(5, 1, 5, {2: 2, 3: "5/2", 4: 2}, {2: 2, 3: 2, 4: 2}, 9)
        assert not check_corollary2(inst).corollary2.passed

    def test_boundary_instances_are_clean(self):
        # n = 26 qualifying instances carry the guarantee: verify directly
        inst = self.qualifying_instance(26)
        assert not detect_bwm_violations_exact(inst).has_violation


class TestGuaranteeSmoke:
    """Small-scale versions of the acceptance guarantee suites."""

    def test_theorem1_no_violations(self):
        rng = np.random.default_rng(25)
        for _ in range(2000):
            n = int(rng.integers(3, 13))
            inst = random_theorem1_instance(rng, n)
            assert check_theorem1(inst, Fraction(2)).theorem1.passed
            assert not detect_bwm_violations_exact(inst).has_violation

    def test_theorem2_no_violations(self):
        rng = np.random.default_rng(26)
        for _ in range(2000):
            n = int(rng.integers(4, 13))
            inst = random_theorem2_instance(rng, n)
            assert check_theorem2(inst, Fraction(2)).theorem2.passed
            assert not detect_bwm_violations_exact(inst).has_violation


class TestDiagnose:
    def test_combined_example1(self, example1):
        diag = diagnose(example1)
        assert diag.p == 2 and diag.p_mode == "derived-min"
        assert not diag.theorem1.passed
        assert not diag.theorem2.passed
        assert not diag.corollary2.passed
        assert not diag.any_guarantee

    def test_n3_theorem2_not_applicable(self):
        inst = validate_bwm(3, 1, 3, {2: 2}, {2: 2}, 2)
        diag = diagnose(inst)
        assert not diag.theorem2.passed
        assert diag.theorem2.bound is None
        assert diag.theorem1.passed  # max 2 <= 8

    def test_explicit_p(self, example1):
        diag = diagnose(example1, p=Fraction(2))
        assert diag.p_mode == "given"
