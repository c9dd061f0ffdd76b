"""The eight acceptance criteria, one test (and one printed verdict line)
each.  These are the CI gate; `arquiver accept` runs the same functions."""

import pytest

from arquiver import acceptance


@pytest.fixture(scope="module")
def harness_artifacts():
    """Criteria 5 and 6 feed their sequences into criterion 7."""
    return {}


def _check(result, budget_seconds):
    print(result.line())
    assert result.passed, result.detail
    assert result.seconds < budget_seconds, (
        f"criterion {result.index} took {result.seconds:.1f}s "
        f"(budget {budget_seconds}s)"
    )


def test_criterion_1_a2_ground_truth():
    _check(acceptance.criterion_1(), 1)


def test_criterion_2_translate_consistency():
    _check(acceptance.criterion_2(), 30)


def test_criterion_3_exactness_lemma():
    _check(acceptance.criterion_3(), 30)


def test_criterion_4_equivalence_100_instances(tmp_path):
    _check(acceptance.criterion_4(out_dir=str(tmp_path)), 120)


def test_criterion_5_a3_theorem_harness(harness_artifacts):
    result = acceptance.criterion_5()
    harness_artifacts["a3"] = result.artifacts.get("sequences", [])
    _check(result, 120)


def test_criterion_6_kronecker_example(harness_artifacts):
    result = acceptance.criterion_6()
    harness_artifacts["kronecker"] = result.artifacts.get("sequences", [])
    _check(result, 120)


def test_criterion_7_duality(harness_artifacts):
    sequences = harness_artifacts.get("a3", []) + harness_artifacts.get(
        "kronecker", []
    )
    _check(acceptance.criterion_7(sequences=sequences or None), 60)


def test_criterion_8_ext_vs_stable_hom():
    _check(acceptance.criterion_8(), 60)
