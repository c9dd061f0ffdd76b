import pytest

from arquiver.approx import Subcat
from arquiver.arseq import (
    ar_end_in_subcat,
    ar_sequence_global,
    ar_start_in_subcat,
    check_duality_of_ar,
    dualize_ses,
    is_projective_module,
    is_split_epi,
    is_split_mono,
    left_almost_split,
    right_almost_split,
    theorem_harness,
    verify_ar_sequence,
)
from arquiver.homological import SES, dtr, proj
from arquiver.rep import (
    Rep,
    direct_sum,
    hom_basis,
    identity_map,
    iso,
    simple,
)


@pytest.fixture(scope="module")
def whole_a2(alg_a2):
    return Subcat(
        alg_a2, "finite", [simple(alg_a2, 1), simple(alg_a2, 2), proj(alg_a2, 1)]
    )


@pytest.fixture(scope="module")
def classical_a2(alg_a2):
    return ar_sequence_global(simple(alg_a2, 1))


def test_split_epi_mono_basics(alg_a2):
    s1 = simple(alg_a2, 1)
    assert is_split_epi(identity_map(s1))
    assert is_split_mono(identity_map(s1))
    p1 = proj(alg_a2, 1)
    cover = hom_basis(p1, s1).basis[0]
    assert not is_split_epi(cover)
    total, injs, projs = direct_sum([s1, p1])
    assert is_split_mono(injs[0])
    assert is_split_epi(projs[1])


def test_is_projective_module(alg_a2):
    assert is_projective_module(proj(alg_a2, 1))
    assert is_projective_module(proj(alg_a2, 2))
    assert not is_projective_module(simple(alg_a2, 1))


def test_right_almost_split_classical(alg_a2, whole_a2):
    p1, s1 = proj(alg_a2, 1), simple(alg_a2, 1)
    cover = hom_basis(p1, s1).basis[0]
    report = right_almost_split(cover, whole_a2.members())
    assert report.passed


def test_right_almost_split_rejects_split_projection(alg_a2, whole_a2):
    s1, s2 = simple(alg_a2, 1), simple(alg_a2, 2)
    total, _, projs = direct_sum([s2, s1])
    report = right_almost_split(projs[1], whole_a2.members())
    assert not report.passed
    assert not report.not_split


def test_right_almost_split_vacuous(alg_a2):
    s1, s2 = simple(alg_a2, 1), simple(alg_a2, 2)
    # no nonzero non-split-epi test maps S2 -> S1 exist
    from arquiver.rep import zero_map, zero_rep

    f = zero_map(zero_rep(alg_a2), s1)
    report = right_almost_split(f, [s2])
    assert report.passed and report.vacuous


def test_left_almost_split_classical(alg_a2, whole_a2, classical_a2):
    report = left_almost_split(classical_a2.f, whole_a2.members())
    assert report.passed


def test_left_almost_split_rejects_split_inclusion(alg_a2, whole_a2):
    s1, s2 = simple(alg_a2, 1), simple(alg_a2, 2)
    total, injs, _ = direct_sum([s2, s1])
    report = left_almost_split(injs[0], whole_a2.members())
    assert not report.passed


def test_ar_sequence_global_a2(alg_a2, classical_a2):
    ses = classical_a2
    assert iso(ses.left, simple(alg_a2, 2)) is not None
    assert iso(ses.middle, proj(alg_a2, 1)) is not None
    assert ses.right.dims == (1, 0)


def test_ar_sequence_global_rejects_projective(alg_a2):
    with pytest.raises(ValueError):
        ar_sequence_global(proj(alg_a2, 1))


def test_ar_sequence_global_kronecker_p2(alg_kronecker):
    p2 = Rep(
        alg_kronecker,
        (2, 3),
        {"a": [[1, 0], [0, 1], [0, 0]], "b": [[0, 0], [1, 0], [0, 1]]},
    )
    ses = ar_sequence_global(p2)
    assert iso(ses.left, proj(alg_kronecker, 2)) is not None
    assert ses.middle.dims == (2, 4)
    mid = ses.middle
    from arquiver.rep import decompose

    parts = decompose(mid)
    assert len(parts) == 1 and parts[0].multiplicity == 2
    assert iso(parts[0].rep, proj(alg_kronecker, 1)) is not None


def test_verify_ar_sequence_split_fails(alg_a2, whole_a2):
    s1, s2 = simple(alg_a2, 1), simple(alg_a2, 2)
    total, injs, projs = direct_sum([s2, s1])
    split = SES(injs[0], projs[1])
    report = verify_ar_sequence(split, whole_a2)
    assert not report.passed


def test_verify_ar_sequence_classical(alg_a2, whole_a2, classical_a2):
    report = verify_ar_sequence(classical_a2, whole_a2)
    assert report.passed
    assert report.membership == (True, True, True)


def test_ar_end_in_subcat_whole(alg_a2, whole_a2):
    out = ar_end_in_subcat(simple(alg_a2, 1), whole_a2)
    assert out.status == "found"
    assert iso(out.ses.left, simple(alg_a2, 2)) is not None


def test_ar_end_hypothesis_not_satisfied(alg_a2):
    sub = Subcat(alg_a2, "finite", [proj(alg_a2, 1), simple(alg_a2, 1)])
    out = ar_end_in_subcat(simple(alg_a2, 1), sub)
    assert out.status == "hypothesis-not-satisfied"


def test_ar_end_projective_is_ineligible(alg_a2, whole_a2):
    out = ar_end_in_subcat(proj(alg_a2, 1), whole_a2)
    assert out.status == "hypothesis-not-satisfied"


def test_ar_end_kronecker_postprojective(alg_kronecker):
    pp = Subcat(alg_kronecker, "postprojective", [], cap=13)
    p2 = Rep(
        alg_kronecker,
        (2, 3),
        {"a": [[1, 0], [0, 1], [0, 0]], "b": [[0, 0], [1, 0], [0, 1]]},
    )
    out = ar_end_in_subcat(p2, pp)
    assert out.status == "found"
    assert iso(out.ses.left, proj(alg_kronecker, 2)) is not None
    assert out.ses.middle.dims == (2, 4)


def test_ar_start_in_subcat_whole(alg_a2, whole_a2):
    out = ar_start_in_subcat(simple(alg_a2, 2), whole_a2)
    assert out.status == "found"
    assert out.ses.left is simple(alg_a2, 2) or out.ses.left.dims == (0, 1)
    assert iso(out.ses.middle, proj(alg_a2, 1)) is not None
    assert iso(out.ses.right, simple(alg_a2, 1)) is not None


def test_ar_start_kronecker_preinjective(alg_kronecker):
    pi = Subcat(alg_kronecker, "preinjective", [], cap=13)
    q2 = Rep(
        alg_kronecker,
        (3, 2),
        {"a": [[1, 0, 0], [0, 1, 0]], "b": [[0, 1, 0], [0, 0, 1]]},
    )
    out = ar_start_in_subcat(q2, pi)
    assert out.status == "found"
    assert out.ses.middle.dims == (4, 2)


def test_ar_start_ineligible(alg_a2):
    sub = Subcat(alg_a2, "finite", [simple(alg_a2, 2)])
    out = ar_start_in_subcat(simple(alg_a2, 2), sub)
    assert out.status == "hypothesis-not-satisfied"


def test_duality_of_ar(alg_a2, whole_a2, classical_a2):
    report = check_duality_of_ar(classical_a2, whole_a2)
    assert report.direct_passed and report.dual_passed and report.passed


def test_duality_of_split_sequence(alg_a2, whole_a2):
    s1, s2 = simple(alg_a2, 1), simple(alg_a2, 2)
    total, injs, projs = direct_sum([s2, s1])
    split = SES(injs[0], projs[1])
    report = check_duality_of_ar(split, whole_a2)
    assert not report.direct_passed and not report.dual_passed and report.passed


def test_theorem_harness_a2(alg_a2, whole_a2):
    report = theorem_harness(whole_a2)
    assert report.passed
    by_dims = {r.dims: r for r in report.rows}
    assert by_dims[(1, 0)].i_verdict == "pass"
    assert by_dims[(1, 0)].ii_verdict == "pass"
    assert by_dims[(0, 1)].i_verdict == "n/a"  # projective
    block = report.machine_block()
    assert "agree=true" in block and "agree=false" not in block


def test_theorem_harness_kronecker(alg_kronecker):
    pp = Subcat(alg_kronecker, "postprojective", [], cap=13)
    report = theorem_harness(pp)
    assert report.passed
    eligible = [r for r in report.rows if r.eligible]
    assert eligible
    assert all(r.i_verdict == "pass" and r.ii_verdict == "pass" for r in eligible)


def test_uniqueness_of_left_term(alg_a2, whole_a2, classical_a2):
    out = ar_end_in_subcat(simple(alg_a2, 1), whole_a2)
    assert iso(out.ses.left, classical_a2.left) is not None
