import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qqpovm.ensembles import random_povm, random_projective, random_state
from qqpovm.linalg import DimensionError, eig_hermitian
from qqpovm.measurement import BinaryMeasurement, Convention, InvalidMeasurementError
from qqpovm.models import lifted_reference_pair, standard_embedding
from qqpovm.neumark import (
    CHECKS,
    Dilation,
    common_space_lift,
    dilate_binary,
    fractional_count,
    lifted_qq_check,
    verify_dilation,
)
from qqpovm.qq import qq_operator

from conftest import C

seeds = st.integers(0, 2**32 - 1)


def test_reference_q_dilates_to_three(ref):
    A, B = ref
    # spectra {1/3, 1} and {0, 2/3}: one fractional eigenvalue each
    np.testing.assert_allclose(eig_hermitian(A.yes.matrix)[0], [1 / 3, 1], atol=1e-12)
    np.testing.assert_allclose(eig_hermitian(B.yes.matrix)[0], [0, 2 / 3], atol=1e-12)
    for m in (A, B):
        d = dilate_binary(m)
        assert d.extended_dim == 3
        assert d.ancilla_assignment == ("paired",)
        cert = verify_dilation(d)
        assert cert.passed, cert.residuals


def test_projective_dilation_is_trivial(rng):
    m = random_projective(3, rng, 2)
    d = dilate_binary(m)
    assert d.extended_dim == 3
    np.testing.assert_allclose(d.embedding, np.eye(3))
    np.testing.assert_allclose(d.lifted.yes.matrix, m.yes.matrix, atol=1e-12)


def test_half_half_blocks():
    m = BinaryMeasurement.from_matrices(np.diag([0.5, 0.5]))
    d = dilate_binary(m)
    assert d.extended_dim == 4
    lifted = d.lifted.yes.matrix
    # eigenvectors of a degenerate effect are any basis; compare invariantly
    np.testing.assert_allclose(lifted[:2, :2], np.eye(2) / 2, atol=1e-12)
    np.testing.assert_allclose(lifted[2:, 2:], np.eye(2) / 2, atol=1e-12)
    np.testing.assert_allclose(lifted @ lifted, lifted, atol=1e-12)
    assert np.trace(lifted).real == pytest.approx(2)
    cross = lifted[:2, 2:]
    np.testing.assert_allclose(cross @ cross.conj().T, np.eye(2) / 4, atol=1e-12)
    assert verify_dilation(d).passed


def test_dilate_rejects_invalid():
    yes = np.diag([1.1, 0.5])
    with pytest.raises(InvalidMeasurementError):
        dilate_binary(BinaryMeasurement.from_matrices(yes))


def test_dilate_rejects_small_target(ref):
    with pytest.raises(DimensionError):
        dilate_binary(ref[0], extended_dim=2)


def _fixture_dilation(original, lifted):
    return Dilation(original, standard_embedding(2, 3), lifted, ("paired",))


def test_fixture_matrices_pass(ref):
    A, B = ref
    LA, LB = lifted_reference_pair()
    for orig, lift in ((A, LA), (B, LB)):
        cert = verify_dilation(_fixture_dilation(orig, lift))
        assert cert.passed, cert.residuals
        np.testing.assert_allclose(lift.yes.matrix[:2, :2], orig.yes.matrix, atol=1e-12)


def test_printed_entry_fails_completeness(ref):
    A, _ = ref
    LA, _ = lifted_reference_pair()
    no = np.array(LA.no.matrix)
    no[0, 0] = 1 / np.sqrt(6)
    cert = verify_dilation(_fixture_dilation(A, BinaryMeasurement.from_matrices(LA.yes.matrix, no)))
    assert "completeness" in cert.failures and "idempotence" in cert.failures
    assert cert.residuals["completeness"] == pytest.approx(1 / np.sqrt(6) - 1 / 6)


def test_perturbed_fixture_fails_idempotence(ref):
    A, _ = ref
    LA, _ = lifted_reference_pair()
    yes = np.array(LA.yes.matrix)
    yes[1, 1] += 1e-3
    cert = verify_dilation(_fixture_dilation(A, BinaryMeasurement.from_matrices(yes)))
    assert "idempotence" in cert.failures


def test_fixture_pair_qq_zero(ref):
    LA, LB = lifted_reference_pair()
    assert np.abs(qq_operator(LA, LB, Convention.LITERAL)).max() < 1e-12


def test_verify_reports_shape_mismatch(ref):
    A, _ = ref
    cert = verify_dilation(Dilation(A, np.eye(4, 2), A))
    assert not cert.passed and set(cert.failures) == set(CHECKS)


def test_common_space_lift_reference(ref):
    A, B = ref
    lift = common_space_lift(A, B)
    assert lift.dim == 3
    la, lb, v = lift
    for orig, lifted in ((A, la), (B, lb)):
        for e in (lifted.yes.matrix, lifted.no.matrix):
            np.testing.assert_allclose(e @ e, e, atol=1e-12)
        np.testing.assert_allclose(v.conj().T @ lifted.yes.matrix @ v, orig.yes.matrix, atol=1e-12)
        np.testing.assert_allclose(v.conj().T @ lifted.no.matrix @ v, orig.no.matrix, atol=1e-12)


def test_common_lift_projective_pairs(rng):
    A, B = random_projective(3, rng), random_projective(3, rng)
    la, lb, v = common_space_lift(A, B)
    np.testing.assert_allclose(v, np.eye(3))
    np.testing.assert_allclose(la.yes.matrix, A.yes.matrix, atol=1e-12)
    np.testing.assert_allclose(lb.yes.matrix, B.yes.matrix, atol=1e-12)


def test_common_lift_pads_projective_no_outcome(ref, rng):
    A = random_projective(2, rng, 1)
    _, B = ref
    lift = common_space_lift(A, B)
    assert lift.dim == 3
    assert lift.dilation_a.ancilla_assignment == ("no",)
    ancilla = np.zeros(3)
    ancilla[2] = 1
    assert ancilla @ lift.lifted_a.no.matrix @ ancilla == pytest.approx(1)
    assert verify_dilation(lift.dilation_a).passed and verify_dilation(lift.dilation_b).passed


def test_common_lift_dimension_mismatch(ref, rng):
    with pytest.raises(DimensionError):
        common_space_lift(ref[0], random_povm(3, rng))


def test_lifted_qq_check_reference(ref, uniform):
    before, after = lifted_qq_check(*ref, uniform)
    assert before == pytest.approx(C, abs=1e-12)
    assert abs(after) <= 1e-10


def test_lifted_qq_check_projective(rng):
    A, B = random_projective(3, rng), random_projective(3, rng)
    r = lifted_qq_check(A, B, random_state(3, rng))
    assert abs(r.before) < 1e-12 and abs(r.after) < 1e-12


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_lifted_qq_zero_random_qubit(seed):
    rng = np.random.default_rng(seed)
    r = lifted_qq_check(random_povm(2, rng), random_povm(2, rng), random_state(2, rng))
    assert abs(r.after) <= 1e-10


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(2, 4))
def test_dilation_certificates_and_minimality(seed, d):
    rng = np.random.default_rng(seed)
    m = random_povm(d, rng)
    dil = dilate_binary(m)
    cert = verify_dilation(dil, 1e-10, seed=seed)
    assert cert.passed, cert.residuals
    w, _ = eig_hermitian(m.yes.matrix)
    assert dil.extended_dim - d == np.count_nonzero((w > 1e-10) & (w < 1 - 1e-10)) == fractional_count(m)


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(2, 4))
def test_common_lift_kills_qq_operator(seed, d):
    rng = np.random.default_rng(seed)
    A = random_povm(d, rng) if rng.random() < 0.7 else random_projective(d, rng)
    B = random_povm(d, rng)
    la, lb, _ = common_space_lift(A, B)
    assert np.abs(qq_operator(la, lb, Convention.LITERAL)).max() <= 1e-10
