import math

import numpy as np
import pytest
from hypothesis import given, settings

from conftest import close, herm2
from jtphom.errors import NotAnInvolution, NotUnitary, ParamOutOfRange, SingularInput
from jtphom.herm import (
    E11, IDENTITY, SWAP, ZERO, J, S, Definiteness, Herm2, InvolutionParam, Unitary2, conjugate,
    decompose_bdb, definiteness, determinant, eigensystem, eigenvalues, entrywise_conj, eta,
    inertia, involution_from_param, involution_to_param, inverse, jordan_triple, rank_of,
    sample_hermitian, sample_involution, sample_unitary, trace,
)


def dense(A):
    return A.to_array()


class TestJordanTriple:
    def test_identity_left_factor(self):
        B = Herm2(3.0, -1.0, 2 - 1j)
        assert jordan_triple(IDENTITY, B) == B

    def test_s_conjugates_diag_to_swap(self):
        assert close(jordan_triple(S, J), SWAP)

    def test_diag_times_swap(self):
        assert close(jordan_triple(Herm2.diag(2, 1), SWAP), Herm2(0.0, 0.0, 2 + 0j))

    @given(herm2(), herm2())
    def test_matches_dense_product(self, A, B):
        ref = dense(A) @ dense(B) @ dense(A)
        got = dense(jordan_triple(A, B))
        assert np.abs(ref - got).max() <= 1e-12 * max(1.0, np.abs(ref).max())

    @given(herm2(), herm2())
    def test_det_law(self, A, B):
        lhs = determinant(jordan_triple(A, B))
        rhs = determinant(A) ** 2 * determinant(B)
        scale = max(1.0, (A.fro ** 4) * B.fro ** 2)
        assert abs(lhs - rhs) <= 1e-9 * scale


def test_determinant_and_trace():
    assert determinant(IDENTITY) == 1
    assert determinant(Herm2.diag(2, 3)) == 6
    assert determinant(Herm2(1.0, 1.0, 1 + 0j)) == 0
    assert trace(Herm2.diag(2, 3)) == 5


@pytest.mark.parametrize("A,want", [
    (Herm2.diag(3, 5), (5, 3)),
    (SWAP, (1, -1)),
    (Herm2(1.0, 1.0, 1j), (2, 0)),
])
def test_eigenvalues(A, want):
    got = eigenvalues(A)
    assert got == pytest.approx(want, abs=1e-15)


@given(herm2())
def test_eigensystem_pairs(A):
    es = eigensystem(A)
    M = dense(A)
    for lam, q in ((es.lambda1, es.q1), (es.lambda2, es.q2)):
        v = np.array(q)
        assert np.linalg.norm(M @ v - lam * v) <= 1e-10 * max(1.0, A.fro)
        assert abs(np.linalg.norm(v) - 1) <= 1e-12
    assert abs(np.vdot(es.q1, es.q2)) <= 1e-12


def test_eigenvector_phase_gauge():
    es = eigensystem(Herm2(1.0, 2.0, 1 + 1j))
    assert es.q1[0].imag == 0 and es.q1[0].real >= 0


@pytest.mark.parametrize("A,syl,rank,kind", [
    (IDENTITY, 2, 2, Definiteness.POSITIVE_DEFINITE),
    (J, 1, 2, Definiteness.INDEFINITE_INVERTIBLE),
    (-IDENTITY, 0, 2, Definiteness.NEGATIVE_DEFINITE),
    (ZERO, 0, 0, Definiteness.SINGULAR),
    (E11, 1, 1, Definiteness.SINGULAR),
    (Herm2(1.0, 1.0, 1 + 0j), 1, 1, Definiteness.SINGULAR),
])
def test_inertia_rank_definiteness(A, syl, rank, kind):
    assert inertia(A, 1e-9) == syl
    assert rank_of(A, 1e-9) == rank
    assert definiteness(A, 1e-9) is kind


def test_eta():
    assert eta(IDENTITY) == 1
    assert eta(-IDENTITY) == -1
    assert eta(J) == 1
    with pytest.raises(SingularInput):
        eta(E11)


class TestDecomposition:
    def test_swap_gives_s(self):
        d = decompose_bdb(SWAP)
        assert (d.lambda1, d.lambda2) == (1.0, -1.0)
        assert close(d.B, S, 1e-15)

    def test_ordered_diagonal(self):
        # eigenvalues come out as (5, 3); B must then exchange the axes
        d = decompose_bdb(Herm2.diag(3, 5))
        assert (d.lambda1, d.lambda2) == (5.0, 3.0)
        assert close(d.B, SWAP, 0)
        assert close(d.reconstruct(), Herm2.diag(3, 5), 0)

    def test_already_ordered_diagonal_and_scalar(self):
        assert decompose_bdb(Herm2.diag(5, 3)).B == IDENTITY
        assert decompose_bdb(Herm2.scalar(2.0)).B == IDENTITY

    @given(herm2())
    @settings(max_examples=300)
    def test_reconstruction(self, A):
        d = decompose_bdb(A)
        assert (jordan_triple(d.B, IDENTITY) - IDENTITY).fro <= 1e-10
        assert (d.reconstruct() - A).fro <= 1e-10 * max(1.0, A.fro)


class TestInvolutions:
    def test_examples(self):
        assert involution_from_param(InvolutionParam("branch", 1, 1 + 0j)) == SWAP
        assert involution_from_param(InvolutionParam("branch", 1, 0j)) == J
        A = involution_from_param(InvolutionParam("branch", -1, 0.6j))
        assert close(A, Herm2(-0.8, 0.8, 0.6j), 1e-15)
        assert (jordan_triple(A, IDENTITY) - IDENTITY).fro <= 1e-12

    def test_scalar_variants(self):
        assert involution_from_param(InvolutionParam("scalar", -1)) == -IDENTITY
        assert involution_to_param(IDENTITY) == InvolutionParam("scalar", 1)
        assert involution_to_param(-IDENTITY) == InvolutionParam("scalar", -1)

    def test_reverse_examples(self):
        assert involution_to_param(SWAP).a == 1
        assert involution_to_param(J) == InvolutionParam("branch", 1, 0j)
        p = involution_to_param(Herm2(-0.8, 0.8, 0.6j))
        assert p.sign == -1 and p.a == pytest.approx(0.6j)

    def test_errors(self):
        with pytest.raises(ParamOutOfRange):
            involution_from_param(InvolutionParam("branch", 1, 1.1 + 0j))
        with pytest.raises(NotAnInvolution):
            involution_to_param(Herm2.diag(2, 1))

    def test_random_roundtrip(self):
        for k in range(200):
            X = sample_involution(k)
            assert close(involution_from_param(involution_to_param(X)), X, 1e-9)


def test_conjugate_examples():
    A = Herm2(1.5, -2.0, 0.3 - 0.7j)
    assert close(conjugate(Unitary2.identity(), A), A, 0)
    r = 1 / math.sqrt(2)
    assert close(conjugate(Unitary2(r, r, r, -r), J), SWAP, 1e-15)
    th = 0.7
    D = Unitary2(1, 0, 0, complex(math.cos(th), math.sin(th)))
    got = conjugate(D, A)
    assert got.a == A.a and got.c == A.c
    assert got.b == pytest.approx(A.b * complex(math.cos(th), -math.sin(th)))


@given(herm2())
def test_conjugation_preserves_spectrum_and_inertia(A):
    U = sample_unitary(int(abs(A.a) * 1000))
    B = conjugate(U, A)
    assert eigenvalues(B) == pytest.approx(eigenvalues(A), abs=1e-10 * max(1.0, A.fro))
    l2 = min(abs(v) for v in eigenvalues(A))
    if l2 > 1e-6 * max(1.0, A.fro):
        assert inertia(B) == inertia(A)


def test_conj_and_inverse():
    R = Herm2(1.0, 2.0, 3 + 0j)
    assert entrywise_conj(R) == R
    assert entrywise_conj(Herm2(1.0, 2.0, 1 + 2j)).b == 1 - 2j
    assert inverse(Herm2.diag(2, 1)) == Herm2.diag(0.5, 1)
    assert close(inverse(Herm2(2.0, 1.0, 1j)), Herm2(1.0, 2.0, -1j), 1e-15)
    with pytest.raises(SingularInput):
        inverse(E11)


def test_sampling_is_deterministic():
    assert sample_hermitian(5) == sample_hermitian(5)
    assert sample_hermitian(5) != sample_hermitian(6)
    U = sample_unitary(3)
    assert np.abs(U.to_array() @ U.to_array().conj().T - np.eye(2)).max() <= 1e-12


def test_unitary_check_and_non_finite():
    with pytest.raises(NotUnitary):
        Unitary2(1, 1, 0, 1)
    with pytest.raises(ValueError):
        Herm2(float("nan"), 0.0)


def test_from_array_rejects_non_hermitian():
    with pytest.raises(ValueError):
        Herm2.from_array([[1, 2], [3, 4]])
    assert Herm2.from_array([[1, 1j], [-1j, 2]]) == Herm2(1.0, 2.0, 1j)
