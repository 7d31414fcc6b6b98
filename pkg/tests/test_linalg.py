import numpy as np
import pytest
from hypothesis import given

from conftest import dims, random_hermitian, random_matrix, seeds
from ksnoise.channels import SIGMA_X, SIGMA_Y, SIGMA_Z, Depolarizing, apply
from ksnoise.linalg import (
    DimensionError,
    NotHermitianError,
    add,
    cmat,
    dagger,
    frob_dist,
    hermitian_eigenvalues,
    identity,
    kron,
    matmul,
    scale,
    trace,
)
from ksnoise.scenarios import kcbs_scenario, kcbs_vectors


def test_identity():
    assert np.array_equal(identity(2), np.array([[1, 0], [0, 1]]))
    assert trace(identity(3)) == 3
    assert np.array_equal(identity(4), kron(identity(2), identity(2)))
    with pytest.raises(ValueError):
        identity(0)


def test_matmul_paulis():
    assert frob_dist(matmul(SIGMA_X, SIGMA_X), identity(2)) == 0
    # by hand: [[0,-i],[i,0]] @ [[1,0],[0,-1]] = [[0,i],[i,0]]
    assert np.array_equal(matmul(SIGMA_Y, SIGMA_Z), np.array([[0, 1j], [1j, 0]]))
    assert np.array_equal(matmul(SIGMA_Y, SIGMA_Z), 1j * SIGMA_X)


def test_matmul_shape_mismatch():
    with pytest.raises(DimensionError):
        matmul(identity(2), identity(3))


def test_kron_zz_diagonal():
    assert np.array_equal(np.diag(kron(SIGMA_Z, SIGMA_Z)), [1, -1, -1, 1])


def test_dagger_and_cmat():
    assert np.array_equal(dagger(SIGMA_Y), SIGMA_Y)
    assert np.array_equal(dagger(cmat([[0, 1], [0, 0]])), cmat([[0, 0], [1, 0]]))
    with pytest.raises(ValueError):
        cmat([[np.nan, 0], [0, 1]])
    with pytest.raises(DimensionError):
        cmat([1, 2, 3])


def test_trace_examples():
    assert trace(SIGMA_X) == 0
    v = kcbs_vectors()[0]
    assert trace(np.outer(v, v.conj())) == pytest.approx(1, abs=1e-12)
    A = kcbs_scenario().measurements
    for i in range(5):
        assert trace(A[i].matrix @ A[(i + 1) % 5].matrix) == pytest.approx(-1, abs=1e-10)
    with pytest.raises(DimensionError):
        trace(np.zeros((2, 3)))


def test_add_scale_frob():
    a = SIGMA_X
    assert frob_dist(a, a) == 0
    assert trace(scale(2, identity(2))) == 4
    assert not np.any(add(SIGMA_X, scale(-1, SIGMA_X)))
    with pytest.raises(DimensionError):
        add(identity(2), identity(3))
    with pytest.raises(DimensionError):
        frob_dist(identity(2), identity(3))


def test_eigenvalue_examples():
    assert hermitian_eigenvalues(identity(3)) == pytest.approx([1, 1, 1])
    assert hermitian_eigenvalues(SIGMA_Z) == pytest.approx([-1, 1])
    # Bloch vector shrinks by p, so eigenvalues are (1 +/- p)/2
    psi = np.array([np.cos(0.3), np.exp(0.7j) * np.sin(0.3)])
    out = apply(Depolarizing(0.5, 2), np.outer(psi, psi.conj()))
    assert hermitian_eigenvalues(out) == pytest.approx([0.25, 0.75], abs=1e-12)


def test_eigenvalues_reject_non_hermitian():
    with pytest.raises(NotHermitianError):
        hermitian_eigenvalues(cmat([[0, 1], [0, 0]]))
    with pytest.raises(DimensionError):
        hermitian_eigenvalues(np.zeros((2, 3), dtype=complex))


@given(seeds, dims)
def test_eigenvalues_match_lapack(seed, d):
    h = random_hermitian(d, np.random.default_rng(seed))
    ref = np.linalg.eigvalsh(h)
    got = hermitian_eigenvalues(h)
    assert got == sorted(got)
    assert np.allclose(got, ref, rtol=1e-10, atol=1e-10 * max(1.0, np.abs(ref).max()))


@given(seeds, dims)
def test_projector_eigenvalues_are_zero_or_one(seed, d):
    rng = np.random.default_rng(seed)
    k = int(rng.integers(0, d + 1))
    q, _ = np.linalg.qr(random_matrix(d, rng))
    proj = q[:, :k] @ q[:, :k].conj().T
    for e in hermitian_eigenvalues(proj):
        assert min(abs(e), abs(e - 1)) < 1e-9


@given(seeds, dims, dims)
def test_product_identities(seed, d1, d2):
    rng = np.random.default_rng(seed)
    a, b, c = (random_matrix(d1, rng) for _ in range(3))
    assert frob_dist(matmul(matmul(a, b), c), matmul(a, matmul(b, c))) < 1e-12
    assert abs(trace(matmul(a, b)) - trace(matmul(b, a))) < 1e-12
    e, f = random_matrix(d2, rng), random_matrix(d2, rng)
    lhs = matmul(kron(a, e), kron(b, f))
    rhs = kron(matmul(a, b), matmul(e, f))
    assert frob_dist(lhs, rhs) < 1e-12 * max(1.0, np.linalg.norm(rhs))
    assert abs(trace(kron(a, e)) - trace(a) * trace(e)) < 1e-12
    assert frob_dist(dagger(dagger(a)), a) == 0
    assert frob_dist(matmul(a, identity(d1)), a) < 1e-15
