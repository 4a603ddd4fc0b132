import numpy as np
import pytest

from holoqec.frames import (
    EmptySpanError,
    Frame,
    orthonormalize,
    principal_angles,
    principal_overlap,
    subspace_distance,
    subspace_equal,
)
from holoqec.pauli import random_unitary


def test_frame_validation():
    good = np.eye(4, dtype=complex)[:, :2]
    Frame(good)
    with pytest.raises(ValueError):
        Frame(np.ones((4, 2), dtype=complex))
    with pytest.raises(ValueError):
        Frame(np.zeros((4, 0), dtype=complex))


def test_orthonormalize_drops_duplicates():
    ket0 = np.array([1, 0], dtype=complex)
    f = orthonormalize([ket0, ket0])
    assert f.K == 1
    f = orthonormalize([ket0, np.array([0, 1], dtype=complex)])
    assert f.K == 2
    assert np.allclose(f.data, np.eye(2))


def test_orthonormalize_empty_span():
    with pytest.raises(EmptySpanError):
        orthonormalize([np.zeros(4, dtype=complex)])


def test_orthonormalize_span_preserved(rng):
    vecs = [rng.normal(size=8) + 1j * rng.normal(size=8) for _ in range(5)]
    f = orthonormalize(vecs)
    assert np.max(np.abs(f.data.conj().T @ f.data - np.eye(f.K))) < 1e-12
    # span check through projector comparison with a least-squares basis
    a = np.column_stack(vecs)
    q, _ = np.linalg.qr(a)
    p_ref = q @ q.conj().T
    assert np.max(np.abs(f.projector() - p_ref)) < 1e-10


def test_orthonormalize_idempotent_up_to_span(rng):
    vecs = [rng.normal(size=8) + 1j * rng.normal(size=8) for _ in range(3)]
    f1 = orthonormalize(vecs)
    f2 = orthonormalize(list(f1.data.T))
    assert subspace_equal(f1, f2, 1e-12)


def test_principal_overlap_cases(rng):
    f = orthonormalize([rng.normal(size=6) + 1j * rng.normal(size=6) for _ in range(2)])
    assert np.allclose(principal_overlap(f, f), np.eye(2))
    # orthogonal complement block
    comp = orthonormalize(
        [v - f.data @ (f.data.conj().T @ v) for v in
         (rng.normal(size=(6,)) + 1j * rng.normal(size=6) for _ in range(2))]
    )
    assert np.max(np.abs(principal_overlap(f, comp))) < 1e-10
    # rotated frame: overlap is exactly the rotation
    u = random_unitary(2, rng)
    g = f.matmul_logical(u)
    m = principal_overlap(f, g)
    assert np.allclose(m, u)
    assert np.max(np.abs(m.conj().T @ m - np.eye(2))) < 1e-12


def test_subspace_equal_tolerance_behavior(rng):
    f = orthonormalize([rng.normal(size=8) + 1j * rng.normal(size=8) for _ in range(2)])
    u = random_unitary(2, rng)
    assert subspace_equal(f, f.matmul_logical(u))
    comp = np.eye(8, dtype=complex)[:, 6:]
    other = orthonormalize([comp[:, 0], comp[:, 1]])
    if subspace_distance(f, other) > 0.5:  # generic case
        assert not subspace_equal(f, other)
    # tiny rotation out of span: visible at 1e-14, invisible at 1e-8
    eps = 1e-12
    out = f.data.copy()
    leak = np.zeros(8, dtype=complex)
    leak[7] = 1.0
    leak = leak - f.data @ (f.data.conj().T @ leak)
    leak /= np.linalg.norm(leak)
    rotated = out.copy()
    rotated[:, 0] = np.sqrt(1 - eps**2) * out[:, 0] + eps * leak
    g = Frame(rotated)
    assert subspace_equal(f, g, 1e-8)
    assert not subspace_equal(f, g, 1e-26)


def test_principal_angles_orthogonal():
    e = np.eye(4, dtype=complex)
    f1 = Frame(e[:, :1])
    f2 = Frame(e[:, 1:2])
    assert np.isclose(principal_angles(f1, f2)[0], np.pi / 2)
    assert np.isclose(subspace_distance(f1, f2), 1.0)
