import numpy as np
import pytest

from holoqec import distance
from holoqec.pauli import PauliString
from holoqec.toric import ConfigError, DefectConfig, TorusLattice, build_code
from holoqec.toric.build import face_mask, vertex_mask


def stabilizer_eigenvalue(lat, frame, mask, pauli_kind):
    n = lat.n_edges
    p = PauliString(n, mask, 0, 0) if pauli_kind == "x" else PauliString(n, 0, mask, 0)
    block = frame.data.conj().T @ p.apply(frame.data)
    val = np.trace(block) / frame.K
    assert np.max(np.abs(block - val * np.eye(frame.K))) < 1e-12
    return val


def test_no_defect_builds(toric2, toric3):
    assert toric2.code.K == 4 and toric2.code.N == 2**8
    assert toric3.code.K == 4 and toric3.code.N == 2**18


def test_all_stabilizers_plus_one(toric2):
    lat = toric2.lat
    for v in lat.vertices():
        assert np.isclose(
            stabilizer_eigenvalue(lat, toric2.frame, vertex_mask(lat, v), "x"), 1.0
        )
    for f in lat.faces():
        assert np.isclose(
            stabilizer_eigenvalue(lat, toric2.frame, face_mask(lat, f), "z"), 1.0
        )


def test_defect_signs(lat3):
    cfg = DefectConfig(((0, 0), (1, 1)), ((1, 2), (2, 1)))
    tc = build_code(lat3, cfg, separation=1)
    assert tc.code.K == 4
    for v in lat3.vertices():
        want = -1.0 if v in cfg.primal else 1.0
        assert np.isclose(
            stabilizer_eigenvalue(lat3, tc.frame, vertex_mask(lat3, v), "x"), want
        )
    for f in lat3.faces():
        want = -1.0 if f in cfg.dual else 1.0
        assert np.isclose(
            stabilizer_eigenvalue(lat3, tc.frame, face_mask(lat3, f), "z"), want
        )


def test_two_defect_distance2_pair(lat3):
    """Defected builds keep K = 4 (max pair distance on L=3 is 2)."""
    tc = build_code(lat3, DefectConfig(((0, 0), (1, 1)), ()), separation=2)
    assert tc.code.K == 4


def test_parity_error_via_config():
    with pytest.raises(ValueError):
        DefectConfig(((0, 0),), ())


def test_hardcore_config_error(lat3):
    cfg = DefectConfig(((0, 0), (1, 0)), ())  # distance 1
    with pytest.raises(ConfigError):
        build_code(lat3, cfg, separation=3)


def test_l2_defected_build(lat2):
    tc = build_code(lat2, DefectConfig(((0, 0), (1, 1)), ()), separation=2)
    assert tc.code.K == 4


def test_distances(toric2, toric3):
    assert distance(toric2.code, 2).delta == 2
    assert distance(toric3.code, 3).delta == 3


def test_distance_witness_is_logical_row(toric2):
    res = distance(toric2.code, 2)
    assert res.witness is not None
    assert res.witness.weight == 2


def test_dense_cap():
    lat = TorusLattice(4)
    with pytest.raises(ValueError):
        build_code(lat, DefectConfig((), ()), separation=0)
