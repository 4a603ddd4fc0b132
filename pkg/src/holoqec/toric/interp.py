"""Continuous defect positions: edge-interpolation codes, in-face codes from
the explicit coefficient solution, and the determinant-winding check.

A face with lower-left corner (fx, fy) has its corners labelled

    A = (fx, fy+1)   B = (fx+1, fy+1)
    C = (fx, fy)     D = (fx+1, fy)

with in-face coordinates (x, y) measured from C.  Under the uniform edge
orientation the face edges run C->D, A->B (+x) and C->A, D->B (+y).  Dual
faces (centered on a primal vertex) get the same treatment in dual
coordinates, with X-type connecting Paulis.
"""

from __future__ import annotations

import numpy as np

from ..frames import Frame
from ..pauli import PauliString, alpha, beta, interp_matrix, pauli_mul
from .build import ToricCode
from .lattice import DefectConfig, Edge, TorusLattice, hardcore_check
from .strings import Step, step_pauli

__all__ = [
    "lower_coeffs",
    "upper_coeffs",
    "edge_code",
    "face_code",
    "corner_frames",
    "combine_corner_frames",
    "det_winding_check",
    "FaceEntryError",
    "face_corner_coords",
]

_EPS = 1e-12


class FaceEntryError(ValueError):
    """A corner configuration is invalid, so the face interior is off limits."""


def _unit_phase(z: complex) -> complex:
    return z / abs(z)


def lower_coeffs(x: float, y: float) -> tuple[complex, complex, complex]:
    """(a, c, d) for the triangle x + y <= 1: psi = a psi_A + c psi_C + d psi_D."""
    a = alpha(x) * beta(y)
    c = alpha(x + y)
    rad = np.sqrt(max(0.0, 1.0 - abs(a) ** 2 - abs(c) ** 2))
    ph = beta(x) * alpha(y)
    d = 0.0 if abs(ph) < _EPS else _unit_phase(ph) * rad  # d(0, y) = 0
    return a, c, d


def upper_coeffs(x: float, y: float) -> tuple[complex, complex, complex]:
    """(a', b', d') for the triangle x + y >= 1: psi = a' psi_A + b' psi_B + d' psi_D."""
    a = alpha(x) * beta(y)
    b = beta(x + y - 1.0)
    rad = np.sqrt(max(0.0, 1.0 - abs(a) ** 2 - abs(b) ** 2))
    ph = beta(x) * alpha(y)
    d = 0.0 if abs(ph) < _EPS else _unit_phase(ph) * rad  # d'(x, 1) = 0
    return a, b, d


def face_corner_coords() -> dict[str, tuple[float, float]]:
    return {"C": (0.0, 0.0), "D": (1.0, 0.0), "A": (0.0, 1.0), "B": (1.0, 1.0)}


def _face_corners(lat: TorusLattice, kind: str, face) -> dict[str, tuple[int, int]]:
    """Corner label -> defect-lattice vertex for a primal face or dual face.

    For kind='dual', ``face`` is a primal vertex and the corners are the four
    primal faces around it, i.e. dual vertices, in dual coordinates.
    """
    if kind == "primal":
        fx, fy = lat.wrap(face[0]), lat.wrap(face[1])
        return {
            "C": (fx, fy),
            "D": (lat.wrap(fx + 1), fy),
            "A": (fx, lat.wrap(fy + 1)),
            "B": (lat.wrap(fx + 1), lat.wrap(fy + 1)),
        }
    wx, wy = lat.wrap(face[0]), lat.wrap(face[1])
    return {
        "C": (lat.wrap(wx - 1), lat.wrap(wy - 1)),
        "D": (wx, lat.wrap(wy - 1)),
        "A": (lat.wrap(wx - 1), wy),
        "B": (wx, wy),
    }


def _connecting_pauli(lat: TorusLattice, kind: str, a, b) -> PauliString:
    if kind == "primal":
        return step_pauli(lat, Step("primal", lat.connecting_edge(a, b)))
    return step_pauli(lat, Step("dual", lat.dual_connecting_edge(a, b)))


def _corner_cfg(cfg: DefectConfig, kind: str, idx: int, vertex) -> DefectConfig:
    return cfg.move_primal(idx, vertex) if kind == "primal" else cfg.move_dual(idx, vertex)


def _moving_defect(lat: TorusLattice, tc: ToricCode, kind: str, corners) -> tuple[int, str]:
    """Index and corner label of the unique defect sitting on a corner."""
    positions = tc.cfg.primal if kind == "primal" else tc.cfg.dual
    hits = [
        (i, lbl)
        for i, p in enumerate(positions)
        for lbl, cv in corners.items()
        if p == cv
    ]
    if len(hits) != 1:
        raise FaceEntryError(
            f"need exactly one {kind} defect on a corner, found {len(hits)}"
        )
    return hits[0]


def corner_frames(
    tc: ToricCode, kind: str, face
) -> tuple[dict[str, np.ndarray], int]:
    """Exactly corresponding frames at the four corners, based at A.

    psi_B = P_AB psi_A, psi_C = P_CA psi_A, psi_D = P_CD P_CA psi_A; the two
    routes to D agree on the codespace because the face carries no defect.
    Raises FaceEntryError unless all four corner configurations are valid.
    """
    lat = tc.lat
    corners = _face_corners(lat, kind, face)
    idx, start_lbl = _moving_defect(lat, tc, kind, corners)
    for lbl, cv in corners.items():
        try:
            cfg_l = _corner_cfg(tc.cfg, kind, idx, cv)
        except ValueError as exc:  # another defect already occupies the corner
            raise FaceEntryError(f"corner {lbl} at {cv} is already occupied") from exc
        if not hardcore_check(lat, cfg_l, tc.separation).ok:
            raise FaceEntryError(f"corner {lbl} at {cv} violates the hard-core condition")

    p_ca = _connecting_pauli(lat, kind, corners["C"], corners["A"])
    p_cd = _connecting_pauli(lat, kind, corners["C"], corners["D"])
    p_ab = _connecting_pauli(lat, kind, corners["A"], corners["B"])

    to_a = {
        "A": PauliString.identity(lat.n_edges),
        "C": p_ca,
        "B": p_ab,
        "D": pauli_mul(p_ca, p_cd),
    }
    f_a = to_a[start_lbl].apply(tc.frame.data)
    frames = {
        "A": f_a,
        "B": p_ab.apply(f_a),
        "C": p_ca.apply(f_a),
        "D": pauli_mul(p_cd, p_ca).apply(f_a),
    }
    return frames, idx


def combine_corner_frames(
    frames: dict[str, np.ndarray], x: float, y: float
) -> np.ndarray:
    if x + y <= 1.0:
        a, c, d = lower_coeffs(x, y)
        return a * frames["A"] + c * frames["C"] + d * frames["D"]
    a, b, d = upper_coeffs(x, y)
    return a * frames["A"] + b * frames["B"] + d * frames["D"]


def face_code(tc: ToricCode, kind: str, face, xy: tuple[float, float]) -> Frame:
    """Code with the moving defect at in-face position (x, y)."""
    frames, _ = corner_frames(tc, kind, face)
    return Frame(combine_corner_frames(frames, *xy))


def edge_code(tc: ToricCode, kind: str, edge: Edge, t: float) -> Frame:
    """Code with the moving defect a distance t from the oriented edge start.

    C(t) = U(t) applied to the start-corner code; when the configuration's
    defect sits at the oriented end the start frame is sigma times ours.
    """
    if not 0.0 <= t <= 1.0:
        raise ValueError("t must lie in [0, 1]")
    lat = tc.lat
    if kind == "primal":
        a, b = lat.edge_endpoints(edge)
        positions = tc.cfg.primal
    else:
        a, b = lat.dual_edge_endpoints(edge)
        positions = tc.cfg.dual
    sigma = step_pauli(lat, Step(kind, edge))
    at_a = a in positions
    at_b = b in positions
    if at_a == at_b:
        raise ValueError(f"need exactly one {kind} defect on {edge}")
    idx = positions.index(a if at_a else b)
    for dest in (a, b):
        try:
            moved = _corner_cfg(tc.cfg, kind, idx, dest)
        except ValueError as exc:
            raise ValueError(f"edge endpoint {dest} is already occupied") from exc
        if not hardcore_check(lat, moved, tc.separation).ok:
            raise ValueError(f"endpoint {dest} violates the hard-core condition")
    f = tc.frame.data
    f_start = f if at_a else sigma.apply(f)
    return Frame(alpha(t) * f_start + beta(t) * sigma.apply(f_start))


def edge_overlap_modulus(t: float, tp: float) -> float:
    """|alpha(t) conj(alpha(t')) + beta(t) conj(beta(t'))| = |cos(pi (t-t')/2)|."""
    return abs(alpha(t) * np.conj(alpha(tp)) + beta(t) * np.conj(beta(tp)))


_LEG_ORDER = (("CA", "reverse"), ("CD", "forward"), ("DB", "forward"), ("AB", "reverse"))


def det_winding_check(
    lat: TorusLattice,
    face,
    kind: str = "primal",
    samples: int = 64,
    flip_edge: str | None = None,
) -> float:
    """Total winding of arg(det) of the four boundary interpolation families.

    Walks A -> C -> D -> B -> A; legs along the uniform orientation use the
    forward family, legs against it the reverse family, and their half-turns
    cancel pairwise.  ``flip_edge`` (one of CA, CD, DB, AB) flips one leg for
    the +-2 pi diagnostic.
    """
    if samples < 4:
        raise ValueError("need at least 4 samples per leg")
    letter = "Z" if kind == "primal" else "X"
    total = 0.0
    for name, direction in _LEG_ORDER:
        if flip_edge == name:
            direction = "forward" if direction == "reverse" else "reverse"
        dets = [
            complex(np.linalg.det(interp_matrix(letter, k / samples, direction)))
            for k in range(samples + 1)
        ]
        for d0, d1 in zip(dets, dets[1:]):
            total += float(np.angle(d1 * np.conj(d0)))
    return total
