"""Toric codespaces with defects, built by projector products on seed states.

The joint eigenspace (A_v = +-1, B_f = +-1 with flipped signs at defects) is
constructed by (i) choosing four computational seed strings satisfying all
diagonal face constraints, one per homology class, and (ii) applying the
vertex projectors (1 + eps_v A_v)/2.  This is exact for commuting Paulis and
never diagonalizes anything.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..codes import Code
from ..frames import Frame, orthonormalize
from .lattice import (
    DEFAULT_SEPARATION,
    DefectConfig,
    Edge,
    TorusLattice,
    hardcore_check,
)

__all__ = ["ToricCode", "build_code", "ParityError", "ConfigError"]


class ParityError(ValueError):
    """Odd number of primal or dual defects; the global stabilizer product
    forces even counts."""


class ConfigError(ValueError):
    """Defect configuration violates the hard-core condition."""


@dataclass(frozen=True)
class ToricCode:
    """A built toric codespace bundled with its lattice and configuration."""

    lat: TorusLattice
    cfg: DefectConfig
    separation: int
    code: Code

    @property
    def frame(self) -> Frame:
        return self.code.frame

    @property
    def n(self) -> int:
        return self.code.n

    def with_frame(self, frame: Frame, cfg: DefectConfig) -> "ToricCode":
        return ToricCode(self.lat, cfg, self.separation, Code(frame, self.code.qudit_dims))


def _edge_mask(lat: TorusLattice, edges) -> int:
    m = 0
    for e in edges:
        m |= 1 << lat.edge_index(e)
    return m


def vertex_mask(lat: TorusLattice, v) -> int:
    """X-support of the star operator at v."""
    return _edge_mask(lat, lat.vertex_star(v))


def face_mask(lat: TorusLattice, f) -> int:
    """Z-support of the plaquette operator at f."""
    return _edge_mask(lat, lat.face_boundary(f))


def _dual_pairing_string(lat: TorusLattice, cfg: DefectConfig) -> int:
    """Bit string whose face fluxes match the dual-defect pattern.

    Pairs the dual defects in listed order and connects each pair by a greedy
    dual path (x steps first, then y, minimal wrapped deltas, ties toward +),
    toggling the primal edge crossed at every dual step.
    """
    bits = 0
    L = lat.L
    for k in range(0, len(cfg.dual), 2):
        (x, y), (tx, ty) = cfg.dual[k], cfg.dual[k + 1]
        dx = (tx - x) % L
        sx, nx = (1, dx) if dx <= L - dx else (-1, L - dx)
        for _ in range(nx):
            step = Edge(x, y, "h") if sx > 0 else Edge(lat.wrap(x - 1), y, "h")
            bits ^= 1 << lat.edge_index(lat.dual_crossing_qubit(step))
            x = lat.wrap(x + sx)
        dy = (ty - y) % L
        sy, ny = (1, dy) if dy <= L - dy else (-1, L - dy)
        for _ in range(ny):
            step = Edge(x, y, "v") if sy > 0 else Edge(x, lat.wrap(y - 1), "v")
            bits ^= 1 << lat.edge_index(lat.dual_crossing_qubit(step))
            y = lat.wrap(y + sy)
    return bits


def _homology_shifts(lat: TorusLattice) -> tuple[int, int]:
    """Zero-flux strings in the two nontrivial dual homology classes.

    A dual row crosses the vertical edges of one row; a dual column crosses
    the horizontal edges of one column.
    """
    row = _edge_mask(lat, (Edge(x, 0, "v") for x in range(lat.L)))
    col = _edge_mask(lat, (Edge(0, y, "h") for y in range(lat.L)))
    return row, col


def _apply_x_mask(arr: np.ndarray, mask: int, n: int) -> np.ndarray:
    from ..pauli import _indices

    return arr[np.bitwise_xor(_indices(n), np.uint64(mask))]


def build_code(
    lat: TorusLattice, cfg: DefectConfig, separation: int = DEFAULT_SEPARATION
) -> ToricCode:
    """Build the K = 4 eigenspace for a defect configuration.

    Raises ParityError for odd defect counts (caught by DefectConfig) and
    ConfigError when the hard-core condition fails at ``separation``.
    """
    if len(cfg.primal) % 2 or len(cfg.dual) % 2:
        raise ParityError("defect counts must be even")
    hc = hardcore_check(lat, cfg, separation)
    if not hc.ok:
        raise ConfigError(
            f"hard-core violation at separation {separation}: "
            f"{hc.violating_pair} at distance {hc.min_distance}"
        )

    n = lat.n_edges
    if n > 18:
        raise ValueError("dense construction capped at 18 qubits (L <= 3)")
    b0 = _dual_pairing_string(lat, cfg)
    row, col = _homology_shifts(lat)
    seeds = [b0, b0 ^ row, b0 ^ col, b0 ^ row ^ col]

    dual_set = set(cfg.dual)
    for b in seeds:  # diagonal constraints hold exactly by construction
        for f in lat.faces():
            flux = (b & face_mask(lat, f)).bit_count() & 1
            if flux != (1 if f in dual_set else 0):
                raise AssertionError("seed violates a face constraint")

    arr = np.zeros((1 << n, 4), dtype=complex)
    for k, b in enumerate(seeds):
        arr[b, k] = 1.0

    primal_set = set(cfg.primal)
    for v in lat.vertices():
        eps = -1.0 if v in primal_set else 1.0
        arr = 0.5 * (arr + eps * _apply_x_mask(arr, vertex_mask(lat, v), n))

    frame = orthonormalize(arr.T)  # columns are already orthogonal; normalize
    if frame.K != 4:
        raise AssertionError("toric construction must yield K = 4")
    return ToricCode(lat, cfg, separation, Code(frame, (2,) * n))
