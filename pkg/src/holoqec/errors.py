"""Error-set generators: bounded-weight Paulis and geometrically local clusters.

Both generators include the identity and enumerate deterministically (weight,
then support lexicographically, then letters X < Y < Z per site).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .pauli import LocalOperator, PauliString

__all__ = [
    "ErrorSet",
    "squdit_errors",
    "GeoLattice",
    "geolocal_errors",
    "conjugated_error_set",
    "EnumerationCapError",
]

_LETTERS = ("X", "Y", "Z")

DEFAULT_ENUMERATION_CAP = 10**6


class EnumerationCapError(RuntimeError):
    def __init__(self, projected: int, cap: int):
        super().__init__(
            f"error-set enumeration would produce ~{projected} operators, over the cap {cap}"
        )
        self.projected = projected
        self.cap = cap


@dataclass(frozen=True)
class ErrorSet:
    """An ordered, identity-containing set of Pauli errors."""

    errors: tuple[PauliString, ...]

    def __post_init__(self):
        if not self.errors or self.errors[0].weight != 0:
            raise ValueError("error sets must contain the identity (first)")

    def __iter__(self) -> Iterator[PauliString]:
        return iter(self.errors)

    def __len__(self) -> int:
        return len(self.errors)

    def __getitem__(self, i):
        return self.errors[i]

    @property
    def n(self) -> int:
        return self.errors[0].n

    def to_labels(self) -> list[str]:
        return [e.to_label() for e in self.errors]


def _paulis_on_support(n: int, support: Sequence[int]) -> Iterator[PauliString]:
    """All non-identity-free assignments over a fixed full support."""
    for letters in itertools.product(_LETTERS, repeat=len(support)):
        p = PauliString.identity(n)
        for site, letter in zip(support, letters):
            p = p * PauliString.single(n, site, letter)
        yield p


def squdit_errors(n: int, s: int) -> ErrorSet:
    """All Pauli strings of weight <= s, identity included.

    Size is sum_{w<=s} C(n, w) 3^w.
    """
    if not 0 <= s <= n:
        raise ValueError(f"need 0 <= s <= n, got s={s}, n={n}")
    out = [PauliString.identity(n)]
    for w in range(1, s + 1):
        for supp in itertools.combinations(range(n), w):
            out.extend(_paulis_on_support(n, supp))
    return ErrorSet(tuple(out))


@dataclass(frozen=True)
class GeoLattice:
    """Sites at fixed positions on a period-L torus with the wrapped L1 metric.

    Positions may be fractional (e.g. edge midpoints of a toric layout).
    """

    L: int
    positions: tuple[tuple[float, float], ...]

    def __post_init__(self):
        if self.L < 2:
            raise ValueError("lattice period must be at least 2")

    @property
    def n(self) -> int:
        return len(self.positions)

    def site_distance(self, i: int, j: int) -> float:
        (x1, y1), (x2, y2) = self.positions[i], self.positions[j]
        dx = abs(x1 - x2) % self.L
        dy = abs(y1 - y2) % self.L
        return min(dx, self.L - dx) + min(dy, self.L - dy)

    @classmethod
    def toric_edges(cls, L: int) -> "GeoLattice":
        """Edge midpoints of the L x L periodic square lattice, matching the
        edge indexing used by the toric module (horizontal first, x fastest)."""
        pos = [(x + 0.5, float(y)) for y in range(L) for x in range(L)]
        pos += [(float(x), y + 0.5) for y in range(L) for x in range(L)]
        return cls(L, tuple(pos))


def geolocal_errors(
    lat: GeoLattice, s: int, t: int, cap: int = DEFAULT_ENUMERATION_CAP
) -> ErrorSet:
    """All Paulis supported on unions of <= s clusters of diameter <= t.

    Clusters are disks in the wrapped lattice metric, centered on sites, of
    radius t/2.  The enumeration deduplicates across overlapping disk
    choices and refuses up front when the projected size exceeds ``cap``.
    """
    if s < 0:
        raise ValueError("s must be non-negative")
    if t < 1:
        raise ValueError("cluster diameter t must be at least 1")
    n = lat.n
    disks = []
    for c in range(n):
        disk = tuple(
            q for q in range(n) if lat.site_distance(c, q) <= t / 2 + 1e-9
        )
        disks.append(disk)
    # unique disks only, in first-seen order
    seen_disks: dict[tuple[int, ...], None] = {}
    for d in disks:
        seen_disks.setdefault(d, None)
    unique_disks = list(seen_disks)

    projected = 0
    unions = []
    seen_unions: dict[tuple[int, ...], None] = {}
    for k in range(1, s + 1):
        for combo in itertools.combinations(range(len(unique_disks)), k):
            u = tuple(sorted(set(itertools.chain(*(unique_disks[i] for i in combo)))))
            if u in seen_unions:
                continue
            seen_unions[u] = None
            unions.append(u)
            projected += 4 ** len(u)
            if projected > cap:
                raise EnumerationCapError(projected, cap)

    out: dict[tuple[int, int, int], PauliString] = {}
    identity = PauliString.identity(n)
    out[(0, 0, 0)] = identity
    for u in unions:
        for w in range(1, len(u) + 1):
            for supp in itertools.combinations(u, w):
                for p in _paulis_on_support(n, supp):
                    out.setdefault((p.x_bits, p.z_bits, p.phase_exp), p)
    ordered = sorted(
        out.values(), key=lambda p: (p.weight, p.support, p.x_bits, p.z_bits)
    )
    return ErrorSet(tuple(ordered))


def conjugated_error_set(
    es: ErrorSet, site_unitaries: Sequence[np.ndarray]
) -> list[LocalOperator]:
    """{U E U^{-1}} for a transversal U given by per-site unitaries.

    Conjugation is sitewise, so every output operator keeps the support of
    its source error.
    """
    if len(site_unitaries) != es.n:
        raise ValueError("need one site unitary per qubit")
    for u in site_unitaries:
        if np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))) > 1e-12:
            raise ValueError("site factors must be unitary")
    return [
        LocalOperator.from_pauli(e).conjugate_by(site_unitaries) for e in es
    ]
