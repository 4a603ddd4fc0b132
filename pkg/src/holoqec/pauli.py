"""Signed n-qubit Pauli algebra and single-qubit interpolating unitaries.

Operators are kept in symplectic form: two bit masks (x_bits, z_bits) plus an
integer power of i, so products and phases are exact.  Dense matrices are only
ever built for small oracles; application to state vectors and frames is a
bit-indexed permutation with signs.

Conventions
-----------
* Qubit ``j`` corresponds to bit ``j`` of a basis-state index (little endian),
  so ``X`` on qubit 0 maps index ``n`` to ``n ^ 1``.
* A Pauli is ``i**phase_exp * X^x_bits * Z^z_bits`` where ``X^m`` denotes the
  tensor product of ``X`` over the bits set in ``m``.  With this convention
  ``Y = i X Z`` is ``(x=1, z=1, phase_exp=1)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Sequence

import numpy as np

__all__ = [
    "PauliString",
    "pauli_mul",
    "apply_pauli",
    "alpha",
    "beta",
    "interp_matrix",
    "interp_unitary_apply",
    "apply_site_matrix",
    "LocalOperator",
    "SIGMA",
]

_I2 = np.eye(2, dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)

SIGMA = {"I": _I2, "X": _X, "Y": _Y, "Z": _Z}

# letter -> (x bit, z bit, phase exponent of i)
_LETTER_BITS = {"I": (0, 0, 0), "X": (1, 0, 0), "Z": (0, 1, 0), "Y": (1, 1, 1)}
_PHASE_LABEL = {0: "+", 1: "+i*", 2: "-", 3: "-i*"}

_index_cache: dict[int, np.ndarray] = {}


def _indices(n: int) -> np.ndarray:
    """Cached ``arange(2**n)`` as uint64, the index set of the state space."""
    arr = _index_cache.get(n)
    if arr is None:
        arr = np.arange(1 << n, dtype=np.uint64)
        _index_cache[n] = arr
    return arr


@dataclass(frozen=True)
class PauliString:
    """A signed Pauli operator on ``n`` qubits in symplectic form.

    The phase is tracked exactly as an integer exponent of ``i`` modulo 4;
    only the four units {1, i, -1, -i} ever occur.
    """

    n: int
    x_bits: int
    z_bits: int
    phase_exp: int = 0

    def __post_init__(self):
        mask = (1 << self.n) - 1
        if self.x_bits & ~mask or self.z_bits & ~mask:
            raise ValueError("bit mask exceeds qubit count")
        object.__setattr__(self, "phase_exp", self.phase_exp % 4)

    # -- constructors ------------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "PauliString":
        return cls(n, 0, 0, 0)

    @classmethod
    def single(cls, n: int, site: int, letter: str) -> "PauliString":
        """Single-site Pauli ``letter`` on ``site`` of an ``n``-qubit register."""
        if not 0 <= site < n:
            raise ValueError(f"site {site} out of range for n={n}")
        x, z, p = _LETTER_BITS[letter]
        return cls(n, x << site, z << site, p)

    @classmethod
    def from_label(cls, label: str) -> "PauliString":
        """Parse ``"+XIZZY"`` style text; site 0 is the leftmost letter."""
        phase = 0
        body = label
        for prefix, p in (("+i*", 1), ("-i*", 3), ("i*", 1), ("+", 0), ("-", 2)):
            if label.startswith(prefix):
                phase = p
                body = label[len(prefix):]
                break
        out = cls.identity(len(body))
        for j, letter in enumerate(body):
            out = pauli_mul(out, cls.single(len(body), j, letter))
        return cls(out.n, out.x_bits, out.z_bits, out.phase_exp + phase)

    # -- basic structure ---------------------------------------------------

    @property
    def phase(self) -> complex:
        return 1j ** self.phase_exp

    @property
    def weight(self) -> int:
        return (self.x_bits | self.z_bits).bit_count()

    @property
    def support(self) -> tuple[int, ...]:
        m = self.x_bits | self.z_bits
        return tuple(j for j in range(self.n) if (m >> j) & 1)

    def letter(self, site: int) -> str:
        x = (self.x_bits >> site) & 1
        z = (self.z_bits >> site) & 1
        return ("I", "X", "Z", "Y")[x + 2 * z]

    def to_label(self) -> str:
        # site factor X^x Z^z equals -i Y when both bits are set; absorb into phase
        ny = sum(1 for j in range(self.n) if self.letter(j) == "Y")
        shown = (self.phase_exp - ny) % 4
        return _PHASE_LABEL[shown] + "".join(self.letter(j) for j in range(self.n))

    def __repr__(self) -> str:
        return f"PauliString({self.to_label()!r})"

    # -- algebra -----------------------------------------------------------

    def __mul__(self, other: "PauliString") -> "PauliString":
        return pauli_mul(self, other)

    def dagger(self) -> "PauliString":
        # (X^x Z^z)^dagger = Z^z X^x = (-1)^{|x&z|} X^x Z^z
        flips = (self.x_bits & self.z_bits).bit_count()
        return PauliString(self.n, self.x_bits, self.z_bits, -self.phase_exp + 2 * flips)

    def commutes_with(self, other: "PauliString") -> bool:
        s = (self.x_bits & other.z_bits).bit_count() + (self.z_bits & other.x_bits).bit_count()
        return s % 2 == 0

    # -- dense / vector action ---------------------------------------------

    def to_dense(self) -> np.ndarray:
        """Dense matrix; for small oracles only (exponential in ``n``)."""
        ops = []
        for j in range(self.n):
            x = (self.x_bits >> j) & 1
            z = (self.z_bits >> j) & 1
            ops.append((_X if x else _I2) @ (_Z if z else _I2))
        # qubit 0 is the least significant bit, hence the reversed kron order
        full = reduce(np.kron, reversed(ops)) if ops else np.eye(1, dtype=complex)
        return self.phase * full

    def apply(self, v: np.ndarray) -> np.ndarray:
        return apply_pauli(self, v)


def pauli_mul(p: PauliString, q: PauliString) -> PauliString:
    """Exact product ``p @ q`` with phase tracking.

    Moving ``Z^{z_p}`` through ``X^{x_q}`` costs a sign per overlapping site.
    """
    if p.n != q.n:
        raise ValueError(f"qubit count mismatch: {p.n} != {q.n}")
    sign_flips = (p.z_bits & q.x_bits).bit_count()
    return PauliString(
        p.n,
        p.x_bits ^ q.x_bits,
        p.z_bits ^ q.z_bits,
        p.phase_exp + q.phase_exp + 2 * sign_flips,
    )


def apply_pauli(p: PauliString, v: np.ndarray) -> np.ndarray:
    """Apply ``p`` to a state vector (N,) or frame (N, K) without densifying.

    (P v)[m] = i^k (-1)^{popcount((m ^ x) & z)} v[m ^ x].
    """
    N = 1 << p.n
    if v.shape[0] != N:
        raise ValueError(f"dimension mismatch: state has {v.shape[0]}, Pauli needs {N}")
    idx = _indices(p.n)
    src = idx if p.x_bits == 0 else np.bitwise_xor(idx, np.uint64(p.x_bits))
    out = v[src] if p.x_bits else v.copy()
    if p.z_bits:
        par = np.bitwise_count(np.bitwise_and(src, np.uint64(p.z_bits))).astype(np.int64) & 1
        signs = 1.0 - 2.0 * par
        out = out * (signs[:, None] if v.ndim == 2 else signs)
    if p.phase_exp:
        out = out * p.phase
    return np.ascontiguousarray(out)


# -- single-qubit interpolating unitaries -----------------------------------
#
# U(t) = alpha(t) 1 + beta(t) sigma interpolates identity -> sigma along the
# generator (sigma - 1) pi/2; V(t) = U(1-t) sigma runs the same edge backwards.


def alpha(t: float) -> complex:
    return np.exp(-1j * t * np.pi / 2) * np.cos(t * np.pi / 2)


def beta(t: float) -> complex:
    return 1j * np.exp(-1j * t * np.pi / 2) * np.sin(t * np.pi / 2)


def interp_matrix(letter: str, t: float, direction: str = "forward") -> np.ndarray:
    """2x2 matrix of U^i(t) (forward) or V^i(t) = U^i(1-t) sigma^i (reverse)."""
    s = SIGMA[letter]
    if direction == "forward":
        return alpha(t) * _I2 + beta(t) * s
    if direction == "reverse":
        return (alpha(1 - t) * _I2 + beta(1 - t) * s) @ s
    raise ValueError(f"unknown direction {direction!r}")


def interp_unitary_apply(
    letter: str, site: int, t: float, direction: str, v: np.ndarray, n: int
) -> np.ndarray:
    """Apply U^i_j(t) or V^i_j(t) to a state or frame over ``n`` qubits."""
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"t={t} outside [0, 1]")
    sig = PauliString.single(n, site, letter)
    w = apply_pauli(sig, v)
    if direction == "forward":
        return alpha(t) * v + beta(t) * w
    if direction == "reverse":
        return beta(1 - t) * v + alpha(1 - t) * w
    raise ValueError(f"unknown direction {direction!r}")


def apply_site_matrix(u: np.ndarray, site: int, v: np.ndarray, n: int) -> np.ndarray:
    """Apply a 2x2 matrix on one qubit of a state (N,) or frame (N, K)."""
    N = 1 << n
    cols = 1 if v.ndim == 1 else v.shape[1]
    w = v.reshape([2] * n + ([cols] if v.ndim == 2 else []))
    axis = n - 1 - site  # little-endian: site j is axis n-1-j
    w = np.moveaxis(w, axis, 0)
    w = np.tensordot(u, w, axes=(1, 0))
    w = np.moveaxis(w, 0, axis)
    return np.ascontiguousarray(w.reshape(v.shape))


@dataclass(frozen=True)
class LocalOperator:
    """An operator supported on a few qubits, one 2x2 factor per site.

    Used for conjugated error sets U E U^{-1}, which stay site-local but are
    no longer Pauli.
    """

    n: int
    sites: tuple[int, ...]
    factors: tuple[np.ndarray, ...]

    @classmethod
    def from_pauli(cls, p: PauliString) -> "LocalOperator":
        sites = p.support
        # letterwise decomposition: P = i^(k - #Y) tensor(sigma_letter)
        n_y = sum(1 for j in sites if p.letter(j) == "Y")
        shown = 1j ** ((p.phase_exp - n_y) % 4)
        mats = []
        for k, j in enumerate(sites):
            m = SIGMA[p.letter(j)]
            if k == 0:
                m = shown * m
            mats.append(m)
        if not sites:  # phase times identity
            return cls(p.n, (0,), (p.phase * _I2,)) if p.n else cls(p.n, (), ())
        return cls(p.n, sites, tuple(mats))

    def conjugate_by(self, site_unitaries: Sequence[np.ndarray]) -> "LocalOperator":
        """U E U^{-1} for a transversal U given as per-site 2x2 unitaries."""
        mats = tuple(
            site_unitaries[j] @ m @ site_unitaries[j].conj().T
            for j, m in zip(self.sites, self.factors)
        )
        return LocalOperator(self.n, self.sites, mats)

    def apply(self, v: np.ndarray) -> np.ndarray:
        out = v
        for j, m in zip(self.sites, self.factors):
            out = apply_site_matrix(m, j, out, self.n)
        return out


def random_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-ish unitary via QR of a complex Gaussian with phase fix."""
    a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    q, r = np.linalg.qr(a)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))
