"""Transversal gates: the site-local unitary group, its logical subgroup's
tangent algebra, projectively-trivial-action probes, and holonomies of
transversal loops.

Everything here stays in per-site factors; matrix exponentials act on the
small site blocks only, never on the 2^n-dimensional space.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
import scipy.linalg

from .codes import Code
from .frames import Frame
from .pauli import SIGMA, PauliString, apply_site_matrix
from .transport import HolonomyResult, classify

__all__ = [
    "TransversalUnitary",
    "PathSegment",
    "TransversalPath",
    "LieAlgebraBasis",
    "fl_lie_algebra",
    "check_projectively_trivial_action",
    "TrivialActionReport",
    "pauli_generator_path",
    "exponential_path",
    "transversal_holonomy",
    "flatness_probe_transversal",
    "FlatnessReport",
]

UNITARY_TOL = 1e-12


@dataclass(frozen=True)
class TransversalUnitary:
    """A tensor product of per-site unitaries; factor j is d_j x d_j."""

    factors: tuple[np.ndarray, ...]

    def __post_init__(self):
        for f in self.factors:
            if np.max(np.abs(f.conj().T @ f - np.eye(f.shape[0]))) > UNITARY_TOL:
                raise ValueError("transversal factors must be unitary")

    @property
    def n(self) -> int:
        return len(self.factors)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(f.shape[0] for f in self.factors)

    def apply(self, arr: np.ndarray) -> np.ndarray:
        if any(d != 2 for d in self.dims):
            raise NotImplementedError("vector application implemented for qubits")
        out = arr
        for j, f in enumerate(self.factors):
            if np.allclose(f, np.eye(2), atol=1e-15):
                continue
            out = apply_site_matrix(f, j, out, self.n)
        return out

    def __matmul__(self, other: "TransversalUnitary") -> "TransversalUnitary":
        if self.dims != other.dims:
            raise ValueError("site dimensions differ")
        return TransversalUnitary(
            tuple(a @ b for a, b in zip(self.factors, other.factors))
        )

    @classmethod
    def identity(cls, dims: Sequence[int]) -> "TransversalUnitary":
        return cls(tuple(np.eye(d, dtype=complex) for d in dims))


@dataclass(frozen=True)
class PathSegment:
    """Site-local anti-Hermitian generators; None marks an idle site."""

    generators: tuple[np.ndarray | None, ...]

    def unitary(self, fraction: float = 1.0) -> list[np.ndarray | None]:
        out: list[np.ndarray | None] = []
        for h in self.generators:
            out.append(None if h is None else scipy.linalg.expm(fraction * h))
        return out


@dataclass(frozen=True)
class TransversalPath:
    """Piecewise-exponential path in the transversal group, F(0) = identity."""

    dims: tuple[int, ...]
    segments: tuple[PathSegment, ...]

    def __post_init__(self):
        for seg in self.segments:
            if len(seg.generators) != len(self.dims):
                raise ValueError("segment arity does not match site count")
            for h, d in zip(seg.generators, self.dims):
                if h is not None and np.max(np.abs(h + h.conj().T)) > 1e-10:
                    raise ValueError("generators must be anti-Hermitian")

    def endpoint(self) -> TransversalUnitary:
        factors = [np.eye(d, dtype=complex) for d in self.dims]
        for seg in self.segments:
            for j, u in enumerate(seg.unitary()):
                if u is not None:
                    factors[j] = u @ factors[j]
        return TransversalUnitary(tuple(factors))

    def evaluate(self, t: float) -> TransversalUnitary:
        """F(t) with t in [0, 1] distributed evenly over the segments."""
        if not 0.0 <= t <= 1.0:
            raise ValueError("t must lie in [0, 1]")
        m = len(self.segments)
        factors = [np.eye(d, dtype=complex) for d in self.dims]
        if m == 0:
            return TransversalUnitary(tuple(factors))
        pos = t * m
        for i, seg in enumerate(self.segments):
            frac = min(max(pos - i, 0.0), 1.0)
            if frac == 0.0:
                break
            for j, u in enumerate(seg.unitary(frac)):
                if u is not None:
                    factors[j] = u @ factors[j]
        return TransversalUnitary(tuple(factors))

    def apply_to(self, arr: np.ndarray, t: float = 1.0) -> np.ndarray:
        return self.evaluate(t).apply(arr)

    def compose(self, later: "TransversalPath") -> "TransversalPath":
        """This path first, then ``later``."""
        if self.dims != later.dims:
            raise ValueError("site dimensions differ")
        return TransversalPath(self.dims, self.segments + later.segments)

    def subdivide(self, pieces: Sequence[int]) -> "TransversalPath":
        """Split each segment into equal exponential pieces.

        exp(H) = exp(H/p)^p exactly, so endpoints are unchanged: this is a
        time reparametrization of the same path.
        """
        if len(pieces) != len(self.segments):
            raise ValueError("need one piece count per segment")
        segs = []
        for seg, p in zip(self.segments, pieces):
            if p < 1:
                raise ValueError("piece counts must be positive")
            scaled = tuple(None if h is None else h / p for h in seg.generators)
            segs.extend([PathSegment(scaled)] * p)
        return TransversalPath(self.dims, tuple(segs))


def pauli_generator_path(p: PauliString) -> TransversalPath:
    """One simultaneous segment of single-site rotations ending exactly at p.

    Non-identity sites carry the generator i (sigma - 1) pi/2; any net phase
    of p is realized by a commuting global-phase generator on site 0.
    """
    dims = (2,) * p.n
    gens: list[np.ndarray | None] = [None] * p.n
    n_y = 0
    for j in range(p.n):
        letter = p.letter(j)
        if letter == "Y":
            n_y += 1
        if letter != "I":
            gens[j] = 1j * (SIGMA[letter] - np.eye(2)) * np.pi / 2
    phase_quarter = (p.phase_exp - n_y) % 4
    if phase_quarter:
        theta = phase_quarter * np.pi / 2
        extra = 1j * theta * np.eye(2)
        gens[0] = extra if gens[0] is None else gens[0] + extra
    return TransversalPath(dims, (PathSegment(tuple(gens)),))


def exponential_path(
    dims: Sequence[int], generators: Sequence[np.ndarray | None]
) -> TransversalPath:
    return TransversalPath(tuple(dims), (PathSegment(tuple(generators)),))


# -- tangent algebra of the logical transversal subgroup ---------------------


def _antiherm_site_basis(d: int) -> list[np.ndarray]:
    """Orthonormal real basis of anti-Hermitian d x d matrices (d^2 elements)."""
    out = []
    for k in range(d):
        m = np.zeros((d, d), dtype=complex)
        m[k, k] = 1j
        out.append(m)
    for k in range(d):
        for l in range(k + 1, d):
            m = np.zeros((d, d), dtype=complex)
            m[k, l] = 1.0
            m[l, k] = -1.0
            out.append(m / np.sqrt(2))
            m = np.zeros((d, d), dtype=complex)
            m[k, l] = 1j
            m[l, k] = 1j
            out.append(m / np.sqrt(2))
    return out


@dataclass(frozen=True)
class LieAlgebraBasis:
    """Real-orthonormal basis of the codespace-preserving site-local algebra."""

    site_dims: tuple[int, ...]
    coefficients: np.ndarray  # (dim, n_params) real

    @property
    def dimension(self) -> int:
        return self.coefficients.shape[0]

    def _param_layout(self) -> list[tuple[int, list[np.ndarray]]]:
        return [(j, _antiherm_site_basis(d)) for j, d in enumerate(self.site_dims)]

    def generators(self, coeffs: np.ndarray) -> list[np.ndarray | None]:
        """Per-site anti-Hermitian matrices for a parameter vector."""
        out: list[np.ndarray | None] = []
        pos = 0
        for j, basis in self._param_layout():
            d = self.site_dims[j]
            h = np.zeros((d, d), dtype=complex)
            for b in basis:
                h = h + coeffs[pos] * b
                pos += 1
            out.append(h if np.max(np.abs(h)) > 1e-14 else None)
        return out

    def element(self, k: int) -> list[np.ndarray | None]:
        return self.generators(self.coefficients[k])

    def random_element(
        self, rng: np.random.Generator, scale: float = 1.0
    ) -> list[np.ndarray | None]:
        c = rng.normal(size=self.dimension) * scale
        return self.generators(self.coefficients.T @ c)


def fl_lie_algebra(code: Code, sv_cutoff: float = 1e-10) -> LieAlgebraBasis:
    """Nullspace of H -> (1 - P) H iota over site-local anti-Hermitian H.

    The constraint is exactly real-linear in the sum_j d_j^2 real parameters;
    the basis returned is orthonormal in the parameter inner product.
    """
    fdata = code.frame.data
    n_params = sum(d * d for d in code.qudit_dims)
    cols = []
    for j, d in enumerate(code.qudit_dims):
        if d != 2:
            raise NotImplementedError("site application implemented for qubits")
        for b in _antiherm_site_basis(d):
            hv = apply_site_matrix(b, j, fdata, code.n)
            resid = hv - fdata @ (fdata.conj().T @ hv)
            cols.append(np.concatenate([resid.real.ravel(), resid.imag.ravel()]))
    a = np.column_stack(cols)
    u, s, vt = np.linalg.svd(a, full_matrices=True)
    null_rows = vt[np.concatenate([s, np.zeros(n_params - len(s))]) <= sv_cutoff]
    return LieAlgebraBasis(code.qudit_dims, null_rows)


@dataclass(frozen=True)
class TrivialActionReport:
    samples: int
    max_residual: float
    tol: float

    @property
    def ok(self) -> bool:
        return self.max_residual < self.tol


def check_projectively_trivial_action(
    code: Code,
    basis: LieAlgebraBasis,
    samples: int,
    tol: float = 1e-8,
    rng: np.random.Generator | None = None,
) -> TrivialActionReport:
    """Exponentials of random algebra elements must act as a unit phase on C."""
    rng = rng or np.random.default_rng(0)
    fdata = code.frame.data
    worst = 0.0
    eye = np.eye(code.K)
    for _ in range(samples):
        gens = basis.random_element(rng)
        u = TransversalUnitary(
            tuple(
                np.eye(d, dtype=complex) if h is None else scipy.linalg.expm(h)
                for h, d in zip(gens, code.qudit_dims)
            )
        )
        m = fdata.conj().T @ u.apply(fdata)
        xi = np.trace(m) / code.K
        residual = max(
            float(np.max(np.abs(m - xi * eye))), abs(abs(xi) - 1.0)
        )
        worst = max(worst, residual)
    return TrivialActionReport(samples, worst, tol)


def transversal_holonomy(
    code: Code, path: TransversalPath, tol: float = 1e-9
) -> HolonomyResult:
    """Lift the frame along the path and classify the loop's fibre action.

    Raises NotALoopError when the endpoint does not preserve the codespace.
    """
    end = Frame(path.apply_to(code.frame.data))
    return classify(code.frame, end, tol)


@dataclass(frozen=True)
class FlatnessReport:
    trials: int
    max_phase_adjusted_deviation: float
    tol: float

    @property
    def ok(self) -> bool:
        return self.max_phase_adjusted_deviation < self.tol


def _phase_adjusted_deviation(m1: np.ndarray, m2: np.ndarray) -> float:
    t = np.trace(m2.conj().T @ m1)
    xi = t / abs(t) if abs(t) > 1e-12 else 1.0
    return float(np.max(np.abs(m1 - xi * m2)))


def flatness_probe_transversal(
    code: Code,
    loop_endpoints: Sequence[PauliString],
    trials: int,
    tol: float = 1e-7,
    rng: np.random.Generator | None = None,
) -> FlatnessReport:
    """Homotopic transversal loop pairs must agree up to a phase.

    Each trial picks a loop endpoint (a product of the supplied codespace
    preserving Paulis), then compares the holonomy of its generator path
    against (a) a random subdivision reparametrization and (b) the same path
    pre-composed with the exponential of a random tangent-algebra element.
    """
    rng = rng or np.random.default_rng(0)
    basis = fl_lie_algebra(code)
    worst = 0.0
    for _ in range(trials):
        word_len = int(rng.integers(1, 4))
        p = PauliString.identity(code.n)
        for _ in range(word_len):
            p = p * loop_endpoints[int(rng.integers(0, len(loop_endpoints)))]
        path1 = pauli_generator_path(p)
        m1 = transversal_holonomy(code, path1).logical

        pieces = [int(rng.integers(2, 5)) for _ in path1.segments]
        m2 = transversal_holonomy(code, path1.subdivide(pieces)).logical
        worst = max(worst, _phase_adjusted_deviation(m1, m2))

        gens = basis.random_element(rng)
        pre = exponential_path((2,) * code.n, gens)
        m3 = transversal_holonomy(code, pre.compose(path1)).logical
        worst = max(worst, _phase_adjusted_deviation(m1, m3))
    return FlatnessReport(trials, worst, tol)
