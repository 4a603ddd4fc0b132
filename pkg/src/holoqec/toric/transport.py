"""Fibre transport along defect paths and braid monodromies.

Three segment kinds compose a path: exact Pauli hops, edge-interpolation
slides (the relative unitary between two positions on one edge), and in-face
fibre moves given by the explicit coefficient solution.  Transport is the
path-ordered product applied to the frame; a braid word's monodromy is the
classified fibre action of its compiled hop path.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from ..frames import Frame
from ..pauli import alpha, beta
from ..transport import HolonomyResult, classify
from .braid import BraidWord, compile_braid
from .build import ToricCode
from .interp import combine_corner_frames, corner_frames, face_corner_coords
from .lattice import (
    ContinuousDefectConfig,
    DefectConfig,
    Edge,
    EdgePos,
    FacePos,
    VertexPos,
    hardcore_check,
)
from .strings import HOP, Step, StringEvolution, _classify_step, step_pauli

__all__ = [
    "DiscreteHop",
    "EdgeSlide",
    "FaceMove",
    "ConfigPath",
    "TransportError",
    "transport_along",
    "monodromy",
]


class TransportError(ValueError):
    pass


@dataclass(frozen=True)
class DiscreteHop:
    step: Step


@dataclass(frozen=True)
class EdgeSlide:
    kind: str
    edge: Edge
    t_from: float
    t_to: float


@dataclass(frozen=True)
class FaceMove:
    kind: str
    face: tuple[int, int]
    xy_from: tuple[float, float]
    xy_to: tuple[float, float]


Segment = Union[DiscreteHop, EdgeSlide, FaceMove]


@dataclass(frozen=True)
class ConfigPath:
    segments: tuple[Segment, ...]

    @classmethod
    def from_evolution(cls, ev: StringEvolution) -> "ConfigPath":
        return cls(tuple(DiscreteHop(s) for s in ev.steps))

    def __len__(self) -> int:
        return len(self.segments)


class _State:
    """Mutable transport state: positions, frame data, live face context."""

    def __init__(self, tc: ToricCode):
        self.tc = tc
        self.lat = tc.lat
        self.primal: list = [VertexPos(v) for v in tc.cfg.primal]
        self.dual: list = [VertexPos(f) for f in tc.cfg.dual]
        self.fdata = tc.frame.data
        self.face_ctx: tuple[str, tuple[int, int], dict, int] | None = None
        self.transcript: list[dict] = []

    def positions(self, kind: str) -> list:
        return self.primal if kind == "primal" else self.dual

    def continuous_cfg(self) -> ContinuousDefectConfig:
        return ContinuousDefectConfig(tuple(self.primal), tuple(self.dual))

    def discrete_cfg(self) -> DefectConfig:
        if not all(isinstance(p, VertexPos) for p in self.primal + self.dual):
            raise TransportError("configuration has defects off the lattice")
        return DefectConfig(
            tuple(p.v for p in self.primal), tuple(p.v for p in self.dual)
        )

    def check_hardcore(self) -> None:
        hc = hardcore_check(self.lat, self.continuous_cfg(), self.tc.separation)
        if not hc.ok:
            raise TransportError(
                f"hard-core violation mid-path: {hc.violating_pair} "
                f"at distance {hc.min_distance}"
            )

    # -- segment handlers ----------------------------------------------------

    def hop(self, seg: DiscreteHop) -> None:
        self.face_ctx = None
        cfg = self.discrete_cfg()
        status, detail, nxt = _classify_step(self.lat, cfg, seg.step, self.tc.separation)
        if status != HOP:
            raise TransportError(f"{status}: {detail}")
        self.primal = [VertexPos(v) for v in nxt.primal]
        self.dual = [VertexPos(f) for f in nxt.dual]
        self.fdata = step_pauli(self.lat, seg.step).apply(self.fdata)
        self.transcript.append(
            {"segment": "hop", "kind": seg.step.kind, "edge": list(seg.step.edge), "detail": detail}
        )

    def _find_on_edge(self, kind: str, edge: Edge, t: float) -> int:
        ends = (
            self.lat.edge_endpoints(edge)
            if kind == "primal"
            else self.lat.dual_edge_endpoints(edge)
        )
        for i, p in enumerate(self.positions(kind)):
            if isinstance(p, EdgePos) and p.edge == edge and abs(p.t - t) < 1e-9:
                return i
            if isinstance(p, VertexPos):
                if t in (0.0, 1.0) and p.v == ends[0 if t == 0.0 else 1]:
                    return i
        raise TransportError(f"no {kind} defect at position t={t} on {edge}")

    def slide(self, seg: EdgeSlide) -> None:
        self.face_ctx = None
        if not (0.0 <= seg.t_from <= 1.0 and 0.0 <= seg.t_to <= 1.0):
            raise TransportError("slide parameters must lie in [0, 1]")
        idx = self._find_on_edge(seg.kind, seg.edge, seg.t_from)
        sigma = step_pauli(self.lat, Step(seg.kind, seg.edge))
        delta = seg.t_to - seg.t_from
        # U(t1) U(t0)^dagger = exp(i (t1 - t0) H) = alpha(d) 1 + beta(d) sigma
        self.fdata = alpha(delta) * self.fdata + beta(delta) * sigma.apply(self.fdata)
        ends = (
            self.lat.edge_endpoints(seg.edge)
            if seg.kind == "primal"
            else self.lat.dual_edge_endpoints(seg.edge)
        )
        pos = (
            VertexPos(ends[0 if seg.t_to == 0.0 else 1])
            if seg.t_to in (0.0, 1.0)
            else EdgePos(seg.edge, seg.t_to)
        )
        self.positions(seg.kind)[idx] = pos
        self.check_hardcore()
        self.transcript.append(
            {
                "segment": "slide",
                "kind": seg.kind,
                "edge": list(seg.edge),
                "t": [seg.t_from, seg.t_to],
            }
        )

    def _enter_face(self, seg: FaceMove) -> None:
        corner_xy = {v: k for k, v in face_corner_coords().items()}
        lbl = corner_xy.get(seg.xy_from)
        if lbl is None:
            raise TransportError("face entry must start at a corner")
        cfg = self.discrete_cfg()
        tc_here = self.tc.with_frame(Frame(self.fdata), cfg)
        frames, idx = corner_frames(tc_here, seg.kind, seg.face)
        self.face_ctx = (seg.kind, seg.face, frames, idx)

    def face_move(self, seg: FaceMove) -> None:
        if self.face_ctx is None or self.face_ctx[:2] != (seg.kind, seg.face):
            self._enter_face(seg)
        kind, face, frames, idx = self.face_ctx
        x, y = seg.xy_to
        self.fdata = combine_corner_frames(frames, x, y)
        corner_xy = {v: k for k, v in face_corner_coords().items()}
        from .interp import _face_corners  # corner label -> lattice site

        corners = _face_corners(self.lat, kind, face)
        boundary_edge = None
        if seg.xy_to in corner_xy:
            self.positions(kind)[idx] = VertexPos(corners[corner_xy[seg.xy_to]])
            self.face_ctx = None
        elif x == 0.0 or x == 1.0 or y == 0.0 or y == 1.0:
            # exit onto a boundary edge; t runs along the uniform orientation
            if x == 0.0:
                boundary_edge, t = Edge(*corners["C"], "v"), y  # CA
            elif x == 1.0:
                boundary_edge, t = Edge(*corners["D"], "v"), y  # DB
            elif y == 0.0:
                boundary_edge, t = Edge(*corners["C"], "h"), x  # CD
            else:
                boundary_edge, t = Edge(*corners["A"], "h"), x  # AB
            self.positions(kind)[idx] = EdgePos(boundary_edge, t)
            self.face_ctx = None
        else:
            # FacePos.face is the lower-left corner on the defect's own lattice
            self.positions(kind)[idx] = FacePos(corners["C"], seg.xy_to)
        self.check_hardcore()
        self.transcript.append(
            {
                "segment": "face",
                "kind": seg.kind,
                "face": list(seg.face),
                "xy": [list(seg.xy_from), list(seg.xy_to)],
            }
        )


def transport_along(tc: ToricCode, path: ConfigPath) -> tuple[Frame, list[dict]]:
    """Compose the path's fibre maps onto the code frame.

    Returns the transported frame and a per-segment transcript; raises
    TransportError on any illegal move.
    """
    st = _State(tc)
    for seg in path.segments:
        if isinstance(seg, DiscreteHop):
            st.hop(seg)
        elif isinstance(seg, EdgeSlide):
            st.slide(seg)
        elif isinstance(seg, FaceMove):
            st.face_move(seg)
        else:
            raise TypeError(f"unknown segment {seg!r}")
    return Frame(st.fdata), st.transcript


def monodromy(
    tc: ToricCode,
    word: BraidWord,
    variant: int = 0,
    tol: float = 1e-8,
) -> tuple[HolonomyResult, list[dict]]:
    """Compile a braid word, transport the frame, classify the fibre action."""
    ev, _ = compile_braid(tc.lat, tc.cfg, word, tc.separation, variant)
    end, transcript = transport_along(tc, ConfigPath.from_evolution(ev))
    return classify(tc.frame, end, tol), transcript
