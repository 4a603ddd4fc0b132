"""Toric codes with movable defects: lattice, codespace construction, string
evolutions, continuous interpolation codes, braid compilation, and transport."""

from .braid import (
    BraidWord,
    ContractibleLoop,
    DefectRef,
    FullBraid,
    HalfBraid,
    RoutingError,
    TorusLoop,
    compile_braid,
)
from .build import ConfigError, ParityError, ToricCode, build_code
from .interp import (
    FaceEntryError,
    det_winding_check,
    edge_code,
    edge_overlap_modulus,
    face_code,
    lower_coeffs,
    upper_coeffs,
)
from .lattice import (
    DEFAULT_SEPARATION,
    ContinuousDefectConfig,
    DefectConfig,
    Edge,
    EdgePos,
    FacePos,
    HardcoreReport,
    TorusLattice,
    VertexPos,
    hardcore_check,
)
from .strings import (
    EvolutionReport,
    InvalidEvolutionError,
    Step,
    StepReport,
    StringEvolution,
    apply_string,
    validate_evolution,
)
from .transport import (
    ConfigPath,
    DiscreteHop,
    EdgeSlide,
    FaceMove,
    TransportError,
    monodromy,
    transport_along,
)

__all__ = [
    "BraidWord",
    "ConfigError",
    "ConfigPath",
    "ContinuousDefectConfig",
    "ContractibleLoop",
    "DEFAULT_SEPARATION",
    "DefectConfig",
    "DefectRef",
    "DiscreteHop",
    "Edge",
    "EdgePos",
    "EdgeSlide",
    "EvolutionReport",
    "FaceEntryError",
    "FaceMove",
    "FacePos",
    "FullBraid",
    "HalfBraid",
    "HardcoreReport",
    "InvalidEvolutionError",
    "ParityError",
    "RoutingError",
    "Step",
    "StepReport",
    "StringEvolution",
    "ToricCode",
    "TorusLattice",
    "TorusLoop",
    "TransportError",
    "VertexPos",
    "apply_string",
    "build_code",
    "compile_braid",
    "det_winding_check",
    "edge_code",
    "edge_overlap_modulus",
    "face_code",
    "hardcore_check",
    "lower_coeffs",
    "monodromy",
    "transport_along",
    "upper_coeffs",
    "validate_evolution",
]
