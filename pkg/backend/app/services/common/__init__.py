"""
Common package
열거형, 예외, 직렬화 도우미
"""
from .errors import (
    HoiError,
    SpecValidationError,
    ConfigError,
    EvaluationError,
    DivergenceError,
    ClassificationError,
    SolverError,
    DomainError,
    PreconditionError,
    UnsupportedSpecError,
    InvalidBracketError,
    BifurcationError,
)
from .schemas import (
    Topology,
    HOIKind,
    DistinguishedPair,
    Termination,
    OutcomeKind,
    RegimeLabel,
    InteractionRegime,
)

__all__ = [
    "HoiError", "SpecValidationError", "ConfigError", "EvaluationError",
    "DivergenceError", "ClassificationError", "SolverError", "DomainError",
    "PreconditionError", "UnsupportedSpecError", "InvalidBracketError",
    "BifurcationError",
    "Topology", "HOIKind", "DistinguishedPair", "Termination", "OutcomeKind",
    "RegimeLabel", "InteractionRegime",
]
