"""
분류 결과 타입과 JSON 레코드
"""
from dataclasses import dataclass
from typing import Any, Dict, List, Optional

import numpy as np

from ..common.schemas import OutcomeKind, Termination


@dataclass(frozen=True, eq=False)
class OscillationMetrics:
    amplitude: np.ndarray
    period: Optional[float]
    frequency: Optional[float]
    maxima: int = 0

    @property
    def max_amplitude(self) -> float:
        if self.amplitude.size == 0:
            return 0.0
        return float(np.max(self.amplitude))


@dataclass(frozen=True, eq=False)
class Outcome:
    kind: OutcomeKind
    survivors: int
    metrics: Optional[OscillationMetrics]
    final_n: np.ndarray
    final_m: np.ndarray
    termination: Optional[Termination] = None
    error: Optional[str] = None

    @classmethod
    def failed(cls, message: str) -> "Outcome":
        """스윕 셀 실패 기록"""
        return cls(OutcomeKind.ERROR, 0, None, np.zeros(0), np.zeros(0), None, message)

    @property
    def amplitude(self) -> Optional[float]:
        return None if self.metrics is None else self.metrics.max_amplitude

    @property
    def period(self) -> Optional[float]:
        return None if self.metrics is None else self.metrics.period

    def __eq__(self, other) -> bool:
        if not isinstance(other, Outcome):
            return NotImplemented
        return outcome_to_record(self) == outcome_to_record(other)

    __hash__ = None


def _floats(values) -> List[float]:
    return [float(v) for v in np.asarray(values, dtype=float).reshape(-1)]


def outcome_to_record(outcome: Outcome) -> Dict[str, Any]:
    """`{kind, survivors, amplitude, period, final_n, final_m}` (실패 셀은 error 추가)"""
    record: Dict[str, Any] = {
        "kind": outcome.kind.value,
        "survivors": int(outcome.survivors),
        "amplitude": outcome.amplitude,
        "period": outcome.period,
        "final_n": _floats(outcome.final_n),
        "final_m": _floats(outcome.final_m),
    }
    if outcome.error is not None:
        record["error"] = outcome.error
    return record
