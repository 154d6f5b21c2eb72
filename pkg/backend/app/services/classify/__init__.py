"""
classify package
궤적 -> 고정점 / 리밋 사이클 / 발산 / 전멸 분류
"""
from .outcome import OscillationMetrics, Outcome, outcome_to_record
from .detector import (
    DetectorConfig,
    classify_trajectory,
    coexistence_count,
    oscillation_metrics,
    regime_label,
    regime_series,
)

__all__ = [
    "OscillationMetrics", "Outcome", "outcome_to_record",
    "DetectorConfig", "classify_trajectory", "coexistence_count", "oscillation_metrics",
    "regime_label", "regime_series",
]
