"""
궤적 분류기

마지막 window_fraction 구간의 진폭과 극대점 수로 고정점 / 리밋 사이클을 구분합니다.
"""
import logging
import math
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy.signal import argrelextrema

from ..common.errors import ClassificationError, UnsupportedSpecError
from ..common.schemas import OutcomeKind, RegimeLabel, Termination
from ..dynamics.integrator import Trajectory
from ..tools import thresholds
from .outcome import OscillationMetrics, Outcome

logger = logging.getLogger(__name__)

_defaults = thresholds.detector_defaults


class DetectorConfig(BaseModel):
    """진동 판정 임계값 (결과와 함께 기록됨)"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    amplitude_tol: float = Field(_defaults['amplitude_tol'], gt=0)
    window_fraction: float = Field(_defaults['window_fraction'], gt=0, le=1)
    decay_ratio: float = Field(_defaults['decay_ratio'], ge=0, le=1)
    min_maxima: int = Field(_defaults['min_maxima'], ge=1)


def coexistence_count(n) -> int:
    return int(np.count_nonzero(np.asarray(n, dtype=float) > 0))


def _window_slice(traj: Trajectory, window_fraction: float) -> slice:
    if not 0 < window_fraction <= 1:
        raise ClassificationError(f"window_fraction must lie in (0, 1], got {window_fraction}")
    size = len(traj)
    if size == 0:
        raise ClassificationError("empty trajectory")
    width = int(math.ceil(size * window_fraction))
    if width < 3:
        raise ClassificationError(f"trailing window holds {width} samples, need at least 3")
    return slice(size - width, size)


def _reference_species(final_n: np.ndarray) -> int:
    """n_A 가 살아 있으면 A, 아니면 첫 생존 종"""
    alive = np.flatnonzero(final_n > 0)
    if alive.size == 0 or final_n[0] > 0:
        return 0
    return int(alive[0])


def _strict_maxima(series: np.ndarray) -> np.ndarray:
    return argrelextrema(series, np.greater)[0]


def oscillation_metrics(
    traj: Trajectory,
    window_fraction: float = _defaults['window_fraction'],
) -> OscillationMetrics:
    """마지막 구간의 종별 진폭(최대 - 최소)과 n_A 극대점 간격으로 구한 주기"""
    window = _window_slice(traj, window_fraction)
    n = traj.n[window]
    times = traj.times[window]
    amplitude = np.ptp(n, axis=0) if n.size else np.zeros(traj.n.shape[1])

    reference = _reference_species(traj.final_state.n)
    maxima = _strict_maxima(n[:, reference])
    if maxima.size >= 2:
        period = float(np.mean(np.diff(times[maxima])))
        frequency = 1.0 / period
    else:
        period = None
        frequency = None
    return OscillationMetrics(amplitude, period, frequency, int(maxima.size))


def _decay_guard(n: np.ndarray, survivors: np.ndarray, decay_ratio: float) -> Tuple[bool, float, float]:
    """창 후반부 진폭이 전반부의 decay_ratio 배 미만이면 수렴 중인 감쇠 진동으로 보고 거부"""
    half = n.shape[0] // 2
    first = float(np.max(np.ptp(n[:half, survivors], axis=0))) if half else 0.0
    second = float(np.max(np.ptp(n[half:, survivors], axis=0)))
    return second >= decay_ratio * first, first, second


def classify_trajectory(
    traj: Trajectory,
    amplitude_tol: float = _defaults['amplitude_tol'],
    window_fraction: float = _defaults['window_fraction'],
    decay_ratio: float = _defaults['decay_ratio'],
    min_maxima: int = _defaults['min_maxima'],
) -> Outcome:
    """궤적 하나를 Outcome 으로 분류합니다.

    - Diverged -> Unbounded
    - 최종 개체수가 모두 0 -> AllExtinct
    - Converged -> FixedPoint
    - 그 외: 마지막 구간 진폭 > amplitude_tol, n_A 극대점 min_maxima 개 이상,
      후반부 진폭이 전반부의 decay_ratio 배 이상이면 LimitCycle, 아니면 FixedPoint
    """
    if len(traj) == 0:
        raise ClassificationError("empty trajectory")

    final_n = np.array(traj.final_state.n, dtype=float)
    final_m = np.array(traj.final_state.m, dtype=float)
    survivors = coexistence_count(final_n)

    def _outcome(kind: OutcomeKind, metrics: Optional[OscillationMetrics] = None) -> Outcome:
        return Outcome(kind, survivors, metrics, final_n, final_m, traj.termination)

    if traj.termination == Termination.DIVERGED:
        return _outcome(OutcomeKind.UNBOUNDED)
    if survivors == 0:
        return _outcome(OutcomeKind.ALL_EXTINCT)

    if traj.termination == Termination.CONVERGED:
        try:
            metrics = oscillation_metrics(traj, window_fraction)
        except ClassificationError:
            metrics = None
        return _outcome(OutcomeKind.FIXED_POINT, metrics)

    metrics = oscillation_metrics(traj, window_fraction)

    alive = final_n > 0
    amplitude = float(np.max(metrics.amplitude[alive]))
    if amplitude <= amplitude_tol or metrics.maxima < min_maxima:
        return _outcome(OutcomeKind.FIXED_POINT, metrics)

    window = _window_slice(traj, window_fraction)
    sustained, first, second = _decay_guard(traj.n[window], alive, decay_ratio)
    if not sustained:
        logger.debug(f"감쇠 진동으로 판정: 전반 진폭 {first:.3e}, 후반 진폭 {second:.3e}")
        return _outcome(OutcomeKind.FIXED_POINT, metrics)
    return _outcome(OutcomeKind.LIMIT_CYCLE, metrics)


def regime_label(m: float) -> RegimeLabel:
    if m > 0:
        return RegimeLabel.INTRANSITIVE
    if m < 0:
        return RegimeLabel.TRANSITIVE
    return RegimeLabel.NEUTRAL


def regime_series(traj: Trajectory) -> List[Tuple[float, RegimeLabel]]:
    """표본별 변경자 부호에 따른 상태 (변경된 쌍이 정확히 하나일 때만)"""
    n_modifiers = traj.spec.n_modifiers if traj.spec is not None else traj.m.shape[1]
    if n_modifiers != 1:
        raise UnsupportedSpecError(f"regime series needs exactly one modified pair, got {n_modifiers}")
    return [(float(t), regime_label(float(m))) for t, m in zip(traj.times, traj.m[:, 0])]
