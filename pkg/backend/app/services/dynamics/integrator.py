"""
HOI 변경자 동역학 적분기

- rhs: 변경자 모델 우변
- glvm_rhs / simple_hoi_rhs: 비교용 고정 변경자 모델과 즉시 HOI 모델
- euler_step / simulate: 고정 간격 오일러와 멸종 임계값 클램핑
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Iterator, Literal, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator

from ..common.errors import DivergenceError, EvaluationError, SpecValidationError
from ..common.schemas import Termination
from ..netmodel.network import SystemSpec
from ..tools import thresholds
from . import kernels

logger = logging.getLogger(__name__)

_defaults = thresholds.integrator_defaults

# 수치 폭주로 보는 커널 상태
_BLOWUP = (kernels.STATUS_DIVERGED, kernels.STATUS_NONFINITE, kernels.STATUS_OVERSHOOT)


class IntegratorConfig(BaseModel):
    """적분 설정. horizon 이 None 이면 기본 규칙(ω < 1 이면 base_horizon / ω)을 따름"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    dt: float = _defaults['dt']
    omega: float = 1.0
    extinction_threshold: float = _defaults['extinction_threshold']
    convergence_tol: float = _defaults['convergence_tol']
    convergence_window: int = _defaults['convergence_window']
    horizon: Optional[float] = None
    horizon_unit: Literal["time", "steps"] = "time"
    base_horizon: float = _defaults['base_horizon']
    divergence_cap: float = _defaults['divergence_cap']
    sample_stride: int = _defaults['sample_stride']
    max_samples: int = _defaults['max_samples']

    @field_validator("dt")
    @classmethod
    def _dt_positive(cls, v: float) -> float:
        if not (math.isfinite(v) and v > 0):
            raise ValueError("dt must be positive")
        return v

    @field_validator("omega")
    @classmethod
    def _omega_nonnegative(cls, v: float) -> float:
        if not (math.isfinite(v) and v >= 0):
            raise ValueError("omega must be finite and non-negative")
        return v

    @field_validator("horizon", "base_horizon")
    @classmethod
    def _horizon_positive(cls, v: Optional[float]) -> Optional[float]:
        if v is not None and not (math.isfinite(v) and v > 0):
            raise ValueError("horizon must be positive")
        return v

    @field_validator("extinction_threshold")
    @classmethod
    def _threshold_positive(cls, v: float) -> float:
        if not v > 0:
            raise ValueError("extinction_threshold must be positive")
        return v

    @field_validator("convergence_tol")
    @classmethod
    def _tol_positive(cls, v: float) -> float:
        if not v > 0:
            raise ValueError("convergence_tol must be positive")
        return v

    @field_validator("divergence_cap")
    @classmethod
    def _cap_above_one(cls, v: float) -> float:
        if not v > 1:
            raise ValueError("divergence_cap must be greater than 1")
        return v

    @field_validator("convergence_window", "sample_stride")
    @classmethod
    def _at_least_one(cls, v: int) -> int:
        if v < 1:
            raise ValueError("must be at least 1")
        return v

    @field_validator("max_samples")
    @classmethod
    def _enough_samples(cls, v: int) -> int:
        if v < 16:
            raise ValueError("max_samples must be at least 16")
        return v

    def horizon_value(self) -> float:
        """horizon_unit 단위의 적분 길이"""
        if self.horizon is not None:
            return self.horizon
        if 0 < self.omega < 1:
            return self.base_horizon / self.omega
        return self.base_horizon

    def total_steps(self) -> int:
        value = self.horizon_value()
        if self.horizon_unit == "steps":
            return max(1, int(round(value)))
        return max(1, int(round(value / self.dt)))

    def with_omega(self, omega: float) -> "IntegratorConfig":
        return self.model_validate({**self.model_dump(), "omega": omega})


@dataclass(frozen=True)
class SystemState:
    n: np.ndarray
    m: np.ndarray
    t: float = 0.0

    @classmethod
    def standard(cls, spec: SystemSpec, n0: float = 1.0, m0: float = 1.0) -> "SystemState":
        """표준 초기 상태: n_i = 1, m = 1"""
        return cls(
            np.full(spec.n_species, float(n0)),
            np.full(spec.n_modifiers, float(m0)),
            0.0,
        )

    @classmethod
    def of(cls, n: Sequence[float], m: Union[float, Sequence[float]] = (), t: float = 0.0) -> "SystemState":
        return cls(np.array(n, dtype=float), np.atleast_1d(np.array(m, dtype=float)), float(t))


@dataclass(frozen=True, eq=False)
class Trajectory:
    """표본 (t, n, m) 과 종료 사유"""

    times: np.ndarray
    n: np.ndarray
    m: np.ndarray
    termination: Termination
    final_state: SystemState
    spec: Optional[SystemSpec] = None
    config: Optional[IntegratorConfig] = None
    steps: int = 0
    notes: Tuple[str, ...] = field(default_factory=tuple)

    def __len__(self) -> int:
        return int(self.times.shape[0])

    @property
    def samples(self) -> Iterator[Tuple[float, np.ndarray, np.ndarray]]:
        for k in range(len(self)):
            yield float(self.times[k]), self.n[k], self.m[k]


# ─────────────────────────────────────────────
# 우변

def _check_finite(values: np.ndarray, name: str, labels: Sequence[str]) -> None:
    bad = np.flatnonzero(~np.isfinite(values))
    if bad.size:
        k = int(bad[0])
        label = labels[k] if k < len(labels) else str(k)
        raise EvaluationError(f"non-finite state entry {name}[{label}] = {values[k]}")


def _state_arrays(spec: SystemSpec, n, m) -> Tuple[np.ndarray, np.ndarray]:
    n = np.array(n, dtype=float).reshape(-1)
    if m is None:
        m = np.ones(spec.n_modifiers)
    m = np.broadcast_to(np.asarray(m, dtype=float), (spec.n_modifiers,)).copy()
    if n.shape != (spec.n_species,):
        raise SpecValidationError(f"expected {spec.n_species} abundances, got {n.shape[0]}")
    _check_finite(n, "n", spec.species_labels)
    _check_finite(m, "m", spec.modifier_labels)
    return n, m


def rhs(spec: SystemSpec, state: SystemState, omega: float) -> Tuple[np.ndarray, np.ndarray]:
    """변경자 모델의 정확한 도함수 (dn, dm)"""
    n, m = _state_arrays(spec, state.n, state.m)
    alpha, slot, mod_k, mod_beta = spec.kernel_arrays
    dn = np.zeros_like(n)
    dm = np.zeros_like(m)
    kernels.derivatives(n, m, alpha, slot, mod_k, mod_beta, float(omega), True, dn, dm)
    return dn, dm


def glvm_rhs(spec: SystemSpec, n, m_frozen=None) -> np.ndarray:
    """고정된 변경자 값으로 계산한 GLVM 우변 (m_frozen 이 없으면 순수 GLVM)"""
    n, m = _state_arrays(spec, n, m_frozen)
    alpha, slot, mod_k, mod_beta = spec.kernel_arrays
    dn = np.zeros_like(n)
    dm = np.zeros_like(m)
    kernels.derivatives(n, m, alpha, slot, mod_k, mod_beta, 0.0, False, dn, dm)
    return dn


def simple_hoi_rhs(spec: SystemSpec, n) -> np.ndarray:
    """즉시 HOI 모델 (계수 α_ij β_ijk)"""
    n, _ = _state_arrays(spec, n, None)
    alpha, slot, mod_k, mod_beta = spec.kernel_arrays
    dn = np.zeros_like(n)
    kernels.instantaneous_derivatives(n, alpha, slot, mod_k, mod_beta, dn)
    return dn


def modifier_equilibrium(beta: float, n_k: float) -> float:
    """준정상 변경자 값 m̄ = 1 + β n_k (ω 와 무관)"""
    return 1.0 + beta * n_k


def detect_convergence(dn, tol: float) -> bool:
    return float(np.sum(np.abs(dn))) < tol


# ─────────────────────────────────────────────
# 적분

def euler_step(spec: SystemSpec, state: SystemState, config: IntegratorConfig) -> SystemState:
    n, m = _state_arrays(spec, state.n, state.m)
    alpha, slot, mod_k, mod_beta = spec.kernel_arrays
    dn = np.zeros_like(n)
    dm = np.zeros_like(m)
    taken, status = kernels.advance(
        n, m, alpha, slot, mod_k, mod_beta, float(config.omega), True,
        config.dt, config.extinction_threshold, config.divergence_cap, 1, dn, dm,
    )
    new_state = SystemState(n, m, state.t + taken * config.dt)
    if status == kernels.STATUS_OVERSHOOT:
        raise DivergenceError("Euler step overshoots a living species below zero", state=new_state)
    if status in _BLOWUP:
        raise DivergenceError("abundance diverged during Euler step", state=new_state)
    return new_state


class _SampleBuffer:
    """최대 capacity 행을 유지하는 표본 버퍼. 가득 차면 한 행씩 건너 솎아냄"""

    def __init__(self, capacity: int, width: int):
        self.rows = np.empty((capacity, width))
        self.count = 0
        self.every = 1

    def _put(self, t: float, n: np.ndarray, m: np.ndarray) -> None:
        row = self.rows[self.count]
        row[0] = t
        row[1:1 + n.shape[0]] = n
        row[1 + n.shape[0]:] = m
        self.count += 1

    def _thin(self) -> None:
        kept = self.rows[0:self.count:2].copy()
        self.count = kept.shape[0]
        self.rows[:self.count] = kept
        self.every *= 2
        logger.debug(f"표본 솎아내기: 기록 간격 x{self.every}")

    def offer(self, chunk_index: int, t: float, n: np.ndarray, m: np.ndarray) -> None:
        if chunk_index % self.every:
            return
        if self.count == self.rows.shape[0]:
            self._thin()
            if chunk_index % self.every:
                return
        self._put(t, n, m)

    def force(self, t: float, n: np.ndarray, m: np.ndarray) -> None:
        if self.count and self.rows[self.count - 1, 0] >= t:
            return
        if self.count == self.rows.shape[0]:
            self._thin()
        self._put(t, n, m)

    def arrays(self, n_species: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        data = self.rows[:self.count].copy()
        return data[:, 0], data[:, 1:1 + n_species], data[:, 1 + n_species:]


def _integrate(
    spec: SystemSpec,
    config: IntegratorConfig,
    initial: SystemState,
    evolve: bool,
) -> Trajectory:
    n, m = _state_arrays(spec, initial.n, initial.m)
    alpha, slot, mod_k, mod_beta = spec.kernel_arrays
    dn = np.zeros_like(n)
    dm = np.zeros_like(m)
    omega = float(config.omega)
    dt = config.dt
    total = config.total_steps()

    buffer = _SampleBuffer(config.max_samples, 1 + spec.n_species + spec.n_modifiers)
    buffer.force(initial.t, n, m)

    steps_done = 0
    chunk_index = 0
    passes = 0
    t = initial.t
    termination = Termination.HORIZON_REACHED

    while steps_done < total:
        chunk = min(config.sample_stride, total - steps_done)
        taken, status = kernels.advance(
            n, m, alpha, slot, mod_k, mod_beta, omega, evolve,
            dt, config.extinction_threshold, config.divergence_cap, chunk, dn, dm,
        )
        steps_done += taken
        chunk_index += 1
        t = initial.t + steps_done * dt

        if status in _BLOWUP:
            if status == kernels.STATUS_OVERSHOOT:
                logger.debug(f"오일러 스텝 과도 하강: t={t:.3f}, n={n.tolist()}")
            termination = Termination.DIVERGED
            break
        if status == kernels.STATUS_ALL_EXTINCT:
            termination = Termination.ALL_EXTINCT
            break

        buffer.offer(chunk_index, t, n, m)

        kernels.derivatives(n, m, alpha, slot, mod_k, mod_beta, omega, evolve, dn, dm)
        if detect_convergence(dn, config.convergence_tol):
            passes += 1
            if passes >= config.convergence_window:
                termination = Termination.CONVERGED
                break
        else:
            passes = 0

    buffer.force(t, n, m)
    times, n_samples, m_samples = buffer.arrays(spec.n_species)
    logger.debug(f"적분 종료: {termination.value} (t={t:.3f}, steps={steps_done}, samples={len(times)})")
    return Trajectory(
        times=times,
        n=n_samples,
        m=m_samples,
        termination=termination,
        final_state=SystemState(n.copy(), m.copy(), t),
        spec=spec,
        config=config,
        steps=steps_done,
    )


def simulate(
    spec: SystemSpec,
    config: IntegratorConfig,
    initial: Optional[SystemState] = None,
) -> Trajectory:
    """수렴 / 발산 / 전멸 / horizon 도달까지 오일러 적분"""
    if initial is None:
        initial = SystemState.standard(spec)
    return _integrate(spec, config, initial, evolve=True)


def integrate_frozen(
    spec: SystemSpec,
    config: IntegratorConfig,
    initial: Optional[SystemState] = None,
    m_frozen=None,
) -> Trajectory:
    """변경자를 고정한 GLVM 적분. 같은 스텝 규칙 사용"""
    if initial is None:
        initial = SystemState.standard(spec)
    if m_frozen is not None:
        m = np.broadcast_to(np.asarray(m_frozen, dtype=float), (spec.n_modifiers,)).copy()
        initial = SystemState(np.array(initial.n, dtype=float), m, initial.t)
    return _integrate(spec, config, initial, evolve=False)


@dataclass(frozen=True, eq=False)
class RichardsonReport:
    coarse: Trajectory
    fine: Trajectory
    deviation: float


def richardson_check(
    spec: SystemSpec,
    config: IntegratorConfig,
    initial: Optional[SystemState] = None,
) -> RichardsonReport:
    """dt 와 dt/2 로 같은 구간을 적분하여 최종 개체수 차이를 비교 (검증 전용)"""
    fine_horizon = config.horizon_value()
    if config.horizon_unit == "steps":
        fine_horizon = 2 * fine_horizon
    fine_config = IntegratorConfig.model_validate({
        **config.model_dump(),
        "dt": config.dt / 2,
        "horizon": fine_horizon,
        "sample_stride": 2 * config.sample_stride,
    })
    coarse = simulate(spec, config, initial)
    fine = simulate(spec, fine_config, initial)
    deviation = float(np.max(np.abs(coarse.final_state.n - fine.final_state.n)))
    return RichardsonReport(coarse, fine, deviation)
