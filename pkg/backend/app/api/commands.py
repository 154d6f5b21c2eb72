"""
명령 실행 계층

parse_config 로 JSON 설정을 검증하고, run 으로 명령을 실행해 결과 파일과 manifest.json 을 씁니다.
종료 코드: 0 성공, 1 검증 오류, 2 수치 계산 실패.
"""
import json
import logging
import math
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, ValidationError, field_validator, model_validator

# 경로 설정
backend_dir = Path(__file__).parent.parent.parent
if str(backend_dir) not in sys.path:
    sys.path.insert(0, str(backend_dir))

from app.config.settings import RuntimeSettings, get_settings
from app.services.classify import DetectorConfig, classify_trajectory, outcome_to_record
from app.services.common import ConfigError, HoiError, HOIKind, Topology
from app.services.dynamics import IntegratorConfig, SystemState, simulate, write_trajectory_csv
from app.services.equilibria import (
    interaction_regime,
    jacobian_eigenvalues,
    nullification_bifurcation,
    solve_steady_state,
)
from app.services.equilibria.solver import EquilibriumPoint
from app.services.netmodel import SystemSpec, build_canonical
from app.services.sweep import (
    GridAxis,
    InnerGrid,
    existence_table,
    min_alpha_for_oscillation,
    oscillation_probability,
    sweep_beta_omega,
    write_heatmap_csv,
    write_table_csv,
    write_xi_csv,
    xi_map,
)
from app.services.sweep.probes import XI_AXIS_NOTE
from app.services.tools import thresholds

logger = logging.getLogger(__name__)

COMMANDS = ("simulate", "sweep", "xi-map", "equilibrium", "bifurcation", "table-s1", "min-alpha")

_integrator = thresholds.integrator_defaults
_detector = thresholds.detector_defaults


# ─────────────────────────────────────────────
# 1) 설정 모델
class AxisConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    spacing: Literal["linear", "log"] = "linear"
    lo: float
    hi: float
    count: int

    @model_validator(mode="after")
    def _check_domain(self) -> "AxisConfig":
        if self.count < 1:
            raise ValueError("count must be at least 1")
        if not self.lo < self.hi:
            raise ValueError(f"lo must be below hi, got [{self.lo}, {self.hi})")
        if self.spacing == "log" and self.lo <= 0:
            raise ValueError("logarithmic axis requires lo > 0")
        return self

    def to_axis(self, name: str) -> GridAxis:
        return GridAxis(name=name, spacing=self.spacing, lo=self.lo, hi=self.hi, count=self.count)


class RunConfig(BaseModel):
    """한 번의 실행에 필요한 전체 설정. 빈 문서는 표준 기본값"""

    model_config = ConfigDict(extra="forbid")

    # 모델
    topology: Topology = Topology.INTRANSITIVE
    hoi_kind: HOIKind = HOIKind.SYMMETRIC
    alpha: float = 2.0
    alpha_ab: Optional[float] = None
    alpha_ac: Optional[float] = None
    alpha_bc: Optional[float] = None
    beta: float = 0.0
    omega: float = 1.0

    # 적분기
    dt: float = _integrator['dt']
    horizon: Optional[float] = None
    horizon_unit: Literal["time", "steps"] = "time"
    extinction_threshold: float = _integrator['extinction_threshold']
    convergence_tol: float = _integrator['convergence_tol']
    convergence_window: int = _integrator['convergence_window']
    divergence_cap: float = _integrator['divergence_cap']
    sample_stride: int = _integrator['sample_stride']
    max_samples: int = _integrator['max_samples']
    n0: float = thresholds.initial_state['n0']
    m0: float = thresholds.initial_state['m0']

    # 진동 판정기
    amplitude_tol: float = _detector['amplitude_tol']
    window_fraction: float = _detector['window_fraction']
    decay_ratio: float = _detector['decay_ratio']
    min_maxima: int = _detector['min_maxima']

    # 격자
    beta_axis: AxisConfig = AxisConfig(
        spacing="linear", lo=thresholds.beta_domain[0], hi=thresholds.beta_domain[1], count=thresholds.beta_count
    )
    omega_axis: AxisConfig = AxisConfig(
        spacing="log", lo=thresholds.omega_domain[0], hi=thresholds.omega_domain[1], count=thresholds.omega_count
    )
    alpha_ab_axis: AxisConfig = AxisConfig(spacing="linear", lo=0.5, hi=3.5, count=6)
    alpha_other_axis: AxisConfig = AxisConfig(spacing="linear", lo=0.5, hi=3.5, count=6)
    probe_alphas: List[float] = list(thresholds.probe_alphas)
    probe_other_alphas: List[float] = list(thresholds.probe_other_alphas)
    bracket: Tuple[float, float] = (1.0, 2.0)
    bisect_tol: float = 0.01

    # 출력 / 실행
    out: str = "runs"
    workers: Optional[int] = None
    deterministic: bool = True

    @field_validator("dt")
    @classmethod
    def _dt_positive(cls, v: float) -> float:
        if not (math.isfinite(v) and v > 0):
            raise ValueError("dt must be positive")
        return v

    @field_validator("extinction_threshold")
    @classmethod
    def _threshold_positive(cls, v: float) -> float:
        if not v > 0:
            raise ValueError("extinction_threshold must be positive")
        return v

    @field_validator("alpha", "alpha_ab", "alpha_ac", "alpha_bc", "beta", "n0", "m0")
    @classmethod
    def _finite(cls, v: Optional[float]) -> Optional[float]:
        if v is not None and not math.isfinite(v):
            raise ValueError("must be finite")
        return v

    @field_validator("workers")
    @classmethod
    def _workers_positive(cls, v: Optional[int]) -> Optional[int]:
        if v is not None and v < 1:
            raise ValueError("workers must be at least 1")
        return v

    @field_validator("deterministic")
    @classmethod
    def _always_deterministic(cls, v: bool) -> bool:
        if not v:
            raise ValueError("runs are always deterministic; no randomness exists")
        return v

    @model_validator(mode="after")
    def _check_nested(self) -> "RunConfig":
        try:
            self.integrator_config()
            self.detector_config()
        except ValidationError as exc:
            raise ValueError(_format_errors(exc))
        if not (self.bracket[0] < self.bracket[1] and self.bisect_tol > 0):
            raise ValueError("bracket must satisfy lo < hi and bisect_tol must be positive")
        return self

    # ─────────────────────────────────────────
    def magnitudes(self) -> Tuple[float, float, float]:
        return (
            self.alpha if self.alpha_ab is None else self.alpha_ab,
            self.alpha if self.alpha_ac is None else self.alpha_ac,
            self.alpha if self.alpha_bc is None else self.alpha_bc,
        )

    def build_spec(self) -> SystemSpec:
        return build_canonical(self.topology, self.hoi_kind, self.magnitudes(), self.beta)

    def integrator_config(self) -> IntegratorConfig:
        return IntegratorConfig(
            dt=self.dt,
            omega=self.omega,
            extinction_threshold=self.extinction_threshold,
            convergence_tol=self.convergence_tol,
            convergence_window=self.convergence_window,
            horizon=self.horizon,
            horizon_unit=self.horizon_unit,
            divergence_cap=self.divergence_cap,
            sample_stride=self.sample_stride,
            max_samples=self.max_samples,
        )

    def detector_config(self) -> DetectorConfig:
        return DetectorConfig(
            amplitude_tol=self.amplitude_tol,
            window_fraction=self.window_fraction,
            decay_ratio=self.decay_ratio,
            min_maxima=self.min_maxima,
        )

    def inner_grid(self) -> InnerGrid:
        return InnerGrid(
            beta_axis=self.beta_axis.to_axis("beta"),
            omega_axis=self.omega_axis.to_axis("omega"),
        )

    def initial_state(self, spec: SystemSpec) -> SystemState:
        return SystemState.standard(spec, self.n0, self.m0)


def _format_errors(exc: ValidationError) -> str:
    messages = []
    for error in exc.errors():
        path = ".".join(str(part) for part in error["loc"]) or "<root>"
        message = error["msg"]
        if message.startswith("Value error, "):
            message = message[len("Value error, "):]
        messages.append(f"{path}: {message}")
    return "; ".join(messages)


def parse_config(text: str, overrides: Optional[Dict[str, Any]] = None) -> RunConfig:
    """JSON 설정 문서(또는 manifest.json) 를 검증된 RunConfig 로 변환

    overrides 는 CLI 플래그 값이며 문서 값보다 우선합니다 (None 은 무시).
    """
    try:
        document = json.loads(text) if text.strip() else {}
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}")
    if not isinstance(document, dict):
        raise ConfigError(f"<root>: expected a JSON object, got {type(document).__name__}")
    # manifest 재실행
    if set(document) == {"command", "config", "notes"}:
        document = document["config"]
        if not isinstance(document, dict):
            raise ConfigError("config: expected a JSON object")

    merged = dict(document)
    for key, value in (overrides or {}).items():
        if value is not None:
            merged[key] = value
    try:
        return RunConfig.model_validate(merged)
    except ValidationError as exc:
        raise ConfigError(_format_errors(exc))


# ─────────────────────────────────────────────
# 2) 명령 실행
def _write_json(path: Path, payload: Any) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
    logger.info(f"JSON 저장: {path}")
    return path


def _detector_note(config: RunConfig) -> str:
    return (
        f"oscillation detector: amplitude_tol={config.amplitude_tol!r}, "
        f"window_fraction={config.window_fraction!r}, decay_ratio={config.decay_ratio!r}, "
        f"min_maxima={config.min_maxima}"
    )


def _equilibrium_record(point: EquilibriumPoint) -> Dict[str, Any]:
    return {
        "n": [float(v) for v in point.n],
        "m": [float(v) for v in point.m],
        "residual": point.residual_norm,
        "converged": point.converged,
        "warnings": list(point.warnings),
    }


def _run_simulate(config: RunConfig, out: Path, workers: int, progress: bool) -> Tuple[Dict[str, Any], List[str]]:
    spec = config.build_spec()
    traj = simulate(spec, config.integrator_config(), config.initial_state(spec))
    outcome = classify_trajectory(traj, **config.detector_config().model_dump())
    write_trajectory_csv(traj, out / "trajectory.csv")
    record = outcome_to_record(outcome)
    record["termination"] = traj.termination.value
    _write_json(out / "outcome.json", record)
    return record, [_detector_note(config)]


def _run_sweep(config: RunConfig, out: Path, workers: int, progress: bool) -> Tuple[Dict[str, Any], List[str]]:
    spec = config.build_spec()
    grid = sweep_beta_omega(
        spec,
        config.beta_axis.to_axis("beta"),
        config.omega_axis.to_axis("omega"),
        config.integrator_config(),
        config.detector_config(),
        workers=workers,
        progress=progress,
    )
    write_heatmap_csv(grid, out / "heatmap.csv")
    summary = {"xi": oscillation_probability(grid), "fingerprint": grid.fingerprint}
    _write_json(out / "summary.json", summary)
    return summary, [_detector_note(config)]


def _run_xi_map(config: RunConfig, out: Path, workers: int, progress: bool) -> Tuple[Dict[str, Any], List[str]]:
    result = xi_map(
        config.topology,
        config.hoi_kind,
        config.alpha_ab_axis.to_axis("alpha_ab"),
        config.alpha_other_axis.to_axis("alpha_other"),
        config.inner_grid(),
        config.integrator_config(),
        config.detector_config(),
        workers=workers,
        progress=progress,
    )
    write_xi_csv(result, out / "xi.csv")
    summary = {"max_xi": float(result.xi.max()), "mean_xi": float(result.xi.mean())}
    return summary, [_detector_note(config), XI_AXIS_NOTE]


def _run_equilibrium(config: RunConfig, out: Path, workers: int, progress: bool) -> Tuple[Dict[str, Any], List[str]]:
    spec = config.build_spec()
    guess = EquilibriumPoint.of([config.n0] * spec.n_species, [config.m0] * spec.n_modifiers)
    point = solve_steady_state(spec, config.omega, guess)
    report = jacobian_eigenvalues(spec, config.omega, point)
    record = _equilibrium_record(point)
    record.update(report.to_record())
    record["regimes"] = [interaction_regime(float(v)).value for v in point.m]
    _write_json(out / "equilibrium.json", record)
    return record, []


def _run_bifurcation(config: RunConfig, out: Path, workers: int, progress: bool) -> Tuple[Dict[str, Any], List[str]]:
    result = nullification_bifurcation(config.alpha, config.topology, config.hoi_kind)
    record = {"alpha": config.alpha, "beta_star": result.beta_star}
    record.update(_equilibrium_record(result.point))
    _write_json(out / "bifurcation.json", record)
    return record, []


def _run_table_s1(config: RunConfig, out: Path, workers: int, progress: bool) -> Tuple[Dict[str, Any], List[str]]:
    table = existence_table(
        config.probe_alphas,
        config.inner_grid(),
        config.integrator_config(),
        alpha_other_values=config.probe_other_alphas,
        detector=config.detector_config(),
        workers=workers,
        progress=progress,
    )
    write_table_csv(table, out / "table_s1.csv")
    mismatches = [list(row.key) for row in table.mismatches()]
    notes = [_detector_note(config), *table.notes]
    notes.extend(f"differs from published table: {'/'.join(key)}" for key in mismatches)
    return {"rows": len(table.rows), "mismatches": mismatches}, notes


def _run_min_alpha(config: RunConfig, out: Path, workers: int, progress: bool) -> Tuple[Dict[str, Any], List[str]]:
    alpha_min = min_alpha_for_oscillation(
        config.topology,
        config.hoi_kind,
        config.inner_grid(),
        config.bracket,
        config.bisect_tol,
        config.integrator_config(),
        config.detector_config(),
        workers=workers,
    )
    record = {"alpha_min": alpha_min, "bracket": list(config.bracket), "tol": config.bisect_tol}
    _write_json(out / "min_alpha.json", record)
    return record, [_detector_note(config)]


_HANDLERS: Dict[str, Callable[[RunConfig, Path, int, bool], Tuple[Dict[str, Any], List[str]]]] = {
    "simulate": _run_simulate,
    "sweep": _run_sweep,
    "xi-map": _run_xi_map,
    "equilibrium": _run_equilibrium,
    "bifurcation": _run_bifurcation,
    "table-s1": _run_table_s1,
    "min-alpha": _run_min_alpha,
}


def write_manifest(command: str, config: RunConfig, notes: List[str], out: Path) -> Path:
    manifest = {"command": command, "config": config.model_dump(mode="json"), "notes": notes}
    return _write_json(out / "manifest.json", manifest)


def execute(
    command: str,
    config: RunConfig,
    settings: Optional[RuntimeSettings] = None,
) -> Dict[str, Any]:
    """명령 실행 후 요약을 반환. 예외는 호출자에게 전달"""
    if command not in _HANDLERS:
        raise ConfigError(f"command: unknown command {command!r}, expected one of {', '.join(COMMANDS)}")
    settings = settings or get_settings()
    workers = settings.resolved_workers(config.workers)
    out = Path(config.out)
    logger.info(f"[{command}] 시작: out={out}, workers={workers}")
    summary, notes = _HANDLERS[command](config, out, workers, settings.progress)
    write_manifest(command, config, notes, out)
    logger.info(f"[{command}] 완료")
    return summary


def run(
    command: str,
    config: RunConfig,
    settings: Optional[RuntimeSettings] = None,
    on_success: Optional[Callable[[Dict[str, Any]], None]] = None,
) -> int:
    """명령을 실행하고 종료 코드를 돌려줍니다 (0 / 1 / 2)"""
    try:
        summary = execute(command, config, settings)
    except HoiError as exc:
        logger.error(f"[{command}] {type(exc).__name__}: {exc}")
        return exc.exit_code
    except ValidationError as exc:
        logger.error(f"[{command}] invalid configuration: {_format_errors(exc)}")
        return 1
    except OSError as exc:
        logger.error(f"[{command}] output error: {exc}")
        return 1
    except Exception:
        logger.exception(f"[{command}] unexpected failure")
        return 2
    if on_success is not None:
        on_success(summary)
    return 0
