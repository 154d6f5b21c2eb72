"""
(β, ω) 스윕 실행기

셀마다 표준 초기 상태에서 simulate + classify 를 수행합니다.
joblib 작업 풀에 셀을 나눠 주고 결과는 셀 인덱스 순서대로 모읍니다.
"""
import logging
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from joblib import Parallel, delayed
from tqdm import tqdm

from ..classify.detector import DetectorConfig, classify_trajectory
from ..classify.outcome import Outcome
from ..common.schemas import OutcomeKind
from ..dynamics.integrator import IntegratorConfig, simulate
from ..netmodel.network import SystemSpec
from .grid import GridAxis, InnerGrid, OutcomeGrid

logger = logging.getLogger(__name__)

CellJob = Tuple[SystemSpec, float, float]


def _run_cell(
    spec: SystemSpec,
    beta: float,
    omega: float,
    config: IntegratorConfig,
    detector: DetectorConfig,
) -> Outcome:
    try:
        cell_spec = spec.with_beta(beta)
        traj = simulate(cell_spec, config.with_omega(omega))
        return classify_trajectory(traj, **detector.model_dump())
    except Exception as exc:
        logger.warning(f"셀 실패 (beta={beta:.6g}, omega={omega:.6g}): {exc}")
        return Outcome.failed(f"{type(exc).__name__}: {exc}")


def run_cells(
    jobs: Sequence[CellJob],
    config: IntegratorConfig,
    detector: Optional[DetectorConfig] = None,
    workers: int = 1,
    progress: bool = False,
    desc: str = "cells",
) -> List[Outcome]:
    """셀 목록 실행. 결과 순서는 jobs 순서와 같음 (작업자 수와 무관)"""
    detector = detector or DetectorConfig()
    iterator: Iterable[CellJob] = tqdm(jobs, desc=desc, disable=not progress)
    if workers == 1:
        return [_run_cell(spec, beta, omega, config, detector) for spec, beta, omega in iterator]
    return Parallel(n_jobs=workers)(
        delayed(_run_cell)(spec, beta, omega, config, detector)
        for spec, beta, omega in iterator
    )


def sweep_beta_omega(
    spec: SystemSpec,
    beta_axis: GridAxis,
    omega_axis: GridAxis,
    config: IntegratorConfig,
    detector: Optional[DetectorConfig] = None,
    workers: int = 1,
    progress: bool = False,
) -> OutcomeGrid:
    betas = beta_axis.points()
    omegas = omega_axis.points()
    jobs = [(spec, float(beta), float(omega)) for beta in betas for omega in omegas]
    logger.info(f"(β, ω) 스윕: {len(betas)}×{len(omegas)} = {len(jobs)} 셀, workers={workers}")

    outcomes = run_cells(jobs, config, detector, workers, progress, desc="beta-omega")
    width = len(omegas)
    cells = [outcomes[b * width:(b + 1) * width] for b in range(len(betas))]
    grid = OutcomeGrid(beta_axis, omega_axis, cells, spec.fingerprint())

    errors = grid.count(OutcomeKind.ERROR)
    logger.info(
        f"스윕 완료: limit cycle {grid.count(OutcomeKind.LIMIT_CYCLE)}, "
        f"fixed point {grid.count(OutcomeKind.FIXED_POINT)}, "
        f"unbounded {grid.count(OutcomeKind.UNBOUNDED)}, errors {errors}"
    )
    return grid


def sweep_inner(
    spec: SystemSpec,
    inner_grid: InnerGrid,
    config: IntegratorConfig,
    **kwargs,
) -> OutcomeGrid:
    return sweep_beta_omega(spec, inner_grid.beta_axis, inner_grid.omega_axis, config, **kwargs)


def oscillation_probability(grid: OutcomeGrid) -> float:
    """ξ = LimitCycle 셀 수 / 전체 셀 수"""
    rows, cols = grid.shape
    return grid.count(OutcomeKind.LIMIT_CYCLE) / float(rows * cols)


def limit_cycle_mask(grid: OutcomeGrid) -> np.ndarray:
    return np.array([[cell.kind == OutcomeKind.LIMIT_CYCLE for cell in row] for row in grid.cells])


def coexistence_map(grid: OutcomeGrid) -> np.ndarray:
    """셀별 생존 종 수. 실패 셀은 -1"""
    return np.array(
        [[-1 if cell.kind == OutcomeKind.ERROR else cell.survivors for cell in row] for row in grid.cells],
        dtype=int,
    )


def fast_side_threshold(grid: OutcomeGrid, omega_min: float = 1.8) -> List[Tuple[float, Optional[float]]]:
    """ω > omega_min 인 열마다 3종이 모두 생존하는 가장 작은 β"""
    survivors = coexistence_map(grid)
    betas = grid.beta_axis.points()
    result = []
    for w, omega in enumerate(grid.omega_axis.points()):
        if omega <= omega_min:
            continue
        keeps = [float(betas[b]) for b in range(len(betas)) if survivors[b, w] == 3]
        result.append((float(omega), min(keeps) if keeps else None))
    return result
