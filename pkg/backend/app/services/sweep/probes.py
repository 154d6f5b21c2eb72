"""
비동일 α 실험: 진동 확률 지도 ξ, 진동 존재표, 진동 발생 최소 α
"""
import itertools
import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np
from tqdm import tqdm

from ..classify.detector import DetectorConfig
from ..common.errors import InvalidBracketError
from ..common.schemas import DistinguishedPair, HOIKind, OutcomeKind, Topology
from ..dynamics.integrator import IntegratorConfig
from ..netmodel.builders import build_canonical, distinguished_alphas
from ..tools import thresholds
from .grid import ExistenceRow, ExistenceTable, GridAxis, InnerGrid, XiMap
from .runner import run_cells, sweep_inner

logger = logging.getLogger(__name__)

XI_AXIS_NOTE = (
    "inner grid domains read as omega in [1e-3, 1e2) and beta in [-80, 0); "
    "the published caption lists them in the opposite order"
)


def xi_map(
    topology: Topology,
    kind: HOIKind,
    alpha_ab_axis: GridAxis,
    alpha_other_axis: GridAxis,
    inner_grid: InnerGrid,
    config: IntegratorConfig,
    detector: Optional[DetectorConfig] = None,
    workers: int = 1,
    progress: bool = False,
) -> XiMap:
    """픽셀 (α_AB, α_AC = α_BC) 마다 (β, ω) 격자의 진동 비율 ξ"""
    topology = Topology(topology)
    kind = HOIKind(kind)
    inner = inner_grid.for_kind(kind)
    betas = inner.beta_axis.points()
    omegas = inner.omega_axis.points()
    ab_values = alpha_ab_axis.points()
    other_values = alpha_other_axis.points()

    # 모든 픽셀의 셀을 하나의 작업 목록으로 펼침
    jobs = []
    for ab in ab_values:
        for other in other_values:
            spec = build_canonical(topology, kind, (float(ab), float(other), float(other)))
            jobs.extend((spec, float(beta), float(omega)) for beta in betas for omega in omegas)
    logger.info(
        f"ξ 지도: {len(ab_values)}×{len(other_values)} 픽셀, 픽셀당 {inner.size} 셀 "
        f"({topology.value}, {kind.value})"
    )
    outcomes = run_cells(jobs, config, detector, workers, progress, desc="xi-map")

    xi = np.zeros((len(ab_values), len(other_values)))
    for pixel in range(xi.size):
        block = outcomes[pixel * inner.size:(pixel + 1) * inner.size]
        hits = sum(1 for cell in block if cell.kind == OutcomeKind.LIMIT_CYCLE)
        xi.flat[pixel] = hits / inner.size
    return XiMap(topology, kind, alpha_ab_axis, alpha_other_axis, xi, inner, (XI_AXIS_NOTE,))


def _any_oscillation(
    topology: Topology,
    kind: HOIKind,
    alphas: Tuple[float, float, float],
    inner: InnerGrid,
    config: IntegratorConfig,
    detector: Optional[DetectorConfig],
    workers: int,
) -> bool:
    spec = build_canonical(topology, kind, alphas)
    grid = sweep_inner(spec, inner, config, detector=detector, workers=workers)
    return grid.count(OutcomeKind.LIMIT_CYCLE) > 0


def probe_pairs(
    alpha_hat_values: Sequence[float],
    alpha_other_values: Optional[Sequence[float]] = None,
) -> List[Tuple[float, float]]:
    """(α_hat, α_other) 탐침 조합. 같은 값끼리는 제외 (비동일 α 실험)"""
    others = alpha_hat_values if alpha_other_values is None else alpha_other_values
    return [
        (float(hat), float(other))
        for hat, other in itertools.product(alpha_hat_values, others)
        if hat != other
    ]


def existence_row(
    topology: Topology,
    kind: HOIKind,
    pair: DistinguishedPair,
    alpha_hat_values: Sequence[float],
    inner_grid: InnerGrid,
    config: IntegratorConfig,
    alpha_other_values: Optional[Sequence[float]] = None,
    detector: Optional[DetectorConfig] = None,
    workers: int = 1,
) -> ExistenceRow:
    """진동 셀이 하나라도 있으면 True. 진동이 발견되면 남은 탐침은 생략"""
    topology = Topology(topology)
    kind = HOIKind(kind)
    pair = DistinguishedPair(pair)
    inner = inner_grid.for_kind(kind)
    probes = tuple(probe_pairs(alpha_hat_values, alpha_other_values))
    for hat, other in probes:
        alphas = distinguished_alphas(pair, hat, other)
        if _any_oscillation(topology, kind, alphas, inner, config, detector, workers):
            logger.info(f"진동 발견: {topology.value} {kind.value} {pair.value} at α_hat={hat}, α_other={other}")
            return ExistenceRow(topology, kind, pair, True, (hat, other), probes)
    return ExistenceRow(topology, kind, pair, False, None, probes)


def existence_table(
    alpha_hat_values: Sequence[float] = thresholds.probe_alphas,
    inner_grid: Optional[InnerGrid] = None,
    config: Optional[IntegratorConfig] = None,
    alpha_other_values: Optional[Sequence[float]] = thresholds.probe_other_alphas,
    detector: Optional[DetectorConfig] = None,
    workers: int = 1,
    progress: bool = False,
) -> ExistenceTable:
    """4 위상 × 3 HOI 형태 × 3 구별 쌍 = 36 행"""
    inner_grid = inner_grid or InnerGrid.default()
    config = config or IntegratorConfig()
    combos = list(itertools.product(Topology, HOIKind, DistinguishedPair))
    rows = []
    for topology, kind, pair in tqdm(combos, desc="table-s1", disable=not progress):
        rows.append(existence_row(
            topology, kind, pair, alpha_hat_values, inner_grid, config,
            alpha_other_values, detector, workers,
        ))
    table = ExistenceTable(tuple(rows), _table_notes(alpha_hat_values, alpha_other_values))
    for row in table.mismatches():
        logger.warning(f"공개 표와 불일치: {row.key} -> {row.oscillates}")
    return table


def _table_notes(alpha_hat_values, alpha_other_values) -> Tuple[str, ...]:
    others = alpha_hat_values if alpha_other_values is None else alpha_other_values
    return (
        f"probe alpha_hat values: {[float(v) for v in alpha_hat_values]}",
        f"probe alpha_other values: {[float(v) for v in others]}",
        "BAC-type rows use beta in [0, 80)",
    )


def min_alpha_for_oscillation(
    topology: Topology,
    kind: HOIKind,
    inner_grid: InnerGrid,
    bracket: Tuple[float, float] = (1.0, 2.0),
    tol: float = 0.01,
    config: Optional[IntegratorConfig] = None,
    detector: Optional[DetectorConfig] = None,
    workers: int = 1,
) -> float:
    """동일 α 시스템에서 진동이 나타나는 최소 α 를 이분법으로 찾습니다.

    Raises:
        InvalidBracketError: 하한에서 이미 진동하거나 상한에서 진동하지 않을 때
    """
    topology = Topology(topology)
    kind = HOIKind(kind)
    config = config or IntegratorConfig()
    inner = inner_grid.for_kind(kind)
    lo, hi = float(bracket[0]), float(bracket[1])
    if not (lo < hi and tol > 0):
        raise InvalidBracketError(f"bracket must satisfy lo < hi and tol > 0, got [{lo}, {hi}], tol={tol}")

    def oscillates(alpha: float) -> bool:
        return _any_oscillation(topology, kind, (alpha, alpha, alpha), inner, config, detector, workers)

    if oscillates(lo):
        raise InvalidBracketError(f"alpha = {lo} already oscillates; lower end must not")
    if not oscillates(hi):
        raise InvalidBracketError(f"alpha = {hi} does not oscillate; upper end must")

    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if oscillates(mid):
            hi = mid
        else:
            lo = mid
        logger.info(f"이분법: [{lo:.6f}, {hi:.6f}]")
    return 0.5 * (lo + hi)
