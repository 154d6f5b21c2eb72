"""
닫힌 형태 평형점과 m = 0 분기점

α = 1 비전이 시스템:
- 첫 번째 종만 영향(→ABC): (2/(2-β), 1, 2/(2-β), m = (2+β)/(2-β)), β < 2
- 두 번째 종만 영향(→BAC): (2/(2+β), 2/(2+β), 1, m = 1+β), β > -2
범위 밖에서는 개체수가 무한히 증가합니다.
"""
import logging
from dataclasses import dataclass

import numpy as np

from ..common.errors import BifurcationError, DomainError, UnsupportedSpecError
from ..common.schemas import HOIKind, InteractionRegime, Topology
from ..netmodel.builders import HOI_LAYOUT, build_canonical
from ..tools import thresholds
from .solver import EquilibriumPoint, residual_norm, solve_steady_state

logger = logging.getLogger(__name__)


def closed_form_equilibrium(kind: HOIKind, beta: float) -> EquilibriumPoint:
    kind = HOIKind(kind)
    beta = float(beta)
    if kind == HOIKind.ASYM_AFFECTED_FIRST:
        if not beta < 2:
            raise DomainError(f"beta = {beta}: no equilibrium for beta >= 2, growth becomes unbounded")
        x = 2.0 / (2.0 - beta)
        n = np.array([x, 1.0, x])
        m = np.array([(2.0 + beta) / (2.0 - beta)])
    elif kind == HOIKind.ASYM_AFFECTED_SECOND:
        if not beta > -2:
            raise DomainError(f"beta = {beta}: no equilibrium for beta <= -2, growth becomes unbounded")
        x = 2.0 / (2.0 + beta)
        n = np.array([x, x, 1.0])
        m = np.array([1.0 + beta])
    else:
        raise UnsupportedSpecError("closed forms exist only for the asymmetric HOI kinds")
    spec = build_canonical(Topology.INTRANSITIVE, kind, 1.0, beta)
    return EquilibriumPoint(n, m, residual_norm(spec, 1.0, n, m))


@dataclass(frozen=True)
class BifurcationResult:
    beta_star: float
    point: EquilibriumPoint


def nullification_bifurcation(
    alpha: float,
    topology: Topology = Topology.INTRANSITIVE,
    kind: HOIKind = HOIKind.SYMMETRIC,
) -> BifurcationResult:
    """평형 변경자가 0 이 되는 β* = -1/n_k 를 구합니다.

    m 을 0 으로 고정하고 종 방정식만 풀어 n 을 얻은 뒤 변경자 방정식에서 β* 를 계산합니다.
    α = 2 비전이 대칭 시스템이면 β* = -9, n = (7/9, 11/9, 1/9).
    """
    if not alpha > 0:
        raise BifurcationError(f"alpha must be positive, got {alpha}")
    spec = build_canonical(topology, kind, float(alpha))
    point = solve_steady_state(spec, 1.0, None, frozen_modifiers={0: 0.0})
    if not point.converged:
        raise BifurcationError(f"steady state with m = 0 not found ({point.warnings})")
    if np.any(point.n <= 0):
        raise BifurcationError(f"no positive-abundance solution with m = 0: n = {point.n.tolist()}")

    _, modifier = HOI_LAYOUT[Topology(topology)]
    beta_star = -1.0 / float(point.n[modifier])
    at_star = spec.with_beta(beta_star)
    result = EquilibriumPoint(
        point.n,
        point.m,
        residual_norm(at_star, 1.0, point.n, point.m),
        point.converged,
        point.iterations,
        point.warnings,
    )
    logger.info(f"무효화 분기점: alpha={alpha} -> beta*={beta_star:.10g}")
    return BifurcationResult(beta_star, result)


def interaction_regime(m: float, tol: float = thresholds.solver_defaults['equilibrium_tol']) -> InteractionRegime:
    """평형 변경자 값에 따른 원래 상호작용의 상태 (β 음수면 약화, β < β* 이면 역전)"""
    if abs(m) <= tol:
        return InteractionRegime.NULLIFIED
    if m < 0:
        return InteractionRegime.REVERSED
    if abs(m - 1.0) <= tol:
        return InteractionRegime.UNCHANGED
    if m < 1:
        return InteractionRegime.WEAKENED
    return InteractionRegime.STRENGTHENED
