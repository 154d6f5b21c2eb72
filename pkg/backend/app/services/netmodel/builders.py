"""
3종 표준 시스템 생성

부호 규약: α_ij > 0 이면 j 가 i 에 이익. "X > Y" 는 α_XY = +α, α_YX = -α.
- 전이(transitive): A > B, B > C, A > C
- 비전이(intransitive): A > B, B > C, C > A
"""
import math
from typing import Sequence, Tuple, Union

import numpy as np

from ..common.errors import SpecValidationError
from ..common.schemas import DistinguishedPair, HOIKind, Topology
from .network import HOISpec, SystemSpec

A, B, C = 0, 1, 2

# 위상별 (변경되는 쌍, 변경자)
HOI_LAYOUT = {
    Topology.TRANSITIVE_A: ((B, C), A),
    Topology.TRANSITIVE_B: ((A, C), B),
    Topology.TRANSITIVE_C: ((A, B), C),
    Topology.INTRANSITIVE: ((A, B), C),
}

AlphaValues = Union[float, Sequence[float]]


def _magnitudes(alpha_values: AlphaValues) -> Tuple[float, float, float]:
    if np.isscalar(alpha_values):
        values = (float(alpha_values),) * 3
    else:
        values = tuple(float(v) for v in alpha_values)
        if len(values) != 3:
            raise SpecValidationError(f"expected three magnitudes (AB, AC, BC), got {len(values)}")
    for name, value in zip(("alpha_AB", "alpha_AC", "alpha_BC"), values):
        if not math.isfinite(value):
            raise SpecValidationError(f"{name} must be finite, got {value}")
    return values


def canonical_alpha(topology: Topology, alpha_values: AlphaValues) -> np.ndarray:
    """위상에 맞는 반대칭 α 행렬"""
    ab, ac, bc = _magnitudes(alpha_values)
    topology = Topology(topology)
    alpha = np.zeros((3, 3))
    # A > B, B > C 는 공통
    alpha[A, B], alpha[B, A] = ab, -ab
    alpha[B, C], alpha[C, B] = bc, -bc
    if topology == Topology.INTRANSITIVE:
        # C > A
        alpha[C, A], alpha[A, C] = ac, -ac
    else:
        # A > C
        alpha[A, C], alpha[C, A] = ac, -ac
    return alpha


def canonical_hoi(topology: Topology, kind: HOIKind, beta: float = 0.0) -> HOISpec:
    (first, second), modifier = HOI_LAYOUT[Topology(topology)]
    kind = HOIKind(kind)
    if kind == HOIKind.SYMMETRIC:
        return HOISpec(first, second, modifier, beta=float(beta), symmetric=True)
    if kind == HOIKind.ASYM_AFFECTED_FIRST:
        return HOISpec(first, second, modifier, beta=float(beta))
    return HOISpec(second, first, modifier, beta=float(beta))


def build_canonical(
    topology: Topology,
    kind: HOIKind,
    alpha_values: AlphaValues,
    beta: float = 0.0,
) -> SystemSpec:
    """전이 / 비전이 3종 시스템 하나를 생성합니다.

    Args:
        topology: 위상 (변경자 결정)
        kind: HOI 형태
        alpha_values: 스칼라(모두 동일) 또는 (|α_AB|, |α_AC|, |α_BC|)
        beta: 변경 강도. 이후 with_beta() 로 교체 가능

    Returns:
        반대칭 α 와 HOI 하나를 가진 SystemSpec
    """
    if not math.isfinite(float(beta)):
        raise SpecValidationError(f"beta must be finite, got {beta}")
    alpha = canonical_alpha(topology, alpha_values)
    return SystemSpec(3, alpha, (canonical_hoi(topology, kind, beta),))


def distinguished_alphas(
    pair: DistinguishedPair, alpha_hat: float, alpha_other: float
) -> Tuple[float, float, float]:
    """ÂB / ÂC / B̂C 시스템의 (AB, AC, BC) 크기"""
    pair = DistinguishedPair(pair)
    if pair == DistinguishedPair.AB:
        return alpha_hat, alpha_other, alpha_other
    if pair == DistinguishedPair.AC:
        return alpha_other, alpha_hat, alpha_other
    return alpha_other, alpha_other, alpha_hat
