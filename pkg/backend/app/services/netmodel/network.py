"""
상호작용 네트워크 정의

SystemSpec 은 종 수, 페어와이즈 계수 행렬 α (α_ij: j 가 i 에 주는 효과),
HOI 변경 목록으로 이루어진 전체 모델 정의입니다.
생성 후에는 변경하지 않으며, 스윕 셀별 β 는 with_beta() 로 만든 사본에 적용합니다.
"""
import hashlib
import json
import logging
from collections import Counter
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..common.constants import species_label
from ..common.errors import SpecValidationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HOISpec:
    """하나의 HOI: modifier_species(k) 가 α_ij (대칭이면 α_ji 도) 를 변경"""

    affected: int
    affecting: int
    modifier_species: int
    beta: float = 0.0
    symmetric: bool = False

    def targets(self) -> Tuple[Tuple[int, int], ...]:
        """변경되는 (i, j) 순서쌍 목록"""
        if self.symmetric:
            return ((self.affected, self.affecting), (self.affecting, self.affected))
        return ((self.affected, self.affecting),)

    @property
    def label(self) -> str:
        return f"m_{species_label(self.affected)}{species_label(self.affecting)}"

    def relabeled(self, mapping: Sequence[int]) -> "HOISpec":
        return replace(
            self,
            affected=int(mapping[self.affected]),
            affecting=int(mapping[self.affecting]),
            modifier_species=int(mapping[self.modifier_species]),
        )


@dataclass(frozen=True, eq=False)
class SystemSpec:
    n_species: int
    alpha: np.ndarray
    hois: Tuple[HOISpec, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if int(self.n_species) < 1:
            raise SpecValidationError(f"n_species must be positive, got {self.n_species}")
        alpha = np.array(self.alpha, dtype=float)
        if alpha.shape != (self.n_species, self.n_species):
            raise SpecValidationError(
                f"alpha must have shape ({self.n_species}, {self.n_species}), got {alpha.shape}"
            )
        alpha.setflags(write=False)
        object.__setattr__(self, "n_species", int(self.n_species))
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "hois", tuple(self.hois))

    def __eq__(self, other) -> bool:
        if not isinstance(other, SystemSpec):
            return NotImplemented
        return (
            self.n_species == other.n_species
            and np.array_equal(self.alpha, other.alpha)
            and self.hois == other.hois
        )

    __hash__ = None

    @property
    def n_modifiers(self) -> int:
        return len(self.hois)

    @property
    def modifier_labels(self) -> List[str]:
        return [hoi.label for hoi in self.hois]

    @property
    def species_labels(self) -> List[str]:
        return [species_label(i) for i in range(self.n_species)]

    @cached_property
    def kernel_arrays(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """적분 커널용 배열 (alpha, slot, mod_k, mod_beta)

        slot[i, j] 는 α_ij 를 변경하는 변경자 인덱스, 변경이 없으면 -1.
        """
        slot = np.full((self.n_species, self.n_species), -1, dtype=np.int64)
        for h, hoi in enumerate(self.hois):
            for i, j in hoi.targets():
                slot[i, j] = h
        mod_k = np.array([hoi.modifier_species for hoi in self.hois], dtype=np.int64)
        mod_beta = np.array([hoi.beta for hoi in self.hois], dtype=float)
        alpha = np.ascontiguousarray(self.alpha, dtype=float)
        return alpha, slot, mod_k, mod_beta

    def with_beta(self, beta: float, index: Optional[int] = None) -> "SystemSpec":
        """β 를 바꾼 사본 (index 가 없으면 모든 HOI)"""
        hois = tuple(
            replace(hoi, beta=float(beta)) if index is None or h == index else hoi
            for h, hoi in enumerate(self.hois)
        )
        return SystemSpec(self.n_species, self.alpha, hois)

    def to_dict(self) -> Dict:
        return {
            "n_species": self.n_species,
            "alpha": self.alpha.tolist(),
            "hois": [
                {
                    "affected": hoi.affected,
                    "affecting": hoi.affecting,
                    "modifier_species": hoi.modifier_species,
                    "beta": hoi.beta,
                    "symmetric": hoi.symmetric,
                }
                for hoi in self.hois
            ],
        }

    def fingerprint(self) -> str:
        payload = json.dumps(self.to_dict(), sort_keys=True)
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:16]


def validate(spec: SystemSpec) -> List[str]:
    """불변 조건 위반 목록. 빈 목록이면 유효"""
    violations: List[str] = []
    n = spec.n_species
    labels = spec.species_labels

    if n < 2:
        violations.append(f"n_species must be at least 2, got {n}")

    for i in range(n):
        for j in range(n):
            value = spec.alpha[i, j]
            if not np.isfinite(value):
                violations.append(f"non-finite alpha[{labels[i]}][{labels[j]}] = {value}")
            elif i == j and value != 0.0:
                violations.append(f"nonzero diagonal: alpha[{labels[i]}][{labels[i]}] = {value}")

    target_counts: Counter = Counter()
    for h, hoi in enumerate(spec.hois):
        indices = (hoi.affected, hoi.affecting, hoi.modifier_species)
        if any(idx < 0 or idx >= n for idx in indices):
            violations.append(f"HOI #{h}: species index out of range {indices}")
            continue
        if len(set(indices)) != 3:
            violations.append(f"HOI #{h}: affected, affecting and modifier must be pairwise distinct {indices}")
        if not np.isfinite(hoi.beta):
            violations.append(f"HOI #{h}: non-finite beta {hoi.beta}")
        target_counts.update(hoi.targets())

    for (i, j), count in sorted(target_counts.items()):
        if count > 1:
            violations.append(f"duplicate modifier target ({labels[i]},{labels[j]})")

    return violations


def cyclic_relabel(spec: SystemSpec, shift: int) -> SystemSpec:
    """종 인덱스를 i -> (i + shift) mod N 으로 순환 치환"""
    n = spec.n_species
    mapping = [(i + shift) % n for i in range(n)]
    inverse = [(q - shift) % n for q in range(n)]
    alpha = spec.alpha[np.ix_(inverse, inverse)]
    hois = tuple(hoi.relabeled(mapping) for hoi in spec.hois)
    return SystemSpec(n, alpha, hois)


def relabel_vector(values: Sequence[float], shift: int) -> np.ndarray:
    """종 벡터에 cyclic_relabel 과 같은 치환 적용"""
    values = np.asarray(values, dtype=float)
    n = values.shape[0]
    inverse = [(q - shift) % n for q in range(n)]
    return values[inverse]
