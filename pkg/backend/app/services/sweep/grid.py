"""
격자 축과 스윕 결과 타입

격자점은 반열린 구간 [lo, hi) 을 count 개 셀로 나눈 각 셀의 왼쪽 끝입니다.
"""
import math
from dataclasses import dataclass, field
from typing import Dict, List, Literal, Optional, Tuple

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from ..classify.outcome import Outcome
from ..common.schemas import DistinguishedPair, HOIKind, OutcomeKind, Topology
from ..tools import thresholds


class GridAxis(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    name: str
    spacing: Literal["linear", "log"] = "linear"
    lo: float
    hi: float
    count: int

    @field_validator("count")
    @classmethod
    def _count_positive(cls, v: int) -> int:
        if v < 1:
            raise ValueError("count must be at least 1")
        return v

    @model_validator(mode="after")
    def _check_domain(self) -> "GridAxis":
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ValueError("lo and hi must be finite")
        if not self.lo < self.hi:
            raise ValueError(f"lo must be below hi, got [{self.lo}, {self.hi})")
        if self.spacing == "log" and self.lo <= 0:
            raise ValueError("logarithmic axis requires lo > 0")
        return self

    def points(self) -> np.ndarray:
        steps = np.arange(self.count) / self.count
        if self.spacing == "log":
            return self.lo * np.power(self.hi / self.lo, steps)
        return self.lo + (self.hi - self.lo) * steps

    def flipped(self) -> "GridAxis":
        """부호를 뒤집은 구간 [-hi, -lo)"""
        return GridAxis(name=self.name, spacing=self.spacing, lo=0.0 - self.hi, hi=0.0 - self.lo, count=self.count)


def beta_axis(count: int = thresholds.beta_count, flipped: bool = False) -> GridAxis:
    lo, hi = thresholds.beta_domain_flipped if flipped else thresholds.beta_domain
    return GridAxis(name="beta", spacing="linear", lo=lo, hi=hi, count=count)


def omega_axis(count: int = thresholds.omega_count) -> GridAxis:
    lo, hi = thresholds.omega_domain
    return GridAxis(name="omega", spacing="log", lo=lo, hi=hi, count=count)


class InnerGrid(BaseModel):
    """픽셀 하나에 쓰는 (β, ω) 격자"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    beta_axis: GridAxis
    omega_axis: GridAxis

    @classmethod
    def default(cls, beta_count: int = thresholds.beta_count,
                omega_count: int = thresholds.omega_count) -> "InnerGrid":
        return cls(beta_axis=beta_axis(beta_count), omega_axis=omega_axis(omega_count))

    def for_kind(self, kind: HOIKind) -> "InnerGrid":
        """음수 계수만 변경하는 →BAC 형태는 β 구간을 [0, 80) 으로 뒤집음"""
        if HOIKind(kind) == HOIKind.ASYM_AFFECTED_SECOND and self.beta_axis.hi <= 0:
            return InnerGrid(beta_axis=self.beta_axis.flipped(), omega_axis=self.omega_axis)
        return self

    @property
    def size(self) -> int:
        return self.beta_axis.count * self.omega_axis.count


@dataclass(frozen=True, eq=False)
class OutcomeGrid:
    beta_axis: GridAxis
    omega_axis: GridAxis
    cells: List[List[Outcome]]
    fingerprint: str
    notes: Tuple[str, ...] = field(default_factory=tuple)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.beta_axis.count, self.omega_axis.count

    def __iter__(self):
        betas = self.beta_axis.points()
        omegas = self.omega_axis.points()
        for b, beta in enumerate(betas):
            for w, omega in enumerate(omegas):
                yield float(beta), float(omega), self.cells[b][w]

    def kinds(self) -> np.ndarray:
        return np.array([[cell.kind.value for cell in row] for row in self.cells])

    def count(self, kind: OutcomeKind) -> int:
        return sum(1 for row in self.cells for cell in row if cell.kind == kind)

    def to_frame(self) -> pd.DataFrame:
        rows = [
            {
                "beta": beta,
                "omega": omega,
                "kind": cell.kind.value,
                "survivors": cell.survivors,
                "amplitude": cell.amplitude,
                "period": cell.period,
            }
            for beta, omega, cell in self
        ]
        return pd.DataFrame(rows, columns=["beta", "omega", "kind", "survivors", "amplitude", "period"])


@dataclass(frozen=True, eq=False)
class XiMap:
    topology: Topology
    kind: HOIKind
    alpha_ab_axis: GridAxis
    alpha_other_axis: GridAxis
    xi: np.ndarray
    inner_grid: InnerGrid
    notes: Tuple[str, ...] = field(default_factory=tuple)

    def to_frame(self) -> pd.DataFrame:
        rows = []
        for p, ab in enumerate(self.alpha_ab_axis.points()):
            for q, other in enumerate(self.alpha_other_axis.points()):
                rows.append({"alpha_ab": float(ab), "alpha_other": float(other), "xi": float(self.xi[p, q])})
        return pd.DataFrame(rows, columns=["alpha_ab", "alpha_other", "xi"])


@dataclass(frozen=True)
class ExistenceRow:
    topology: Topology
    kind: HOIKind
    pair: DistinguishedPair
    oscillates: bool
    # 진동이 처음 발견된 (α_hat, α_other), 없으면 None
    witness: Optional[Tuple[float, float]] = None
    probes: Tuple[Tuple[float, float], ...] = ()

    @property
    def key(self) -> Tuple[str, str, str]:
        return self.topology.value, self.kind.value, self.pair.value

    @property
    def published(self) -> bool:
        return thresholds.published_existence[self.key]


@dataclass(frozen=True)
class ExistenceTable:
    rows: Tuple[ExistenceRow, ...]
    notes: Tuple[str, ...] = ()

    def mismatches(self) -> List[ExistenceRow]:
        return [row for row in self.rows if row.oscillates != row.published]

    def lookup(self) -> Dict[Tuple[str, str, str], bool]:
        return {row.key: row.oscillates for row in self.rows}

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [
                {
                    "topology": row.topology.value,
                    "hoi_kind": row.kind.value,
                    "distinguished_pair": row.pair.value,
                    "oscillates": row.oscillates,
                }
                for row in self.rows
            ],
            columns=["topology", "hoi_kind", "distinguished_pair", "oscillates"],
        )
