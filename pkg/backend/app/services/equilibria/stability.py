"""
선형 안정성: (n, m) 전체 벡터장의 중심차분 야코비안 고유값
"""
import logging
from dataclasses import dataclass
from typing import Any, Dict

import numpy as np
from scipy import linalg

from ..common.errors import PreconditionError
from ..dynamics.integrator import SystemState, rhs
from ..netmodel.network import SystemSpec
from ..tools import thresholds

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class StabilityReport:
    eigenvalues: np.ndarray
    max_real_part: float

    @property
    def stable(self) -> bool:
        return self.max_real_part < 0

    def to_record(self) -> Dict[str, Any]:
        return {
            "eigenvalues": [{"re": float(z.real), "im": float(z.imag)} for z in self.eigenvalues],
            "max_real_part": self.max_real_part,
        }


def _field(spec: SystemSpec, omega: float, x: np.ndarray) -> np.ndarray:
    n = x[:spec.n_species]
    m = x[spec.n_species:]
    dn, dm = rhs(spec, SystemState(n, m), omega)
    return np.concatenate([dn, dm])


def numerical_jacobian(spec: SystemSpec, omega: float, x: np.ndarray,
                       step: float = thresholds.solver_defaults['jacobian_step']) -> np.ndarray:
    size = x.shape[0]
    jac = np.empty((size, size))
    for j in range(size):
        h = step * max(abs(x[j]), 1.0)
        forward = x.copy()
        backward = x.copy()
        forward[j] += h
        backward[j] -= h
        jac[:, j] = (_field(spec, omega, forward) - _field(spec, omega, backward)) / (2 * h)
    return jac


def jacobian_eigenvalues(
    spec: SystemSpec,
    omega: float,
    point,
    tol: float = thresholds.solver_defaults['equilibrium_tol'],
) -> StabilityReport:
    x = np.concatenate([np.asarray(point.n, dtype=float), np.asarray(point.m, dtype=float)])
    residual = float(np.max(np.abs(_field(spec, omega, x))))
    if not residual < tol:
        raise PreconditionError(f"point is not an equilibrium: residual {residual:.3e} >= {tol:g}")
    eigenvalues = np.sort_complex(linalg.eigvals(numerical_jacobian(spec, omega, x)))
    max_real = float(np.max(eigenvalues.real))
    logger.debug(f"안정성: max Re = {max_real:.6g} (omega={omega})")
    return StabilityReport(eigenvalues, max_real)
