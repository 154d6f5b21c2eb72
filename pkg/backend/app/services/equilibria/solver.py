"""
정상 상태 해 찾기 (감쇠 뉴턴)

미지수: 고정되지 않은 종의 개체수와 고정되지 않은 변경자 값.
방정식: 종별 괄호 항 1 - n_i + Σ_j α_ij m_eff n_j = 0 (n_i ≠ 0 인 내부 해),
        변경자 1 - m + β n_k = 0 (ω 로 나눈 형태라 ω 와 무관).
수렴 판정은 dynamics.rhs 로 계산한 전체 잔차로 합니다.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, Optional, Sequence, Tuple, Union

import numpy as np
from scipy import linalg

from ..common.errors import SolverError
from ..dynamics.integrator import SystemState, rhs
from ..netmodel.network import SystemSpec
from ..tools import thresholds

logger = logging.getLogger(__name__)

_defaults = thresholds.solver_defaults


@dataclass(frozen=True, eq=False)
class EquilibriumPoint:
    n: np.ndarray
    m: np.ndarray
    residual_norm: float = float("nan")
    converged: bool = True
    iterations: int = 0
    warnings: Tuple[str, ...] = field(default_factory=tuple)

    @classmethod
    def of(cls, n: Sequence[float], m: Union[float, Sequence[float]] = ()) -> "EquilibriumPoint":
        return cls(np.array(n, dtype=float), np.atleast_1d(np.array(m, dtype=float)))

    @property
    def vector(self) -> np.ndarray:
        return np.concatenate([self.n, self.m])


def steady_state_residual(spec: SystemSpec, omega: float, point) -> np.ndarray:
    """변경자 모델 우변을 (dn, dm) 순서로 이어 붙인 벡터"""
    dn, dm = rhs(spec, SystemState(np.asarray(point.n, dtype=float), np.asarray(point.m, dtype=float)), omega)
    return np.concatenate([dn, dm])


def residual_norm(spec: SystemSpec, omega: float, n: np.ndarray, m: np.ndarray, modifiers=None) -> float:
    """잔차 max-norm. modifiers 가 주어지면 해당 변경자 성분만 포함"""
    residual = steady_state_residual(spec, omega, SystemState(n, m))
    if modifiers is not None:
        residual = np.concatenate([residual[:spec.n_species], residual[spec.n_species:][list(modifiers)]])
    return float(np.max(np.abs(residual)))


class _ReducedSystem:
    """고정 종 / 고정 변경자를 제외한 미지수에 대한 괄호 형태 방정식"""

    def __init__(self, spec: SystemSpec, fixed_zero: Iterable[int], frozen: Dict[int, float]):
        self.spec = spec
        self.alpha, self.slot, self.mod_k, self.mod_beta = spec.kernel_arrays
        zero = set(int(i) for i in fixed_zero)
        self.free_species = [i for i in range(spec.n_species) if i not in zero]
        self.free_modifiers = [h for h in range(spec.n_modifiers) if h not in frozen]
        self.frozen = dict(frozen)

    def unpack(self, x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        n = np.zeros(self.spec.n_species)
        m = np.zeros(self.spec.n_modifiers)
        k = len(self.free_species)
        n[self.free_species] = x[:k]
        for h, value in self.frozen.items():
            m[h] = value
        m[self.free_modifiers] = x[k:]
        return n, m

    def pack(self, n: np.ndarray, m: np.ndarray) -> np.ndarray:
        return np.concatenate([np.asarray(n)[self.free_species], np.asarray(m)[self.free_modifiers]])

    def equations(self, x: np.ndarray) -> np.ndarray:
        n, m = self.unpack(x)
        out = np.empty(x.shape[0])
        for row, i in enumerate(self.free_species):
            acc = 1.0 - n[i]
            for j in range(self.spec.n_species):
                a = self.alpha[i, j]
                if a != 0.0:
                    h = self.slot[i, j]
                    acc += a * (m[h] if h >= 0 else 1.0) * n[j]
            out[row] = acc
        offset = len(self.free_species)
        for row, h in enumerate(self.free_modifiers):
            out[offset + row] = 1.0 - m[h] + self.mod_beta[h] * n[self.mod_k[h]]
        return out

    def jacobian(self, x: np.ndarray, step: float) -> np.ndarray:
        size = x.shape[0]
        jac = np.empty((size, size))
        for j in range(size):
            h = step * max(abs(x[j]), 1.0)
            forward = x.copy()
            backward = x.copy()
            forward[j] += h
            backward[j] -= h
            jac[:, j] = (self.equations(forward) - self.equations(backward)) / (2 * h)
        return jac


def _as_guess(spec: SystemSpec, guess) -> Tuple[np.ndarray, np.ndarray]:
    if guess is None:
        return np.ones(spec.n_species), np.ones(spec.n_modifiers)
    n = np.array(guess.n, dtype=float)
    m = np.broadcast_to(np.asarray(guess.m, dtype=float), (spec.n_modifiers,)).copy()
    if not (np.all(np.isfinite(n)) and np.all(np.isfinite(m))):
        raise SolverError("guess must be finite", iterate=np.concatenate([n, m]))
    return n, m


def solve_steady_state(
    spec: SystemSpec,
    omega: float = 1.0,
    guess=None,
    tol: float = _defaults['tol'],
    max_iter: int = _defaults['max_iter'],
    fixed_zero: Iterable[int] = (),
    frozen_modifiers: Optional[Dict[int, float]] = None,
) -> EquilibriumPoint:
    """유한차분 야코비안을 쓰는 감쇠 뉴턴법

    잔차가 줄지 않으면 스텝을 최대 max_halvings 번 절반으로 줄입니다.
    max_iter 안에 수렴하지 않으면 converged=False 인 결과를 돌려줍니다.
    """
    if tol <= 0:
        raise SolverError(f"tol must be positive, got {tol}")
    system = _ReducedSystem(spec, fixed_zero, frozen_modifiers or {})
    n0, m0 = _as_guess(spec, guess)
    x = system.pack(n0, m0)
    step = _defaults['fd_step']
    max_halvings = _defaults['max_halvings']

    f = system.equations(x)
    f_norm = float(np.max(np.abs(f))) if f.size else 0.0
    converged = False
    iterations = 0

    for iterations in range(0, max_iter + 1):
        n, m = system.unpack(x)
        if f_norm < tol and residual_norm(spec, omega, n, m, system.free_modifiers) < tol:
            converged = True
            break
        if iterations == max_iter:
            break

        jac = system.jacobian(x, step)
        try:
            delta = linalg.solve(jac, -f)
        except linalg.LinAlgError as exc:
            raise SolverError(f"singular Jacobian at iteration {iterations}: {exc}", iterate=x.copy())
        if not np.all(np.isfinite(delta)):
            raise SolverError(f"non-finite Newton step at iteration {iterations}", iterate=x.copy())

        lam = 1.0
        for _ in range(max_halvings + 1):
            candidate = x + lam * delta
            f_new = system.equations(candidate)
            f_new_norm = float(np.max(np.abs(f_new)))
            if np.isfinite(f_new_norm) and f_new_norm < f_norm:
                break
            lam *= 0.5
        else:
            logger.warning(f"뉴턴 감쇠 실패: 잔차 {f_norm:.3e} 에서 정체 (iteration {iterations})")
            break
        x, f, f_norm = candidate, f_new, f_new_norm
        logger.debug(f"뉴턴 {iterations}: |F| = {f_norm:.3e}, λ = {lam}")

    n, m = system.unpack(x)
    residual = residual_norm(spec, omega, n, m, system.free_modifiers)
    notes = []
    if not converged:
        notes.append(f"no convergence after {iterations} iterations (residual {residual:.3e})")
        logger.warning(f"정상 상태 미수렴: {notes[-1]}")
    negative = np.flatnonzero(n < 0)
    for i in negative:
        notes.append(f"negative abundance n[{spec.species_labels[i]}] = {n[i]:.6g}")
    if negative.size:
        logger.warning(f"음수 개체수 평형점: {notes[-len(negative):]}")
    return EquilibriumPoint(n, m, residual, converged, iterations, tuple(notes))


def boundary_equilibrium(
    spec: SystemSpec,
    omega: float,
    extinct: Iterable[int],
    guess=None,
    tol: float = _defaults['tol'],
) -> EquilibriumPoint:
    """extinct 종을 0 으로 고정한 축소 시스템의 평형점"""
    return solve_steady_state(spec, omega, guess, tol=tol, fixed_zero=tuple(extinct))
