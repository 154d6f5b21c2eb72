"""
오일러 적분 커널

numba 가 있으면 njit 로 컴파일하고, 없으면 같은 코드를 파이썬으로 실행합니다.
두 경로 모두 연산 순서가 같으므로 결과도 같습니다.
"""
import logging

import numpy as np

logger = logging.getLogger(__name__)

try:
    from numba import njit
    NUMBA_AVAILABLE = True
except ImportError:
    NUMBA_AVAILABLE = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]):
            return args[0]
        return lambda func: func

    logger.warning("numba 를 찾을 수 없습니다 - 순수 파이썬 커널로 동작 (느림)")

STATUS_OK = 0
STATUS_DIVERGED = 1
STATUS_NONFINITE = 2
STATUS_ALL_EXTINCT = 3
STATUS_OVERSHOOT = 4


@njit(cache=True)
def derivatives(n, m, alpha, slot, mod_k, mod_beta, omega, evolve, dn, dm):
    """dn_i = n_i (1 - n_i + Σ_j α_ij m_eff(i,j) n_j),  dm_h = ω (1 - m_h + β_h n_k)

    변경되지 않은 쌍은 m_eff = 1. evolve 가 False 이면 dm = 0 (변경자 고정).
    """
    size = n.shape[0]
    for i in range(size):
        acc = 1.0 - n[i]
        for j in range(size):
            a = alpha[i, j]
            if a != 0.0:
                h = slot[i, j]
                if h >= 0:
                    acc += a * m[h] * n[j]
                else:
                    acc += a * n[j]
        dn[i] = n[i] * acc
    for h in range(m.shape[0]):
        if evolve:
            dm[h] = omega * (1.0 - m[h] + mod_beta[h] * n[mod_k[h]])
        else:
            dm[h] = 0.0


@njit(cache=True)
def advance(n, m, alpha, slot, mod_k, mod_beta, omega, evolve,
            dt, threshold, cap, nsteps, dn, dm):
    """n, m 을 제자리에서 최대 nsteps 만큼 전진

    살아 있는 종이 한 스텝 만에 0 아래로 넘어가면 스텝을 적용하지 않고 STATUS_OVERSHOOT 를 돌려줌.
    이때 n, m 은 마지막 유효 스텝의 값을 유지함.

    Returns:
        (수행한 스텝 수, 상태 코드)
    """
    size = n.shape[0]
    for step in range(nsteps):
        derivatives(n, m, alpha, slot, mod_k, mod_beta, omega, evolve, dn, dm)
        for i in range(size):
            if n[i] > threshold and not (n[i] + dt * dn[i] >= 0.0):
                return step, STATUS_OVERSHOOT
        for i in range(size):
            n[i] = n[i] + dt * dn[i]
        for h in range(m.shape[0]):
            m[h] = m[h] + dt * dm[h]

        status = STATUS_OK
        alive = 0
        for i in range(size):
            v = n[i]
            if not np.isfinite(v):
                status = STATUS_NONFINITE
            elif v >= cap:
                if status == STATUS_OK:
                    status = STATUS_DIVERGED
            elif v <= threshold:
                # 멸종은 흡수 상태
                n[i] = 0.0
            else:
                alive += 1
        for h in range(m.shape[0]):
            if not np.isfinite(m[h]):
                status = STATUS_NONFINITE
        if status != STATUS_OK:
            return step + 1, status
        if alive == 0:
            return step + 1, STATUS_ALL_EXTINCT
    return nsteps, STATUS_OK


@njit(cache=True)
def instantaneous_derivatives(n, alpha, slot, mod_k, mod_beta, dn):
    """즉시 HOI 모델: Σ_j (α_ij n_j + α_ij β n_j n_k) 항을 더함"""
    size = n.shape[0]
    for i in range(size):
        acc = 1.0 - n[i]
        for j in range(size):
            a = alpha[i, j]
            if a != 0.0:
                acc += a * n[j]
                h = slot[i, j]
                if h >= 0:
                    acc += a * mod_beta[h] * n[j] * n[mod_k[h]]
        dn[i] = n[i] * acc
