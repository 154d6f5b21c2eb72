"""
dynamics package
변경자 동역학 우변 계산과 오일러 적분
"""
from .integrator import (
    IntegratorConfig,
    SystemState,
    Trajectory,
    RichardsonReport,
    rhs,
    glvm_rhs,
    simple_hoi_rhs,
    modifier_equilibrium,
    detect_convergence,
    euler_step,
    simulate,
    integrate_frozen,
    richardson_check,
)
from .trajectory_io import write_trajectory_csv, read_trajectory_csv, trajectory_frame
from .kernels import NUMBA_AVAILABLE

__all__ = [
    "IntegratorConfig", "SystemState", "Trajectory", "RichardsonReport",
    "rhs", "glvm_rhs", "simple_hoi_rhs", "modifier_equilibrium",
    "detect_convergence", "euler_step", "simulate", "integrate_frozen",
    "richardson_check", "write_trajectory_csv", "read_trajectory_csv",
    "trajectory_frame", "NUMBA_AVAILABLE",
]
