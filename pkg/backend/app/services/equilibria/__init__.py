"""
equilibria package
정상 상태, 닫힌 형태 해, m = 0 분기점, 선형 안정성
"""
from .solver import EquilibriumPoint, residual_norm, steady_state_residual, solve_steady_state, boundary_equilibrium
from .closed_form import BifurcationResult, closed_form_equilibrium, nullification_bifurcation, interaction_regime
from .stability import StabilityReport, jacobian_eigenvalues, numerical_jacobian

__all__ = [
    "EquilibriumPoint", "residual_norm", "steady_state_residual", "solve_steady_state", "boundary_equilibrium",
    "BifurcationResult", "closed_form_equilibrium", "nullification_bifurcation",
    "interaction_regime", "StabilityReport", "jacobian_eigenvalues", "numerical_jacobian",
]
