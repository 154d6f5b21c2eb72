"""
sweep package
(β, ω) 격자 스윕, 진동 확률 ξ, 진동 존재표, 최소 α 탐색
"""
from .grid import (
    GridAxis,
    InnerGrid,
    OutcomeGrid,
    XiMap,
    ExistenceRow,
    ExistenceTable,
    beta_axis,
    omega_axis,
)
from .runner import (
    run_cells,
    sweep_beta_omega,
    sweep_inner,
    oscillation_probability,
    limit_cycle_mask,
    coexistence_map,
    fast_side_threshold,
)
from .probes import (
    xi_map,
    probe_pairs,
    existence_row,
    existence_table,
    min_alpha_for_oscillation,
)
from .emitters import write_heatmap_csv, write_xi_csv, write_table_csv

__all__ = [
    "GridAxis", "InnerGrid", "OutcomeGrid", "XiMap", "ExistenceRow", "ExistenceTable",
    "beta_axis", "omega_axis",
    "run_cells", "sweep_beta_omega", "sweep_inner", "oscillation_probability",
    "limit_cycle_mask", "coexistence_map", "fast_side_threshold",
    "xi_map", "probe_pairs", "existence_row", "existence_table", "min_alpha_for_oscillation",
    "write_heatmap_csv", "write_xi_csv", "write_table_csv",
]
