"""
궤적 CSV 입출력

헤더 `t,n_A,n_B,n_C,m_AB`, 17 유효숫자, 마지막 줄 `# termination=<reason>`.
"""
import logging
from pathlib import Path
from typing import Tuple, Union

import pandas as pd

from ..common.schemas import Termination
from .integrator import Trajectory

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"


def trajectory_frame(traj: Trajectory) -> pd.DataFrame:
    n_species = traj.n.shape[1]
    if traj.spec is not None:
        species = traj.spec.species_labels
        modifiers = traj.spec.modifier_labels
    else:
        species = [chr(ord("A") + i) for i in range(n_species)]
        modifiers = [f"m_{h}" for h in range(traj.m.shape[1])]
    frame = pd.DataFrame({"t": traj.times})
    for i, label in enumerate(species):
        frame[f"n_{label}"] = traj.n[:, i]
    for h, label in enumerate(modifiers):
        frame[label] = traj.m[:, h]
    return frame


def write_trajectory_csv(traj: Trajectory, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as handle:
        trajectory_frame(traj).to_csv(handle, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
        handle.write(f"# termination={traj.termination.value}\n")
    logger.info(f"궤적 저장: {path} ({len(traj)} rows)")
    return path


def read_trajectory_csv(path: Union[str, Path]) -> Tuple[pd.DataFrame, Termination]:
    path = Path(path)
    termination = None
    with open(path, encoding="utf-8") as handle:
        for line in handle:
            if line.startswith("# termination="):
                termination = Termination(line.strip().split("=", 1)[1])
    if termination is None:
        raise ValueError(f"termination comment missing in {path}")
    frame = pd.read_csv(path, comment="#", float_precision="round_trip")
    return frame, termination
