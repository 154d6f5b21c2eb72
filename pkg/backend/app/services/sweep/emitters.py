"""
스윕 결과 CSV 출력 (pandas)
"""
import logging
from pathlib import Path
from typing import Union

import pandas as pd

from .grid import ExistenceTable, OutcomeGrid, XiMap

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"


def _write(frame: pd.DataFrame, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    logger.info(f"CSV 저장: {path} ({len(frame)} rows)")
    return path


def write_heatmap_csv(grid: OutcomeGrid, path: Union[str, Path]) -> Path:
    return _write(grid.to_frame(), path)


def write_xi_csv(xi: XiMap, path: Union[str, Path]) -> Path:
    return _write(xi.to_frame(), path)


def write_table_csv(table: ExistenceTable, path: Union[str, Path]) -> Path:
    return _write(table.to_frame(), path)
