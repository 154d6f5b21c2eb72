import logging
import sys
from pathlib import Path
from typing import Any, Dict, Optional

# 경로 설정 - main.py가 어디서 실행되든 작동하도록
current_file = Path(__file__).resolve()
app_dir = current_file.parent  # backend/app
backend_dir = app_dir.parent    # backend

# backend를 Python 경로에 추가하여 app.* 형태로 import 가능하게 함
if str(backend_dir) not in sys.path:
    sys.path.insert(0, str(backend_dir))

import typer
from rich.console import Console
from rich.table import Table

from app.api.commands import parse_config, run
from app.config.settings import LOG_LEVELS, RuntimeSettings
from app.services.common import ConfigError
from app.services.dynamics import NUMBA_AVAILABLE

console = Console()

app = typer.Typer(
    name="hoi",
    help="3종 Lotka-Volterra 네트워크와 속도 조절 HOI 변경자 시뮬레이션",
    add_completion=False,
    no_args_is_help=True,
)

_state: Dict[str, Any] = {"settings": None}


def setup_logging(level: str) -> None:
    """로깅 설정 - 터미널에서 모든 로그 보이도록"""
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format='%(asctime)s | %(levelname)-8s | %(name)s | %(message)s',
        datefmt='%H:%M:%S',
        handlers=[
            logging.StreamHandler(sys.stdout)
        ],
        force=True  # 기존 로거 설정을 강제로 덮어쓰기
    )
    logging.getLogger("numba").setLevel(logging.WARNING)


@app.callback()
def main(
    log_level: Optional[str] = typer.Option(None, "--log-level", help=f"{'|'.join(LOG_LEVELS)} (기본 HOI_LOG_LEVEL 또는 INFO)"),
    progress: Optional[bool] = typer.Option(None, "--progress/--no-progress", help="스윕 진행 표시줄"),
):
    try:
        overrides = {k: v for k, v in {"log_level": log_level, "progress": progress}.items() if v is not None}
        settings = RuntimeSettings(**overrides)
    except Exception as e:
        console.print(f"[red]설정 오류:[/red] {e}")
        raise typer.Exit(code=1)
    setup_logging(settings.log_level)
    if not NUMBA_AVAILABLE:
        logging.getLogger(__name__).warning("numba 미설치 - 적분이 매우 느릴 수 있습니다")
    _state["settings"] = settings


def _print_summary(command: str, summary: Dict[str, Any]) -> None:
    table = Table(title=f"{command} 결과", show_header=True)
    table.add_column("항목")
    table.add_column("값")
    for key, value in summary.items():
        table.add_row(str(key), str(value))
    console.print(table)


def _dispatch(command: str, config_file: Optional[Path], overrides: Dict[str, Any]) -> None:
    try:
        text = config_file.read_text(encoding="utf-8") if config_file is not None else "{}"
        config = parse_config(text, overrides)
    except (ConfigError, OSError) as e:
        console.print(f"[red]설정 오류:[/red] {e}")
        raise typer.Exit(code=1)
    status = run(command, config, _state["settings"], on_success=lambda s: _print_summary(command, s))
    raise typer.Exit(code=status)


# ─────────────────────────────────────────────
# 공통 옵션
ConfigOpt = typer.Option(None, "--config", help="JSON 설정 파일 또는 manifest.json")
OutOpt = typer.Option(None, "--out", help="출력 디렉토리")
WorkersOpt = typer.Option(None, "--workers", help="작업자 수 (기본: 사용 가능한 CPU 수)")
TopologyOpt = typer.Option(None, "--topology", help="transitive-a|transitive-b|transitive-c|intransitive")
HoiOpt = typer.Option(None, "--hoi", help="sym|asym-ab|asym-ba")
AlphaOpt = typer.Option(None, "--alpha", help="동일 |α| 크기")
BetaOpt = typer.Option(None, "--beta", help="변경 강도 β")
OmegaOpt = typer.Option(None, "--omega", help="변경 속도 ω")
DtOpt = typer.Option(None, "--dt", help="오일러 시간 간격")
HorizonOpt = typer.Option(None, "--horizon", help="적분 길이 (기본: 10000, ω < 1 이면 10000/ω)")
ThresholdOpt = typer.Option(None, "--extinction-threshold", help="멸종 임계값")


def _model_overrides(topology, hoi, alpha, beta, omega) -> Dict[str, Any]:
    return {
        "topology": topology,
        "hoi_kind": hoi,
        "alpha": alpha,
        "beta": beta,
        "omega": omega,
    }


@app.command("simulate")
def simulate_cmd(
    config: Optional[Path] = ConfigOpt, out: Optional[str] = OutOpt,
    topology: Optional[str] = TopologyOpt, hoi: Optional[str] = HoiOpt,
    alpha: Optional[float] = AlphaOpt, beta: Optional[float] = BetaOpt, omega: Optional[float] = OmegaOpt,
    dt: Optional[float] = DtOpt, horizon: Optional[float] = HorizonOpt,
    extinction_threshold: Optional[float] = ThresholdOpt,
):
    """궤적 하나를 적분하고 분류 (trajectory.csv, outcome.json)"""
    overrides = _model_overrides(topology, hoi, alpha, beta, omega)
    overrides.update(out=out, dt=dt, horizon=horizon, extinction_threshold=extinction_threshold)
    _dispatch("simulate", config, overrides)


@app.command("sweep")
def sweep_cmd(
    config: Optional[Path] = ConfigOpt, out: Optional[str] = OutOpt, workers: Optional[int] = WorkersOpt,
    topology: Optional[str] = TopologyOpt, hoi: Optional[str] = HoiOpt, alpha: Optional[float] = AlphaOpt,
    dt: Optional[float] = DtOpt, horizon: Optional[float] = HorizonOpt,
    extinction_threshold: Optional[float] = ThresholdOpt,
):
    """(β, ω) 격자 스윕 (heatmap.csv)"""
    overrides = _model_overrides(topology, hoi, alpha, None, None)
    overrides.update(out=out, workers=workers, dt=dt, horizon=horizon, extinction_threshold=extinction_threshold)
    _dispatch("sweep", config, overrides)


@app.command("xi-map")
def xi_map_cmd(
    config: Optional[Path] = ConfigOpt, out: Optional[str] = OutOpt, workers: Optional[int] = WorkersOpt,
    topology: Optional[str] = TopologyOpt, hoi: Optional[str] = HoiOpt,
    horizon: Optional[float] = HorizonOpt,
):
    """비동일 α 픽셀별 진동 확률 ξ (xi.csv)"""
    overrides = _model_overrides(topology, hoi, None, None, None)
    overrides.update(out=out, workers=workers, horizon=horizon)
    _dispatch("xi-map", config, overrides)


@app.command("equilibrium")
def equilibrium_cmd(
    config: Optional[Path] = ConfigOpt, out: Optional[str] = OutOpt,
    topology: Optional[str] = TopologyOpt, hoi: Optional[str] = HoiOpt,
    alpha: Optional[float] = AlphaOpt, beta: Optional[float] = BetaOpt, omega: Optional[float] = OmegaOpt,
):
    """정상 상태와 야코비안 고유값 (equilibrium.json)"""
    overrides = _model_overrides(topology, hoi, alpha, beta, omega)
    overrides.update(out=out)
    _dispatch("equilibrium", config, overrides)


@app.command("bifurcation")
def bifurcation_cmd(
    config: Optional[Path] = ConfigOpt, out: Optional[str] = OutOpt,
    topology: Optional[str] = TopologyOpt, hoi: Optional[str] = HoiOpt,
    alpha: Optional[float] = AlphaOpt,
):
    """m = 0 무효화 분기점 β* (bifurcation.json)"""
    overrides = _model_overrides(topology, hoi, alpha, None, None)
    overrides.update(out=out)
    _dispatch("bifurcation", config, overrides)


@app.command("table-s1")
def table_s1_cmd(
    config: Optional[Path] = ConfigOpt, out: Optional[str] = OutOpt, workers: Optional[int] = WorkersOpt,
    horizon: Optional[float] = HorizonOpt,
):
    """36 조합 진동 존재표 (table_s1.csv)"""
    _dispatch("table-s1", config, {"out": out, "workers": workers, "horizon": horizon})


@app.command("min-alpha")
def min_alpha_cmd(
    config: Optional[Path] = ConfigOpt, out: Optional[str] = OutOpt, workers: Optional[int] = WorkersOpt,
    topology: Optional[str] = TopologyOpt, hoi: Optional[str] = HoiOpt,
    horizon: Optional[float] = HorizonOpt,
):
    """진동이 나타나는 최소 α 이분 탐색 (min_alpha.json)"""
    overrides = _model_overrides(topology, hoi, None, None, None)
    overrides.update(out=out, workers=workers, horizon=horizon)
    _dispatch("min-alpha", config, overrides)


# 메인 실행
if __name__ == "__main__":
    app()
