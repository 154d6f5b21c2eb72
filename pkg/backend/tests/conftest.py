"""
공통 픽스처

느린 재현 테스트(@pytest.mark.slow)는 --runslow 를 줄 때만 실행합니다.
"""
import sys
from pathlib import Path

import pytest

backend_dir = Path(__file__).resolve().parent.parent
if str(backend_dir) not in sys.path:
    sys.path.insert(0, str(backend_dir))

from app.services.common import HOIKind, Topology
from app.services.dynamics import IntegratorConfig
from app.services.netmodel import build_canonical


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run slow reproduction tests")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def intransitive_sym():
    """α = 2 비전이 대칭 시스템 (β 는 with_beta 로 지정)"""
    return build_canonical(Topology.INTRANSITIVE, HOIKind.SYMMETRIC, 2.0)


@pytest.fixture
def short_config():
    """수렴 판정 전에 끝나지 않도록 짧게 잡은 적분 설정"""
    return IntegratorConfig(omega=1.0, horizon=30.0, sample_stride=10)
