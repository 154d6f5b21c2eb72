"""
실행 환경 설정

작업자 수, 로그 레벨, 진행 표시줄처럼 수치 결과에 영향을 주지 않는 값만 다룹니다.
환경변수 접두사는 HOI_ 이며 프로젝트 루트의 .env 를 먼저 읽습니다.
"""
import os
from typing import Optional

from dotenv import load_dotenv
from joblib import cpu_count
from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

# 루트 폴더의 .env 파일 경로
WORKSPACE_ROOT = os.path.dirname(os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))))
DOTENV_PATH = os.path.join(WORKSPACE_ROOT, '.env')
load_dotenv(DOTENV_PATH)

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class RuntimeSettings(BaseSettings):
    """HOI_WORKERS, HOI_LOG_LEVEL, HOI_PROGRESS"""

    model_config = SettingsConfigDict(env_prefix="HOI_", extra="ignore")

    workers: Optional[int] = None
    log_level: str = "INFO"
    progress: bool = False

    @field_validator("workers")
    @classmethod
    def _workers_positive(cls, v: Optional[int]) -> Optional[int]:
        if v is not None and v < 1:
            raise ValueError("workers must be at least 1")
        return v

    @field_validator("log_level")
    @classmethod
    def _known_level(cls, v: str) -> str:
        level = v.upper()
        if level not in LOG_LEVELS:
            raise ValueError(f"log_level must be one of {', '.join(LOG_LEVELS)}")
        return level

    def resolved_workers(self, requested: Optional[int] = None) -> int:
        """명시 값 > HOI_WORKERS > 사용 가능한 CPU 수"""
        if requested is not None:
            return requested
        if self.workers is not None:
            return self.workers
        return max(1, cpu_count())


def get_settings() -> RuntimeSettings:
    return RuntimeSettings()
