"""
공통 예외 정의

검증 계열(종료 코드 1)과 수치 계산 계열(종료 코드 2)로 나뉩니다.
CLI는 이 분류만 보고 종료 코드를 결정합니다.
"""
from typing import Any, Optional


class HoiError(Exception):
    """모든 도메인 예외의 기반 클래스"""

    exit_code: int = 2


# ─────────────────────────────────────────────
# 검증 계열
class SpecValidationError(HoiError):
    """네트워크 정의(SystemSpec) 또는 입력 값 오류"""

    exit_code = 1


class ConfigError(HoiError):
    """설정 문서 오류 (경로가 포함된 메시지)"""

    exit_code = 1


# ─────────────────────────────────────────────
# 수치 계산 계열
class EvaluationError(HoiError):
    """우변 계산 불가 (비유한 상태 등)"""


class DivergenceError(HoiError):
    """적분 중 발산 또는 오버플로"""

    def __init__(self, message: str, state: Optional[Any] = None):
        super().__init__(message)
        self.state = state


class ClassificationError(HoiError):
    """궤적 분류 불가"""


class SolverError(HoiError):
    """뉴턴 반복 실패 (특이 야코비안 등)"""

    def __init__(self, message: str, iterate: Optional[Any] = None):
        super().__init__(message)
        self.iterate = iterate


class DomainError(HoiError):
    """닫힌 해의 유효 범위를 벗어난 파라미터"""


class PreconditionError(HoiError):
    """사전 조건 위반 (평형점이 아닌 점에서의 안정성 분석 등)"""


class UnsupportedSpecError(HoiError):
    """해당 연산이 지원하지 않는 네트워크 구성"""


class InvalidBracketError(HoiError):
    """이분법 구간 양끝의 판정이 올바르지 않음"""


class BifurcationError(HoiError):
    """양의 개체수 해가 없는 분기점 계산"""
