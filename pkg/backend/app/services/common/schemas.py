# common/schemas.py
from enum import Enum


# ─────────────────────────────────────────────
# 1) 네트워크 구성
class Topology(str, Enum):
    """페어와이즈 상호작용 위상. TransitiveX 는 X 가 변경자(modifier)"""

    TRANSITIVE_A = "transitive-a"
    TRANSITIVE_B = "transitive-b"
    TRANSITIVE_C = "transitive-c"
    INTRANSITIVE = "intransitive"


class HOIKind(str, Enum):
    """HOI 형태: 대칭(⇌) / 첫 번째 종만 영향(→ABC) / 두 번째 종만 영향(→BAC)"""

    SYMMETRIC = "sym"
    ASYM_AFFECTED_FIRST = "asym-ab"
    ASYM_AFFECTED_SECOND = "asym-ba"


class DistinguishedPair(str, Enum):
    """α 값이 나머지 두 쌍과 다른 쌍 (ÂB, ÂC, B̂C)"""

    AB = "AB"
    AC = "AC"
    BC = "BC"


# ─────────────────────────────────────────────
# 2) 시뮬레이션 / 분류 결과
class Termination(str, Enum):
    CONVERGED = "converged"
    HORIZON_REACHED = "horizon"
    DIVERGED = "diverged"
    ALL_EXTINCT = "allextinct"


class OutcomeKind(str, Enum):
    FIXED_POINT = "fixedpoint"
    LIMIT_CYCLE = "limitcycle"
    UNBOUNDED = "unbounded"
    ALL_EXTINCT = "allextinct"
    # 스윕 셀 실패 기록용
    ERROR = "error"


class RegimeLabel(str, Enum):
    INTRANSITIVE = "intransitive"
    TRANSITIVE = "transitive"
    NEUTRAL = "neutral"


class InteractionRegime(str, Enum):
    """평형 변경자 값에 따른 원래 상호작용의 상태"""

    STRENGTHENED = "strengthened"
    UNCHANGED = "unchanged"
    WEAKENED = "weakened"
    NULLIFIED = "nullified"
    REVERSED = "reversed"
