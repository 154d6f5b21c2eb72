"""
netmodel package
상호작용 네트워크와 HOI 정의, 표준 시스템 생성
"""
from .network import HOISpec, SystemSpec, validate, cyclic_relabel, relabel_vector
from .builders import build_canonical, canonical_alpha, canonical_hoi, distinguished_alphas

__all__ = [
    "HOISpec", "SystemSpec", "validate", "cyclic_relabel", "relabel_vector",
    "build_canonical", "canonical_alpha", "canonical_hoi", "distinguished_alphas",
]
