"""
Tools package
수치 기본값과 임계값
"""
from . import thresholds

__all__ = ['thresholds']
