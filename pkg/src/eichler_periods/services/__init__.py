"""
Services package for Eichler Periods
"""

from .coefficient_cache_service import CoefficientCacheService
from .report_service import ReportService

__all__ = ["CoefficientCacheService", "ReportService"]
