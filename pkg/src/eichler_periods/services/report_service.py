"""
Aggregation of verification reports
"""

from typing import Any, Dict, List

from ..models import VerificationReport


class ReportService:
    """Service collecting reports and summarizing pass rates"""

    def __init__(self):
        self.reports: List[VerificationReport] = []

    def add(self, report: VerificationReport) -> VerificationReport:
        self.reports.append(report)
        return report

    def get_summary(self) -> Dict[str, Any]:
        total = len(self.reports)
        passed = len([r for r in self.reports if r.passed])
        failed = total - passed
        worst = max((r.max_deviation for r in self.reports), default=0.0)
        pass_rate = (passed / total * 100) if total > 0 else 0

        return {
            "total": total,
            "passed": passed,
            "failed": failed,
            "worst_deviation": worst,
            "pass_rate": round(pass_rate, 1),
        }

    def failed_reports(self) -> List[VerificationReport]:
        return [r for r in self.reports if not r.passed]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "summary": self.get_summary(),
            "reports": [r.to_dict() for r in self.reports],
        }
