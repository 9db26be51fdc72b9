"""
Tests for the coefficient cache and report services
"""

import json

import pytest

from eichler_periods.config import settings
from eichler_periods.models import VerificationReport
from eichler_periods.poincare import PoincareSpec, poincare_expansion
from eichler_periods.services import CoefficientCacheService, ReportService


@pytest.fixture
def json_cache(tmp_path):
    return CoefficientCacheService(use_redis=False, path=str(tmp_path / "cache.json"))


class TestReportService:
    def test_empty_summary(self):
        summary = ReportService().get_summary()
        assert summary == {"total": 0, "passed": 0, "failed": 0, "worst_deviation": 0.0, "pass_rate": 0}

    def test_summary(self):
        service = ReportService()
        service.add(VerificationReport("thm1", deviations={"a": 1e-9}, tolerances={"default": 1e-6}))
        service.add(VerificationReport("thm2", deviations={"a": 1e-2}, tolerances={"default": 1e-6}))
        service.add(VerificationReport("thm3", deviations={"a": 1e-7}, tolerances={"default": 1e-6}))
        summary = service.get_summary()
        assert summary["total"] == 3
        assert summary["passed"] == 2
        assert summary["failed"] == 1
        assert summary["worst_deviation"] == pytest.approx(1e-2)
        assert summary["pass_rate"] == 66.7
        assert [r.theorem for r in service.failed_reports()] == ["thm2"]

    def test_nan_deviation_fails(self):
        report = VerificationReport("thm2", deviations={"a": float("nan")}, tolerances={"default": 1.0})
        assert not report.passed

    def test_to_dict(self):
        service = ReportService()
        service.add(VerificationReport("thm1", "S", [1j], deviations={"a": 0.0}, tolerances={"default": 1e-6}))
        data = service.to_dict()
        assert data["summary"]["passed"] == 1
        assert data["reports"][0]["status"] == "passed"
        assert data["reports"][0]["points"] == [[0.0, 1.0]]
        json.dumps(data)


class TestCoefficientCacheService:
    def test_make_key(self):
        assert CoefficientCacheService.make_key("trivial", 12, -1, 300) == "poincare:trivial:12:-1:300"

    def test_put_get(self, json_cache, tmp_path):
        key = json_cache.make_key("trivial", 12, 1, 10)
        assert json_cache.get(key) is None
        assert json_cache.put(key, [[1.0, 0.0], [0.5, -2.0]])
        assert json_cache.get(key) == [[1.0, 0.0], [0.5, -2.0]]

        reopened = CoefficientCacheService(use_redis=False, path=str(tmp_path / "cache.json"))
        assert reopened.get(key) == [[1.0, 0.0], [0.5, -2.0]]

    def test_status_and_clear(self, json_cache):
        json_cache.put("poincare:trivial:12:1:10", [[1.0, 0.0]])
        status = json_cache.get_status()
        assert status["backend"] == "json"
        assert status["entries"] == 1

        result = json_cache.clear()
        assert result["success"]
        assert result["deleted"] == 1
        assert json_cache.get_status()["entries"] == 0

    def test_unreadable_file_ignored(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        cache = CoefficientCacheService(use_redis=False, path=str(path))
        assert cache.get("poincare:trivial:12:1:10") is None

    def test_redis_fallback(self, monkeypatch, tmp_path, capsys):
        monkeypatch.setattr(settings, "redis_host", "127.0.0.1")
        monkeypatch.setattr(settings, "redis_port", 1)
        cache = CoefficientCacheService(use_redis=True, path=str(tmp_path / "cache.json"))
        assert cache.get_client() is None
        assert "Falling back" in capsys.readouterr().err
        assert cache.put("poincare:trivial:12:1:10", [[2.0, 0.0]])
        assert cache.get_status()["backend"] == "json"

    def test_expansion_uses_cache(self, json_cache):
        spec = PoincareSpec(-1, 12, c_max=5)
        first = poincare_expansion(spec, 3, c_max=5, cache=json_cache)
        key = json_cache.make_key("trivial", 12, -1, 5)
        assert len(json_cache.get(key)) == 5
        second = poincare_expansion(spec, 3, c_max=5, cache=json_cache)
        assert second == first
        shorter = poincare_expansion(spec, 1, c_max=5, cache=json_cache)
        assert shorter.n_max == 1
