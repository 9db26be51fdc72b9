#!/usr/bin/env python3
"""
Inspect or clear the Poincare coefficient cache (Redis or the JSON file)
"""

import sys
from pathlib import Path

# Add the src directory to the Python path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root / "src"))

from eichler_periods.config import settings
from eichler_periods.services import CoefficientCacheService


def show_status(service: CoefficientCacheService) -> bool:
    print("🔍 Coefficient cache status")
    print("=" * 50)
    status = service.get_status()
    if "error" in status:
        print(f"❌ {status['error']}")
        return False
    icon = "✅" if status["backend"] == "redis" else "📁"
    location = status.get("url") or status.get("path")
    print(f"{icon} Backend: {status['backend']} ({location})")
    print(f"📊 Cached coefficient lists: {status['entries']}")
    return True


def clear_cache(service: CoefficientCacheService) -> bool:
    print("🧹 Clearing cached coefficients...")
    result = service.clear()
    if result.get("success"):
        print(f"✅ {result['message']}")
        return True
    print(f"❌ Clear failed: {result.get('error')}")
    return False


if __name__ == "__main__":
    service = CoefficientCacheService()
    print(f"Redis enabled: {settings.use_redis}")
    ok = show_status(service)
    if "--clear" in sys.argv:
        confirm = input("Remove every cached coefficient list? (type 'YES' to confirm): ")
        if confirm == "YES":
            ok = clear_cache(service) and ok
        else:
            print("❌ Clear cancelled")
    sys.exit(0 if ok else 1)
