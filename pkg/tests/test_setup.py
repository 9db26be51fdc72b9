#!/usr/bin/env python3
"""
Test script to verify the Eichler Periods setup
"""

import sys
from pathlib import Path

# Add the src directory to the Python path
project_root = Path(__file__).parent.parent
src_dir = project_root / "src"
sys.path.insert(0, str(src_dir))


def test_setup():
    """Test the package layout, imports and configuration"""
    print("🧪 Testing Eichler Periods Setup")
    print("=" * 40)

    required_files = [
        "src/eichler_periods/main.py",
        "run_acceptance.py",
        "pyproject.toml",
        ".env.example",
    ]

    print("\n📁 Checking required files...")
    for file in required_files:
        file_path = project_root / file
        print(f"  {'✅' if file_path.exists() else '❌'} {file}")
        assert file_path.exists(), f"{file} is missing"

    print("\n📦 Testing imports...")
    from eichler_periods import __version__
    from eichler_periods.main import build_parser

    assert __version__
    assert build_parser().prog == "eichler-periods"
    print("  ✅ CLI import successful")

    print("\n🔧 Checking configuration...")
    from eichler_periods.config import settings

    truncations = settings.get_truncation_params()
    assert truncations["N"] >= 2
    assert truncations["poincare_cmax"] >= 1
    assert settings.get_tolerance_params()["tol"] > 0
    assert settings.redis_url.startswith("redis://")
    print(f"  ✅ q-series order {truncations['N']}, Poincare c_max {truncations['poincare_cmax']}")

    print("\n🎉 Setup test completed successfully!")


if __name__ == "__main__":
    try:
        test_setup()
        sys.exit(0)
    except Exception as e:
        print(f"\n💥 Test failed with error: {e}")
        sys.exit(1)
