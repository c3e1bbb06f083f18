"""
Dependency management - installs the optional PDF package on demand.
"""

import importlib
import subprocess
import sys


def ensure_reportlab():
    """Ensure reportlab is installed for PDF generation.

    Returns:
        True if reportlab is available, False otherwise
    """
    try:
        importlib.import_module("reportlab")
        return True
    except ImportError:
        pass

    print(file=sys.stderr)
    print("  ┌─────────────────────────────────────────────────────────┐", file=sys.stderr)
    print("  │  INSTALLING PDF REPORT DEPENDENCY                       │", file=sys.stderr)
    print("  └─────────────────────────────────────────────────────────┘", file=sys.stderr)
    print(file=sys.stderr)
    print("  The 'reportlab' package is needed for --pdf.", file=sys.stderr)
    print("  This is a one-time installation.", file=sys.stderr)
    print(file=sys.stderr)
    print("  Installing reportlab...", end="", flush=True, file=sys.stderr)

    try:
        result = subprocess.run(
            [sys.executable, "-m", "pip", "install", "reportlab", "--quiet"],
            capture_output=True,
            text=True,
            timeout=120
        )
    except subprocess.TimeoutExpired:
        print(" timed out!", file=sys.stderr)
        print("  The report will be written as text instead.", file=sys.stderr)
        return False
    except OSError as e:
        print(f" failed: {e}", file=sys.stderr)
        print("  The report will be written as text instead.", file=sys.stderr)
        return False

    if result.returncode != 0:
        print(" failed!", file=sys.stderr)
        print(file=sys.stderr)
        print(f"  Error: {result.stderr[:200] if result.stderr else 'Unknown error'}", file=sys.stderr)
        print("  The report will be written as text instead.", file=sys.stderr)
        print(file=sys.stderr)
        return False

    print(" done!", file=sys.stderr)
    print(file=sys.stderr)
    importlib.invalidate_caches()
    return True
