#!/usr/bin/env python3
"""
Toric K-stability - Main Runner

Usage:
    python3 run.py presets                      # List built-in problems
    python3 run.py analyze example1             # S0, Futaki, Zhou-Zhu
    python3 run.py cone example2                # Cone checks
    python3 run.py deform example1              # Deformation dimensions
    python3 run.py analyze example1 --debug     # Enable debug logging
    python3 run.py --help                       # Show help
"""

import sys

from toric_kstab import __version__
from toric_kstab.cli import main


if __name__ == "__main__":
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        print()
        print()
        print("  Cancelled by user (Ctrl+C).")
        print()
        sys.exit(130)
    except Exception as e:
        print()
        print()
        print("  ╔════════════════════════════════════════════════════════════╗")
        print("  ║  UNEXPECTED ERROR                                          ║")
        print("  ╚════════════════════════════════════════════════════════════╝")
        print()
        print(f"  Error: {e}")
        print(f"  Version: {__version__}")
        print()
        print("  This is likely a bug. Please report it with the command you ran.")
        print()
        print("  Technical details:")
        import traceback
        traceback.print_exc()
        print()
        sys.exit(1)
