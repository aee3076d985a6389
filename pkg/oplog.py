#!/usr/bin/env python3
"""
oplog entry point.

Usage:
    python oplog.py suite --seed 0
    python oplog.py verify-gen --family constant:B=rot --t 1 --s 0.5
"""

import sys

from cli.main import main

if __name__ == "__main__":
    sys.exit(main())
