#!/usr/bin/env python3
"""
Run relideal from a source checkout without installing it:

    python src/main.py compute --poly "Z^3 - 2" --generators "(1 2 3);(1 2)"
"""

import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from relideal.cli import main  # noqa: E402

if __name__ == "__main__":
    sys.exit(main())
