#!/usr/bin/env python3
"""
localamp - quantum correlations from local amplitudes.

Convenience entry point; equivalent to the ``localamp`` console script.
"""

import sys

from localamp.cli import main

if __name__ == "__main__":
    sys.exit(main())
