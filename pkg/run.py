#!/usr/bin/env python
"""
Command-line entry point of the annulus-bk solver.
"""
import os
import sys

# Add the current directory to the Python path
sys.path.insert(0, os.path.abspath(os.path.dirname(__file__)))

from cli import run  # noqa: E402


def main() -> None:
    """Main function."""
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
