"""
Monge rolling verify - command-line entry point.

Runs the certified check suite for Monge normal forms of the rolling
(2,3,5)-distribution and writes a JSON or text report to stdout.
"""

import sys

from src.presentation.cli import run_cli


def main() -> int:
    return run_cli(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
