"""Print the consolidated level table, optionally as JSON.

    python scripts/level_table.py [--max-rank N] [--format json]
"""
import sys

from gerbelevels.cli import main

if __name__ == "__main__":
    sys.exit(main(["table", *sys.argv[1:]]))
