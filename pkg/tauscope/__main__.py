"""Lancement par ``python -m tauscope``."""

import sys

from .cli.commands import main

if __name__ == "__main__":
    sys.exit(main())
