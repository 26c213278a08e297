"""Module entry point: python -m hypermatch ..."""

import sys

from .cli import main

if __name__ == "__main__":
    sys.exit(main())
