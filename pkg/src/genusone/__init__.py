"""genusone - minimisation and reduction of genus one models over Q."""

try:
    from genusone._version import __version__
except ImportError:
    __version__ = "0.0.0+dev"

import sys

from genusone.cli import run


def main() -> None:
    """Run the g1 command line."""
    sys.exit(run(version=__version__))
