"""Main application entry point"""

import sys
import logging
from typing import Optional, Sequence

from .cli.commands import run
from .cli.config import parse_args

# Configure logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main application entry point"""
    config = parse_args(argv)
    if config.verbose:
        logging.getLogger().setLevel(logging.DEBUG)
    elif config.quiet:
        logging.getLogger().setLevel(logging.WARNING)
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
