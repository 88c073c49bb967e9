import logging
import sys

from core.config import settings

# Configure logging
logging.basicConfig(
    level=getattr(logging, settings.LOG_LEVEL, logging.INFO),
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    datefmt="%Y-%m-%d %H:%M:%S",
)

# Reduce noise from parser construction
logging.getLogger("lark").setLevel(logging.WARNING)

from cli import main  # noqa: E402

if __name__ == "__main__":
    sys.exit(main())
