"""Main entry point for the real-time MAPF toolkit."""

import sys

from src.main import main

if __name__ == "__main__":
    sys.exit(main())
