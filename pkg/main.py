"""Main entry point for market process reconstruction."""
import sys

from market_recon.cli import main

if __name__ == '__main__':
    sys.exit(main())
