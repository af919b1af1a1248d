"""Run with ``python -m market_recon``."""
import sys

from market_recon.cli import main

sys.exit(main())
