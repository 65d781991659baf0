"""Run the command line with ``python -m afm_duality``."""
from .cli import main

raise SystemExit(main())
