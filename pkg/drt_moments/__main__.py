"""Allow ``python -m drt_moments``."""

import sys

from .cli import main

sys.exit(main())
