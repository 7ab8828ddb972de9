"""A reasoning engine for a paraconsistent higher-order logic with truth codes."""

import sys

# Terms are processed recursively; expanded formulas nest deeply.
if sys.getrecursionlimit() < 20000:
    sys.setrecursionlimit(20000)

__version__ = "0.1.0"
