"""Recurrence microstate entropy toolkit.

Thin re-export of the compiled core: signal generators, recurrence plots,
classic recurrence quantifiers, microstate entropy and the sweep harness.
"""

from rqakit._core import *  # noqa: F401,F403
from rqakit._core import __doc__  # noqa: F401

__version__ = "0.1.0"
