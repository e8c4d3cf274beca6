"""Dynamic pull-in analysis of an electrostatically actuated lumped-mass
oscillator with a quadratic-softening (graphene) spring.

Everything lives in the compiled core; this package just re-exports it.
"""

from ._core import *  # noqa: F401,F403

__version__ = "0.1.0"
