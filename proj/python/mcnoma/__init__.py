"""Power-efficient multicarrier NOMA downlink resource allocation.

Thin python surface over the C++ core: channel statistics, two-user power
allocation with SIC ordering, clustering-based user scheduling with exact and
random baselines, an OMA comparison, Monte Carlo outage verification, and the
experiment sweeps.
"""

from ._core import *  # noqa: F401,F403

__version__ = "0.1.0"
