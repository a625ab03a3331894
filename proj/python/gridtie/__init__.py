"""Grid-tied power-chain toolkit.

Thin wrapper around the compiled core: a three-level bidirectional dc-dc
converter model, a synchronous-frame grid-tied inverter, a steady-state
operating-point solver, and a fixed-step time-domain simulator.
"""

from ._core import *  # noqa: F401,F403
