"""Massless-scalar direct-coupling signalling toolkit.

Python bindings over the C++ core: smeared propagators, signalling
estimators and their causal/retro split, exact gapless pair evolution,
second-order detector dynamics, causality audits, and the
gravity-mediated-entanglement regime calculator.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__ as _core_doc

__all__ = [name for name in dir() if not name.startswith("_")]
