"""Driving two fixed qubits into the singlet state by repeated on- and
off-resonant scattering of flying ancilla qubits.

The heavy lifting lives in the C++ extension; this package re-exports it.
"""

from singlet_distill._core import *  # noqa: F401,F403
from singlet_distill._core import PI, PhysicalParams, protocol_map  # noqa: F401

__version__ = "0.1.0"
