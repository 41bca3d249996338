"""Quantum amplitudes from classical arrival times.

Modules
-------
specfun
    Airy, Hermite and factorial kernels plus the exact oracles.
core
    System-agnostic engine: branch sums, van Vleck weights, Airy patches,
    quantization.
harmonic
    Harmonic oscillator eigenfunctions and quadrature photon statistics.
twomode
    N-photon interference at a 50:50 beam splitter.
uncertainty
    Finite-uncertainty corrections that recover the deterministic relations.
doubleslit
    Fringe period from the arrival times at two slits.
"""
__version__ = "0.1.0"

from .errors import DomainError, QuantizationError  # noqa: E402

__all__ = ["DomainError", "QuantizationError", "__version__"]
