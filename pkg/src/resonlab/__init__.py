"""resonlab: a desk-scale laboratory for resonant cavity-free QED coherence.

Subpackages cover the two companion model families and their measurement
pipelines:

* :mod:`resonlab.constants` - SI constants, energy-spin operators, the
  truncated water rotor;
* :mod:`resonlab.fel` - steady state of the collective instability in
  myelinated axons;
* :mod:`resonlab.phase` - superradiance thresholds and phase diagram;
* :mod:`resonlab.meanfield` - mean-field spin-boson dynamics with
  spontaneous U(1) breaking (compiled kernel + python fallback);
* :mod:`resonlab.decoherence` - sensory transduction and
  continuous-superselection dephasing;
* :mod:`resonlab.measurement` - type-I / type-II selective measurement
  pipelines with Born sampling and energy ledgers;
* :mod:`resonlab.lattice` - bit coding of elementary optical domains;
* :mod:`resonlab.cli` - config-driven sweeps emitting CSV/JSON.
"""

from ._kernels import kernel_name
from .constants import NATURAL, SI, PhysicalConstants
from .errors import NumericalError, ResonlabError, ValidationError

__version__ = "0.1.0"

__all__ = [
    "SI", "NATURAL", "PhysicalConstants",
    "ResonlabError", "ValidationError", "NumericalError",
    "kernel_name", "__version__",
]
