"""Exact calculator for stable rank-2 and rank-3 bundles on P^3 built from surfaces containing a line.

Modules:

* :mod:`nlbundles.lattice`: the L/C divisor lattice on S and Chern arithmetic on P^3;
* :mod:`nlbundles.cohomology`: h0, h1, h2 of line bundles O_S(aL + bC)(j);
* :mod:`nlbundles.bundles`: stability verdicts, Chern classes, thresholds;
* :mod:`nlbundles.moduli`: family dimensions and moduli-space data;
* :mod:`nlbundles.verify`: invariant suites over parameter grids.
"""

from .errors import (
    ArithmeticFault,
    LatticeUndefinedError,
    NLBundlesError,
    NotAdmissibleError,
    OutOfRegimeError,
    PreconditionError,
)
from .lattice import ChernData, DivisorClass, SurfaceClass
from .cohomology import CohomologyDims, h0_master
from .bundles import BundleSpec, Family, StabilityVerdict, Status, classify
from .moduli import Interval, ModuliReport

__version__ = "0.1.0"
