"""Physical parameters and shared data containers.

Unit system used throughout: lengths in cm, times in us, magnetic field in
units of 1e3 T, internal energy density in 1e5 J/cm^3, resistivity in
1e2 mOhm.cm.  In this unit group the vacuum permeability entering both
governing equations is the dimensionless carrier 4*pi*1e-2 (see
tests/test_units.py for the conversion from the SI value).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

MU0_DEFAULT = 4.0e-2 * math.pi


@dataclass(frozen=True)
class ProblemParams:
    """The four physical inputs plus the permeability carrier.

    B0:   boundary magnetic field at x = 0
    ec:   critical energy density of the resistivity step
    etaL: resistivity of burned material (e > ec)
    etaS: resistivity of cold material (e <= ec)
    mu0:  permeability in the scaled unit group
    """

    B0: float = 0.2
    ec: float = 0.1
    etaL: float = 9.7e-3
    etaS: float = 9.7e-5
    mu0: float = MU0_DEFAULT

    def __post_init__(self):
        if not (self.B0 > 0):
            raise ValueError(f"B0 must be positive, got {self.B0}")
        if not (self.ec > 0):
            raise ValueError(f"ec must be positive, got {self.ec}")
        if not (self.etaS > 0):
            raise ValueError(f"etaS must be positive, got {self.etaS}")
        if not (self.etaL > self.etaS):
            raise ValueError(
                f"etaL must exceed etaS, got etaL={self.etaL}, etaS={self.etaS}"
            )
        if not (self.mu0 > 0):
            raise ValueError(f"mu0 must be positive, got {self.mu0}")

    @property
    def b(self) -> float:
        """Dimensionless drive strength B0 / sqrt(2*mu0*ec)."""
        return self.B0 / math.sqrt(2.0 * self.mu0 * self.ec)

    @property
    def r(self) -> float:
        """Resistivity ratio etaL / etaS."""
        return self.etaL / self.etaS


#: Parameter set of the reference benchmark case.
BENCHMARK_PARAMS = ProblemParams()


@dataclass(frozen=True)
class FieldProfile:
    """Physical-space field samples at a fixed time.

    x holds ordered positions (cell centers for simulator output), B and e
    the corresponding samples; xc is the front position at time t when one
    could be extracted (None otherwise, e.g. at t = 0).
    """

    t: float
    x: np.ndarray
    B: np.ndarray
    e: np.ndarray
    xc: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "x", np.asarray(self.x, dtype=float))
        object.__setattr__(self, "B", np.asarray(self.B, dtype=float))
        object.__setattr__(self, "e", np.asarray(self.e, dtype=float))
        if not (len(self.x) == len(self.B) == len(self.e)):
            raise ValueError("x, B, e must have equal lengths")
        if len(self.x) > 1 and not np.all(np.diff(self.x) > 0):
            raise ValueError("x must be strictly increasing")
