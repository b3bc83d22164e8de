"""Central numerical tolerance configuration.

Every validity check in the package draws its thresholds from a single
:class:`Tolerances` record so that relaxed-tolerance workflows (e.g. loading
as-printed matrices whose trace deviates from 1 at the rounding level) stay
explicit and auditable.
"""

from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Tolerances:
    """Thresholds used when validating states and decompositions.

    Attributes
    ----------
    hermiticity : float
        Maximum allowed ``max|m - m^dag|`` for a density matrix.
    trace : float
        Maximum allowed ``|tr(m) - 1|`` for the physical construction path.
    psd : float
        Most negative eigenvalue tolerated before a matrix is rejected as
        non-positive.
    pure_norm : float
        Maximum allowed ``|  ||psi|| - 1 |`` for pure-state amplitudes.
    phase_cutoff : float
        Smallest amplitude magnitude eligible to anchor the global-phase
        convention (first amplitude above this is made real-positive).
    """

    hermiticity: float = 1e-12
    trace: float = 1e-9
    psd: float = 1e-10
    pure_norm: float = 1e-12
    phase_cutoff: float = 1e-8

    def with_trace(self, trace: float) -> "Tolerances":
        """Return a copy with a relaxed/tightened trace tolerance."""
        return replace(self, trace=trace)

    def as_dict(self) -> dict:
        return {
            "hermiticity": self.hermiticity,
            "trace": self.trace,
            "psd": self.psd,
            "pure_norm": self.pure_norm,
            "phase_cutoff": self.phase_cutoff,
        }


DEFAULT_TOLERANCES = Tolerances()
