"""Two-qubit state value types and exact linear-algebra primitives.

Everything here is fixed at two qubits (dimension 4).  The computational
basis is ordered ``|00>, |01>, |10>, |11>``, identified with the photon
polarization products ``|HH>, |HV>, |VH>, |VV>`` (first slot: photon from
the biexciton recombination, second slot: photon from the exciton
recombination).

Density matrices come in two flavours built by two constructors:

``TwoQubitDensityMatrix.physical``
    enforces Hermiticity, unit trace and positivity within the configured
    tolerances and raises otherwise;
``TwoQubitDensityMatrix.raw``
    admits any trace and spectrum (useful for as-printed literature data
    and for linear-inversion output) and records the defects in the
    attached validation report instead of raising.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import InputFormatError, NonPhysicalStateError
from .io_utils import atomic_write_text, canonical_json_dumps
from .tolerances import DEFAULT_TOLERANCES, Tolerances

BASIS_LABELS = ("HH", "HV", "VH", "VV")


def canonical_global_phase(amplitudes: np.ndarray, cutoff: float = 1e-8) -> np.ndarray:
    """Rotate a state vector so its first significant amplitude is real-positive.

    The anchor is the first amplitude with magnitude above ``cutoff``; the
    whole vector is multiplied by the conjugate of its phase.  Any consistent
    convention would do -- comparisons elsewhere are via overlap magnitudes,
    never componentwise.
    """
    amplitudes = np.asarray(amplitudes, dtype=complex)
    for a in amplitudes:
        if abs(a) > cutoff:
            return amplitudes * (np.conj(a) / abs(a))
    return amplitudes.copy()


def _freeze(array: np.ndarray) -> np.ndarray:
    out = np.array(array, copy=True)
    out.flags.writeable = False
    return out


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of checking a 4x4 matrix against the physicality tolerances."""

    hermiticity_defect: float
    trace: float
    min_eigenvalue: float
    physical: bool
    tolerances: Tolerances
    notes: tuple = ()

    def as_dict(self) -> dict:
        return {
            "hermiticity_defect": self.hermiticity_defect,
            "trace": self.trace,
            "min_eigenvalue": self.min_eigenvalue,
            "physical": self.physical,
            "tolerances": self.tolerances.as_dict(),
            "notes": list(self.notes),
        }

    def defects(self) -> list:
        """Human-readable list of tolerance violations (empty if physical)."""
        out = []
        tol = self.tolerances
        if self.hermiticity_defect > tol.hermiticity:
            out.append(f"hermiticity defect {self.hermiticity_defect:.3e} > {tol.hermiticity:.1e}")
        if abs(self.trace - 1.0) > tol.trace:
            out.append(f"trace {self.trace!r} deviates from 1 by more than {tol.trace:.1e}")
        if self.min_eigenvalue < -tol.psd:
            out.append(f"min eigenvalue {self.min_eigenvalue:.3e} < -{tol.psd:.1e}")
        return out


def validate(matrix: np.ndarray, tol: Tolerances = DEFAULT_TOLERANCES) -> ValidationReport:
    """Check a raw 4x4 complex matrix against the physicality tolerances.

    Never raises; each defect is quantified in the returned report and
    ``physical`` is true iff all of them are within tolerance.

    Parameters
    ----------
    matrix : (4, 4) array_like of complex
    tol : Tolerances

    Returns
    -------
    ValidationReport
    """
    m = np.asarray(matrix, dtype=complex)
    if m.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {m.shape}")
    herm_defect = float(np.max(np.abs(m - m.conj().T)))
    trace = float(np.trace(m).real)
    hermitized = (m + m.conj().T) / 2.0
    min_eig = float(np.linalg.eigvalsh(hermitized)[0])
    physical = (
        herm_defect <= tol.hermiticity
        and abs(trace - 1.0) <= tol.trace
        and min_eig >= -tol.psd
    )
    notes = ()
    imag_trace = abs(np.trace(m).imag)
    if imag_trace > tol.hermiticity:
        notes = (f"imaginary trace component {imag_trace:.3e}",)
    return ValidationReport(herm_defect, trace, min_eig, physical, tol, notes)


@dataclass(frozen=True)
class TwoQubitDensityMatrix:
    """Immutable 4x4 two-photon polarization density matrix.

    The stored matrix is always exactly Hermitian (the anti-Hermitian part
    is discarded at construction and its size recorded in the report).
    """

    matrix: np.ndarray
    report: ValidationReport
    meta: dict = field(default_factory=dict)

    basis = BASIS_LABELS

    def __post_init__(self):
        object.__setattr__(self, "matrix", _freeze(self.matrix))

    @classmethod
    def physical(cls, matrix, tol: Tolerances = DEFAULT_TOLERANCES, meta: dict | None = None):
        """Construct a state that must satisfy all physicality tolerances.

        Raises
        ------
        NonPhysicalStateError
            If any tolerance is violated; the report is attached.
        """
        report = validate(matrix, tol)
        if not report.physical:
            raise NonPhysicalStateError(
                "matrix is not a physical density matrix: " + "; ".join(report.defects()),
                report=report,
            )
        m = np.asarray(matrix, dtype=complex)
        return cls((m + m.conj().T) / 2.0, report, dict(meta or {}))

    @classmethod
    def raw(cls, matrix, tol: Tolerances = DEFAULT_TOLERANCES, meta: dict | None = None):
        """Construct without enforcement; defects land in ``report``.

        The matrix is still hermitized so downstream eigensolvers operate on
        well-defined input; the pre-hermitization defect is what the report
        records.
        """
        report = validate(matrix, tol)
        m = np.asarray(matrix, dtype=complex)
        return cls((m + m.conj().T) / 2.0, report, dict(meta or {}))

    @property
    def is_physical(self) -> bool:
        return self.report.physical

    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    def normalized(self, tol: Tolerances = DEFAULT_TOLERANCES) -> "TwoQubitDensityMatrix":
        """Trace-normalized copy (validated from scratch)."""
        t = self.trace()
        if abs(t) < 1e-300:
            raise NonPhysicalStateError("cannot normalize a traceless matrix", report=self.report)
        return TwoQubitDensityMatrix.raw(self.matrix / t, tol, dict(self.meta))


@dataclass(frozen=True)
class TwoQubitPureState:
    """Normalized two-qubit state vector with canonical global phase."""

    amplitudes: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "amplitudes", _freeze(self.amplitudes))

    @classmethod
    def from_amplitudes(cls, amplitudes, normalize: bool = False,
                        tol: Tolerances = DEFAULT_TOLERANCES):
        """Build from a complex 4-vector.

        Parameters
        ----------
        amplitudes : (4,) array_like of complex
        normalize : bool
            When false (default) the norm must already be 1 within
            ``tol.pure_norm``; when true the vector is rescaled.
        """
        a = np.asarray(amplitudes, dtype=complex).reshape(-1)
        if a.shape != (4,):
            raise ValueError(f"expected 4 amplitudes, got {a.shape}")
        norm = float(np.linalg.norm(a))
        if normalize:
            if norm < 1e-300:
                raise ValueError("cannot normalize the zero vector")
            a = a / norm
        elif abs(norm - 1.0) > tol.pure_norm:
            raise ValueError(f"state norm {norm!r} deviates from 1 beyond {tol.pure_norm:.1e}")
        return cls(canonical_global_phase(a, tol.phase_cutoff))

    def density_matrix(self, tol: Tolerances = DEFAULT_TOLERANCES) -> TwoQubitDensityMatrix:
        return TwoQubitDensityMatrix.physical(
            np.outer(self.amplitudes, self.amplitudes.conj()), tol)

    def overlap(self, other: "TwoQubitPureState") -> complex:
        return complex(np.vdot(self.amplitudes, other.amplitudes))


@dataclass(frozen=True)
class SingleQubitState:
    """Normalized single-qubit state with canonical global phase."""

    amplitudes: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "amplitudes", _freeze(self.amplitudes))

    @classmethod
    def from_amplitudes(cls, amplitudes, normalize: bool = False,
                        tol: Tolerances = DEFAULT_TOLERANCES):
        a = np.asarray(amplitudes, dtype=complex).reshape(-1)
        if a.shape != (2,):
            raise ValueError(f"expected 2 amplitudes, got {a.shape}")
        norm = float(np.linalg.norm(a))
        if normalize:
            if norm < 1e-300:
                raise ValueError("cannot normalize the zero vector")
            a = a / norm
        elif abs(norm - 1.0) > tol.pure_norm:
            raise ValueError(f"state norm {norm!r} deviates from 1 beyond {tol.pure_norm:.1e}")
        return cls(canonical_global_phase(a, tol.phase_cutoff))

    def overlap(self, other: "SingleQubitState") -> complex:
        return complex(np.vdot(self.amplitudes, other.amplitudes))


@dataclass(frozen=True)
class EigenDecomposition:
    """Spectral decomposition of a two-qubit density matrix.

    Eigenvalues are sorted descending; eigenstates carry the canonical
    global phase.  ``reconstruct`` rebuilds the matrix for invariant checks.
    """

    eigenvalues: np.ndarray
    eigenstates: tuple

    def __post_init__(self):
        object.__setattr__(self, "eigenvalues", _freeze(self.eigenvalues))

    def reconstruct(self) -> np.ndarray:
        out = np.zeros((4, 4), dtype=complex)
        for p, state in zip(self.eigenvalues, self.eigenstates):
            out += p * np.outer(state.amplitudes, state.amplitudes.conj())
        return out


def eigendecompose(rho, tol: Tolerances = DEFAULT_TOLERANCES) -> EigenDecomposition:
    """Eigenvalues (descending) and phase-canonical eigenstates of ``rho``.

    Parameters
    ----------
    rho : TwoQubitDensityMatrix or (4, 4) array_like
        Hermitian input; a bare matrix is rejected if its Hermiticity
        defect exceeds ``tol.hermiticity``.

    Returns
    -------
    EigenDecomposition
    """
    if isinstance(rho, TwoQubitDensityMatrix):
        m = rho.matrix
    else:
        m = np.asarray(rho, dtype=complex)
        defect = float(np.max(np.abs(m - m.conj().T)))
        if defect > tol.hermiticity:
            raise NonPhysicalStateError(
                f"eigendecompose requires a Hermitian matrix (defect {defect:.3e})")
    vals, vecs = np.linalg.eigh(m)
    order = np.argsort(vals)[::-1]
    vals = vals[order].astype(float)
    states = tuple(
        TwoQubitPureState(canonical_global_phase(vecs[:, i], tol.phase_cutoff))
        for i in order
    )
    return EigenDecomposition(vals, states)


def _psd_sqrt(matrix: np.ndarray, clamp: float) -> np.ndarray:
    """Square root of a Hermitian PSD matrix via its eigensystem.

    Eigenvalues in ``[-clamp, 0)`` are clamped to 0 (tomographic rank
    deficiency produces them); anything more negative is an error.
    """
    vals, vecs = np.linalg.eigh(matrix)
    if vals[0] < -clamp:
        raise NonPhysicalStateError(
            f"matrix square root of an indefinite matrix (min eigenvalue {vals[0]:.3e})")
    vals = np.clip(vals, 0.0, None)
    return (vecs * np.sqrt(vals)) @ vecs.conj().T


def fidelity(rho: TwoQubitDensityMatrix, sigma: TwoQubitDensityMatrix) -> float:
    """Uhlmann fidelity ``(tr sqrt(sqrt(rho) sigma sqrt(rho)))^2``.

    Both inputs must have passed their physicality checks.  The value is 1
    iff the states coincide and reduces to the squared overlap for pure
    inputs.

    Raises
    ------
    NonPhysicalStateError
        If either input carries a failed validation report.
    """
    for name, state in (("first", rho), ("second", sigma)):
        if not state.is_physical:
            raise NonPhysicalStateError(
                f"fidelity requires physical inputs; {name} argument fails: "
                + "; ".join(state.report.defects()),
                report=state.report,
            )
    clamp = max(rho.report.tolerances.psd, sigma.report.tolerances.psd)
    sqrt_rho = _psd_sqrt(rho.matrix, clamp)
    inner = sqrt_rho @ sigma.matrix @ sqrt_rho
    vals = np.linalg.eigvalsh((inner + inner.conj().T) / 2.0)
    vals = np.clip(vals, 0.0, None)
    return float(np.sum(np.sqrt(vals)) ** 2)


def partial_trace(state, subsystem: str = "B") -> np.ndarray:
    """Reduced 2x2 density matrix after tracing out one photon.

    Parameters
    ----------
    state : TwoQubitDensityMatrix or TwoQubitPureState
    subsystem : {"A", "B"}
        Which subsystem to trace *out* is the complement: ``"A"`` returns
        the reduced state of subsystem A (traces out B) and vice versa.

    Returns
    -------
    (2, 2) ndarray of complex
    """
    if isinstance(state, TwoQubitPureState):
        m = np.outer(state.amplitudes, state.amplitudes.conj())
    else:
        m = state.matrix
    t = m.reshape(2, 2, 2, 2)
    if subsystem == "A":
        return np.einsum("abcb->ac", t)
    if subsystem == "B":
        return np.einsum("abac->bc", t)
    raise ValueError(f"subsystem must be 'A' or 'B', got {subsystem!r}")


# ---------------------------------------------------------------------------
# density-matrix JSON file format
# ---------------------------------------------------------------------------

def to_json_dict(rho: TwoQubitDensityMatrix) -> dict:
    """Serializable form: separate real and imaginary parts plus metadata."""
    meta = dict(rho.meta)
    meta["validation"] = rho.report.as_dict()
    return {
        "re": [[float(v) for v in row] for row in rho.matrix.real],
        "im": [[float(v) for v in row] for row in rho.matrix.imag],
        "basis": list(BASIS_LABELS),
        "meta": meta,
    }


def from_json_dict(data: dict, tol: Tolerances = DEFAULT_TOLERANCES) -> TwoQubitDensityMatrix:
    """Inverse of :func:`to_json_dict`; accepts raw (non-physical) matrices."""
    try:
        re = np.asarray(data["re"], dtype=float)
        im = np.asarray(data["im"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputFormatError(f"density-matrix JSON missing or malformed field: {exc}") from exc
    if re.shape != (4, 4) or im.shape != (4, 4):
        raise InputFormatError(
            f"density-matrix JSON fields 're'/'im' must be 4x4, got {re.shape} and {im.shape}")
    basis = data.get("basis", list(BASIS_LABELS))
    if list(basis) != list(BASIS_LABELS):
        raise InputFormatError(f"unsupported basis order {basis!r}; expected {list(BASIS_LABELS)}")
    meta = dict(data.get("meta", {}))
    meta.pop("validation", None)  # recomputed, never trusted from disk
    return TwoQubitDensityMatrix.raw(re + 1j * im, tol, meta)


def write_density_matrix(rho: TwoQubitDensityMatrix, path) -> None:
    atomic_write_text(path, canonical_json_dumps(to_json_dict(rho)))


def read_density_matrix(path, tol: Tolerances = DEFAULT_TOLERANCES) -> TwoQubitDensityMatrix:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputFormatError(f"cannot read density-matrix file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"invalid JSON in {path}: {exc}") from exc
    return from_json_dict(data, tol)
