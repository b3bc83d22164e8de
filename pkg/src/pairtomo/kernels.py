"""Backend selection for the hot kernels.

Prefers the compiled extension and falls back to the NumPy implementation
when it is missing (e.g. source checkout without a build step).  Both
backends implement the same functions; ``load_backend`` gives explicit
access to either for benchmarking and agreement tests.
"""

from __future__ import annotations

try:
    from . import _kernels as _impl

    BACKEND = "compiled"
except ImportError:  # pragma: no cover - depends on build environment
    from . import _kernels_py as _impl

    BACKEND = "python"

cholesky_to_rho = _impl.cholesky_to_rho
cholesky_probs = _impl.cholesky_probs
nll_gaussian = _impl.nll_gaussian
nll_poisson = _impl.nll_poisson
nielsen_average_entanglement = _impl.nielsen_average_entanglement
nielsen_average_entanglement_grid = _impl.nielsen_average_entanglement_grid


def load_backend(name: str):
    """Return the kernel module for ``name`` in {"compiled", "python"}.

    Raises ImportError when the compiled backend is requested but absent.
    """
    if name == "python":
        from . import _kernels_py

        return _kernels_py
    if name == "compiled":
        from . import _kernels

        return _kernels
    raise ValueError(f"unknown kernel backend {name!r}")
