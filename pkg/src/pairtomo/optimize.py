"""Shared derivative-free simplex minimizer.

One Nelder-Mead implementation serves the likelihood maximization, the
decomposition search, and the rate-equation fit.  It is deterministic, uses
only function-value comparisons inside the descent loop (so uniform scaling
of the objective cannot change the path), and supports oriented restarts:
after the simplex collapses, it is rebuilt around the best vertex with a
smaller edge, which guards against premature flattening in 16 dimensions.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class OptimizerSettings:
    """Knobs for :func:`nelder_mead`.

    ``ftol`` is the simplex function-value spread below which a descent
    stage is considered converged; ``max_evals`` caps total objective
    evaluations across all restart stages.
    """

    initial_step: float = 0.1
    ftol: float = 1e-12
    max_evals: int = 200_000
    restarts: int = 3
    restart_shrink: float = 0.1


@dataclass
class OptimizeResult:
    x: np.ndarray
    value: float
    n_evals: int
    n_restarts: int
    converged: bool
    spread: float

    def as_dict(self) -> dict:
        return {
            "value": float(self.value),
            "n_evals": int(self.n_evals),
            "n_restarts": int(self.n_restarts),
            "converged": bool(self.converged),
            "spread": float(self.spread),
        }


def nelder_mead(func, x0, settings: OptimizerSettings = OptimizerSettings(),
                steps=None) -> OptimizeResult:
    """Minimize ``func`` starting from ``x0``.

    Parameters
    ----------
    func : callable
        Maps a 1-D float array to a float.
    x0 : array_like
        Starting point.
    settings : OptimizerSettings
    steps : array_like, optional
        Per-coordinate initial simplex edges; defaults to
        ``settings.initial_step`` in every coordinate.

    Returns
    -------
    OptimizeResult
        ``converged`` is False when the evaluation budget ran out before the
        final descent stage collapsed below ``ftol``; callers decide whether
        that is an error.
    """
    x0 = np.asarray(x0, dtype=float).reshape(-1)
    n = x0.size
    if steps is None:
        steps = np.full(n, settings.initial_step, dtype=float)
    else:
        steps = np.asarray(steps, dtype=float).reshape(-1)
        if steps.size != n:
            raise ValueError("steps must have the same length as x0")

    nfev = 0
    best_x = x0.copy()
    best_f = float(func(best_x))
    nfev += 1

    converged = False
    spread = np.inf
    stage = 0
    scale = 1.0
    while stage <= settings.restarts and nfev < settings.max_evals:
        sim = np.empty((n + 1, n), dtype=float)
        fs = np.empty(n + 1, dtype=float)
        sim[0] = best_x
        fs[0] = best_f
        for i in range(n):
            sim[i + 1] = best_x
            sim[i + 1, i] += steps[i] * scale
            fs[i + 1] = func(sim[i + 1])
        nfev += n

        stage_converged = False
        while nfev < settings.max_evals:
            order = np.argsort(fs, kind="stable")
            sim = sim[order]
            fs = fs[order]
            spread = float(fs[-1] - fs[0])
            if spread <= settings.ftol:
                stage_converged = True
                break
            centroid = sim[:-1].mean(axis=0)
            xr = centroid + (centroid - sim[-1])
            fr = float(func(xr))
            nfev += 1
            if fr < fs[0]:
                xe = centroid + 2.0 * (centroid - sim[-1])
                fe = float(func(xe))
                nfev += 1
                if fe < fr:
                    sim[-1], fs[-1] = xe, fe
                else:
                    sim[-1], fs[-1] = xr, fr
            elif fr < fs[-2]:
                sim[-1], fs[-1] = xr, fr
            else:
                if fr < fs[-1]:
                    xc = centroid + 0.5 * (xr - centroid)
                else:
                    xc = centroid + 0.5 * (sim[-1] - centroid)
                fc = float(func(xc))
                nfev += 1
                if fc < min(fr, fs[-1]):
                    sim[-1], fs[-1] = xc, fc
                else:
                    # shrink toward the best vertex
                    for i in range(1, n + 1):
                        sim[i] = sim[0] + 0.5 * (sim[i] - sim[0])
                        fs[i] = float(func(sim[i]))
                    nfev += n

        i_best = int(np.argmin(fs))
        if fs[i_best] < best_f:
            best_x = sim[i_best].copy()
            best_f = float(fs[i_best])
        if stage_converged and stage == settings.restarts:
            converged = True
            break
        if stage_converged and stage < settings.restarts:
            converged = True  # provisional; further stages can only improve
        stage += 1
        scale *= settings.restart_shrink

    return OptimizeResult(best_x, best_f, nfev, stage, converged, spread)
