"""Maximal overlap of a pure state with product states, and the Groverian measure.

``pmax_numeric`` runs alternating single-factor updates (a higher-order
power iteration): with every factor but one fixed, the best remaining factor
is the normalized conjugate of the environment vector, so each update is an
exact partial maximization and the overlap never decreases.

``pmax_grid`` and ``bipartition_bound`` are independent lower and upper
bounds used to check the optimizer.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .exceptions import OutOfRange, TooLarge
from .statevec import ProductState, Qubit
from .validation import check_seed

DEFAULT_SEED = 20050917
# environment norms below this are treated as an exactly zero contraction
ZERO_ENV = 1e-150
GRID_MAX_QUBITS = 3
GRID_MAX_RESOLUTION = 48


@dataclass(frozen=True)
class OptimizerConfig:
    starts: int = 64
    max_sweeps: int = 1000
    tol: float = 1e-12
    seed: int = DEFAULT_SEED
    n_jobs: int = 1

    def __post_init__(self):
        if self.starts < 1:
            raise ValueError("starts must be >= 1")
        if self.max_sweeps < 1:
            raise ValueError("max_sweeps must be >= 1")
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.n_jobs < 1:
            raise ValueError("n_jobs must be >= 1")
        object.__setattr__(self, "seed", check_seed(self.seed))


@dataclass(frozen=True)
class PmaxResult:
    pmax: float
    argmax: ProductState
    groverian: float
    starts_converged: int
    sweeps_used: int
    converged: bool
    best_start: int
    zero_environment: int = 0

    def diagnostics(self):
        return {
            "starts_converged": self.starts_converged,
            "sweeps_used": self.sweeps_used,
            "converged": self.converged,
            "best_start": self.best_start,
            "zero_environment": self.zero_environment,
        }


@dataclass
class AscentResult:
    factors: np.ndarray
    value: float
    sweeps: int
    converged: bool
    zero_environment: int
    trace: list = field(default_factory=list)


def _contract_axis(m, axis, coeffs):
    """Contract tensor axis ``axis`` (batch axis 0 excluded) with per-start 2-vectors.

    Elementwise only, so every start's numbers are independent of batch size.
    """
    shape = (-1,) + (1,) * (m.ndim - 2)
    c0 = coeffs[:, 0].reshape(shape)
    c1 = coeffs[:, 1].reshape(shape)
    return np.take(m, 0, axis=axis) * c0 + np.take(m, 1, axis=axis) * c1


def _environment(conj_t, factors, j):
    """Contract ``conj(psi)`` with every factor except ``j``; returns ``(S, 2)``."""
    n = factors.shape[1]
    m = conj_t[None]
    for i in range(n - 1, -1, -1):
        if i != j:
            m = _contract_axis(m, i + 1, factors[:, i])
    return np.broadcast_to(m, (factors.shape[0], 2))


def _overlap_sq(conj_t, factors):
    v = _environment(conj_t, factors, 0)
    return np.abs(np.sum(v * factors[:, 0], axis=1)) ** 2


def _ascend_batch(conj_t, factors, max_sweeps, tol, record=False):
    factors = np.array(factors, dtype=np.complex128)
    n_starts, n = factors.shape[:2]
    values = _overlap_sq(conj_t, factors)
    sweeps = np.zeros(n_starts, dtype=int)
    converged = np.zeros(n_starts, dtype=bool)
    zero_env = np.zeros(n_starts, dtype=int)
    trace = [[float(v)] for v in values] if record else None
    active = np.arange(n_starts)
    for _ in range(max_sweeps):
        if active.size == 0:
            break
        block = factors[active]
        prev = values[active]
        for j in range(n):
            v = _environment(conj_t, block, j)
            norm = np.linalg.norm(v, axis=1)
            dead = norm < ZERO_ENV
            new = np.conj(v) / np.where(dead, 1.0, norm)[:, None]
            new[dead] = (1.0, 0.0)
            zero_env[active[dead]] += 1
            block[:, j] = new
            current = norm**2
            if dead.any():
                current[dead] = _overlap_sq(conj_t, block[dead])
            if record:
                for r, start in enumerate(active):
                    trace[start].append(float(current[r]))
        factors[active] = block
        values[active] = current
        sweeps[active] += 1
        done = np.abs(current - prev) < tol
        converged[active[done]] = True
        active = active[~done]
    return factors, values, sweeps, converged, zero_env, trace


def ascend(state, initial, *, max_sweeps=1000, tol=1e-12):
    """Single-start alternating ascent from explicit initial factors.

    ``initial`` is a ProductState or an ``(n, 2)`` array. The returned trace
    holds the overlap-squared before any update and after every single-factor
    update, in order.
    """
    init = initial.matrix() if isinstance(initial, ProductState) else np.asarray(initial)
    init = init / np.linalg.norm(init, axis=1, keepdims=True)
    conj_t = np.conj(state.tensor())
    f, vals, sw, conv, zero, trace = _ascend_batch(conj_t, init[None], max_sweeps, tol, record=True)
    return AscentResult(f[0], float(vals[0]), int(sw[0]), bool(conv[0]), int(zero[0]), trace[0])


def start_factors(n, seed, start):
    """Random initial factors for multistart ``start``, seeded by ``(seed, start)``."""
    rng = np.random.default_rng([seed, start])
    f = rng.standard_normal((n, 2)) + 1j * rng.standard_normal((n, 2))
    return f / np.linalg.norm(f, axis=1, keepdims=True)


def _run_starts(conj_t, n, cfg, starts):
    init = np.array([start_factors(n, cfg.seed, k) for k in starts])
    return _ascend_batch(conj_t, init, cfg.max_sweeps, cfg.tol)


def pmax_numeric(state, cfg=None):
    """Best overlap-squared of ``state`` with any product state, by multistart ascent."""
    cfg = cfg or OptimizerConfig()
    conj_t = np.conj(state.tensor())
    chunks = [c for c in np.array_split(np.arange(cfg.starts), cfg.n_jobs) if c.size]
    if len(chunks) == 1:
        parts = [_run_starts(conj_t, state.n, cfg, chunks[0])]
    else:
        with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
            parts = list(pool.map(lambda c: _run_starts(conj_t, state.n, cfg, c), chunks))
    factors, values, sweeps, converged, zero_env = (
        np.concatenate([p[k] for p in parts]) for k in range(5)
    )
    best = int(np.argmax(values))
    pmax = float(values[best])
    argmax = ProductState(tuple(Qubit.from_vector(v) for v in factors[best]))
    return PmaxResult(
        pmax=pmax,
        argmax=argmax,
        groverian=groverian(min(pmax, 1.0)),
        starts_converged=int(converged.sum()),
        sweeps_used=int(sweeps[best]),
        converged=bool(converged[best]),
        best_start=best,
        zero_environment=int(zero_env.sum()),
    )


def grid_factors(resolution):
    """Single-qubit grid ``(cos t, e^{i p} sin t)``, t in [0, pi/2], p in [0, 2 pi)."""
    theta = np.linspace(0.0, np.pi / 2, resolution)
    phi = 2 * np.pi * np.arange(resolution) / resolution
    t, p = np.meshgrid(theta, phi, indexing="ij")
    return np.stack([np.cos(t).ravel() + 0j, (np.exp(1j * p) * np.sin(t)).ravel()], axis=1)


def pmax_grid(state, resolution=32, *, block=256):
    """Exhaustive grid lower bound on the maximal product-state overlap.

    Every qubit but the last is scanned over :func:`grid_factors`; for each
    grid point the last factor is chosen optimally (the norm of its
    environment vector). The result is the overlap of an explicit product
    state, hence never above the true maximum.
    """
    if state.n > GRID_MAX_QUBITS:
        raise TooLarge(f"grid scan limited to n <= {GRID_MAX_QUBITS}, got n={state.n}")
    if not 2 <= resolution <= GRID_MAX_RESOLUTION:
        raise TooLarge(f"resolution must lie in [2, {GRID_MAX_RESOLUTION}], got {resolution}")
    conj_t = np.conj(state.tensor())
    if state.n == 1:
        return float(np.linalg.norm(conj_t) ** 2)
    grid = grid_factors(resolution)
    # first qubit scanned in blocks to bound memory
    best = 0.0
    for lo in range(0, grid.shape[0], block):
        m = np.tensordot(grid[lo:lo + block], conj_t, axes=([1], [0]))
        for _ in range(state.n - 2):
            # m: (points..., 2, rest...) -> contract the next qubit against the full grid
            m = np.moveaxis(np.tensordot(m, grid, axes=([m.ndim - state.n + 1], [1])), -1, m.ndim - state.n + 1)
        best = max(best, float(np.max(np.sum(np.abs(m) ** 2, axis=-1))))
    return best


def bipartition_bound(state):
    """Smallest, over single-qubit cuts, of the largest squared Schmidt coefficient."""
    if state.n < 2:
        return 1.0
    t = state.tensor()
    bounds = []
    for j in range(state.n):
        mat = np.moveaxis(t, j, 0).reshape(2, -1)
        bounds.append(float(np.linalg.svd(mat, compute_uv=False)[0] ** 2))
    return min(bounds)


def groverian(pmax):
    """Groverian entanglement ``sqrt(1 - pmax)``; pmax is clamped into [0, 1]."""
    if not -1e-12 <= pmax <= 1 + 1e-12:
        raise OutOfRange(f"pmax={pmax!r} is not a probability")
    return math.sqrt(1.0 - min(max(pmax, 0.0), 1.0))


__all__ = [
    "DEFAULT_SEED", "OptimizerConfig", "PmaxResult", "AscentResult", "ascend",
    "start_factors", "pmax_numeric", "grid_factors", "pmax_grid", "bipartition_bound",
    "groverian",
]
