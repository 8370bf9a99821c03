"""Exact state-vector simulation of Grover search with one marked element.

The oracle negates the marked amplitude and the diffusion step reflects
every amplitude about the mean, ``a_i -> 2*mean - a_i``. Both are O(N)
passes, so no operator matrix is ever formed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import IndexOutOfRange, InvalidN
from .statevec import PLUS, LocalUnitarySet, QState, _frozen, apply_locals
from .validation import check_index

# rows of the (s, amplitude) work array simulated at once
BLOCK_ROWS = 256


@dataclass(frozen=True)
class GroverRun:
    marked: int
    iterations: int

    def validate(self, n):
        dim = 2**n
        check_index(self.marked, dim, "marked index")
        limit = 10 * math.ceil(math.sqrt(dim))
        if not 0 <= self.iterations <= limit:
            raise IndexOutOfRange(f"iterations={self.iterations} outside [0, {limit}] for N={dim}")


def _iterate_rows(work, marked, iterations):
    """Run Grover iterations in place on each row of ``work``.

    Row ``r`` is searched for basis index ``marked[r]``.
    """
    rows = np.arange(work.shape[0])
    for _ in range(iterations):
        work[rows, marked] *= -1
        mean = work.mean(axis=1, keepdims=True)
        np.subtract(2 * mean, work, out=work)
    return work


def grover_iterate(state, run):
    """Apply ``run.iterations`` rounds of (diffusion o oracle) to ``state``."""
    run.validate(state.n)
    work = np.array(state.amplitudes, dtype=np.complex128)[None, :]
    _iterate_rows(work, np.array([run.marked]), run.iterations)
    return QState(state.n, _frozen(work[0]))


def grover_trace(state, run):
    """Success probability for ``run.marked`` after each of 0..m iterations."""
    run.validate(state.n)
    work = np.array(state.amplitudes, dtype=np.complex128)[None, :]
    trace = [float(abs(work[0, run.marked]) ** 2)]
    for _ in range(run.iterations):
        _iterate_rows(work, np.array([run.marked]), 1)
        trace.append(float(abs(work[0, run.marked]) ** 2))
    return trace


def optimal_iterations(N):
    """Iteration count maximizing the success probability from the uniform state.

    ``round(pi / (4*asin(1/sqrt(N))) - 1/2)`` with ties rounded up, never below 1.
    """
    if isinstance(N, bool) or int(N) != N or N < 2 or int(N) & (int(N) - 1):
        raise InvalidN(f"N={N!r} is not a power of two >= 2")
    raw = math.pi / (4 * math.asin(1 / math.sqrt(N))) - 0.5
    return max(1, math.floor(raw + 0.5))


def success_probability(state, s):
    s = check_index(s, state.dim, "marked index")
    return float(abs(state.amplitudes[s]) ** 2)


def rotation_success(N, m):
    """``sin^2((2m+1) asin(1/sqrt(N)))``: success from the uniform state after m rounds."""
    theta = math.asin(1 / math.sqrt(N))
    return math.sin((2 * m + 1) * theta) ** 2


def modified_search_success(state, locals_, iterations=None):
    """Average success of Grover search preceded by local unitaries.

    Computes ``(1/N) sum_s |<s| U_G(s)^m (U_1 (x) ... (x) U_n) |state>|^2``
    by simulating all N marked elements. ``m`` defaults to
    :func:`optimal_iterations`. The sum over ``s`` runs in index order via
    ``math.fsum`` so the value does not depend on the block size.
    """
    prepared = apply_locals(state, locals_)
    dim = state.dim
    m = optimal_iterations(dim) if iterations is None else iterations
    GroverRun(0, m).validate(state.n)
    hits = []
    for start in range(0, dim, BLOCK_ROWS):
        marked = np.arange(start, min(start + BLOCK_ROWS, dim))
        work = np.tile(prepared.amplitudes, (marked.size, 1))
        _iterate_rows(work, marked, m)
        hits.extend((np.abs(work[np.arange(marked.size), marked]) ** 2).tolist())
    return math.fsum(hits) / dim


def build_alignment_unitaries(p):
    """Local unitaries rotating each factor of ``p`` onto ``(|0> + |1>)/sqrt(2)``.

    ``U_j = |+><e_j| + |-><e_j^perp|`` with ``e_j^perp = (-conj(b), conj(a))``.
    """
    plus = PLUS.vector
    minus = np.array([1, -1]) / np.sqrt(2)
    mats = []
    for q in p.factors:
        e = q.vector
        perp = np.array([-np.conj(e[1]), np.conj(e[0])])
        mats.append(np.outer(plus, e.conj()) + np.outer(minus, perp.conj()))
    return LocalUnitarySet(tuple(mats))


__all__ = [
    "GroverRun", "grover_iterate", "grover_trace", "optimal_iterations",
    "success_probability", "rotation_success", "modified_search_success",
    "build_alignment_unitaries",
]
