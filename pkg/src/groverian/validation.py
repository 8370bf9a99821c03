"""Input validation helpers.

These play the role ``sklearn.utils.validation`` plays for estimators, but
accept complex input (``check_array`` rejects it) and know about the
``2**n`` length constraint of qubit registers.
"""
from __future__ import annotations

import numpy as np

from .exceptions import ComplexInput, DimensionMismatch, IndexOutOfRange, TooLarge, ZeroVector

MAX_QUBITS = 14
NORM_TOL = 1e-6
ZERO_NORM = 1e-12
REAL_TOL = 1e-12


def check_n_qubits(n, *, minimum=1):
    """Return ``n`` as an int, enforcing ``minimum <= n <= MAX_QUBITS``."""
    if isinstance(n, bool) or int(n) != n:
        raise TypeError(f"qubit count must be an integer, got {n!r}")
    n = int(n)
    if n > MAX_QUBITS:
        raise TooLarge(f"n={n} exceeds the cap of {MAX_QUBITS} qubits")
    if n < minimum:
        raise DimensionMismatch(f"n={n} is below the minimum of {minimum}")
    return n


def n_qubits_for_length(length):
    """Infer the qubit count from a vector length, which must be a power of two."""
    if length < 2 or length & (length - 1):
        raise DimensionMismatch(f"length {length} is not 2**n for any n >= 1")
    return check_n_qubits(length.bit_length() - 1)


def check_amplitudes(amplitudes, n=None, *, tol=NORM_TOL):
    """Validate an amplitude vector and return a renormalized complex copy.

    Parameters
    ----------
    amplitudes : array_like
        Complex (or real) sequence of length ``2**n``.
    n : int, optional
        Expected qubit count. Inferred from the length when omitted.
    tol : float
        Allowed deviation of the input norm from one before renormalization.

    Returns
    -------
    n : int
    vec : ndarray of complex128, unit norm
    """
    vec = np.asarray(amplitudes, dtype=np.complex128)
    if vec.ndim != 1:
        raise DimensionMismatch(f"amplitudes must be one-dimensional, got shape {vec.shape}")
    if n is None:
        n = n_qubits_for_length(vec.size)
    else:
        n = check_n_qubits(n)
        if vec.size != 2**n:
            raise DimensionMismatch(f"expected {2**n} amplitudes for n={n}, got {vec.size}")
    if not np.all(np.isfinite(vec)):
        raise ValueError("amplitudes must be finite")
    norm = np.linalg.norm(vec)
    if norm < ZERO_NORM:
        raise ZeroVector("amplitude vector has (numerically) zero norm")
    if abs(norm - 1.0) > tol:
        raise ValueError(f"amplitude norm {norm:.9g} deviates from 1 by more than {tol:g}")
    return n, vec / norm


def check_real(vec, tol=REAL_TOL):
    """Return the real part of ``vec``, raising ComplexInput if any imaginary part exceeds ``tol``."""
    vec = np.asarray(vec)
    if np.iscomplexobj(vec):
        worst = float(np.max(np.abs(vec.imag), initial=0.0))
        if worst > tol:
            raise ComplexInput(
                f"closed-form expressions hold for real coefficients only "
                f"(largest imaginary part {worst:.3g})"
            )
        return vec.real.copy()
    return vec.astype(np.float64)


def check_index(index, size, what="index"):
    if isinstance(index, bool) or int(index) != index:
        raise TypeError(f"{what} must be an integer, got {index!r}")
    index = int(index)
    if not 0 <= index < size:
        raise IndexOutOfRange(f"{what} {index} outside [0, {size})")
    return index


def check_state_batch(X):
    """Validate a 2-D batch of state vectors (one state per row).

    Returns the qubit count and a complex array whose rows are renormalized.
    """
    X = np.asarray(X)
    if X.ndim != 2:
        raise DimensionMismatch(f"expected a 2-D array of states, got shape {X.shape}")
    if X.shape[0] == 0:
        raise ValueError("empty batch")
    n = n_qubits_for_length(X.shape[1])
    rows = [check_amplitudes(row, n)[1] for row in X]
    return n, np.vstack(rows)


def check_seed(seed):
    """Coerce a user seed into a non-negative 64-bit integer."""
    if seed is None:
        raise ValueError("seed must be given explicitly; no entropy-based default")
    seed = int(seed)
    if not 0 <= seed < 2**64:
        raise ValueError(f"seed {seed} outside the unsigned 64-bit range")
    return seed
