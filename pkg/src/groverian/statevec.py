"""Dense n-qubit pure states, standard builders and local unitaries.

Basis index convention: for ``|i> = |i_0 i_1 ... i_{n-1}>`` the first qubit
``i_0`` is the most significant bit, so index 6 at n=3 is ``|110>``. Reshaping
an amplitude vector to ``(2,) * n`` in C order puts qubit ``j`` on axis ``j``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .exceptions import DimensionMismatch, GroverianError, InvalidKind, NonUnitary, StateSpecError
from .validation import check_amplitudes, check_index, check_n_qubits

UNITARY_TOL = 1e-10
QUBIT_TOL = 1e-12


def _frozen(arr):
    arr = np.array(arr, dtype=np.complex128)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class QState:
    """Normalized n-qubit pure state. Construct through :func:`make_state`."""

    n: int
    amplitudes: np.ndarray

    @property
    def dim(self):
        return 2**self.n

    def tensor(self):
        """Amplitudes viewed as an order-n tensor with one axis per qubit."""
        return self.amplitudes.reshape((2,) * self.n)

    def is_real(self, tol=QUBIT_TOL):
        return bool(np.all(np.abs(self.amplitudes.imag) <= tol))

    def __repr__(self):
        return f"QState(n={self.n}, amplitudes={np.array2string(self.amplitudes, precision=4)})"


@dataclass(frozen=True, eq=False)
class Qubit:
    alpha: complex
    beta: complex

    def __post_init__(self):
        norm = abs(self.alpha) ** 2 + abs(self.beta) ** 2
        if abs(norm - 1.0) > QUBIT_TOL:
            raise ValueError(f"qubit norm^2 is {norm!r}, expected 1")

    @classmethod
    def from_vector(cls, vec):
        vec = np.asarray(vec, dtype=np.complex128)
        if vec.shape != (2,):
            raise DimensionMismatch(f"qubit vector must have 2 components, got {vec.shape}")
        vec = vec / np.linalg.norm(vec)
        return cls(complex(vec[0]), complex(vec[1]))

    @property
    def vector(self):
        return np.array([self.alpha, self.beta], dtype=np.complex128)


ZERO = Qubit(1.0, 0.0)
ONE = Qubit(0.0, 1.0)
PLUS = Qubit(2**-0.5, 2**-0.5)


@dataclass(frozen=True, eq=False)
class ProductState:
    factors: tuple

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        check_n_qubits(len(self.factors))

    @property
    def n(self):
        return len(self.factors)

    @classmethod
    def from_vectors(cls, vectors):
        return cls(tuple(Qubit.from_vector(v) for v in vectors))

    def matrix(self):
        """Factors stacked as an ``(n, 2)`` complex array."""
        return np.array([q.vector for q in self.factors])


@dataclass(frozen=True, eq=False)
class LocalUnitarySet:
    """One 2x2 unitary per qubit, applied as ``U_1 (x) ... (x) U_n``."""

    matrices: tuple

    def __post_init__(self):
        mats = []
        for k, u in enumerate(self.matrices):
            u = np.array(u, dtype=np.complex128)
            if u.shape != (2, 2):
                raise DimensionMismatch(f"matrix {k} has shape {u.shape}, expected (2, 2)")
            drift = np.max(np.abs(u.conj().T @ u - np.eye(2)))
            if drift > UNITARY_TOL:
                raise NonUnitary(f"matrix {k} deviates from unitarity by {drift:.3g}")
            u.setflags(write=False)
            mats.append(u)
        object.__setattr__(self, "matrices", tuple(mats))

    @property
    def n(self):
        return len(self.matrices)

    def dagger(self):
        return LocalUnitarySet(tuple(u.conj().T for u in self.matrices))

    @classmethod
    def identity(cls, n):
        return cls(tuple(np.eye(2) for _ in range(n)))

    @classmethod
    def hadamard(cls, n):
        h = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
        return cls(tuple(h for _ in range(n)))


def make_state(n, amplitudes):
    """Validate, renormalize and wrap an amplitude sequence.

    Raises DimensionMismatch, ZeroVector or TooLarge on bad input.
    """
    n, vec = check_amplitudes(amplitudes, n)
    return QState(n, _frozen(vec))


def basis_state(n, index):
    n = check_n_qubits(n)
    index = check_index(index, 2**n, "basis index")
    vec = np.zeros(2**n, dtype=np.complex128)
    vec[index] = 1.0
    return QState(n, _frozen(vec))


def weight(index):
    """Hamming weight of a basis index."""
    return bin(index).count("1")


def build(kind, n=None, *, index=None, factors=None):
    """Build one of the standard states.

    ``kind`` is one of ``"ghz"``, ``"w"``, ``"uniform"``, ``"basis"`` (needs
    ``index``) or ``"product"`` (needs ``factors``; ``n`` is then optional).
    """
    if kind == "product":
        if factors is None:
            raise InvalidKind("product states need factors")
        p = factors if isinstance(factors, ProductState) else ProductState.from_vectors(factors)
        if n is not None and p.n != n:
            raise DimensionMismatch(f"{p.n} factors given for n={n}")
        return expand(p)
    if n is None:
        raise InvalidKind(f"kind {kind!r} needs a qubit count")
    if kind == "basis":
        if index is None:
            raise InvalidKind("basis states need an index")
        return basis_state(n, index)
    if kind in ("ghz", "w"):
        n = check_n_qubits(n, minimum=2)
    elif kind == "uniform":
        n = check_n_qubits(n)
    else:
        raise InvalidKind(f"unknown state kind {kind!r}")

    dim = 2**n
    vec = np.zeros(dim, dtype=np.complex128)
    if kind == "ghz":
        vec[0] = vec[dim - 1] = 2**-0.5
    elif kind == "w":
        vec[[1 << k for k in range(n)]] = 1 / np.sqrt(n)
    else:
        vec[:] = 2 ** (-n / 2)
    return QState(n, _frozen(vec))


def inner_product(a, b):
    """``<a|b>``, conjugate-linear in the first argument."""
    if a.n != b.n:
        raise DimensionMismatch(f"states on {a.n} and {b.n} qubits")
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def expand(p):
    """Tensor product of the factors as a dense QState."""
    vec = np.ones(1, dtype=np.complex128)
    for q in p.factors:
        vec = np.kron(vec, q.vector)
    return make_state(p.n, vec)


def apply_locals(state, u):
    if u.n != state.n:
        raise DimensionMismatch(f"{u.n} unitaries for a {state.n}-qubit state")
    t = state.tensor()
    for j, mat in enumerate(u.matrices):
        t = np.moveaxis(np.tensordot(mat, t, axes=([1], [j])), 0, j)
    return QState(state.n, _frozen(t.reshape(-1)))


def random_qubit(rng):
    v = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    return Qubit.from_vector(v)


def random_unitary(rng):
    """Haar-ish 2x2 unitary: Gram-Schmidt on two complex Gaussian vectors."""
    a = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    b = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    a /= np.linalg.norm(a)
    b -= np.vdot(a, b) * a
    b /= np.linalg.norm(b)
    return np.column_stack([a, b])


def random_locals(n, rng):
    return LocalUnitarySet(tuple(random_unitary(rng) for _ in range(n)))


def random_state(n, rng, *, real=False):
    dim = 2**n
    vec = rng.standard_normal(dim)
    if not real:
        vec = vec + 1j * rng.standard_normal(dim)
    return make_state(n, vec / np.linalg.norm(vec))


def random_product(n, rng, *, real=False):
    if real:
        return ProductState(tuple(Qubit.from_vector(rng.standard_normal(2)) for _ in range(n)))
    return ProductState(tuple(random_qubit(rng) for _ in range(n)))


# --- state files -----------------------------------------------------------

def state_to_json(state):
    """Serialize with 17 significant digits so every double round-trips."""
    pairs = ", ".join(f"[{z.real:.17g}, {z.imag:.17g}]" for z in state.amplitudes)
    return f'{{"n": {state.n}, "amplitudes": [{pairs}]}}'


def state_from_json(text):
    doc = json.loads(text)
    try:
        n = doc["n"]
        amps = [complex(float(re), float(im)) for re, im in doc["amplitudes"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed state document: {exc}") from exc
    return make_state(n, amps)


def save_state(state, path):
    Path(path).write_text(state_to_json(state) + "\n")


def load_state(path):
    return state_from_json(Path(path).read_text())


def from_spec(spec):
    """Resolve ``kind:n`` (``ghz:3``, ``w:5``, ``uniform:4``, ``basis:3:6``) or a state-file path."""
    parts = spec.split(":")
    if parts[0] in ("ghz", "w", "uniform", "basis"):
        expected = 3 if parts[0] == "basis" else 2
        if len(parts) != expected:
            raise StateSpecError(f"state spec {spec!r}: expected {expected} ':'-separated fields")
        try:
            numbers = [int(p) for p in parts[1:]]
        except ValueError:
            bad = next(p for p in parts[1:] if not p.lstrip("-").isdigit())
            raise StateSpecError(f"state spec {spec!r}: {bad!r} is not an integer") from None
        try:
            if parts[0] == "basis":
                return build("basis", numbers[0], index=numbers[1])
            return build(parts[0], numbers[0])
        except GroverianError as exc:
            raise StateSpecError(f"state spec {spec!r}: {exc}") from exc
    path = Path(spec)
    if not path.is_file():
        raise StateSpecError(f"state spec {spec!r}: unknown kind {parts[0]!r} and no such file")
    try:
        return load_state(path)
    except (ValueError, OSError) as exc:
        raise StateSpecError(f"state file {spec!r}: {exc}") from exc


__all__ = [
    "QState", "Qubit", "ProductState", "LocalUnitarySet", "ZERO", "ONE", "PLUS",
    "make_state", "basis_state", "build", "inner_product", "expand", "apply_locals",
    "weight", "random_qubit", "random_unitary", "random_locals", "random_state",
    "random_product", "state_to_json", "state_from_json", "save_state", "load_state",
    "from_spec",
]
