"""scikit-learn compatible wrapper.

Rows of ``X`` are state vectors (complex or real amplitudes, length ``2**n``).
``transform`` maps each row to ``[pmax, groverian]``, so the measure can sit
inside a ``Pipeline`` or be cross-checked with ``get_params``/``clone``.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .closedform import pmax_closed, table_for
from .exceptions import DimensionMismatch
from .optimize import DEFAULT_SEED, OptimizerConfig, groverian, pmax_numeric
from .statevec import QState, _frozen
from .validation import check_state_batch


class GroverianEntanglement(TransformerMixin, BaseEstimator):
    """Groverian entanglement of each state in a batch.

    Parameters
    ----------
    method : {"numeric", "closed"}
        ``numeric`` maximizes over product states; ``closed`` evaluates the
        closed-form expression (real amplitudes only).
    starts, max_sweeps, tol, seed
        Optimizer settings, see :class:`groverian.optimize.OptimizerConfig`.
    conjectural : bool
        Allow generated closed forms for qubit counts outside {2, 3, 5}.

    Attributes
    ----------
    n_qubits_ : int
    n_features_in_ : int
    config_ : OptimizerConfig or None
    table_ : SignTable or None
    """

    def __init__(self, method="numeric", starts=64, max_sweeps=1000, tol=1e-12,
                 seed=DEFAULT_SEED, conjectural=False):
        self.method = method
        self.starts = starts
        self.max_sweeps = max_sweeps
        self.tol = tol
        self.seed = seed
        self.conjectural = conjectural

    def fit(self, X, y=None):
        if self.method not in ("numeric", "closed"):
            raise ValueError(f"method must be 'numeric' or 'closed', got {self.method!r}")
        n, _ = check_state_batch(X)
        self.n_qubits_ = n
        self.n_features_in_ = 2**n
        self.config_ = None
        self.table_ = None
        if self.method == "numeric":
            self.config_ = OptimizerConfig(starts=self.starts, max_sweeps=self.max_sweeps,
                                           tol=self.tol, seed=self.seed)
        else:
            self.table_ = table_for(n, conjectural=self.conjectural)
        return self

    def _pmax(self, X):
        check_is_fitted(self)
        n, rows = check_state_batch(X)
        if n != self.n_qubits_:
            raise DimensionMismatch(f"fitted for {self.n_qubits_} qubits, got {n}")
        out = np.empty(rows.shape[0])
        for k, amps in enumerate(rows):
            state = QState(n, _frozen(amps))
            if self.method == "numeric":
                out[k] = pmax_numeric(state, self.config_).pmax
            else:
                out[k] = pmax_closed(state, self.table_)
        return out

    def transform(self, X):
        """Return an ``(n_samples, 2)`` array of ``[pmax, groverian]``."""
        pmax = self._pmax(X)
        g = np.array([groverian(min(p, 1.0)) for p in pmax])
        return np.column_stack([pmax, g])

    def predict(self, X):
        """Groverian entanglement only, shape ``(n_samples,)``."""
        return self.transform(X)[:, 1]

    def get_feature_names_out(self, input_features=None):
        return np.array(["pmax", "groverian"], dtype=object)
