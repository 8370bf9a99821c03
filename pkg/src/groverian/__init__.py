"""Groverian entanglement of n-qubit pure states.

Three routes to the maximal success probability of Grover search with local
pre-processing: exact simulation (:mod:`groverian.grover`), numerical
maximization over product states (:mod:`groverian.optimize`) and published
closed forms for real three- and five-qubit states (:mod:`groverian.closedform`).
"""
__version__ = "0.1.0"

from .closedform import generate_table, pmax_closed, transcribed_table, verify_transcription
from .estimator import GroverianEntanglement
from .grover import modified_search_success, optimal_iterations
from .optimize import OptimizerConfig, groverian, pmax_numeric
from .statevec import build, make_state

__all__ = [
    "GroverianEntanglement", "OptimizerConfig", "build", "generate_table", "groverian",
    "make_state", "modified_search_success", "optimal_iterations", "pmax_closed",
    "pmax_numeric", "transcribed_table", "verify_transcription",
]
