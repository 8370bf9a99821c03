import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline

from groverian import GroverianEntanglement
from groverian.exceptions import ComplexInput, DimensionMismatch, Unsupported
from groverian.statevec import build


def batch(*states):
    return np.stack([s.amplitudes for s in states])


def test_numeric_transform():
    X = batch(build("ghz", 3), build("w", 3), build("uniform", 3))
    out = GroverianEntanglement(starts=8).fit(X).transform(X)
    assert out.shape == (3, 2)
    np.testing.assert_allclose(out[:, 0], [0.5, 4 / 9, 1.0], atol=1e-6)
    np.testing.assert_allclose(out[:, 1], np.sqrt(np.clip(1 - out[:, 0], 0, None)), atol=1e-12)


def test_closed_method():
    X = batch(build("ghz", 3), build("w", 3)).real
    est = GroverianEntanglement(method="closed").fit(X)
    np.testing.assert_allclose(est.transform(X)[:, 0], [1.0, 0.75], atol=1e-12)
    assert est.table_.source == "transcribed" and est.config_ is None


def test_closed_gated_and_complex():
    with pytest.raises(Unsupported):
        GroverianEntanglement(method="closed").fit(batch(build("ghz", 4)))
    X = np.array([[1, 1j, 0, 0]]) / np.sqrt(2)
    with pytest.raises(ComplexInput):
        GroverianEntanglement(method="closed").fit(X).transform(X)


def test_predict_and_feature_names():
    X = batch(build("ghz", 2))
    est = GroverianEntanglement(starts=4).fit(X)
    assert est.predict(X).shape == (1,)
    assert list(est.get_feature_names_out()) == ["pmax", "groverian"]
    assert est.n_qubits_ == 2 and est.n_features_in_ == 4


def test_params_and_clone():
    est = GroverianEntanglement(starts=5, seed=3)
    params = clone(est).get_params()
    assert params["starts"] == 5 and params["seed"] == 3 and params["method"] == "numeric"


def test_pipeline():
    X = batch(build("ghz", 2), build("basis", 2, index=1))
    out = make_pipeline(GroverianEntanglement(starts=4)).fit_transform(X)
    np.testing.assert_allclose(out[:, 0], [0.5, 1.0], atol=1e-9)


def test_errors():
    X = batch(build("ghz", 3))
    with pytest.raises(NotFittedError):
        GroverianEntanglement().transform(X)
    est = GroverianEntanglement(starts=2).fit(X)
    with pytest.raises(DimensionMismatch):
        est.transform(batch(build("ghz", 2)))
    with pytest.raises(ValueError):
        GroverianEntanglement(method="magic").fit(X)
