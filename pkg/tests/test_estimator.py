import math
import pickle

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline
from sklearn.preprocessing import FunctionTransformer

from biarc.estimator import OUTPUT_FEATURES, BiarcInterpolator
from biarc.core import NoSolution

PI = math.pi
X = np.array(
    [
        [0, 0, PI / 2, 1, 0, PI / 2],
        [0, 0, PI / 2, 1, 0, -PI / 2],
        [0, 0, 0, 2, 0, 0],
    ]
)


def test_transform_values():
    out = BiarcInterpolator().fit(X).transform(X)
    assert out.shape == (3, 8)
    assert out[0, :4] == pytest.approx([PI / 4, -4, PI / 4, 4], abs=1e-13)
    assert out[1, 4:7] == pytest.approx([0.5, 0.5, 0.0], abs=1e-15)
    assert out[2, 7] == 2.0
    assert list(BiarcInterpolator().fit(X).get_feature_names_out()) == list(OUTPUT_FEATURES)


def test_params_and_clone():
    est = BiarcInterpolator(degrees=True, tol_residual=1e-6)
    assert est.get_params() == {"degrees": True, "eps_rank": 1e-12, "tol_residual": 1e-6, "on_error": "raise"}
    c = clone(est)
    assert c.get_params() == est.get_params() and c is not est
    est.set_params(on_error="nan")
    assert est.on_error == "nan"


def test_degrees():
    xd = X.copy()
    xd[:, [2, 5]] = np.degrees(xd[:, [2, 5]])
    a = BiarcInterpolator(degrees=True).fit_transform(xd)
    b = BiarcInterpolator().fit_transform(X)
    assert np.allclose(a, b, rtol=0, atol=1e-13)


def test_errors_raise_or_nan():
    bad = np.vstack([X, [0, 0, PI, 1, 0, PI]])
    with pytest.raises(NoSolution):
        BiarcInterpolator().fit_transform(bad)
    est = BiarcInterpolator(on_error="nan").fit(bad)
    out = est.transform(bad)
    assert np.isnan(out[3]).all() and np.isfinite(out[:3]).all()
    assert est.errors_ == [None, None, None, "NoSolution"]
    with pytest.raises(ValueError):
        BiarcInterpolator(on_error="ignore").fit(X)


def test_validation():
    with pytest.raises(NotFittedError):
        BiarcInterpolator().transform(X)
    with pytest.raises(ValueError):
        BiarcInterpolator().fit(X[:, :5])
    with pytest.raises(ValueError):
        BiarcInterpolator().fit(np.where(np.eye(3, 6) > 0, np.nan, X))


def test_pipeline_and_pickle():
    pipe = make_pipeline(FunctionTransformer(lambda z: z * [1, 1, 1, 1, 1, 1]), BiarcInterpolator())
    out = pipe.fit_transform(X)
    assert out.shape == (3, 8)
    est = pickle.loads(pickle.dumps(BiarcInterpolator().fit(X)))
    assert np.array_equal(est.transform(X), out)


def test_sample_shape():
    est = BiarcInterpolator(on_error="nan").fit(X)
    pts = est.sample(np.vstack([X, [0, 0, PI, 1, 0, PI]]), n_segments=4)
    assert pts.shape == (4, 5, 4)
    assert pts[2, :, 0] == pytest.approx([0, 0.5, 1, 1.5, 2])
    assert np.isnan(pts[3]).all()
    with pytest.raises(ValueError):
        est.sample(X, 0)


def test_dataframe_input():
    pd = pytest.importorskip("pandas")
    df = pd.DataFrame(X, columns=["x0", "y0", "theta0", "x1", "y1", "theta1"])
    est = BiarcInterpolator().fit(df)
    assert list(est.feature_names_in_) == list(df.columns)
    assert est.transform(df).shape == (3, 8)
