"""scikit-learn front end.

:class:`BiarcInterpolator` maps rows of Hermite data
``[x0, y0, theta0, x1, y1, theta1]`` to rows of biarc parameters, so batches
of problems can sit inside pipelines and be cloned, grid-searched and
pickled like any other transformer.
"""

from __future__ import annotations

import math

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .core import Biarc, BiarcError, HermiteData, biarc_eval, compute_biarc
from .linalg2 import EPS_RANK, TOL_RESIDUAL

__all__ = ["BiarcInterpolator", "OUTPUT_FEATURES", "INPUT_FEATURES"]

INPUT_FEATURES = ("x0", "y0", "theta0", "x1", "y1", "theta1")
OUTPUT_FEATURES = ("ell0", "kappa0", "ell1", "kappa1", "x_joint", "y_joint", "theta_joint", "length")


class BiarcInterpolator(TransformerMixin, BaseEstimator):
    """Solve one biarc per row of Hermite data.

    Parameters
    ----------
    degrees : bool, default=False
        Read the two angle columns in degrees. Output angles are radians.
    eps_rank : float, default=1e-12
        Relative rank threshold of the 2x2 solve.
    tol_residual : float, default=1e-8
        Residual above which a rank-deficient system counts as inconsistent.
    on_error : {"raise", "nan"}, default="raise"
        What to do with rows that have no biarc. With ``"nan"`` the row of
        the output is filled with NaN and its error kind is kept in
        ``errors_`` after :meth:`transform`.

    Attributes
    ----------
    n_features_in_ : int
        Always 6.
    feature_names_in_ : ndarray of str
        Present when fitted on a DataFrame with string column names.
    """

    def __init__(self, degrees=False, eps_rank=EPS_RANK, tol_residual=TOL_RESIDUAL, on_error="raise"):
        self.degrees = degrees
        self.eps_rank = eps_rank
        self.tol_residual = tol_residual
        self.on_error = on_error

    def _validate(self, X, reset):
        if self.on_error not in ("raise", "nan"):
            raise ValueError(f"on_error must be 'raise' or 'nan', got {self.on_error!r}")
        if reset and hasattr(X, "columns"):
            names = np.asarray(X.columns, dtype=object)
            if all(isinstance(c, str) for c in names):
                self.feature_names_in_ = names
        X = check_array(X, dtype=np.float64, ensure_all_finite=True)
        if X.shape[1] != 6:
            raise ValueError(f"expected 6 columns {INPUT_FEATURES}, got {X.shape[1]}")
        if reset:
            self.n_features_in_ = 6
        if self.degrees:
            X = X.copy()
            X[:, [2, 5]] = np.radians(X[:, [2, 5]])
        return X

    def fit(self, X, y=None):
        """Validate the layout of ``X``; there is nothing to learn."""
        self._validate(X, reset=True)
        return self

    def biarcs(self, X) -> list[Biarc | None]:
        """Solved curves per row; ``None`` where the row failed and ``on_error='nan'``."""
        check_is_fitted(self, "n_features_in_")
        X = self._validate(X, reset=False)
        out: list[Biarc | None] = []
        errors: list[str | None] = []
        for row in X:
            try:
                out.append(compute_biarc(HermiteData(*row), self.eps_rank, self.tol_residual))
                errors.append(None)
            except BiarcError as exc:
                if self.on_error == "raise":
                    raise
                out.append(None)
                errors.append(exc.kind)
        self.errors_ = errors
        return out

    def transform(self, X):
        """Return an ``(n, 8)`` array with columns :data:`OUTPUT_FEATURES`."""
        rows = []
        for b in self.biarcs(X):
            if b is None:
                rows.append([math.nan] * len(OUTPUT_FEATURES))
            else:
                rows.append(
                    [
                        b.arc0.length,
                        b.arc0.curvature,
                        b.arc1.length,
                        b.arc1.curvature,
                        b.x_joint,
                        b.y_joint,
                        b.theta_joint,
                        b.total_length,
                    ]
                )
        return np.asarray(rows, dtype=np.float64).reshape(-1, len(OUTPUT_FEATURES))

    def sample(self, X, n_segments=32):
        """Poses at ``n_segments + 1`` equally spaced arclengths along each biarc.

        Returns an array of shape ``(n, n_segments + 1, 4)`` holding
        ``x, y, theta, kappa``; failed rows are NaN.
        """
        if n_segments < 1:
            raise ValueError("n_segments must be >= 1")
        biarcs = self.biarcs(X)
        out = np.full((len(biarcs), n_segments + 1, 4), np.nan)
        for n, b in enumerate(biarcs):
            if b is None:
                continue
            total = b.total_length
            for i in range(n_segments + 1):
                ell = total if i == n_segments else i * total / n_segments
                out[n, i] = biarc_eval(b, ell)
        return out

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "n_features_in_")
        return np.asarray(OUTPUT_FEATURES, dtype=object)

    def __sklearn_tags__(self):
        tags = super().__sklearn_tags__()
        tags.input_tags.allow_nan = False
        tags.requires_fit = True
        return tags
