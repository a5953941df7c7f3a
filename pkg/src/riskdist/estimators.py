"""scikit-learn compatible front end.

:class:`McMapTransformer` turns rows of ``[mean, c_statistic]`` into rows of
fitted family parameters, and back again with ``inverse_transform``. It is
stateless, so ``fit`` only validates its input, but it composes with
``Pipeline``, ``clone`` and ``get_params``/``set_params`` like any transformer.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from . import quad
from ._validation import check_mean_cstat
from .dists import FAMILIES, make_family
from .exceptions import DomainError, NonConvergenceError
from .mapping import mc_of, mcmap


class McMapTransformer(TransformerMixin, BaseEstimator):
    """Map ``[m, c]`` rows to distribution parameters for one family.

    Parameters
    ----------
    family : {"beta", "logitnorm", "probitnorm"}
    quad_tol : float
        Absolute tolerance of the CDF integrals.
    max_iter : int or None
        Solver iteration cap; ``None`` keeps each solver's default.
    on_failure : {"raise", "nan"}
        What to do with rows whose solve does not converge.

    Attributes
    ----------
    reports_ : list of SolveReport
        Diagnostics from the most recent ``transform`` call.
    """

    def __init__(self, family="beta", quad_tol=quad.DEFAULT_TOL, max_iter=None, on_failure="raise"):
        self.family = family
        self.quad_tol = quad_tol
        self.max_iter = max_iter
        self.on_failure = on_failure

    def _check_params(self):
        if self.family not in FAMILIES:
            raise DomainError(f"family must be one of {sorted(FAMILIES)}, got {self.family!r}")
        if self.on_failure not in ("raise", "nan"):
            raise ValueError("on_failure must be 'raise' or 'nan'")

    def _validate(self, X):
        X = check_array(X, dtype=float, ensure_min_samples=1)
        if X.shape[1] != 2:
            raise ValueError(f"expected 2 columns [mean, c_statistic], got {X.shape[1]}")
        for m, c in X:
            check_mean_cstat(m, c)
        return X

    def fit(self, X, y=None):
        self._check_params()
        self._validate(X)
        self.n_features_in_ = 2
        return self

    def transform(self, X):
        check_is_fitted(self, "n_features_in_")
        X = self._validate(X)
        kwargs = {"quad_tol": self.quad_tol}
        if self.max_iter is not None:
            kwargs["max_iter"] = self.max_iter
        out = np.empty_like(X)
        self.reports_ = []
        for i, (m, c) in enumerate(X):
            report = mcmap(self.family, m, c, **kwargs)
            self.reports_.append(report)
            if report.converged:
                out[i] = report.params.params
            elif self.on_failure == "nan":
                out[i] = np.nan
            else:
                raise NonConvergenceError(f"row {i}: {report.warning}")
        return out

    def inverse_transform(self, X):
        """Parameters to ``[m, c]`` through the CDF integrals."""
        check_is_fitted(self, "n_features_in_")
        X = check_array(X, dtype=float)
        return np.array([list(mc_of(make_family(self.family, p1, p2), tol=self.quad_tol)) for p1, p2 in X])

    def get_feature_names_out(self, input_features=None):
        names = {"beta": ["alpha", "beta"], "logitnorm": ["mu", "sigma"], "probitnorm": ["mu", "sigma"]}
        return np.asarray(names[self.family], dtype=object)
