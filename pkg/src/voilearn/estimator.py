"""Scikit-learn style estimator over the grid posterior.

Wraps the belief machinery in a ``fit``/``partial_fit``/``predict`` surface
so the reward learner composes with the wider ecosystem: ``X`` rows are
feature *differences* of compared item pairs, ``y`` holds the stated
preferences in {+1, -1}, and the fitted ``coef_`` is the posterior-mean
weight vector, usable exactly like a linear model's coefficients.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_array, check_is_fitted

from .belief import update, uniform_prior
from .grid import WeightGrid
from .teachers import PREFERS_I, check_beta, log_preference_prob

__all__ = ["PreferenceRewardEstimator"]


class PreferenceRewardEstimator(BaseEstimator):
    """Bayesian linear-reward estimator learned from pairwise preferences.

    Parameters
    ----------
    lower, upper : float
        Per-axis bounds of the weight grid.
    points_per_axis : int
        Grid resolution; posterior cost scales with ``points_per_axis ** d``.

    Attributes
    ----------
    grid_ : WeightGrid
        The discretized weight domain (built on first fit).
    belief_ : Belief
        Current posterior over the grid cells.
    coef_ : ndarray of shape (n_features,)
        Posterior-mean weights.
    """

    def __init__(self, lower: float = -10.0, upper: float = 10.0, points_per_axis: int = 21):
        self.lower = lower
        self.upper = upper
        self.points_per_axis = points_per_axis

    def _validate_observations(self, X, y, beta):
        X = check_array(X, dtype=float, ensure_2d=True)
        y = np.asarray(y)
        if y.shape != (X.shape[0],):
            raise ValueError(f"y has shape {y.shape}, expected ({X.shape[0]},)")
        if not np.isin(y, (PREFERS_I, -PREFERS_I)).all():
            raise ValueError("preferences must be +1 or -1")
        betas = np.broadcast_to(np.asarray(beta, dtype=float), (X.shape[0],))
        for b in np.unique(betas):
            check_beta(b)
        return X, y.astype(int), betas

    def fit(self, X, y, beta=1.0):
        """Start from a uniform prior and absorb all observations.

        ``beta`` is the rationality of the answering teacher, scalar or one
        value per row.
        """
        X = check_array(X, dtype=float, ensure_2d=True)
        self.n_features_in_ = X.shape[1]
        self.grid_ = WeightGrid.cube(
            X.shape[1], lower=self.lower, upper=self.upper, points=self.points_per_axis
        )
        self.belief_ = uniform_prior(self.grid_)
        return self.partial_fit(X, y, beta=beta)

    def partial_fit(self, X, y, beta=1.0):
        """Fold more preference observations into the posterior."""
        if not hasattr(self, "belief_"):
            return self.fit(X, y, beta=beta)
        X, y, betas = self._validate_observations(X, y, beta)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"X has {X.shape[1]} features, estimator was fitted with {self.n_features_in_}")
        belief = self.belief_
        for phi_diff, pref, b in zip(X, y, betas):
            belief = update(belief, pref, phi_diff, b)
        self.belief_ = belief
        return self

    @property
    def coef_(self) -> np.ndarray:
        check_is_fitted(self, "belief_")
        return self.belief_.masses @ self.grid_.cell_centers

    def predict(self, X) -> np.ndarray:
        """Expected reward of each item under the posterior-mean weights."""
        check_is_fitted(self, "belief_")
        X = check_array(X, dtype=float, ensure_2d=True)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"X has {X.shape[1]} features, estimator was fitted with {self.n_features_in_}")
        return X @ self.coef_

    def predict_preference_proba(self, X, beta=1.0) -> np.ndarray:
        """Posterior-predictive probability that each diff is answered ``+1``."""
        check_is_fitted(self, "belief_")
        X, _, betas = self._validate_observations(X, np.full(len(X), PREFERS_I), beta)
        masses = self.belief_.masses
        out = np.empty(X.shape[0])
        for i, (phi_diff, b) in enumerate(zip(X, betas)):
            logits = b * (self.grid_.cell_centers @ phi_diff)
            out[i] = masses @ np.exp(-np.logaddexp(0.0, -logits))
        return out

    def score(self, X, y, beta=1.0) -> float:
        """Mean posterior-mean log-likelihood of the stated preferences."""
        check_is_fitted(self, "belief_")
        X, y, betas = self._validate_observations(X, y, beta)
        w = self.coef_
        return float(
            np.mean([log_preference_prob(w, phi, b, pref) for phi, pref, b in zip(X, y, betas)])
        )
