import numpy as np
import pytest
from sklearn.base import clone

from voilearn import PreferenceRewardEstimator, preference_prob


def make_dataset(w_true, n=400, beta=2.0, seed=0, scale=0.3):
    """Synthetic preference comparisons from a simulated teacher."""
    rng = np.random.default_rng(seed)
    X = rng.uniform(-scale, scale, size=(n, len(w_true)))
    y = np.array(
        [1 if rng.random() < preference_prob(w_true, x, beta, +1) else -1 for x in X]
    )
    return X, y


def test_sklearn_param_surface():
    est = PreferenceRewardEstimator(points_per_axis=11)
    params = est.get_params()
    assert params == {"lower": -10.0, "upper": 10.0, "points_per_axis": 11}
    cloned = clone(est)
    assert cloned.get_params() == params
    est.set_params(points_per_axis=5)
    assert est.points_per_axis == 5


def test_fit_recovers_true_weights():
    w_true = np.array([4.0])
    X, y = make_dataset(w_true, n=600, beta=2.0, seed=1)
    est = PreferenceRewardEstimator(points_per_axis=11).fit(X, y, beta=2.0)
    assert est.n_features_in_ == 1
    assert est.coef_.shape == (1,)
    assert abs(est.coef_[0] - 4.0) < 1.0  # grid spacing is 2.0
    assert est.belief_.mass_at(est.grid_.nearest_cell_index(w_true)) > 0.5


def test_predict_is_linear_in_coef():
    X, y = make_dataset(np.array([2.0, -4.0]), n=200, seed=2)
    est = PreferenceRewardEstimator(points_per_axis=7).fit(X, y)
    items = np.array([[1.0, 0.0], [0.0, 1.0], [2.0, 2.0]])
    np.testing.assert_allclose(est.predict(items), items @ est.coef_)


def test_partial_fit_matches_batch_fit():
    X, y = make_dataset(np.array([-2.0]), n=80, seed=3)
    batch = PreferenceRewardEstimator(points_per_axis=11).fit(X, y, beta=1.5)
    inc = PreferenceRewardEstimator(points_per_axis=11)
    inc.partial_fit(X[:40], y[:40], beta=1.5)
    inc.partial_fit(X[40:], y[40:], beta=1.5)
    np.testing.assert_allclose(batch.belief_.masses, inc.belief_.masses, rtol=1e-10)


def test_fit_order_does_not_matter():
    X, y = make_dataset(np.array([3.0]), n=60, seed=4)
    perm = np.random.default_rng(0).permutation(len(X))
    a = PreferenceRewardEstimator(points_per_axis=9).fit(X, y)
    b = PreferenceRewardEstimator(points_per_axis=9).fit(X[perm], y[perm])
    np.testing.assert_allclose(a.belief_.masses, b.belief_.masses, rtol=1e-9)


def test_per_row_betas():
    X, y = make_dataset(np.array([1.0]), n=50, seed=5)
    betas = np.linspace(0.5, 3.0, 50)
    est = PreferenceRewardEstimator(points_per_axis=9).fit(X, y, beta=betas)
    assert hasattr(est, "belief_")


def test_predict_preference_proba_in_open_interval():
    X, y = make_dataset(np.array([2.0]), n=100, seed=6)
    est = PreferenceRewardEstimator(points_per_axis=11).fit(X, y)
    probs = est.predict_preference_proba(np.array([[0.5], [-0.5], [0.0]]), beta=2.0)
    assert np.all((probs > 0) & (probs < 1))
    assert probs[0] + probs[1] == pytest.approx(1.0, abs=1e-9)  # antisymmetric diffs
    assert probs[2] == pytest.approx(0.5, abs=1e-12)


def test_score_prefers_consistent_labels():
    w_true = np.array([3.0])
    X, y = make_dataset(w_true, n=300, beta=2.0, seed=7)
    est = PreferenceRewardEstimator(points_per_axis=11).fit(X, y, beta=2.0)
    X_test, y_test = make_dataset(w_true, n=200, beta=2.0, seed=8)
    assert est.score(X_test, y_test, beta=2.0) > est.score(X_test, -y_test, beta=2.0)


def test_validation_errors():
    est = PreferenceRewardEstimator()
    with pytest.raises(ValueError):
        est.fit(np.zeros((3, 2)), np.array([1, 0, -1]))  # 0 is not a preference
    with pytest.raises(ValueError):
        est.fit(np.zeros((3, 2)), np.array([1, -1]))  # length mismatch
    fitted = PreferenceRewardEstimator(points_per_axis=5).fit(np.zeros((2, 2)), np.array([1, -1]))
    with pytest.raises(ValueError):
        fitted.partial_fit(np.zeros((2, 3)), np.array([1, -1]))  # feature mismatch
    with pytest.raises(ValueError):
        fitted.fit(np.zeros((2, 2)), np.array([1, -1]), beta=-1.0)


def test_unfitted_predict_raises():
    from sklearn.exceptions import NotFittedError

    with pytest.raises(NotFittedError):
        PreferenceRewardEstimator().predict(np.zeros((1, 2)))
