import numpy as np
import pytest

from voilearn.queries import (
    QueryMode,
    QuerySource,
    fixed_unit_diff_source,
    generate_query,
    restaurant_source,
    sample_restaurant,
    scaled_magnitude_source,
    unit_box_source,
)


def test_restaurant_features_in_range():
    rng = np.random.default_rng(0)
    for _ in range(10_000):
        cleanliness, vegan, spiciness = sample_restaurant(rng)
        assert 1.0 <= cleanliness <= 10.0
        assert vegan in (0.0, 1.0)
        assert 1.0 <= spiciness <= 10.0


def test_restaurant_cleanliness_mean():
    rng = np.random.default_rng(1)
    values = np.array([sample_restaurant(rng)[0] for _ in range(100_000)])
    assert 5.45 <= values.mean() <= 5.55  # U(1, 10) mean is 5.5


def test_restaurant_integer_mode():
    rng = np.random.default_rng(2)
    for _ in range(500):
        cleanliness, vegan, spiciness = sample_restaurant(rng, integer_ratings=True)
        assert cleanliness == int(cleanliness) and 1 <= cleanliness <= 10
        assert spiciness == int(spiciness) and 1 <= spiciness <= 10
        assert vegan in (0.0, 1.0)


def test_fixed_unit_diff_is_exact():
    source = fixed_unit_diff_source(dims=1)
    for _ in range(5):
        phi_i, phi_j = generate_query(source)
        assert np.array_equal(phi_i - phi_j, [1.0])
    source3 = fixed_unit_diff_source(dims=3)
    phi_i, phi_j = generate_query(source3)
    assert np.array_equal(phi_i - phi_j, [1.0, 0.0, 0.0])


def test_query_stream_is_replayable():
    a = restaurant_source(np.random.default_rng(99))
    b = restaurant_source(np.random.default_rng(99))
    for _ in range(20):
        qa = generate_query(a)
        qb = generate_query(b)
        assert np.array_equal(qa[0], qb[0]) and np.array_equal(qa[1], qb[1])


def test_unit_box_source_range():
    source = unit_box_source(np.random.default_rng(3), dims=2)
    for _ in range(200):
        phi_i, phi_j = generate_query(source)
        assert phi_i.shape == (2,) and phi_j.shape == (2,)
        assert np.all((0 <= phi_i) & (phi_i < 1)) and np.all((0 <= phi_j) & (phi_j < 1))


def test_scaled_magnitude_band():
    # beta * weight_scale = 20 puts magnitudes in [0.1, 0.3]
    source = scaled_magnitude_source(np.random.default_rng(4), beta=2.0, weight_scale=10.0)
    diffs = []
    for _ in range(2000):
        phi_i, phi_j = generate_query(source)
        diffs.append(float((phi_i - phi_j)[0]))
    diffs = np.array(diffs)
    assert np.all((0.1 <= np.abs(diffs)) & (np.abs(diffs) <= 0.3))
    assert (diffs > 0).any() and (diffs < 0).any()


def test_scaled_magnitude_capped_at_unit():
    source = scaled_magnitude_source(np.random.default_rng(5), beta=0.1, weight_scale=1.0)
    for _ in range(200):
        phi_i, phi_j = generate_query(source)
        assert abs((phi_i - phi_j)[0]) <= 1.0


def test_source_validation():
    with pytest.raises(ValueError):
        QuerySource(QueryMode.RANDOM_RESTAURANTS, rng=np.random.default_rng(0), dims=2)
    with pytest.raises(ValueError):
        QuerySource(QueryMode.CUSTOM, rng=np.random.default_rng(0))
    with pytest.raises(ValueError):
        QuerySource(QueryMode.RANDOM_RESTAURANTS)  # no rng
    with pytest.raises(ValueError):
        scaled_magnitude_source(np.random.default_rng(0), beta=0.0, weight_scale=1.0)
