import numpy as np
import pytest

from treelets import generate
from treelets.datagen import Aniso, Blobs, Circles, Moons, Uniform, Varied


class TestCircles:
    def test_zero_noise_points_lie_on_the_circles(self):
        data, labels = generate(Circles(factor=0.5, noise=0.0), 4, seed=1)
        radii = np.sqrt((data.values**2).sum(axis=1))
        for r, lab in zip(radii, labels.assignments):
            assert r == pytest.approx(1.0 if lab == 0 else 0.5, abs=1e-15)

    def test_split_is_balanced(self):
        _, labels = generate(Circles(), 301, seed=0)
        counts = np.bincount(labels.assignments)
        assert abs(counts[0] - counts[1]) <= 1

    def test_factor_validated(self):
        with pytest.raises(ValueError):
            Circles(factor=1.5)


class TestMoons:
    def test_zero_noise_arcs(self):
        data, labels = generate(Moons(noise=0.0), 10, seed=0)
        upper = data.values[labels.assignments == 0]
        lower = data.values[labels.assignments == 1]
        np.testing.assert_allclose(np.sqrt((upper**2).sum(axis=1)), 1.0, atol=1e-12)
        shifted = lower - np.array([1.0, 0.5])
        np.testing.assert_allclose(np.sqrt((shifted**2).sum(axis=1)), 1.0, atol=1e-12)


class TestBlobs:
    def test_zero_std_collapses_to_center(self):
        data, labels = generate(Blobs(centers=((0.0, 0.0),), stds=(0.0,)), 5, seed=2)
        assert np.array_equal(data.values, np.zeros((5, 2)))
        assert labels.n_clusters == 1

    def test_component_sizes_balanced(self):
        _, labels = generate(Blobs(), 100, seed=3)
        counts = np.bincount(labels.assignments)
        assert counts.max() - counts.min() <= 1

    def test_aniso_is_sheared_blobs(self):
        straight, _ = generate(Blobs(), 30, seed=7)
        sheared, _ = generate(Aniso(), 30, seed=7)
        t = np.array(Aniso().transform)
        np.testing.assert_allclose(sheared.values, straight.values @ t, atol=1e-12)

    def test_varied_uses_given_stds(self):
        data, labels = generate(Varied(stds=(0.0, 0.0, 5.0)), 30, seed=1)
        first = data.values[labels.assignments == 0]
        assert np.ptp(first, axis=0).max() == 0.0


class TestUniform:
    def test_unit_square_and_mean(self):
        data, labels = generate(Uniform(), 1000, seed=4)
        assert (data.values >= 0.0).all() and (data.values < 1.0).all()
        # mean of 1000 U[0,1] draws: sd = 1/sqrt(12*1000) ~ 0.00913
        assert np.abs(data.values.mean(axis=0) - 0.5).max() < 5 * 0.00913
        assert labels.n_clusters == 1


class TestDeterminism:
    @pytest.mark.parametrize(
        "shape", [Circles(), Moons(), Blobs(), Aniso(), Varied(), Uniform()]
    )
    def test_same_seed_bitwise_identical(self, shape):
        a, la = generate(shape, 64, seed=99)
        b, lb = generate(shape, 64, seed=99)
        assert np.array_equal(a.values, b.values)
        assert np.array_equal(la.assignments, lb.assignments)

    def test_different_seeds_differ(self):
        a, _ = generate(Uniform(), 16, seed=0)
        b, _ = generate(Uniform(), 16, seed=1)
        assert not np.array_equal(a.values, b.values)

    def test_n_too_small_for_components(self):
        with pytest.raises(ValueError):
            generate(Blobs(), 2, seed=0)
