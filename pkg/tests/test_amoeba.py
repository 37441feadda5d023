import math

import numpy as np
import pytest

from troplat import catalog
from troplat.amoeba import (
    distance_to_sigma,
    log_t_image,
    point_distances,
    sample_amoeba,
    shear_region_violation,
)
from troplat.entropy import LatticeMatrix, entropy_vector
from troplat.errors import NotMemberError
from troplat.polyhedral import sigma_complex

SHEAR = catalog.matrix("shear")


def sigma_of(name):
    return sigma_complex(entropy_vector(catalog.matrix(name)))


def test_identity_image_is_origin():
    A = LatticeMatrix([["1", "0"], ["0", "1"]])
    assert log_t_image(A, 0.1, (1, 1)) == (0.0, 0.0)


def test_zero_coordinate_skipped():
    assert log_t_image(SHEAR, math.exp(-3), (0, 1)) is None


def test_shear_boundary_point():
    lam = 3.0
    x, y = log_t_image(SHEAR, math.exp(-lam), (1, 1))
    assert x == pytest.approx(0.0, abs=1e-15)
    assert y == pytest.approx(x - math.log(1 + math.exp(lam * (x - 1))) / lam, abs=1e-12)


def test_invalid_t():
    with pytest.raises(ValueError):
        log_t_image(SHEAR, 1.5, (1, 1))


def test_empty_cloud():
    cloud = sample_amoeba(SHEAR, 0.1, 0)
    assert cloud.points.shape == (0, 2)
    assert distance_to_sigma(cloud, sigma_of("shear")) == 0.0


def test_sampling_is_deterministic():
    a = sample_amoeba(SHEAR, 0.05, 200, seed=4)
    b = sample_amoeba(SHEAR, 0.05, 200, seed=4)
    assert np.array_equal(a.points, b.points)


@pytest.mark.parametrize("lam", [3.0, 6.0, 10.0, 20.0])
def test_shear_region(lam):
    cloud = sample_amoeba(SHEAR, math.exp(-lam), 5000, seed=1)
    assert shear_region_violation(cloud.points, lam) <= 1e-9


def test_distance_examples():
    sigma = sigma_of("square")
    assert point_distances(np.array([[5.0, 7.0]]), sigma)[0] == 0.0
    # the downward ray from (0, 1) carries label {1}, so the nearest Sigma point is (0, 1)
    assert point_distances(np.array([[0.0, -1.0]]), sigma)[0] == pytest.approx(2.0)
    # brute force against a dense sampling of Sigma: segment, two rays, quadrant
    s = np.linspace(0, 1, 2001)[:, None]
    g = np.stack(np.meshgrid(np.linspace(2, 12, 201), np.linspace(3, 13, 201)), -1).reshape(-1, 2)
    pieces = np.vstack([s * [2.0, 2.0] + [0.0, 1.0], [2.0, 3.0] + 10 * s * [1.0, 0.0], [2.0, 3.0] + 10 * s * [0.0, 1.0], g])
    for q in ([1.0, 0.0], [4.0, -2.0], [-3.0, 6.0]):
        d = point_distances(np.array([q]), sigma)[0]
        brute = np.min(np.linalg.norm(pieces - np.array(q), axis=1))
        assert d == pytest.approx(brute, abs=1e-2)


def test_distance_symmetry_under_reordering():
    sigma = sigma_of("full3")
    pts = sample_amoeba(catalog.matrix("full3"), math.exp(-4), 400, seed=2).points
    assert distance_to_sigma(pts[::-1], sigma) == distance_to_sigma(pts, sigma)


def test_empty_sigma_rejected():
    sigma = sigma_of("square")
    from dataclasses import replace

    with pytest.raises(NotMemberError):
        distance_to_sigma(np.zeros((1, 2)), replace(sigma, sigma_ids=()))


@pytest.mark.parametrize("name", ["shear", "square", "rank2-cubic", "full3", "inverse-powers"])
def test_distance_decreases(name):
    A = catalog.matrix(name)
    sigma = sigma_of(name)
    ds = [distance_to_sigma(sample_amoeba(A, math.exp(-lam), 4000, seed=3), sigma) for lam in (3, 6, 10, 20)]
    for a, b in zip(ds, ds[1:]):
        assert b <= a * 1.05


def test_full_rank_three_close_to_sigma():
    cloud = sample_amoeba(catalog.matrix("full3"), math.exp(-10), 5000, seed=0)
    d = point_distances(cloud.points, sigma_of("full3"))
    assert (d <= 0.5).mean() >= 0.99
