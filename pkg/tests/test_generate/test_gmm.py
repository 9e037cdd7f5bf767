import numpy as np
import pytest
from scipy import stats

from layersim.algos.generate.ba import edge_overlap
from layersim.algos.generate.gmm import GmmParams, generate_gmm, hidden_variables, solve_kappa_min
from layersim.utils.exceptions import ValidationError


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(n_nodes=1),
        dict(gamma=2.0),
        dict(temperature=1.0),
        dict(temperature=0.0),
        dict(angular_corr=1.2),
        dict(radial_corr=-0.1),
        dict(mean_degree=0),
    ],
)
def test_gmm_params_validation(kwargs):
    with pytest.raises(ValidationError):
        GmmParams(**kwargs)


def test_solve_kappa_min_is_below_mean_degree():
    kappa_min = solve_kappa_min(6.0, 2000, 2.5)
    assert 0 < kappa_min < 6.0


def test_hidden_variables_at_full_correlation():
    kappa, theta = hidden_variables(GmmParams(n_nodes=2000, seed=3), n_layers=2)
    assert kappa.shape == theta.shape == (2, 2000)
    assert np.array_equal(theta[0], theta[1])
    assert np.array_equal(kappa[0], kappa[1])
    assert ((theta >= 0) & (theta < 2 * np.pi)).all()


def test_generate_gmm_deterministic():
    params = GmmParams(n_nodes=300, seed=9)
    first, second = generate_gmm(params), generate_gmm(params)
    assert first.layer_names == ("gmm_1", "gmm_2")
    assert first[0] == second[0] and first[1] == second[1]


def test_generate_gmm_mean_degree():
    net = generate_gmm(GmmParams(n_nodes=2000, mean_degree=6.0, gamma=2.5, temperature=0.4, seed=1))
    for layer in net:
        assert 5.1 <= layer.degrees().mean() <= 6.9


def test_hidden_degrees_without_radial_correlation_are_a_permutation():
    kappa, _ = hidden_variables(GmmParams(n_nodes=500, radial_corr=0.0, seed=4), n_layers=2)
    assert np.array_equal(np.sort(kappa[0]), np.sort(kappa[1]))
    assert not np.array_equal(kappa[0], kappa[1])


def test_uncorrelated_layers_have_uncorrelated_degrees():
    net = generate_gmm(GmmParams(n_nodes=2000, angular_corr=0.0, radial_corr=0.0, seed=5))
    rho, _ = stats.spearmanr(net[0].degrees(), net[1].degrees())
    assert abs(rho) <= 0.1


def test_generate_gmm_angular_correlation_drives_overlap():
    correlated = generate_gmm(GmmParams(n_nodes=1000, angular_corr=1.0, seed=2))
    uncorrelated = generate_gmm(GmmParams(n_nodes=1000, angular_corr=0.0, seed=2))
    assert edge_overlap(correlated[0], correlated[1]) > edge_overlap(uncorrelated[0], uncorrelated[1]) + 0.1


def test_generate_gmm_chains_extra_layers():
    net = generate_gmm(GmmParams(n_nodes=200, seed=5), n_layers=3)
    assert net.n_layers == 3
    with pytest.raises(ValidationError):
        generate_gmm(GmmParams(n_nodes=200), n_layers=0)
