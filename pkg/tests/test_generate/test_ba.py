import pytest

from layersim.algos.generate.ba import (
    DEFAULT_REWIRING_PROBABILITIES,
    RewireParams,
    edge_overlap,
    generate_ba,
    rewire,
    rewiring_ladder,
)
from layersim.utils.exceptions import ValidationError


def test_generate_ba_edge_count_and_determinism():
    layer = generate_ba(200, 2, seed=1)
    assert layer.node_count == 200
    assert layer.n_edges == 2 * (200 - 2)
    assert generate_ba(200, 2, seed=1) == layer
    assert generate_ba(200, 2, seed=2) != layer


@pytest.mark.parametrize("n, m_attach", [(2, 2), (10, 0)])
def test_generate_ba_invalid(n, m_attach):
    with pytest.raises(ValidationError):
        generate_ba(n, m_attach)


def test_rewire_probability_range():
    with pytest.raises(ValidationError):
        RewireParams(probability=1.5)


def test_rewire_keeps_edge_count_and_simplicity():
    original = generate_ba(300, 2, seed=3)
    for p in (0.0, 0.3, 1.0):
        rewired = rewire(original, RewireParams(probability=p, seed=5))
        assert rewired.n_edges == original.n_edges
        assert (rewired.edges[:, 0] < rewired.edges[:, 1]).all()
    assert rewire(original, RewireParams(probability=0.0, seed=5)) == original


def test_rewire_overlap_decreases_with_probability():
    original = generate_ba(500, 2, seed=3)
    overlaps = [edge_overlap(original, rewire(original, RewireParams(p, seed=11))) for p in (0.05, 0.5, 0.95)]
    assert overlaps[0] > overlaps[1] > overlaps[2]
    assert overlaps[0] > 0.9
    assert overlaps[2] < 0.2


def test_rewiring_ladder_layout():
    ladder = rewiring_ladder(100, 2, seed=4)
    assert ladder.n_layers == 1 + len(DEFAULT_REWIRING_PROBABILITIES) == 20
    assert ladder.layer_names[0] == "p=0.00"
    assert ladder.layer_names[1] == "p=0.05"
    assert ladder.layer_names[-1] == "p=0.95"
    assert ladder[0] == generate_ba(100, 2, seed=4)
    assert all(layer.n_edges == ladder[0].n_edges for layer in ladder)


def test_rewiring_ladder_copies_are_independent():
    ladder = rewiring_ladder(100, 2, probabilities=(0.5, 0.5), seed=4)
    assert ladder[1] != ladder[2]
