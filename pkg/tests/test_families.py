import numpy as np
import pytest

from nucfio.errors import ValidationError
from nucfio.families import (
    euclid_field,
    hermite_function,
    lattice_sequence,
    spec_needs_rng,
)
from nucfio.grids import UniformGrid
from nucfio.lattice import LatticeWindow


@pytest.fixture
def grid():
    return UniformGrid.box(-8.0, 8.0, 513, 1)


def test_hermite_orthonormal(grid):
    x = grid.nodes[:, 0]
    # [DERIVED] the first few functions are orthonormal under the grid measure
    F = np.array([hermite_function(k, x) for k in range(4)])
    G = (F * grid.weights) @ F.T
    assert np.abs(G - np.eye(4)).max() < 1e-10


def test_delta_family_has_unit_mass(grid):
    f = euclid_field(grid, {"family": "delta", "node": 100}, None)
    assert float((grid.weights * f.values).sum().real) == pytest.approx(1.0)
    assert np.count_nonzero(f.values) == 1


def test_trigpoly_family(grid):
    # coeffs -1..1: 2 e^{-2 pi i x} + 1 + [0, 0.5] e^{2 pi i x}
    spec = {"family": "trigpoly", "coeffs": [2.0, 1.0, [0.0, 0.5]]}
    f = euclid_field(grid, spec, None)
    x = grid.nodes[:, 0]
    want = 2.0 * np.exp(-2j * np.pi * x) + 1.0 + 0.5j * np.exp(2j * np.pi * x)
    assert np.abs(f.values - want).max() < 1e-14


def test_random_mix_requires_rng(grid):
    with pytest.raises(ValidationError):
        euclid_field(grid, {"family": "random_mix"}, None)
    rng = np.random.default_rng(0)
    f = euclid_field(grid, {"family": "random_mix"}, rng)
    assert f.grid is grid
    assert np.abs(f.values).max() > 0


def test_spec_needs_rng():
    assert spec_needs_rng({"family": "random_mix"})
    assert not spec_needs_rng({"family": "gaussian"})


def test_unknown_family_rejected(grid):
    with pytest.raises(ValidationError):
        euclid_field(grid, {"family": "nope"}, None)
    w = LatticeWindow(1, 2)
    with pytest.raises(ValidationError):
        lattice_sequence(w, {"family": "nope"}, None)


def test_lattice_delta(grid):
    w = LatticeWindow(1, 2)
    f = lattice_sequence(w, {"family": "delta", "at": [1]}, None)
    # window points run -2..2, so lattice site 1 is index 3
    want = np.zeros(5, dtype=complex)
    want[3] = 1.0
    assert np.array_equal(f.values, want)
