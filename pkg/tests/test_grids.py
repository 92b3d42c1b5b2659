import math

import numpy as np
import pytest

from nucfio.errors import (
    DomainError,
    GridMismatchError,
    ShapeError,
    TruncationError,
    ValidationError,
)
from nucfio.grids import (
    SampledField,
    UniformGrid,
    interpolate,
    ksum,
    require_edge_decay,
    require_same_grid,
)


def test_box_weights_sum_to_volume():
    g = UniformGrid.box(-2.0, 3.0, 11, 2)
    # [TRIVIAL] trapezoid weights on a box reproduce its volume
    assert abs(float(g.weights.sum()) - 25.0) < 1e-12
    assert g.shape == (11, 11)
    assert g.size == 121


def test_torus_weights_are_uniform():
    g = UniformGrid.torus(8, 1)
    assert g.periodic
    assert np.allclose(g.weights, 1.0 / 8.0)
    # periodic nodes exclude the right endpoint
    assert g.nodes[-1, 0] == pytest.approx(7.0 / 8.0)


def test_nodes_are_row_major():
    g = UniformGrid.box(0.0, 1.0, 3, 2)
    # [TRIVIAL] second axis varies fastest
    assert np.allclose(g.nodes[0], [0.0, 0.0])
    assert np.allclose(g.nodes[1], [0.0, 0.5])
    assert np.allclose(g.nodes[3], [0.5, 0.0])


def test_grid_rejects_bad_axes():
    with pytest.raises(ValidationError):
        UniformGrid(((1.0, 0.0, 4),))  # lo >= hi
    with pytest.raises(ValidationError):
        UniformGrid(((0.0, 1.0, 1),))  # fewer than 2 nodes


def test_ksum_matches_fsum_on_adversarial_input():
    rng = np.random.default_rng(0)
    vals = rng.standard_normal(2000) * 10.0 ** rng.integers(-8, 8, size=2000)
    assert float(ksum(vals)) == pytest.approx(math.fsum(vals), rel=1e-15)


def test_ksum_axis_and_complex():
    a = np.arange(12.0).reshape(3, 4) + 1j
    out = ksum(a, axis=0)
    assert out.shape == (4,)
    assert np.allclose(out, a.sum(axis=0))


def test_interpolate_exact_on_cubics():
    # 4-point Lagrange rule reproduces polynomials of degree <= 3 exactly
    g = UniformGrid.box(-1.0, 1.0, 21, 1)
    x = g.nodes[:, 0]
    vals = (x**3 - 2.0 * x**2 + 0.5).astype(complex)
    pts = np.linspace(-0.95, 0.95, 57)[:, None]
    got = interpolate(vals, g, pts)
    want = pts[:, 0] ** 3 - 2.0 * pts[:, 0] ** 2 + 0.5
    assert np.abs(got - want).max() < 1e-13


def test_interpolate_zero_outside_box():
    g = UniformGrid.box(0.0, 1.0, 9, 1)
    vals = np.ones(9, dtype=complex)
    got = interpolate(vals, g, np.array([[2.0], [-0.5]]))
    assert np.all(got == 0.0)


def test_sampled_field_validation():
    g = UniformGrid.box(0.0, 1.0, 4, 1)
    with pytest.raises(ShapeError):
        SampledField(g, np.zeros(5))
    with pytest.raises(ValidationError):
        SampledField(g, np.array([1.0, np.inf, 0.0, 0.0]))


def test_require_same_grid():
    a = UniformGrid.box(0.0, 1.0, 4, 1)
    b = UniformGrid.box(0.0, 2.0, 4, 1)
    require_same_grid(a, UniformGrid.box(0.0, 1.0, 4, 1), "ctx")
    with pytest.raises(GridMismatchError):
        require_same_grid(a, b, "ctx")


def test_edge_decay_flags_non_decaying_samples():
    g = UniformGrid.box(-1.0, 1.0, 33, 1)
    ok = np.exp(-40.0 * g.nodes[:, 0] ** 2).astype(complex)
    require_edge_decay(ok, g, "field")
    bad = np.ones(33, dtype=complex)
    with pytest.raises(TruncationError) as err:
        require_edge_decay(bad, g, "field")
    assert "axis" in str(err.value)


def test_validate_range_bounds():
    from nucfio.grids import validate_range

    validate_range("tau", 0.5, 0.0, 1.0, include_lo=False)
    with pytest.raises(DomainError):
        validate_range("tau", 0.0, 0.0, 1.0, include_lo=False)
