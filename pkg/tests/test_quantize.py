import numpy as np
import pytest

from nucfio.errors import DomainError, TruncationError
from nucfio.grids import SampledField, UniformGrid
from nucfio.nuclear import RankOneSequence, apply_kernel, kernel_from_decomposition
from nucfio.quantize import (
    shift_grid,
    tau_apply,
    tau_convert,
    weyl_symbol_from_decomposition,
    wigner,
)


@pytest.fixture
def grid():
    # box [-5, 5] keeps Gaussian tails below the edge-decay gate at 257 nodes
    return UniformGrid.box(-5.0, 5.0, 257, 1)


def gaussian(grid, c=0.0, w=1.0, amp=1.0 + 0.0j):
    x = grid.nodes[:, 0]
    return SampledField(grid, amp * np.exp(-np.pi * ((x - c) / w) ** 2))


def rank_one(grid):
    h = gaussian(grid, 0.4, 1.0, 1.0 + 0.3j)
    g = gaussian(grid, -0.2, 1.2)
    return RankOneSequence(((h, g),), 2.0, 2.0, 1.0)


def test_shift_grid_doubles_extent_same_count(grid):
    z = shift_grid(grid)
    assert z.axes[0][0] == -10.0 and z.axes[0][1] == 10.0
    assert z.shape == grid.shape
    # odd counts keep half-shifts (x +- z/2) exactly on node midpoints
    assert grid.shape[0] % 2 == 1


def test_tau_out_of_range(grid):
    d = rank_one(grid)
    with pytest.raises(DomainError):
        weyl_symbol_from_decomposition(d, 0.0)
    with pytest.raises(DomainError):
        weyl_symbol_from_decomposition(d, 1.1)


def test_tau_action_matches_kernel(grid):
    # all orderings of the same kernel act identically
    d = rank_one(grid)
    probe = gaussian(grid, 0.3, 1.1)
    want = apply_kernel(kernel_from_decomposition(d), probe).values
    scale = np.abs(want).max()
    for tau in (0.25, 0.5, 0.75, 1.0):
        sym = weyl_symbol_from_decomposition(d, tau)
        got = tau_apply(sym, tau, probe).values
        assert np.abs(got - want).max() / scale < 1e-4


def test_tau_one_is_exact(grid):
    # [DERIVED] tau = 1 samples the kernel on the native grid: no
    # interpolation enters, so agreement is at rounding level
    d = rank_one(grid)
    probe = gaussian(grid, -0.1, 0.9)
    want = apply_kernel(kernel_from_decomposition(d), probe).values
    sym = weyl_symbol_from_decomposition(d, 1.0)
    got = tau_apply(sym, 1.0, probe).values
    assert np.abs(got - want).max() < 1e-12


def test_tau_convert_roundtrip(grid):
    d = rank_one(grid)
    s0 = weyl_symbol_from_decomposition(d, 0.5)
    back = tau_convert(tau_convert(s0, 0.5, 1.0), 1.0, 0.5)
    assert np.abs(back.values - s0.values).max() / np.abs(s0.values).max() < 1e-4


def test_tau_convert_matches_direct_synthesis(grid):
    d = rank_one(grid)
    direct = weyl_symbol_from_decomposition(d, 0.75)
    converted = tau_convert(weyl_symbol_from_decomposition(d, 0.5), 0.5, 0.75)
    assert np.abs(direct.values - converted.values).max() / np.abs(direct.values).max() < 1e-4


def test_tau_convert_identity_is_copy(grid):
    d = rank_one(grid)
    s = weyl_symbol_from_decomposition(d, 0.5)
    same = tau_convert(s, 0.5, 0.5)
    assert np.array_equal(same.values, s.values)


def test_wigner_gaussian_peak(grid):
    # [DERIVED] W(g, g) for g = exp(-pi x^2) is sqrt(2) exp(-2 pi (x^2 + xi^2)):
    # peak sqrt(2) at the origin, which is a grid node
    g = gaussian(grid, 0.0, 1.0)
    W = wigner(g, g)
    i = int(np.abs(W.values).argmax())
    ix, ixi = np.unravel_index(i, (grid.size, grid.size))
    assert grid.nodes[ix, 0] == 0.0
    assert grid.nodes[ixi, 0] == 0.0
    assert abs(W.values[ix, ixi] - np.sqrt(2.0)) < 1e-5


def test_wigner_marginal_recovers_density(grid):
    # [DERIVED] integrating W(g, g) over xi returns |g(x)|^2
    g = gaussian(grid, 0.2, 1.1, amp=0.8 + 0.1j)
    W = wigner(g, g)
    marg = (W.values * grid.weights[None, :]).sum(axis=1)
    assert np.abs(marg - np.abs(g.values) ** 2).max() < 1e-6


def test_edge_decay_gate_fires():
    g = UniformGrid.box(-2.0, 2.0, 65, 1)
    wide = SampledField(g, np.exp(-0.05 * g.nodes[:, 0] ** 2).astype(complex))
    d = RankOneSequence(((wide, wide),), 2.0, 2.0, 1.0)
    with pytest.raises(TruncationError):
        weyl_symbol_from_decomposition(d, 0.5)
