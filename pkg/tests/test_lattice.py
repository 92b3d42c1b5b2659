import numpy as np
import pytest

from nucfio.errors import DomainError, ShapeError, ValidationError
from nucfio.grids import UniformGrid
from nucfio.lattice import (
    LatticePhase,
    LatticeRankOne,
    LatticeSequence,
    LatticeSymbol,
    LatticeWindow,
    lattice_dft,
    lattice_fio_apply,
    lattice_lp_norm,
    lattice_matrix,
    lattice_mixed_norms,
    lattice_nuclear_trace,
    lattice_quasinorm_bound,
    lattice_symbol_from_decomposition,
)
from nucfio.numerics import dense_eigenvalues, matrix_trace


@pytest.fixture
def setup():
    w = LatticeWindow(1, 4)
    xi = UniformGrid.torus(32, 1)
    return w, xi, LatticePhase.linear()


def random_rank_one(w, rng, terms=3):
    pairs = tuple(
        (
            LatticeSequence(w, rng.standard_normal(w.size) + 1j * rng.standard_normal(w.size)),
            LatticeSequence(w, rng.standard_normal(w.size) + 1j * rng.standard_normal(w.size)),
        )
        for _ in range(terms)
    )
    return LatticeRankOne(pairs, 2.0, 2.0, 1.0)


def test_window_enumeration():
    w = LatticeWindow(2, 1)
    assert w.size == 9
    # [TRIVIAL] lexicographic, first axis slowest
    assert np.array_equal(w.points[0], [-1.0, -1.0])
    assert np.array_equal(w.points[-1], [1.0, 1.0])
    assert w.min_xi_count() == 6
    with pytest.raises(DomainError):
        LatticeWindow(0, 1)


def test_xi_grid_must_be_periodic_unit(setup):
    w, _, _ = setup
    with pytest.raises(ValidationError):
        LatticeSymbol(w, UniformGrid.box(0.0, 1.0, 32, 1), np.ones((9, 32), dtype=complex))


def test_dft_of_delta_is_character(setup):
    w, xi, _ = setup
    f = np.zeros(w.size, dtype=complex)
    f[w.size // 2] = 1.0  # the origin of the window
    fhat = lattice_dft(LatticeSequence(w, f), xi)
    # [DERIVED] delta at m = 0 transforms to the constant 1
    assert np.abs(fhat.values - 1.0).max() < 1e-14


def test_identity_trace_is_window_cardinality(setup):
    w, xi, phase = setup
    a = LatticeSymbol(w, xi, np.ones((w.size, xi.size), dtype=complex))
    # [DERIVED] constant symbol 1 with the linear phase is the identity on
    # the window: trace = 2N + 1 exactly, by dyadic quadrature cancellation
    assert lattice_nuclear_trace(phase, a) == 9.0 + 0.0j
    M = lattice_matrix(phase, a)
    assert np.array_equal(np.diag(M), np.ones(9, dtype=complex))
    assert np.abs(M - np.eye(9)).max() < 1e-14


def test_synthesis_reproduces_sequence_action(setup):
    w, xi, phase = setup
    rng = np.random.default_rng(5)
    d = random_rank_one(w, rng)
    a = lattice_symbol_from_decomposition(phase, d, xi)
    f = LatticeSequence(w, rng.standard_normal(w.size) + 0j)
    got = lattice_fio_apply(phase, a, f)
    want = np.zeros(w.size, dtype=complex)
    for h, g in d.terms:
        want += h.values * (g.values * f.values).sum()
    assert np.abs(got.values - want).max() < 1e-10


def test_trace_equals_diagonal_pairing(setup):
    w, xi, phase = setup
    rng = np.random.default_rng(6)
    for _ in range(10):
        d = random_rank_one(w, rng)
        a = lattice_symbol_from_decomposition(phase, d, xi)
        want = sum((h.values * g.values).sum() for h, g in d.terms)
        tr = lattice_nuclear_trace(phase, a)
        assert tr == pytest.approx(want, abs=1e-10)
        M = lattice_matrix(phase, a)
        assert matrix_trace(M) == pytest.approx(want, abs=1e-10)
        assert dense_eigenvalues(M).sum() == pytest.approx(want, abs=1e-10)


def test_undersampled_xi_grid_rejected(setup):
    w, _, phase = setup
    small = UniformGrid.torus(8, 1)  # below 2 * (2N + 1) = 18
    rng = np.random.default_rng(7)
    d = random_rank_one(w, rng)
    with pytest.raises(ValidationError):
        lattice_symbol_from_decomposition(phase, d, small)


def test_lp_norm_is_unweighted(setup):
    w, _, _ = setup
    f = LatticeSequence(w, np.full(w.size, 2.0 + 0.0j))
    # [TRIVIAL] ell^2 over 9 points of the constant 2
    assert lattice_lp_norm(f, 2.0) == pytest.approx(6.0)
    assert lattice_lp_norm(f, np.inf) == pytest.approx(2.0)


def test_mixed_norms_for_separable_symbol(setup):
    w, xi, _ = setup
    u = np.arange(1.0, 10.0)
    v = np.cos(2.0 * np.pi * xi.nodes[:, 0]) + 2.0
    a = LatticeSymbol(w, xi, np.outer(u, v).astype(complex))
    nf, xf = lattice_mixed_norms(a, 2.0, 2.0)
    # [DERIVED] separable symbols factor into ell^2 x L^2 norms
    want = np.sqrt((u**2).sum()) * np.sqrt((xi.weights * v**2).sum())
    assert nf == pytest.approx(want, rel=1e-12)
    assert xf == pytest.approx(want, rel=1e-12)


def test_quasinorm_closed_form(setup):
    w, _, _ = setup
    h = LatticeSequence(w, np.ones(w.size, dtype=complex))
    d = LatticeRankOne(((h, h),), 2.0, 2.0, 1.0)
    # [DERIVED] ||1||_2 * ||1||_2 over 9 points = 9
    assert lattice_quasinorm_bound(d) == pytest.approx(9.0)
    d_sup = LatticeRankOne(((h, h),), 1.0, 2.0, 1.0)
    # p1 = 1 pairs the g factor with the sup norm
    assert lattice_quasinorm_bound(d_sup) == pytest.approx(3.0)


def test_sequence_shape_validation(setup):
    w, _, _ = setup
    with pytest.raises(ShapeError):
        LatticeSequence(w, np.ones(4))
