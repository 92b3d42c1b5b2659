import numpy as np
import pytest

from nucfio.errors import DomainError, ValidationError
from nucfio.euclid import (
    EuclideanSymbol,
    PhaseSpec,
    decay_norms,
    fio_apply,
    lidskii_exponent,
    lidskii_report,
    nuclear_trace_euclid,
    symbol_from_decomposition,
)
from nucfio.grids import SampledField, UniformGrid
from nucfio.nuclear import (
    RankOneSequence,
    apply_kernel,
    delgado_trace,
    kernel_from_decomposition,
)


@pytest.fixture
def grid():
    return UniformGrid.box(-6.0, 6.0, 257, 1)


def gaussian(grid, c, w=1.0, amp=1.0 + 0.0j):
    x = grid.nodes[:, 0]
    return SampledField(grid, amp * np.exp(-np.pi * ((x - c) / w) ** 2))


def rank_one(grid, rng, terms=2):
    pairs = tuple(
        (
            gaussian(grid, rng.uniform(-1, 1), rng.uniform(0.8, 1.4), 1.0 + 0.5j * rng.standard_normal()),
            gaussian(grid, rng.uniform(-1, 1), rng.uniform(0.8, 1.4)),
        )
        for _ in range(terms)
    )
    return RankOneSequence(pairs, 2.0, 2.0, 1.0)


def test_identity_symbol_reproduces_input(grid):
    # phi = 2 pi x.xi with a = 1 is the inverse transform of the transform
    a = EuclideanSymbol(grid, grid, np.ones((grid.size, grid.size), dtype=complex))
    f = gaussian(grid, 0.4, 1.2)
    out = fio_apply(PhaseSpec.linear(), a, f)
    assert np.abs(out.values - f.values).max() < 1e-10


def test_synthesized_symbol_reproduces_kernel_action(grid):
    rng = np.random.default_rng(7)
    d = rank_one(grid, rng)
    a = symbol_from_decomposition(PhaseSpec.linear(), d)
    f = gaussian(grid, -0.2, 1.1)
    via_symbol = fio_apply(PhaseSpec.linear(), a, f).values
    via_kernel = apply_kernel(kernel_from_decomposition(d), f).values
    assert np.abs(via_symbol - via_kernel).max() < 1e-8


def test_nuclear_trace_equals_delgado_linear_phase(grid):
    rng = np.random.default_rng(11)
    for _ in range(5):
        d = rank_one(grid, rng, terms=3)
        a = symbol_from_decomposition(PhaseSpec.linear(), d)
        tr = nuclear_trace_euclid(PhaseSpec.linear(), a)
        assert tr == pytest.approx(delgado_trace(d), abs=1e-10)


def test_sampled_phase_matches_linear(grid):
    # a sampled table holding 2 pi x.xi must agree with the closed form
    rng = np.random.default_rng(13)
    d = rank_one(grid, rng)
    table = 2.0 * np.pi * (grid.nodes @ grid.nodes.T)
    sampled = PhaseSpec("sampled", table)
    a_lin = symbol_from_decomposition(PhaseSpec.linear(), d)
    a_smp = symbol_from_decomposition(sampled, d)
    assert np.abs(a_lin.values - a_smp.values).max() < 1e-12
    tr_lin = nuclear_trace_euclid(PhaseSpec.linear(), a_lin)
    tr_smp = nuclear_trace_euclid(sampled, a_smp)
    assert tr_smp == pytest.approx(tr_lin, abs=1e-10)


def test_undersampled_phase_is_rejected():
    # coarse grid with a strongly shifted phase: the residual oscillation
    # 2 pi s.xi advances too fast per node, so the 8-per-period rule fires
    g = UniformGrid.box(-6.0, 6.0, 17, 1)
    a = EuclideanSymbol(g, g, np.ones((17, 17), dtype=complex))
    table = 2.0 * np.pi * ((g.nodes + 2.0) @ g.nodes.T)
    with pytest.raises(ValidationError, match="density"):
        nuclear_trace_euclid(PhaseSpec("sampled", table), a)


def test_trace_is_phase_independent_after_synthesis(grid):
    # [DERIVED] synthesis divides the phase back out, so the trace of the
    # synthesized operator equals the kernel trace for any admissible phase
    rng = np.random.default_rng(17)
    s = 3.0 * grid.spacing[0]
    d = rank_one(grid, rng)
    table = 2.0 * np.pi * ((grid.nodes + s) @ grid.nodes.T)
    phase = PhaseSpec("sampled", table)
    a = symbol_from_decomposition(phase, d)
    tr = nuclear_trace_euclid(phase, a)
    assert tr == pytest.approx(delgado_trace(d), abs=1e-10)


def test_decay_norms_requires_p1_at_least_two(grid):
    a = EuclideanSymbol(grid, grid, np.ones((grid.size, grid.size), dtype=complex))
    with pytest.raises(DomainError):
        decay_norms(a, 1.5, 2.0)


def test_lidskii_exponent_values():
    # [PAPER] 1/r = 1 + |1/p - 1/2|
    assert lidskii_exponent(2.0) == pytest.approx(1.0)
    assert lidskii_exponent(1.0) == pytest.approx(2.0 / 3.0)
    assert lidskii_exponent(4.0) == pytest.approx(0.8)


def test_lidskii_report_trace_identities(grid):
    rng = np.random.default_rng(23)
    d = rank_one(grid, rng)
    rep = lidskii_report(PhaseSpec.linear(), d, 2.0)
    assert rep.setting == "euclid"
    assert rep.discrepancy_trace_vs_matrix < 1e-10
    assert rep.discrepancy_trace_vs_eigensum < 1e-10
    assert rep.quasinorm_bound is not None
    assert rep.mixed_norm_x_first is not None
    # trace magnitude never exceeds the nuclear bound at r = 1
    assert abs(rep.nuclear_trace) <= rep.quasinorm_bound + 1e-9
