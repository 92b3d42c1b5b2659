"""tau-quantizations on R^n: application, symbol synthesis, Wigner transform.

The tau-quantized operator of a symbol sigma acts by

    (Op_tau(sigma) f)(x) = sum_y sum_xi w(y) w(xi) e^{2*pi*i*(x-y).xi}
                             sigma(tau*x + (1-tau)*y, xi) f(y),

tau in (0, 1] (tau = 0 puts the symbol at the output-independent point y and
is excluded). tau = 1/2 is the symmetric (Weyl) quantization, tau = 1 the
x-form whose symbol synthesis matches the plain transform route.

Numerical layout: shift integrals run over an auxiliary z-grid with twice the
spacing and twice the extent of the x-grid, so the half-shifts x +- z/2 and
the full shifts x - z land exactly on x-nodes when the node count is odd.
Points off the lattice (tau not in {1/2, 1}) are evaluated by tensor-product
cubic interpolation with zero extension outside the box; fields and symbols
must therefore decay at the box edge, which is enforced at call time.
"""

from __future__ import annotations

import numpy as np

from .grids import (
    SampledField,
    UniformGrid,
    interpolate,
    ksum,
    require_edge_decay,
    require_same_grid,
    validate_range,
)
from .euclid import EuclideanSymbol
from .nuclear import RankOneSequence

__all__ = [
    "shift_grid",
    "tau_apply",
    "weyl_symbol_from_decomposition",
    "tau_convert",
    "wigner",
]

_X_CHUNK = 32


def shift_grid(x_grid: UniformGrid) -> UniformGrid:
    """z-grid for shift integrals: doubled extent, doubled spacing.

    Differences x - y of x-grid nodes live on this lattice, and with an odd
    node count its half-nodes z/2 are x-grid nodes, so Wigner-type shifts
    need no interpolation at all.
    """
    return UniformGrid(tuple((2 * lo, 2 * hi, count) for lo, hi, count in x_grid.axes))


def _validate_tau(tau: float) -> float:
    return validate_range("tau", tau, 0.0, 1.0, include_lo=False)


def tau_apply(sigma: EuclideanSymbol, tau: float, f: SampledField) -> SampledField:
    """Apply the tau-quantized operator of ``sigma`` to ``f`` by quadrature.

    The symbol is evaluated at tau*x + (1-tau)*y, a convex combination that
    stays inside the box, via cubic interpolation between x-nodes.
    """
    tau = _validate_tau(tau)
    require_same_grid(f.grid, sigma.x_grid, "tau_apply input")
    xg, xig = sigma.x_grid, sigma.xi_grid
    Y, XI = xg.nodes, xig.nodes
    wf = xg.weights * f.values
    # e^{-2 pi i y.xi} carries the y-side of the double integral; the x-side
    # phase is applied per output row.
    E0 = np.exp(-2j * np.pi * (Y @ XI.T))
    wxi = xig.weights
    out = np.empty(xg.size, dtype=complex)
    for s in range(0, xg.size, _X_CHUNK):
        rows = slice(s, min(s + _X_CHUNK, xg.size))
        Xc = xg.nodes[rows]
        m = Xc.shape[0]
        pts = tau * Xc[:, None, :] + (1.0 - tau) * Y[None, :, :]
        S = interpolate(sigma.values, xg, pts.reshape(-1, xg.dim)).reshape(m, xg.size, xig.size)
        v = np.einsum("y,myk,yk->mk", wf, S, E0)
        rowphase = np.exp(2j * np.pi * (Xc @ XI.T))
        out[rows] = ksum(rowphase * wxi[None, :] * v, axis=1)
    return SampledField(xg, out)


def weyl_symbol_from_decomposition(
    d: RankOneSequence, tau: float, xi_grid: UniformGrid | None = None
) -> EuclideanSymbol:
    """tau-symbol of the rank-one kernel sum_k h_k(x) g_k(y).

    a(x, xi) = sum_z w(z) e^{-2*pi*i*z.xi} sum_k h_k(x + (1-tau) z) g_k(x - tau z),
    with no conjugation on the g factors (they are kernel factors, not an
    inner product). The frequency grid defaults to the factors' own box.
    """
    tau = _validate_tau(tau)
    require_same_grid(d.h_grid, d.g_grid, "weyl_symbol_from_decomposition factors")
    xg = d.h_grid
    xig = UniformGrid(xg.axes) if xi_grid is None else xi_grid
    zg = shift_grid(xg)
    for h, g in d.terms:
        require_edge_decay(h.values, xg, "weyl_symbol_from_decomposition h factor")
        require_edge_decay(g.values, xg, "weyl_symbol_from_decomposition g factor")
    Z = zg.nodes
    wz = zg.weights
    E = np.exp(-2j * np.pi * (Z @ xig.nodes.T))
    out = np.empty((xg.size, xig.size), dtype=complex)
    for s in range(0, xg.size, _X_CHUNK):
        rows = slice(s, min(s + _X_CHUNK, xg.size))
        Xc = xg.nodes[rows]
        m = Xc.shape[0]
        plus = (Xc[:, None, :] + (1.0 - tau) * Z[None, :, :]).reshape(-1, xg.dim)
        minus = (Xc[:, None, :] - tau * Z[None, :, :]).reshape(-1, xg.dim)
        acc = np.zeros((m, zg.size), dtype=complex)
        for h, g in d.terms:
            hv = interpolate(h.values, xg, plus).reshape(m, zg.size)
            gv = interpolate(g.values, xg, minus).reshape(m, zg.size)
            acc += hv * gv
        out[rows] = np.einsum("mz,z,zk->mk", acc, wz, E)
    return EuclideanSymbol(xg, xig, out)


def tau_convert(b: EuclideanSymbol, tau: float, tau_prime: float) -> EuclideanSymbol:
    """Re-express a tau-symbol in the tau_prime quantization.

    a(x, xi) = sum_z sum_eta w(z) w(eta) e^{-2*pi*i*(xi-eta).z}
               b(x + (tau - tau_prime) z, eta).

    The shift factor is (input tau) minus (output tau_prime); with the
    opposite sign the result disagrees with direct synthesis at tau_prime.
    The symbol must decay at the spatial box edge since shifted evaluations
    extend it by zero.
    """
    tau = _validate_tau(tau)
    tau_prime = _validate_tau(tau_prime)
    xg, xig = b.x_grid, b.xi_grid
    if tau == tau_prime:
        return EuclideanSymbol(xg, xig, b.values.copy())
    require_edge_decay(b.values, xg, "tau_convert symbol")
    delta = tau - tau_prime
    zg = shift_grid(xg)
    Z, wz = zg.nodes, zg.weights
    ETA = xig.nodes
    weta = xig.weights
    E_eta = np.exp(2j * np.pi * (Z @ ETA.T))  # e^{+2 pi i eta.z}
    E_xi = np.exp(-2j * np.pi * (Z @ xig.nodes.T))  # e^{-2 pi i xi.z}
    out = np.empty((xg.size, xig.size), dtype=complex)
    for s in range(0, xg.size, _X_CHUNK):
        rows = slice(s, min(s + _X_CHUNK, xg.size))
        Xc = xg.nodes[rows]
        m = Xc.shape[0]
        pts = (Xc[:, None, :] + delta * Z[None, :, :]).reshape(-1, xg.dim)
        BU = interpolate(b.values, xg, pts).reshape(m, zg.size, xig.size)
        c = np.einsum("mzh,h,zh->mz", BU, weta, E_eta)
        out[rows] = np.einsum("mz,z,zk->mk", c, wz, E_xi)
    return EuclideanSymbol(xg, xig, out)


def wigner(h: SampledField, g: SampledField, xi_grid: UniformGrid | None = None) -> EuclideanSymbol:
    """Cross-Wigner transform W(h, g)(x, xi) = sum_z w(z) e^{-2*pi*i*z.xi}
    h(x + z/2) conj(g(x - z/2)).

    Both fields share one grid; half-shifts are exact lattice moves for odd
    node counts. W(h, h) of a real Gaussian peaks at the phase-space origin.
    """
    require_same_grid(h.grid, g.grid, "wigner inputs")
    xg = h.grid
    xig = UniformGrid(xg.axes) if xi_grid is None else xi_grid
    require_edge_decay(h.values, xg, "wigner h")
    require_edge_decay(g.values, xg, "wigner g")
    zg = shift_grid(xg)
    Z, wz = zg.nodes, zg.weights
    E = np.exp(-2j * np.pi * (Z @ xig.nodes.T))
    gconj = np.conj(g.values)
    out = np.empty((xg.size, xig.size), dtype=complex)
    for s in range(0, xg.size, _X_CHUNK):
        rows = slice(s, min(s + _X_CHUNK, xg.size))
        Xc = xg.nodes[rows]
        m = Xc.shape[0]
        plus = (Xc[:, None, :] + 0.5 * Z[None, :, :]).reshape(-1, xg.dim)
        minus = (Xc[:, None, :] - 0.5 * Z[None, :, :]).reshape(-1, xg.dim)
        hv = interpolate(h.values, xg, plus).reshape(m, zg.size)
        gv = interpolate(gconj, xg, minus).reshape(m, zg.size)
        out[rows] = np.einsum("mz,z,zk->mk", hv * gv, wz, E)
    return EuclideanSymbol(xg, xig, out)
