"""FIOs on compact homogeneous spaces G/K via class-I representations.

A class-I triple is a Haar quadrature on G, a family of unitary irreducible
representation tables pi(x), and for each the number k_pi of K-invariant
vectors. Symbols of operators acting on functions of G/K are supported on
the top-left k_pi x k_pi block; the mask enforcing that is exact (entries
outside the block are bit-zero, and masking twice changes nothing).

With K = {e} every k_pi equals d_pi, the mask is the identity, and the
machinery degenerates to the compact-group module; the trace reduction is
shared with it (see ``group.dual_trace_sum``) so the degeneration is
bit-for-bit.

The concrete non-abelian instance is SU(3) in the eight-angle product
parametrization (three theta axes on [0, pi/2], five phi axes on [0, 2*pi],
Haar density sin(t1) cos^3(t1) sin(t2) cos(t2) sin(t3) cos(t3) / (2*pi^5)).
Two printed entries of the commonly cited parametrization (u21 and u23) have
a theta-index misprint that breaks row orthonormality; the forms used here
restore exact unitarity and are noted inline.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, ShapeError, ValidationError
from .grids import UniformGrid, ksum
from .group import (
    GroupQuadrature,
    GroupRankOne,
    dual_trace_sum,
    su2_irrep_table,
    torus_freqs,
)

__all__ = [
    "IrrepEntry",
    "ClassIIrrepTable",
    "HomogPhase",
    "HomogSymbol",
    "class_i_mask",
    "homog_fourier",
    "homog_fio_apply",
    "homog_symbol_from_decomposition",
    "homog_nuclear_trace",
    "homog_mixed_norm",
    "dual_lp_norm",
    "table_from_su2",
    "table_from_torus",
    "su3_dim",
    "su3_fundamental",
    "su3_fundamental_batch",
    "Su3Quadrature",
    "su3_haar_quadrature",
    "su3_mass",
    "su3_schur_error",
]

_PHASE_COND_CAP = 1e8


# -- class-I representation tables -------------------------------------------


@dataclass(frozen=True, eq=False)
class IrrepEntry:
    """One irreducible representation: label, dimension, K-invariant count,
    and its unitary matrices at every quadrature node."""

    label: object
    dim: int
    k_inv: int
    matrices: np.ndarray

    def __post_init__(self):
        if self.dim < 1:
            raise DomainError(f"irrep dimension {self.dim} < 1")
        if not (1 <= self.k_inv <= self.dim):
            raise DomainError(
                f"k_inv = {self.k_inv} outside [1, {self.dim}] for label {self.label!r}"
            )
        M = np.asarray(self.matrices, dtype=complex)
        if M.ndim != 3 or M.shape[1:] != (self.dim, self.dim):
            raise ShapeError(
                f"irrep {self.label!r} matrices have shape {M.shape}, expected "
                f"(N, {self.dim}, {self.dim})"
            )
        eye = np.eye(self.dim)
        defect = float(np.abs(np.einsum("nij,nkj->nik", M, M.conj()) - eye).max())
        if defect > 1e-10:
            raise ValidationError(
                f"irrep {self.label!r} table is not unitary: defect {defect:.3e} > 1e-10"
            )
        object.__setattr__(self, "matrices", M)


@dataclass(frozen=True, eq=False)
class ClassIIrrepTable:
    """Haar weights plus the family of class-I irrep entries, keyed by label.

    Labels must sort (ints or tuples); iteration over them is always in
    sorted order so reductions are reproducible.
    """

    weights: np.ndarray
    entries: dict

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float).reshape(-1)
        total = float(ksum(w))
        if abs(total - 1.0) > 1e-10:
            raise ValidationError(f"Haar weights sum to {total!r}, not 1")
        ent = {}
        for label in sorted(self.entries):
            e = self.entries[label]
            if e.label != label:
                raise ValidationError(f"entry key {label!r} != entry label {e.label!r}")
            if e.matrices.shape[0] != w.shape[0]:
                raise ShapeError(
                    f"irrep {label!r} has {e.matrices.shape[0]} node matrices for "
                    f"{w.shape[0]} quadrature nodes"
                )
            ent[label] = e
        if not ent:
            raise ValidationError("table needs at least one irrep entry")
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "entries", ent)

    @property
    def size(self) -> int:
        return self.weights.shape[0]

    @property
    def labels(self) -> list:
        return sorted(self.entries)


def class_i_mask(blocks: np.ndarray, k: int) -> np.ndarray:
    """Zero every entry outside the leading k x k block (exact, idempotent).

    Accepts a single matrix or a batch with leading dimensions.
    """
    M = np.array(blocks, dtype=complex)
    d = M.shape[-1]
    if M.shape[-2] != d:
        raise ShapeError(f"mask needs square trailing dims, got {M.shape}")
    if not (1 <= k <= d):
        raise DomainError(f"k = {k} outside [1, {d}]")
    M[..., k:, :] = 0.0
    M[..., :, k:] = 0.0
    return M


def _check_homog_blocks(table: ClassIIrrepTable, blocks: dict, masked: bool) -> dict:
    out = {}
    for label in sorted(blocks):
        if label not in table.entries:
            raise ValidationError(f"block label {label!r} is not in the irrep table")
        e = table.entries[label]
        B = np.asarray(blocks[label], dtype=complex)
        if B.shape != (table.size, e.dim, e.dim):
            raise ShapeError(
                f"block {label!r} has shape {B.shape}, expected "
                f"({table.size}, {e.dim}, {e.dim})"
            )
        if not np.all(np.isfinite(B.view(float))):
            raise ValidationError(f"block {label!r} contains non-finite entries")
        if masked and e.k_inv < e.dim:
            if np.any(B[:, e.k_inv :, :] != 0.0) or np.any(B[:, :, e.k_inv :] != 0.0):
                raise ValidationError(
                    f"block {label!r} has support outside its {e.k_inv}x{e.k_inv} "
                    f"invariant corner; apply class_i_mask"
                )
        out[label] = B
    if not out:
        raise ValidationError("symbol needs at least one block")
    return out


@dataclass(frozen=True, eq=False)
class HomogSymbol:
    """Symbol a(x, pi) on G/K: masked blocks over a class-I table."""

    table: ClassIIrrepTable
    blocks: dict

    def __post_init__(self):
        object.__setattr__(self, "blocks", _check_homog_blocks(self.table, self.blocks, masked=True))

    @property
    def labels(self) -> list:
        return sorted(self.blocks)


@dataclass(frozen=True, eq=False)
class HomogPhase:
    """Phase Phi(x, pi): unmasked invertible blocks, condition <= 1e8."""

    table: ClassIIrrepTable
    blocks: dict

    def __post_init__(self):
        blocks = _check_homog_blocks(self.table, self.blocks, masked=False)
        for label, B in blocks.items():
            s = np.linalg.svd(B, compute_uv=False)
            smin = s[:, -1].min()
            if smin <= 0.0 or not np.isfinite(smin):
                raise ValidationError(f"phase block {label!r} is singular")
            cond = float((s[:, 0] / s[:, -1]).max())
            if cond > _PHASE_COND_CAP:
                raise ValidationError(
                    f"phase block {label!r} has condition {cond:.3e}, above "
                    f"{_PHASE_COND_CAP:.1e}"
                )
        object.__setattr__(self, "blocks", blocks)

    @property
    def labels(self) -> list:
        return sorted(self.blocks)


def _common_labels(Phi: HomogPhase, a: HomogSymbol, what: str) -> list:
    if Phi.table is not a.table:
        raise ValidationError(f"{what}: phase and symbol use different tables")
    if Phi.labels != a.labels:
        raise ValidationError(
            f"{what}: phase labels {Phi.labels} differ from symbol labels {a.labels}"
        )
    return a.labels


def homog_fourier(f_values: np.ndarray, table: ClassIIrrepTable, label) -> np.ndarray:
    """fhat(pi) = sum_x w(x) f(x) pi(x)^*."""
    f = np.asarray(f_values, dtype=complex).reshape(-1)
    if f.shape[0] != table.size:
        raise ShapeError(f"function has {f.shape[0]} samples, table {table.size}")
    T = table.entries[label].matrices
    return np.einsum("n,nji->ij", table.weights * f, T.conj())


def homog_fio_apply(Phi: HomogPhase, a: HomogSymbol, f_values: np.ndarray) -> np.ndarray:
    """(Ff)(x) = sum_pi d_pi Tr[Phi(x,pi) a(x,pi) fhat(pi)]."""
    labels = _common_labels(Phi, a, "homog_fio_apply")
    f = np.asarray(f_values, dtype=complex).reshape(-1)
    out = np.zeros(a.table.size, dtype=complex)
    for label in labels:
        d = a.table.entries[label].dim
        fhat = homog_fourier(f, a.table, label)
        out += d * np.einsum("nij,njk,ki->n", Phi.blocks[label], a.blocks[label], fhat)
    return out


def homog_symbol_from_decomposition(Phi: HomogPhase, d: GroupRankOne) -> HomogSymbol:
    """a(x,pi) = mask_k [ Phi(x,pi)^{-1} sum_k h_k(x) (F conj(g_k))(pi)^* ].

    For genuinely K-invariant data the mask removes nothing; it enforces the
    class-I support rule on the stored blocks either way. The mask never
    touches Phi.
    """
    table = Phi.table
    if d.quad.size != table.size:
        raise ValidationError("decomposition sample count differs from the table")
    blocks = {}
    for label in Phi.labels:
        e = table.entries[label]
        S = np.zeros((table.size, e.dim, e.dim), dtype=complex)
        for h, g in d.terms:
            ghat = homog_fourier(np.conj(g), table, label)
            S += h[:, None, None] * ghat.conj().T[None, :, :]
        blocks[label] = class_i_mask(np.linalg.solve(Phi.blocks[label], S), e.k_inv)
    return HomogSymbol(table, blocks)


def homog_nuclear_trace(Phi: HomogPhase, a: HomogSymbol) -> complex:
    """int_M sum_pi d_pi Tr[pi(x)^* Phi(x,pi) a(x,pi)] dx.

    Routed through the same reduction kernel as the compact-group trace, so
    a K = {e} table reproduces that module's result bit-for-bit.
    """
    labels = _common_labels(Phi, a, "homog_nuclear_trace")
    tables = {label: a.table.entries[label].matrices for label in labels}
    return dual_trace_sum(a.table.weights, tables, Phi.blocks, a.blocks)


def dual_lp_norm(coeffs: dict, table: ClassIIrrepTable, p: float) -> float:
    """ell^p norm on the restricted dual: ( sum_pi d_pi k_pi^{p(1/p - 1/2)}
    ||M(pi)||_HS^p )^{1/p}."""
    p = float(p)
    if not (np.isfinite(p) and p >= 1.0):
        raise DomainError(f"p = {p!r} outside [1, inf)")
    parts = []
    for label in sorted(coeffs):
        e = table.entries[label]
        M = np.asarray(coeffs[label], dtype=complex)
        hs = float(np.sqrt((np.abs(M) ** 2).sum()))
        parts.append(e.dim * e.k_inv ** (p * (1.0 / p - 0.5)) * hs**p)
    return float(ksum(np.asarray(parts))) ** (1.0 / p)


def homog_mixed_norm(a: HomogSymbol, p1: float, p2: float) -> float:
    """( int_M ( sum_pi d_pi k_pi^{p1(1/p1-1/2)} ||a(x,pi)||_HS^{p1} )^{p2/p1}
    dx )^{1/p2}, the momentum-decay norm behind nuclearity on G/K."""
    for name, p in (("p1", p1), ("p2", p2)):
        if not (np.isfinite(p) and p >= 1.0):
            raise DomainError(f"{name} = {p!r} outside [1, inf)")
    inner = np.zeros(a.table.size)
    for label in a.labels:
        e = a.table.entries[label]
        hs = np.sqrt(np.einsum("nij->n", np.abs(a.blocks[label]) ** 2))
        inner += e.dim * e.k_inv ** (p1 * (1.0 / p1 - 0.5)) * hs**p1
    outer = ksum(a.table.weights * inner ** (p2 / p1))
    return float(outer) ** (1.0 / p2)


# -- degenerate instances -----------------------------------------------------


def table_from_su2(quad: GroupQuadrature, cutoff_twoL: int) -> ClassIIrrepTable:
    """K = {e} table over an SU(2) quadrature: k_pi = d_pi for every label."""
    entries = {}
    for twoL in range(int(cutoff_twoL) + 1):
        T = su2_irrep_table(quad, twoL)
        d = twoL + 1
        entries[twoL] = IrrepEntry(twoL, d, d, T)
    return ClassIIrrepTable(quad.weights, entries)


def table_from_torus(x_grid: UniformGrid, cutoff: int) -> ClassIIrrepTable:
    """Torus-as-homogeneous-space: characters as 1x1 entries, k_pi = 1."""
    if not x_grid.periodic:
        raise ValidationError("torus table needs a periodic grid")
    freqs = torus_freqs(cutoff, x_grid.dim)
    # weights on [0,1)^n already sum to 1 (normalized Haar on the torus)
    entries = {}
    for ell in freqs:
        chars = np.exp(2j * np.pi * (x_grid.nodes @ ell))
        label = tuple(int(v) for v in ell)
        entries[label] = IrrepEntry(label, 1, 1, chars.reshape(-1, 1, 1))
    return ClassIIrrepTable(x_grid.weights, entries)


# -- SU(3) --------------------------------------------------------------------


def su3_dim(a: int, b: int) -> int:
    """Dimension (a+1)(b+1)(a+b+2)/2 of the (a, b) highest-weight irrep."""
    a, b = int(a), int(b)
    if a < 0 or b < 0:
        raise DomainError(f"highest weight ({a}, {b}) must be nonnegative")
    return (a + 1) * (b + 1) * (a + b + 2) // 2


def su3_fundamental_batch(params: np.ndarray) -> np.ndarray:
    """Fundamental 3x3 matrices for rows of eight angles
    (theta1, theta2, theta3, phi1, ..., phi5), vectorized.

    Entries follow the eight-angle product parametrization. The leading
    factors of u21 and u23 are sin(t2)sin(t3) and cos(t2)sin(t3); the
    variants with theta1 there leave the rows non-orthonormal, so this form
    is the one that is exactly unitary.
    """
    P = np.asarray(params, dtype=float)
    if P.ndim == 1:
        P = P[None, :]
    if P.shape[1] != 8:
        raise ShapeError(f"need 8 angles per row, got shape {P.shape}")
    t1, t2, t3 = P[:, 0], P[:, 1], P[:, 2]
    f1, f2, f3, f4, f5 = P[:, 3], P[:, 4], P[:, 5], P[:, 6], P[:, 7]
    if np.any(t1 < -1e-12) or np.any(P[:, :3] > np.pi / 2 + 1e-12):
        raise DomainError("theta angles must lie in [0, pi/2]")
    if np.any(P[:, 3:] < -1e-12) or np.any(P[:, 3:] > 2 * np.pi + 1e-12):
        raise DomainError("phi angles must lie in [0, 2*pi]")
    c1, c2, c3 = np.cos(t1), np.cos(t2), np.cos(t3)
    s1, s2, s3 = np.sin(t1), np.sin(t2), np.sin(t3)
    e = lambda x: np.exp(1j * x)
    U = np.empty((P.shape[0], 3, 3), dtype=complex)
    U[:, 0, 0] = c1 * c2 * e(f1)
    U[:, 0, 1] = s1 * e(f3)
    U[:, 0, 2] = c1 * s2 * e(f4)
    U[:, 1, 0] = s2 * s3 * e(-f4 - f5) - s1 * c2 * c3 * e(f1 + f2 - f3)
    U[:, 1, 1] = c1 * c3 * e(f2)
    U[:, 1, 2] = -c2 * s3 * e(-f1 - f5) - s1 * s2 * c3 * e(f2 - f3 + f4)
    U[:, 2, 0] = -s1 * c2 * s3 * e(f1 - f3 + f5) - s2 * c3 * e(-f2 - f4)
    U[:, 2, 1] = c1 * s3 * e(f5)
    U[:, 2, 2] = c2 * c3 * e(-f1 - f2) - s1 * s2 * s3 * e(-f3 + f4 + f5)
    return U


def su3_fundamental(*angles) -> np.ndarray:
    """Fundamental matrix for one angle tuple; see ``su3_fundamental_batch``."""
    if len(angles) == 1:
        angles = tuple(np.asarray(angles[0], dtype=float).reshape(-1))
    if len(angles) != 8:
        raise ShapeError(f"need 8 angles, got {len(angles)}")
    return su3_fundamental_batch(np.asarray(angles, dtype=float))[0]


def _leggauss_ab(n: int, a: float, b: float):
    x, w = np.polynomial.legendre.leggauss(n)
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    return mid + half * x, half * w


@dataclass(frozen=True, eq=False)
class Su3Quadrature:
    """Eight-axis product quadrature for normalized Haar measure on SU(3).

    The three theta axes carry Gauss-Legendre nodes with the Haar density
    folded into their weights; the five phi axes carry uniform nodes, exact
    for the low phi-harmonics that fundamental-representation products
    produce. The full tensor grid is never materialized: iterate it in
    blocks with :meth:`iter_chunks`.
    """

    theta_nodes: tuple
    theta_weights: tuple
    phi_nodes: tuple
    phi_weights: tuple

    @property
    def size(self) -> int:
        n = 1
        for ax in self.theta_nodes:
            n *= ax.shape[0]
        for ax in self.phi_nodes:
            n *= ax.shape[0]
        return n

    def mass(self) -> float:
        """Product of per-axis weight sums; 1 up to quadrature rounding."""
        m = 1.0
        for w in self.theta_weights + self.phi_weights:
            m *= float(ksum(w))
        return m

    def iter_chunks(self):
        """Yield (params (m, 8), weights (m,)) blocks covering the grid.

        One block per phi-angle combination, each containing the full theta
        box in row-major order.
        """
        t1, t2, t3 = self.theta_nodes
        w1, w2, w3 = self.theta_weights
        T1, T2, T3 = np.meshgrid(t1, t2, t3, indexing="ij")
        wt = (w1[:, None, None] * w2[None, :, None] * w3[None, None, :]).reshape(-1)
        block = np.empty((wt.shape[0], 8))
        block[:, 0] = T1.reshape(-1)
        block[:, 1] = T2.reshape(-1)
        block[:, 2] = T3.reshape(-1)
        phi_ranges = [range(ax.shape[0]) for ax in self.phi_nodes]
        for combo in itertools.product(*phi_ranges):
            wphi = 1.0
            for ax, (nodes, weights) in enumerate(zip(self.phi_nodes, self.phi_weights)):
                block[:, 3 + ax] = nodes[combo[ax]]
                wphi *= weights[combo[ax]]
            yield block.copy(), wt * wphi


def su3_haar_quadrature(resolution: int = 16, phi_count: int = 5) -> Su3Quadrature:
    """Product rule for dmu = sin(t1)cos^3(t1) sin(t2)cos(t2) sin(t3)cos(t3)
    dt1 dt2 dt3 dphi1..dphi5 / (2*pi^5).

    ``resolution`` sets the Gauss-Legendre count per theta axis. The phi
    axes integrate e^{i k phi} exactly for 0 < |k| < phi_count, which covers
    pairwise products of fundamental entries (|k| <= 2) already at the
    default count of 5.
    """
    n = int(resolution)
    if n < 2:
        raise DomainError(f"resolution = {resolution} < 2")
    m = int(phi_count)
    if m < 3:
        raise DomainError(f"phi_count = {phi_count} < 3")
    tn, tw = _leggauss_ab(n, 0.0, np.pi / 2.0)
    w1 = tw * np.sin(tn) * np.cos(tn) ** 3
    w2 = tw * np.sin(tn) * np.cos(tn)
    w3 = tw * np.sin(tn) * np.cos(tn)
    pn = 2.0 * np.pi * np.arange(m) / m
    pw = np.full(m, 2.0 * np.pi / m)
    # fold the 1/(2*pi^5) normalization into the first phi axis
    pw_first = pw / (2.0 * np.pi**5)
    return Su3Quadrature(
        theta_nodes=(tn, tn.copy(), tn.copy()),
        theta_weights=(w1, w2, w3),
        phi_nodes=tuple(pn.copy() for _ in range(5)),
        phi_weights=(pw_first,) + tuple(pw.copy() for _ in range(4)),
    )


def su3_mass(quad: Su3Quadrature) -> float:
    """Chunked total mass, equal to ``quad.mass()`` up to summation order."""
    parts = [float(ksum(w)) for _, w in quad.iter_chunks()]
    return float(ksum(np.asarray(parts)))


def su3_schur_error(quad: Su3Quadrature) -> float:
    """max | int U_ij conj(U_kl) dmu - delta_ik delta_jl / 3 | over indices.

    Schur orthogonality for the fundamental representation; the flat test of
    whether the quadrature really is Haar measure.
    """
    G = np.zeros((3, 3, 3, 3), dtype=complex)
    for params, w in quad.iter_chunks():
        U = su3_fundamental_batch(params)
        G += np.einsum("n,nij,nkl->ijkl", w, U, U.conj())
    target = np.einsum("ik,jl->ijkl", np.eye(3), np.eye(3)) / 3.0
    return float(np.abs(G - target).max())
