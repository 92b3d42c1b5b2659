"""Fourier integral operators on compact groups: the torus and SU(2).

The operator is the Fourier-series sum F f(x) = sum_l d_l Tr[Phi(x,l) a(x,l)
fhat(l)] with fhat(l) = int f(x) t_l(x)* dmu(x) over the normalized Haar
measure. On the torus the representations are the characters e^{2*pi*i*l.x}
and everything is scalar; on SU(2) the irreducible representations are the
Wigner matrices D^l in z-y-z Euler angles with the Condon-Shortley basis
ordered m = l, l-1, ..., -l. Integer labels twoL = 2l keep half-integer spins
exact.

Haar quadratures carry normalized weights (they sum to 1); the 3-sphere
parametrization additionally records the raw mass of its printed density,
which integrates to 4*pi^2 over the chart, twice the unit 3-sphere area.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    ConditionError,
    DomainError,
    ShapeError,
    ValidationError,
)
from .grids import SampledField, UniformGrid, ksum

__all__ = [
    "GroupQuadrature",
    "GroupPhase",
    "GroupSymbol",
    "GroupRankOne",
    "su2_haar_quadrature",
    "s3_quadrature",
    "s3_su2_points",
    "wigner_matrix",
    "euler_from_su2",
    "su2_irrep_table",
    "su2_fourier",
    "su2_character",
    "identity_phase",
    "group_fio_apply",
    "group_symbol_from_decomposition",
    "group_nuclear_trace",
    "group_matrix",
    "group_delgado_trace",
    "group_quasinorm_bound",
    "group_lp_norm",
    "TorusPhase",
    "TorusSymbol",
    "torus_freqs",
    "torus_fourier",
    "torus_symbol_from_decomposition",
    "torus_fio_apply",
    "torus_nuclear_trace",
    "torus_matrix",
    "dual_trace_sum",
]

# Phase blocks must stay invertible; this is the admissibility threshold.
_PHASE_COND_CAP = 1e8

# Euler-angle table caches are keyed per quadrature instance.
_JY_CACHE: dict = {}


def _require_twoL(twoL) -> int:
    t = int(twoL)
    if t != twoL or t < 0:
        raise DomainError(f"twoL = {twoL!r} must be a nonnegative integer")
    return t


def _jy_eig(twoL: int):
    """Eigendecomposition of J_y for spin twoL/2, cached.

    J_+ has entries sqrt(j(j+1) - m(m+1)) one step above the diagonal in the
    descending-m basis; J_y = (J_+ - J_-) / 2i is Hermitian.
    """
    if twoL in _JY_CACHE:
        return _JY_CACHE[twoL]
    j = twoL / 2.0
    dim = twoL + 1
    m = j - np.arange(dim)  # m = j, j-1, ..., -j
    jplus = np.zeros((dim, dim), dtype=complex)
    for k in range(dim - 1):
        mk = m[k + 1]
        jplus[k, k + 1] = np.sqrt(j * (j + 1) - mk * (mk + 1))
    jy = (jplus - jplus.conj().T) / 2j
    lam, V = np.linalg.eigh(jy)
    _JY_CACHE[twoL] = (m, lam, V)
    return _JY_CACHE[twoL]


def wigner_matrix(twoL: int, alpha: float, beta: float, gamma: float) -> np.ndarray:
    """Irreducible representation matrix D^l(alpha, beta, gamma), l = twoL/2.

    z-y-z Euler angles with alpha in [0, 2*pi), beta in [0, pi], gamma in
    [0, 4*pi); the gamma range covers the double cover so half-integer spins
    are single-valued. D = e^{-i m alpha} d^l(beta) e^{-i m' gamma} with the
    real middle factor d^l = exp(-i beta J_y).
    """
    twoL = _require_twoL(twoL)
    for name, val, hi in (("alpha", alpha, 2 * np.pi), ("beta", beta, np.pi), ("gamma", gamma, 4 * np.pi)):
        v = float(val)
        if not (-1e-12 <= v <= hi + 1e-12):
            raise DomainError(f"{name} = {val!r} outside [0, {hi:.6f}]")
    m, lam, V = _jy_eig(twoL)
    d_beta = (V * np.exp(-1j * beta * lam)) @ V.conj().T
    return np.exp(-1j * m * alpha)[:, None] * d_beta * np.exp(-1j * m * gamma)[None, :]


def euler_from_su2(U: np.ndarray) -> tuple:
    """Euler angles (alpha, beta, gamma) of a 2x2 special unitary matrix.

    Inverts the fundamental representation exactly (including the sign of the
    double cover): alpha lands in [0, 2*pi) by moving whole turns into gamma,
    which lives in [0, 4*pi). Unitarity is checked to 1e-10.
    """
    A = np.asarray(U, dtype=complex)
    if A.shape != (2, 2):
        raise ShapeError(f"SU(2) element must be 2x2, got {A.shape}")
    herm = np.abs(A @ A.conj().T - np.eye(2)).max()
    det = A[0, 0] * A[1, 1] - A[0, 1] * A[1, 0]
    if herm > 1e-10 or abs(det - 1.0) > 1e-10:
        raise ValidationError(
            f"matrix is not special unitary (unitarity defect {herm:.2e}, "
            f"det defect {abs(det - 1.0):.2e})"
        )
    cb = abs(A[0, 0])
    sb = abs(A[1, 0])
    beta = 2.0 * np.arctan2(sb, cb)
    if sb < 1e-12:  # beta ~ 0: only alpha+gamma is defined
        total = -2.0 * np.angle(A[0, 0])
        alpha = total % (2.0 * np.pi)
        gamma = (total - alpha) % (4.0 * np.pi)
    elif cb < 1e-12:  # beta ~ pi: only alpha-gamma is defined
        diff = 2.0 * np.angle(A[1, 0])
        alpha = diff % (2.0 * np.pi)
        gamma = (alpha - diff) % (4.0 * np.pi)
    else:
        total = -2.0 * np.angle(A[0, 0])  # alpha + gamma
        diff = 2.0 * np.angle(A[1, 0])  # alpha - gamma
        alpha_raw = 0.5 * (total + diff)
        alpha = alpha_raw % (2.0 * np.pi)
        # alpha shifts by 2*pi trade against gamma shifts by 2*pi: same element
        gamma = (0.5 * (total - diff) + (alpha_raw - alpha)) % (4.0 * np.pi)
    return float(alpha), float(beta), float(gamma)


@dataclass(frozen=True, eq=False)
class GroupQuadrature:
    """Quadrature over a group manifold chart.

    nodes holds parameter tuples ((alpha, beta, gamma) for the Euler chart,
    (t, nu, s) for the 3-sphere chart); weights are normalized to total mass
    1 within 1e-10, checked at construction. raw_mass records the chart
    integral of the unnormalized printed density where one is meaningful.
    Instances compare by identity; phases, symbols, and decompositions meant
    to interoperate must share one quadrature object.
    """

    kind: str
    nodes: np.ndarray
    weights: np.ndarray
    raw_mass: float | None = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        if nodes.ndim != 2 or weights.ndim != 1 or nodes.shape[0] != weights.shape[0]:
            raise ShapeError("quadrature nodes (N, k) and weights (N,) are inconsistent")
        total = float(ksum(weights))
        if abs(total - 1.0) > 1e-10:
            raise ValidationError(f"Haar weights sum to {total!r}, not 1")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    @property
    def size(self) -> int:
        return self.nodes.shape[0]


def _leggauss_ab(n: int, a: float, b: float):
    x, w = np.polynomial.legendre.leggauss(n)
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    return mid + half * x, half * w


def su2_haar_quadrature(n_alpha: int = 16, n_beta: int = 16, n_gamma: int = 32) -> GroupQuadrature:
    """Gauss-Legendre product rule for normalized Haar measure on SU(2).

    dmu = sin(beta) dalpha dbeta dgamma / (16*pi^2) over alpha in [0, 2*pi],
    beta in [0, pi], gamma in [0, 4*pi]; the gamma range covers the double
    cover, which half-integer-spin orthogonality needs.
    """
    for name, n in (("n_alpha", n_alpha), ("n_beta", n_beta), ("n_gamma", n_gamma)):
        if int(n) < 2:
            raise DomainError(f"{name} = {n} < 2")
    an, aw = _leggauss_ab(int(n_alpha), 0.0, 2.0 * np.pi)
    bn, bw = _leggauss_ab(int(n_beta), 0.0, np.pi)
    gn, gw = _leggauss_ab(int(n_gamma), 0.0, 4.0 * np.pi)
    A, B, Gm = np.meshgrid(an, bn, gn, indexing="ij")
    W = (aw[:, None, None] * (bw * np.sin(bn))[None, :, None] * gw[None, None, :]).reshape(-1)
    raw = float(ksum(W))  # chart mass of sin(beta) dalpha dbeta dgamma: 16*pi^2
    nodes = np.stack([A.reshape(-1), B.reshape(-1), Gm.reshape(-1)], axis=-1)
    return GroupQuadrature("su2-euler", nodes, W / raw, raw_mass=raw)


def s3_quadrature(resolution: int = 48) -> GroupQuadrature:
    """Quadrature for the (t, nu, s) chart of the unit 3-sphere.

    Coordinates x1 = cos(t/2), x2 = nu, (x3, x4) = rho (cos s, sin s) with
    rho^2 = sin^2(t/2) - nu^2, t in [0, 2*pi], nu in [-sin(t/2), sin(t/2)],
    s in [0, 2*pi]. The printed density sin(t/2) dt dnu ds has chart mass
    4*pi^2 (recorded as raw_mass); the true surface density is half that,
    and normalized weights are used for all integrals.
    """
    n = int(resolution)
    if n < 4:
        raise DomainError(f"resolution = {resolution} < 4")
    tn, tw = _leggauss_ab(n, 0.0, 2.0 * np.pi)
    sn = 2.0 * np.pi * np.arange(n) / n  # uniform, exact for trig polynomials
    sw = np.full(n, 2.0 * np.pi / n)
    nodes, weights = [], []
    for ti, twi in zip(tn, tw):
        half = np.sin(ti / 2.0)
        vn, vw = _leggauss_ab(n, -half, half)
        for vi, vwi in zip(vn, vw):
            for si, swi in zip(sn, sw):
                nodes.append((ti, vi, si))
                weights.append(twi * half * vwi * swi)
    weights = np.asarray(weights)
    raw = float(ksum(weights))
    return GroupQuadrature("s3", np.asarray(nodes), weights / raw, raw_mass=raw)


def s3_su2_points(quad: GroupQuadrature) -> np.ndarray:
    """Fundamental SU(2) matrices [[x1+ix2, x3+ix4], [-x3+ix4, x1-ix2]] at
    the (t, nu, s) nodes of an s3 quadrature."""
    if quad.kind != "s3":
        raise ValidationError(f"expected an s3 quadrature, got kind {quad.kind!r}")
    t, nu, s = quad.nodes.T
    x1 = np.cos(t / 2.0)
    x2 = nu
    rho = np.sqrt(np.maximum(np.sin(t / 2.0) ** 2 - nu**2, 0.0))
    x3, x4 = rho * np.cos(s), rho * np.sin(s)
    U = np.empty((quad.size, 2, 2), dtype=complex)
    U[:, 0, 0] = x1 + 1j * x2
    U[:, 0, 1] = x3 + 1j * x4
    U[:, 1, 0] = -x3 + 1j * x4
    U[:, 1, 1] = x1 - 1j * x2
    return U


def su2_irrep_table(quad: GroupQuadrature, twoL: int) -> np.ndarray:
    """Representation matrices D^l at every quadrature node, cached.

    Euler-chart quadratures evaluate the Wigner matrices directly; 3-sphere
    charts go through the embedding and exact Euler recovery.
    """
    twoL = _require_twoL(twoL)
    key = ("table", twoL)
    if key in quad._cache:
        return quad._cache[key]
    if quad.kind == "su2-euler":
        m, lam, V = _jy_eig(twoL)
        alpha, beta, gamma = quad.nodes.T
        core = np.exp(-1j * np.outer(beta, lam))
        d_beta = np.einsum("ik,nk,jk->nij", V, core, V.conj())
        T = (
            np.exp(-1j * np.outer(alpha, m))[:, :, None]
            * d_beta
            * np.exp(-1j * np.outer(gamma, m))[:, None, :]
        )
    elif quad.kind == "s3":
        eulers = np.array([euler_from_su2(U) for U in s3_su2_points(quad)])
        m, lam, V = _jy_eig(twoL)
        core = np.exp(-1j * np.outer(eulers[:, 1], lam))
        d_beta = np.einsum("ik,nk,jk->nij", V, core, V.conj())
        T = (
            np.exp(-1j * np.outer(eulers[:, 0], m))[:, :, None]
            * d_beta
            * np.exp(-1j * np.outer(eulers[:, 2], m))[:, None, :]
        )
    else:
        raise ValidationError(f"no SU(2) tables for quadrature kind {quad.kind!r}")
    quad._cache[key] = T
    return T


def su2_character(quad: GroupQuadrature, twoL: int) -> np.ndarray:
    """Character chi_l at the nodes, the trace of the representation table."""
    T = su2_irrep_table(quad, twoL)
    return np.einsum("nii->n", T)


def su2_fourier(f_values: np.ndarray, quad: GroupQuadrature, twoL: int) -> np.ndarray:
    """fhat(l) = sum_n w_n f_n t_l(x_n)^*, the matrix Fourier coefficient."""
    f = np.asarray(f_values, dtype=complex).reshape(-1)
    if f.shape[0] != quad.size:
        raise ShapeError(f"function has {f.shape[0]} samples, quadrature {quad.size}")
    T = su2_irrep_table(quad, twoL)
    return np.einsum("n,nji->ij", quad.weights * f, T.conj())


# -- matrix-valued phases and symbols ----------------------------------------


def _check_blocks(quad: GroupQuadrature, blocks: dict) -> dict:
    out = {}
    for twoL in sorted(blocks):
        t = _require_twoL(twoL)
        B = np.asarray(blocks[twoL], dtype=complex)
        d = t + 1
        if B.shape != (quad.size, d, d):
            raise ShapeError(
                f"block twoL={t} has shape {B.shape}, expected ({quad.size}, {d}, {d})"
            )
        if not np.all(np.isfinite(B.view(float))):
            raise ValidationError(f"block twoL={t} contains non-finite entries")
        out[t] = B
    if not out:
        raise ValidationError("symbol needs at least one representation block")
    return out


@dataclass(frozen=True, eq=False)
class GroupSymbol:
    """Matrix symbol a(x, l): one (N, d_l, d_l) block per integer label twoL."""

    quad: GroupQuadrature
    blocks: dict

    def __post_init__(self):
        object.__setattr__(self, "blocks", _check_blocks(self.quad, self.blocks))

    @property
    def labels(self) -> list:
        return sorted(self.blocks)

    def max_label(self) -> int:
        return max(self.blocks)


@dataclass(frozen=True, eq=False)
class GroupPhase(GroupSymbol):
    """Phase blocks Phi(x, l); every block must be invertible with condition
    number at most 1e8, checked at construction node by node."""

    def __post_init__(self):
        super().__post_init__()
        for twoL, B in self.blocks.items():
            s = np.linalg.svd(B, compute_uv=False)
            smin = s[:, -1].min()
            if smin <= 0.0 or not np.isfinite(smin):
                node = int(s[:, -1].argmin())
                raise ConditionError(f"phase block twoL={twoL} is singular at node {node}")
            cond = float((s[:, 0] / s[:, -1]).max())
            if cond > _PHASE_COND_CAP:
                node = int((s[:, 0] / s[:, -1]).argmax())
                raise ConditionError(
                    f"phase block twoL={twoL} has condition {cond:.3e} at node "
                    f"{node}, above the cap {_PHASE_COND_CAP:.1e}"
                )


def identity_phase(quad: GroupQuadrature, cutoff_twoL: int) -> GroupPhase:
    """Phi(x, l) = t_l(x): the phase that makes the FIO a plain Fourier
    multiplier modulo the symbol."""
    cutoff = _require_twoL(cutoff_twoL)
    return GroupPhase(quad, {t: su2_irrep_table(quad, t) for t in range(cutoff + 1)})


@dataclass(frozen=True, eq=False)
class GroupRankOne:
    """Rank-one kernel terms on the group: node-sampled (h_k, g_k) pairs."""

    quad: GroupQuadrature
    terms: tuple
    p1: float
    p2: float
    r: float

    def __post_init__(self):
        terms = []
        for h, g in self.terms:
            hv = np.asarray(h, dtype=complex).reshape(-1)
            gv = np.asarray(g, dtype=complex).reshape(-1)
            if hv.shape[0] != self.quad.size or gv.shape[0] != self.quad.size:
                raise ShapeError("factor sample count differs from quadrature size")
            terms.append((hv, gv))
        if not terms:
            raise ValidationError("decomposition needs at least one term")
        for name, p in (("p1", self.p1), ("p2", self.p2)):
            if not (np.isfinite(p) and p >= 1.0):
                raise DomainError(f"{name} = {p!r} outside [1, inf)")
        if not (0.0 < self.r <= 1.0):
            raise DomainError(f"r = {self.r!r} outside (0, 1]")
        object.__setattr__(self, "terms", tuple(terms))


def group_lp_norm(values: np.ndarray, quad: GroupQuadrature, p: float) -> float:
    """L^p norm against the normalized Haar weights, p in [1, inf)."""
    p = float(p)
    if not (np.isfinite(p) and p >= 1.0):
        raise DomainError(f"p = {p!r} outside [1, inf)")
    v = np.asarray(values, dtype=complex).reshape(-1)
    return float(ksum(quad.weights * np.abs(v) ** p)) ** (1.0 / p)


def group_delgado_trace(d: GroupRankOne) -> complex:
    """sum_x w(x) sum_k h_k(x) g_k(x), the kernel-diagonal trace."""
    s = np.zeros(d.quad.size, dtype=complex)
    for h, g in d.terms:
        s += h * g
    return complex(ksum(d.quad.weights * s))


def group_quasinorm_bound(d: GroupRankOne) -> float:
    """( sum_k ||g_k||_{p1'}^r ||h_k||_{p2}^r )^{1/r} over Haar norms."""
    parts = []
    for h, g in d.terms:
        if d.p1 == 1.0:
            gn = float(np.abs(g).max())
        else:
            gn = group_lp_norm(g, d.quad, d.p1 / (d.p1 - 1.0))
        parts.append((gn * group_lp_norm(h, d.quad, d.p2)) ** d.r)
    return float(ksum(np.asarray(parts))) ** (1.0 / d.r)


def _common_labels(Phi: GroupSymbol, a: GroupSymbol, what: str) -> list:
    if Phi.quad is not a.quad:
        raise ValidationError(f"{what}: phase and symbol use different quadratures")
    if sorted(Phi.blocks) != sorted(a.blocks):
        raise ValidationError(
            f"{what}: phase labels {sorted(Phi.blocks)} differ from symbol "
            f"labels {sorted(a.blocks)}"
        )
    return sorted(a.blocks)


def _require_cutoff(sym: GroupSymbol, cutoff_twoL: int | None, what: str) -> None:
    if cutoff_twoL is not None and sym.max_label() > cutoff_twoL:
        raise ValidationError(
            f"{what}: symbol carries label twoL={sym.max_label()} above the "
            f"cutoff twoL={cutoff_twoL}"
        )


def group_fio_apply(
    Phi: GroupPhase, a: GroupSymbol, f_values: np.ndarray, cutoff_twoL: int | None = None
) -> np.ndarray:
    """(Ff)(x) = sum_l d_l Tr[Phi(x,l) a(x,l) fhat(l)] at every node."""
    labels = _common_labels(Phi, a, "group_fio_apply")
    _require_cutoff(a, cutoff_twoL, "group_fio_apply")
    quad = a.quad
    f = np.asarray(f_values, dtype=complex).reshape(-1)
    if f.shape[0] != quad.size:
        raise ShapeError(f"function has {f.shape[0]} samples, quadrature {quad.size}")
    out = np.zeros(quad.size, dtype=complex)
    for twoL in labels:
        fhat = su2_fourier(f, quad, twoL)
        out += (twoL + 1) * np.einsum("nij,njk,ki->n", Phi.blocks[twoL], a.blocks[twoL], fhat)
    return out


def dual_trace_sum(weights: np.ndarray, tables: dict, Phi_blocks: dict, a_blocks: dict) -> complex:
    """sum_x w(x) sum_l d_l Tr[t_l(x)^* Phi(x,l) a(x,l)].

    Shared reduction kernel: the compact-group trace and the homogeneous-
    space trace both route through here, so the K = {e} degeneration is
    bit-for-bit rather than merely close.
    """
    parts = []
    for twoL in sorted(a_blocks):
        T = tables[twoL]
        v = np.einsum("nji,njk,nki->n", T.conj(), Phi_blocks[twoL], a_blocks[twoL])
        d = T.shape[1]
        parts.append(d * complex(ksum(weights * v)))
    return complex(ksum(np.asarray(parts)))


def group_nuclear_trace(Phi: GroupPhase, a: GroupSymbol, cutoff_twoL: int | None = None) -> complex:
    """Haar integral of sum_l d_l Tr[t_l(x)^* Phi(x,l) a(x,l)]."""
    labels = _common_labels(Phi, a, "group_nuclear_trace")
    _require_cutoff(a, cutoff_twoL, "group_nuclear_trace")
    tables = {twoL: su2_irrep_table(a.quad, twoL) for twoL in labels}
    return dual_trace_sum(a.quad.weights, tables, Phi.blocks, a.blocks)


def group_symbol_from_decomposition(
    Phi: GroupPhase, d: GroupRankOne, cutoff_twoL: int | None = None
) -> GroupSymbol:
    """a(x, l) = Phi(x, l)^{-1} sum_k h_k(x) (F_G conj(g_k))(l)^*.

    With this symbol the operator's kernel is sum_k h_k(x) g_k(y) (no
    conjugate on g in the kernel; the conjugations inside the transform and
    the adjoint cancel).
    """
    _require_cutoff(Phi, cutoff_twoL, "group_symbol_from_decomposition")
    quad = Phi.quad
    if d.quad is not quad:
        raise ValidationError("decomposition and phase use different quadratures")
    blocks = {}
    for twoL in sorted(Phi.blocks):
        dim = twoL + 1
        S = np.zeros((quad.size, dim, dim), dtype=complex)
        for h, g in d.terms:
            ghat = su2_fourier(np.conj(g), quad, twoL)
            S += h[:, None, None] * ghat.conj().T[None, :, :]
        blocks[twoL] = np.linalg.solve(Phi.blocks[twoL], S)
    return GroupSymbol(quad, blocks)


def group_matrix(Phi: GroupPhase, a: GroupSymbol, cutoff_twoL: int | None = None) -> np.ndarray:
    """Dense matrix of the operator on the band-limited Peter-Weyl basis.

    Basis functions sqrt(d_l) t_l(x)_{ij} for every carried label, ordered by
    (twoL, i, j); entries are quadrature inner products <F e_c, e_r>. For the
    identity phase with identity symbol this is the identity on a space of
    dimension sum d_l^2.
    """
    labels = _common_labels(Phi, a, "group_matrix")
    _require_cutoff(a, cutoff_twoL, "group_matrix")
    quad = a.quad
    basis = []
    for twoL in labels:
        T = su2_irrep_table(quad, twoL)
        d = twoL + 1
        for i in range(d):
            for j in range(d):
                basis.append(np.sqrt(d) * T[:, i, j])
    dim = len(basis)
    M = np.empty((dim, dim), dtype=complex)
    for c in range(dim):
        Fc = group_fio_apply(Phi, a, basis[c])
        for r in range(dim):
            M[r, c] = complex(ksum(quad.weights * np.conj(basis[r]) * Fc))
    return M


# -- the torus as the abelian instance ---------------------------------------


def torus_freqs(cutoff: int, dim: int) -> np.ndarray:
    """Integer frequency tuples in {-cutoff..cutoff}^dim, lexicographic."""
    if int(cutoff) < 0:
        raise DomainError(f"cutoff = {cutoff} < 0")
    rng = np.arange(-int(cutoff), int(cutoff) + 1)
    mesh = np.meshgrid(*([rng] * dim), indexing="ij")
    return np.stack([m.reshape(-1) for m in mesh], axis=-1).astype(float)


@dataclass(frozen=True)
class TorusPhase:
    """phi(x, l): 'linear' means 2*pi*x.l, 'sampled' a real table."""

    kind: str
    values: np.ndarray | None = None

    def __post_init__(self):
        if self.kind not in ("linear", "sampled"):
            raise ValidationError(f"phase kind {self.kind!r} not in ('linear', 'sampled')")
        if self.kind == "sampled":
            v = np.asarray(self.values, dtype=float)
            if v.ndim != 2 or not np.all(np.isfinite(v)):
                raise ValidationError("sampled torus phase must be a finite 2-d table")
            object.__setattr__(self, "values", v)
        elif self.values is not None:
            raise ValidationError("linear phase carries no sample table")

    @classmethod
    def linear(cls) -> "TorusPhase":
        return cls("linear")

    def table(self, x_grid: UniformGrid, freqs: np.ndarray) -> np.ndarray:
        if self.kind == "linear":
            return 2.0 * np.pi * (x_grid.nodes @ freqs.T)
        if self.values.shape != (x_grid.size, freqs.shape[0]):
            raise ShapeError(
                f"sampled phase table {self.values.shape} != "
                f"({x_grid.size}, {freqs.shape[0]})"
            )
        return self.values


@dataclass(frozen=True)
class TorusSymbol:
    """a(x, l) on a periodic grid times a centered frequency cube."""

    x_grid: UniformGrid
    cutoff: int
    values: np.ndarray

    def __post_init__(self):
        if not self.x_grid.periodic:
            raise ValidationError("torus symbols need a periodic spatial grid")
        freqs = torus_freqs(self.cutoff, self.x_grid.dim)
        v = np.asarray(self.values, dtype=complex)
        if v.shape != (self.x_grid.size, freqs.shape[0]):
            raise ShapeError(
                f"symbol values {v.shape} != ({self.x_grid.size}, {freqs.shape[0]})"
            )
        if not np.all(np.isfinite(v.view(float))):
            raise ValidationError("symbol contains non-finite samples")
        object.__setattr__(self, "values", v)

    @property
    def freqs(self) -> np.ndarray:
        return torus_freqs(self.cutoff, self.x_grid.dim)


def torus_fourier(f: SampledField, cutoff: int) -> np.ndarray:
    """fhat(l) = int_T f(x) e^{-2*pi*i*l.x} dx for l in the centered cube.

    Exact for trigonometric polynomials whose degree plus cutoff stays below
    the periodic grid's node count per axis.
    """
    if not f.grid.periodic:
        raise ValidationError("torus transform needs a periodic grid")
    freqs = torus_freqs(cutoff, f.grid.dim)
    E = np.exp(-2j * np.pi * (f.grid.nodes @ freqs.T))
    return ksum((f.grid.weights * f.values)[:, None] * E, axis=0)


def torus_symbol_from_decomposition(
    phase: TorusPhase, d, cutoff: int, x_grid: UniformGrid
) -> TorusSymbol:
    """a(x, l) = e^{-i phi(x,l)} sum_k h_k(x) (F_T g_k)(-l).

    d is a rank-one decomposition whose factors are fields on the periodic
    grid; the character form of the compact-group synthesis (the conjugate
    pair in (F conj(g))(l)^* collapses to evaluating the plain transform at
    the negated frequency).
    """
    freqs = torus_freqs(cutoff, x_grid.dim)
    E_neg = np.exp(2j * np.pi * (x_grid.nodes @ freqs.T))
    A = np.zeros((x_grid.size, freqs.shape[0]), dtype=complex)
    for h, g in d.terms:
        if g.grid != x_grid or h.grid != x_grid:
            raise ValidationError("decomposition factors must live on the torus grid")
        ghat_neg = ksum((x_grid.weights * g.values)[:, None] * E_neg, axis=0)
        A += np.outer(h.values, ghat_neg)
    phi = phase.table(x_grid, freqs)
    return TorusSymbol(x_grid, int(cutoff), np.exp(-1j * phi) * A)


def torus_fio_apply(phase: TorusPhase, a: TorusSymbol, f: SampledField) -> SampledField:
    """(Ff)(x) = sum_l e^{i phi(x,l)} a(x,l) fhat(l)."""
    if f.grid != a.x_grid:
        raise ValidationError("input field grid differs from the symbol grid")
    fhat = torus_fourier(f, a.cutoff)
    phi = phase.table(a.x_grid, a.freqs)
    return SampledField(a.x_grid, ksum(np.exp(1j * phi) * a.values * fhat[None, :], axis=1))


def torus_nuclear_trace(phase: TorusPhase, a: TorusSymbol) -> complex:
    """int_T sum_l e^{i(phi - 2*pi*x.l)} a(x,l) dx, single-difference exponent."""
    freqs = a.freqs
    phi = phase.table(a.x_grid, freqs)
    kernel = 2.0 * np.pi * (a.x_grid.nodes @ freqs.T)
    integrand = np.exp(1j * (phi - kernel)) * a.values * a.x_grid.weights[:, None]
    return complex(ksum(integrand))


def torus_matrix(phase: TorusPhase, a: TorusSymbol) -> np.ndarray:
    """Operator matrix on Fourier coefficients, M[l', l] = int e^{-2*pi*i*x.l'}
    e^{i phi(x,l)} a(x,l) dx; its diagonal reuses the trace cancellation."""
    freqs = a.freqs
    phi = phase.table(a.x_grid, freqs)
    wa = a.values * a.x_grid.weights[:, None]
    n = freqs.shape[0]
    M = np.empty((n, n), dtype=complex)
    for q in range(n):
        kernel_q = 2.0 * np.pi * (a.x_grid.nodes @ freqs[q])
        M[q, :] = ksum(np.exp(1j * (phi - kernel_q[:, None])) * wa, axis=0)
    return M
