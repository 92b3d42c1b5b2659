"""Finite rank-one decompositions of integral kernels and their invariants.

A decomposition is a finite list of factor pairs (h_k, g_k) standing for the
kernel K(x, y) = sum_k h_k(x) g_k(y). Everything here treats the list as
given: the quasinorm is the bound computed from these factors, with no
attempt at the infimum over all decompositions of the same kernel.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, GridMismatchError, ShapeError, ValidationError
from .grids import SampledField, UniformGrid, ksum, require_same_grid
from .numerics import lp_norm, sup_norm

__all__ = [
    "RankOneSequence",
    "SampledKernel",
    "kernel_from_decomposition",
    "apply_kernel",
    "kernel_matrix",
    "delgado_trace",
    "r_quasinorm_bound",
    "holder_conjugate",
]

# Dense kernels are capped to keep desk-scale memory and O(n^2) costs honest.
DEFAULT_NODE_CAP = 4096


def holder_conjugate(p: float) -> float:
    """p' with 1/p + 1/p' = 1; p = 1 maps to inf."""
    p = float(p)
    if not (np.isfinite(p) and p >= 1.0):
        raise DomainError(f"p = {p!r} outside [1, inf)")
    if p == 1.0:
        return np.inf
    return p / (p - 1.0)


@dataclass(frozen=True)
class RankOneSequence:
    """Factor pairs (h_k, g_k) plus the exponents they are measured in.

    Parameters
    ----------
    terms : list of (SampledField, SampledField)
        (h_k, g_k) pairs; all h_k share one grid, all g_k share one grid.
    p1, p2 : float
        Lebesgue exponents, >= 1. g-factors are measured in the conjugate
        exponent p1', h-factors in p2.
    r : float
        Summability exponent in (0, 1].
    """

    terms: tuple
    p1: float
    p2: float
    r: float

    def __post_init__(self):
        terms = tuple((h, g) for h, g in self.terms)
        if not terms:
            raise ValidationError("decomposition needs at least one term")
        h0, g0 = terms[0]
        for h, g in terms[1:]:
            require_same_grid(h.grid, h0.grid, "h factors")
            require_same_grid(g.grid, g0.grid, "g factors")
        for name, p in (("p1", self.p1), ("p2", self.p2)):
            if not (np.isfinite(p) and p >= 1.0):
                raise DomainError(f"{name} = {p!r} outside [1, inf)")
        if not (0.0 < self.r <= 1.0):
            raise DomainError(f"r = {self.r!r} outside (0, 1]")
        object.__setattr__(self, "terms", terms)

    @property
    def rank(self) -> int:
        return len(self.terms)

    @property
    def h_grid(self) -> UniformGrid:
        return self.terms[0][0].grid

    @property
    def g_grid(self) -> UniformGrid:
        return self.terms[0][1].grid


@dataclass(frozen=True)
class SampledKernel:
    """Kernel samples K(x_i, y_j) on a pair of grids."""

    x_grid: UniformGrid
    y_grid: UniformGrid
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if v.shape != (self.x_grid.size, self.y_grid.size):
            raise ShapeError(
                f"kernel values {v.shape} != ({self.x_grid.size}, {self.y_grid.size})"
            )
        if not np.all(np.isfinite(v.view(float))):
            raise ValidationError("kernel contains non-finite samples")
        object.__setattr__(self, "values", v)


def kernel_from_decomposition(d: RankOneSequence) -> SampledKernel:
    """Assemble K(x, y) = sum_k h_k(x) g_k(y) densely."""
    K = np.zeros((d.h_grid.size, d.g_grid.size), dtype=complex)
    for h, g in d.terms:
        K += np.outer(h.values, g.values)
    return SampledKernel(d.h_grid, d.g_grid, K)


def apply_kernel(K: SampledKernel, f: SampledField) -> SampledField:
    """(Kf)(x) = sum_y w(y) K(x, y) f(y) by quadrature."""
    require_same_grid(f.grid, K.y_grid, "apply_kernel input")
    wf = K.y_grid.weights * f.values
    out = np.einsum("xy,y->x", K.values, wf)
    return SampledField(K.x_grid, out)


def kernel_matrix(K: SampledKernel, node_cap: int = DEFAULT_NODE_CAP) -> np.ndarray:
    """Matrix M with M f_samples = apply_kernel samples: M[i, j] = w(y_j) K(x_i, y_j).

    The same quadrature weights are folded into the columns, so the matrix
    action on sample vectors reproduces ``apply_kernel`` and the matrix trace
    equals the quadrature trace of the kernel diagonal.
    """
    n = max(K.x_grid.size, K.y_grid.size)
    if n > node_cap:
        raise ValidationError(f"kernel has {n} nodes per side, above the cap {node_cap}")
    return K.values * K.y_grid.weights[None, :]


def delgado_trace(d: RankOneSequence) -> complex:
    """Quadrature trace of the kernel diagonal, sum_x w(x) sum_k g_k(x) h_k(x).

    Requires both factor families to live on one common grid so the diagonal
    is meaningful.
    """
    try:
        require_same_grid(d.h_grid, d.g_grid, "delgado_trace")
    except GridMismatchError:
        raise GridMismatchError(
            "delgado_trace: h and g factors must share a grid for the kernel "
            "diagonal to exist"
        ) from None
    s = np.zeros(d.h_grid.size, dtype=complex)
    for h, g in d.terms:
        s += g.values * h.values
    return complex(ksum(d.h_grid.weights * s))


def r_quasinorm_bound(d: RankOneSequence) -> float:
    """( sum_k ||g_k||_{p1'}^r ||h_k||_{p2}^r )^(1/r) for the given terms.

    This is the decomposition's own bound; no infimum over alternative
    decompositions is attempted.
    """
    p1c = holder_conjugate(d.p1)
    parts = []
    for h, g in d.terms:
        gn = sup_norm(g) if np.isinf(p1c) else lp_norm(g, p1c)
        hn = lp_norm(h, d.p2)
        parts.append((gn * hn) ** d.r)
    total = float(ksum(np.asarray(parts)))
    return total ** (1.0 / d.r)
