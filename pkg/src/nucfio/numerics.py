"""Quadrature Fourier transforms, Lebesgue and mixed norms, dense spectra.

The Fourier convention is exp(-2*pi*i*x.xi) forward, exp(+2*pi*i*x.xi)
inverse, with plain quadrature sums over the supplied grids. Transforms are
therefore only as good as the grids: the caller picks boxes large enough for
decay and fine enough for the oscillation (downstream modules validate the
latter for sampled phases).
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError, NumericError, ShapeError, ValidationError, ZeroNormError
from .grids import SampledField, UniformGrid, ksum

__all__ = [
    "dft_forward",
    "dft_inverse",
    "lp_norm",
    "sup_norm",
    "mixed_norm",
    "hausdorff_young_ratio",
    "dense_eigenvalues",
    "matrix_trace",
]

# Output-node chunk width for transform phase matrices, keeps peak memory
# near chunk*size complex entries regardless of grid size.
_CHUNK = 1024


def _dft(values: np.ndarray, from_grid: UniformGrid, to_grid: UniformGrid, sign: float) -> np.ndarray:
    src = from_grid.nodes
    wsrc = from_grid.weights * values
    out = np.empty(to_grid.size, dtype=complex)
    dst = to_grid.nodes
    for s in range(0, to_grid.size, _CHUNK):
        block = dst[s : s + _CHUNK]
        phase = np.exp(sign * 2j * np.pi * (src @ block.T))
        out[s : s + block.shape[0]] = ksum(wsrc[:, None] * phase, axis=0)
    return out


def dft_forward(f: SampledField, xi_grid: UniformGrid) -> SampledField:
    """Quadrature Fourier transform, kernel exp(-2*pi*i*x.xi).

    Parameters
    ----------
    f : SampledField
    xi_grid : UniformGrid
        Frequency nodes to evaluate on; must match the dimension of f's grid.

    Returns
    -------
    SampledField on ``xi_grid``.
    """
    if xi_grid.dim != f.grid.dim:
        raise ShapeError(f"frequency grid dim {xi_grid.dim} != field dim {f.grid.dim}")
    return SampledField(xi_grid, _dft(f.values, f.grid, xi_grid, -1.0))


def dft_inverse(F: SampledField, x_grid: UniformGrid) -> SampledField:
    """Quadrature inverse transform, kernel exp(+2*pi*i*x.xi)."""
    if x_grid.dim != F.grid.dim:
        raise ShapeError(f"spatial grid dim {x_grid.dim} != field dim {F.grid.dim}")
    return SampledField(x_grid, _dft(F.values, F.grid, x_grid, +1.0))


def lp_norm(f: SampledField, p: float) -> float:
    """Quadrature L^p norm, p in [1, inf).

    (sum_x w(x) |f(x)|^p)^(1/p) over the field's own grid.
    """
    p = float(p)
    if not (np.isfinite(p) and p >= 1.0):
        raise DomainError(f"p = {p!r} outside [1, inf)")
    total = float(ksum(f.grid.weights * np.abs(f.values) ** p))
    return total ** (1.0 / p)


def sup_norm(f: SampledField) -> float:
    """Largest sample modulus (the p = inf endpoint, quadrature-free)."""
    return float(np.abs(f.values).max())


def mixed_norm(symbol, inner: str, p_inner: float, p_outer: float) -> float:
    """Iterated quadrature norm of a phase-space symbol.

    Parameters
    ----------
    symbol : object
        Anything with ``x_grid``, ``xi_grid`` and ``values`` of shape
        (x_grid.size, xi_grid.size).
    inner : {'x', 'xi'}
        Which variable the inner norm integrates first.
    p_inner, p_outer : float
        Exponents in [1, inf).

    Returns
    -------
    float

    Notes
    -----
    With p_inner == p_outer == p this factors into the 2n-dimensional L^p
    norm on the product grid (Fubini for the product weights).
    """
    for name, p in (("p_inner", p_inner), ("p_outer", p_outer)):
        if not (np.isfinite(p) and p >= 1.0):
            raise DomainError(f"{name} = {p!r} outside [1, inf)")
    if inner not in ("x", "xi"):
        raise ValidationError(f"inner must be 'x' or 'xi', got {inner!r}")
    vals = np.abs(np.asarray(symbol.values))
    nx, nxi = symbol.x_grid.size, symbol.xi_grid.size
    if vals.shape != (nx, nxi):
        raise ShapeError(f"symbol values {vals.shape} != grid sizes ({nx}, {nxi})")
    wx, wxi = symbol.x_grid.weights, symbol.xi_grid.weights
    if inner == "x":
        t = ksum(wx[:, None] * vals**p_inner, axis=0) ** (1.0 / p_inner)
        return float(ksum(wxi * t**p_outer)) ** (1.0 / p_outer)
    t = ksum(wxi[None, :] * vals**p_inner, axis=1) ** (1.0 / p_inner)
    return float(ksum(wx * t**p_outer)) ** (1.0 / p_outer)


def hausdorff_young_ratio(f: SampledField, p: float, xi_grid: UniformGrid | None = None) -> float:
    """||Ff||_{p'} / ||f||_p for p in [1, 2], p' the conjugate exponent.

    Defaults the frequency grid to the field's own box, which is adequate for
    fields that decay inside it. The ratio is <= 1 + quadrature error for any
    admissible p; p = 2 makes it a Plancherel check.
    """
    p = float(p)
    if not (1.0 <= p <= 2.0):
        raise DomainError(f"p = {p!r} outside [1, 2]")
    if xi_grid is None:
        xi_grid = UniformGrid(f.grid.axes, periodic=f.grid.periodic)
    denom = lp_norm(f, p)
    if denom == 0.0:
        raise ZeroNormError("||f||_p = 0, ratio undefined")
    F = dft_forward(f, xi_grid)
    if p == 1.0:
        return sup_norm(F) / denom
    pprime = p / (p - 1.0)
    return lp_norm(F, pprime) / denom


def dense_eigenvalues(M: np.ndarray) -> np.ndarray:
    """Full spectrum of a dense square matrix, deterministically ordered.

    Uses LAPACK's Hessenberg reduction + shifted QR iteration (zgeev).
    Eigenvalues are returned in descending modulus; exact modulus ties break
    by ascending principal argument.

    Raises
    ------
    ShapeError
        Non-square or non-2d input.
    ValidationError
        Non-finite entries.
    NumericError
        QR iteration did not converge within LAPACK's internal cap of
        30*n iterations.
    """
    A = np.asarray(M, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ShapeError(f"matrix must be square 2-d, got shape {A.shape}")
    if not np.all(np.isfinite(A.view(float))):
        raise ValidationError("matrix contains non-finite entries")
    try:
        ev = np.linalg.eigvals(A)
    except np.linalg.LinAlgError as exc:
        raise NumericError(
            f"eigenvalue QR iteration failed to converge within the LAPACK cap "
            f"of 30*n = {30 * A.shape[0]} iterations: {exc}"
        ) from exc
    order = np.lexsort((np.angle(ev), -np.abs(ev)))
    return ev[order]


def matrix_trace(M: np.ndarray) -> complex:
    """Compensated sum of the diagonal."""
    A = np.asarray(M)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ShapeError(f"matrix must be square 2-d, got shape {A.shape}")
    return complex(ksum(np.diagonal(A)))
