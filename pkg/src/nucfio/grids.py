"""Uniform tensor-product grids, sampled fields, and compensated reductions.

Conventions used throughout the package:

* nodes are enumerated in row-major order (first axis slowest), so a flat
  node index is reproducible from the per-axis index tuple;
* open boxes carry composite-trapezoid weights (interior h, endpoints h/2),
  periodic boxes carry the uniform weight h with the right endpoint omitted;
* scalar quadrature reductions go through compensated (Kahan) summation in
  ascending node order, making repeated runs bit-identical.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DomainError,
    GridMismatchError,
    ShapeError,
    TruncationError,
    ValidationError,
)

__all__ = [
    "UniformGrid",
    "SampledField",
    "ksum",
    "interpolate",
    "require_edge_decay",
    "require_same_grid",
    "validate_range",
]

# Relative tolerance for the weight-sum == volume construction invariant.
_VOLUME_RTOL = 1e-12


def ksum(values, axis=None):
    """Compensated (Kahan) sum with a fixed accumulation order.

    Parameters
    ----------
    values : array_like
        Real or complex. Complex input is accumulated componentwise.
    axis : int or None
        None reduces the flattened array to a scalar; an integer reduces
        along that axis, stepping through it in ascending index order.

    Returns
    -------
    scalar or ndarray
    """
    a = np.asarray(values)
    if axis is None:
        a = a.reshape(-1)
        axis = 0
    else:
        a = np.moveaxis(a, axis, 0)
    total = np.zeros(a.shape[1:], dtype=a.dtype if a.dtype.kind in "fc" else float)
    comp = np.zeros_like(total)
    for k in range(a.shape[0]):
        y = a[k] - comp
        t = total + y
        comp = (t - total) - y
        total = t
    return total if total.ndim else total[()]


@dataclass(frozen=True)
class UniformGrid:
    """Tensor product of uniformly spaced 1-d axes.

    Parameters
    ----------
    axes : tuple of (lo, hi, count)
        Per-axis extent and node count (count >= 2). On a periodic grid the
        nodes are lo + j*h, j < count, with h = (hi-lo)/count; otherwise both
        endpoints are nodes and h = (hi-lo)/(count-1).
    periodic : bool
        Periodic axes get uniform weights; open axes get trapezoid weights.
    """

    axes: tuple
    periodic: bool = False
    axis_nodes: tuple = field(init=False, repr=False, compare=False)
    axis_weights: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        axes = tuple((float(lo), float(hi), int(count)) for lo, hi, count in self.axes)
        if not axes:
            raise ValidationError("grid needs at least one axis")
        nodes, weights = [], []
        for lo, hi, count in axes:
            if not (hi > lo):
                raise ValidationError(f"axis extent [{lo}, {hi}] is empty")
            if count < 2:
                raise ValidationError(f"axis count {count} < 2")
            if self.periodic:
                h = (hi - lo) / count
                nodes.append(lo + h * np.arange(count))
                weights.append(np.full(count, h))
            else:
                h = (hi - lo) / (count - 1)
                nodes.append(lo + h * np.arange(count))
                w = np.full(count, h)
                w[0] = w[-1] = h / 2  # trapezoid endpoints carry half weight
                weights.append(w)
        object.__setattr__(self, "axes", axes)
        object.__setattr__(self, "axis_nodes", tuple(nodes))
        object.__setattr__(self, "axis_weights", tuple(weights))
        vol = float(np.prod([hi - lo for lo, hi, _ in axes]))
        if abs(self.weight_sum() - vol) > _VOLUME_RTOL * vol:
            raise ValidationError("quadrature weights do not sum to the box volume")

    # -- shape ------------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.axes)

    @property
    def shape(self) -> tuple:
        return tuple(count for _, _, count in self.axes)

    @property
    def size(self) -> int:
        return int(np.prod(self.shape))

    @property
    def spacing(self) -> tuple:
        if self.periodic:
            return tuple((hi - lo) / count for lo, hi, count in self.axes)
        return tuple((hi - lo) / (count - 1) for lo, hi, count in self.axes)

    # -- nodes and weights --------------------------------------------------

    @property
    def nodes(self) -> np.ndarray:
        """All nodes, shape (size, dim), row-major over the axes."""
        mesh = np.meshgrid(*self.axis_nodes, indexing="ij")
        return np.stack([m.reshape(-1) for m in mesh], axis=-1)

    @property
    def weights(self) -> np.ndarray:
        """Product quadrature weights aligned with ``nodes``."""
        w = self.axis_weights[0]
        for wa in self.axis_weights[1:]:
            w = np.multiply.outer(w, wa)
        return w.reshape(-1)

    def weight_sum(self) -> float:
        return float(ksum(self.weights))

    # -- constructors -------------------------------------------------------

    @classmethod
    def box(cls, lo, hi, count, dim=1) -> "UniformGrid":
        """Open box [lo, hi]^dim with ``count`` nodes per axis."""
        return cls(tuple((lo, hi, count) for _ in range(dim)))

    @classmethod
    def torus(cls, count, dim=1) -> "UniformGrid":
        """Periodic grid on [0, 1)^dim."""
        return cls(tuple((0.0, 1.0, count) for _ in range(dim)), periodic=True)


def require_same_grid(a: UniformGrid, b: UniformGrid, what: str) -> None:
    if a.axes != b.axes or a.periodic != b.periodic:
        raise GridMismatchError(f"{what}: grids differ ({a.axes} vs {b.axes})")


@dataclass(frozen=True)
class SampledField:
    """Complex samples of a function on a :class:`UniformGrid`.

    values are stored flat, aligned with ``grid.nodes``.
    """

    grid: UniformGrid
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex).reshape(-1)
        if v.shape[0] != self.grid.size:
            raise ShapeError(
                f"field has {v.shape[0]} samples for a grid of {self.grid.size} nodes"
            )
        if not np.all(np.isfinite(v.view(float))):
            raise ValidationError("field contains non-finite samples")
        object.__setattr__(self, "values", v)

    @classmethod
    def from_callable(cls, grid: UniformGrid, fn) -> "SampledField":
        pts = grid.nodes
        if grid.dim == 1:
            vals = fn(pts[:, 0])
        else:
            vals = fn(*(pts[:, k] for k in range(grid.dim)))
        return cls(grid, np.asarray(vals, dtype=complex))


# -- interpolation ----------------------------------------------------------


def _axis_stencil(grid: UniformGrid, axis: int, coords: np.ndarray):
    """4-point Lagrange stencil data for one axis.

    Returns (start, weights, inside) where ``start`` is the first
    stencil index (clipped to the grid), ``weights`` has shape (m, 4), and
    ``inside`` flags points within the axis extent (plus a spacing-relative
    slack so that nodes reproduced by float arithmetic stay inside).
    """
    lo, hi, count = grid.axes[axis]
    h = grid.spacing[axis]
    t = (coords - lo) / h
    inside = (coords >= lo - 1e-9 * h) & (coords <= hi + 1e-9 * h)
    i0 = np.floor(t).astype(int)
    if count >= 4:
        start = np.clip(i0 - 1, 0, count - 4)
        u = t - start
        offs = np.arange(4)
        weights = np.ones((t.shape[0], 4))
        for k in range(4):
            for m in range(4):
                if m != k:
                    weights[:, k] *= (u - offs[m]) / (k - m)
    else:
        # tiny axes fall back to a linear stencil
        start = np.clip(i0, 0, count - 2)
        u = t - start
        weights = np.stack([1.0 - u, u], axis=-1)
    return start, weights, inside


def interpolate(field_values: np.ndarray, grid: UniformGrid, points: np.ndarray) -> np.ndarray:
    """Evaluate grid samples at off-grid points.

    Tensor-product 4-point Lagrange (cubic) interpolation per axis, exact at
    grid nodes. Points outside the box evaluate to zero, so fields must decay
    at the edge for the result to be meaningful (see ``require_edge_decay``).

    Parameters
    ----------
    field_values : ndarray
        Flat samples aligned with ``grid.nodes``, or an array whose leading
        dimension is ``grid.size`` (trailing dimensions ride along).
    grid : UniformGrid
    points : ndarray, shape (m, dim) or (m,) for 1-d grids

    Returns
    -------
    ndarray, shape (m,) plus any trailing dimensions of ``field_values``.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1:
        pts = pts[:, None]
    if pts.shape[1] != grid.dim:
        raise ShapeError(f"points have dim {pts.shape[1]}, grid has dim {grid.dim}")
    vals = np.asarray(field_values)
    trailing = vals.shape[1:]
    vals = vals.reshape(grid.shape + trailing)

    starts, weights, inside = [], [], np.ones(pts.shape[0], dtype=bool)
    for ax in range(grid.dim):
        s, w, ins = _axis_stencil(grid, ax, pts[:, ax])
        starts.append(s)
        weights.append(w)
        inside &= ins

    out = np.zeros((pts.shape[0],) + trailing, dtype=complex)
    stencil_sizes = [w.shape[1] for w in weights]
    for combo in itertools.product(*(range(n) for n in stencil_sizes)):
        idx = tuple(starts[ax] + combo[ax] for ax in range(grid.dim))
        w = weights[0][:, combo[0]]
        for ax in range(1, grid.dim):
            w = w * weights[ax][:, combo[ax]]
        out += w.reshape((-1,) + (1,) * len(trailing)) * vals[idx]
    if not np.all(inside):
        out[~inside] = 0.0
    return out


def require_edge_decay(field_values: np.ndarray, grid: UniformGrid, what: str, rtol: float = 1e-8) -> None:
    """Check that samples are negligible on the boundary slab of the box.

    Shift/zero-extension constructions assume the field's support, inflated by
    the shifts in play, stays inside the box. A field that is still large at
    the boundary breaks that; the first offending node is named.
    """
    vals = np.abs(np.asarray(field_values))
    trailing = vals.shape[1:]
    vals = vals.reshape(grid.shape + trailing)
    peak = vals.max()
    if peak == 0.0:
        return
    for ax in range(grid.dim):
        for side, label in ((0, "low"), (-1, "high")):
            slab = np.take(vals, side, axis=ax)
            worst = float(slab.max())
            if worst > rtol * peak:
                node = grid.axes[ax][0] if side == 0 else grid.axes[ax][1]
                raise TruncationError(
                    f"{what}: field is {worst:.3e} at the {label} edge of axis "
                    f"{ax} (node {node:g}), above {rtol:.1e} of its peak "
                    f"{peak:.3e}; enlarge the box"
                )


def validate_range(name: str, value: float, lo: float, hi: float, include_lo=True, include_hi=True) -> float:
    """Range check helper used for exponents, tau values, angles."""
    v = float(value)
    ok_lo = v >= lo if include_lo else v > lo
    ok_hi = v <= hi if include_hi else v < hi
    if not (ok_lo and ok_hi and np.isfinite(v)):
        lb = "[" if include_lo else "("
        rb = "]" if include_hi else ")"
        raise DomainError(f"{name} = {value!r} outside {lb}{lo}, {hi}{rb}")
    return v
