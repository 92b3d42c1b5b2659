"""Named function families for building fields, sequences, and corpora.

These back the CLI's config files and the randomized test corpora. Specs are
small dicts: {"family": "gaussian", "center": 0.0, "width": 1.0} and so on.
Random families draw from a caller-supplied numpy Generator so a config's
seed pins the whole corpus.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError, ValidationError
from .grids import SampledField, UniformGrid
from .lattice import LatticeSequence, LatticeWindow

__all__ = [
    "hermite_function",
    "gaussian_profile",
    "euclid_field",
    "lattice_sequence",
    "random_gaussian_mix",
    "spec_needs_rng",
]

# Families whose output depends on the generator; configs using them must
# carry a seed.
_RANDOM_FAMILIES = {"random_mix"}


def spec_needs_rng(spec: dict) -> bool:
    return isinstance(spec, dict) and spec.get("family") in _RANDOM_FAMILIES


def gaussian_profile(x: np.ndarray, center: float, width: float) -> np.ndarray:
    """exp(-pi ((x - center)/width)^2), unit peak."""
    if width <= 0:
        raise DomainError(f"gaussian width {width!r} must be positive")
    return np.exp(-np.pi * ((x - center) / width) ** 2)


def hermite_function(k: int, x: np.ndarray) -> np.ndarray:
    """L^2-orthonormal Hermite function in the exp(-pi x^2) convention.

    psi_k(x) = 2^{1/4} (2^k k!)^{-1/2} H_k(sqrt(2 pi) x) e^{-pi x^2} with the
    physicists' H_k; these are eigenfunctions of the e^{-2*pi*i*x*xi}
    transform with eigenvalue (-i)^k.
    """
    k = int(k)
    if k < 0:
        raise DomainError(f"hermite order {k} < 0")
    coeffs = np.zeros(k + 1)
    coeffs[k] = 1.0
    hk = np.polynomial.hermite.hermval(np.sqrt(2.0 * np.pi) * x, coeffs)
    norm = 2.0**0.25 / math.sqrt(2.0**k * math.factorial(k))
    return norm * hk * np.exp(-np.pi * x**2)


def _complex_of(value) -> complex:
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    return complex(float(value))


def random_gaussian_mix(grid: UniformGrid, rng: np.random.Generator, terms: int = 3) -> np.ndarray:
    """Random complex mixture of Gaussians that decays inside a [-6, 6] box.

    Centers stay in [-1.5, 1.5] and widths in [0.8, 1.6] so edge values are
    below 1e-10 of the peak, keeping transforms and shifts trustworthy.
    """
    pts = grid.nodes
    out = np.zeros(grid.size, dtype=complex)
    for _ in range(int(terms)):
        c = rng.uniform(-1.5, 1.5, size=grid.dim)
        w = rng.uniform(0.8, 1.6, size=grid.dim)
        amp = rng.standard_normal() + 1j * rng.standard_normal()
        prof = np.ones(grid.size)
        for ax in range(grid.dim):
            prof = prof * gaussian_profile(pts[:, ax], c[ax], w[ax])
        out += amp * prof
    return out


def euclid_field(grid: UniformGrid, spec: dict, rng: np.random.Generator | None = None) -> SampledField:
    """Build a field on a continuum grid from a family spec."""
    if not isinstance(spec, dict) or "family" not in spec:
        raise ValidationError(f"field spec must be a dict with a 'family' key, got {spec!r}")
    fam = spec["family"]
    pts = grid.nodes
    if fam == "gaussian":
        center = spec.get("center", 0.0)
        width = spec.get("width", 1.0)
        centers = np.broadcast_to(np.asarray(center, dtype=float).reshape(-1), (grid.dim,))
        vals = np.ones(grid.size)
        for ax in range(grid.dim):
            vals = vals * gaussian_profile(pts[:, ax], centers[ax], float(width))
        return SampledField(grid, vals)
    if fam == "hermite":
        if grid.dim != 1:
            raise ValidationError("hermite family is one-dimensional")
        return SampledField(grid, hermite_function(spec.get("k", 0), pts[:, 0]))
    if fam == "delta":
        node = int(spec.get("node", grid.size // 2))
        if not (0 <= node < grid.size):
            raise ValidationError(f"delta node {node} outside [0, {grid.size})")
        vals = np.zeros(grid.size, dtype=complex)
        vals[node] = 1.0 / grid.weights[node]  # unit quadrature mass
        return SampledField(grid, vals)
    if fam == "trigpoly":
        if grid.dim != 1:
            raise ValidationError("trigpoly family is one-dimensional")
        coeffs = [_complex_of(c) for c in spec.get("coeffs", [1.0])]
        if len(coeffs) % 2 != 1:
            raise ValidationError("trigpoly needs an odd coefficient count (-K..K)")
        K = len(coeffs) // 2
        vals = np.zeros(grid.size, dtype=complex)
        for j, c in zip(range(-K, K + 1), coeffs):
            vals += c * np.exp(2j * np.pi * j * pts[:, 0])
        return SampledField(grid, vals)
    if fam == "constant":
        return SampledField(grid, np.full(grid.size, _complex_of(spec.get("value", 1.0))))
    if fam == "random_mix":
        if rng is None:
            raise ValidationError("random_mix family needs a seeded generator")
        return SampledField(grid, random_gaussian_mix(grid, rng, spec.get("terms", 3)))
    raise ValidationError(f"unknown field family {fam!r}")


def lattice_sequence(window: LatticeWindow, spec: dict, rng: np.random.Generator | None = None) -> LatticeSequence:
    """Build a sequence on a lattice window from a family spec."""
    if not isinstance(spec, dict) or "family" not in spec:
        raise ValidationError(f"sequence spec must be a dict with a 'family' key, got {spec!r}")
    fam = spec["family"]
    pts = window.points
    if fam == "gaussian":
        center = spec.get("center", 0.0)
        width = float(spec.get("width", 1.0))
        centers = np.broadcast_to(np.asarray(center, dtype=float).reshape(-1), (window.n,))
        vals = np.ones(window.size)
        for ax in range(window.n):
            vals = vals * gaussian_profile(pts[:, ax], centers[ax], width)
        return LatticeSequence(window, vals)
    if fam == "delta":
        at = spec.get("at", [0] * window.n)
        at = np.asarray(at, dtype=float).reshape(-1)
        match = np.all(pts == at[None, :], axis=1)
        if not match.any():
            raise ValidationError(f"delta point {at.tolist()} outside the window")
        vals = np.zeros(window.size, dtype=complex)
        vals[int(np.argmax(match))] = 1.0
        return LatticeSequence(window, vals)
    if fam == "constant":
        return LatticeSequence(window, np.full(window.size, _complex_of(spec.get("value", 1.0))))
    if fam == "random_mix":
        if rng is None:
            raise ValidationError("random_mix family needs a seeded generator")
        vals = rng.standard_normal(window.size) + 1j * rng.standard_normal(window.size)
        return LatticeSequence(window, vals)
    raise ValidationError(f"unknown sequence family {fam!r}")
