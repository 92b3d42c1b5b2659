"""One operator, a family of symbols.

The ordering parameter tau in (0, 1] slides the point where a kernel is
sampled between the output variable (tau = 1) and the input variable. Every
tau gives a different symbol but the same operator; tau = 1/2 is the
symmetric (Weyl-style) choice whose symbol for a rank-one kernel is the
cross-ambiguity picture of the factors.
"""

import numpy as np

from nucfio.grids import SampledField, UniformGrid
from nucfio.nuclear import RankOneSequence, apply_kernel, kernel_from_decomposition
from nucfio.quantize import tau_apply, tau_convert, weyl_symbol_from_decomposition, wigner

grid = UniformGrid.box(-5.0, 5.0, 257, 1)
x = grid.nodes[:, 0]
h = SampledField(grid, (1.0 + 0.3j) * np.exp(-np.pi * (x - 0.4) ** 2))
g = SampledField(grid, np.exp(-np.pi * ((x + 0.2) / 1.2) ** 2).astype(complex))
d = RankOneSequence(((h, g),), 2.0, 2.0, 1.0)

probe = SampledField(grid, np.exp(-np.pi * (x - 0.3) ** 2).astype(complex))
reference = apply_kernel(kernel_from_decomposition(d), probe).values
scale = np.abs(reference).max()

print("action gap against the kernel, by ordering parameter:")
for tau in (0.25, 0.5, 0.75, 1.0):
    sym = weyl_symbol_from_decomposition(d, tau)
    out = tau_apply(sym, tau, probe).values
    print(f"  tau = {tau:4}:  {np.abs(out - reference).max() / scale:.3e}")

# converting between orderings and back is the identity
s_half = weyl_symbol_from_decomposition(d, 0.5)
back = tau_convert(tau_convert(s_half, 0.5, 1.0), 1.0, 0.5)
print("convert 0.5 -> 1 -> 0.5 round trip gap:",
      np.abs(back.values - s_half.values).max() / np.abs(s_half.values).max())

# the symmetric symbol of a Gaussian is a Gaussian bump in phase space
g0 = SampledField(grid, np.exp(-np.pi * x**2).astype(complex))
W = wigner(g0, g0)
i = int(np.abs(W.values).argmax())
ix, ixi = np.unravel_index(i, (grid.size, grid.size))
print()
print("phase-space distribution of exp(-pi x^2):")
print("  peak location (x, xi):", (float(grid.nodes[ix, 0]), float(grid.nodes[ixi, 0])))
print("  peak value           :", W.values[ix, ixi], " (sqrt(2) =", np.sqrt(2.0), ")")

# its xi-marginal returns the position density
marginal = (W.values * grid.weights[None, :]).sum(axis=1)
print("  marginal vs |g|^2 gap:", np.abs(marginal - np.abs(g0.values) ** 2).max())
