"""Trace of a rank-one integral operator on the real line.

Builds the operator with kernel h(x) g(y) for centered Gaussians, expresses
it as a phase-weighted frequency integral, and shows that four independent
routes to the trace agree: the phase-space integral, the diagonal pairing
sum_k <h_k, conj(g_k)>-style integral, the trace of the discretized kernel
matrix, and the sum of its eigenvalues.
"""

import numpy as np

from nucfio.euclid import PhaseSpec, lidskii_report
from nucfio.grids import SampledField, UniformGrid
from nucfio.nuclear import RankOneSequence, delgado_trace

grid = UniformGrid.box(-6.0, 6.0, 512, 1)
x = grid.nodes[:, 0]
h = SampledField(grid, np.exp(-np.pi * x**2).astype(complex))

# one term: kernel K(x, y) = h(x) h(y); its trace is int h^2 = 2^(-1/2)
d = RankOneSequence(((h, h),), p1=2.0, p2=2.0, r=1.0)

report = lidskii_report(PhaseSpec.linear(), d, p=2.0)

print("closed form           :", 2.0**-0.5)
print("phase-space trace     :", report.nuclear_trace)
print("diagonal pairing      :", delgado_trace(d))
print("kernel-matrix trace   :", report.matrix_trace)
print("eigenvalue sum        :", report.eigenvalue_sum)
print()
print("trace vs matrix gap   :", report.discrepancy_trace_vs_matrix)
print("trace vs eigensum gap :", report.discrepancy_trace_vs_eigensum)
print()

# the operator is rank one: a single eigenvalue carries everything
ev = report.eigenvalues
print("largest |eigenvalue|  :", abs(ev[0]))
print("second largest        :", abs(ev[1]), "(numerically zero)")
print()

# summability bound: trace magnitude never exceeds the decomposition norm
print("summability bound     :", report.quasinorm_bound)
print("|trace| <= bound      :", abs(report.nuclear_trace) <= report.quasinorm_bound)
print("mixed norms (x-first, xi-first):", report.mixed_norm_x_first, report.mixed_norm_xi_first)
