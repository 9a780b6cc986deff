# %% [markdown]
# # Orthogonality and Parseval
#
# The trapezoid rule over a full period is exact for trigonometric
# polynomials, so the orthogonality integrals come out at rounding level.

# %%
import numpy as np

from fourier_isoperimetry import FourierCoeffs, orthogonality_table, parseval_check
from fourier_isoperimetry.spectral import squared_sum_check

table = orthogonality_table(6)
worst = max(e.residual for e in table)
print(f"{len(table)} integrals, worst residual {worst:.2e}")
for e in table[:3]:
    print(f"  {e.kind:8s} n={e.n} m={e.m}  {e.computed:+.15f}  expected {e.expected:+.15f}")

# %% [markdown]
# Parseval: (1/pi) times the integral of f^2 equals a0^2/2 plus the sum of
# squared coefficients.  The cross term between the constant and the
# oscillating part integrates to zero.

# %%
c = FourierCoeffs.sparse(a0=1.0, a={1: 3.0}, b={2: 4.0})
r = parseval_check(c)
print(f"lhs {r.lhs:.15f}  rhs {r.rhs:.15f}  cross term {r.cross_term:.1e}")

rng = np.random.default_rng(0)
c = FourierCoeffs(rng.uniform(-1, 1), rng.uniform(-1, 1, 64), rng.uniform(-1, 1, 64))
quad, coeff = squared_sum_check(c)
print(f"order 64: int S^2 = {quad:.12f}, pi * sum = {coeff:.12f}")
