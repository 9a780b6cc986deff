# %% [markdown]
# # Wirtinger's inequality
#
# For a zero-mean periodic function, the integral of f^2 never exceeds the
# integral of f'^2.  In coefficients the gap is sum (n^2 - 1)(a_n^2 + b_n^2),
# which vanishes exactly when only the first harmonic is present.

# %%
import numpy as np

from fourier_isoperimetry import FourierCoeffs, wirtinger_check

for label, c in [("cos x", FourierCoeffs.sparse(a={1: 1})),
                 ("2 cos x - sin x", FourierCoeffs.sparse(a={1: 2}, b={1: -1})),
                 ("cos 2x", FourierCoeffs.sparse(a={2: 1})),
                 ("cos x + 0.1 sin 3x", FourierCoeffs.sparse(a={1: 1}, b={3: 0.1}))]:
    r = wirtinger_check(c)
    print(f"{label:20s} int f^2={r.int_f_sq:8.5f} int f'^2={r.int_fprime_sq:8.5f} "
          f"slack={r.slack:8.5f} witness={r.equality_witness}")

# %% [markdown]
# Random zero-mean series: the slack stays non-negative.

# %%
rng = np.random.default_rng(1)
slacks = []
for _ in range(200):
    n = int(rng.integers(1, 20))
    slacks.append(wirtinger_check(FourierCoeffs(0.0, rng.uniform(-1, 1, n), rng.uniform(-1, 1, n))).slack)
print(f"min slack over 200 series: {min(slacks):.3e}")
