# %% [markdown]
# # The isoperimetric chain
#
# A = int f g'  <=  (1/2) int (f^2 + g'^2)  <=  (1/2) int (f'^2 + g'^2)  =  L^2 / (4 pi)
#
# The middle step needs f to have zero mean, which a translation in x
# always arranges.  Circles are tight at every step.

# %%
import warnings

import numpy as np

from fourier_isoperimetry import FourierCoeffs, circle, ellipse, fourier_curve, hurwitz_report
from fourier_isoperimetry.errors import TruncationWarning
from fourier_isoperimetry.sampling import random_regular_curve

curves = {
    "circle r=1": circle(1),
    "ellipse 2x1": ellipse(2, 1),
    "limacon": fourier_curve(FourierCoeffs(0.0, [1.0, 0.3], [0.0, 0.0]),
                             FourierCoeffs(0.0, [0.0, 0.0], [1.0, 0.3])),
}
print(f"{'curve':12s} {'A':>10s} {'AM-GM':>10s} {'Wirtinger':>10s} {'L^2/4pi':>10s} {'ratio':>8s}")
for name, c in curves.items():
    r = hurwitz_report(c)
    print(f"{name:12s} {r.A_simplified:10.6f} {r.amgm_bound:10.6f} {r.wirtinger_bound:10.6f} "
          f"{r.L**2 / (4 * np.pi):10.6f} {r.ratio:8.5f}")

# %% [markdown]
# Random smooth curves, possibly self-intersecting; the inequality holds
# for the signed area either way.

# %%
rng = np.random.default_rng(5)
ratios = []
with warnings.catch_warnings():
    warnings.simplefilter("ignore", TruncationWarning)
    for _ in range(20):
        r = hurwitz_report(random_regular_curve(rng))
        ratios.append(r.ratio)
        assert r.chain_ok
print(f"20 random curves: max ratio {max(ratios):.5f}")
