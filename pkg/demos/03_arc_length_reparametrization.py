# %% [markdown]
# # Arc-length reparametrization
#
# The ellipse x = 2 cos t, y = sin t moves faster near the ends of its minor
# axis.  Inverting the cumulative arc length gives a unit-speed version,
# and rescaling that onto [0, 2 pi] gives the pair (f, g) whose speed is the
# constant L / (2 pi).

# %%
import numpy as np

from fourier_isoperimetry import (arc_constraint_residual, ellipse, make_reparam, perimeter,
                                  reparametrize_unit_speed)
from fourier_isoperimetry.curve import unit_speed_error

c = ellipse(2, 1)
print(f"perimeter {perimeter(c):.15f}")
print(f"speed range before: {c.speed(c.probe_grid(512)).min():.3f} .. {c.speed(c.probe_grid(512)).max():.3f}")

u = reparametrize_unit_speed(c)
print(f"after: |speed - 1| <= {unit_speed_error(u):.1e}, period {u.L:.15f}")

rc = make_reparam(u)
print(f"(L/2pi)^2 = {rc.scale**2:.12f}, constraint residual {arc_constraint_residual(rc):.1e}")

# %% [markdown]
# Plot data for (theta, f, g, f', g'); the CLI `reparam` subcommand writes
# the same columns as CSV.

# %%
theta = np.linspace(0, 2 * np.pi, 9)
for row in zip(theta, rc.f(theta), rc.g(theta), rc.df(theta), rc.dg(theta)):
    print("  ".join(f"{v:+.6f}" for v in row))
