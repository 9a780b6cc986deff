"""Seeded random fixtures for the property suites."""

from __future__ import annotations

import numpy as np

from .curve import CurveSpec, fourier_curve, min_speed
from .trigseries import FourierCoeffs


def random_series(rng: np.random.Generator, order: int, zero_mean: bool = False,
                  bound: float = 1.0) -> FourierCoeffs:
    """Coefficients drawn uniformly from [-bound, bound]."""
    a0 = 0.0 if zero_mean else rng.uniform(-bound, bound)
    return FourierCoeffs(a0, rng.uniform(-bound, bound, order), rng.uniform(-bound, bound, order))


def random_curve_coeffs(rng: np.random.Generator, order: int) -> tuple[FourierCoeffs, FourierCoeffs]:
    """x and y coefficients with |entry| <= 1/n^2 at harmonic n."""
    n = np.arange(1, order + 1)
    decay = 1.0 / n**2
    parts = rng.uniform(-1, 1, (4, order)) * decay
    centre = rng.uniform(-1, 1, 2)
    return (FourierCoeffs(centre[0], parts[0], parts[1]),
            FourierCoeffs(centre[1], parts[2], parts[3]))


def random_regular_curve(rng: np.random.Generator, max_order: int = 4,
                         min_allowed_speed: float = 0.1, max_tries: int = 1000) -> CurveSpec:
    """Fourier curve of random order <= ``max_order``, rejection-sampled for speed >= 0.1."""
    for _ in range(max_tries):
        order = int(rng.integers(1, max_order + 1))
        cx, cy = random_curve_coeffs(rng, order)
        c = fourier_curve(cx, cy)
        if min_speed(c, 1024) >= min_allowed_speed:
            return c
    raise RuntimeError("could not draw a regular curve")
