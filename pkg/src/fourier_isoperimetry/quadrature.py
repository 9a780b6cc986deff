"""Numerical integration engines.

Three rules cover every integral in the package:

* ``integrate_periodic`` -- the uniform trapezoid rule over one full period,
  refined by node doubling.  It is exact for trigonometric polynomials once
  the grid is above Nyquist and converges geometrically for smooth periodic
  integrands.
* ``integrate_gauss`` -- composite Gauss-Legendre with panel doubling, for
  integrals over arbitrary intervals.
* ``cumulative_integral`` -- a running integral table, used to build the
  arc-length function of a curve.

Integrands are vectorised: they receive a 1-D ``numpy`` array of nodes and
must return an array of the same length.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import NonConvergence, NonFinite, NonMonotone

MAX_NODES = 2**20
DEFAULT_TOL = 1e-12

Integrand = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        if not (np.isfinite(self.lo) and np.isfinite(self.hi)):
            raise ValueError("interval endpoints must be finite")
        if not self.lo < self.hi:
            raise ValueError(f"interval needs lo < hi, got [{self.lo}, {self.hi}]")

    @property
    def width(self) -> float:
        return self.hi - self.lo


SYMMETRIC_PERIOD = Interval(-np.pi, np.pi)
STANDARD_PERIOD = Interval(0.0, 2 * np.pi)


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    err_estimate: float
    nodes_used: int


def _as_interval(interval) -> Interval:
    if isinstance(interval, Interval):
        return interval
    lo, hi = interval
    return Interval(float(lo), float(hi))


def _evaluate(fn, x: np.ndarray) -> np.ndarray:
    values = np.asarray(fn(x), dtype=float)
    if values.ndim == 0:
        values = np.full(x.shape, float(values))
    elif values.shape[-1] != x.shape[-1]:
        raise ValueError("integrand must return one value per node")
    if not np.all(np.isfinite(values)):
        raise NonFinite("integrand returned a non-finite value")
    return values


def periodic_trapezoid(fn, period_interval, min_nodes: int = 64, tol: float = DEFAULT_TOL,
                       max_nodes: int = MAX_NODES):
    """Node-doubling trapezoid rule for one or several integrands at once.

    ``fn`` may return shape ``(N,)`` or ``(K, N)``; in the latter case all
    ``K`` integrals share the grid and refinement stops once every one of
    them has settled.  Returns ``(values, err_estimate, nodes_used)`` with
    ``values`` of shape ``()`` or ``(K,)`` and ``err_estimate`` the largest
    successive difference.
    """
    iv = _as_interval(period_interval)
    if tol <= 0:
        raise ValueError("tol must be positive")
    n = max(int(min_nodes), 2)
    h = iv.width / n
    x = iv.lo + h * np.arange(n)
    total = _evaluate(fn, x).sum(axis=-1)
    value = iv.width * total / n
    while True:
        if 2 * n > max_nodes:
            raise NonConvergence(
                f"periodic trapezoid did not settle to tol={tol:g} within {max_nodes} nodes"
            )
        mid = iv.lo + h * (np.arange(n) + 0.5)
        total = total + _evaluate(fn, mid).sum(axis=-1)
        n *= 2
        h /= 2
        new_value = iv.width * total / n
        err = float(np.max(np.abs(new_value - value)))
        value = new_value
        if err <= tol:
            return value, err, n


def integrate_periodic(fn: Integrand, period_interval=STANDARD_PERIOD, min_nodes: int = 64,
                       tol: float = DEFAULT_TOL, max_nodes: int = MAX_NODES) -> QuadratureResult:
    """Integrate a periodic function over one full period.

    Parameters
    ----------
    fn : callable
        Vectorised integrand, periodic with period ``hi - lo``.
    period_interval : Interval or (lo, hi)
    min_nodes : int
        Size of the first grid.  Doubling always happens at least once.
    tol : float
        Absolute agreement required between two successive grids.

    Raises
    ------
    NonConvergence
        If the node cap is reached first, which usually means the integrand
        is not smooth or not periodic on the interval.
    NonFinite
        If ``fn`` produces NaN or infinity.
    """
    value, err, n = periodic_trapezoid(fn, period_interval, min_nodes, tol, max_nodes)
    return QuadratureResult(float(value), err, n)


@lru_cache(maxsize=None)
def gauss_legendre_rule(order: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of the ``order``-point rule on [-1, 1]."""
    nodes, weights = np.polynomial.legendre.leggauss(order)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def _composite_gauss(fn, edges: np.ndarray, order: int):
    """Per-panel Gauss sums over the panels delimited by ``edges``.

    Returns the panel integrals and the sum of |f| times weights (a scale used
    for relative stopping tests).
    """
    xi, w = gauss_legendre_rule(order)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    x = (mid[:, None] + half[:, None] * xi[None, :]).ravel()
    f = _evaluate(fn, x).reshape(len(half), order)
    panel = half * (f @ w)
    scale = half * (np.abs(f) @ w)
    return panel, scale, f


def integrate_gauss(fn: Integrand, interval, order: int = 10, rtol: float = 1e-12,
                    max_nodes: int = MAX_NODES) -> QuadratureResult:
    """Composite Gauss-Legendre quadrature with panel doubling.

    Starts from a single panel and doubles the panel count until two
    successive values agree to ``rtol`` relative to the integral of ``|fn|``.
    A single panel is exact for polynomials of degree ``2*order - 1``.
    """
    if order < 2:
        raise ValueError("Gauss-Legendre order must be at least 2")
    iv = _as_interval(interval)
    panels = 1
    panel, scale, _ = _composite_gauss(fn, np.linspace(iv.lo, iv.hi, 2), order)
    value = panel.sum()
    while True:
        panels *= 2
        if panels * order > max_nodes:
            raise NonConvergence(f"Gauss-Legendre did not settle within {max_nodes} nodes")
        panel, scale, _ = _composite_gauss(fn, np.linspace(iv.lo, iv.hi, panels + 1), order)
        new_value = panel.sum()
        err = abs(new_value - value)
        value = new_value
        if err <= rtol * max(abs(value), scale.sum()):
            return QuadratureResult(float(value), float(err), panels * order)


def cumulative_integral(fn: Integrand, interval, knots: int, order: int = 10,
                        rtol: float = 1e-13, max_nodes: int = MAX_NODES):
    """Running integral of ``fn`` sampled at ``knots`` equally spaced points.

    Returns ``(t, s)`` with ``s[0] == 0`` and ``s[k]`` the integral from
    ``t[0]`` to ``t[k]``.  Each gap between knots is integrated with composite
    Gauss-Legendre, refining all gaps together until the largest change is
    below ``rtol`` times the total.

    Raises ``NonMonotone`` when ``fn`` is non-positive at any node, because
    the table would then fail to be strictly increasing.
    """
    if knots < 2:
        raise ValueError("cumulative_integral needs at least 2 knots")
    iv = _as_interval(interval)
    t = np.linspace(iv.lo, iv.hi, knots)
    if np.any(_evaluate(fn, t) <= 0):
        raise NonMonotone("integrand is non-positive at a knot")
    sub = 1
    gaps = None
    while True:
        edges = np.linspace(iv.lo, iv.hi, (knots - 1) * sub + 1)
        panel, scale, f = _composite_gauss(fn, edges, order)
        if np.any(f <= 0):
            raise NonMonotone("integrand is non-positive at a quadrature node")
        new_gaps = panel.reshape(knots - 1, sub).sum(axis=1)
        if gaps is not None:
            if np.max(np.abs(new_gaps - gaps)) <= rtol * scale.sum():
                gaps = new_gaps
                break
        gaps = new_gaps
        sub *= 2
        if (knots - 1) * sub * order > max_nodes:
            raise NonConvergence("cumulative integral did not settle within the node cap")
    s = np.concatenate(([0.0], np.cumsum(gaps)))
    return t, s
