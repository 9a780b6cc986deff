"""Closed parametric plane curves and their arc-length reparametrization.

A :class:`CurveSpec` carries vectorised coordinate functions ``x(t), y(t)``
together with their analytic derivatives, and the parameter period ``L``.
For a unit-speed curve ``L`` is also the perimeter.

:func:`reparametrize_unit_speed` turns any regular curve into a unit-speed
one, and :func:`make_reparam` rescales a unit-speed curve onto
``[0, 2*pi]``, giving the pair ``f(theta) = x(L*theta/(2*pi))``,
``g(theta) = y(L*theta/(2*pi))`` used by the isoperimetric chain.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np
from scipy.interpolate import PchipInterpolator

from .errors import (HarmonicsExceedNyquist, InvalidParams, NewtonStall, NonMonotone,
                     NotClosed, NotUnitSpeed, TooFewPoints)
from .quadrature import cumulative_integral, gauss_legendre_rule, integrate_gauss
from .trigseries import FourierCoeffs, eval_deriv_series, eval_series

Fn = Callable[[np.ndarray], np.ndarray]

CLOSURE_TOL = 1e-10
UNIT_SPEED_GATE = 1e-5
PROBE_POINTS = 64


@dataclass(frozen=True, eq=False)
class CurveSpec:
    x: Fn
    y: Fn
    dx: Fn
    dy: Fn
    L: float
    kind: str = "custom"
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if not (np.isfinite(self.L) and self.L > 0):
            raise InvalidParams(f"parameter period L must be positive, got {self.L!r}")

    def point(self, t):
        t = np.asarray(t, dtype=float)
        return np.stack([self.x(t), self.y(t)], axis=-1)

    def speed(self, t):
        t = np.asarray(t, dtype=float)
        return np.hypot(self.dx(t), self.dy(t))

    def probe_grid(self, n: int = PROBE_POINTS) -> np.ndarray:
        return self.L * np.arange(n) / n


def check_closed(c: CurveSpec, tol: float = CLOSURE_TOL) -> None:
    """Raise ``NotClosed`` unless the curve closes up and is L-periodic on the probe grid."""
    t = c.probe_grid()
    p0 = c.point(t)
    p1 = c.point(t + c.L)
    scale = max(1.0, float(np.max(np.abs(p0))))
    gap = float(np.max(np.abs(p1 - p0)))
    if not np.all(np.isfinite(p0)) or gap > tol * scale:
        raise NotClosed(f"curve is not {c.L:g}-periodic: endpoint gap {gap:.3e}")
    end_gap = float(np.sum(np.abs(c.point(c.L) - c.point(0.0))))
    if end_gap > tol * scale:
        raise NotClosed(f"curve endpoints differ by {end_gap:.3e}")


def min_speed(c: CurveSpec, n: int = 1024) -> float:
    return float(np.min(c.speed(c.probe_grid(n))))


def is_regular(c: CurveSpec, n: int = PROBE_POINTS) -> bool:
    return min_speed(c, n) > 0


# -- families ---------------------------------------------------------------

def circle(r: float = 1.0) -> CurveSpec:
    """Circle of radius ``r`` in its natural unit-speed parametrization."""
    if not r > 0:
        raise InvalidParams(f"circle radius must be positive, got {r!r}")
    r = float(r)
    return CurveSpec(
        x=lambda t: r * np.cos(t / r),
        y=lambda t: r * np.sin(t / r),
        dx=lambda t: -np.sin(t / r),
        dy=lambda t: np.cos(t / r),
        L=2 * np.pi * r, kind="circle", params={"r": r},
    )


def ellipse(a: float, b: float) -> CurveSpec:
    if not (a > 0 and b > 0):
        raise InvalidParams(f"ellipse semi-axes must be positive, got a={a!r}, b={b!r}")
    a, b = float(a), float(b)
    return CurveSpec(
        x=lambda t: a * np.cos(t),
        y=lambda t: b * np.sin(t),
        dx=lambda t: -a * np.sin(t),
        dy=lambda t: b * np.cos(t),
        L=2 * np.pi, kind="ellipse", params={"a": a, "b": b},
    )


def fourier_curve(cx: FourierCoeffs, cy: FourierCoeffs) -> CurveSpec:
    """Curve whose coordinates are the truncated series ``cx`` and ``cy`` on [0, 2*pi]."""
    c = CurveSpec(
        x=lambda t: eval_series(cx, t),
        y=lambda t: eval_series(cy, t),
        dx=lambda t: eval_deriv_series(cx, t),
        dy=lambda t: eval_deriv_series(cy, t),
        L=2 * np.pi, kind="fourier", params={"cx": cx, "cy": cy},
    )
    check_closed(c)
    return c


def make_family(kind: str, **params) -> CurveSpec:
    """Build a named family: ``circle(r)``, ``ellipse(a, b)`` or ``fourier(cx, cy)``."""
    builders = {"circle": circle, "ellipse": ellipse, "fourier": fourier_curve,
                "fourier_curve": fourier_curve}
    if kind not in builders:
        raise InvalidParams(f"unknown curve kind {kind!r}")
    try:
        return builders[kind](**params)
    except TypeError as exc:
        raise InvalidParams(f"bad parameters for {kind}: {exc}") from None


# -- rigid motions and orientation --------------------------------------------

def reversed_curve(c: CurveSpec) -> CurveSpec:
    """Same point set traversed the other way, t -> -t."""
    return CurveSpec(
        x=lambda t: c.x(-np.asarray(t, dtype=float)),
        y=lambda t: c.y(-np.asarray(t, dtype=float)),
        dx=lambda t: -c.dx(-np.asarray(t, dtype=float)),
        dy=lambda t: -c.dy(-np.asarray(t, dtype=float)),
        L=c.L, kind=c.kind, params={**c.params, "reversed": not c.params.get("reversed", False)},
    )


def translated(c: CurveSpec, u: float, v: float) -> CurveSpec:
    return CurveSpec(
        x=lambda t: c.x(t) + u, y=lambda t: c.y(t) + v, dx=c.dx, dy=c.dy,
        L=c.L, kind=c.kind, params={**c.params, "translate": [u, v]},
    )


def scaled(c: CurveSpec, lam: float) -> CurveSpec:
    """Dilate by ``lam``; the parameter is stretched too, so unit speed is kept."""
    if not lam > 0:
        raise InvalidParams("scale factor must be positive")
    return CurveSpec(
        x=lambda t: lam * c.x(np.asarray(t, dtype=float) / lam),
        y=lambda t: lam * c.y(np.asarray(t, dtype=float) / lam),
        dx=lambda t: c.dx(np.asarray(t, dtype=float) / lam),
        dy=lambda t: c.dy(np.asarray(t, dtype=float) / lam),
        L=lam * c.L, kind=c.kind, params={**c.params, "scale": lam},
    )


# -- polyline ingestion -------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SampledCurve:
    """Closed polygon given by its vertices; the last vertex joins the first."""

    points: np.ndarray

    def __post_init__(self):
        pts = np.array(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 2:
            raise InvalidParams("points must be a list of [x, y] pairs")
        if pts.shape[0] < 3:
            raise TooFewPoints(f"need at least 3 points, got {pts.shape[0]}")
        if not np.all(np.isfinite(pts)):
            raise InvalidParams("points must be finite")
        if np.any(np.all(pts == np.roll(pts, -1, axis=0), axis=1)):
            raise InvalidParams("consecutive points must differ")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @property
    def M(self) -> int:
        return self.points.shape[0]


def _descriptor(values: np.ndarray, harmonics: int) -> FourierCoeffs:
    M = values.size
    spec = np.fft.rfft(values)
    a0 = 2 * spec[0].real / M
    a = 2 * spec[1:harmonics + 1].real / M
    b = -2 * spec[1:harmonics + 1].imag / M
    return FourierCoeffs(a0, a, b)


def from_polyline(s: SampledCurve, harmonics: int) -> CurveSpec:
    """Smooth closed curve from the first ``harmonics`` Fourier descriptors of a polygon.

    Vertex ``j`` is taken to sit at parameter ``2*pi*j/M``.  Truncation below
    the Nyquist limit gives a trigonometric interpolant-like smoothing that
    is closed and infinitely differentiable by construction.
    """
    if not isinstance(s, SampledCurve):
        s = SampledCurve(s)
    if harmonics < 1:
        raise InvalidParams("harmonics must be positive")
    if harmonics > (s.M - 1) // 2:
        raise HarmonicsExceedNyquist(
            f"{harmonics} harmonics need at least {2 * harmonics + 1} points, got {s.M}")
    cx = _descriptor(s.points[:, 0], harmonics)
    cy = _descriptor(s.points[:, 1], harmonics)
    c = fourier_curve(cx, cy)
    return CurveSpec(c.x, c.y, c.dx, c.dy, c.L, kind="polyline",
                     params={"points": s.points.tolist(), "harmonics": harmonics, "cx": cx, "cy": cy})


# -- arc length ---------------------------------------------------------------

def arc_length(c: CurveSpec, a: float, b: float, order: int = 10) -> float:
    """Integral of the speed over ``[a, b]``."""
    if b < a:
        raise ValueError("arc_length needs a <= b")
    if a == b:
        return 0.0
    return integrate_gauss(c.speed, (a, b), order).value


def perimeter(c: CurveSpec) -> float:
    return arc_length(c, 0.0, c.L)


class ArcLengthInverse:
    """Maps arc length ``s`` back to the parameter ``t`` of a regular curve.

    A cumulative arc-length table on ``knots`` equally spaced parameters gives
    a monotone PCHIP initial guess and a bracket for each query; a
    safeguarded Newton iteration then solves ``S(t) = s`` to rounding, where
    ``S(t)`` is the table value at the knot left of ``t`` plus a 16-point
    Gauss-Legendre integral of the speed up to ``t``.  Steps leaving the
    bracket are replaced by bisection.
    """

    NEWTON_ITERS = 64
    BISECT_ITERS = 200
    GAUSS_ORDER = 16

    def __init__(self, c: CurveSpec, knots: int = 256):
        if knots < 64:
            raise InvalidParams("reparametrization needs at least 64 knots")
        self.curve = c
        self.t_knots, self.s_knots = cumulative_integral(c.speed, (0.0, c.L), knots)
        if np.any(np.diff(self.s_knots) <= 0):
            raise NonMonotone("arc-length table is not strictly increasing")
        self.length = float(self.s_knots[-1])
        self._guess = PchipInterpolator(self.s_knots, self.t_knots)
        self._xi, self._w = gauss_legendre_rule(self.GAUSS_ORDER)
        self._cache = None
        self._lock = threading.Lock()

    def _knot_index(self, t):
        k = np.searchsorted(self.t_knots, t, side="right") - 1
        return np.clip(k, 0, self.t_knots.size - 2)

    def arclength_at(self, t):
        """S(t) for ``t`` in ``[0, L]`` (not wrapped)."""
        t = np.asarray(t, dtype=float)
        k = self._knot_index(t)
        tk = self.t_knots[k]
        half = 0.5 * (t - tk)
        nodes = (tk + half)[..., None] + half[..., None] * self._xi
        return self.s_knots[k] + half * (self.curve.speed(nodes) @ self._w)

    def _solve(self, r: np.ndarray) -> np.ndarray:
        eps = np.finfo(float).eps
        ftol = 8 * eps * max(self.length, 1.0)
        ttol = 4 * eps * self.curve.L
        k = np.clip(np.searchsorted(self.s_knots, r, side="right") - 1, 0, self.s_knots.size - 2)
        lo = self.t_knots[k].copy()
        hi = self.t_knots[k + 1].copy()
        t = np.clip(self._guess(r), lo, hi)
        active = np.ones(r.shape, dtype=bool)
        for _ in range(self.NEWTON_ITERS):
            idx = np.nonzero(active)[0]
            if idx.size == 0:
                break
            ti = t[idx]
            F = self.arclength_at(ti) - r[idx]
            lo[idx] = np.where(F < 0, ti, lo[idx])
            hi[idx] = np.where(F > 0, ti, hi[idx])
            sigma = self.curve.speed(ti)
            with np.errstate(divide="ignore", invalid="ignore"):
                step = F / sigma
            new = ti - step
            bad = ~np.isfinite(new) | (new <= lo[idx]) | (new >= hi[idx])
            converged = np.abs(F) <= ftol
            new = np.where(converged, ti, np.where(bad, 0.5 * (lo[idx] + hi[idx]), new))
            t[idx] = new
            done = converged | (~bad & (np.abs(new - ti) <= ttol))
            active[idx[done]] = False
        residual = np.abs(self.arclength_at(t) - r)
        stalled = np.nonzero(residual > 1e-10)[0]
        if stalled.size:
            t[stalled] = self._bisect(r[stalled], lo[stalled], hi[stalled])
            if np.any(np.abs(self.arclength_at(t[stalled]) - r[stalled]) > 1e-10):
                raise NewtonStall("inverse arc length failed to reach 1e-10 after bisection")
        return t

    def _bisect(self, r, lo, hi):
        for _ in range(self.BISECT_ITERS):
            mid = 0.5 * (lo + hi)
            below = self.arclength_at(mid) < r
            lo = np.where(below, mid, lo)
            hi = np.where(below, hi, mid)
        return 0.5 * (lo + hi)

    def __call__(self, s):
        s = np.asarray(s, dtype=float)
        cached = self._cache
        if cached is not None and cached[0].shape == s.shape and np.array_equal(cached[0], s):
            return cached[1]
        wraps = np.floor(s / self.length)
        r = np.clip(s - wraps * self.length, 0.0, self.length)
        t = self._solve(np.atleast_1d(r)).reshape(s.shape) + wraps * self.curve.L
        with self._lock:
            self._cache = (s.copy(), t)
        return t


def reparametrize_unit_speed(c: CurveSpec, knots: int = 256) -> CurveSpec:
    """Unit-speed version of a regular closed curve.

    The new parameter is arc length, its period is the perimeter, and the
    derivatives come from the chain rule ``x'(s) = dx(t(s)) / |gamma'(t(s))|``.
    """
    inv = ArcLengthInverse(c, knots)

    def x(s):
        return c.x(inv(s))

    def y(s):
        return c.y(inv(s))

    def dx(s):
        t = inv(s)
        return c.dx(t) / c.speed(t)

    def dy(s):
        t = inv(s)
        return c.dy(t) / c.speed(t)

    return CurveSpec(x, y, dx, dy, inv.length, kind=c.kind,
                     params={**c.params, "unit_speed": True, "knots": knots})


def unit_speed_error(c: CurveSpec, n: int = 256) -> float:
    """Largest deviation of the speed from 1 on an ``n``-point grid."""
    return float(np.max(np.abs(c.speed(c.probe_grid(n)) - 1.0)))


# -- the [0, 2*pi] pair -------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ReparamCurve:
    base: CurveSpec
    f: Fn
    g: Fn
    df: Fn
    dg: Fn

    @property
    def L(self) -> float:
        return self.base.L

    @property
    def scale(self) -> float:
        """L / (2*pi), the constant speed of (f, g)."""
        return self.base.L / (2 * np.pi)


def make_reparam(c: CurveSpec, gate: float = UNIT_SPEED_GATE) -> ReparamCurve:
    """``f(theta) = x(L*theta/(2*pi))`` and ``g`` likewise, with chain-rule derivatives."""
    err = unit_speed_error(c)
    if err > gate:
        raise NotUnitSpeed(f"curve speed deviates from 1 by {err:.3e} (gate {gate:g})")
    k = c.L / (2 * np.pi)
    return ReparamCurve(
        base=c,
        f=lambda th: c.x(k * np.asarray(th, dtype=float)),
        g=lambda th: c.y(k * np.asarray(th, dtype=float)),
        df=lambda th: k * c.dx(k * np.asarray(th, dtype=float)),
        dg=lambda th: k * c.dy(k * np.asarray(th, dtype=float)),
    )


def arc_constraint_residual(rc: ReparamCurve, grid: int = 512) -> float:
    """max |f'^2 + g'^2 - (L/(2*pi))^2| over ``grid`` equally spaced angles."""
    th = 2 * np.pi * np.arange(grid) / grid
    return float(np.max(np.abs(rc.df(th) ** 2 + rc.dg(th) ** 2 - rc.scale**2)))


# -- sampled simplicity ---------------------------------------------------------

def _cross(ox, oy, ax, ay, bx, by):
    return (ax - ox) * (by - oy) - (ay - oy) * (bx - ox)


def is_simple(c: CurveSpec, samples: int = 1024) -> tuple[bool, tuple[float, float] | None]:
    """Look for crossings between non-adjacent edges of an inscribed polygon.

    Returns ``(True, None)`` when none is found, otherwise ``(False, (t_i, t_j))``
    with the start parameters of the first crossing pair of edges.  A ``True``
    result is evidence, not proof.
    """
    if samples < 16:
        raise InvalidParams("is_simple needs at least 16 samples")
    t = c.L * np.arange(samples) / samples
    p = c.point(t)
    q = np.roll(p, -1, axis=0)
    for i in range(samples - 2):
        j = np.arange(i + 2, samples if i > 0 else samples - 1)
        if j.size == 0:
            continue
        ax, ay = p[i]
        bx, by = q[i]
        cx, cy = p[j, 0], p[j, 1]
        dx, dy = q[j, 0], q[j, 1]
        d1 = _cross(ax, ay, bx, by, cx, cy)
        d2 = _cross(ax, ay, bx, by, dx, dy)
        d3 = _cross(cx, cy, dx, dy, ax, ay)
        d4 = _cross(cx, cy, dx, dy, bx, by)
        boxes = ((np.minimum(cx, dx) <= max(ax, bx)) & (np.maximum(cx, dx) >= min(ax, bx))
                 & (np.minimum(cy, dy) <= max(ay, by)) & (np.maximum(cy, dy) >= min(ay, by)))
        hit = (d1 * d2 <= 0) & (d3 * d4 <= 0) & boxes
        if np.any(hit):
            jj = int(j[np.argmax(hit)])
            return False, (float(t[i]), float(t[jj]))
    return True, None


def derivative_consistency(c: CurveSpec, samples: int = 1024, h: float = 1e-5) -> float:
    """Largest gap between the analytic derivative and a central difference.

    Advisory sanity probe for user-supplied curves; built-in families carry
    exact derivatives.
    """
    t = c.probe_grid(samples)
    fd_x = (c.x(t + h) - c.x(t - h)) / (2 * h)
    fd_y = (c.y(t + h) - c.y(t - h)) / (2 * h)
    return float(max(np.max(np.abs(fd_x - c.dx(t))), np.max(np.abs(fd_y - c.dy(t)))))


# -- JSON -----------------------------------------------------------------------

def _number(params: Mapping, name: str, kind: str) -> float:
    if name not in params:
        raise InvalidParams(f"{kind}: missing field 'params.{name}'")
    v = params[name]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise InvalidParams(f"{kind}: field 'params.{name}' must be a number")
    return float(v)


def curve_from_json(obj) -> CurveSpec:
    """Parse ``{"kind": ..., "params": {...}}``.

    Kinds and their params:

    * ``circle``: ``r``
    * ``ellipse``: ``a``, ``b``
    * ``fourier``: ``cx``, ``cy``, each a coefficient object ``{"a0", "a", "b"}``
    * ``polyline``: ``points`` as ``[[x, y], ...]`` and ``harmonics``
    """
    if not isinstance(obj, Mapping):
        raise InvalidParams("curve: expected a JSON object with 'kind' and 'params'")
    kind = obj.get("kind")
    if not isinstance(kind, str):
        raise InvalidParams("curve: missing or non-string field 'kind'")
    params = obj.get("params", {})
    if not isinstance(params, Mapping):
        raise InvalidParams("curve: field 'params' must be an object")
    if kind == "circle":
        return circle(_number(params, "r", kind))
    if kind == "ellipse":
        return ellipse(_number(params, "a", kind), _number(params, "b", kind))
    if kind == "fourier":
        for name in ("cx", "cy"):
            if name not in params:
                raise InvalidParams(f"fourier: missing field 'params.{name}'")
        return fourier_curve(FourierCoeffs.from_json(params["cx"]), FourierCoeffs.from_json(params["cy"]))
    if kind == "polyline":
        if "points" not in params:
            raise InvalidParams("polyline: missing field 'params.points'")
        pts = params["points"]
        if not isinstance(pts, list) or any(
                not isinstance(p, list) or len(p) != 2 for p in pts):
            raise InvalidParams("polyline: field 'params.points' must be a list of [x, y] pairs")
        harmonics = params.get("harmonics")
        if harmonics is None:
            harmonics = max(1, min(32, (len(pts) - 1) // 2))
        if isinstance(harmonics, bool) or not isinstance(harmonics, int):
            raise InvalidParams("polyline: field 'params.harmonics' must be an integer")
        return from_polyline(SampledCurve(pts), harmonics)
    raise InvalidParams(f"curve: unknown kind {kind!r}")


def curve_to_json(c: CurveSpec) -> dict:
    """Inverse of :func:`curve_from_json` for the built-in kinds."""
    p = c.params
    if c.kind == "circle":
        return {"kind": "circle", "params": {"r": p["r"]}}
    if c.kind == "ellipse":
        return {"kind": "ellipse", "params": {"a": p["a"], "b": p["b"]}}
    if c.kind == "fourier":
        return {"kind": "fourier", "params": {"cx": p["cx"].to_json(), "cy": p["cy"].to_json()}}
    if c.kind == "polyline":
        return {"kind": "polyline", "params": {"points": p["points"], "harmonics": p["harmonics"]}}
    return {"kind": c.kind}
