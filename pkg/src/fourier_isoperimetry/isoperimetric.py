"""Hurwitz's Fourier-series route to A <= L^2 / (4*pi), step by step.

For a regular closed curve the pipeline is

1. reparametrize to unit speed and rescale onto [0, 2*pi], giving (f, g);
2. area: shoelace integral == (1/2) int (f g' - g f') == int f g';
3. AM-GM pointwise: f g' <= (f^2 + g'^2) / 2;
4. Wirtinger for zero-mean f: int f^2 <= int f'^2;
5. arc-length constraint: f'^2 + g'^2 == (L / (2*pi))^2.

Every intermediate quantity is computed and kept in an
:class:`IsoperimetricReport` so each inequality can be inspected.
"""

from __future__ import annotations

import warnings
from dataclasses import asdict, dataclass

import numpy as np

from .curve import (CurveSpec, ReparamCurve, arc_constraint_residual, check_closed, is_simple,
                    make_reparam, min_speed, perimeter, reparametrize_unit_speed,
                    translated, unit_speed_error)
from .errors import NonMonotone, TruncationWarning
from .quadrature import DEFAULT_TOL, STANDARD_PERIOD, Interval, integrate_periodic
from .spectral import deriv_parseval_check, parseval_check, wirtinger_check
from .trigseries import coeffs_from_function

TWO_PI = 2 * np.pi


def _integrate(fn, interval, tol):
    return integrate_periodic(fn, interval, min_nodes=64, tol=tol).value


def area_shoelace(c: CurveSpec, tol: float = DEFAULT_TOL) -> float:
    """Signed area (1/2) int_0^L (x y' - y x') dt; positive for counter-clockwise curves."""
    return 0.5 * _integrate(lambda t: c.x(t) * c.dy(t) - c.y(t) * c.dx(t), Interval(0.0, c.L), tol)


def area_reparam(rc: ReparamCurve, tol: float = DEFAULT_TOL) -> float:
    return 0.5 * _integrate(lambda th: rc.f(th) * rc.dg(th) - rc.g(th) * rc.df(th), STANDARD_PERIOD, tol)


def area_simplified(rc: ReparamCurve, tol: float = DEFAULT_TOL) -> float:
    """int_0^{2 pi} f g', the area once the two halves are merged by parts."""
    return _integrate(lambda th: rc.f(th) * rc.dg(th), STANDARD_PERIOD, tol)


def ibp_check(rc: ReparamCurve, tol: float = DEFAULT_TOL) -> float:
    """|int f g' + int g f'|, zero because f g is 2*pi-periodic."""
    fg = _integrate(lambda th: rc.f(th) * rc.dg(th), STANDARD_PERIOD, tol)
    gf = _integrate(lambda th: rc.g(th) * rc.df(th), STANDARD_PERIOD, tol)
    return abs(fg + gf)


def amgm_pointwise_max_violation(rc: ReparamCurve, grid: int = 1024) -> float:
    """max over the grid of 2 f g' - (f^2 + g'^2); never positive beyond rounding."""
    th = TWO_PI * np.arange(grid) / grid
    f = rc.f(th)
    gp = rc.dg(th)
    return float(np.max(2 * f * gp - (f**2 + gp**2)))


def amgm_bound(rc: ReparamCurve, tol: float = DEFAULT_TOL) -> float:
    return 0.5 * _integrate(lambda th: rc.f(th) ** 2 + rc.dg(th) ** 2, STANDARD_PERIOD, tol)


def wirtinger_bound(rc: ReparamCurve, tol: float = DEFAULT_TOL) -> float:
    return 0.5 * _integrate(lambda th: rc.df(th) ** 2 + rc.dg(th) ** 2, STANDARD_PERIOD, tol)


def shift_x(rc: ReparamCurve, offset: float) -> ReparamCurve:
    """The pair for the curve translated by ``-offset`` in x."""
    return ReparamCurve(base=translated(rc.base, -offset, 0.0),
                        f=lambda th: rc.f(th) - offset, g=rc.g, df=rc.df, dg=rc.dg)


@dataclass(frozen=True)
class IsoperimetricReport:
    L: float
    A_shoelace: float
    A_reparam: float
    A_simplified: float
    ibp_residual: float
    amgm_bound: float
    wirtinger_bound: float
    arc_constraint_residual: float
    ratio: float
    deficit: float
    simple_probe: bool
    chain_ok: bool
    # supporting evidence
    orientation: str
    perimeter_input: float
    unit_speed_error: float
    amgm_max_violation: float
    f_mean: float
    recenter_residual: float
    parseval_residual: float
    parseval_cross_term: float
    deriv_parseval_residual: float
    f_parseval_gap: float
    fprime_parseval_gap: float
    f_tail_energy: float
    wirtinger_slack: float
    wirtinger_witness: tuple[float, float] | None
    truncation_warning: bool
    config: dict

    @property
    def A(self) -> float:
        return abs(self.A_shoelace)

    def to_json(self) -> dict:
        d = asdict(self)
        if self.wirtinger_witness is not None:
            d["wirtinger_witness"] = list(self.wirtinger_witness)
        return d

    def csv_row(self, curve_id) -> list:
        return [curve_id, self.L, self.A, self.ratio, self.deficit, self.chain_ok]


CSV_HEADER = ["curve_id", "L", "A", "ratio", "deficit", "chain_ok"]


def hurwitz_report(c: CurveSpec, fourier_order: int = 32, tol: float = 1e-10, *,
                   knots: int = 256, quad_tol: float = DEFAULT_TOL,
                   tail_tol: float = 1e-8, simple_samples: int = 1024) -> IsoperimetricReport:
    """Run the whole chain on a closed regular curve.

    ``tol`` is the slack allowed in each comparison of the chain.  Quadrature
    tolerances scale with (L / (2*pi))^2 so large curves converge as readily
    as small ones.  A ``TruncationWarning`` is issued, not raised, when the
    energy of f beyond ``fourier_order`` exceeds ``tail_tol``.
    """
    check_closed(c)
    if min_speed(c) <= 0:
        raise NonMonotone("curve is not regular: speed vanishes on the probe grid")

    L_in = perimeter(c)
    qt = quad_tol * max(1.0, (L_in / TWO_PI) ** 2)
    A_sh = area_shoelace(c, qt)

    unit = reparametrize_unit_speed(c, knots)
    rc = make_reparam(unit)
    L = unit.L
    qt = quad_tol * max(1.0, rc.scale**2)

    A_rep = area_reparam(rc, qt)
    A_simp = area_simplified(rc, qt)
    ibp = ibp_check(rc, qt)
    arc_res = arc_constraint_residual(rc)

    # recentre f: coefficient route and translation route must agree
    cf = coeffs_from_function(rc.f, fourier_order, tol=qt)
    f_mean = 0.5 * cf.a0
    cf0 = cf.without_mean()
    centred = shift_x(rc, f_mean)
    recenter_residual = abs(0.5 * coeffs_from_function(centred.f, 0, tol=qt).a0)

    amgm = amgm_bound(centred, qt)
    wirt = wirtinger_bound(centred, qt)
    amgm_violation = amgm_pointwise_max_violation(centred)

    # Parseval for the truncated series, and for f itself against its coefficients
    pr = parseval_check(cf0, qt)
    d_lhs, d_rhs = deriv_parseval_check(cf0, qt)
    int_f_sq = _integrate(lambda th: centred.f(th) ** 2, STANDARD_PERIOD, qt)
    int_fp_sq = _integrate(lambda th: centred.df(th) ** 2, STANDARD_PERIOD, qt)
    f_gap = int_f_sq / np.pi - cf0.energy()
    fp_gap = int_fp_sq / np.pi - float(np.sum(cf0.n**2 * (cf0.a**2 + cf0.b**2)))
    tail = max(f_gap, 0.0)
    truncated = tail > tail_tol * max(1.0, rc.scale**2)
    if truncated:
        warnings.warn(f"Fourier tail energy of f beyond order {fourier_order} is {tail:.3e}",
                      TruncationWarning, stacklevel=2)
    wr = wirtinger_check(cf0, tol=tail_tol * max(1.0, rc.scale**2), quad_tol=qt)

    A = abs(A_sh)
    ratio = 4 * np.pi * A / L**2
    deficit = L**2 - 4 * np.pi * A
    simple, _ = is_simple(c, simple_samples)
    chain_ok = bool(A_simp <= amgm + tol and amgm <= wirt + tol and 4 * np.pi * A <= L**2 * (1 + tol))

    return IsoperimetricReport(
        L=L, A_shoelace=A_sh, A_reparam=A_rep, A_simplified=A_simp, ibp_residual=ibp,
        amgm_bound=amgm, wirtinger_bound=wirt, arc_constraint_residual=arc_res,
        ratio=ratio, deficit=deficit, simple_probe=simple, chain_ok=chain_ok,
        orientation="counterclockwise" if A_sh >= 0 else "clockwise",
        perimeter_input=L_in, unit_speed_error=unit_speed_error(unit),
        amgm_max_violation=amgm_violation, f_mean=f_mean, recenter_residual=recenter_residual,
        parseval_residual=pr.residual, parseval_cross_term=pr.cross_term,
        deriv_parseval_residual=abs(d_lhs - d_rhs), f_parseval_gap=f_gap,
        fprime_parseval_gap=fp_gap, f_tail_energy=tail, wirtinger_slack=int_fp_sq - int_f_sq,
        wirtinger_witness=wr.equality_witness, truncation_warning=truncated,
        config={"fourier_order": fourier_order, "tol": tol, "knots": knots,
                "quad_tol": quad_tol, "simple_samples": simple_samples},
    )
