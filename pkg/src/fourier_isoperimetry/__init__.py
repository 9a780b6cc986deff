"""Numerical companion to Hurwitz's Fourier-series proof of the isoperimetric inequality."""

__version__ = "0.1.0"

from .quadrature import (Interval, QuadratureResult, cumulative_integral, integrate_gauss,
                         integrate_periodic)
from .trigseries import (FourierCoeffs, MTestReport, coeffs_from_function, eval_deriv_series,
                         eval_partial_sum, eval_series, mtest_report, uniform_error_bound)
from .spectral import (OrthogonalityEntry, ParsevalReport, WirtingerReport, deriv_parseval_check,
                       orthogonality_table, parseval_check, wirtinger_check)
from .curve import (CurveSpec, ReparamCurve, SampledCurve, arc_constraint_residual, arc_length,
                    circle, ellipse, fourier_curve, from_polyline, is_simple, make_family,
                    make_reparam, perimeter, reparametrize_unit_speed)
from .isoperimetric import (IsoperimetricReport, amgm_pointwise_max_violation, area_reparam,
                            area_shoelace, area_simplified, hurwitz_report, ibp_check)
