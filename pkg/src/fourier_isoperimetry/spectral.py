"""Orthogonality, Parseval and Wirtinger checks on truncated series.

Each check computes the integral side by quadrature and the coefficient side
by direct summation, then reports both with their residual.  For a
trigonometric polynomial the two sides agree to rounding.
"""

from __future__ import annotations

import csv
import io
from dataclasses import asdict, dataclass

import numpy as np

from .errors import ZeroMeanViolated
from .quadrature import DEFAULT_TOL, SYMMETRIC_PERIOD, Interval, integrate_periodic
from .trigseries import FourierCoeffs, eval_deriv_series, eval_series, oscillatory_sum

KINDS = ("cos*cos", "sin*sin", "cos*sin")
_BASIS = {"cos*cos": (np.cos, np.cos), "sin*sin": (np.sin, np.sin), "cos*sin": (np.cos, np.sin)}


@dataclass(frozen=True)
class OrthogonalityEntry:
    kind: str
    n: int
    m: int
    computed: float
    expected: float
    residual: float


def orthogonality_entry(kind: str, n: int, m: int, tol: float = DEFAULT_TOL,
                        interval: Interval = SYMMETRIC_PERIOD) -> OrthogonalityEntry:
    first, second = _BASIS[kind]
    # start above Nyquist for the product so two aliased grids cannot agree
    res = integrate_periodic(lambda x: first(n * x) * second(m * x), interval,
                             min_nodes=max(64, 4 * (n + m)), tol=tol)
    expected = np.pi if (kind != "cos*sin" and n == m) else 0.0
    return OrthogonalityEntry(kind, n, m, res.value, expected, abs(res.value - expected))


def orthogonality_table(max_order: int, tol: float = DEFAULT_TOL) -> list[OrthogonalityEntry]:
    """All ``3 * max_order**2`` basis-product integrals over [-pi, pi]."""
    if max_order < 1:
        raise ValueError("max_order must be at least 1")
    return [orthogonality_entry(kind, n, m, tol)
            for kind in KINDS
            for n in range(1, max_order + 1)
            for m in range(1, max_order + 1)]


def orthogonality_csv(entries) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["kind", "n", "m", "computed", "expected", "residual"])
    for e in entries:
        writer.writerow([e.kind, e.n, e.m, repr(e.computed), repr(e.expected), repr(e.residual)])
    return buf.getvalue()


@dataclass(frozen=True)
class ParsevalReport:
    lhs: float
    rhs: float
    cross_term: float
    residual: float
    interval: tuple = (-np.pi, np.pi)

    def to_json(self) -> dict:
        d = asdict(self)
        d["interval"] = list(self.interval)
        return d


def parseval_check(c: FourierCoeffs, tol: float = DEFAULT_TOL,
                   interval: Interval = SYMMETRIC_PERIOD) -> ParsevalReport:
    """Compare (1/pi) * int f^2 with a0^2/2 + sum(a_n^2 + b_n^2).

    ``cross_term`` is int a0 * S(x) dx where S is the oscillatory part; it
    must vanish, which is what lets the squared series split cleanly.
    """
    nodes = max(64, 4 * c.N + 4)
    lhs = integrate_periodic(lambda x: eval_series(c, x) ** 2, interval, nodes, tol).value / np.pi
    cross = integrate_periodic(lambda x: c.a0 * oscillatory_sum(c, x), interval, nodes, tol).value
    rhs = c.energy()
    return ParsevalReport(lhs, rhs, cross, abs(lhs - rhs), (interval.lo, interval.hi))


def squared_sum_check(c: FourierCoeffs, tol: float = DEFAULT_TOL) -> tuple[float, float]:
    """``(int S^2, pi * sum(a_n^2 + b_n^2))`` for the oscillatory part S."""
    nodes = max(64, 4 * c.N + 4)
    quad = integrate_periodic(lambda x: oscillatory_sum(c, x) ** 2, SYMMETRIC_PERIOD, nodes, tol).value
    return quad, np.pi * float(np.sum(c.a**2 + c.b**2))


def deriv_parseval_check(c: FourierCoeffs, tol: float = DEFAULT_TOL,
                         interval: Interval = SYMMETRIC_PERIOD) -> tuple[float, float]:
    """``(lhs, rhs)`` with lhs = (1/pi) int (f')^2 and rhs = sum n^2 (a_n^2 + b_n^2)."""
    nodes = max(64, 4 * c.N + 4)
    lhs = integrate_periodic(lambda x: eval_deriv_series(c, x) ** 2, interval, nodes, tol).value / np.pi
    rhs = float(np.sum(c.n**2 * (c.a**2 + c.b**2)))
    return lhs, rhs


@dataclass(frozen=True)
class WirtingerReport:
    int_f_sq: float
    int_fprime_sq: float
    parseval_f: float
    parseval_fprime: float
    slack: float
    equality_witness: tuple[float, float] | None
    tail_energy: float  # sum_{n>=2} n^2 (a_n^2 + b_n^2)

    @property
    def termwise_gap(self) -> float:
        return self.parseval_fprime - self.parseval_f

    def to_json(self) -> dict:
        d = asdict(self)
        d["equality_witness"] = None if self.equality_witness is None else list(self.equality_witness)
        return d


def termwise_gap(c: FourierCoeffs) -> float:
    """sum (n^2 - 1)(a_n^2 + b_n^2), each term non-negative."""
    return float(np.sum((c.n**2 - 1) * (c.a**2 + c.b**2)))


def wirtinger_check(c: FourierCoeffs, tol: float = 1e-9,
                    interval: Interval = SYMMETRIC_PERIOD,
                    quad_tol: float = DEFAULT_TOL) -> WirtingerReport:
    """Evaluate int f^2 <= int (f')^2 for a zero-mean series.

    The equality witness ``(a_1, b_1)`` is returned when the energy above the
    first harmonic is at most ``tol``, i.e. when f = a_1 cos x + b_1 sin x.
    """
    if abs(c.a0) > tol:
        raise ZeroMeanViolated(f"series has a0={c.a0!r}; Wirtinger needs zero mean")
    nodes = max(64, 4 * c.N + 4)
    int_f = integrate_periodic(lambda x: eval_series(c, x) ** 2, interval, nodes, quad_tol).value
    int_fp = integrate_periodic(lambda x: eval_deriv_series(c, x) ** 2, interval, nodes, quad_tol).value
    energy = c.a**2 + c.b**2
    pf = float(np.sum(energy))
    pfp = float(np.sum(c.n**2 * energy))
    tail = float(np.sum((c.n**2 * energy)[1:]))
    witness = None
    if tail <= tol:
        witness = (float(c.a[0]), float(c.b[0])) if c.N else (0.0, 0.0)
    return WirtingerReport(int_f, int_fp, pf, pfp, int_fp - int_f, witness, tail)
