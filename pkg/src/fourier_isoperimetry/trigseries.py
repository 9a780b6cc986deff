"""Truncated real Fourier series.

A series of order ``N`` is

    f(x) = a0/2 + sum_{n=1..N} (a_n cos(nx) + b_n sin(nx)).

Coefficient arrays are stored 0-based, so ``c.a[0]`` is ``a_1``.  The JSON
form ``{"a0": ..., "a": [...], "b": [...]}`` uses the same offset.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .errors import IndexOutOfRange, InvalidParams
from .quadrature import DEFAULT_TOL, SYMMETRIC_PERIOD, periodic_trapezoid


def _frozen(values) -> np.ndarray:
    arr = np.array(values, dtype=float).reshape(-1)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class FourierCoeffs:
    a0: float = 0.0
    a: np.ndarray = field(default_factory=lambda: _frozen([]))
    b: np.ndarray = field(default_factory=lambda: _frozen([]))

    def __post_init__(self):
        a = _frozen(self.a)
        b = _frozen(self.b)
        if a.shape != b.shape:
            raise InvalidParams(f"'a' and 'b' must have equal length, got {a.size} and {b.size}")
        a0 = float(self.a0)
        if not (np.isfinite(a0) and np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
            raise InvalidParams("Fourier coefficients must be finite")
        object.__setattr__(self, "a0", a0)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def N(self) -> int:
        return self.a.size

    @property
    def n(self) -> np.ndarray:
        """Harmonic indices 1..N."""
        return np.arange(1, self.N + 1, dtype=float)

    @classmethod
    def sparse(cls, a0: float = 0.0, a: Mapping[int, float] | None = None,
               b: Mapping[int, float] | None = None, order: int | None = None) -> "FourierCoeffs":
        """Build from ``{harmonic: value}`` maps, e.g. ``sparse(a={1: 3}, b={2: 4})``."""
        a = dict(a or {})
        b = dict(b or {})
        keys = list(a) + list(b)
        if any(k < 1 for k in keys):
            raise InvalidParams("harmonic indices start at 1")
        top = max(keys, default=0)
        if order is None:
            order = top
        elif order < top:
            raise InvalidParams(f"order {order} is below the largest harmonic {top}")
        av = np.zeros(order)
        bv = np.zeros(order)
        for k, v in a.items():
            av[k - 1] = v
        for k, v in b.items():
            bv[k - 1] = v
        return cls(a0, av, bv)

    def __eq__(self, other):
        if not isinstance(other, FourierCoeffs):
            return NotImplemented
        return (self.a0 == other.a0 and np.array_equal(self.a, other.a)
                and np.array_equal(self.b, other.b))

    def __add__(self, other: "FourierCoeffs") -> "FourierCoeffs":
        n = max(self.N, other.N)
        return FourierCoeffs(self.a0 + other.a0,
                             _pad(self.a, n) + _pad(other.a, n),
                             _pad(self.b, n) + _pad(other.b, n))

    def scaled(self, factor: float) -> "FourierCoeffs":
        return FourierCoeffs(factor * self.a0, factor * self.a, factor * self.b)

    def padded(self, order: int) -> "FourierCoeffs":
        if order < self.N:
            raise InvalidParams("cannot pad to a smaller order")
        return FourierCoeffs(self.a0, _pad(self.a, order), _pad(self.b, order))

    def without_mean(self) -> "FourierCoeffs":
        return FourierCoeffs(0.0, self.a, self.b)

    def derivative(self) -> "FourierCoeffs":
        """Coefficients of the term-wise derivative: a_n -> n b_n, b_n -> -n a_n."""
        return FourierCoeffs(0.0, self.n * self.b, -self.n * self.a)

    def energy(self) -> float:
        """a0^2/2 + sum(a_n^2 + b_n^2)."""
        return 0.5 * self.a0**2 + float(np.sum(self.a**2 + self.b**2))

    def to_json(self) -> dict:
        return {"a0": self.a0, "a": self.a.tolist(), "b": self.b.tolist()}

    @classmethod
    def from_json(cls, obj) -> "FourierCoeffs":
        if not isinstance(obj, Mapping):
            raise InvalidParams("coefficients: expected a JSON object with 'a0', 'a', 'b'")
        unknown = set(obj) - {"a0", "a", "b"}
        if unknown:
            raise InvalidParams(f"coefficients: unknown field {sorted(unknown)[0]!r}")
        a0 = obj.get("a0", 0.0)
        if isinstance(a0, bool) or not isinstance(a0, (int, float)):
            raise InvalidParams("coefficients: field 'a0' must be a number")
        arrays = {}
        for name in ("a", "b"):
            vals = obj.get(name, [])
            if not isinstance(vals, list) or any(
                    isinstance(v, bool) or not isinstance(v, (int, float)) for v in vals):
                raise InvalidParams(f"coefficients: field {name!r} must be a list of numbers")
            arrays[name] = vals
        if len(arrays["a"]) != len(arrays["b"]):
            raise InvalidParams("coefficients: fields 'a' and 'b' must have equal length")
        return cls(a0, arrays["a"], arrays["b"])


def _pad(arr: np.ndarray, n: int) -> np.ndarray:
    return np.concatenate([arr, np.zeros(n - arr.size)])


def _harmonics(x, K: int):
    x = np.asarray(x, dtype=float)
    nx = np.multiply.outer(x, np.arange(1, K + 1, dtype=float))
    return x, nx


def oscillatory_sum(c: FourierCoeffs, x, K: int | None = None):
    """sum_{n=1..K} (a_n cos(nx) + b_n sin(nx)), the series without its constant."""
    K = c.N if K is None else K
    x, nx = _harmonics(x, K)
    return np.cos(nx) @ c.a[:K] + np.sin(nx) @ c.b[:K]


def eval_partial_sum(c: FourierCoeffs, x, K: int):
    """Partial sum of order ``K``; ``x`` may be a scalar or an array."""
    if not 0 <= K <= c.N:
        raise IndexOutOfRange(f"partial-sum order {K} outside 0..{c.N}")
    return 0.5 * c.a0 + oscillatory_sum(c, x, K)


def eval_series(c: FourierCoeffs, x):
    return eval_partial_sum(c, x, c.N)


def eval_deriv_series(c: FourierCoeffs, x):
    """Term-wise derivative sum_{n} (-n a_n sin(nx) + n b_n cos(nx))."""
    x, nx = _harmonics(x, c.N)
    n = c.n
    return np.cos(nx) @ (n * c.b) - np.sin(nx) @ (n * c.a)


def coeffs_from_function(fn, N: int, tol: float = DEFAULT_TOL, max_nodes: int = 2**20) -> FourierCoeffs:
    """Fourier coefficients of a 2*pi-periodic vectorised function up to order ``N``.

    a_n = (1/pi) * int_{-pi}^{pi} f(x) cos(nx) dx and likewise for b_n.  All
    coefficients share one doubling trapezoid grid, which starts at
    ``max(64, 4N)`` nodes and stops once every coefficient has settled to
    ``tol / pi``.
    """
    if N < 0:
        raise InvalidParams("order must be non-negative")
    harmonics = np.arange(0, N + 1, dtype=float)

    def stacked(x):
        f = np.asarray(fn(x), dtype=float)
        if f.ndim == 0:
            f = np.full(x.shape, float(f))
        nx = np.multiply.outer(harmonics, x)
        return np.concatenate([np.cos(nx) * f, np.sin(nx[1:]) * f])

    values, _, _ = periodic_trapezoid(stacked, SYMMETRIC_PERIOD, max(64, 4 * N), tol / np.pi, max_nodes)
    values = values / np.pi
    return FourierCoeffs(values[0], values[1:N + 1], values[N + 1:])


@dataclass(frozen=True, eq=False)
class MTestReport:
    """Weierstrass majorant sums for a series and its derivative."""

    m_terms: np.ndarray  # |a_n| + |b_n|, n = 1..N

    @property
    def m_sum(self) -> float:
        return float(np.sum(self.m_terms))

    @property
    def weighted_m_sum(self) -> float:
        return float(np.sum(np.arange(1, self.m_terms.size + 1) * self.m_terms))

    def tail_fraction(self, k: int) -> float:
        """Share of ``m_sum`` carried by harmonics above ``k``."""
        if not 0 <= k <= self.m_terms.size:
            raise IndexOutOfRange(f"k={k} outside 0..{self.m_terms.size}")
        total = self.m_sum
        if total == 0:
            return 0.0
        return float(np.sum(self.m_terms[k:])) / total

    def to_json(self) -> dict:
        return {"m_sum": self.m_sum, "weighted_m_sum": self.weighted_m_sum}


def mtest_report(c: FourierCoeffs) -> MTestReport:
    terms = np.abs(c.a) + np.abs(c.b)
    terms.setflags(write=False)
    return MTestReport(terms)


def uniform_error_bound(c: FourierCoeffs, K: int) -> float:
    """Sup-norm bound on ``series - partial_sum(K)``: sum_{n>K} (|a_n| + |b_n|)."""
    if not 0 <= K <= c.N:
        raise IndexOutOfRange(f"K={K} outside 0..{c.N}")
    return float(np.sum(np.abs(c.a[K:]) + np.abs(c.b[K:])))
