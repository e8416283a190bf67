"""Exact finite measure spaces and the metric operations built on them.

Every space here is a finite atomic probability measure, so every integral
is a plain weighted sum and analytic identities can be asserted to machine
precision instead of approximated.  Three constructions are provided:

* ``make_interval_grid``  -- midpoint rule on [0,1); exact for trigonometric
  polynomials whose total frequency stays below the grid size.
* ``make_square_grid``    -- tensor midpoint rule on [0,1)^2.
* ``make_product_space``  -- all m-tuples over a finite complex distribution,
  so coordinate functions are genuinely independent and identically
  distributed and expectations are exact finite sums.

On top of these sit the inner product, the L^p norms, and the distance
between two functions minimized over a global unimodular phase factor.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

TWO_PI = 2.0 * math.pi

#: weights of a probability measure must sum to 1 within this tolerance
WEIGHT_SUM_TOL = 1e-14

#: default atom cap for product spaces
DEFAULT_ATOM_CAP = 10**6


class ResourceLimitError(RuntimeError):
    """A construction would exceed a configured size limit."""


@dataclass
class DiscreteMeasure:
    """Finite atomic probability space.

    ``points`` carries the coordinates used to evaluate functions: shape
    ``(n,)`` for an interval grid, ``(n, 2)`` for a square grid, and
    ``(n, m)`` complex for a product space.  ``atoms`` are stable textual
    identifiers, one per atom, in measure order.
    """

    kind: str  # "interval-grid" | "square-grid" | "product-space"
    atoms: list[str]
    weights: np.ndarray
    points: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.weights = np.asarray(self.weights, dtype=np.float64)
        if len(self.atoms) != self.weights.size:
            raise ValueError("one weight per atom required")
        if np.any(self.weights <= 0):
            raise ValueError("all weights must be strictly positive")
        total = float(self.weights.sum())
        if abs(total - 1.0) > WEIGHT_SUM_TOL:
            raise ValueError(f"weights sum to {total!r}, not a probability measure")

    @property
    def n_atoms(self) -> int:
        return self.weights.size

    def sample(self, fn) -> "SampledFunction":
        """Evaluate ``fn`` on the atom coordinates and wrap the result."""
        if self.kind == "interval-grid":
            values = fn(self.points)
        elif self.kind == "square-grid":
            values = fn(self.points[:, 0], self.points[:, 1])
        else:
            values = fn(self.points)
        return SampledFunction(np.asarray(values, dtype=np.complex128), self)

    def function(self, values) -> "SampledFunction":
        return SampledFunction(np.asarray(values, dtype=np.complex128), self)


@dataclass
class SampledFunction:
    """Complex values of a function on the atoms of a DiscreteMeasure."""

    values: np.ndarray
    measure: DiscreteMeasure

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.complex128)
        if self.values.shape != (self.measure.n_atoms,):
            raise ValueError(
                f"expected {self.measure.n_atoms} values, got {self.values.shape}"
            )

    def __add__(self, other: "SampledFunction") -> "SampledFunction":
        _require_same_measure(self, other)
        return SampledFunction(self.values + other.values, self.measure)

    def __sub__(self, other: "SampledFunction") -> "SampledFunction":
        _require_same_measure(self, other)
        return SampledFunction(self.values - other.values, self.measure)

    def __mul__(self, scalar) -> "SampledFunction":
        return SampledFunction(self.values * scalar, self.measure)

    __rmul__ = __mul__

    def conj(self) -> "SampledFunction":
        return SampledFunction(np.conj(self.values), self.measure)

    def abs(self) -> "SampledFunction":
        return SampledFunction(np.abs(self.values).astype(np.complex128), self.measure)


@dataclass
class PhaseAlignment:
    """Result of minimizing ||f - e^{i theta} g|| over the phase theta."""

    theta: float
    distance: float
    field: str  # "real" | "complex"
    degenerate: bool = False  # <f,g> = 0 in the p=2 closed form: any phase attains

    def __post_init__(self):
        if self.field == "real" and self.theta not in (0.0, math.pi):
            raise ValueError("real-field alignment must have theta in {0, pi}")
        if self.distance < 0:
            raise ValueError("distance must be nonnegative")


def same_measure(a: DiscreteMeasure, b: DiscreteMeasure) -> bool:
    if a is b:
        return True
    return (
        a.kind == b.kind
        and a.n_atoms == b.n_atoms
        and np.array_equal(a.weights, b.weights)
        and np.array_equal(a.points, b.points)
    )


def _require_same_measure(f: SampledFunction, g: SampledFunction):
    if not same_measure(f.measure, g.measure):
        raise ValueError("functions live on different measures")


def make_interval_grid(n: int) -> DiscreteMeasure:
    """Midpoint grid x_k = (k + 1/2)/n on [0,1), each atom of weight 1/n."""
    if n < 2:
        raise ValueError(f"interval grid needs n >= 2, got {n}")
    x = (np.arange(n) + 0.5) / n
    atoms = [f"{v:.17g}" for v in x]
    return DiscreteMeasure(
        "interval-grid", atoms, np.full(n, 1.0 / n), x, meta={"n": n}
    )


def make_square_grid(n: int) -> DiscreteMeasure:
    """Product midpoint grid on [0,1)^2 with n^2 atoms of weight 1/n^2."""
    if n < 2:
        raise ValueError(f"square grid needs n >= 2, got {n}")
    u = (np.arange(n) + 0.5) / n
    xx, yy = np.meshgrid(u, u, indexing="ij")
    pts = np.column_stack([xx.ravel(), yy.ravel()])
    atoms = [f"{p[0]:.17g}|{p[1]:.17g}" for p in pts]
    return DiscreteMeasure(
        "square-grid", atoms, np.full(n * n, 1.0 / (n * n)), pts, meta={"n": n}
    )


def make_product_space(
    support: list[tuple[complex, float]],
    m: int,
    atom_cap: int = DEFAULT_ATOM_CAP,
) -> DiscreteMeasure:
    """All m-tuples over a finite distribution, weighted by coordinate products.

    ``support`` is a list of (value, probability) pairs.  Coordinate
    functions on the result are iid by construction.
    """
    if m < 1:
        raise ValueError("m must be a positive integer")
    if not support:
        raise ValueError("empty support")
    vals = np.asarray([v for v, _ in support], dtype=np.complex128)
    probs = np.asarray([p for _, p in support], dtype=np.float64)
    if np.any(probs <= 0):
        raise ValueError("support probabilities must be strictly positive")
    if abs(float(probs.sum()) - 1.0) > WEIGHT_SUM_TOL:
        raise ValueError(f"support probabilities sum to {float(probs.sum())!r}")
    n_atoms = len(support) ** m
    if n_atoms > atom_cap:
        raise ResourceLimitError(
            f"product space would have {n_atoms} atoms, cap is {atom_cap}"
        )
    idx = np.array(list(itertools.product(range(len(support)), repeat=m)))
    pts = vals[idx]  # (n_atoms, m) complex
    weights = probs[idx].prod(axis=1)
    atoms = [
        "|".join(f"{v.real:.17g}{v.imag:+.17g}j" for v in row) for row in pts
    ]
    return DiscreteMeasure(
        "product-space",
        atoms,
        weights,
        pts,
        meta={"support": [(complex(v), float(p)) for v, p in zip(vals, probs)], "m": m},
    )


def inner(f: SampledFunction, g: SampledFunction) -> complex:
    """<f, g> = sum f * conj(g) * weight, conjugate-linear in g."""
    _require_same_measure(f, g)
    return complex(np.sum(f.values * np.conj(g.values) * f.measure.weights))


def norm_p(f: SampledFunction, p: float) -> float:
    """L^p norm; p = inf gives the max over atoms."""
    if p == math.inf:
        return float(np.max(np.abs(f.values))) if f.values.size else 0.0
    if p < 1:
        raise ValueError(f"p must be >= 1 or inf, got {p}")
    a = np.abs(f.values)
    return float(np.sum(a**p * f.measure.weights) ** (1.0 / p))


def _dist_given_phase(f: SampledFunction, g: SampledFunction, theta: float, p: float) -> float:
    return norm_p(
        SampledFunction(f.values - np.exp(1j * theta) * g.values, f.measure), p
    )


def _p4_phase_coeffs(f: SampledFunction, g: SampledFunction) -> np.ndarray:
    """Coefficients (A, B, C, D, E) of ||f - e^{i t} g||_4^4.

    |f - zg|^4 = (u - 2 Re(z c))^2 with u = |f|^2 + |g|^2 and c = g conj(f),
    so the objective is A + B cos t + C sin t + D cos 2t + E sin 2t.
    """
    w = f.measure.weights
    u = np.abs(f.values) ** 2 + np.abs(g.values) ** 2
    c = g.values * np.conj(f.values)
    cr, ci = c.real, c.imag
    A = float(np.sum(w * u**2) + 2.0 * np.sum(w * (cr**2 + ci**2)))
    B = float(-4.0 * np.sum(w * u * cr))
    C = float(4.0 * np.sum(w * u * ci))
    D = float(2.0 * np.sum(w * (cr**2 - ci**2)))
    E = float(-4.0 * np.sum(w * cr * ci))
    return np.array([A, B, C, D, E])


def eval_p4_objective(coeffs: np.ndarray, theta) -> np.ndarray:
    """||f - e^{i theta} g||_4^4 from precomputed trigonometric coefficients."""
    A, B, C, D, E = coeffs
    theta = np.asarray(theta, dtype=np.float64)
    return (
        A
        + B * np.cos(theta)
        + C * np.sin(theta)
        + D * np.cos(2.0 * theta)
        + E * np.sin(2.0 * theta)
    )


_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def _golden_min(obj, lo: float, hi: float, tol: float = 1e-12) -> float:
    """Golden-section minimum of a unimodal objective on [lo, hi]."""
    a, b = lo, hi
    x1 = b - _GOLDEN * (b - a)
    x2 = a + _GOLDEN * (b - a)
    f1, f2 = obj(x1), obj(x2)
    while (b - a) > tol:
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - _GOLDEN * (b - a)
            f1 = obj(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + _GOLDEN * (b - a)
            f2 = obj(x2)
    return 0.5 * (a + b)


def _scan_refine_phase(obj, n_coarse: int = 64, tol: float = 1e-12) -> float:
    """Coarse scan over equispaced phases, then golden-section refinement."""
    thetas = np.arange(n_coarse) * (TWO_PI / n_coarse)
    vals = np.array([obj(t) for t in thetas])
    k = int(np.argmin(vals))
    span = TWO_PI / n_coarse
    return _golden_min(obj, thetas[k] - span, thetas[k] + span, tol) % TWO_PI


def min_phase_dist(
    f: SampledFunction,
    g: SampledFunction,
    p: float = 2.0,
    field: str = "complex",
    method: str = "auto",
) -> PhaseAlignment:
    """Distance between f and g minimized over a global unimodular phase.

    For the complex field at p = 2 the minimizer is closed-form,
    z* = <f,g>/|<f,g>|; other exponents use a 64-point scan followed by
    golden-section refinement.  The real field only compares theta in
    {0, pi}.  ``method`` can force "scan" to exercise the scan path at
    p = 2 against the closed form.
    """
    _require_same_measure(f, g)
    if field == "real":
        d0 = _dist_given_phase(f, g, 0.0, p)
        d1 = _dist_given_phase(f, g, math.pi, p)
        if d0 <= d1:
            return PhaseAlignment(0.0, d0, "real")
        return PhaseAlignment(math.pi, d1, "real")
    if field != "complex":
        raise ValueError(f"unknown field {field!r}")

    if p == 2 and method in ("auto", "closed-form"):
        ip = inner(f, g)
        mod = abs(ip)
        # the distance is evaluated pointwise at the optimal phase: the
        # closed form sqrt(|f|^2+|g|^2-2|<f,g>|) cancels catastrophically
        # when f is close to a unimodular multiple of g
        if mod <= 1e-14 * norm_p(f, 2) * norm_p(g, 2):
            return PhaseAlignment(0.0, _dist_given_phase(f, g, 0.0, 2), "complex", degenerate=True)
        theta = math.atan2(ip.imag, ip.real) % TWO_PI
        return PhaseAlignment(theta, _dist_given_phase(f, g, theta, 2), "complex")

    if p == 4:
        # cheap coarse location on the exact trigonometric polynomial, then
        # golden-section on the pointwise objective, whose relative accuracy
        # survives near-zero minima
        coeffs = _p4_phase_coeffs(f, g)
        thetas = np.arange(64) * (TWO_PI / 64)
        k = int(np.argmin(eval_p4_objective(coeffs, thetas)))
        span = TWO_PI / 64
        theta = _golden_min(
            lambda t: _dist_given_phase(f, g, t, 4), thetas[k] - span, thetas[k] + span
        ) % TWO_PI
        return PhaseAlignment(theta, _dist_given_phase(f, g, theta, 4), "complex")

    theta = _scan_refine_phase(lambda t: _dist_given_phase(f, g, t, p))
    return PhaseAlignment(theta, _dist_given_phase(f, g, theta, p), "complex")
