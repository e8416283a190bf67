"""Orthonormal families whose squared moduli admit orthogonal expansions.

Each constructor returns an :class:`OrthoBasis`: an ordered orthonormal
family ``r_1..r_M`` on an exact discrete measure, together with the
associated functions ``s_j = |r_j|^2 - 1``.  For a coefficient vector
``a`` the squared modulus of ``f = sum_k a_k r_k`` expands as

    |f|^2 = sum_{i != j} a_i conj(a_j) r_i conj(r_j)
          + sum_k |a_k|^2 s_k + ||f||_2^2 * 1,

which :func:`expand_modulus_squared` represents symbolically.  Grid sizes
are validated so that every inner product among ``{1, s_i, r_j conj(r_k)}``
is quadrature-exact (total frequency below the grid size).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .measures import (
    TWO_PI,
    DiscreteMeasure,
    SampledFunction,
    make_interval_grid,
    make_product_space,
    make_square_grid,
    norm_p,
)

#: orthonormality is enforced on every constructed basis within this tolerance
ORTHONORMALITY_TOL = 1e-10

#: a dilated polynomial whose modulus deviates from 1 by less in L2 is degenerate
CONSTANT_MODULUS_TOL = 1e-8


class DegenerateBasisError(ValueError):
    """The requested family cannot support phase retrieval (constant moduli)."""


#: coefficient vectors are plain complex ndarrays (real-valued for field="real")
CoefVec = np.ndarray


@dataclass
class OrthoBasis:
    """Ordered orthonormal family with its associated squared-modulus deviations.

    ``provenance`` records the constructor and its parameters; reports use it
    to reproduce the basis.  Instances are treated as immutable.
    """

    elements: list[SampledFunction]
    s_elements: list[SampledFunction]
    field: str  # "real" | "complex"
    provenance: dict = field(default_factory=dict)

    @property
    def size(self) -> int:
        return len(self.elements)

    @property
    def measure(self) -> DiscreteMeasure:
        return self.elements[0].measure

    @cached_property
    def element_matrix(self) -> np.ndarray:
        """(n_atoms, M) matrix of element values."""
        return np.column_stack([r.values for r in self.elements])

    @cached_property
    def s_matrix(self) -> np.ndarray:
        return np.column_stack([s.values for s in self.s_elements])

    @cached_property
    def s_norms_sq(self) -> np.ndarray:
        """||s_j||_2^2 by exact quadrature."""
        w = self.measure.weights
        return np.real(np.abs(self.s_matrix) ** 2).T @ w

    @cached_property
    def pair_products(self) -> np.ndarray:
        """(M, M, n_atoms) array of r_i * conj(r_j)."""
        R = self.element_matrix
        return R.T[:, None, :] * np.conj(R.T)[None, :, :]

    @cached_property
    def pair_norms_sq(self) -> np.ndarray:
        """(M, M) matrix of ||r_i conj(r_j)||_2^2 by exact quadrature."""
        w = self.measure.weights
        return np.abs(self.pair_products) ** 2 @ w

    def element(self, j: int) -> SampledFunction:
        return self.elements[j]


def _validate_orthonormal(elements: list[SampledFunction], tol: float = ORTHONORMALITY_TOL):
    R = np.column_stack([r.values for r in elements])
    w = elements[0].measure.weights
    gram = (R * w[:, None]).conj().T @ R
    dev = np.abs(gram - np.eye(len(elements)))
    if dev.max() > tol:
        i, j = np.unravel_index(int(np.argmax(dev)), dev.shape)
        raise ValueError(
            f"family is not orthonormal: |<r_{i+1}, r_{j+1}> - delta| = {dev[i, j]:.3e}"
        )


def _finish_basis(elements, field_tag, provenance) -> OrthoBasis:
    _validate_orthonormal(elements)
    s_elements = [
        SampledFunction((np.abs(r.values) ** 2 - 1.0).astype(np.complex128), r.measure)
        for r in elements
    ]
    return OrthoBasis(elements, s_elements, field_tag, provenance)


def lacunary_sine_basis(m: int, base: int = 4, grid_n: int = 16384) -> OrthoBasis:
    """Real family r_n(x) = sqrt(2) sin(2 pi base^n x), n = 1..m.

    The grid must exceed four times the top frequency so that all products
    of two pair-products stay in band.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    if base < 2:
        raise ValueError("base must be >= 2")
    required = 4 * base**m
    if grid_n <= required:
        raise ValueError(
            f"grid_n={grid_n} too coarse for base^m={base**m}; need grid_n > {required}"
        )
    mu = make_interval_grid(grid_n)
    x = mu.points
    elements = [
        mu.function(math.sqrt(2.0) * np.sin(TWO_PI * base**n * x)) for n in range(1, m + 1)
    ]
    prov = {"kind": "lacunary-sine", "base": base, "m": m, "grid_n": grid_n}
    return _finish_basis(elements, "real", prov)


def lacunary_poly_basis(
    coeffs, dilation: int, m: int, grid_n: int
) -> OrthoBasis:
    """Complex family r_n(x) = P(dilation^n x) for P(x) = sum_k c_k e^{2 pi i k x}.

    ``coeffs`` are the coefficients c_1..c_N.  The dilation must exceed 2N so
    the dilates occupy disjoint frequency blocks; coefficients are rescaled
    to unit l2 norm (recorded in provenance) and a P with constant modulus
    is rejected since its dilates can never separate phases.
    """
    c = np.asarray(coeffs, dtype=np.complex128)
    n_deg = c.size
    if n_deg < 1:
        raise ValueError("need at least one coefficient")
    if dilation <= 2 * n_deg:
        raise ValueError(f"dilation must exceed 2N = {2 * n_deg}, got {dilation}")
    if m < 1:
        raise ValueError("m must be >= 1")
    nrm = float(np.linalg.norm(c))
    if nrm == 0.0:
        raise ValueError("zero coefficient vector")
    rescaled = abs(nrm - 1.0) > 1e-12
    c = c / nrm

    # constant-modulus screen on a small dedicated grid
    probe = make_interval_grid(max(64, 4 * n_deg))
    k = np.arange(1, n_deg + 1)
    pvals = np.exp(2j * math.pi * np.outer(probe.points, k)) @ c
    dev = norm_p(probe.function(np.abs(pvals) ** 2 - 1.0), 2)
    if dev <= CONSTANT_MODULUS_TOL:
        raise DegenerateBasisError(
            "dilated polynomial has constant modulus; phase retrieval impossible"
        )

    required = 2 * n_deg * dilation**m
    if grid_n <= required:
        raise ValueError(
            f"grid_n={grid_n} too coarse; need grid_n > {required} for m={m}"
        )
    mu = make_interval_grid(grid_n)
    x = mu.points
    elements = []
    for n in range(1, m + 1):
        vals = np.exp(2j * math.pi * np.outer(dilation**n * x, k)) @ c
        elements.append(mu.function(vals))
    prov = {
        "kind": "lacunary-poly",
        "coeffs": [[float(z.real), float(z.imag)] for z in c],
        "dilation": dilation,
        "m": m,
        "grid_n": grid_n,
        "rescaled": rescaled,
    }
    return _finish_basis(elements, "complex", prov)


def rudin_2d_basis(seq, m: int, grid_n: int) -> OrthoBasis:
    """Complex family r_v(x, y) = sqrt(2) sin(2 pi v y) e^{2 pi i n_v x} on [0,1)^2.

    ``seq`` supplies the strictly increasing x-frequencies n_v.
    """
    seq = [int(s) for s in seq]
    if m < 1:
        raise ValueError("m must be >= 1")
    if len(seq) < m:
        raise ValueError(f"sequence has {len(seq)} terms, need {m}")
    if any(s <= 0 for s in seq) or any(b <= a for a, b in zip(seq, seq[1:])):
        raise ValueError("sequence must be strictly increasing positive integers")
    top = max(seq[m - 1], m)
    if grid_n <= 2 * top:
        raise ValueError(f"grid_n={grid_n} too coarse; need grid_n > {2 * top}")
    mu = make_square_grid(grid_n)
    x, y = mu.points[:, 0], mu.points[:, 1]
    elements = [
        mu.function(
            math.sqrt(2.0) * np.sin(TWO_PI * v * y) * np.exp(2j * math.pi * seq[v - 1] * x)
        )
        for v in range(1, m + 1)
    ]
    prov = {"kind": "rudin-2d", "seq": seq[:m], "m": m, "grid_n": grid_n}
    return _finish_basis(elements, "complex", prov)


def iid_basis(support, m: int, check_support: bool = True, atom_cap: int = 10**6) -> OrthoBasis:
    """Coordinate functions on the m-fold product of a finite distribution.

    The support must have zero mean and unit second absolute moment; for a
    complex-valued support the plain second moment must vanish as well, and
    a support with |value| identically 1 is rejected because all coordinate
    moduli would coincide.  ``check_support=False`` skips the rejection
    rules so that degenerate families can be studied deliberately.
    """
    vals = np.asarray([v for v, _ in support], dtype=np.complex128)
    probs = np.asarray([p for _, p in support], dtype=np.float64)
    mean = complex(np.sum(vals * probs))
    abs2 = float(np.sum(np.abs(vals) ** 2 * probs))
    sq = complex(np.sum(vals**2 * probs))
    is_real = bool(np.all(np.abs(vals.imag) < 1e-15))
    if abs(mean) > 1e-12:
        raise ValueError(f"support mean must vanish, got {mean}")
    if abs(abs2 - 1.0) > 1e-12:
        raise ValueError(f"support second absolute moment must be 1, got {abs2}")
    if check_support:
        if not is_real and abs(sq) > 1e-12:
            raise ValueError(f"complex support needs E r^2 = 0, got {sq}")
        if float(np.sum(probs[np.abs(np.abs(vals) - 1.0) > 1e-12])) <= 0.0:
            raise DegenerateBasisError(
                "support has |value| = 1 almost surely; coordinate moduli are constant"
            )
    mu = make_product_space([(complex(v), float(p)) for v, p in zip(vals, probs)], m, atom_cap)
    elements = [mu.function(mu.points[:, j]) for j in range(m)]
    prov = {
        "kind": "iid",
        "support": [[float(v.real), float(v.imag), float(p)] for v, p in zip(vals, probs)],
        "m": m,
        "checked": check_support,
    }
    return _finish_basis(elements, "real" if is_real else "complex", prov)


def exponential_basis(freqs, grid_n: int) -> OrthoBasis:
    """Unimodular exponentials e^{2 pi i n x} for the given integer frequencies.

    All moduli are identically 1, so the family is flagged as incapable of
    phase retrieval on its span.
    """
    freqs = [int(v) for v in freqs]
    if not freqs:
        raise ValueError("need at least one frequency")
    if len(set(freqs)) != len(freqs):
        raise ValueError("frequencies must be distinct")
    top = max(abs(v) for v in freqs)
    if grid_n <= 2 * top:
        raise ValueError(f"grid_n={grid_n} too coarse; need grid_n > {2 * top}")
    mu = make_interval_grid(grid_n)
    x = mu.points
    elements = [mu.function(np.exp(2j * math.pi * v * x)) for v in freqs]
    prov = {
        "kind": "exponential",
        "freqs": freqs,
        "grid_n": grid_n,
        "modulus_degenerate": True,
    }
    return _finish_basis(elements, "complex", prov)


def complex_span(basis: OrthoBasis) -> OrthoBasis:
    """Reinterpret a real family as spanning over the complex scalars.

    The elements are unchanged; only the coefficient field switches, which
    matters because complex combinations of real elements admit the
    conjugation ambiguity f vs conj(f).
    """
    if basis.field != "real":
        raise ValueError("complex_span applies to real-field bases")
    prov = {"kind": "complex-span", "of": dict(basis.provenance)}
    return OrthoBasis(list(basis.elements), list(basis.s_elements), "complex", prov)


def as_coeffs(a, basis: OrthoBasis) -> np.ndarray:
    """Validate and pad a coefficient vector against a basis."""
    a = np.asarray(a, dtype=np.complex128).ravel()
    if a.size > basis.size:
        raise ValueError(f"{a.size} coefficients for a basis of size {basis.size}")
    if basis.field == "real" and np.any(a.imag != 0.0):
        raise ValueError(
            "real-field basis takes real coefficients; use complex_span for complex ones"
        )
    if a.size < basis.size:
        a = np.concatenate([a, np.zeros(basis.size - a.size, dtype=np.complex128)])
    return a


def synthesize(basis: OrthoBasis, a) -> SampledFunction:
    """Pointwise linear combination sum_k a_k r_k."""
    a = as_coeffs(a, basis)
    return SampledFunction(basis.element_matrix @ a, basis.measure)


@dataclass
class ModulusSquaredExpansion:
    """Symbolic coefficients of |f|^2 over {1, s_k, r_i conj(r_j)}.

    For a real field the off-diagonal pairs are stored once (i < j) and the
    doubling is applied when sampling or taking norms.
    """

    constant_term: float
    diag: np.ndarray
    offdiag: dict[tuple[int, int], complex]
    field: str

    def offdiag_value(self, i: int, j: int) -> complex:
        if i == j:
            raise ValueError("off-diagonal requires i != j")
        if (i, j) in self.offdiag:
            return self.offdiag[(i, j)]
        if (j, i) in self.offdiag:
            return complex(np.conj(self.offdiag[(j, i)]))
        return 0.0

    def sample(self, basis: OrthoBasis) -> SampledFunction:
        """Evaluate the expansion pointwise on the basis grid."""
        vals = np.full(basis.measure.n_atoms, self.constant_term, dtype=np.complex128)
        vals += basis.s_matrix @ self.diag.astype(np.complex128)
        for (i, j), cij in self.offdiag.items():
            term = cij * basis.pair_products[i, j]
            if self.field == "real":
                vals += 2.0 * np.real(term)
            else:
                vals += term
        return SampledFunction(vals, basis.measure)


def expand_modulus_squared(a, basis: OrthoBasis) -> ModulusSquaredExpansion:
    """Expansion coefficients of |sum_k a_k r_k|^2, computed from a alone."""
    a = as_coeffs(a, basis)
    mth = basis.size
    diag = np.abs(a) ** 2
    offdiag: dict[tuple[int, int], complex] = {}
    if basis.field == "real":
        for i in range(mth):
            for j in range(i + 1, mth):
                offdiag[(i, j)] = complex(a[i].real * a[j].real)
    else:
        for i in range(mth):
            for j in range(mth):
                if i != j:
                    offdiag[(i, j)] = complex(a[i] * np.conj(a[j]))
    return ModulusSquaredExpansion(float(diag.sum()), diag, offdiag, basis.field)
