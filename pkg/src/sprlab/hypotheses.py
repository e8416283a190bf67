"""Checks that an orthonormal family supports stable recovery from moduli.

Three ingredients are verified on any :class:`~sprlab.bases.OrthoBasis`:

* orthogonality of the product family {1, s_i, r_j conj(r_k)} (j < k and
  plain products for a real field),
* a uniform fourth-moment bound sup_j ||r_j||_4,
* a positive moment gap  delta = min( min_j ||s_j||_2^2,
  min_{i != j} ||r_i conj(r_j)||_2^2 ),

plus an empirical embedding constant sup ||f||_p / ||f||_2 over random and
structured coefficient probes.  Everything is computed by exact quadrature
on the basis grid, so true zeros come out at roundoff scale and genuine
violations (like the 1/2 overlap of a base-3 sine family) are unmistakable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .bases import OrthoBasis

#: default tolerance below which the product family counts as orthogonal
ORTHOGONALITY_TOL = 1e-8

#: the moment gap must exceed this threshold to count as positive
MOMENT_GAP_TOL = 1e-6

#: full pairwise scans are performed up to this family size
FULL_SCAN_MAX = 64


@dataclass
class OrthogonalityCheck:
    max_violation: float
    witness: Optional[tuple[str, str]]
    passed: bool
    tol: float
    n_inner_products: int


@dataclass
class MomentCheck:
    sup_norm4: float
    sup_norm4_index: int  # 1-based
    moment_gap: float
    moment_gap_witness: str
    passed_fourth_moment: bool
    passed_moment_gap: bool
    subsampled: bool


@dataclass
class EmbeddingEstimate:
    """Empirical sup of ||f||_p / ||f||_2; a lower bound for the true constant."""

    p: float
    constant: float
    trials: int
    argmax_coeffs: np.ndarray


@dataclass
class HypothesisReport:
    field: str
    orthogonality: OrthogonalityCheck
    moments: MomentCheck
    verdict: str  # "satisfied" | "degenerate" | "failed"

    @property
    def moment_gap(self) -> float:
        return self.moments.moment_gap

    def to_dict(self) -> dict:
        o, m = self.orthogonality, self.moments
        return {
            "field": self.field,
            "verdict": self.verdict,
            "orthogonality": {
                "max_violation": o.max_violation,
                "witness": list(o.witness) if o.witness else None,
                "passed": o.passed,
                "tol": o.tol,
                "n_inner_products": o.n_inner_products,
            },
            "moments": {
                "sup_norm4": m.sup_norm4,
                "sup_norm4_index": m.sup_norm4_index,
                "moment_gap": m.moment_gap,
                "moment_gap_witness": m.moment_gap_witness,
                "passed_fourth_moment": m.passed_fourth_moment,
                "passed_moment_gap": m.passed_moment_gap,
                "subsampled": m.subsampled,
            },
        }


def _product_family(basis: OrthoBasis):
    """Columns and labels of {1, s_i, r_j conj(r_k)} on the basis measure."""
    mth = basis.size
    n = basis.measure.n_atoms
    cols = [np.ones(n, dtype=np.complex128)]
    labels = ["1"]
    for k in range(mth):
        cols.append(basis.s_elements[k].values)
        labels.append(f"s[{k + 1}]")
    if basis.field == "real":
        for j in range(mth):
            for k in range(j + 1, mth):
                cols.append(basis.pair_products[j, k])
                labels.append(f"r[{j + 1}]r[{k + 1}]")
    else:
        for j in range(mth):
            for k in range(mth):
                if j != k:
                    cols.append(basis.pair_products[j, k])
                    labels.append(f"r[{j + 1}]conj(r[{k + 1}])")
    return np.column_stack(cols), labels


def check_orthogonality(basis: OrthoBasis, tol: float = ORTHOGONALITY_TOL) -> OrthogonalityCheck:
    """Exact pairwise inner products within the product family."""
    F, labels = _product_family(basis)
    w = basis.measure.weights
    gram = np.abs((F * w[:, None]).conj().T @ F)
    np.fill_diagonal(gram, 0.0)
    worst = float(gram.max())
    witness = None
    if worst > 0.0:
        i, j = np.unravel_index(int(np.argmax(gram)), gram.shape)
        witness = (labels[j], labels[i])
    k = len(labels)
    return OrthogonalityCheck(worst, witness, worst < tol, tol, k * (k - 1) // 2)


def check_moments(
    basis: OrthoBasis,
    gap_tol: float = MOMENT_GAP_TOL,
    full_scan_max: int = FULL_SCAN_MAX,
) -> MomentCheck:
    """Fourth-moment supremum and the moment gap, with argmin witnesses."""
    mth = basis.size
    w = basis.measure.weights
    norms4 = np.array(
        [float(np.sum(np.abs(r.values) ** 4 * w)) ** 0.25 for r in basis.elements]
    )
    sup4 = float(norms4.max())
    sup4_idx = int(np.argmax(norms4)) + 1

    s_norms = basis.s_norms_sq
    gap = float(s_norms.min())
    witness = f"s[{int(np.argmin(s_norms)) + 1}]"

    subsampled = mth > full_scan_max
    if subsampled:
        pairs = [(i, j) for i in range(mth) for j in range(i + 1, min(i + 5, mth))]
    else:
        pairs = [(i, j) for i in range(mth) for j in range(i + 1, mth)]
    for i, j in pairs:
        v = float(basis.pair_norms_sq[i, j])
        if v < gap:
            gap = v
            witness = f"pair({i + 1},{j + 1})"
    return MomentCheck(
        sup_norm4=sup4,
        sup_norm4_index=sup4_idx,
        moment_gap=gap,
        moment_gap_witness=witness,
        passed_fourth_moment=np.isfinite(sup4),
        passed_moment_gap=gap > gap_tol,
        subsampled=subsampled,
    )


def s_norm_sq_via_l4(basis: OrthoBasis) -> np.ndarray:
    """||s_j||_2^2 through the identity ||s_j||_2^2 = ||r_j||_4^4 - 1."""
    w = basis.measure.weights
    return np.array(
        [float(np.sum(np.abs(r.values) ** 4 * w)) - 1.0 for r in basis.elements]
    )


def _random_unit_coeffs(mth: int, field: str, seed, trial: int) -> np.ndarray:
    rng = np.random.default_rng((seed, trial))
    z = rng.standard_normal(mth) + 1j * rng.standard_normal(mth)
    if field == "real":
        z = z.real.astype(np.complex128)
    n = np.linalg.norm(z)
    while n == 0.0:
        z = rng.standard_normal(mth) + 1j * rng.standard_normal(mth)
        if field == "real":
            z = z.real.astype(np.complex128)
        n = np.linalg.norm(z)
    return z / n


def _probe_coeffs(mth: int, field: str) -> list[np.ndarray]:
    probes = []
    eye = np.eye(mth, dtype=np.complex128)
    probes.extend(eye)
    probes.append(np.ones(mth, dtype=np.complex128) / np.sqrt(mth))
    pair_cap = 12
    for i in range(min(mth, pair_cap)):
        for j in range(i + 1, min(mth, pair_cap)):
            probes.append((eye[i] + eye[j]) / np.sqrt(2.0))
    return probes


def embedding_constant(
    basis: OrthoBasis, p: float, trials: int, seed: int, chunk: int = 512
) -> EmbeddingEstimate:
    """Empirical sup of ||f||_p / ||f||_2 over probes and random unit vectors.

    Each trial draws from its own (seed, trial) stream, so the estimate is
    deterministic and monotone in the number of trials.
    """
    if trials < 0:
        raise ValueError("trials must be >= 0")
    mth = basis.size
    w = basis.measure.weights
    R = basis.element_matrix
    best = -np.inf
    best_coeffs = None
    batch: list[np.ndarray] = list(_probe_coeffs(mth, basis.field))
    t = 0
    while batch:
        A = np.column_stack(batch)
        F = R @ A
        absF = np.abs(F)
        n2 = np.sqrt(w @ absF**2)
        np_ = (w @ absF**p) ** (1.0 / p)
        ratios = np_ / n2
        k = int(np.argmax(ratios))
        if ratios[k] > best:
            best = float(ratios[k])
            best_coeffs = batch[k]
        if t >= trials:
            break
        nxt = min(chunk, trials - t)
        batch = [_random_unit_coeffs(mth, basis.field, seed, t + i) for i in range(nxt)]
        t += nxt
    return EmbeddingEstimate(p, best, trials, best_coeffs)


def full_report(
    basis: OrthoBasis,
    orth_tol: float = ORTHOGONALITY_TOL,
    gap_tol: float = MOMENT_GAP_TOL,
) -> HypothesisReport:
    """Bundle of all checks with a single verdict.

    "degenerate" means the moduli themselves carry no information (every
    ||s_j|| vanishes), as for unimodular exponentials or fair signs;
    "failed" covers genuine orthogonality or gap violations.
    """
    orth = check_orthogonality(basis, orth_tol)
    mom = check_moments(basis, gap_tol)
    all_s_flat = float(basis.s_norms_sq.max()) <= gap_tol
    if basis.provenance.get("modulus_degenerate") or (orth.passed and all_s_flat):
        verdict = "degenerate"
    elif orth.passed and mom.passed_fourth_moment and mom.passed_moment_gap:
        verdict = "satisfied"
    else:
        verdict = "failed"
    return HypothesisReport(basis.field, orth, mom, verdict)
