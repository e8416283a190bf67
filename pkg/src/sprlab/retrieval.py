"""Recovery of a function from its modulus, up to a global unimodular phase.

Squaring the modulus and projecting onto the orthogonal product family
{1, s_k, r_j conj(r_k)} exposes every |a_k|^2 (diagonal reads) and every
product a_j conj(a_n0) against a chosen anchor index n0 (cross reads).
Dividing by the anchor magnitude yields the coefficients of the unique
representative whose anchor coefficient is real and nonnegative.

The anchor is the largest diagonal read, which maximizes the divisor; on a
real field signs come from the cross reads, with a secondary anchor pass
and residual arbitration when a read is too weak to trust.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .bases import DegenerateBasisError, OrthoBasis, synthesize
from .measures import SampledFunction, norm_p, same_measure

#: default coefficient scale below which the input counts as the zero function;
#: tol^2 must sit above the quadrature noise floor of the diagonal reads
ZERO_TOL = 1e-6

#: residual above this multiple of ||modulus||_2 flags out-of-span input
MISMATCH_RTOL = 1e-6

#: cross reads weaker than this fraction of sqrt(d_j d_anchor) are ambiguous
WEAK_READ_FRACTION = 0.1


@dataclass
class RecoveryResult:
    coeffs: np.ndarray          # anchor coefficient real and >= 0
    anchor_index: int           # 0-based
    residual: float             # || |reconstruction| - modulus ||_2
    diagnostics: float          # worst gap between diagonal and cross magnitudes
    flags: list[str] = field(default_factory=list)
    alternates: list[np.ndarray] = field(default_factory=list)


def _validate_modulus(basis: OrthoBasis, modulus: SampledFunction) -> np.ndarray:
    if not same_measure(modulus.measure, basis.measure):
        raise ValueError("modulus lives on a different measure than the basis")
    vals = modulus.values
    if np.max(np.abs(vals.imag)) > 1e-12:
        raise ValueError("modulus must be real-valued")
    re = vals.real
    if re.min() < -1e-12:
        raise ValueError(f"modulus has negative values down to {re.min():.3e}")
    return np.clip(re, 0.0, None)


def recover_coefficients(
    basis: OrthoBasis, modulus: SampledFunction, tol: float = ZERO_TOL
) -> RecoveryResult:
    """Read the coefficients of f with |f| = modulus, phase-normalized at the anchor."""
    m_vals = _validate_modulus(basis, modulus)
    s_norms = basis.s_norms_sq
    if float(s_norms.min()) <= 1e-14:
        raise DegenerateBasisError(
            "basis has an element of constant modulus; diagonal reads are undefined"
        )
    w = basis.measure.weights
    q = m_vals**2
    qw = q * w
    mth = basis.size

    d = np.real(qw @ np.conj(basis.s_matrix)) / s_norms
    d = np.clip(d, 0.0, None)
    anchor = int(np.argmax(d))
    flags: list[str] = []

    if d[anchor] <= tol * tol:
        coeffs = np.zeros(mth, dtype=np.complex128)
        residual = float(np.sqrt(np.sum(q * w)))
        flags.append("zero-function")
        if residual > tol:
            # sizeable modulus with no diagonal signal: outside the span
            flags.append("model-mismatch")
        return RecoveryResult(coeffs, anchor, residual, 0.0, flags)

    if d[anchor] < 10.0 * tol * tol:
        flags.append("weak-anchor")

    def cross_reads(n0: int) -> np.ndarray:
        rows = basis.pair_products[:, n0, :]
        p = qw @ np.conj(rows.T)
        scale = basis.pair_norms_sq[:, n0].copy()
        scale[n0] = 1.0
        p = p / scale
        if basis.field == "real":
            p = p / 2.0  # folded convention: |f|^2 carries 2 a_j a_n0 r_j r_n0
        return p

    p0 = cross_reads(anchor)
    root_anchor = float(np.sqrt(d[anchor]))
    coeffs = np.zeros(mth, dtype=np.complex128)
    coeffs[anchor] = root_anchor
    alternates: list[np.ndarray] = []

    if basis.field == "complex":
        for j in range(mth):
            if j != anchor:
                coeffs[j] = p0[j] / root_anchor
    else:
        mags = np.sqrt(d)
        ambiguous: list[int] = []
        for j in range(mth):
            if j == anchor:
                continue
            if d[j] <= tol * tol * max(1.0, d[anchor]):
                coeffs[j] = 0.0  # diagonal read at quadrature-noise level
            elif abs(p0[j]) >= WEAK_READ_FRACTION * float(np.sqrt(d[j] * d[anchor])):
                coeffs[j] = np.sign(p0[j].real) * mags[j]
            else:
                ambiguous.append(j)
        if ambiguous:
            resolved = [
                j
                for j in range(mth)
                if j != anchor and j not in ambiguous and d[j] > tol * tol
            ]
            second = max(resolved, key=lambda j: d[j]) if resolved else None
            p1 = cross_reads(second) if second is not None else None
            unresolved: list[int] = []
            for j in ambiguous:
                done = False
                if second is not None:
                    expected = float(np.sqrt(d[j] * d[second]))
                    if abs(p1[j]) >= WEAK_READ_FRACTION * expected:
                        sgn = np.sign(p1[j].real) * np.sign(coeffs[second].real)
                        coeffs[j] = sgn * mags[j]
                        done = True
                if not done:
                    unresolved.append(j)
            # residual arbitration, one coordinate at a time
            for j in unresolved:
                trial_plus = coeffs.copy()
                trial_plus[j] = mags[j]
                trial_minus = coeffs.copy()
                trial_minus[j] = -mags[j]
                rp = norm_p(
                    basis.measure.function(
                        np.abs(synthesize(basis, trial_plus).values) - m_vals
                    ),
                    2,
                )
                rm = norm_p(
                    basis.measure.function(
                        np.abs(synthesize(basis, trial_minus).values) - m_vals
                    ),
                    2,
                )
                if abs(rp - rm) <= 1e-12 * (rp + rm + 1e-300):
                    coeffs = trial_plus
                    alternates.append(trial_minus)
                    if "sign-ambiguity" not in flags:
                        flags.append("sign-ambiguity")
                else:
                    coeffs = trial_plus if rp < rm else trial_minus

    others = [j for j in range(mth) if j != anchor]
    diagnostics = 0.0
    if others:
        cross_mag_sq = np.abs(p0[others]) ** 2 / d[anchor]
        diagnostics = float(np.max(np.abs(d[others] - cross_mag_sq)))

    recon = synthesize(basis, coeffs)
    residual = float(
        norm_p(basis.measure.function(np.abs(recon.values) - m_vals), 2)
    )
    if residual > MISMATCH_RTOL * norm_p(basis.measure.function(m_vals), 2):
        flags.append("model-mismatch")
    return RecoveryResult(coeffs, anchor, residual, diagnostics, flags, alternates)


def reconstruct(
    basis: OrthoBasis, modulus: SampledFunction, tol: float = ZERO_TOL
) -> SampledFunction:
    """Synthesize the phase-normalized representative recovered from a modulus."""
    return synthesize(basis, recover_coefficients(basis, modulus, tol).coeffs)
