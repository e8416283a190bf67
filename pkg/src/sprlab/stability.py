"""Empirical stability constants, per-instance identities, and counterexamples.

The central quantity is the ratio

    min_{|z|=1} ||f - z g||_p  /  || |f| - |g| ||_p

over pairs f, g in the span of a basis.  A finite supremum is the stability
constant of recovery from moduli; a pair with vanishing denominator and
large numerator is a violation witness (recovery impossible).  Suprema are
estimated by seeded Monte Carlo over unit coefficient pairs plus structured
probes, optionally sharpened by multiplicative hill climbing.

Alongside the ratio machinery, ``identity_residuals`` evaluates both sides
of the exact algebraic identities tying || |f|^2 - |g|^2 ||_2^2 to the
coefficients, and ``stability_bound_check`` verifies the quadratic chain
||f - zg||_2^2 <= 16 C^2 / delta * || |f| - |g| ||_4^2 with an empirical
embedding constant C.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .bases import OrthoBasis, as_coeffs, synthesize
from .hypotheses import check_moments, embedding_constant
from .measures import (
    TWO_PI,
    SampledFunction,
    inner,
    min_phase_dist,
    norm_p,
)

#: denominators below this multiple of the pair scale count as zero
DEN_FLOOR_RTOL = 1e-12

#: numerators above this multiple of the pair scale witness a violation
NUM_FLOOR_RTOL = 1e-8

#: hill-climbing step schedule
CLIMB_STEP0 = 0.5
CLIMB_STEP_FLOOR = 1e-4


@dataclass
class PhaseDecomposition:
    """f = r e^{i theta} g + h with r >= 0 and h orthogonal to g."""

    r: float
    theta: float
    h: SampledFunction


@dataclass
class RatioOutcome:
    ratio: float
    violation: bool
    num: float
    den: float


@dataclass
class Violation:
    a: np.ndarray
    b: np.ndarray
    num: float
    den: float
    probe: str


@dataclass
class StabilityReport:
    p: float
    sup_ratio: float
    argmax_pair: tuple[np.ndarray, np.ndarray] | None
    trials: int
    violations: list[Violation] = field(default_factory=list)
    gamma_fit: float | None = None
    theoretical_bound: float | None = None

    @property
    def is_spr(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        pair = None
        if self.argmax_pair is not None:
            pair = [
                [[float(z.real), float(z.imag)] for z in v] for v in self.argmax_pair
            ]
        return {
            "p": self.p,
            "sup_ratio": self.sup_ratio,
            "trials": self.trials,
            "argmax_pair": pair,
            "n_violations": len(self.violations),
            "violations": [
                {
                    "probe": v.probe,
                    "num": v.num,
                    "den": v.den,
                    "a": [[float(z.real), float(z.imag)] for z in v.a],
                    "b": [[float(z.real), float(z.imag)] for z in v.b],
                }
                for v in self.violations[:8]
            ],
            "gamma_fit": self.gamma_fit,
            "theoretical_bound": self.theoretical_bound,
        }


@dataclass
class HolderFit:
    gamma: float
    intercept: float
    denominator_decades: float
    n_points: int


@dataclass
class IdentityReport:
    residual_expansion: float
    residual_coefficient_algebra: float
    gap_margin: float
    gap_holds: bool
    residual_fourier_side: float | None
    delta_used: float


@dataclass
class BoundCheck:
    lhs: float
    rhs: float
    margin: float
    c_used: float
    delta_used: float
    anomaly: bool


def phase_decompose(f: SampledFunction, g: SampledFunction) -> PhaseDecomposition:
    """Split f into its unimodular-phase multiple of g plus an orthogonal rest."""
    g2 = norm_p(g, 2) ** 2
    if g2 == 0.0:
        raise ValueError("cannot decompose against the zero function")
    ip = inner(f, g) / g2
    r = abs(ip)
    theta = math.atan2(ip.imag, ip.real) % TWO_PI if r > 0 else 0.0
    h = SampledFunction(f.values - ip * g.values, f.measure)
    return PhaseDecomposition(r, theta, h)


# ---------------------------------------------------------------------------
# batched ratio evaluation
# ---------------------------------------------------------------------------


def _batch_num_den(basis: OrthoBasis, A: np.ndarray, B: np.ndarray, p: float):
    """Numerators, denominators, and p-norm scales for columns of (A, B)."""
    w = basis.measure.weights
    R = basis.element_matrix
    F = R @ A
    G = R @ B
    absF = np.abs(F)
    absG = np.abs(G)
    dens = (w @ np.abs(absF - absG) ** p) ** (1.0 / p)
    scales = (w @ absF**p) ** (1.0 / p) + (w @ absG**p) ** (1.0 / p)

    if basis.field == "real":
        d_minus = (w @ np.abs(F - G) ** p) ** (1.0 / p)
        d_plus = (w @ np.abs(F + G) ** p) ** (1.0 / p)
        nums = np.minimum(d_minus, d_plus)
        return nums, dens, scales

    if p == 2:
        ip = (F * np.conj(G) * w[:, None]).sum(axis=0)
        z = np.where(np.abs(ip) > 0, ip / np.where(np.abs(ip) > 0, np.abs(ip), 1.0), 1.0)
        D = F - z[None, :] * G
        nums = np.sqrt(w @ np.abs(D) ** 2)
        return nums, dens, scales

    if p == 4:
        u = absF**2 + absG**2
        c = G * np.conj(F)
        cr, ci = c.real, c.imag
        A0 = w @ u**2 + 2.0 * (w @ (cr**2 + ci**2))
        B0 = -4.0 * (w @ (u * cr))
        C0 = 4.0 * (w @ (u * ci))
        D0 = 2.0 * (w @ (cr**2 - ci**2))
        E0 = -4.0 * (w @ (cr * ci))
        thetas = np.arange(64) * (TWO_PI / 64)
        obj = (
            A0[None, :]
            + np.outer(np.cos(thetas), B0)
            + np.outer(np.sin(thetas), C0)
            + np.outer(np.cos(2 * thetas), D0)
            + np.outer(np.sin(2 * thetas), E0)
        )
        k = np.argmin(obj, axis=0)
        span = TWO_PI / 64
        lo = thetas[k] - span
        hi = thetas[k] + span
        golden = (math.sqrt(5.0) - 1.0) / 2.0

        def poly(t):
            return (
                A0
                + B0 * np.cos(t)
                + C0 * np.sin(t)
                + D0 * np.cos(2 * t)
                + E0 * np.sin(2 * t)
            )

        for _ in range(60):
            x1 = hi - golden * (hi - lo)
            x2 = lo + golden * (hi - lo)
            take = poly(x1) <= poly(x2)
            hi = np.where(take, x2, hi)
            lo = np.where(take, lo, x1)
        theta_star = 0.5 * (lo + hi)
        D = F - np.exp(1j * theta_star)[None, :] * G
        nums = (w @ np.abs(D) ** 4) ** 0.25
        # columns whose minimum is tiny need the pointwise objective: the
        # polynomial locator loses the quartic-flat minimum in roundoff
        needy = nums < 1e-3 * np.maximum(scales, 1e-300)
        for t in np.nonzero(needy)[0]:
            fv = SampledFunction(F[:, t], basis.measure)
            gv = SampledFunction(G[:, t], basis.measure)
            al = min_phase_dist(fv, gv, 4, "complex")
            nums[t] = al.distance
        return nums, dens, scales

    nums = np.empty(A.shape[1])
    for t in range(A.shape[1]):
        fv = SampledFunction(F[:, t], basis.measure)
        gv = SampledFunction(G[:, t], basis.measure)
        nums[t] = min_phase_dist(fv, gv, p, basis.field).distance
    return nums, dens, scales


def spr_ratio(basis: OrthoBasis, a, b, p: float = 4.0) -> RatioOutcome:
    """Stability ratio of one coefficient pair, or a violation verdict."""
    a = as_coeffs(a, basis)
    b = as_coeffs(b, basis)
    if np.all(a == 0) and np.all(b == 0):
        raise ValueError("both coefficient vectors vanish")
    nums, dens, scales = _batch_num_den(basis, a[:, None], b[:, None], p)
    num, den, scale = float(nums[0]), float(dens[0]), float(scales[0])
    if den <= DEN_FLOOR_RTOL * scale:
        if num > NUM_FLOOR_RTOL * scale:
            return RatioOutcome(math.inf, True, num, den)
        return RatioOutcome(0.0, False, num, den)
    return RatioOutcome(num / den, False, num, den)


def _probe_pairs(basis: OrthoBasis) -> list[tuple[str, np.ndarray, np.ndarray]]:
    mth = basis.size
    eye = np.eye(mth, dtype=np.complex128)
    flat = np.ones(mth, dtype=np.complex128) / math.sqrt(mth)
    probes = []
    for k in range(mth):
        probes.append((f"near-aligned[{k + 1}]", flat + 1e-3 * eye[k], flat.copy()))
    if basis.field == "complex":
        alt = np.array([1j if k % 2 else 1.0 for k in range(mth)]) / math.sqrt(mth)
        probes.append(("conjugate", alt, np.conj(alt)))
    cap = min(mth, 12)
    for i in range(cap):
        for j in range(i + 1, cap):
            probes.append((f"disjoint[{i + 1},{j + 1}]", eye[i].copy(), eye[j].copy()))
    return probes


def _random_pair(mth: int, field_tag: str, seed, trial: int):
    rng = np.random.default_rng((seed, trial))
    out = []
    for _ in range(2):
        z = rng.standard_normal(mth) + 1j * rng.standard_normal(mth)
        if field_tag == "real":
            z = z.real.astype(np.complex128)
        z /= np.linalg.norm(z)
        out.append(z)
    return out[0], out[1]


def monte_carlo_spr(
    basis: OrthoBasis,
    trials: int,
    p: float = 4.0,
    seed: int = 0,
    threads: int = 1,
    chunk: int = 512,
) -> StabilityReport:
    """Supremum of the stability ratio over probes and seeded random pairs.

    Each trial draws its own (seed, trial) stream, so the report does not
    depend on chunking or thread scheduling.
    """
    if trials < 0:
        raise ValueError("trials must be >= 0")
    mth = basis.size
    labelled: list[tuple[str, np.ndarray, np.ndarray]] = _probe_pairs(basis)

    sup = 0.0
    argmax = None
    violations: list[Violation] = []

    def evaluate(batch):
        A = np.column_stack([a for _, a, _ in batch])
        B = np.column_stack([b for _, _, b in batch])
        return _batch_num_den(basis, A, B, p)

    def accumulate(batch, nums, dens, scales):
        nonlocal sup, argmax
        for t, (label, a, b) in enumerate(batch):
            num, den, scale = float(nums[t]), float(dens[t]), float(scales[t])
            if den <= DEN_FLOOR_RTOL * scale:
                if num > NUM_FLOOR_RTOL * scale:
                    violations.append(Violation(a, b, num, den, label))
                continue
            r = num / den
            if r > sup:
                sup = r
                argmax = (a, b)

    accumulate(labelled, *evaluate(labelled))
    batches = [
        [
            (f"random[{i}]", *_random_pair(mth, basis.field, seed, i))
            for i in range(lo, min(lo + chunk, trials))
        ]
        for lo in range(0, trials, chunk)
    ]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            for batch, result in zip(batches, ex.map(evaluate, batches)):
                accumulate(batch, *result)
    else:
        for batch in batches:
            accumulate(batch, *evaluate(batch))
    return StabilityReport(p, sup, argmax, trials, violations)


def _pair_ratio_value(basis: OrthoBasis, a, b, p: float) -> tuple[float, RatioOutcome]:
    out = spr_ratio(basis, a, b, p)
    if out.violation:
        return math.inf, out
    return out.ratio, out


def adversarial_spr(
    basis: OrthoBasis,
    restarts: int,
    steps: int,
    p: float = 4.0,
    seed: int = 0,
) -> StabilityReport:
    """Hill-climb the stability ratio with multiplicative coordinate moves.

    Starts from the same probe pairs and seeded random pairs the Monte Carlo
    sampler would use, so its supremum dominates the Monte Carlo estimate on
    the same seed.  Step size starts at 0.5, halves on a sweep without
    improvement, and stops at 1e-4.
    """
    if restarts < 1 or steps < 1:
        raise ValueError("restarts and steps must be >= 1")
    mth = basis.size
    starts = _probe_pairs(basis)
    starts += [
        (f"random[{t}]", *_random_pair(mth, basis.field, seed, t)) for t in range(restarts)
    ]

    sup = 0.0
    argmax = None
    violations: list[Violation] = []

    for label, a0, b0 in starts:
        a = a0.copy()
        b = b0.copy()
        val, out = _pair_ratio_value(basis, a, b, p)
        if out.violation:
            violations.append(Violation(a, b, out.num, out.den, label))
            continue
        step = CLIMB_STEP0
        sweeps = 0
        while sweeps < steps and step >= CLIMB_STEP_FLOOR:
            improved = False
            for vec in (a, b):
                for k in range(mth):
                    factors = [1.0 + step, 1.0 - step]
                    if basis.field == "complex":
                        factors += [complex(math.cos(step), math.sin(step)),
                                    complex(math.cos(step), -math.sin(step))]
                    for fac in factors:
                        old = vec[k]
                        vec[k] = old * fac
                        cand, out = _pair_ratio_value(basis, a, b, p)
                        if out.violation:
                            violations.append(
                                Violation(a.copy(), b.copy(), out.num, out.den, label)
                            )
                            vec[k] = old
                            cand = val
                        if cand > val:
                            val = cand
                            improved = True
                        else:
                            vec[k] = old
            if not improved:
                step *= 0.5
            sweeps += 1
        if val > sup and np.isfinite(val):
            sup = val
            argmax = (a, b)
    return StabilityReport(p, sup, argmax, restarts, violations)


def holder_exponent_fit(
    basis: OrthoBasis, trials: int, p: float = 4.0, seed: int = 0
) -> HolderFit:
    """Log-log slope of numerator against denominator along shrinking pairs.

    Pairs f = g + t * d are generated with t log-spaced over six decades;
    the fit is refused unless the observed denominators span at least four.
    """
    if trials < 10:
        raise ValueError("need at least 10 trials for a slope")
    mth = basis.size
    log_num = []
    log_den = []
    for t in range(trials):
        b_vec, d_vec = _random_pair(mth, basis.field, seed, t)
        t_val = 10.0 ** (-6.0 * t / (trials - 1))
        a_vec = b_vec + t_val * d_vec
        out = spr_ratio(basis, a_vec, b_vec, p)
        if out.num > 0 and out.den > 0 and np.isfinite(out.ratio):
            log_num.append(math.log(out.num))
            log_den.append(math.log(out.den))
    if len(log_num) < 10:
        raise RuntimeError("too few valid pairs for a slope fit")
    decades = (max(log_den) - min(log_den)) / math.log(10.0)
    if decades < 4.0:
        raise RuntimeError(
            f"denominators span only {decades:.2f} decades; need >= 4 for a fit"
        )
    gamma, intercept = np.polyfit(log_den, log_num, 1)
    return HolderFit(float(gamma), float(intercept), decades, len(log_num))


def interpolation_theta(q: float) -> float:
    """Exponent theta with 1/4 = theta/2 + (1 - theta)/q."""
    if q <= 4:
        raise ValueError("q must exceed 4")
    return (0.25 - 1.0 / q) / (0.5 - 1.0 / q)


def modulus_holder_gamma(q: float) -> float:
    """Exponent gamma = (q - 4) / (2q - 4) for fixed-modulus exponential sets."""
    if q <= 4:
        raise ValueError("q must exceed 4")
    return (q - 4.0) / (2.0 * q - 4.0)


# ---------------------------------------------------------------------------
# exact identities and the quadratic bound
# ---------------------------------------------------------------------------


def _cross_term_batch(basis: OrthoBasis, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """sum_{i != j} |a_i conj(a_j) - b_i conj(b_j)|^2 ||r_i conj(r_j)||_2^2 per column."""
    Pa = np.einsum("it,jt->ijt", A, np.conj(A))
    Pb = np.einsum("it,jt->ijt", B, np.conj(B))
    wts = basis.pair_norms_sq.copy()
    np.fill_diagonal(wts, 0.0)
    out = np.einsum("ijt,ij->t", np.abs(Pa - Pb) ** 2, wts)
    if basis.field == "real":
        out = 2.0 * out  # folded products double the off-diagonal contribution
    return np.real(out)


def identity_residuals_batch(
    basis: OrthoBasis,
    A: np.ndarray,
    B: np.ndarray,
    delta: float | None = None,
    chunk: int = 256,
):
    """Vectorized identity residuals over columns of (A, B).

    Returns (residual_expansion, residual_coefficient_algebra, gap_margin)
    arrays; margins are relative to the left-hand side scale.
    """
    if delta is None:
        delta = check_moments(basis).moment_gap
    w = basis.measure.weights
    R = basis.element_matrix
    T = A.shape[1]
    res_i = np.empty(T)
    res_ii = np.empty(T)
    margin = np.empty(T)
    s_norms = basis.s_norms_sq
    # cap the working set at a few million sampled values per block
    chunk = max(1, min(chunk, 4_000_000 // max(1, basis.measure.n_atoms)))
    for lo in range(0, T, chunk):
        hi = min(lo + chunk, T)
        Ac, Bc = A[:, lo:hi], B[:, lo:hi]
        F = R @ Ac
        G = R @ Bc
        q = np.abs(F) ** 2 - np.abs(G) ** 2
        lhs = w @ q**2
        na2 = np.sum(np.abs(Ac) ** 2, axis=0)
        nb2 = np.sum(np.abs(Bc) ** 2, axis=0)
        diag_diff = np.abs(Ac) ** 2 - np.abs(Bc) ** 2
        diag_term = s_norms @ diag_diff**2
        cross = _cross_term_batch(basis, Ac, Bc)
        rhs = diag_term + (na2 - nb2) ** 2 + cross
        scale = np.maximum(np.maximum(lhs, rhs), 1e-300)
        res_i[lo:hi] = np.abs(lhs - rhs) / scale

        ipab = np.sum(Ac * np.conj(Bc), axis=0)
        lhs2 = np.einsum(
            "ijt->t",
            np.abs(
                np.einsum("it,jt->ijt", Ac, np.conj(Ac))
                - np.einsum("it,jt->ijt", Bc, np.conj(Bc))
            )
            ** 2,
        ) - np.sum(diag_diff**2, axis=0)
        rhs2 = na2**2 + nb2**2 - 2.0 * np.abs(ipab) ** 2 - np.sum(diag_diff**2, axis=0)
        scale2 = np.maximum(np.maximum(np.abs(lhs2), np.abs(rhs2)), 1e-300)
        res_ii[lo:hi] = np.abs(lhs2 - rhs2) / scale2

        gap_rhs = delta * (na2 * nb2 - np.abs(ipab) ** 2) + (na2 - nb2) ** 2
        margin[lo:hi] = (lhs - gap_rhs) / np.maximum(np.maximum(lhs, gap_rhs), 1e-300)
    return res_i, res_ii, margin


def identity_residuals(basis: OrthoBasis, a, b, delta: float | None = None) -> IdentityReport:
    """Residuals of the exact expansion identities for one coefficient pair.

    For a basis of unimodular exponentials the Fourier-side identity
    relating norm differences to coefficient moduli is evaluated as well.
    """
    a = as_coeffs(a, basis)
    b = as_coeffs(b, basis)
    if delta is None:
        delta = check_moments(basis).moment_gap
    res_i, res_ii, margin = identity_residuals_batch(
        basis, a[:, None], b[:, None], delta
    )
    gap_holds = bool(margin[0] >= -1e-9)

    res_iv = None
    if basis.provenance.get("kind") == "exponential":
        w = basis.measure.weights
        f = synthesize(basis, a)
        g = synthesize(basis, b)
        q = np.abs(f.values) ** 2 - np.abs(g.values) ** 2
        na2 = float(np.sum(np.abs(a) ** 2))
        nb2 = float(np.sum(np.abs(b) ** 2))
        ip = complex(np.sum(a * np.conj(b)))
        lhs4 = (na2 - nb2) ** 2 + (na2**2 + nb2**2 - 2.0 * abs(ip) ** 2)
        rhs4 = float(w @ q**2) + float(np.sum((np.abs(a) ** 2 - np.abs(b) ** 2) ** 2))
        res_iv = abs(lhs4 - rhs4) / max(abs(lhs4), abs(rhs4), 1e-300)
    return IdentityReport(
        float(res_i[0]), float(res_ii[0]), float(margin[0]), gap_holds, res_iv, delta
    )


def stability_bound_check(
    basis: OrthoBasis,
    a,
    b,
    p: float = 4.0,
    embedding_c: float | None = None,
    delta: float | None = None,
) -> BoundCheck:
    """Check ||f - zg||_2^2 <= 16 C^2 / delta * || |f| - |g| ||_4^2.

    The pair is normalized so that ||f||_2 <= ||g||_2 = 1.  C is the given
    empirical embedding constant, widened to cover this very pair, and
    delta is clamped to 1 as the derivation requires.
    """
    if p != 4.0:
        raise ValueError("the quadratic chain is an L4 statement")
    a = as_coeffs(a, basis)
    b = as_coeffs(b, basis)
    if delta is None:
        delta = check_moments(basis).moment_gap
    if delta <= 0:
        raise ValueError("bound requires a positive moment gap")
    if embedding_c is None:
        embedding_c = embedding_constant(basis, 4, 64, seed=0).constant

    na = float(np.linalg.norm(a))
    nb = float(np.linalg.norm(b))
    if nb == 0.0 and na == 0.0:
        return BoundCheck(0.0, 0.0, 0.0, embedding_c, min(delta, 1.0), False)
    if na > nb:
        a, b = b, a
        na, nb = nb, na
    a = a / nb
    b = b / nb
    f = synthesize(basis, a)
    g = synthesize(basis, b)

    c_used = float(embedding_c)
    for fn in (f, g):
        n2 = norm_p(fn, 2)
        if n2 > 0:
            c_used = max(c_used, norm_p(fn, 4) / n2)
    delta_used = min(float(delta), 1.0)

    dec = phase_decompose(f, g)
    z = complex(math.cos(dec.theta), math.sin(dec.theta))
    lhs = norm_p(SampledFunction(f.values - z * g.values, f.measure), 2) ** 2
    den4 = norm_p(
        SampledFunction((np.abs(f.values) - np.abs(g.values)).astype(np.complex128), f.measure),
        4,
    )
    rhs = 16.0 * c_used**2 / delta_used * den4**2
    margin = rhs - lhs
    anomaly = margin < -1e-9 * max(rhs, lhs, 1.0)
    return BoundCheck(lhs, rhs, margin, c_used, delta_used, anomaly)
