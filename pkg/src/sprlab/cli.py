"""Command-line front end: reproducible experiments from flags or a JSON config.

Every invocation is normalized into an :class:`ExperimentConfig` and executed
by :func:`run`, which writes a deterministic JSON report (same config and
seed give byte-identical output).  Exit codes: 0 success (including expected
negative results), 2 invalid configuration, 3 degenerate basis, 4 a verdict
that contradicts the expectation of the requested experiment.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .bases import (
    DegenerateBasisError,
    OrthoBasis,
    complex_span,
    exponential_basis,
    iid_basis,
    lacunary_poly_basis,
    lacunary_sine_basis,
    rudin_2d_basis,
)
from .hypotheses import embedding_constant, full_report
from .retrieval import recover_coefficients
from .serialize import function_from_csv, load_basis, save_basis, write_report
from .sidon import greedy_bh, singer_difference_set, verify_bh
from .stability import (
    _random_pair,
    adversarial_spr,
    holder_exponent_fit,
    identity_residuals,
    identity_residuals_batch,
    interpolation_theta,
    modulus_holder_gamma,
    monte_carlo_spr,
    spr_ratio,
    stability_bound_check,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DEGENERATE = 3
EXIT_VERDICT = 4

REPRODUCE_TARGETS = [
    "example1",
    "example2",
    "example3",
    "example4",
    "example5",
    "example6",
    "prop1",
    "prop1B",
    "cor-L6",
    "counterexample-rademacher",
    "counterexample-base3",
    "counterexample-complex-conjugate",
]

DETERMINISTIC_TARGETS = {
    "counterexample-rademacher",
    "counterexample-base3",
    "counterexample-complex-conjugate",
}


class ConfigError(ValueError):
    """The experiment configuration is malformed."""


class VerdictMismatchError(RuntimeError):
    """The experiment ran but contradicted its expected verdict."""


@dataclass
class ExperimentConfig:
    command: str
    params: dict
    seed: int | None = None
    out: str | None = None


_PARAM_TYPES = {
    "basis": {
        "kind": str,
        "base": int,
        "m": int,
        "grid": int,
        "coeffs": list,
        "dilation": int,
        "seq": list,
        "support": list,
        "freqs": list,
    },
    "check": {"basis": str},
    "sidon": {"h": int, "count": int, "method": str, "limit": int, "q": int},
    "retrieve": {"basis": str, "modulus": str, "tol": float},
    "stability": {
        "basis": str,
        "p": float,
        "trials": int,
        "adversarial": str,
        "threads": int,
    },
    "identity": {"basis": str, "pairs": int},
    "reproduce-example": {
        "target": str,
        "m": int,
        "grid": int,
        "trials": int,
        "seq": list,
    },
}

_REQUIRED = {
    "basis": {"kind"},
    "check": {"basis"},
    "sidon": set(),
    "retrieve": {"basis", "modulus"},
    "stability": {"basis"},
    "identity": {"basis"},
    "reproduce-example": {"target"},
}

#: commands whose pipelines draw random numbers and therefore need a seed
_RANDOMIZED = {"stability", "identity"}


def validate_config(doc: dict) -> ExperimentConfig:
    """Strictly validate a config document (unknown fields are rejected)."""
    if not isinstance(doc, dict):
        raise ConfigError("config must be a JSON object")
    allowed_top = {"command", "params", "seed", "out"}
    unknown = set(doc) - allowed_top
    if unknown:
        raise ConfigError(f"unknown config fields: {sorted(unknown)}")
    command = doc.get("command")
    if command not in _PARAM_TYPES:
        raise ConfigError(f"unknown command {command!r}")
    params = doc.get("params", {})
    if not isinstance(params, dict):
        raise ConfigError("params must be an object")
    spec = _PARAM_TYPES[command]
    for key, value in params.items():
        if key not in spec:
            raise ConfigError(f"unknown parameter {key!r} for command {command!r}")
        want = spec[key]
        if want is float and isinstance(value, int):
            value = float(value)
            params[key] = value
        if not isinstance(value, want) or isinstance(value, bool):
            raise ConfigError(
                f"parameter {key!r} must be {want.__name__}, got {type(value).__name__}"
            )
    missing = _REQUIRED[command] - set(params)
    if missing:
        raise ConfigError(f"missing required parameters: {sorted(missing)}")
    seed = doc.get("seed")
    if seed is not None and (not isinstance(seed, int) or isinstance(seed, bool)):
        raise ConfigError("seed must be an integer")
    needs_seed = command in _RANDOMIZED or (
        command == "reproduce-example"
        and params.get("target") not in DETERMINISTIC_TARGETS
    )
    if needs_seed and seed is None:
        raise ConfigError(f"command {command!r} is randomized and requires a seed")
    out = doc.get("out")
    if out is not None and not isinstance(out, str):
        raise ConfigError("out must be a path string")
    if command == "reproduce-example" and params["target"] not in REPRODUCE_TARGETS:
        raise ConfigError(f"unknown target {params['target']!r}")
    if command == "sidon":
        method = params.get("method", "greedy")
        if method not in ("greedy", "singer"):
            raise ConfigError(f"unknown sidon method {method!r}")
        if method == "greedy" and "count" not in params:
            raise ConfigError("greedy needs a count")
        if method == "singer" and "q" not in params:
            raise ConfigError("singer needs q")
    return ExperimentConfig(command, params, seed, out)


def _config_echo(config: ExperimentConfig) -> dict:
    return {
        "command": config.command,
        "params": dict(sorted(config.params.items())),
        "seed": config.seed,
        "out": config.out,
    }


def _report_skeleton(config: ExperimentConfig) -> dict:
    return {"tool": "spr-lab", "version": __version__, "config": _config_echo(config)}


def _emit(config: ExperimentConfig, payload: dict) -> dict:
    doc = _report_skeleton(config)
    doc.update(payload)
    if config.out:
        write_report(doc, config.out)
    else:
        sys.stdout.write(json.dumps(payload, default=str) + "\n")
    return doc


def build_basis_from_params(params: dict) -> OrthoBasis:
    kind = params["kind"]
    if kind == "lacunary-sine":
        return lacunary_sine_basis(
            params.get("m", 4), params.get("base", 4), params.get("grid", 16384)
        )
    if kind == "lacunary-poly":
        coeffs = [complex(re, im) for re, im in params["coeffs"]]
        return lacunary_poly_basis(
            coeffs, params.get("dilation", 5), params.get("m", 2), params.get("grid", 2048)
        )
    if kind == "rudin-2d":
        seq = params.get("seq") or greedy_bh(2, params.get("m", 3)).terms
        return rudin_2d_basis(seq, params.get("m", 3), params.get("grid", 128))
    if kind == "iid":
        support = [(complex(re, im), p) for re, im, p in params["support"]]
        return iid_basis(support, params.get("m", 3))
    if kind == "exponential":
        return exponential_basis(params["freqs"], params.get("grid", 64))
    raise ConfigError(f"unknown basis kind {kind!r}")


# ---------------------------------------------------------------------------
# command handlers
# ---------------------------------------------------------------------------


def _cmd_basis(config: ExperimentConfig) -> int:
    basis = build_basis_from_params(config.params)
    if not config.out:
        raise ConfigError("basis command requires an output path")
    save_basis(basis, config.out)
    return EXIT_OK


def _cmd_check(config: ExperimentConfig) -> int:
    basis = load_basis(config.params["basis"])
    rep = full_report(basis)
    payload = {"report": rep.to_dict(), "s_norms_sq": basis.s_norms_sq.tolist()}
    _emit(config, payload)
    return EXIT_OK


def _cmd_sidon(config: ExperimentConfig) -> int:
    method = config.params.get("method", "greedy")
    if method == "greedy":
        seq = greedy_bh(
            config.params.get("h", 2),
            config.params["count"],
            config.params.get("limit"),
        )
        doc = {"h": seq.h, "method": "greedy", "terms": seq.terms, "complete": seq.complete}
    else:
        seq = singer_difference_set(config.params["q"])
        doc = {"h": 2, "method": "singer", "terms": seq.terms, "modulus": seq.modulus}
    if config.out:
        write_report(doc, config.out)
    else:
        sys.stdout.write(json.dumps(doc) + "\n")
    return EXIT_OK


def _cmd_retrieve(config: ExperimentConfig) -> int:
    basis = load_basis(config.params["basis"])
    modulus = function_from_csv(config.params["modulus"], basis.measure)
    kwargs = {}
    if "tol" in config.params:
        kwargs["tol"] = config.params["tol"]
    res = recover_coefficients(basis, modulus, **kwargs)
    payload = {
        "coeffs": [[float(z.real), float(z.imag)] for z in res.coeffs],
        "anchor": res.anchor_index + 1,
        "residual": res.residual,
        "diagnostics": res.diagnostics,
        "flags": sorted(res.flags),
        "alternates": [
            [[float(z.real), float(z.imag)] for z in alt] for alt in res.alternates
        ],
    }
    _emit(config, payload)
    return EXIT_OK


def _cmd_stability(config: ExperimentConfig) -> int:
    basis = load_basis(config.params["basis"])
    p = config.params.get("p", 4.0)
    trials = config.params.get("trials", 1000)
    threads = config.params.get("threads") or int(os.environ.get("SPR_LAB_THREADS", "1"))
    mc = monte_carlo_spr(basis, trials, p, config.seed, threads=threads)
    payload = {"monte_carlo": mc.to_dict(), "adversarial": None}
    if "adversarial" in config.params:
        try:
            restarts, steps = (int(v) for v in config.params["adversarial"].split("x"))
        except ValueError as exc:
            raise ConfigError("adversarial must look like '32x200'") from exc
        adv = adversarial_spr(basis, restarts, steps, p, config.seed)
        payload["adversarial"] = adv.to_dict()
    _emit(config, payload)
    if mc.violations and full_report(basis).verdict == "satisfied":
        return EXIT_VERDICT
    return EXIT_OK


def _cmd_identity(config: ExperimentConfig) -> int:
    basis = load_basis(config.params["basis"])
    pairs = config.params.get("pairs", 1000)
    mth = basis.size
    A = np.column_stack(
        [_random_pair(mth, basis.field, config.seed, t)[0] for t in range(pairs)]
    )
    B = np.column_stack(
        [_random_pair(mth, basis.field, config.seed, t)[1] for t in range(pairs)]
    )
    res_i, res_ii, margin = identity_residuals_batch(basis, A, B)
    payload = {
        "pairs": pairs,
        "max_residual_expansion": float(res_i.max()),
        "max_residual_coefficient_algebra": float(res_ii.max()),
        "min_gap_margin": float(margin.min()),
        "gap_violations": int(np.sum(margin < -1e-9)),
    }
    if basis.provenance.get("kind") == "exponential":
        worst = 0.0
        for t in range(min(pairs, 64)):
            a, b = _random_pair(mth, basis.field, config.seed, t)
            rep = identity_residuals(basis, a, b)
            worst = max(worst, rep.residual_fourier_side)
        payload["max_residual_fourier_side"] = worst
    _emit(config, payload)
    return EXIT_OK


# ---------------------------------------------------------------------------
# reproduce-example pipelines
# ---------------------------------------------------------------------------

_TERNARY = [[math.sqrt(1.5), 0.0, 1.0 / 3.0], [0.0, 0.0, 1.0 / 3.0], [-math.sqrt(1.5), 0.0, 1.0 / 3.0]]


def _complex_four_point():
    r = math.sqrt(1.5)
    w = 2.0 * math.pi / 3.0
    support = [(0j, 1.0 / 3.0)]
    for k in range(3):
        support.append((r * complex(math.cos(k * w), math.sin(k * w)), 2.0 / 9.0))
    return support


def _hypothesis_payload(basis: OrthoBasis) -> dict:
    rep = full_report(basis)
    return {
        "verdict": rep.verdict,
        "delta": rep.moment_gap,
        "orthogonality_max_violation": rep.orthogonality.max_violation,
        "report": rep.to_dict(),
    }


def _mc_payload(basis, trials, seed, ps=(4.0, 2.0)):
    out = {}
    ok = True
    for p in ps:
        mc = monte_carlo_spr(basis, trials, p, seed)
        out[f"stability_p{p:g}"] = mc.to_dict()
        ok = ok and not mc.violations and math.isfinite(mc.sup_ratio)
    return out, ok


def _spr_example(basis, trials, seed, expect_delta=None, ps=(4.0, 2.0)):
    payload = _hypothesis_payload(basis)
    mc_out, mc_ok = _mc_payload(basis, trials, seed, ps)
    payload.update(mc_out)
    ok = payload["verdict"] == "satisfied" and mc_ok
    if expect_delta is not None:
        ok = ok and abs(payload["delta"] - expect_delta) <= 1e-10
    payload["expected"] = "hypotheses satisfied, no stability violations"
    return payload, ok


def _reproduce(target: str, params: dict, seed) -> tuple[dict, bool]:
    trials = params.get("trials", 300)
    if target == "example1":
        basis = iid_basis(_complex_four_point(), params.get("m", 3))
        return _spr_example(basis, trials, seed)
    if target == "example2":
        basis = lacunary_poly_basis(
            [1 / math.sqrt(2), 1 / math.sqrt(2)],
            5,
            params.get("m", 2),
            params.get("grid", 512),
        )
        return _spr_example(basis, trials, seed)
    if target == "example3":
        basis = lacunary_sine_basis(
            params.get("m", 5), 4, params.get("grid", 16384)
        )
        return _spr_example(basis, trials, seed, expect_delta=0.5)
    if target == "example4":
        basis = iid_basis([(v, p) for v, _, p in _TERNARY], params.get("m", 5))
        return _spr_example(basis, trials, seed, expect_delta=0.5)
    if target == "example5":
        m = params.get("m", 3)
        seq = params.get("seq") or greedy_bh(2, m).terms
        ok_seq, _ = verify_bh(seq, 2)
        basis = rudin_2d_basis(seq, m, params.get("grid", 128))
        payload, ok = _spr_example(basis, trials, seed, expect_delta=0.5, ps=(4.0,))
        payload["seq"] = list(seq)
        payload["seq_is_b2"] = ok_seq
        return payload, ok and ok_seq
    if target == "example6":
        m = params.get("m", 3)
        freqs = params.get("seq") or greedy_bh(2, m).terms
        basis = exponential_basis(freqs, params.get("grid", 64))
        # the span itself cannot do phase retrieval: two exponentials share a modulus
        viol = spr_ratio(basis, np.eye(m)[0], np.eye(m)[1], 2)
        worst_identity = 0.0
        rng_pairs = min(trials, 64)
        for t in range(rng_pairs):
            a, b = _random_pair(m, "complex", seed, t)
            rep = identity_residuals(basis, a, b)
            worst_identity = max(worst_identity, rep.residual_fourier_side)
        # on the fixed-modulus shell the ratio stays finite
        rng = np.random.default_rng((seed, 0x5E11))
        c = np.abs(_random_pair(m, "complex", seed, 10**6)[0])
        sup_shell = 0.0
        for _ in range(rng_pairs):
            g1 = np.exp(2j * math.pi * rng.random(m))
            g2 = np.exp(2j * math.pi * rng.random(m))
            out = spr_ratio(basis, g1 * c, g2 * c, 4)
            if out.violation:
                sup_shell = math.inf
                break
            sup_shell = max(sup_shell, out.ratio)
        payload = {
            "subspace_violation_found": viol.violation,
            "violation_num": viol.num,
            "violation_den": viol.den,
            "max_residual_fourier_side": worst_identity,
            "fixed_modulus_sup_ratio": sup_shell,
            "expected": "subspace violation, exact fourier-side identity, finite shell ratio",
        }
        ok = viol.violation and worst_identity < 1e-9 and math.isfinite(sup_shell)
        return payload, ok
    if target == "prop1":
        basis = iid_basis(_complex_four_point(), params.get("m", 4))
        payload = _hypothesis_payload(basis)
        mc_out, mc_ok = _mc_payload(basis, trials, seed, ps=(4.0,))
        payload.update(mc_out)
        emb = embedding_constant(basis, 4, min(trials, 200), seed)
        n_pairs = min(trials, 200)
        anomalies = 0
        worst_ident = 0.0
        for t in range(n_pairs):
            a, b = _random_pair(basis.size, basis.field, seed, t)
            chk = stability_bound_check(
                basis, a, b, embedding_c=emb.constant, delta=payload["delta"]
            )
            anomalies += int(chk.anomaly)
            rep = identity_residuals(basis, a, b, delta=payload["delta"])
            worst_ident = max(
                worst_ident, rep.residual_expansion, rep.residual_coefficient_algebra
            )
        payload.update(
            {
                "embedding_constant_l4": emb.constant,
                "bound_anomalies": anomalies,
                "max_identity_residual": worst_ident,
                "expected": "satisfied hypotheses, exact identities, zero bound anomalies",
            }
        )
        ok = (
            payload["verdict"] == "satisfied"
            and mc_ok
            and anomalies == 0
            and worst_ident < 1e-9
        )
        return payload, ok
    if target == "prop1B":
        basis = lacunary_sine_basis(params.get("m", 4), 4, params.get("grid", 4096))
        payload = _hypothesis_payload(basis)
        mc_out, mc_ok = _mc_payload(basis, trials, seed, ps=(4.0,))
        payload.update(mc_out)
        fit = holder_exponent_fit(basis, max(60, min(trials, 200)), 4.0, seed)
        payload["holder_gamma"] = fit.gamma
        payload["expected"] = "real-field hypotheses satisfied, slope near 1"
        ok = payload["verdict"] == "satisfied" and mc_ok and fit.gamma >= 0.95
        return payload, ok
    if target == "cor-L6":
        basis = iid_basis([(v, p) for v, _, p in _TERNARY], params.get("m", 5))
        payload = _hypothesis_payload(basis)
        mc_out, mc_ok = _mc_payload(basis, trials, seed, ps=(2.0,))
        payload.update(mc_out)
        payload["interpolation_theta_q6"] = interpolation_theta(6)
        payload["modulus_holder_gamma_q6"] = modulus_holder_gamma(6)
        payload["expected"] = "theta = 0.25 at q = 6 and finite p=2 ratio"
        ok = (
            payload["verdict"] == "satisfied"
            and mc_ok
            and abs(payload["interpolation_theta_q6"] - 0.25) < 1e-12
        )
        return payload, ok
    if target == "counterexample-rademacher":
        basis = iid_basis(
            [(1.0, 0.5), (-1.0, 0.5)], params.get("m", 3), check_support=False
        )
        payload = _hypothesis_payload(basis)
        viol = spr_ratio(basis, np.eye(basis.size)[0], np.eye(basis.size)[1], 2)
        payload["violation_found"] = viol.violation
        payload["expected"] = "degenerate verdict and a violation pair"
        return payload, payload["verdict"] == "degenerate" and viol.violation
    if target == "counterexample-base3":
        basis = lacunary_sine_basis(params.get("m", 3), 3, params.get("grid", 1024))
        payload = _hypothesis_payload(basis)
        witness_value = payload["orthogonality_max_violation"]
        payload["expected"] = "orthogonality failure with witness value 0.5"
        ok = payload["verdict"] == "failed" and abs(witness_value - 0.5) <= 1e-10
        return payload, ok
    if target == "counterexample-complex-conjugate":
        basis = complex_span(
            lacunary_sine_basis(params.get("m", 2), 4, params.get("grid", 1024))
        )
        a = np.array([1.0, 1j]) / math.sqrt(2.0)
        viol = spr_ratio(basis, a, np.conj(a), 2)
        payload = _hypothesis_payload(basis)
        payload["violation_found"] = viol.violation
        payload["violation_num"] = viol.num
        payload["violation_den"] = viol.den
        payload["expected"] = "conjugate pair shares a modulus without being aligned"
        return payload, payload["verdict"] == "failed" and viol.violation
    raise ConfigError(f"unknown target {target!r}")


def _cmd_reproduce(config: ExperimentConfig) -> int:
    target = config.params["target"]
    payload, ok = _reproduce(target, config.params, config.seed)
    payload = {"paper_example": target, "verdict_matches_expectation": ok, **payload}
    _emit(config, payload)
    return EXIT_OK if ok else EXIT_VERDICT


_HANDLERS = {
    "basis": _cmd_basis,
    "check": _cmd_check,
    "sidon": _cmd_sidon,
    "retrieve": _cmd_retrieve,
    "stability": _cmd_stability,
    "identity": _cmd_identity,
    "reproduce-example": _cmd_reproduce,
}


def run(config: ExperimentConfig) -> int:
    """Execute a validated experiment configuration."""
    return _HANDLERS[config.command](config)


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _int_list(text: str) -> list[int]:
    return [int(v) for v in text.split(",") if v.strip()]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spr-lab",
        description="numerical experiments on stable recovery from moduli",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("basis", help="construct a basis and write its manifest")
    p.add_argument("--kind", required=True,
                   choices=["lacunary-sine", "lacunary-poly", "rudin-2d", "iid", "exponential"])
    p.add_argument("--base", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--grid", type=int)
    p.add_argument("--coeffs", type=str, help="JSON list of [re, im] pairs")
    p.add_argument("--dilation", type=int)
    p.add_argument("--seq", type=_int_list)
    p.add_argument("--support", type=str, help="JSON list of [re, im, prob] rows")
    p.add_argument("--freqs", type=_int_list)
    p.add_argument("--out", required=True)

    p = sub.add_parser("check", help="verify hypotheses on a saved basis")
    p.add_argument("--basis", required=True)
    p.add_argument("--report", dest="out", required=True)

    p = sub.add_parser("sidon", help="generate or verify distinct-sum sequences")
    p.add_argument("--h", type=int, default=2)
    p.add_argument("--count", type=int)
    p.add_argument("--method", default="greedy", choices=["greedy", "singer"])
    p.add_argument("--limit", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--out")

    p = sub.add_parser("retrieve", help="recover coefficients from a modulus CSV")
    p.add_argument("--basis", required=True)
    p.add_argument("--modulus", required=True)
    p.add_argument("--tol", type=float)
    p.add_argument("--out")

    p = sub.add_parser("stability", help="estimate stability ratios")
    p.add_argument("--basis", required=True)
    p.add_argument("--p", type=float, default=4.0)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--adversarial", type=str)
    p.add_argument("--threads", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--out")

    p = sub.add_parser("identity", help="evaluate exact identity residuals")
    p.add_argument("--basis", required=True)
    p.add_argument("--pairs", type=int, default=1000)
    p.add_argument("--seed", type=int)
    p.add_argument("--out")

    p = sub.add_parser("reproduce-example", help="rerun a named experiment")
    p.add_argument("target", choices=REPRODUCE_TARGETS)
    p.add_argument("--m", type=int)
    p.add_argument("--grid", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--seq", type=_int_list)
    p.add_argument("--seed", type=int)
    p.add_argument("--out")

    p = sub.add_parser("run", help="execute a JSON experiment config")
    p.add_argument("--config", required=True)
    return parser


def _args_to_config(args: argparse.Namespace) -> ExperimentConfig:
    command = args.command
    params: dict = {}
    for key, val in vars(args).items():
        if key in ("command", "seed", "out") or val is None:
            continue
        if key in ("coeffs", "support"):
            val = json.loads(val)
        if key == "target":
            params["target"] = val
            continue
        params[key] = val
    return validate_config(
        {
            "command": command,
            "params": params,
            "seed": getattr(args, "seed", None),
            "out": getattr(args, "out", None),
        }
    )


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help()
        return EXIT_CONFIG
    try:
        if args.command == "run":
            try:
                doc = json.loads(Path(args.config).read_text(encoding="utf-8"))
            except (OSError, json.JSONDecodeError) as exc:
                raise ConfigError(f"cannot read config: {exc}") from exc
            config = validate_config(doc)
        else:
            config = _args_to_config(args)
        return run(config)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DegenerateBasisError as exc:
        print(f"degenerate basis: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (ValueError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
