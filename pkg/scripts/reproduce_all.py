#!/usr/bin/env python3
"""Run every named reproduction target and summarize the verdicts.

Writes one JSON report per target into ./reports (override with --out-dir)
and prints a one-line verdict summary.  Exits nonzero if any target
contradicts its expectation.
"""

import argparse
import json
import sys
from pathlib import Path

from sprlab.cli import DETERMINISTIC_TARGETS, REPRODUCE_TARGETS, main as cli_main


def run(out_dir: Path, seed: int, trials: int) -> int:
    out_dir.mkdir(parents=True, exist_ok=True)
    worst = 0
    for target in REPRODUCE_TARGETS:
        out = out_dir / f"{target}.json"
        args = ["reproduce-example", target, "--trials", str(trials), "--out", str(out)]
        if target not in DETERMINISTIC_TARGETS:
            args += ["--seed", str(seed)]
        code = cli_main(args)
        doc = json.loads(out.read_text())
        status = "ok" if code == 0 else f"exit={code}"
        verdict = doc.get("verdict", "-")
        print(f"{target:36s} {status:8s} verdict={verdict:10s} match={doc['verdict_matches_expectation']}")
        worst = max(worst, code)
    return worst


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", type=Path, default=Path("reports"))
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--trials", type=int, default=300)
    ns = ap.parse_args()
    sys.exit(run(ns.out_dir, ns.seed, ns.trials))
