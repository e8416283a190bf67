#!/usr/bin/env python3
"""How the empirical constants behave as the sine family grows.

The moment gap is grid-exact and should sit at 0.5 for every size; the
embedding constant and the stability-ratio supremum are empirical lower
bounds whose stabilization in the family size is an open, purely
experimental question.  The adversarial column reports the relative growth
when the hill-climbing budget doubles, as a convergence diagnostic.
"""

import argparse
import json

from sprlab.bases import lacunary_sine_basis
from sprlab.hypotheses import check_moments, embedding_constant
from sprlab.stability import adversarial_spr, monte_carlo_spr


def study(sizes, trials, seed):
    rows = []
    for m in sizes:
        grid = max(1024, 8 * 4**m)
        basis = lacunary_sine_basis(m, 4, grid)
        gap = check_moments(basis).moment_gap
        emb = embedding_constant(basis, 4, trials, seed).constant
        mc = monte_carlo_spr(basis, trials, 4.0, seed).sup_ratio
        adv1 = adversarial_spr(basis, restarts=4, steps=25, p=4.0, seed=seed).sup_ratio
        adv2 = adversarial_spr(basis, restarts=4, steps=50, p=4.0, seed=seed).sup_ratio
        growth = (adv2 - adv1) / adv1 if adv1 > 0 else 0.0
        rows.append(
            {
                "m": m,
                "grid": grid,
                "moment_gap": gap,
                "embedding_l4": emb,
                "mc_sup_ratio": mc,
                "adversarial_sup_ratio": adv2,
                "adversarial_growth_on_double_steps": growth,
            }
        )
        print(
            f"m={m}: gap={gap:.12f} emb={emb:.4f} mc={mc:.4f} "
            f"adv={adv2:.4f} growth={growth:+.3%}"
        )
    return rows


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", type=lambda s: [int(v) for v in s.split(",")], default=[2, 3, 4, 5])
    ap.add_argument("--trials", type=int, default=400)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--out", type=str)
    ns = ap.parse_args()
    rows = study(ns.sizes, ns.trials, ns.seed)
    if ns.out:
        with open(ns.out, "w") as fh:
            json.dump(rows, fh, indent=2)
