"""Appearance thresholds for small patterns.

The expected number of labeled copies of a pattern G grows like B^n where B
is the pattern's base value, so B = 1 separates asymptotic absence from
abundance.  This script sweeps alpha (= gamma) for the 4-cycle, locates the
analytic crossing, and shows seeded simulation switching from absence to
presence around it.
"""

import numpy as np
from scipy.optimize import brentq

from kronval import (
    KroneckerParams,
    SeedSpec,
    count_labeled_copies,
    cycle,
    cycle_base_value,
    generate_stratified,
)


def main():
    n = 12
    beta = 0.5
    trials = 12
    pattern = cycle(4)
    crossing = brentq(
        lambda a: cycle_base_value(KroneckerParams(a, beta, a, n), 4) - 1.0, 0.05, 0.95
    )
    print(f"4-cycle, beta={beta}: base value (a+b)^4 + (a-b)^4 crosses 1 at alpha={crossing:.4f}\n")
    print(f"{'alpha':>7} {'base':>8} {'base^n':>10} {'mean copies':>12} {'present':>8}")
    for alpha in np.linspace(0.30, 0.62, 9):
        p = KroneckerParams(float(alpha), beta, float(alpha), n)
        base = cycle_base_value(p, 4)
        counts = []
        for t in range(trials):
            g = generate_stratified(p, seed=SeedSpec(4).child(f"{alpha:.3f}", t))
            counts.append(count_labeled_copies(g, pattern))
        counts = np.array(counts)
        print(
            f"{alpha:>7.3f} {base:>8.4f} {base**n:>10.3g}"
            f" {counts.mean():>12.1f} {(counts > 0).mean():>8.0%}"
        )
    print()
    print("below the crossing, copies are absent in almost every realization;")
    print("above it, counts track base^n.  Even cycles appear in order of their")
    print("length; for beta > alpha, odd cycles appear in reverse order, because")
    print("the (alpha-beta)^k term then punishes short odd cycles.")


if __name__ == "__main__":
    main()
