"""
How many applications were filed in total?
==========================================

Application identifiers are serial numbers, so the largest observed id
in a partial sample estimates the full population size - the classic
serial-number (German tank) estimator, with its exact confidence
interval from inverting the sample-maximum distribution.
"""

import numpy as np

from qualex.stats import german_tank_ci, german_tank_estimate, german_tank_point
from qualex.synth import SynthParams, generate_corpus

# ---------------------------------------------------------------------------
# 1. the estimator on known ground truth

N_TRUE = 10_000
rng = np.random.default_rng(1)
for k in (10, 100, 1000):
    sample = rng.choice(N_TRUE, size=k, replace=False) + 1
    m = int(sample.max())
    low, high = german_tank_ci(m, k, 0.95)
    print(f"k={k:5d}  max={m:5d}  point={german_tank_point(m, k):9.1f}  "
          f"95% CI [{low:9.1f}, {high:9.1f}]")
print("the interval collapses onto the truth as the sample grows\n")

# ---------------------------------------------------------------------------
# 2. the same computation on a corpus

# synthetic corpora mimic the situation: serial ids come from a larger
# pool than the applications we actually observe
corpus = generate_corpus(SynthParams(n_applications=400, seed=3, serial_headroom=1.3))
serials = sorted(corpus.applications)
est = german_tank_estimate(max(serials), len(serials), 0.95)
print(f"observed {est.k} applications, largest serial {est.m}")
print(f"estimated population: {est.point:.1f}, 95% CI [{est.ci_low:.1f}, {est.ci_high:.1f}]")
print(f"(the generator drew serials from a pool of {round(400 * 1.3)})")

# ---------------------------------------------------------------------------
# 3. coverage check by simulation

hits = 0
trials = 2000
for _ in range(trials):
    sample = rng.choice(N_TRUE, size=50, replace=False) + 1
    low, high = german_tank_ci(int(sample.max()), 50, 0.95)
    hits += low <= N_TRUE <= high
print(f"\nsimulated coverage of the 95% interval: {hits / trials:.3f}")
