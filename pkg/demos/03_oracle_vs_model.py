"""Checking the closed-form model against brute-force simulation.

The analytic engine multiplies pairwise comparison probabilities as if they
were independent, and prices in at most one decisive tie per scenario.  The
Monte-Carlo oracle makes no such assumptions: it realizes whole electorates,
counts them, adds the ballot, and recounts.  With two candidates the model
is assumption-free and the two must agree to sampling error; with three or
more the model is an approximation and lands within a small factor.
"""

import numpy as np

from irvpivot import (
    BallotProfile,
    OracleConfig,
    mc_pivot_estimates,
    total_pivot_prob,
)

DRAWS = 500_000

# Two candidates: exact agreement (up to Monte-Carlo noise).
prof2 = BallotProfile(2, {(0,): 8.0, (1,): 9.0}, max_length=1)
analytic = total_pivot_prob(prof2, [0]).p_total
est = mc_pivot_estimates(prof2, [(0,)], OracleConfig(draws=DRAWS, seed=1))[0]
print("two candidates, rates (8, 9), ballot (0,):")
print(f"  model  {analytic:.5f}")
print(f"  oracle {est.p_total_hat:.5f} +- {est.stderr_total:.5f}\n")

# Three candidates, small competitive electorate (about 50 expected voters).
rng = np.random.default_rng(7)
from itertools import permutations

rankings = list(permutations(range(3)))
rates = dict(zip(rankings, 50.0 * rng.dirichlet(4.0 * np.ones(6))))
prof3 = BallotProfile(3, rates)
print("three candidates, Dirichlet-competitive, total rate 50:")
estimates = mc_pivot_estimates(prof3, rankings, OracleConfig(draws=DRAWS, seed=2))
print(f"  {'ballot':12s} {'model':>9s} {'oracle':>9s} {'ratio':>6s}  oracle indirect share")
for ballot, est in zip(rankings, estimates):
    rep = total_pivot_prob(prof3, ballot)
    share = est.p_indirect_hat / est.p_total_hat if est.p_total_hat else 0.0
    print(
        f"  {str(ballot):12s} {rep.p_total:9.5f} {est.p_total_hat:9.5f} "
        f"{rep.p_total / est.p_total_hat:6.2f}  {share:6.1%}"
    )

print(
    "\nThe model undercounts at this scale: real counts pile up compound"
    "\nnear-ties (several rounds within a vote or two at once) that the"
    "\nsingle-decisive-tie accounting leaves out. The indirect share shows"
    "\nsmall electorates really are decided by indirect pivots now and then."
)
