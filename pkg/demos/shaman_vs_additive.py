#!/usr/bin/env python3
"""A fortune-teller claims a number-picking ritual whose chances only add up
to one half.  Watch an open-minded Bayesian test that story against the
coin-flip alternative whose chances add up to one.

Every number below is an exact rational; nothing is floating point.
"""

from fractions import Fraction

from chancelab import (
    ChanceHypothesis,
    anticipation_limit,
    bayes_update,
    decay_envelope,
    dyadic_tail_measure,
    lemma_lambda,
    make_credence_state,
    mass,
    run_trajectory,
    total_mass,
)

# The ritual: chance 1/2^(n+1) of drawing n.  Summed over all n that is 1/2,
# so half the probability mass is simply missing.
ritual = dyadic_tail_measure(Fraction(1, 2), "ritual")

# The alternative: flip a fair coin until it lands heads, report the number
# of flips.  Chance 1/2^n of drawing n, total exactly 1.
coin = dyadic_tail_measure(Fraction(1), "coin")

print("chance of drawing 3 under the ritual:", mass(ritual, 3))
print("chance of drawing 3 under the coin:  ", mass(coin, 3))
print("ritual total mass:", total_mass(ritual), "| coin total mass:", total_mass(coin))
print()

# Start even-handed: credence 1/2 in each hypothesis.
state = make_credence_state(
    [ChanceHypothesis("ritual", ritual), ChanceHypothesis("coin", coin)],
    [Fraction(1, 2), Fraction(1, 2)],
)

# Every possible draw favours the coin 2:1, so the evidence verdict is fixed
# before the experiment even starts.
for drawn in (1, 3, 7):
    after = bayes_update(state, drawn)
    print(f"draw {drawn}: credence moves {state.priors} -> {after.priors}")
print()

# The contraction factor bounds the ritual's credence after any draw.
lam = lemma_lambda(state)
print("per-draw contraction factor:", lam)
for n in (1, 5, 10, 50):
    print(f"  after {n:3d} draws, credence(ritual) <= {decay_envelope(Fraction(1,2), lam, n)}")
print()

# Simulate actual draws from the coin distribution and check the bound live.
trajectory = run_trajectory(state, coin, 12, seed=42)
print("step | cell | credence(ritual) | envelope")
for step in trajectory.steps:
    cell = "-" if step.drawn_cell is None else step.drawn_cell
    print(f"{step.step:4d} | {cell:>4} | {str(step.posteriors[0]):>16} | {step.envelope}")
print()

# If you know in advance your credence must drop, you should already be at
# the only fixed point of p <= lam * p.
print("credence the anticipating agent can give the ritual:", anticipation_limit(lam))
