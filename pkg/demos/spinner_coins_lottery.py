#!/usr/bin/env python3
"""Three physical chance procedures, all in exact arithmetic: a skewed
spinner whose single angles carry no chance at all, coin-flip prefixes whose
chances shrink geometrically, and a rejection lottery that may never stop.
"""

from fractions import Fraction

from chancelab import (
    Arc,
    IntegerAngleSet,
    arc_chance,
    coin_prefix_chance,
    make_circle_model,
    rejection_lottery,
    rotate_integer_set,
    shrinking_arcs,
    singleton_chance,
)

# --- the spinner ----------------------------------------------------------
# A continuous piecewise-linear CDF: the left half of the circle carries
# chance 0.53, so the spinner is visibly skewed, yet every single angle still
# has chance exactly 0.
spinner = make_circle_model([0, 180, 360], [0, "53/100", 1])
print("chance of landing in [0, 180):", arc_chance(spinner, Arc(Fraction(0), Fraction(180))))
print("chance of the whole circle:   ", arc_chance(spinner, Arc.full()))
print("chance of landing exactly on 90 degrees:", singleton_chance(spinner, Fraction(90)))
print()

# Squeeze arcs around 90 degrees: chance below 1/2, then 1/4, then 1/8, ...
print("shrinking arcs around 90 degrees:")
for k, (arc, chance) in enumerate(shrinking_arcs(spinner, Fraction(90), 8), start=1):
    print(f"  k={k}: width {str(arc.width):>7} deg, chance {str(chance):>8} < 1/{2 ** k}")
print()

# --- coin prefixes ---------------------------------------------------------
product, bound = coin_prefix_chance([Fraction(1, 2)] * 3, "HTT")
print(f"three fair coins landing HTT: chance {product} (bound {bound})")
product, bound = coin_prefix_chance([Fraction(3, 5)] * 10, "H" * 10)
print(f"ten biased coins all heads:   chance {product} = (3/5)^10 = {bound}")
print("longer prefixes only shrink: a full infinite sequence is below every positive bound")
print()

# --- the rejection lottery --------------------------------------------------
# Spin until a region of chance q is hit.  The termination chance within s
# spins is 1 - (1-q)^s; with q = 0 the procedure simply never ends.
for q in (Fraction(1, 2), Fraction(1, 100), Fraction(0)):
    report = rejection_lottery(q, max_spins=50, seed=7)
    stopped = report.termination_spin or "never (within budget)"
    print(
        f"q={str(q):>5}: stopped at spin {stopped}; "
        f"chance of stopping within 50 spins = {report.termination_chance_within}; "
        f"eventual = {report.eventual_termination_chance}"
    )
print()

# --- rotating an integer set -------------------------------------------------
# Angles of the integers 1, 2, 3, ... around the circle: rotating by one
# radian maps the set strictly inside itself, losing the angle "1 rad".
n1 = IntegerAngleSet(1)
image, report = rotate_integer_set(n1, 1)
print(
    f"rotating the integer-angle set by 1 radian: strict subset = {report.is_strict}, "
    f"lost angle(s) = {[f'{w} rad' for w in report.witnesses]}"
)
image, report = rotate_integer_set(IntegerAngleSet(3), 2)
print(
    f"rotating offset-3 set by 2 radians: image offset = {image.offset}, "
    f"lost angles = {[f'{w} rad' for w in report.witnesses]}"
)
