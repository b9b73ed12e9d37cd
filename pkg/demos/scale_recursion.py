#!/usr/bin/env python3
"""Growing a scale: a chain of integer sequences, each eventually strictly
above everything built before it, continued through a limit stage.

Stages are indexed by ordinals below omega*2.  Stage 0 is the constant 1;
each successor adds the next family member; the limit stage sums the first
n+1 stages at argument n.
"""

from fractions import Fraction

from chancelab import (
    OrdinalIndex,
    PolynomialScaleFamily,
    build_scale,
    dominates,
    seq_eval,
    verify_scale,
)

# Family rule f_j(n) = j*n + 1: closed form in the index j, which is what
# makes the limit stage symbolically summable.
family = PolynomialScaleFamily(((Fraction(1),), (Fraction(0), Fraction(1))))

stages = [OrdinalIndex.finite(k) for k in range(5)] + [OrdinalIndex.omega()]
built = [(stage, build_scale(family, stage)) for stage in stages]

print("stage |  n=1  n=2  n=3  n=4  n=5  n=6")
for stage, fn in built:
    values = "  ".join(f"{seq_eval(fn, n):3d}" for n in range(1, 7))
    print(f"{str(stage):>5} | {values}")
print()

# The limit stage has a genuine polynomial tail (with half-integer
# coefficients), so dominance against it is decided symbolically.
g_2 = built[2][1]
g_w = built[-1][1]
print("limit-stage tail coefficients:", g_w.tail)
verdict = dominates(g_2, g_w)
print(f"stage 2 < limit stage: {verdict.holds}, strictly from n = {verdict.threshold}")
print()

# Full verification: stages increase with the ordinal, and every family
# member is dominated by all later stages.
report = verify_scale(family, built)
print(f"{len(report.checks)} chain checks, all passed = {report.all_passed}")
for check in report.checks[:6]:
    print(
        f"  {check.kind:16s} {str(check.lower):>3} < {str(check.upper):>3}: "
        f"strict from n = {check.threshold}"
    )
print("  ...")
