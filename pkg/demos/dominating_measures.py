#!/usr/bin/env python3
"""Any distribution over a countable partition whose cell masses fall short
of 1 can be beaten cell by cell.  This script builds both repairs and prints
the exact per-cell comparison.
"""

from fractions import Fraction

from chancelab import (
    deficiency,
    dominate,
    domination_report,
    hstar,
    make_partition_measure,
    mass,
    total_mass,
)

# A lopsided example: mass 3/4 on the first cell, nothing anywhere else.
base = make_partition_measure(["3/4"], label="three-quarters")
eps = deficiency(base)
print(f"base total mass {total_mass(base)}, so deficiency eps = {eps}")
print()

# Repair 1: spread the missing eps as eps/2^n across all cells.
split = dominate(base)
# Repair 2: scale everything by (1 + eps) and add eps^2/2^n.
rescaled = hstar(base)

print("cell |  base   | +gap-split | +rescaled")
for n in range(1, 9):
    print(
        f"{n:4d} | {str(mass(base, n)):>7} | {str(mass(split, n)):>10} | {str(mass(rescaled, n)):>9}"
    )
print(f"totals:       {total_mass(split)}            {total_mass(rescaled)}   (both exactly 1)")
print()

# The report certifies strict cell-wise domination, tails included.
for candidate in (split, rescaled):
    report = domination_report(base, candidate, horizon=8)
    print(
        f"{candidate.label}: dominates everywhere = {report.dominates_everywhere}, "
        f"tail comparison = {report.tail_dominates}"
    )

# It cannot be done for a measure whose masses already add to 1: strict gaps
# on every cell would push the rival's total above 1.
full = make_partition_measure([], [("1", "1/2", 1)], "coin")
report = domination_report(full, split, horizon=8)
print(
    f"\ntrying to beat a fully additive measure: dominates everywhere = "
    f"{report.dominates_everywhere} (first failure at cell {report.first_failure})"
)
