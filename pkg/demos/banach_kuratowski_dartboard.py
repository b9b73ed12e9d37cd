#!/usr/bin/env python3
"""Throw a dart at a weighted family of integer sequences and you can always
out-run it: pick each coordinate of a bounding function at a high enough
quantile and the dart lands strictly below it with chance greater than 1/2.

The desk-scale dartboard here is finitely supported; the quantile and
union-bound arithmetic is exactly the same as in the countable case.
"""

from fractions import Fraction

from chancelab import (
    constant_sequence,
    coverage,
    dominating_function,
    identity_sequence,
    make_dartboard,
    make_sequence_function,
    seq_eval,
)

board = make_dartboard(
    [
        identity_sequence(),                      # n
        make_sequence_function([], [0, 2]),       # 2n
        make_sequence_function([], [0, 0, 1]),    # n^2
        constant_sequence(7),                     # 7
    ],
    ["1/3", "1/3", "1/6", "1/6"],
)

horizon = 10
f_omega = dominating_function(board, horizon)

print("coordinate-wise quantile construction:")
print("   n | f(n) | Ch(dart(n) >= f(n)) | budget 2^-(n+1)")
covered, certificate = coverage(board, f_omega, horizon)
for n in range(1, horizon + 1):
    print(
        f"{n:4d} | {seq_eval(f_omega, n):4d} | {str(certificate.exceedance[n-1]):>19} | "
        f"1/{2 ** (n + 1)}"
    )
print()

print("union-bound certificate:")
for line in certificate.chain_lines():
    print(" ", line)
print()
print(f"exact chance the dart stays below f everywhere on 1..{horizon}: {covered}")

# A board member with large weight forces the quantile up but never breaks
# the budget: the construction always has room because the marginal masses
# sum to 1 at every coordinate.
spiky = make_dartboard([constant_sequence(1), constant_sequence(1000)], ["7/8", "1/8"])
f_spiky = dominating_function(spiky, 1)
print()
print(f"spiky board: f(1) = {seq_eval(f_spiky, 1)} "
      f"(the 7/8 cluster clears the 3/4 quantile at value 1)")
print(f"spiky coverage: {coverage(spiky, f_spiky, 1)[0]}")
