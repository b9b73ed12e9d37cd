"""Desk-scale models of physical chance procedures.

The circle model is a piecewise-linear, continuous CDF over angles in exact
rational degrees: continuity makes every single angle a zero-chance outcome
while the full circle carries chance exactly 1, and skew is free.  Alongside
it live the finite coin-prefix bound, the rejection lottery's closed-form
termination chance, and the purely symbolic integer-angle rotation example.
"""

from __future__ import annotations

import random
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .rational import as_fraction, format_rational

__all__ = [
    "ProcedureError",
    "AtomDetected",
    "EmptyPrefix",
    "CircleChanceModel",
    "make_circle_model",
    "uniform_circle_model",
    "Arc",
    "arc_chance",
    "singleton_chance",
    "shrinking_arcs",
    "coin_prefix_chance",
    "LotteryReport",
    "rejection_lottery",
    "IntegerAngleSet",
    "RotationReport",
    "rotate_integer_set",
    "circle_model_to_json",
    "circle_model_from_json",
]

FULL_TURN = Fraction(360)


class ProcedureError(ValueError):
    """Base class for procedure-model errors."""


class AtomDetected(ProcedureError):
    """Arc shrinking failed to push the chance down; impossible for a
    continuous CDF, kept as a defensive check."""


class EmptyPrefix(ProcedureError):
    """A coin-prefix bound needs at least one flip."""


@dataclass(frozen=True)
class CircleChanceModel:
    """Continuous piecewise-linear CDF on [0, 360] degrees.

    F(0) = 0 and F(360) = 1, so the whole circle has chance 1 and, by
    continuity, every individual angle has chance 0.
    """

    breakpoints: tuple[Fraction, ...]
    cdf_values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.breakpoints) != len(self.cdf_values) or len(self.breakpoints) < 2:
            raise ProcedureError("need matching breakpoint and CDF lists of length >= 2")
        if self.breakpoints[0] != 0 or self.breakpoints[-1] != FULL_TURN:
            raise ProcedureError("breakpoints must run from 0 to 360 degrees")
        for lo, hi in zip(self.breakpoints, self.breakpoints[1:]):
            if not lo < hi:
                raise ProcedureError("breakpoints must be strictly increasing")
        if self.cdf_values[0] != 0 or self.cdf_values[-1] != 1:
            raise ProcedureError("CDF must run from 0 to 1")
        for lo, hi in zip(self.cdf_values, self.cdf_values[1:]):
            if lo > hi:
                raise ProcedureError("CDF must be non-decreasing")

    def cdf(self, angle: Fraction) -> Fraction:
        """Exact CDF value at an angle in [0, 360]."""
        if angle < 0 or angle > FULL_TURN:
            raise ProcedureError(f"angle out of [0, 360]: {angle}")
        i = bisect_right(self.breakpoints, angle) - 1
        if i == len(self.breakpoints) - 1:
            return self.cdf_values[-1]
        lo, hi = self.breakpoints[i], self.breakpoints[i + 1]
        flo, fhi = self.cdf_values[i], self.cdf_values[i + 1]
        return flo + (fhi - flo) * (angle - lo) / (hi - lo)


def make_circle_model(
    breakpoints: Iterable[int | str | Fraction], cdf_values: Iterable[int | str | Fraction]
) -> CircleChanceModel:
    return CircleChanceModel(
        tuple(as_fraction(b) for b in breakpoints),
        tuple(as_fraction(v) for v in cdf_values),
    )


def uniform_circle_model() -> CircleChanceModel:
    return make_circle_model([0, 360], [0, 1])


@dataclass(frozen=True)
class Arc:
    """Half-open arc [start, end) in degrees; start > end wraps through 0.

    ``Arc(0, 360)`` is the full circle.  ``Arc(0, 0)`` is the canonical empty
    arc; any other degenerate pair is rejected.
    """

    start: Fraction
    end: Fraction

    def __post_init__(self) -> None:
        if self.start < 0 or self.start >= FULL_TURN:
            raise ProcedureError(f"arc start out of [0, 360): {self.start}")
        if self.end < 0 or self.end > FULL_TURN:
            raise ProcedureError(f"arc end out of [0, 360]: {self.end}")
        if self.start == self.end and self.start != 0:
            raise ProcedureError(
                "degenerate arc; use Arc(0, 0) for the explicit empty arc"
            )

    @classmethod
    def empty(cls) -> "Arc":
        return cls(Fraction(0), Fraction(0))

    @classmethod
    def full(cls) -> "Arc":
        return cls(Fraction(0), FULL_TURN)

    @property
    def is_empty(self) -> bool:
        return self.start == self.end

    @property
    def width(self) -> Fraction:
        if self.is_empty:
            return Fraction(0)
        if self.start < self.end:
            return self.end - self.start
        return FULL_TURN - self.start + self.end

    def contains(self, angle: Fraction) -> bool:
        if self.is_empty:
            return False
        if self.start < self.end:
            return self.start <= angle < self.end
        return angle >= self.start or angle < self.end


def arc_chance(model: CircleChanceModel, arc: Arc) -> Fraction:
    """Exact chance of landing in the arc: F(end) - F(start), wrap-around
    split at 0 and summed."""
    if arc.is_empty:
        return Fraction(0)
    if arc.start < arc.end:
        return model.cdf(arc.end) - model.cdf(arc.start)
    return (model.cdf(FULL_TURN) - model.cdf(arc.start)) + model.cdf(arc.end)


def singleton_chance(model: CircleChanceModel, angle: Fraction) -> Fraction:
    """Chance of one exact angle: always 0, because the CDF is continuous."""
    if angle < 0 or angle >= FULL_TURN:
        raise ProcedureError(f"angle out of [0, 360): {angle}")
    return Fraction(0)


def _centered_arc(point: Fraction, half_width: Fraction) -> Arc:
    lo = (point - half_width) % FULL_TURN
    hi = (point + half_width) % FULL_TURN
    return Arc(lo, hi)


def shrinking_arcs(
    model: CircleChanceModel, point: Fraction, depth: int, max_halvings: int = 4000
) -> list[tuple[Arc, Fraction]]:
    """Arcs around the point with chance below 1/2, 1/4, ..., 1/2**depth.

    Endpoints are found by bisection against the exact CDF: the half-width
    halves until the arc chance drops strictly below both the dyadic target
    and the previous arc's chance (when that was positive).  A continuous CDF
    guarantees success; failure to shrink raises AtomDetected.
    """
    if not 0 <= point < FULL_TURN:
        raise ProcedureError(f"point out of [0, 360): {point}")
    if depth < 1:
        raise ProcedureError(f"depth must be >= 1: {depth}")
    out: list[tuple[Arc, Fraction]] = []
    half_width = Fraction(90)
    previous = Fraction(1)  # chance of the initial arc: the full circle
    for k in range(1, depth + 1):
        target = Fraction(1, 2**k)
        if previous > 0:
            target = min(target, previous)
        arc = _centered_arc(point, half_width)
        chance = arc_chance(model, arc)
        halvings = 0
        while chance >= target:
            half_width /= 2
            arc = _centered_arc(point, half_width)
            chance = arc_chance(model, arc)
            halvings += 1
            if halvings > max_halvings:
                raise AtomDetected(
                    f"chance around {point} deg refuses to fall below {target}"
                )
        out.append((arc, chance))
        previous = chance
        half_width /= 2
    return out


def coin_prefix_chance(
    biases: Sequence[int | str | Fraction], prefix: Sequence[str] | str
) -> tuple[Fraction, Fraction]:
    """Exact chance of a specific heads/tails prefix and the bound r**n.

    Per-flip chance is the bias for H and its complement for T; r is the
    largest per-flip chance actually used, so the product can never exceed
    r**n and equals it exactly when every flip takes its most likely side at
    a shared bias.
    """
    if len(prefix) == 0:
        raise EmptyPrefix("prefix must contain at least one flip")
    if len(prefix) > len(biases):
        raise ProcedureError(
            f"prefix of length {len(prefix)} needs at least as many biases, got {len(biases)}"
        )
    product = Fraction(1)
    r = Fraction(0)
    for bias_raw, side in zip(biases, prefix):
        bias = as_fraction(bias_raw)
        if not 0 < bias < 1:
            raise ProcedureError(f"bias must lie strictly between 0 and 1: {bias}")
        if side not in ("H", "T"):
            raise ProcedureError(f"prefix entries must be 'H' or 'T': {side!r}")
        flip = bias if side == "H" else 1 - bias
        product *= flip
        r = max(r, flip)
    bound = r ** len(prefix)
    assert product <= bound
    return product, bound


@dataclass(frozen=True)
class LotteryReport:
    """Outcome of a spin-until-hit run plus its closed-form chances."""

    hit_chance: Fraction
    max_spins: int
    seed: int
    spins: tuple[bool, ...]
    termination_spin: int | None
    termination_chance_within: Fraction
    eventual_termination_chance: Fraction


def rejection_lottery(hit_chance: Fraction, max_spins: int, seed: int) -> LotteryReport:
    """Spin until the target region is hit, at most ``max_spins`` times.

    Each spin hits independently with the given chance; the report carries
    the exact chance 1 - (1 - q)**s of terminating within s spins.  For
    q = 0 the procedure never terminates: its eventual termination chance
    is exactly 0.
    """
    q = as_fraction(hit_chance)
    if not 0 <= q <= 1:
        raise ProcedureError(f"hit chance out of [0, 1]: {q}")
    if max_spins < 1:
        raise ProcedureError(f"max_spins must be >= 1: {max_spins}")
    rng = random.Random(seed)
    spins: list[bool] = []
    termination_spin = None
    for spin in range(1, max_spins + 1):
        hit = Fraction(rng.getrandbits(64), 2**64) < q
        spins.append(hit)
        if hit:
            termination_spin = spin
            break
    return LotteryReport(
        hit_chance=q,
        max_spins=max_spins,
        seed=seed,
        spins=tuple(spins),
        termination_spin=termination_spin,
        termination_chance_within=1 - (1 - q) ** max_spins,
        eventual_termination_chance=Fraction(1) if q > 0 else Fraction(0),
    )


@dataclass(frozen=True)
class IntegerAngleSet:
    """The angles {n mod 2*pi : n >= offset, n integer} on the unit circle.

    Because 2*pi is irrational, distinct integers land on distinct angles, so
    these sets strictly shrink as the offset grows.  Everything about them
    here is symbolic; no numeric angle is ever computed.
    """

    offset: int

    def __post_init__(self) -> None:
        if not isinstance(self.offset, int) or isinstance(self.offset, bool) or self.offset < 1:
            raise ProcedureError(f"offset must be a positive integer: {self.offset!r}")


@dataclass(frozen=True)
class RotationReport:
    original: IntegerAngleSet
    image: IntegerAngleSet
    radians: int
    is_subset: bool
    is_strict: bool
    witnesses: tuple[int, ...]  # integers whose angles are lost by the rotation


def rotate_integer_set(s: IntegerAngleSet, k: int) -> tuple[IntegerAngleSet, RotationReport]:
    """Rotate counterclockwise by k whole radians: each angle n mod 2*pi maps
    to (n + k) mod 2*pi, so the image is the set with offset raised by k.

    For k >= 1 the inclusion is strict, witnessed by the angles of the k
    integers offset..offset+k-1, none of which survive the rotation.
    """
    if k < 0:
        raise ProcedureError(f"rotation count must be >= 0: {k}")
    image = IntegerAngleSet(s.offset + k)
    report = RotationReport(
        original=s,
        image=image,
        radians=k,
        is_subset=True,
        is_strict=k >= 1,
        witnesses=tuple(range(s.offset, s.offset + k)),
    )
    return image, report


def circle_model_to_json(model: CircleChanceModel) -> dict:
    return {
        "breakpoints": [format_rational(b) for b in model.breakpoints],
        "cdf": [format_rational(v) for v in model.cdf_values],
    }


def circle_model_from_json(data: Mapping[str, object]) -> CircleChanceModel:
    unknown = set(data) - {"breakpoints", "cdf"}
    if unknown:
        raise ProcedureError(f"unknown circle-model key(s): {sorted(unknown)}")
    return make_circle_model(data.get("breakpoints", []), data.get("cdf", []))
