"""Bayesian confirmation dynamics over chance hypotheses, with exact posteriors.

A :class:`CredenceState` carries exact rational credences over a finite set of
chance hypotheses.  Conditionalizing on an observed partition cell is a pure
function of the state.  For the special two-hypothesis shape where one
hypothesis is the mass-topped rescaling of the other (see
:func:`chancelab.measures.hstar`), the per-update contraction factor
``1 / (1 + p_star * eps)`` bounds how fast credence in the deficient
hypothesis must fall, no matter which cell is drawn.
"""

from __future__ import annotations

import bisect
import csv
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import IO, Iterable, Sequence

from .measures import PartitionMeasure, cellwise_equal, deficiency, hstar, mass
from .rational import format_rational

__all__ = [
    "ConfirmationError",
    "ZeroEvidence",
    "NotAnHStarPair",
    "DeficientTrueModel",
    "LambdaNotLessThanOne",
    "ChanceHypothesis",
    "CredenceState",
    "make_credence_state",
    "principal_likelihood",
    "bayes_update",
    "hstar_pair_roles",
    "lemma_lambda",
    "decay_envelope",
    "anticipation_limit",
    "draw_cells",
    "TrajectoryStep",
    "Trajectory",
    "run_trajectory",
    "trajectory_to_csv",
]

_UINT64_SPAN = 2**64


class ConfirmationError(ValueError):
    """Base class for confirmation-engine errors."""


class ZeroEvidence(ConfirmationError):
    """Every hypothesis assigns chance 0 to the drawn cell; conditionalization is undefined."""


class NotAnHStarPair(ConfirmationError):
    """The state is not a deficient hypothesis paired with its mass-topped rescaling."""


class DeficientTrueModel(ConfirmationError):
    """Sampling from a measure whose cell masses do not add to 1 is undefined."""


class LambdaNotLessThanOne(ConfirmationError):
    """The contraction factor must be strictly below 1."""


@dataclass(frozen=True)
class ChanceHypothesis:
    """A named claim that the draw chances are given by ``measure``."""

    name: str
    measure: PartitionMeasure


@dataclass(frozen=True)
class CredenceState:
    """Exact credences over hypotheses plus the observed cell history.

    Fresh states have all-positive priors; states produced by
    :func:`bayes_update` may carry zero credence on hypotheses flagged
    eliminated (they are retained, never resurrected).
    """

    hypotheses: tuple[ChanceHypothesis, ...]
    priors: tuple[Fraction, ...]
    history: tuple[int, ...] = ()
    eliminated: tuple[bool, ...] = field(default=())

    def __post_init__(self) -> None:
        if not self.eliminated:
            object.__setattr__(self, "eliminated", (False,) * len(self.hypotheses))
        if len(self.hypotheses) < 2:
            raise ConfirmationError("a credence state needs at least two hypotheses")
        if len(self.priors) != len(self.hypotheses) or len(self.eliminated) != len(self.hypotheses):
            raise ConfirmationError("hypotheses, priors and eliminated flags must align")
        if sum(self.priors, Fraction(0)) != 1:
            raise ConfirmationError("priors must sum to exactly 1")
        for p, out in zip(self.priors, self.eliminated):
            if p < 0:
                raise ConfirmationError(f"negative credence: {p}")
            if p == 0 and not out:
                raise ConfirmationError("zero credence requires the eliminated flag")
            if p > 0 and out:
                raise ConfirmationError("eliminated hypotheses must have zero credence")

    def credence(self, name: str) -> Fraction:
        for hyp, p in zip(self.hypotheses, self.priors):
            if hyp.name == name:
                return p
        raise KeyError(name)


def make_credence_state(
    hypotheses: Sequence[ChanceHypothesis], priors: Sequence[Fraction]
) -> CredenceState:
    """Build a fresh state; open-mindedness requires every prior > 0."""
    for p in priors:
        if p <= 0:
            raise ConfirmationError(f"fresh priors must all be positive, got {p}")
    return CredenceState(tuple(hypotheses), tuple(priors))


def principal_likelihood(h: ChanceHypothesis, k: int) -> Fraction:
    """Credence in drawing cell k given h: the chance h itself assigns to it."""
    return mass(h.measure, k)


def bayes_update(state: CredenceState, k: int) -> CredenceState:
    """Condition on the observed cell ``E_k``; posteriors are exact."""
    likelihoods = [principal_likelihood(h, k) for h in state.hypotheses]
    evidence = sum(
        (p * like for p, like in zip(state.priors, likelihoods)), Fraction(0)
    )
    if evidence == 0:
        raise ZeroEvidence(f"every hypothesis gives cell {k} chance 0")
    posteriors = tuple(p * like / evidence for p, like in zip(state.priors, likelihoods))
    eliminated = tuple(
        out or post == 0 for out, post in zip(state.eliminated, posteriors)
    )
    return CredenceState(state.hypotheses, posteriors, state.history + (k,), eliminated)


def hstar_pair_roles(state: CredenceState) -> tuple[int, int]:
    """Indices (deficient hypothesis, its rescaling) for a two-hypothesis state.

    The relation is verified structurally (cell-wise), not by name.
    """
    if len(state.hypotheses) != 2:
        raise NotAnHStarPair("the bound is proved only for two-hypothesis states")
    a, b = (h.measure for h in state.hypotheses)
    if deficiency(a) > 0 and cellwise_equal(hstar(a), b):
        return 0, 1
    if deficiency(b) > 0 and cellwise_equal(hstar(b), a):
        return 1, 0
    raise NotAnHStarPair("neither hypothesis is the mass-topped rescaling of the other")


def lemma_lambda(state: CredenceState) -> Fraction:
    """Per-draw contraction factor ``1 / (1 + p_star * eps)`` for a paired state."""
    i_h, i_star = hstar_pair_roles(state)
    eps = deficiency(state.hypotheses[i_h].measure)
    p_star = state.priors[i_star]
    return 1 / (1 + p_star * eps)


def decay_envelope(p0: Fraction, lambda0: Fraction, n: int) -> Fraction:
    """Exact upper envelope ``lambda0**n * p0`` after n draws."""
    if n < 0:
        raise ConfirmationError(f"draw count must be >= 0: {n}")
    return lambda0**n * p0


def anticipation_limit(lam: Fraction) -> Fraction:
    """The only credence p with p <= lam * p when lam < 1, namely 0."""
    if lam >= 1:
        raise LambdaNotLessThanOne(f"contraction factor must be < 1, got {lam}")
    return Fraction(0)


class _CellSampler:
    """Inverse-CDF sampler over a countably-additive partition measure.

    A uniform 64-bit integer u maps to the least cell k whose cumulative mass
    strictly exceeds u / 2**64.  The cumulative list grows lazily; since total
    mass is exactly 1 and u / 2**64 < 1, the search always terminates.
    """

    def __init__(self, measure: PartitionMeasure):
        if deficiency(measure) != 0:
            raise DeficientTrueModel(
                f"measure {measure.label!r} has deficiency {format_rational(deficiency(measure))}; "
                "cell draws would not exhaust the outcome space"
            )
        self._measure = measure
        self._cumulative: list[Fraction] = [mass(measure, 1)]

    def draw(self, rng: random.Random) -> int:
        threshold = Fraction(rng.getrandbits(64), _UINT64_SPAN)
        while self._cumulative[-1] <= threshold:
            nxt = len(self._cumulative) + 1
            self._cumulative.append(self._cumulative[-1] + mass(self._measure, nxt))
        return bisect.bisect_right(self._cumulative, threshold) + 1


def draw_cells(measure: PartitionMeasure, count: int, seed: int) -> list[int]:
    """Draw ``count`` i.i.d. cell indices; bit-reproducible for a fixed seed."""
    sampler = _CellSampler(measure)
    rng = random.Random(seed)
    return [sampler.draw(rng) for _ in range(count)]


@dataclass(frozen=True)
class TrajectoryStep:
    """One row of a confirmation run; step 0 is the initial state."""

    step: int
    drawn_cell: int | None
    posteriors: tuple[Fraction, ...]
    step_factor: Fraction | None
    cumulative_factor: Fraction | None
    envelope: Fraction | None


@dataclass(frozen=True)
class Trajectory:
    hypothesis_names: tuple[str, ...]
    steps: tuple[TrajectoryStep, ...]
    seed: int | None = None

    @property
    def final_posteriors(self) -> tuple[Fraction, ...]:
        return self.steps[-1].posteriors


def run_trajectory(
    state: CredenceState, true_model: PartitionMeasure, n_draws: int, seed: int
) -> Trajectory:
    """Sample ``n_draws`` cells from ``true_model`` and conditionalize after each.

    When the state is a deficient/rescaled pair, each step also records the
    per-draw factor favouring the rescaled hypothesis and the exact decay
    envelope fixed by the initial state.
    """
    if n_draws < 0:
        raise ConfirmationError(f"draw count must be >= 0: {n_draws}")
    sampler = _CellSampler(true_model)
    rng = random.Random(seed)

    try:
        i_h, i_star = hstar_pair_roles(state)
        lambda0 = lemma_lambda(state)
        p0 = state.priors[i_h]
    except NotAnHStarPair:
        i_h = i_star = -1
        lambda0 = p0 = None

    steps = [
        TrajectoryStep(0, None, state.priors, None, None, p0 if p0 is not None else None)
    ]
    cumulative: Fraction | None = Fraction(1) if lambda0 is not None else None
    current = state
    for step in range(1, n_draws + 1):
        k = sampler.draw(rng)
        current = bayes_update(current, k)
        factor: Fraction | None = None
        if lambda0 is not None:
            like_h = principal_likelihood(current.hypotheses[i_h], k)
            like_star = principal_likelihood(current.hypotheses[i_star], k)
            factor = like_star / like_h if like_h > 0 else None
            cumulative = cumulative * factor if (cumulative and factor) else None
        envelope = decay_envelope(p0, lambda0, step) if lambda0 is not None else None
        steps.append(
            TrajectoryStep(step, k, current.priors, factor, cumulative, envelope)
        )
    names = tuple(h.name for h in state.hypotheses)
    return Trajectory(names, tuple(steps), seed)


def trajectory_to_csv(trajectory: Trajectory, out: IO[str]) -> None:
    """Write the trajectory table: step, drawn cell, one exact-rational column
    per hypothesis posterior, then the envelope column."""
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(
        ["step", "drawn_cell"]
        + [f"cred_{name}" for name in trajectory.hypothesis_names]
        + ["envelope"]
    )
    for row in trajectory.steps:
        writer.writerow(
            [row.step, "" if row.drawn_cell is None else row.drawn_cell]
            + [format_rational(p) for p in row.posteriors]
            + ["" if row.envelope is None else format_rational(row.envelope)]
        )
