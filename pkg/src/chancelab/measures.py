"""Chance distributions over a countable partition, with exact arithmetic.

A :class:`PartitionMeasure` assigns a nonnegative rational mass to each cell
``E_1, E_2, ...`` of a countable partition.  The representation is a finite
explicit head followed by a finite mixture of geometric tails, so total mass
is computable in closed form and the class is closed under the two
mass-topping constructions (:func:`dominate` and :func:`hstar`).  Total mass
may fall short of 1; the shortfall is the measure's additivity deficiency.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .rational import as_fraction, format_rational

__all__ = [
    "MeasureError",
    "NegativeMass",
    "MassExceedsOne",
    "TailOverlapsHead",
    "AlreadyCountablyAdditive",
    "GeometricTail",
    "PartitionMeasure",
    "make_partition_measure",
    "dyadic_tail_measure",
    "mass",
    "total_mass",
    "deficiency",
    "dominate",
    "hstar",
    "cellwise_equal",
    "CellComparison",
    "DominationReport",
    "domination_report",
    "measure_to_json",
    "measure_from_json",
]

HALF = Fraction(1, 2)


class MeasureError(ValueError):
    """Base class for partition-measure construction and operation errors."""


class NegativeMass(MeasureError):
    """A cell was assigned negative mass."""


class MassExceedsOne(MeasureError):
    """Total mass exceeds 1; carries the exact overshoot."""

    def __init__(self, overshoot: Fraction):
        self.overshoot = overshoot
        super().__init__(f"total mass exceeds 1 by {format_rational(overshoot)}")


class TailOverlapsHead(MeasureError):
    """A geometric tail starts at or before the last explicit head cell."""


class AlreadyCountablyAdditive(MeasureError):
    """The construction needs a positive deficiency but the measure has none."""


@dataclass(frozen=True)
class GeometricTail:
    """Masses ``coefficient * ratio**n`` for every cell index ``n >= start``."""

    coefficient: Fraction
    ratio: Fraction
    start: int

    def __post_init__(self) -> None:
        if not isinstance(self.coefficient, Fraction) or self.coefficient <= 0:
            raise MeasureError(f"tail coefficient must be a positive Fraction: {self.coefficient!r}")
        if not isinstance(self.ratio, Fraction) or not 0 < self.ratio < 1:
            raise MeasureError(f"tail ratio must be a Fraction in (0, 1): {self.ratio!r}")
        if not isinstance(self.start, int) or isinstance(self.start, bool) or self.start < 1:
            raise MeasureError(f"tail start must be a positive integer: {self.start!r}")

    def mass_at(self, n: int) -> Fraction:
        if n < self.start:
            return Fraction(0)
        return self.coefficient * self.ratio**n

    @property
    def total(self) -> Fraction:
        return self.coefficient * self.ratio**self.start / (1 - self.ratio)


@dataclass(frozen=True)
class PartitionMeasure:
    """Finitely additive probability on the algebra of partition cells.

    ``head[i]`` is the mass of cell ``E_{i+1}``; every tail contributes
    ``c * rho**n`` to each cell ``E_n`` with ``n >= start``.  Cells beyond all
    support carry mass 0.
    """

    head: tuple[Fraction, ...]
    tails: tuple[GeometricTail, ...]
    label: str = ""

    def __post_init__(self) -> None:
        for i, h in enumerate(self.head):
            if not isinstance(h, Fraction):
                raise MeasureError(f"head entry {i + 1} is not a Fraction: {h!r}")
            if h < 0:
                raise NegativeMass(f"head entry {i + 1} is negative: {h}")
        for tail in self.tails:
            if not isinstance(tail, GeometricTail):
                raise MeasureError(f"not a GeometricTail: {tail!r}")
            if tail.start <= len(self.head):
                raise TailOverlapsHead(
                    f"tail starting at {tail.start} overlaps head of length {len(self.head)}"
                )
        total = sum((t.total for t in self.tails), sum(self.head, Fraction(0)))
        if total > 1:
            raise MassExceedsOne(total - 1)


def make_partition_measure(
    head: Iterable[int | str | Fraction],
    tails: Iterable[GeometricTail | Mapping[str, object] | Sequence[object]] = (),
    label: str = "",
) -> PartitionMeasure:
    """Validate and build a measure; head entries and tail fields may be given
    as ints, Fractions or exact ``"p/q"`` strings, tails as ``GeometricTail``,
    ``(c, rho, start)`` triples or ``{"c", "rho", "start"}`` mappings."""
    head_fracs = tuple(as_fraction(h) for h in head)
    built_tails = []
    for tail in tails:
        if isinstance(tail, GeometricTail):
            built_tails.append(tail)
        elif isinstance(tail, Mapping):
            built_tails.append(
                GeometricTail(as_fraction(tail["c"]), as_fraction(tail["rho"]), int(tail["start"]))
            )
        else:
            c, rho, start = tail
            built_tails.append(GeometricTail(as_fraction(c), as_fraction(rho), int(start)))
    return PartitionMeasure(head_fracs, tuple(built_tails), label)


def dyadic_tail_measure(coefficient: Fraction, label: str = "") -> PartitionMeasure:
    """Single-tail measure with mass ``coefficient / 2**n`` at every cell.

    Total mass is exactly the coefficient: 1 gives the countably additive
    stopping-time distribution of a fair coin, 1/2 its under-filled variant.
    """
    return make_partition_measure([], [(coefficient, HALF, 1)], label)


def mass(m: PartitionMeasure, n: int) -> Fraction:
    """Exact mass of cell ``E_n`` (0 beyond all support)."""
    if n < 1:
        raise MeasureError(f"cell index must be >= 1: {n}")
    if n <= len(m.head):
        return m.head[n - 1]
    return sum((t.mass_at(n) for t in m.tails), Fraction(0))


@lru_cache(maxsize=None)
def total_mass(m: PartitionMeasure) -> Fraction:
    """Exact total mass: head sum plus closed-form geometric tail sums."""
    return sum((t.total for t in m.tails), sum(m.head, Fraction(0)))


def deficiency(m: PartitionMeasure) -> Fraction:
    """How far the cell masses fall short of adding to 1 (0 iff countably additive)."""
    return 1 - total_mass(m)


def support_boundary(m: PartitionMeasure) -> int:
    """Least index B such that for all n > B every tail is active and the head is exhausted."""
    return max(len(m.head), max((t.start for t in m.tails), default=0))


def _tail_mixture(m: PartitionMeasure) -> dict[Fraction, Fraction]:
    """Aggregate tail coefficients per ratio; describes mass(n) for n > support_boundary."""
    mixture: dict[Fraction, Fraction] = {}
    for t in m.tails:
        mixture[t.ratio] = mixture.get(t.ratio, Fraction(0)) + t.coefficient
    return {rho: c for rho, c in mixture.items() if c != 0}


def cellwise_equal(a: PartitionMeasure, b: PartitionMeasure) -> bool:
    """True when a and b assign the same mass to every cell, whatever their
    head/tail representations.  Beyond both supports the mass functions are
    finite mixtures of geometrics, equal iff per-ratio coefficients agree."""
    bound = max(support_boundary(a), support_boundary(b))
    if any(mass(a, n) != mass(b, n) for n in range(1, bound + 1)):
        return False
    return _tail_mixture(a) == _tail_mixture(b)


def dominate(m: PartitionMeasure) -> PartitionMeasure:
    """Top up every cell by ``eps/2**n``, yielding a countably additive measure
    strictly above the input on every cell.

    Raises AlreadyCountablyAdditive when eps = 0: with nothing to
    redistribute, no measure can strictly exceed m on every cell.
    """
    eps = deficiency(m)
    if eps == 0:
        raise AlreadyCountablyAdditive(
            f"measure {m.label!r} is countably additive; nothing to dominate"
        )
    head = tuple(h + eps * HALF ** (i + 1) for i, h in enumerate(m.head))
    tails = m.tails + (GeometricTail(eps, HALF, len(m.head) + 1),)
    return PartitionMeasure(head, tails, label=f"{m.label or 'measure'}+gap-split")


def hstar(m: PartitionMeasure) -> PartitionMeasure:
    """Scale every cell by (1 + eps) and add ``eps**2 / 2**n``; total becomes
    exactly (1 - eps**2) + eps**2 = 1 and every cell strictly increases."""
    eps = deficiency(m)
    if eps == 0:
        raise AlreadyCountablyAdditive(
            f"measure {m.label!r} is countably additive; rescaling is vacuous"
        )
    scale = 1 + eps
    head = tuple(scale * h + eps**2 * HALF ** (i + 1) for i, h in enumerate(m.head))
    tails = tuple(
        GeometricTail(scale * t.coefficient, t.ratio, t.start) for t in m.tails
    ) + (GeometricTail(eps**2, HALF, len(m.head) + 1),)
    return PartitionMeasure(head, tails, label=f"{m.label or 'measure'}+rescaled")


@dataclass(frozen=True)
class CellComparison:
    index: int
    base_mass: Fraction
    candidate_mass: Fraction
    strict: bool


@dataclass(frozen=True)
class DominationReport:
    """Cell-by-cell and symbolic-tail comparison of two measures."""

    base_label: str
    candidate_label: str
    horizon: int
    cells: tuple[CellComparison, ...]
    tail_dominates: bool
    tail_witness: int | None
    base_deficiency: Fraction
    candidate_deficiency: Fraction
    dominates_everywhere: bool
    first_failure: int | None

    @property
    def base_countably_additive(self) -> bool:
        return self.base_deficiency == 0

    @property
    def candidate_countably_additive(self) -> bool:
        return self.candidate_deficiency == 0


def _tail_gap_sign_bound(gap: dict[Fraction, Fraction]) -> tuple[int, int]:
    """For D(n) = sum(d * rho**n), return (sign of D for all large n, index N
    from which that sign is guaranteed).  gap must be nonempty."""
    ratios = sorted(gap, reverse=True)
    lead_rho = ratios[0]
    lead = gap[lead_rho]
    rest = [(rho, abs(gap[rho])) for rho in ratios[1:]]
    if not rest:
        return (1 if lead > 0 else -1), 1
    # |lead| * lead_rho**n outweighs the rest once (rho2/lead_rho)**n is small.
    n = 1
    lead_term = abs(lead) * lead_rho
    rest_term = sum(c * rho for rho, c in rest)
    while lead_term <= rest_term:
        n += 1
        lead_term *= lead_rho
        rest_term = sum(c * rho**n for rho, c in rest)
    return (1 if lead > 0 else -1), n


def domination_report(
    base: PartitionMeasure, candidate: PartitionMeasure, horizon: int
) -> DominationReport:
    """Decide whether candidate strictly exceeds base on every cell.

    Cells up to ``horizon`` are compared explicitly and recorded; the rest are
    settled exactly by comparing the two geometric-tail mixtures (explicit
    checks up to a computed crossover index, the leading ratio's sign beyond).
    """
    if horizon < 1:
        raise MeasureError(f"horizon must be >= 1: {horizon}")
    cells = tuple(
        CellComparison(n, mass(base, n), mass(candidate, n), mass(candidate, n) > mass(base, n))
        for n in range(1, horizon + 1)
    )
    first_failure = next((c.index for c in cells if not c.strict), None)

    boundary = max(support_boundary(base), support_boundary(candidate), horizon)
    gap_mixture: dict[Fraction, Fraction] = dict(_tail_mixture(candidate))
    for rho, c in _tail_mixture(base).items():
        gap_mixture[rho] = gap_mixture.get(rho, Fraction(0)) - c
    gap_mixture = {rho: c for rho, c in gap_mixture.items() if c != 0}

    tail_dominates = True
    tail_witness: int | None = None
    if not gap_mixture:
        # Identical tails: gap is 0 on every far cell, never strict.
        tail_dominates = False
        tail_witness = boundary + 1
    else:
        sign, sign_from = _tail_gap_sign_bound(gap_mixture)
        for n in range(horizon + 1, max(boundary, sign_from) + 1):
            if mass(candidate, n) <= mass(base, n):
                tail_dominates = False
                tail_witness = n
                break
        if tail_dominates and sign < 0:
            tail_dominates = False
            tail_witness = max(boundary, sign_from) + 1

    dominates_everywhere = first_failure is None and tail_dominates
    if first_failure is None and not tail_dominates:
        first_failure = tail_witness
    return DominationReport(
        base_label=base.label,
        candidate_label=candidate.label,
        horizon=horizon,
        cells=cells,
        tail_dominates=tail_dominates,
        tail_witness=tail_witness,
        base_deficiency=deficiency(base),
        candidate_deficiency=deficiency(candidate),
        dominates_everywhere=dominates_everywhere,
        first_failure=first_failure,
    )


def measure_to_json(m: PartitionMeasure) -> dict:
    """Wire form: rationals as decimal-free "p/q" strings."""
    return {
        "label": m.label,
        "head": [format_rational(h) for h in m.head],
        "tails": [
            {"c": format_rational(t.coefficient), "rho": format_rational(t.ratio), "start": t.start}
            for t in m.tails
        ],
    }


def measure_from_json(data: Mapping[str, object]) -> PartitionMeasure:
    unknown = set(data) - {"label", "head", "tails"}
    if unknown:
        raise MeasureError(f"unknown measure key(s): {sorted(unknown)}")
    tails = data.get("tails", [])
    if not isinstance(tails, list):
        raise MeasureError("'tails' must be a list")
    for entry in tails:
        if not isinstance(entry, Mapping):
            raise MeasureError(f"tail entry must be an object: {entry!r}")
        extra = set(entry) - {"c", "rho", "start"}
        if extra:
            raise MeasureError(f"unknown tail key(s): {sorted(extra)}")
    head = data.get("head", [])
    if not isinstance(head, list):
        raise MeasureError("'head' must be a list")
    label = data.get("label", "")
    if not isinstance(label, str):
        raise MeasureError("'label' must be a string")
    return make_partition_measure(head, tails, label)
