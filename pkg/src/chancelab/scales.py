"""Eventual dominance on integer sequences, the scale recursion, and the
dominating-function construction over weighted dartboards.

Functions from the positive integers to themselves are represented as a finite
explicit prefix plus a polynomial tail, so the eventual-dominance order
``f < g  iff  f(n) < g(n) for all but finitely many n`` is decidable: tails
are compared by degree and coefficients up to an explicit crossover index, the
finitely many remaining arguments by direct evaluation.

The scale recursion builds the strictly increasing chain

    g_0 = 1,   g_{a+1} = f_a + g_a,   g_limit(n) = sum_{k=0..n} g_{b_k}(n)

over ordinal stages below omega*2, with the canonical increasing enumeration
``b_k = k`` at the limit.  The dartboard construction picks, coordinate by
coordinate, a quantile high enough that a randomly drawn member function stays
below it with chance greater than 1/2; the union-bound ledger backing that
claim is returned as an explicit certificate.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence, Union

from .rational import as_fraction, format_rational

__all__ = [
    "ScaleError",
    "TargetOutOfRange",
    "FamilyNotClosedForm",
    "HorizonMismatch",
    "OrdinalIndex",
    "SequenceFunction",
    "TabulatedSequenceFunction",
    "make_sequence_function",
    "constant_sequence",
    "identity_sequence",
    "seq_eval",
    "seq_add",
    "DominanceVerdict",
    "dominates",
    "PolynomialScaleFamily",
    "build_scale",
    "ScaleCheck",
    "ScaleVerificationReport",
    "verify_scale",
    "Dartboard",
    "make_dartboard",
    "dominating_function",
    "CoverageCertificate",
    "coverage",
    "sequence_function_to_json",
    "sequence_function_from_json",
    "dartboard_to_json",
    "dartboard_from_json",
]


class ScaleError(ValueError):
    """Base class for scale and dominance errors."""


class TargetOutOfRange(ScaleError):
    """Only ordinal stages below omega*2 are buildable at desk scale."""


class FamilyNotClosedForm(ScaleError):
    """The requested stage needs family members the supplied rule cannot produce."""


class HorizonMismatch(ScaleError):
    """A tabulated function was asked for values beyond its horizon."""


# ---------------------------------------------------------------------------
# Polynomial helpers (coefficients low-to-high, exact rationals).


def _poly_trim(coeffs: list[Fraction]) -> tuple[Fraction, ...]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def _poly_add(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += c
    return out


def _poly_sub(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    return _poly_add(a, [-c for c in b])


def _poly_mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca == 0:
            continue
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return out


def _poly_eval(coeffs: Sequence[Fraction], x: int | Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _poly_compose_minus1(coeffs: Sequence[Fraction]) -> list[Fraction]:
    """Coefficients of p(x - 1)."""
    acc: list[Fraction] = []
    for c in reversed(coeffs):
        acc = _poly_add(_poly_mul(acc, [Fraction(-1), Fraction(1)]), [c])
    return acc


def _power_sum_poly(p: int) -> list[Fraction]:
    """The polynomial S_p with S_p(m) = sum_{j=0..m} j**p (0**0 = 1).

    S_p has degree p + 1, so Lagrange interpolation through the p + 2 exact
    points m = 0..p+1 determines it.
    """
    points = []
    acc = 0
    for m in range(p + 2):
        acc += 1 if (m == 0 and p == 0) else m**p
        points.append((m, Fraction(acc)))
    result: list[Fraction] = []
    for i, (xi, yi) in enumerate(points):
        basis: list[Fraction] = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            basis = _poly_mul(basis, [Fraction(-xj), Fraction(1)])
            denom *= xi - xj
        result = _poly_add(result, [c * yi / denom for c in basis])
    return result


# ---------------------------------------------------------------------------
# Sequence functions.


@dataclass(frozen=True)
class SequenceFunction:
    """A function from positive integers to positive integers.

    ``prefix[i]`` is the value at ``n = i + 1``; for ``n > len(prefix)`` the
    value is the tail polynomial at n.  Tail coefficients may be rationals as
    long as every tail value is a positive integer (the limit stage of the
    scale recursion genuinely produces half-integer coefficients, e.g.
    ``(n + 1)(n + 2) / 2``).
    """

    prefix: tuple[int, ...]
    tail: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        for i, v in enumerate(self.prefix):
            if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                raise ScaleError(f"prefix value at n={i + 1} must be a positive integer: {v!r}")
        coeffs: list[Fraction] = []
        for c in self.tail:
            if isinstance(c, bool) or not isinstance(c, (int, Fraction)):
                raise ScaleError(f"tail coefficients must be exact rationals: {c!r}")
            coeffs.append(Fraction(c))
        tail = _poly_trim(coeffs)
        object.__setattr__(self, "tail", tail)
        if not tail:
            raise ScaleError("tail polynomial must be nonzero (functions are total)")
        lead = tail[-1]
        if lead <= 0:
            raise ScaleError("tail polynomial must have positive leading coefficient")
        length = len(self.prefix)
        degree = len(tail) - 1
        if degree == 0:
            positive_from = length + 1
        else:
            positive_from = int(sum(abs(c) for c in tail[:-1]) / lead) + 1
        # Integer values at degree+1 consecutive points force integrality
        # everywhere; positivity is explicit up to the crossover, leading-term
        # dominated after it.
        for n in range(length + 1, max(length + degree + 2, positive_from + 1)):
            value = _poly_eval(tail, n)
            if value.denominator != 1:
                raise ScaleError(f"tail value at n={n} is not an integer: {value}")
            if value < 1:
                raise ScaleError(f"tail value at n={n} is below 1: {value}")


@dataclass(frozen=True)
class TabulatedSequenceFunction:
    """Values on 1..horizon only; produced at limit stages and by the
    dartboard construction, where no closed tail is available."""

    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.values:
            raise ScaleError("a tabulated function needs at least one value")
        for i, v in enumerate(self.values):
            if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                raise ScaleError(f"value at n={i + 1} must be a positive integer: {v!r}")

    @property
    def horizon(self) -> int:
        return len(self.values)


AnySequence = Union[SequenceFunction, TabulatedSequenceFunction]


def make_sequence_function(
    prefix: Iterable[int], tail: Iterable[int | str | Fraction]
) -> SequenceFunction:
    return SequenceFunction(tuple(prefix), tuple(as_fraction(c) for c in tail))


def constant_sequence(value: int) -> SequenceFunction:
    return SequenceFunction((), (Fraction(value),))


def identity_sequence() -> SequenceFunction:
    return SequenceFunction((), (Fraction(0), Fraction(1)))


def seq_eval(f: AnySequence, n: int) -> int:
    """Value at n, by prefix lookup or tail evaluation."""
    if n < 1:
        raise ScaleError(f"argument must be >= 1: {n}")
    if isinstance(f, TabulatedSequenceFunction):
        if n > f.horizon:
            raise HorizonMismatch(f"tabulated out to {f.horizon}, asked for n={n}")
        return f.values[n - 1]
    if n <= len(f.prefix):
        return f.prefix[n - 1]
    return int(_poly_eval(f.tail, n))


def seq_add(f: AnySequence, g: AnySequence) -> AnySequence:
    """Pointwise sum; tabulated inputs clamp the result to their horizon."""
    if isinstance(f, TabulatedSequenceFunction) or isinstance(g, TabulatedSequenceFunction):
        horizon = min(
            h.horizon for h in (f, g) if isinstance(h, TabulatedSequenceFunction)
        )
        return TabulatedSequenceFunction(
            tuple(seq_eval(f, n) + seq_eval(g, n) for n in range(1, horizon + 1))
        )
    length = max(len(f.prefix), len(g.prefix))
    prefix = tuple(seq_eval(f, n) + seq_eval(g, n) for n in range(1, length + 1))
    return SequenceFunction(prefix, tuple(_poly_add(f.tail, g.tail)))


@dataclass(frozen=True)
class DominanceVerdict:
    """Outcome of an eventual-dominance comparison.

    When ``holds``, ``threshold`` is the least N with strict pointwise
    dominance at every n >= N, certified by the tail comparison plus the
    finitely many explicit checks below the crossover.
    """

    holds: bool
    threshold: int | None = None


def dominates(f: SequenceFunction, g: SequenceFunction) -> DominanceVerdict:
    """Decide whether f(n) < g(n) for all but finitely many n, exactly."""
    if not isinstance(f, SequenceFunction) or not isinstance(g, SequenceFunction):
        raise ScaleError("dominance verdicts need symbolic tails; tabulated functions support only range checks")
    gap = _poly_trim(_poly_sub(g.tail, f.tail))
    if not gap or gap[-1] < 0:
        # Equal tails agree infinitely often; a negative lead loses cofinally.
        return DominanceVerdict(False)
    lead = gap[-1]
    if len(gap) == 1:
        crossover = 1
    else:
        crossover = int(sum(abs(c) for c in gap[:-1]) / lead) + 1
    check_upto = max(crossover - 1, len(f.prefix), len(g.prefix))
    last_violation = 0
    for n in range(1, check_upto + 1):
        if seq_eval(f, n) >= seq_eval(g, n):
            last_violation = n
    return DominanceVerdict(True, last_violation + 1)


# ---------------------------------------------------------------------------
# Ordinal stages and the scale recursion.


_ORDINAL_RE = re.compile(r"^(?:(\d+)|w(?:\+(\d+))?)$")


@dataclass(frozen=True, order=True)
class OrdinalIndex:
    """The ordinal omega*a + b, for desk-scale stages below omega**2."""

    a: int
    b: int

    def __post_init__(self) -> None:
        if self.a < 0 or self.b < 0:
            raise ScaleError(f"ordinal components must be >= 0: ({self.a}, {self.b})")

    @classmethod
    def finite(cls, k: int) -> "OrdinalIndex":
        return cls(0, k)

    @classmethod
    def omega(cls) -> "OrdinalIndex":
        return cls(1, 0)

    @classmethod
    def from_string(cls, text: str) -> "OrdinalIndex":
        match = _ORDINAL_RE.match(text.strip())
        if match is None:
            raise ScaleError(f"cannot parse ordinal stage: {text!r} (use '3', 'w' or 'w+2')")
        if match.group(1) is not None:
            return cls(0, int(match.group(1)))
        return cls(1, int(match.group(2) or 0))

    @property
    def is_limit(self) -> bool:
        return self.b == 0 and self.a >= 1

    @property
    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def successor(self) -> "OrdinalIndex":
        return OrdinalIndex(self.a, self.b + 1)

    def __str__(self) -> str:
        if self.a == 0:
            return str(self.b)
        return "w" if self.b == 0 else f"w+{self.b}"


@dataclass(frozen=True)
class PolynomialScaleFamily:
    """Closed-form rule ``f_j(n) = sum over p, q of coeffs[p][q] * j**p * n**q``
    for every finite index j, with optional explicit overrides for an initial
    segment of indices.  Closed form in the index is what makes the limit
    stage symbolically summable."""

    coeffs: tuple[tuple[Fraction, ...], ...]
    exceptions: tuple[SequenceFunction, ...] = ()

    def member(self, j: int) -> SequenceFunction:
        if j < 0:
            raise ScaleError(f"family index must be >= 0: {j}")
        if j < len(self.exceptions):
            return self.exceptions[j]
        tail: list[Fraction] = []
        for p, ncoeffs in enumerate(self.coeffs):
            tail = _poly_add(tail, [c * Fraction(j) ** p for c in ncoeffs])
        return SequenceFunction((), tuple(_poly_trim(tail)))

    def __call__(self, index: OrdinalIndex) -> SequenceFunction:
        if index.a != 0:
            raise FamilyNotClosedForm(
                f"polynomial index rule defines only finite stages, asked for f_{index}"
            )
        return self.member(index.b)


ScaleFamily = Union[
    PolynomialScaleFamily,
    Callable[[OrdinalIndex], AnySequence],
    Sequence[AnySequence],
]


def _resolve_member(family: ScaleFamily, index: OrdinalIndex) -> AnySequence:
    if isinstance(family, PolynomialScaleFamily):
        return family(index)
    if callable(family):
        return family(index)
    if index.a != 0 or index.b >= len(family):
        raise FamilyNotClosedForm(
            f"family supplies only {len(family)} functions, asked for f_{index}"
        )
    return family[index.b]


def _limit_value(family: ScaleFamily, n: int) -> int:
    """The limit clause, evaluated verbatim: sum_{k=0..n} g_k(n) with the
    canonical enumeration of the finite stages."""
    g = 1  # g_0(n)
    total = g
    for k in range(1, n + 1):
        g += seq_eval(_resolve_member(family, OrdinalIndex.finite(k - 1)), n)
        total += g
    return total


def _symbolic_limit(family: PolynomialScaleFamily) -> SequenceFunction:
    """Closed form for the limit stage:

        g_w(n) = (n + 1) + sum_{j=0..n-1} (n - j) * f_j(n)

    The index sum over the polynomial part reduces to power-sum polynomials;
    exceptional members contribute their tails directly.  Values below the
    validity bound go into the prefix.
    """
    exc = family.exceptions
    poly: list[Fraction] = [Fraction(1), Fraction(1)]  # n + 1
    for j, fj in enumerate(exc):
        poly = _poly_add(poly, _poly_mul([Fraction(-j), Fraction(1)], fj.tail))
    start = len(exc)
    for p, ncoeffs in enumerate(family.coeffs):
        if all(c == 0 for c in ncoeffs):
            continue
        # sum_{j=start..n-1} (n - j) j**p
        #   = n * (S_p(n-1) - S_p(start-1)) - (S_{p+1}(n-1) - S_{p+1}(start-1))
        s_p = _power_sum_poly(p)
        s_p1 = _power_sum_poly(p + 1)
        shifted_p = _poly_sub(_poly_compose_minus1(s_p), [_poly_eval(s_p, start - 1)])
        shifted_p1 = _poly_sub(_poly_compose_minus1(s_p1), [_poly_eval(s_p1, start - 1)])
        bracket = _poly_sub(_poly_mul([Fraction(0), Fraction(1)], shifted_p), shifted_p1)
        poly = _poly_add(poly, _poly_mul(list(ncoeffs), bracket))
    valid_from = max([len(exc)] + [len(fj.prefix) for fj in exc]) + 1
    prefix = tuple(_limit_value(family, n) for n in range(1, valid_from))
    built = SequenceFunction(prefix, tuple(_poly_trim(poly)))
    for n in range(valid_from, valid_from + len(built.tail) + 2):
        if seq_eval(built, n) != _limit_value(family, n):
            raise ScaleError(
                f"limit-stage closed form disagrees with the recursion clause at n={n}"
            )
    return built


def build_scale(
    family: ScaleFamily, target: OrdinalIndex, *, horizon: int | None = None
) -> AnySequence:
    """Build the scale stage at ``target`` by the three recursion clauses.

    Below the limit the result is always symbolic.  At and above the limit a
    polynomial family yields a symbolic stage; an arbitrary callable family
    needs ``horizon`` and yields a tabulation; a finite list of functions
    cannot reach the limit at all.
    """
    if target.a >= 2:
        raise TargetOutOfRange(f"stages at or above omega*2 are not buildable: {target}")
    g: AnySequence = constant_sequence(1)
    if target.a == 0:
        for j in range(target.b):
            g = seq_add(_resolve_member(family, OrdinalIndex.finite(j)), g)
        return g
    if isinstance(family, PolynomialScaleFamily):
        g = _symbolic_limit(family)
    elif callable(family):
        if horizon is None:
            raise FamilyNotClosedForm(
                "limit stage over a black-box family rule needs a tabulation horizon"
            )
        g = TabulatedSequenceFunction(
            tuple(_limit_value(family, n) for n in range(1, horizon + 1))
        )
    else:
        raise FamilyNotClosedForm(
            "limit stage requested with only finitely many family functions supplied"
        )
    for j in range(target.b):
        g = seq_add(_resolve_member(family, OrdinalIndex(1, j)), g)
    return g


@dataclass(frozen=True)
class ScaleCheck:
    kind: str  # "stage-order" or "family-dominated"
    lower: OrdinalIndex
    upper: OrdinalIndex
    passed: bool
    threshold: int | None
    note: str = ""


@dataclass(frozen=True)
class ScaleVerificationReport:
    checks: tuple[ScaleCheck, ...]

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> tuple[ScaleCheck, ...]:
        return tuple(c for c in self.checks if not c.passed)


def _check_below(
    lo: AnySequence, hi: AnySequence, claim_from: int | None
) -> tuple[bool, int | None, str]:
    if isinstance(lo, SequenceFunction) and isinstance(hi, SequenceFunction):
        verdict = dominates(lo, hi)
        passed = verdict.holds and (claim_from is None or verdict.threshold <= claim_from)
        return passed, verdict.threshold, "symbolic"
    horizon = min(
        h.horizon for h in (lo, hi) if isinstance(h, TabulatedSequenceFunction)
    )
    start = claim_from if claim_from is not None else 1
    if start > horizon:
        return False, None, f"horizon {horizon} too small to reach n={start}"
    ok = all(seq_eval(lo, n) < seq_eval(hi, n) for n in range(start, horizon + 1))
    threshold: int | None = None
    if ok:
        threshold = start
        while threshold > 1 and seq_eval(lo, threshold - 1) < seq_eval(hi, threshold - 1):
            threshold -= 1
    return ok, threshold, f"checked n={start}..{horizon}"


def verify_scale(
    family: ScaleFamily, built: Sequence[tuple[OrdinalIndex, AnySequence]]
) -> ScaleVerificationReport:
    """Check the two chain properties of a built scale: stages strictly
    increase with the ordinal index, and each family member is dominated by
    every later stage.  Comparisons into a limit stage claim strictness from
    the member's position in the canonical enumeration onward."""
    checks: list[ScaleCheck] = []
    ordered = sorted(built, key=lambda pair: pair[0])
    for i in range(len(ordered)):
        alpha, g_alpha = ordered[i]
        for j in range(i + 1, len(ordered)):
            beta, g_beta = ordered[j]
            if alpha == beta:
                continue
            crossing_limit = alpha.a == 0 and beta.a >= 1
            claim = alpha.b + 1 if crossing_limit else None
            passed, threshold, note = _check_below(g_alpha, g_beta, claim)
            checks.append(ScaleCheck("stage-order", alpha, beta, passed, threshold, note))
            f_alpha = _resolve_member(family, alpha)
            claim_f = alpha.b + 2 if crossing_limit else None
            passed, threshold, note = _check_below(f_alpha, g_beta, claim_f)
            checks.append(ScaleCheck("family-dominated", alpha, beta, passed, threshold, note))
    return ScaleVerificationReport(tuple(checks))


# ---------------------------------------------------------------------------
# Dartboards and the coordinate-quantile dominating function.


@dataclass(frozen=True)
class Dartboard:
    """A finitely supported random function: weighted members, weights > 0
    summing to exactly 1."""

    members: tuple[AnySequence, ...]
    weights: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if not self.members:
            raise ScaleError("a dartboard needs at least one member")
        if len(self.members) != len(self.weights):
            raise ScaleError("members and weights must align")
        for w in self.weights:
            if not isinstance(w, Fraction) or w <= 0:
                raise ScaleError(f"weights must be positive Fractions: {w!r}")
        if sum(self.weights, Fraction(0)) != 1:
            raise ScaleError("weights must sum to exactly 1")


def make_dartboard(
    members: Iterable[AnySequence], weights: Iterable[int | str | Fraction]
) -> Dartboard:
    return Dartboard(tuple(members), tuple(as_fraction(w) for w in weights))


def dominating_function(board: Dartboard, horizon: int) -> TabulatedSequenceFunction:
    """Coordinate-wise quantile construction: at each n take the least K
    whose cumulative chance exceeds 1 - 2**-(n+1) and output K + 1, so the
    chance of meeting or exceeding the output is below 2**-(n+1), exactly."""
    if horizon < 1:
        raise ScaleError(f"horizon must be >= 1: {horizon}")
    values = []
    for n in range(1, horizon + 1):
        threshold = 1 - Fraction(1, 2 ** (n + 1))
        marginal: dict[int, Fraction] = {}
        for member, w in zip(board.members, board.weights):
            v = seq_eval(member, n)
            marginal[v] = marginal.get(v, Fraction(0)) + w
        cumulative = Fraction(0)
        quantile = None
        for v in sorted(marginal):
            cumulative += marginal[v]
            if cumulative > threshold:
                quantile = v
                break
        assert quantile is not None  # cumulative reaches 1 > threshold
        values.append(quantile + 1)
    return TabulatedSequenceFunction(tuple(values))


@dataclass(frozen=True)
class CoverageCertificate:
    """Union-bound ledger behind a coverage claim.

    ``coverage >= 1 - sum(exceedance)`` always; when every per-coordinate
    exceedance is below its dyadic budget 2**-(n+1), the chain continues
    ``> 1 - sum(budgets) = 1/2 + 2**-(horizon+1)``.
    """

    horizon: int
    exceedance: tuple[Fraction, ...]
    exceedance_sum: Fraction
    union_lower_bound: Fraction
    quantile_guarantee: tuple[bool, ...]
    dyadic_lower_bound: Fraction
    coverage: Fraction

    @property
    def all_quantiles_within_budget(self) -> bool:
        return all(self.quantile_guarantee)

    def chain_lines(self) -> list[str]:
        lines = [
            f"coverage = {format_rational(self.coverage)}",
            f"coverage >= 1 - sum_n Ch(g(n) >= f(n)) = {format_rational(self.union_lower_bound)}",
        ]
        if self.all_quantiles_within_budget:
            lines.append(
                "every Ch(g(n) >= f(n)) < 2^-(n+1), so coverage > "
                f"{format_rational(self.dyadic_lower_bound)} > 1/2"
            )
        return lines


def coverage(
    board: Dartboard, f: AnySequence, horizon: int
) -> tuple[Fraction, CoverageCertificate]:
    """Exact chance that a board draw stays strictly below f on 1..horizon,
    with the union-bound certificate."""
    if horizon < 1:
        raise ScaleError(f"horizon must be >= 1: {horizon}")
    if isinstance(f, TabulatedSequenceFunction) and f.horizon < horizon:
        raise HorizonMismatch(
            f"dominating function tabulated out to {f.horizon}, coverage horizon is {horizon}"
        )
    covered = Fraction(0)
    for member, w in zip(board.members, board.weights):
        if all(seq_eval(member, n) < seq_eval(f, n) for n in range(1, horizon + 1)):
            covered += w
    exceedance = []
    for n in range(1, horizon + 1):
        bound_mass = sum(
            (w for member, w in zip(board.members, board.weights)
             if seq_eval(member, n) >= seq_eval(f, n)),
            Fraction(0),
        )
        exceedance.append(bound_mass)
    exceedance_sum = sum(exceedance, Fraction(0))
    certificate = CoverageCertificate(
        horizon=horizon,
        exceedance=tuple(exceedance),
        exceedance_sum=exceedance_sum,
        union_lower_bound=1 - exceedance_sum,
        quantile_guarantee=tuple(
            e < Fraction(1, 2 ** (n + 1)) for n, e in enumerate(exceedance, start=1)
        ),
        dyadic_lower_bound=Fraction(1, 2) + Fraction(1, 2 ** (horizon + 1)),
        coverage=covered,
    )
    return covered, certificate


# ---------------------------------------------------------------------------
# Wire formats.


def sequence_function_to_json(f: AnySequence) -> dict:
    if isinstance(f, TabulatedSequenceFunction):
        return {"values": list(f.values)}
    tail = [
        c.numerator if c.denominator == 1 else format_rational(c) for c in f.tail
    ]
    return {"prefix": list(f.prefix), "tail": tail}


def sequence_function_from_json(data: Mapping[str, object]) -> AnySequence:
    if "values" in data:
        unknown = set(data) - {"values"}
        if unknown:
            raise ScaleError(f"unknown sequence-function key(s): {sorted(unknown)}")
        return TabulatedSequenceFunction(tuple(data["values"]))
    unknown = set(data) - {"prefix", "tail"}
    if unknown:
        raise ScaleError(f"unknown sequence-function key(s): {sorted(unknown)}")
    return make_sequence_function(data.get("prefix", []), data.get("tail", []))


def dartboard_to_json(board: Dartboard) -> dict:
    return {
        "members": [sequence_function_to_json(m) for m in board.members],
        "weights": [format_rational(w) for w in board.weights],
    }


def dartboard_from_json(data: Mapping[str, object]) -> Dartboard:
    unknown = set(data) - {"members", "weights"}
    if unknown:
        raise ScaleError(f"unknown dartboard key(s): {sorted(unknown)}")
    members = [sequence_function_from_json(m) for m in data.get("members", [])]
    return make_dartboard(members, data.get("weights", []))
