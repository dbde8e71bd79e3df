"""Moduli components of semistable sheaves of uniform rank on a tree curve.

For a fixed rank s >= 1 and total degree d, the candidate components are
indexed by integer degree tuples (d_1, ..., d_gamma) summing to d.  A
tuple belongs to the catalog exactly when, for every separating subcurve
A_j of an ordered decomposition, the partial sum sigma_j = sum of d_i
over A_j lies strictly inside an interval of width exactly s:

    wrank(O_Aj) d - s defect(O_Aj)  <  sigma_j  <  wrank(O_Aj) d + s (1 - defect(O_Aj)).

At the canonical polarization every defect is 1/2 and the bounds collapse
to wrank(O_Aj) d -+ s/2.

Enumeration uses the triangular structure of the decomposition: component
in position i lies in A_j only for i <= j, and position j itself always
does.  So the incidence matrix of {position in A_j} is lower triangular
with unit diagonal, each sigma_j ranges over at most s integers, and the
choice of (sigma_1, ..., sigma_{gamma-1}) determines the degrees by back
substitution, the root receiving the remainder.  The catalog is the same
for every root choice; `catalog_invariance_check` re-derives that fact.

The builders construct one small-slope catalog member directly (without
enumeration) whenever their hypotheses hold, always at the canonical
polarization: a three-case general construction, a stepwise recurrence
for chains picking the smallest feasible prefix sum, and a grip-weighted
assignment for combs.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .curve import CurveClass, NodalCurve
from .ordering import OrderedDecomposition, order_components
from .polarization import Polarization, canonical, delta_structure_sheaf

DEFAULT_WITNESS_MULTIPLIER = Fraction(1001, 1000)


class HypothesisError(ValueError):
    """Raised when a construction's hypotheses fail; names the inequality."""


@dataclass(frozen=True, order=True)
class ComponentTuple:
    """Uniform rank together with one degree per component (id order)."""

    rank: int
    degrees: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rank < 1:
            raise ValueError(f"rank must be >= 1, got {self.rank}")
        object.__setattr__(self, "degrees", tuple(int(x) for x in self.degrees))

    @property
    def total(self) -> int:
        return sum(self.degrees)


@dataclass(frozen=True)
class StabilityRow:
    j: int
    subcurve: frozenset[int]
    node: int
    lower: Fraction
    partial_sum: int
    upper: Fraction
    ok: bool
    slack_lower: Fraction
    slack_upper: Fraction


@dataclass(frozen=True)
class StabilityReport:
    passed: bool
    rows: tuple[StabilityRow, ...]


@dataclass(frozen=True)
class RootMismatch:
    root: int
    missing: tuple[ComponentTuple, ...]
    extra: tuple[ComponentTuple, ...]


@dataclass(frozen=True)
class InvarianceReport:
    passed: bool
    catalog: tuple[ComponentTuple, ...]
    mismatches: tuple[RootMismatch, ...]


@dataclass(frozen=True)
class BuilderResult:
    """Construction outcome: which case fired and the tuple it produced."""

    case: str
    tuple: ComponentTuple


@dataclass(frozen=True)
class Witness:
    """Perturbation aimed at the binding stability bound of a tuple."""

    epsilon: tuple[Fraction, ...]
    j: int
    side: str


def _interval(
    curve: NodalCurve,
    omega: Polarization,
    subcurve: frozenset[int],
    s: int,
    d: int,
) -> tuple[Fraction, Fraction]:
    wr = omega.subcurve_weight(subcurve)
    defect = delta_structure_sheaf(curve, omega, subcurve)
    lower = wr * d - s * defect
    upper = wr * d + s * (1 - defect)
    return lower, upper


def stability_conditions(
    curve: NodalCurve,
    omega: Polarization,
    deco: OrderedDecomposition,
    ctuple: ComponentTuple,
) -> StabilityReport:
    """Evaluate every per-subcurve degree interval condition for a tuple."""
    if len(ctuple.degrees) != curve.gamma:
        raise ValueError(
            f"tuple has {len(ctuple.degrees)} degrees for {curve.gamma} components"
        )
    if deco.gamma != curve.gamma:
        raise ValueError("decomposition does not match the curve")
    s = ctuple.rank
    d = ctuple.total
    rows = []
    passed = True
    for j, (A, p) in enumerate(zip(deco.subcurves, deco.separating_nodes), start=1):
        lower, upper = _interval(curve, omega, A, s, d)
        sigma = sum(ctuple.degrees[i - 1] for i in A)
        ok = lower < sigma < upper
        passed = passed and ok
        rows.append(
            StabilityRow(
                j=j,
                subcurve=A,
                node=p,
                lower=lower,
                partial_sum=sigma,
                upper=upper,
                ok=ok,
                slack_lower=sigma - lower,
                slack_upper=upper - sigma,
            )
        )
    return StabilityReport(passed=passed, rows=tuple(rows))


def enumerate_components(
    curve: NodalCurve,
    omega: Polarization,
    deco: OrderedDecomposition,
    s: int,
    d: int,
) -> list[ComponentTuple]:
    """All degree tuples meeting every interval condition, sorted.

    Walks the integer points of each sigma_j interval and back-substitutes
    through the unit-triangular incidence of the decomposition; the root
    absorbs the remaining degree.  Each solution appears exactly once.
    """
    if s < 1:
        raise ValueError(f"rank must be >= 1, got {s}")
    if deco.gamma != curve.gamma:
        raise ValueError("decomposition does not match the curve")
    gamma = curve.gamma
    order = deco.order
    position = {comp: idx for idx, comp in enumerate(order, start=1)}

    ranges = []
    preceding: list[list[int]] = []
    for j, A in enumerate(deco.subcurves, start=1):
        lower, upper = _interval(curve, omega, A, s, d)
        ranges.append(range(math.floor(lower) + 1, math.ceil(upper)))
        inside = sorted(position[c] for c in A)
        if inside[-1] != j:
            raise ValueError(f"decomposition is not triangular at position {j}")
        preceding.append(inside[:-1])

    catalog = []
    for sigmas in itertools.product(*ranges):
        by_position = [0] * (gamma + 1)
        for j, sigma in enumerate(sigmas, start=1):
            by_position[j] = sigma - sum(by_position[i] for i in preceding[j - 1])
        by_position[gamma] = d - sum(by_position[1:gamma])
        degrees = [0] * gamma
        for idx, comp in enumerate(order, start=1):
            degrees[comp - 1] = by_position[idx]
        catalog.append(ComponentTuple(rank=s, degrees=tuple(degrees)))
    catalog.sort()
    return catalog


def small_slope_filter(
    catalog: list[ComponentTuple], s: int
) -> list[ComponentTuple]:
    """Keep the tuples with every degree in 1..s."""
    return [t for t in catalog if all(0 < x <= s for x in t.degrees)]


def _perturbation_coefficient(curve: NodalCurve, s: int, d: int) -> int:
    # shift of both interval bounds per unit of weight moved into A_j
    return d + s * (1 - curve.arithmetic_genus())


def robustness_radius(
    curve: NodalCurve,
    omega: Polarization,
    deco: OrderedDecomposition,
    ctuple: ComponentTuple,
) -> Fraction | None:
    """Guaranteed sup-norm perturbation bound preserving all conditions.

    Any valid perturbation of omega with sup norm below the radius keeps
    every interval condition satisfied.  None means unbounded: either no
    conditions exist (gamma = 1) or the bounds do not move at all because
    d + s(1 - p_a) = 0.  The radius is a sound lower bound, not the exact
    persistence boundary.
    """
    report = stability_conditions(curve, omega, deco, ctuple)
    if not report.passed:
        bad = next(r for r in report.rows if not r.ok)
        raise HypothesisError(
            f"tuple fails condition {bad.j}: "
            f"{bad.lower} < {bad.partial_sum} < {bad.upper} is false"
        )
    coeff = _perturbation_coefficient(curve, ctuple.rank, ctuple.total)
    if not report.rows or coeff == 0:
        return None
    return min(
        min(r.slack_lower, r.slack_upper) / (abs(coeff) * len(r.subcurve))
        for r in report.rows
    )


def binding_witness(
    curve: NodalCurve,
    omega: Polarization,
    deco: OrderedDecomposition,
    ctuple: ComponentTuple,
    multiplier: Fraction = DEFAULT_WITNESS_MULTIPLIER,
) -> Witness:
    """Perturbation that breaks the binding condition just past the radius.

    Concentrates weight on the argmin subcurve A_j (balanced on the
    complement so the entries sum to 0) with the sign that pushes the
    shifted interval over the binding bound.  ``multiplier`` scales the
    per-component magnitude relative to the binding slack/coefficient
    ratio; any value above 1 produces a violation.
    """
    report = stability_conditions(curve, omega, deco, ctuple)
    if not report.passed:
        raise HypothesisError("witness needs a tuple passing all conditions")
    coeff = _perturbation_coefficient(curve, ctuple.rank, ctuple.total)
    if not report.rows or coeff == 0:
        raise HypothesisError("no binding bound: the radius is unbounded")

    def ratio(row: StabilityRow) -> Fraction:
        return min(row.slack_lower, row.slack_upper) / (abs(coeff) * len(row.subcurve))

    binding = min(report.rows, key=lambda r: (ratio(r), r.j))
    side = "lower" if binding.slack_lower <= binding.slack_upper else "upper"
    magnitude = multiplier * ratio(binding)
    # lower bound rises (fails) when coeff * shift > 0, upper falls when < 0
    direction = 1 if coeff > 0 else -1
    if side == "upper":
        direction = -direction
    inside = direction * magnitude
    a = len(binding.subcurve)
    outside = -inside * a / (curve.gamma - a)
    epsilon = tuple(
        inside if i in binding.subcurve else outside for i in curve.component_ids
    )
    return Witness(epsilon=epsilon, j=binding.j, side=side)


def catalog_invariance_check(
    curve: NodalCurve, omega: Polarization, s: int, d: int
) -> InvarianceReport:
    """Enumerate with every root choice and compare the catalogs."""
    curve.require_compact_type()
    baseline: tuple[ComponentTuple, ...] | None = None
    mismatches = []
    for root in curve.component_ids:
        deco = order_components(curve, root)
        catalog = tuple(enumerate_components(curve, omega, deco, s, d))
        if baseline is None:
            baseline = catalog
            continue
        if catalog != baseline:
            base_set, this_set = set(baseline), set(catalog)
            mismatches.append(
                RootMismatch(
                    root=root,
                    missing=tuple(sorted(base_set - this_set)),
                    extra=tuple(sorted(this_set - base_set)),
                )
            )
    assert baseline is not None
    return InvarianceReport(
        passed=not mismatches, catalog=baseline, mismatches=tuple(mismatches)
    )


# -- constructive builders (canonical polarization) --------------------


def build_small_slope_tuple(curve: NodalCurve, s: int, d: int) -> BuilderResult:
    """Three-case direct construction of a small-slope catalog member.

    Case a:  gamma <= d <= s/2 + 1; the last component takes d-gamma+1,
             the rest take 1.
    Case b:  s/2 + 1 < d <= s with s >= 2(gamma-1) and some component
             satisfying eta_i d >= s/2; the smallest such id takes
             d-gamma+1, the rest take 1.
    Case c:  s/2 + 1 < d <= s*gamma with s >= 2(gamma-1), writing
             d = n*gamma + m: needs eta_i d within s/(2(gamma-1)) of the
             central band around n for all but at most one component;
             the m smallest ids take n+1, the rest take n.

    Returns the first case that applies; raises HypothesisError when
    none does.
    """
    curve.require_compact_type()
    if s < 1:
        raise ValueError(f"rank must be >= 1, got {s}")
    gamma = curve.gamma
    half = Fraction(s, 2)

    if gamma <= d <= half + 1:
        degrees = [1] * gamma
        degrees[-1] = d - gamma + 1
        return BuilderResult("a", ComponentTuple(s, tuple(degrees)))

    eta = canonical(curve)
    if half + 1 < d <= s and half >= gamma - 1:
        heavy = [i for i in curve.component_ids if eta[i] * d >= half]
        if heavy:
            degrees = [1] * gamma
            degrees[heavy[0] - 1] = d - gamma + 1
            return BuilderResult("b", ComponentTuple(s, tuple(degrees)))

    if gamma >= 2 and half + 1 < d <= s * gamma and half >= gamma - 1:
        n, m = divmod(d, gamma)
        band = Fraction(s, 2 * (gamma - 1))
        off_band = [
            i for i in curve.component_ids if not (n + 1 - band < eta[i] * d < n + band)
        ]
        if len(off_band) <= 1:
            degrees = [n + 1 if i <= m else n for i in curve.component_ids]
            return BuilderResult("c", ComponentTuple(s, tuple(degrees)))

    raise HypothesisError(
        f"no construction case applies for rank {s}, degree {d} on this curve"
    )


def _path_order(curve: NodalCurve) -> list[int]:
    if curve.gamma == 1:
        return [1]
    adj = curve.adjacency()
    ends = [i for i in curve.component_ids if len(adj[i]) == 1]
    start = min(ends)
    path = [start]
    prev = None
    while len(path) < curve.gamma:
        nxt = [w for w, _ in adj[path[-1]] if w != prev]
        prev = path[-1]
        path.append(nxt[0])
    return path


def build_chain_tuple(curve: NodalCurve, s: int, d: int) -> ComponentTuple:
    """Stepwise construction along a chain, smallest feasible sums first.

    At each position along the path the running degree sum must exceed
    the previous one, leave at least 1 for every later component, and lie
    strictly inside the canonical interval narrowed by the number of
    components still to come.  The smallest integer satisfying all of it
    is chosen; every degree then lands in 1..d-1.
    """
    shape = curve.classify()
    if shape not in (CurveClass.CHAIN, CurveClass.CHAIN_AND_COMB):
        raise HypothesisError(f"curve is not a chain (classified {shape.value})")
    gamma = curve.gamma
    if s < 2 * (gamma - 1):
        raise HypothesisError(f"rank {s} < 2(gamma-1) = {2 * (gamma - 1)}")
    if not gamma <= d <= s:
        raise HypothesisError(f"degree {d} outside gamma <= d <= s = [{gamma}, {s}]")

    eta = canonical(curve)
    path = _path_order(curve)
    degrees = [0] * gamma
    running = 0
    eta_prefix = Fraction(0)
    for j in range(1, gamma):
        eta_prefix += eta[path[j - 1]]
        lo = max(running + 1, math.floor(d * eta_prefix - Fraction(s, 2)) + 1)
        hi = min(
            d - (gamma - j),
            math.ceil(d * eta_prefix + Fraction(s, 2) - (gamma - j - 1)) - 1,
        )
        if lo > hi:
            raise HypothesisError(
                f"no integer prefix sum at position {j}: need {lo} <= x <= {hi}"
            )
        degrees[path[j - 1] - 1] = lo - running
        running = lo
    degrees[path[gamma - 1] - 1] = d - running
    return ComponentTuple(s, tuple(degrees))


def build_comb_tuple(curve: NodalCurve, s: int, d: int) -> ComponentTuple:
    """Grip-rooted construction for combs.

    When some component already wants more than half the rank's worth of
    degree (eta_j d >= s/2 + 1) the general case-b construction applies
    verbatim; otherwise every tooth takes 1 and the grip the rest.
    """
    shape = curve.classify()
    if shape not in (CurveClass.COMB, CurveClass.CHAIN_AND_COMB):
        raise HypothesisError(f"curve is not a comb (classified {shape.value})")
    gamma = curve.gamma
    if s < 2 * (gamma - 1):
        raise HypothesisError(f"rank {s} < 2(gamma-1) = {2 * (gamma - 1)}")
    if not gamma <= d <= s:
        raise HypothesisError(f"degree {d} outside gamma <= d <= s = [{gamma}, {s}]")

    eta = canonical(curve)
    if any(eta[i] * d >= Fraction(s, 2) + 1 for i in curve.component_ids):
        return build_small_slope_tuple(curve, s, d).tuple
    grip = curve.grip()
    degrees = [1] * gamma
    degrees[grip - 1] = d - gamma + 1
    return ComponentTuple(s, tuple(degrees))
