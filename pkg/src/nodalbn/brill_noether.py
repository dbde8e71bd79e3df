"""Brill-Noether numbers, bounds, and nonemptiness certificates.

The expected dimension for rank r, degree d and k sections on a curve of
arithmetic genus p_a is

    beta = r^2 (p_a - 1) + 1 - k (k - d + r (p_a - 1)),

and the certification pipeline realizes it as an exact sum: a moduli
component of rank-s stable bundles of dimension s^2 (p_a - 1) + 1, plus a
Grassmannian fiber of dimension k (h1 - k) with h1 = d + s (p_a - 1),
where r = s + k.  The identity

    beta = [s^2 (p_a - 1) + 1] + k (h1 - k)

is an algebraic fact for all integer inputs; a certificate additionally
witnesses the hypotheses that make the count meaningful: a compact-type
curve, a polarization passing the goodness proxy, k <= 1 + s(g_i - 1) on
every component, and a small-slope degree tuple in the rank-s catalog.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .components import (
    ComponentTuple,
    enumerate_components,
    small_slope_filter,
)
from .curve import NodalCurve
from .ordering import order_components
from .polarization import Polarization, PolarizationError, canonical, goodness_proxy


@dataclass(frozen=True)
class Verdict:
    ok: bool
    failures: tuple[str, ...] = ()


@dataclass(frozen=True)
class ComponentBound:
    component: int
    bound: Fraction
    ok: bool


@dataclass(frozen=True)
class ChecklistItem:
    name: str
    ok: bool
    detail: str


@dataclass(frozen=True)
class BNCertificate:
    """Machine-checkable record of a nonempty Brill-Noether component."""

    gamma: int
    genera: tuple[int, ...]
    arithmetic_genus: int
    weights: tuple[Fraction, ...]
    s: int
    k: int
    d: int
    r: int
    degree_tuple: ComponentTuple
    checklist: tuple[ChecklistItem, ...]
    beta: int
    moduli_dim: int
    h1_dual: int
    fiber_dim: int
    identity_ok: bool


@dataclass(frozen=True)
class CertificationFailure:
    """Named hypothesis failures; no certificate was produced."""

    checklist: tuple[ChecklistItem, ...]

    @property
    def failed(self) -> tuple[ChecklistItem, ...]:
        return tuple(item for item in self.checklist if not item.ok)


@dataclass(frozen=True)
class ScanRow:
    shape: str
    gamma: int
    genera: tuple[int, ...]
    s: int
    d: int
    k: int
    certified: bool
    beta: int

    @property
    def status(self) -> str:
        return "CERTIFIED" if self.certified else "OPEN"


def bn_number(pa: int, r: int, d: int, k: int) -> int:
    """Expected dimension r^2(p_a-1) + 1 - k(k - d + r(p_a-1))."""
    return r * r * (pa - 1) + 1 - k * (k - d + r * (pa - 1))


def expected_codim(
    omega: Polarization, multirank: Sequence[int], d: int, k: int, pa: int
) -> Fraction:
    """k (k - d + wrank (p_a - 1)) with wrank = sum w_i r_i, exact."""
    if len(multirank) != len(omega):
        raise ValueError(
            f"multirank has {len(multirank)} entries for {len(omega)} weights"
        )
    wr = sum((w * r for w, r in zip(omega.weights, multirank)), Fraction(0))
    return k * (k - d + wr * (pa - 1))


def necessary_conditions(
    omega: Polarization, multirank: Sequence[int], d: int, k: int
) -> Verdict:
    """Degree conditions forced by k independent sections."""
    if k < 1:
        raise ValueError(f"section count k must be >= 1, got {k}")
    if len(multirank) != len(omega):
        raise ValueError(
            f"multirank has {len(multirank)} entries for {len(omega)} weights"
        )
    failures = []
    if d < 0:
        failures.append(f"total degree {d} is negative")
    wr = sum((w * r for w, r in zip(omega.weights, multirank)), Fraction(0))
    if k < wr and d <= 0:
        failures.append(f"k = {k} < weighted rank {wr} forces degree > 0, got {d}")
    return Verdict(ok=not failures, failures=tuple(failures))


def bgn_bounds(pa: int, r: int, d: int, k: int) -> Verdict:
    """Existence bounds for rank r, degree d, k sections at genus p_a."""
    if r < 2:
        raise ValueError(f"rank must be >= 2, got {r}")
    if k < 1:
        raise ValueError(f"section count k must be >= 1, got {k}")
    failures = []
    if d <= 0:
        failures.append(f"degree {d} must be positive")
    if k >= r:
        failures.append(f"sections k = {k} must stay below rank {r}")
    if r > d + (r - k) * pa:
        failures.append(f"rank bound fails: {r} > {d} + ({r}-{k})*{pa} = {d + (r - k) * pa}")
    return Verdict(ok=not failures, failures=tuple(failures))


def per_component_bgn(
    r: int, k: int, degrees: Sequence[int], genera: Sequence[int]
) -> tuple[ComponentBound, ...]:
    """Per-component bound k <= (d_i + r(g_i - 1)) / g_i, exact rationals."""
    if len(degrees) != len(genera):
        raise ValueError(
            f"{len(degrees)} degrees against {len(genera)} genus values"
        )
    out = []
    for i, (d_i, g_i) in enumerate(zip(degrees, genera), start=1):
        bound = Fraction(d_i + r * (g_i - 1), g_i)
        out.append(ComponentBound(component=i, bound=bound, ok=k <= bound))
    return tuple(out)


def alpha_range(r: int, d: int, k: int) -> tuple[Fraction, Fraction]:
    """Open interval (0, d/(r-k)) of admissible coherent-system weights."""
    if not 1 <= k < r:
        raise ValueError(f"need 1 <= k < r, got k = {k}, r = {r}")
    if d <= 0:
        raise ValueError(f"degree must be positive, got {d}")
    return Fraction(0), Fraction(d, r - k)


def coherent_slope(
    wrank: Fraction, wdeg: Fraction, k: int, alpha: Fraction
) -> Fraction:
    """Slope wdeg/wrank shifted by alpha*k/wrank."""
    if wrank <= 0:
        raise ValueError(f"weighted rank must be positive, got {wrank}")
    return (wdeg + Fraction(alpha) * k) / wrank


@functools.lru_cache(maxsize=4096)
def _small_slope_catalog(
    curve: NodalCurve, omega: Polarization, s: int, d: int
) -> tuple[ComponentTuple, ...]:
    # scans revisit the same (curve, s, d) cell for every k
    deco = order_components(curve, curve.gamma)
    return tuple(small_slope_filter(enumerate_components(curve, omega, deco, s, d), s))


def certify_bn_component(
    curve: NodalCurve, omega: Polarization, s: int, k: int, d: int
) -> BNCertificate | CertificationFailure:
    """Certify a nonempty Brill-Noether locus of rank r = s + k.

    Hard errors (exceptions): curve not of compact type, or the
    polarization failing the goodness proxy.  Hypothesis failures (the
    per-component k bound, or no small-slope tuple at rank s and degree
    d) return a failure report naming each failed item.
    """
    curve.require_compact_type()
    if s < 1:
        raise ValueError(f"rank s must be >= 1, got {s}")
    if k < 1:
        raise ValueError(f"section count k must be >= 1, got {k}")
    good = goodness_proxy(curve, omega)
    if not good.passed:
        bad = [row for row in good.splits if not row.ok]
        raise PolarizationError(
            "polarization fails the goodness proxy at node(s) "
            + ", ".join(f"{row.node} (defect {row.defect})" for row in bad)
        )

    checklist = [
        ChecklistItem("compact_type", True, f"tree with {curve.gamma} components"),
        ChecklistItem(
            "goodness_proxy",
            True,
            "every one-node split defect strictly between 0 and 1",
        ),
    ]

    k_bound_ok = True
    details = []
    for i in curve.component_ids:
        cap = 1 + s * (curve.genus(i) - 1)
        ok = k <= cap
        k_bound_ok = k_bound_ok and ok
        if not ok:
            details.append(f"component {i}: k = {k} > 1 + s(g-1) = {cap}")
    checklist.append(
        ChecklistItem(
            "section_bound",
            k_bound_ok,
            "; ".join(details) if details else f"k = {k} <= 1 + s(g_i - 1) on every component",
        )
    )

    catalog = _small_slope_catalog(curve, omega, s, d)
    tuple_ok = bool(catalog)
    checklist.append(
        ChecklistItem(
            "small_slope_tuple",
            tuple_ok,
            f"first of {len(catalog)} small-slope tuples: {catalog[0].degrees}"
            if tuple_ok
            else f"no rank-{s} degree-{d} tuple with every degree in 1..{s}",
        )
    )
    if not (k_bound_ok and tuple_ok):
        return CertificationFailure(checklist=tuple(checklist))

    chosen = catalog[0]
    r = s + k
    per_comp = per_component_bgn(r, k, chosen.degrees, curve.genera)
    checklist.append(
        ChecklistItem(
            "per_component_degree_bound",
            all(c.ok for c in per_comp),
            "; ".join(f"component {c.component}: k <= {c.bound}" for c in per_comp),
        )
    )
    degree_range_ok = all(0 < x <= r for x in chosen.degrees)
    checklist.append(
        ChecklistItem(
            "degree_range",
            degree_range_ok,
            f"every degree in 1..{r}",
        )
    )
    if not all(item.ok for item in checklist):
        return CertificationFailure(checklist=tuple(checklist))

    pa = curve.arithmetic_genus()
    beta = bn_number(pa, r, d, k)
    moduli_dim = s * s * (pa - 1) + 1
    h1_dual = d + s * (pa - 1)
    fiber_dim = k * (h1_dual - k)
    return BNCertificate(
        gamma=curve.gamma,
        genera=curve.genera,
        arithmetic_genus=pa,
        weights=omega.weights,
        s=s,
        k=k,
        d=d,
        r=r,
        degree_tuple=chosen,
        checklist=tuple(checklist),
        beta=beta,
        moduli_dim=moduli_dim,
        h1_dual=h1_dual,
        fiber_dim=fiber_dim,
        identity_ok=beta == moduli_dim + fiber_dim,
    )


def max_section_count(curve: NodalCurve, s: int) -> int:
    """Largest k with k*g_i <= 1 + s(g_i - 1) on every component."""
    return min((1 + s * (g - 1)) // g for g in curve.genera)


def conjecture_scan(
    curves: Iterable[NodalCurve],
    s_values: Iterable[int],
    d_values: Iterable[int] | None = None,
    k_values: Iterable[int] | None = None,
) -> list[ScanRow]:
    """Certify every in-hypothesis (curve, s, d, k) cell; flag the rest OPEN.

    Hypotheses limiting the grid: 2(gamma-1) <= s, gamma <= d <= s, and
    k g_i <= 1 + s(g_i - 1) on every component.  Cells outside them are
    skipped, never reported.  A cell whose certification fails is OPEN;
    nothing here ever claims a refutation.
    """
    s_values = tuple(s_values)
    if d_values is not None:
        d_values = tuple(d_values)
    if k_values is not None:
        k_values = tuple(k_values)
    rows = []
    for curve in curves:
        curve.require_compact_type()
        gamma = curve.gamma
        eta = canonical(curve)
        shape = curve.classify().value
        for s in s_values:
            if s < max(1, 2 * (gamma - 1)):
                continue
            ds = d_values if d_values is not None else range(gamma, s + 1)
            for d in ds:
                if not gamma <= d <= s:
                    continue
                ks = k_values if k_values is not None else range(1, max_section_count(curve, s) + 1)
                for k in ks:
                    if k < 1 or any(
                        k * g > 1 + s * (g - 1) for g in curve.genera
                    ):
                        continue
                    result = certify_bn_component(curve, eta, s, k, d)
                    rows.append(
                        ScanRow(
                            shape=shape,
                            gamma=gamma,
                            genera=curve.genera,
                            s=s,
                            d=d,
                            k=k,
                            certified=isinstance(result, BNCertificate),
                            beta=bn_number(curve.arithmetic_genus(), s + k, d, k),
                        )
                    )
    rows.sort(key=lambda r: (r.gamma, r.genera, r.s, r.d, r.k))
    return rows
