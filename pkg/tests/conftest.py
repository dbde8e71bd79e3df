"""Shared fixtures: standard curves and seeded random generators."""

from __future__ import annotations

import heapq
import random
from fractions import Fraction

import pytest

import nodalbn as nb


@pytest.fixture
def two_curve() -> nb.NodalCurve:
    """Two components of genus 2 and 3 meeting at one node."""
    return nb.NodalCurve((2, 3), ((1, 1, 2),))


@pytest.fixture
def chain3_222() -> nb.NodalCurve:
    return nb.chain_curve((2, 2, 2))


@pytest.fixture
def comb3_222() -> nb.NodalCurve:
    return nb.comb_curve((2, 2, 2))


@pytest.fixture
def chain4() -> nb.NodalCurve:
    return nb.chain_curve((2, 3, 4, 5))


@pytest.fixture
def comb4() -> nb.NodalCurve:
    return nb.comb_curve((2, 3, 4, 5))


@pytest.fixture
def cycle_curve() -> nb.NodalCurve:
    """Two components joined at two nodes; not of compact type."""
    return nb.NodalCurve((2, 3), ((1, 1, 2), (2, 1, 2)))


def pruefer_to_edges(seq: list[int], n: int) -> list[tuple[int, int]]:
    degree = [1] * (n + 1)
    for v in seq:
        degree[v] += 1
    leaves = [i for i in range(1, n + 1) if degree[i] == 1]
    heapq.heapify(leaves)
    edges = []
    for v in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, v))
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(leaves, v)
    a = heapq.heappop(leaves)
    b = heapq.heappop(leaves)
    edges.append((a, b))
    return edges


def random_tree_curve(
    rng: random.Random, gamma_max: int = 6, genus_range: tuple[int, int] = (2, 6)
) -> nb.NodalCurve:
    """Uniform random labeled tree with random genus labels."""
    gamma = rng.randint(1, gamma_max)
    genera = tuple(rng.randint(*genus_range) for _ in range(gamma))
    if gamma == 1:
        return nb.NodalCurve(genera)
    if gamma == 2:
        edges = [(1, 2)]
    else:
        seq = [rng.randint(1, gamma) for _ in range(gamma - 2)]
        edges = pruefer_to_edges(seq, gamma)
    nodes = tuple((i, a, b) for i, (a, b) in enumerate(edges, start=1))
    return nb.NodalCurve(genera, nodes)


def random_valid_polarization(rng: random.Random, gamma: int) -> nb.Polarization:
    raw = [rng.randint(1, 40) for _ in range(gamma)]
    total = sum(raw)
    return nb.Polarization(tuple(Fraction(r, total) for r in raw))


def random_zero_sum(rng: random.Random, gamma: int) -> list[int]:
    """Integers summing to zero, not all zero (for gamma >= 2)."""
    while True:
        raw = [rng.randint(-50, 50) for _ in range(gamma)]
        total = sum(raw)
        ints = [gamma * r - total for r in raw]
        if any(ints):
            return ints


def random_good_polarization(rng: random.Random, curve: nb.NodalCurve) -> nb.Polarization:
    """Perturbation of the canonical weights small enough to stay good.

    Every split defect moves by at most (p_a - 1) * gamma * sup-norm, so
    capping the sup norm below 1 / (2 gamma (p_a - 1)) keeps each defect
    strictly inside (0, 1).
    """
    eta = nb.canonical(curve)
    gamma = curve.gamma
    if gamma == 1:
        return eta
    pa = curve.arithmetic_genus()
    cap = Fraction(1, 2 * gamma * (pa - 1))
    ints = random_zero_sum(rng, gamma)
    theta = Fraction(rng.randint(1, 99), 100)
    scale = cap * theta / max(abs(x) for x in ints)
    return nb.perturb(eta, [x * scale for x in ints])


def scaled_zero_sum_eps(
    rng: random.Random, gamma: int, bound: Fraction
) -> list[Fraction]:
    """Zero-sum rational vector with sup norm strictly below ``bound``."""
    ints = random_zero_sum(rng, gamma)
    theta = Fraction(rng.randint(1, 99), 100)
    scale = bound * theta / max(abs(x) for x in ints)
    return [x * scale for x in ints]
