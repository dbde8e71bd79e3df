"""Depth-one sheaves on a nodal curve, described by discrete data.

A descriptor records the rank r_i of the restriction to each component
(mod torsion), the Euler characteristic, optionally the per-component
degrees, and the stalk shape at every node.  At a node p joining the
components (first, second) the stalk is determined by three nonnegative
integers: a free part of rank s and two branch parts with exponents
a_first and a_second, tied to the multirank by

    r_first = s + a_first,    r_second = s + a_second.

Weighted invariants against a polarization omega:

    wrank(E) = sum r_i w_i
    wdeg(E)  = chi(E) - wrank(E) chi(O_C)        with chi(O_C) = 1 - p_a
    wslope   = wdeg / wrank                       (wrank > 0)

and the degree defect wdeg(E) - sum deg(E_i) when degrees are recorded.

Extension spaces between two stalk shapes at the same node contribute
a_1 b_2 + a_2 b_1 to dim Ext^1; summing this over the nodes gives the
non-cohomological part of the global Ext^1 dimension.  A free stalk on
either side contributes nothing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple

from .curve import NodalCurve
from .polarization import Polarization, _check_lengths


class DescriptorError(ValueError):
    """Raised when sheaf data is inconsistent with its curve."""


class LocalType(NamedTuple):
    """Stalk shape at one node: free rank plus the two branch exponents."""

    free_rank: int
    a_first: int
    a_second: int


@dataclass(frozen=True)
class SheafDescriptor:
    """Discrete model of a depth-one sheaf on a fixed curve.

    ``stalks`` maps node id -> LocalType and must cover every node.
    """

    curve: NodalCurve
    multirank: tuple[int, ...]
    chi: int
    stalks: tuple[tuple[int, LocalType], ...]
    degrees: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        ranks = tuple(int(r) for r in self.multirank)
        if len(ranks) != self.curve.gamma:
            raise DescriptorError(
                f"multirank has {len(ranks)} entries for {self.curve.gamma} components"
            )
        if any(r < 0 for r in ranks):
            raise DescriptorError("multirank entries must be nonnegative")
        stalks = self.stalks
        if isinstance(stalks, Mapping):
            stalks = tuple(sorted(stalks.items()))
        else:
            stalks = tuple(sorted((int(nid), LocalType(*lt)) for nid, lt in stalks))
        by_node = dict(stalks)
        expected = [n.id for n in self.curve.nodes]
        if sorted(by_node) != expected:
            raise DescriptorError(
                f"stalks cover nodes {sorted(by_node)}, curve has {expected}"
            )
        for node in self.curve.nodes:
            lt = by_node[node.id]
            if min(lt) < 0:
                raise DescriptorError(f"negative stalk exponent at node {node.id}")
            if ranks[node.first - 1] != lt.free_rank + lt.a_first:
                raise DescriptorError(
                    f"node {node.id}: rank {ranks[node.first - 1]} on component "
                    f"{node.first} != free rank {lt.free_rank} + {lt.a_first}"
                )
            if ranks[node.second - 1] != lt.free_rank + lt.a_second:
                raise DescriptorError(
                    f"node {node.id}: rank {ranks[node.second - 1]} on component "
                    f"{node.second} != free rank {lt.free_rank} + {lt.a_second}"
                )
        degrees = self.degrees
        if degrees is not None:
            degrees = tuple(int(d) for d in degrees)
            if len(degrees) != self.curve.gamma:
                raise DescriptorError(
                    f"degrees has {len(degrees)} entries for {self.curve.gamma} components"
                )
        object.__setattr__(self, "multirank", ranks)
        object.__setattr__(self, "chi", int(self.chi))
        object.__setattr__(self, "stalks", stalks)
        object.__setattr__(self, "degrees", degrees)

    def stalk(self, node_id: int) -> LocalType:
        for nid, lt in self.stalks:
            if nid == node_id:
                return lt
        raise DescriptorError(f"no stalk recorded at node {node_id}")

    def is_locally_free(self) -> bool:
        return all(lt.a_first == 0 and lt.a_second == 0 for _, lt in self.stalks)


def locally_free_descriptor(
    curve: NodalCurve, rank: int, degrees: Iterable[int]
) -> SheafDescriptor:
    """Descriptor of a rank-r locally free sheaf with given degrees.

    chi is forced: chi = sum(degrees) + rank * (1 - p_a).
    """
    if rank < 0:
        raise DescriptorError("rank must be nonnegative")
    ds = tuple(int(d) for d in degrees)
    if len(ds) != curve.gamma:
        raise DescriptorError(
            f"degrees has {len(ds)} entries for {curve.gamma} components"
        )
    chi = sum(ds) + rank * (1 - curve.arithmetic_genus())
    stalks = tuple((n.id, LocalType(rank, 0, 0)) for n in curve.nodes)
    return SheafDescriptor(
        curve=curve,
        multirank=(rank,) * curve.gamma,
        chi=chi,
        stalks=stalks,
        degrees=ds,
    )


def wrank(desc: SheafDescriptor, omega: Polarization) -> Fraction:
    _check_lengths(desc.curve, omega)
    return sum(
        (Fraction(r) * w for r, w in zip(desc.multirank, omega.weights)), Fraction(0)
    )


def wdeg(desc: SheafDescriptor, omega: Polarization) -> Fraction:
    chi_oc = 1 - desc.curve.arithmetic_genus()
    return desc.chi - wrank(desc, omega) * chi_oc


def wslope(desc: SheafDescriptor, omega: Polarization) -> Fraction:
    r = wrank(desc, omega)
    if r <= 0:
        raise DescriptorError(f"slope needs positive weighted rank, got {r}")
    return wdeg(desc, omega) / r


def degree_defect(desc: SheafDescriptor, omega: Polarization) -> Fraction:
    """wdeg minus the total of the recorded per-component degrees."""
    if desc.degrees is None:
        raise DescriptorError("degree defect needs recorded degrees")
    return wdeg(desc, omega) - sum(desc.degrees)


def local_ext_dim(first: LocalType, second: LocalType) -> int:
    """dim Ext^1 between two stalk shapes at one node.

    Only branch parts on opposite branches extend nontrivially, one
    dimension per pair, so the count is bilinear: a1*b2 + a2*b1.
    """
    return first.a_first * second.a_second + first.a_second * second.a_first


def global_ext_defect(first: SheafDescriptor, second: SheafDescriptor) -> int:
    """Sum of the local Ext^1 dimensions over all nodes.

    This is the part of dim Ext^1(E, F) beyond h^1 of the sheaf hom; it
    vanishes exactly when no node pairs opposite branch parts.
    """
    if first.curve != second.curve:
        raise DescriptorError("descriptors live on different curves")
    return sum(
        local_ext_dim(first.stalk(n.id), second.stalk(n.id)) for n in first.curve.nodes
    )
