"""Nodal reducible curves as genus-labelled multigraphs.

A curve is modelled by its dual graph: one vertex per irreducible smooth
component (with a genus label g_i >= 2) and one edge per node.  Component
ids are the contiguous integers 1..gamma; node ids are arbitrary distinct
positive integers.  Every node joins two distinct components, and the dual
graph must be connected.

Key numbers:

    arithmetic genus   p_a(C) = sum(g_i) + delta - gamma + 1
    node degree        delta_i = number of node endpoints on component i

A curve is of compact type exactly when its dual graph is a tree
(equivalently delta = gamma - 1, equivalently p_a = sum(g_i)).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, NamedTuple


class CurveError(ValueError):
    """Raised when curve data violates a structural invariant."""


class NotCompactTypeError(CurveError):
    """Raised when an operation defined only for trees meets a cycle."""


class Node(NamedTuple):
    """A node (edge of the dual graph); stored with first < second."""

    id: int
    first: int
    second: int


class CurveClass(enum.Enum):
    CHAIN = "chain"
    COMB = "comb"
    CHAIN_AND_COMB = "chain_and_comb"
    OTHER = "other"
    NOT_COMPACT_TYPE = "not_compact_type"


@dataclass(frozen=True)
class NodalCurve:
    """Immutable dual-graph model of a nodal reducible curve.

    ``genera[i-1]`` is the genus of component ``i``; ``nodes`` holds the
    edges in ascending node-id order.
    """

    genera: tuple[int, ...]
    nodes: tuple[Node, ...] = ()

    def __post_init__(self) -> None:
        genera = tuple(int(g) for g in self.genera)
        if not genera:
            raise CurveError("curve needs at least one component")
        for i, g in enumerate(genera, start=1):
            if g < 2:
                raise CurveError(f"component {i} has genus {g}; each genus must be >= 2")
        raw = tuple(Node(int(n[0]), int(n[1]), int(n[2])) for n in self.nodes)
        seen: set[int] = set()
        normalized: list[Node] = []
        for node in raw:
            if node.id < 1:
                raise CurveError(f"node id {node.id} must be a positive integer")
            if node.id in seen:
                raise CurveError(f"duplicate node id {node.id}")
            seen.add(node.id)
            if node.first == node.second:
                raise CurveError(f"node {node.id} joins component {node.first} to itself")
            for end in (node.first, node.second):
                if not 1 <= end <= len(genera):
                    raise CurveError(f"node {node.id} references unknown component {end}")
            if node.first > node.second:
                node = Node(node.id, node.second, node.first)
            normalized.append(node)
        nodes = tuple(sorted(normalized, key=lambda n: n.id))
        object.__setattr__(self, "genera", genera)
        object.__setattr__(self, "nodes", nodes)
        if not self._connected():
            raise CurveError("dual graph is not connected")

    # -- basic counts -------------------------------------------------

    @property
    def gamma(self) -> int:
        """Number of irreducible components."""
        return len(self.genera)

    @property
    def delta(self) -> int:
        """Number of nodes."""
        return len(self.nodes)

    @property
    def component_ids(self) -> range:
        return range(1, self.gamma + 1)

    def genus(self, i: int) -> int:
        if not 1 <= i <= self.gamma:
            raise CurveError(f"unknown component {i}")
        return self.genera[i - 1]

    def arithmetic_genus(self) -> int:
        """p_a(C) = sum(g_i) + delta - gamma + 1."""
        return sum(self.genera) + self.delta - self.gamma + 1

    def node_degree(self, i: int) -> int:
        """Number of node endpoints lying on component i."""
        if not 1 <= i <= self.gamma:
            raise CurveError(f"unknown component {i}")
        return sum(1 for n in self.nodes for end in (n.first, n.second) if end == i)

    def adjacency(self) -> dict[int, list[tuple[int, int]]]:
        """Map component id -> list of (neighbor id, node id), node-id order."""
        adj: dict[int, list[tuple[int, int]]] = {i: [] for i in self.component_ids}
        for n in self.nodes:
            adj[n.first].append((n.second, n.id))
            adj[n.second].append((n.first, n.id))
        return adj

    def _connected(self) -> bool:
        return self._reachable_from(1) == set(self.component_ids)

    def _reachable_from(self, start: int, within: frozenset[int] | None = None) -> set[int]:
        allowed = within if within is not None else frozenset(self.component_ids)
        if start not in allowed:
            return set()
        adj = self.adjacency()
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for w, _ in adj[v]:
                if w in allowed and w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen

    # -- compact type and classification ------------------------------

    def is_compact_type(self) -> bool:
        """True when the dual graph is a tree (connected and acyclic)."""
        return self.delta == self.gamma - 1

    def require_compact_type(self) -> None:
        if not self.is_compact_type():
            raise NotCompactTypeError(
                f"operation needs a tree dual graph; curve has {self.delta} nodes "
                f"on {self.gamma} components"
            )

    def classify(self) -> CurveClass:
        """Coarse shape of the dual graph.

        A compact-type curve is a chain when the tree is a path, a comb
        when one component carries all gamma-1 nodes, and chain_and_comb
        when both hold (always the case for gamma <= 3).
        """
        if not self.is_compact_type():
            return CurveClass.NOT_COMPACT_TYPE
        degrees = [self.node_degree(i) for i in self.component_ids]
        is_path = self.gamma == 1 or sorted(degrees) == [1, 1] + [2] * (self.gamma - 2)
        is_comb = self.gamma == 1 or max(degrees) == self.gamma - 1
        if is_path and is_comb:
            return CurveClass.CHAIN_AND_COMB
        if is_path:
            return CurveClass.CHAIN
        if is_comb:
            return CurveClass.COMB
        return CurveClass.OTHER

    def grip(self) -> int:
        """Component carrying the most nodes; ties go to the larger id."""
        self.require_compact_type()
        return max(self.component_ids, key=lambda i: (self.node_degree(i), i))

    # -- subcurves -----------------------------------------------------

    def check_subcurve(self, ids: Iterable[int]) -> frozenset[int]:
        B = frozenset(int(i) for i in ids)
        if not B:
            raise CurveError("subcurve must be nonempty")
        unknown = B - set(self.component_ids)
        if unknown:
            raise CurveError(f"unknown components in subcurve: {sorted(unknown)}")
        return B

    def is_connected_subcurve(self, ids: Iterable[int]) -> bool:
        B = self.check_subcurve(ids)
        return self._reachable_from(min(B), within=B) == set(B)

    def crossing_node_count(self, ids: Iterable[int]) -> int:
        """Number of nodes with exactly one endpoint in the subcurve."""
        B = self.check_subcurve(ids)
        return sum(1 for n in self.nodes if (n.first in B) != (n.second in B))

    def genus_sum(self, ids: Iterable[int]) -> int:
        B = self.check_subcurve(ids)
        return sum(self.genera[i - 1] for i in B)

    def edge_splits(self) -> list[tuple[int, frozenset[int], frozenset[int]]]:
        """Two-sided splits obtained by deleting one node of a tree.

        Returns (node id, B, complement) triples sorted by node id, where
        B is the side containing the node's smaller-id endpoint.
        """
        self.require_compact_type()
        out: list[tuple[int, frozenset[int], frozenset[int]]] = []
        all_ids = frozenset(self.component_ids)
        adj = self.adjacency()
        for node in self.nodes:
            anchor = min(node.first, node.second)
            seen = {anchor}
            stack = [anchor]
            while stack:
                v = stack.pop()
                for w, nid in adj[v]:
                    if nid != node.id and w not in seen:
                        seen.add(w)
                        stack.append(w)
            side = frozenset(seen)
            out.append((node.id, side, all_ids - side))
        return out


def chain_curve(genera: Iterable[int]) -> NodalCurve:
    """Path-shaped curve: component i meets component i+1 at node i."""
    gs = tuple(genera)
    nodes = tuple(Node(i, i, i + 1) for i in range(1, len(gs)))
    return NodalCurve(gs, nodes)


def comb_curve(genera: Iterable[int], grip: int | None = None) -> NodalCurve:
    """Star-shaped curve: every other component meets the grip.

    The grip defaults to the last component.  Node i joins the i-th
    non-grip component to the grip.
    """
    gs = tuple(genera)
    if grip is None:
        grip = len(gs)
    if not 1 <= grip <= len(gs):
        raise CurveError(f"grip {grip} out of range")
    teeth = [i for i in range(1, len(gs) + 1) if i != grip]
    nodes = tuple(Node(k, tooth, grip) for k, tooth in enumerate(teeth, start=1))
    return NodalCurve(gs, nodes)
