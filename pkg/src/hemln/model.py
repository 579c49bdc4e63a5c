"""Multilayer network data model.

A multilayer network is a set of layer graphs (simple, undirected, with
globally unique node ids that are disjoint across layers) plus bipartite
inter-layer edge sets, one per unordered layer pair.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, Mapping, Optional, Set, Tuple

from .errors import (
    DuplicateLayer,
    DuplicatePair,
    EndpointNotInLayer,
    MalformedGraph,
    NodeIdCollision,
    UnknownLayer,
    UnknownNode,
)

NodeId = int
Edge = Tuple[NodeId, NodeId]


def _canon_edge(u: NodeId, v: NodeId) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class LayerGraph:
    """One layer: a simple undirected graph with optional node labels."""

    id: str
    nodes: frozenset
    edges: frozenset
    labels: Mapping[NodeId, str] = field(default_factory=dict)

    @staticmethod
    def build(layer_id: str,
              nodes: Iterable[NodeId],
              edges: Iterable[Edge],
              labels: Optional[Mapping[NodeId, str]] = None) -> "LayerGraph":
        """Normalize and validate raw node/edge collections."""
        if not layer_id:
            raise MalformedGraph("layer id must be nonempty")
        node_set = frozenset(nodes)
        for n in node_set:
            if not isinstance(n, int) or n < 0:
                raise MalformedGraph(f"node id {n!r} is not a non-negative integer")
        canon = set()
        for u, v in edges:
            if u == v:
                raise MalformedGraph(f"self-loop on node {u} in layer {layer_id}")
            if u not in node_set or v not in node_set:
                raise MalformedGraph(
                    f"edge ({u},{v}) references a node outside layer {layer_id}")
            canon.add(_canon_edge(u, v))
        return LayerGraph(layer_id, node_set, frozenset(canon), dict(labels or {}))

    @cached_property
    def _adjacency(self) -> Dict[NodeId, frozenset]:
        adj: Dict[NodeId, Set[NodeId]] = {n: set() for n in self.nodes}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return {n: frozenset(s) for n, s in adj.items()}

    def neighbors(self, n: NodeId) -> frozenset:
        if n not in self.nodes:
            raise UnknownNode(f"node {n} not in layer {self.id}")
        return self._adjacency[n]

    def degree(self, n: NodeId) -> int:
        return len(self.neighbors(n))


@dataclass(frozen=True)
class InterLayerEdges:
    """Bipartite links between two layers, stored oriented from -> to."""

    from_layer: str
    to_layer: str
    links: frozenset  # of (node in from_layer, node in to_layer)

    @staticmethod
    def build(from_layer: str, to_layer: str,
              links: Iterable[Edge]) -> "InterLayerEdges":
        if from_layer == to_layer:
            raise MalformedGraph("inter-layer edges require two distinct layers")
        return InterLayerEdges(from_layer, to_layer, frozenset(tuple(l) for l in links))

    def reversed(self) -> "InterLayerEdges":
        return InterLayerEdges(self.to_layer, self.from_layer,
                               frozenset((b, a) for a, b in self.links))


class MLN:
    """A multilayer network under construction or finalized.

    Construction is single-writer; call :meth:`freeze` once assembly is done.
    A frozen MLN rejects further mutation and is safe to share across threads.
    """

    def __init__(self) -> None:
        self.layers: Dict[str, LayerGraph] = {}
        self._inter: Dict[Tuple[str, str], InterLayerEdges] = {}
        self._node_layer: Dict[NodeId, str] = {}
        self._frozen = False

    # -- construction ------------------------------------------------------

    def _check_mutable(self) -> None:
        if self._frozen:
            raise MalformedGraph("MLN is frozen; no further mutation allowed")

    def add_layer(self, g: LayerGraph) -> "MLN":
        self._check_mutable()
        if g.id in self.layers:
            raise DuplicateLayer(f"layer {g.id} already present")
        for n in g.nodes:
            if n in self._node_layer:
                raise NodeIdCollision(
                    f"node {n} of layer {g.id} already belongs to layer "
                    f"{self._node_layer[n]}")
        self.layers[g.id] = g
        for n in g.nodes:
            self._node_layer[n] = g.id
        return self

    def add_interlayer(self, x: InterLayerEdges) -> "MLN":
        self._check_mutable()
        for lid in (x.from_layer, x.to_layer):
            if lid not in self.layers:
                raise UnknownLayer(f"layer {lid} not in MLN")
        key = self._pair_key(x.from_layer, x.to_layer)
        if key in self._inter:
            raise DuplicatePair(
                f"inter-layer edges for ({x.from_layer},{x.to_layer}) already set")
        a_nodes = self.layers[x.from_layer].nodes
        b_nodes = self.layers[x.to_layer].nodes
        for a, b in x.links:
            if a not in a_nodes:
                raise EndpointNotInLayer(
                    f"link ({a},{b}): {a} not in layer {x.from_layer}")
            if b not in b_nodes:
                raise EndpointNotInLayer(
                    f"link ({a},{b}): {b} not in layer {x.to_layer}")
        stored = x if key == (x.from_layer, x.to_layer) else x.reversed()
        self._inter[key] = stored
        return self

    def freeze(self) -> "MLN":
        self._frozen = True
        return self

    # -- queries -------------------------------------------------------------

    @staticmethod
    def _pair_key(l1: str, l2: str) -> Tuple[str, str]:
        return (l1, l2) if l1 <= l2 else (l2, l1)

    def layer(self, lid: str) -> LayerGraph:
        try:
            return self.layers[lid]
        except KeyError:
            raise UnknownLayer(f"layer {lid} not in MLN") from None

    def has_interlayer(self, l1: str, l2: str) -> bool:
        return self._pair_key(l1, l2) in self._inter

    def interlayer_links(self, l1: str, l2: str) -> frozenset:
        """Links oriented (node in l1, node in l2); symmetric under reversal."""
        for lid in (l1, l2):
            if lid not in self.layers:
                raise UnknownLayer(f"layer {lid} not in MLN")
        key = self._pair_key(l1, l2)
        if key not in self._inter:
            return frozenset()
        stored = self._inter[key]
        if stored.from_layer == l1:
            return stored.links
        return frozenset((b, a) for a, b in stored.links)

    def interlayer_pairs(self):
        """All registered unordered layer pairs, sorted."""
        return sorted(self._inter)

    def layer_of(self, n: NodeId) -> str:
        try:
            return self._node_layer[n]
        except KeyError:
            raise UnknownNode(f"node {n} not in any layer") from None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MLN):
            return NotImplemented
        return self.layers == other.layers and self._inter == other._inter

    def __repr__(self) -> str:
        return (f"MLN(layers={sorted(self.layers)}, "
                f"interlayer={sorted(self._inter)})")


def add_layer(mln: MLN, g: LayerGraph) -> MLN:
    return mln.add_layer(g)


def add_interlayer(mln: MLN, x: InterLayerEdges) -> MLN:
    return mln.add_interlayer(x)


def neighbors(g: LayerGraph, n: NodeId) -> frozenset:
    return g.neighbors(n)
