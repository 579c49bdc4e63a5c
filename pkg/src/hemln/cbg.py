"""Community bipartite graph construction and meta-edge weight metrics.

Communities of two layers become meta nodes; a meta edge exists whenever at
least one inter-layer link crosses the community pair, and carries the full
expanded set of crossing links. Three weight metrics are provided:

* ``e`` - crossing-link count, normalized by the per-graph maximum;
* ``d`` - density(left) * edge fraction * density(right);
* ``h`` - hub participation ratio on each side times the edge fraction.

Meta edges whose ``h`` weight is exactly zero (no hub participates on some
side) are dropped from the graph and kept in ``dropped`` for diagnostics.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, Mapping, Tuple

from .community import CommunityId, CommunitySummary, Membership
from .errors import EmptyCbg, NoInterLayerEdges, UnknownCommunity
from .model import MLN

METRICS = ("e", "d", "h")


@dataclass(frozen=True)
class MetaEdge:
    left: CommunityId
    right: CommunityId
    pairs: frozenset  # crossing inter-layer links (left node, right node)
    raw_weight: float
    weight: float


@dataclass(frozen=True)
class CommunityBipartiteGraph:
    left_layer: str
    right_layer: str
    left_nodes: frozenset  # CommunityIds offered on the left
    right_nodes: frozenset
    edges: Tuple[MetaEdge, ...]
    metric: str
    dropped: Tuple[MetaEdge, ...] = field(default=())

    def edge_map(self) -> Dict[Tuple[CommunityId, CommunityId], MetaEdge]:
        return {(e.left, e.right): e for e in self.edges}


def weight_e(raw_pairs: int, cbg_max: int) -> float:
    """Crossing-link count normalized by the largest count in this graph."""
    if cbg_max <= 0:
        raise EmptyCbg("no meta edges to normalize against")
    return raw_pairs / cbg_max


def weight_d(left: CommunitySummary, right: CommunitySummary, n_pairs: int) -> float:
    fraction = n_pairs / (left.node_count * right.node_count)
    return left.density * fraction * right.density


def participating_hubs(summary: CommunitySummary, pairs: Iterable[Tuple[int, int]],
                       side: int) -> frozenset:
    """Hubs of one community that have at least one link across this pair.
    ``side`` selects which element of each link belongs to the community."""
    endpoints = {p[side] for p in pairs}
    return frozenset(h for h in summary.hubs if h in endpoints)


def weight_h(left: CommunitySummary, right: CommunitySummary,
             pairs: frozenset) -> float:
    h_lr = participating_hubs(left, pairs, 0)
    h_rl = participating_hubs(right, pairs, 1)
    fraction = len(pairs) / (left.node_count * right.node_count)
    return (len(h_lr) / len(left.hubs)) * fraction * (len(h_rl) / len(right.hubs))


def build_cbg(mln: MLN,
              left: str,
              right: str,
              u_left: Iterable[CommunityId],
              u_right: Iterable[CommunityId],
              membership_left: Membership,
              membership_right: Membership,
              summaries_left: Mapping[CommunityId, CommunitySummary],
              summaries_right: Mapping[CommunityId, CommunitySummary],
              metric: str = "e") -> CommunityBipartiteGraph:
    """Collect expanded edge sets between the offered community sets and
    weight them with the chosen metric."""
    if metric not in METRICS:
        raise ValueError(f"metric must be one of {METRICS}, got {metric!r}")
    if not mln.has_interlayer(left, right):
        raise NoInterLayerEdges(f"no inter-layer edges between {left} and {right}")
    u_left = frozenset(u_left)
    u_right = frozenset(u_right)
    for cid, summaries, layer in ((u_left, summaries_left, left),
                                  (u_right, summaries_right, right)):
        for c in cid:
            if c.layer != layer or c not in summaries:
                raise UnknownCommunity(f"{c} is not a community of layer {layer}")

    buckets: Dict[Tuple[CommunityId, CommunityId], set] = {}
    for a, b in mln.interlayer_links(left, right):
        cl = membership_left.community_of(a)
        cr = membership_right.community_of(b)
        if cl in u_left and cr in u_right:
            buckets.setdefault((cl, cr), set()).add((a, b))

    edges = []
    dropped = []
    max_pairs = max((len(p) for p in buckets.values()), default=0)
    for (cl, cr) in sorted(buckets):
        pairs = frozenset(buckets[(cl, cr)])
        raw = float(len(pairs))
        if metric == "e":
            w = weight_e(len(pairs), max_pairs)
        elif metric == "d":
            w = weight_d(summaries_left[cl], summaries_right[cr], len(pairs))
        else:
            w = weight_h(summaries_left[cl], summaries_right[cr], pairs)
        edge = MetaEdge(cl, cr, pairs, raw, w)
        if w > 0.0:
            edges.append(edge)
        else:
            dropped.append(edge)
    return CommunityBipartiteGraph(left, right, u_left, u_right,
                                   tuple(edges), metric, tuple(dropped))


def cbg_to_tsv(cbg: CommunityBipartiteGraph) -> str:
    """Debug export: left community, right community, raw pair count, weight."""
    lines = []
    for e in cbg.edges:
        lines.append(f"{e.left.index}\t{e.right.index}\t{int(e.raw_weight)}\t"
                     f"{e.weight!r}")
    return "\n".join(lines) + ("\n" if lines else "")
