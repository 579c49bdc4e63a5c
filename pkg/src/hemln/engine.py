"""Serial k-community composition engine.

Runs the composition plan step by step: builds the community bipartite
graph for each step, matches communities one-to-one by maximal flow, and
extends (new layer) or updates (cycle step) the result tuples according to
the consistent / no / inconsistent match outcomes. Each tuple pairs one
community id per visited layer (0 = none) with one expanded edge set per
composition step (None = empty placeholder), which is enough to
reconstruct the matched sub-network exactly.
"""
from __future__ import annotations

import json
import logging
import time
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Tuple

from .cbg import build_cbg
from .community import CommunityId, CommunitySummary, Membership
from .errors import InternalCaseError, UnknownKey
from .kspec import CASE_CYCLE, CASE_NEW_LAYER, Composition, KSpec
from .matching import max_flow_match
from .model import MLN

log = logging.getLogger(__name__)

RANK_KEYS = ("min_size", "sum_size", "min_density", "sum_raw_pairs")


@dataclass(frozen=True)
class KTuple:
    """One element of a k-community.

    ``communities[i]`` is the community index in ``layers[i]`` (0 = none);
    ``x_slots[j]`` holds the inter-layer node pairs realized by step j, or
    None when that step contributed nothing for this tuple.
    """

    layers: Tuple[str, ...]
    communities: Tuple[int, ...]
    x_slots: Tuple[Optional[frozenset], ...]

    @property
    def total(self) -> bool:
        return all(x is not None for x in self.x_slots)

    def slot(self, layer: str) -> int:
        return self.communities[self.layers.index(layer)]

    def sort_key(self):
        return (self.communities,
                tuple(tuple(sorted(x)) if x is not None else () for x in self.x_slots))


@dataclass(frozen=True)
class StepDiagnostics:
    step_index: int
    left: str
    right: str
    case: str
    u_left_size: int
    u_right_size: int
    cbg_edge_count: int
    mp_size: int
    seconds: float  # reported via logs, never serialized (reproducibility)


@dataclass(frozen=True)
class KCommunityResult:
    spec: KSpec
    layers: Tuple[str, ...]         # visit order; one community slot each
    steps: Tuple[Composition, ...]  # one x slot each
    tuples: Tuple[KTuple, ...]
    diagnostics: Tuple[StepDiagnostics, ...]


def select_u(step: Composition, case: str, tuples: List[KTuple],
             memberships: Mapping[str, Membership],
             mln: MLN) -> Tuple[List[CommunityId], List[CommunityId]]:
    """Choose the meta-node sets for a composition step.

    A processed layer offers exactly the non-zero community ids occupying
    its slot across the current tuples; a new layer offers every community
    with at least one inter-layer link to the other side's offer.
    """
    def processed(layer: str) -> List[CommunityId]:
        ids = {t.slot(layer) for t in tuples} - {0}
        return [CommunityId(layer, i) for i in sorted(ids)]

    u_left = processed(step.left)
    if case == CASE_CYCLE:
        u_right = processed(step.right)
    else:
        left_set = set(u_left)
        m_left = memberships[step.left]
        m_right = memberships[step.right]
        linked = set()
        for a, b in mln.interlayer_links(step.left, step.right):
            if m_left.community_of(a) in left_set:
                linked.add(m_right.community_of(b))
        u_right = sorted(linked)
    return u_left, u_right


def _base_u(mln: MLN, step: Composition,
            memberships: Mapping[str, Membership]):
    """Base case offers: every community with at least one link for the pair."""
    m_left = memberships[step.left]
    m_right = memberships[step.right]
    u_left, u_right = set(), set()
    for a, b in mln.interlayer_links(step.left, step.right):
        u_left.add(m_left.community_of(a))
        u_right.add(m_right.community_of(b))
    return sorted(u_left), sorted(u_right)


def detect_k_community(mln: MLN,
                       memberships: Mapping[str, Membership],
                       summaries: Mapping[str, Mapping[CommunityId, CommunitySummary]],
                       spec: KSpec,
                       default_metric: str = "e") -> KCommunityResult:
    """Execute the composition plan and return the set of result tuples."""
    tuples: List[KTuple] = []
    diagnostics: List[StepDiagnostics] = []
    layer_order: List[str] = [spec.first_layer]

    for idx, (step, case) in enumerate(zip(spec.steps, spec.cases)):
        started = time.perf_counter()
        metric = step.metric or default_metric
        if idx == 0:
            u_left, u_right = _base_u(mln, step, memberships)
        else:
            u_left, u_right = select_u(step, case, tuples, memberships, mln)
        cbg = build_cbg(mln, step.left, step.right, u_left, u_right,
                        memberships[step.left], memberships[step.right],
                        summaries[step.left], summaries[step.right], metric)
        mp = max_flow_match(cbg)
        edge_map = cbg.edge_map()
        matched_right = mp.as_dict()

        if idx == 0:
            layer_order.append(step.right)
            for cl, cr in mp.pairs:
                pairs = edge_map[(cl, cr)].pairs
                tuples.append(KTuple((step.left, step.right),
                                     (cl.index, cr.index), (pairs,)))
        elif case == CASE_NEW_LAYER:
            layer_order.append(step.right)
            tuples = [_extend(t, step, matched_right, edge_map) for t in tuples]
        elif case == CASE_CYCLE:
            tuples = [_update(t, step, matched_right, edge_map) for t in tuples]
        else:  # pragma: no cover - parse guarantees "i" or "ii"
            raise InternalCaseError(f"unknown step case {case!r}")

        elapsed = time.perf_counter() - started
        diagnostics.append(StepDiagnostics(idx, step.left, step.right,
                                           CASE_NEW_LAYER if idx == 0 else case,
                                           len(u_left), len(u_right),
                                           len(cbg.edges), len(mp.pairs), elapsed))
        log.debug("step %d (%s,%s): %d pairs in %.4fs",
                  idx, step.left, step.right, len(mp.pairs), elapsed)

    tuples.sort(key=KTuple.sort_key)
    return KCommunityResult(spec, tuple(layer_order), spec.steps,
                            tuple(tuples), tuple(diagnostics))


def _extend(t: KTuple, step: Composition,
            matched: Dict[CommunityId, CommunityId],
            edge_map) -> KTuple:
    """Case i: append a community slot for the new right layer plus an x slot."""
    left_idx = t.slot(step.left)
    layers = t.layers + (step.right,)
    if left_idx != 0:
        cl = CommunityId(step.left, left_idx)
        cr = matched.get(cl)
        if cr is not None:
            pairs = edge_map[(cl, cr)].pairs
            return KTuple(layers, t.communities + (cr.index,), t.x_slots + (pairs,))
    return KTuple(layers, t.communities + (0,), t.x_slots + (None,))


def _update(t: KTuple, step: Composition,
            matched: Dict[CommunityId, CommunityId],
            edge_map) -> KTuple:
    """Case ii: both layers processed; append an x slot only."""
    left_idx = t.slot(step.left)
    right_idx = t.slot(step.right)
    if left_idx != 0 and right_idx != 0:
        cl = CommunityId(step.left, left_idx)
        cr = CommunityId(step.right, right_idx)
        if matched.get(cl) == cr:
            pairs = edge_map[(cl, cr)].pairs
            return KTuple(t.layers, t.communities, t.x_slots + (pairs,))
        if cl in matched:
            log.debug("inconsistent match for %s at step (%s,%s)",
                      cl, step.left, step.right)
    return KTuple(t.layers, t.communities, t.x_slots + (None,))


def classify(result: KCommunityResult):
    """Split tuples into (total, partial) by the empty-slot criterion."""
    total = tuple(t for t in result.tuples if t.total)
    partial = tuple(t for t in result.tuples if not t.total)
    return total, partial


def rank(result: KCommunityResult,
         summaries: Mapping[str, Mapping[CommunityId, CommunitySummary]],
         key: str) -> List[KTuple]:
    """Stable descending order by the chosen key.

    Zero slots contribute 0 to size keys and are excluded from min_density;
    under min_* keys any tuple with a zero slot ranks below all complete
    tuples. Ties break on the lexicographic slot sequence.
    """
    if key not in RANK_KEYS:
        raise UnknownKey(f"rank key must be one of {RANK_KEYS}, got {key!r}")

    def summary(layer: str, idx: int) -> CommunitySummary:
        return summaries[layer][CommunityId(layer, idx)]

    def value(t: KTuple):
        if key == "sum_raw_pairs":  # needs no summaries
            return (0, sum(len(x) for x in t.x_slots if x is not None))
        sizes = [summary(l, c).node_count
                 for l, c in zip(t.layers, t.communities) if c != 0]
        has_zero = any(c == 0 for c in t.communities)
        if key == "min_size":
            return (0 if has_zero else 1, min(sizes) if sizes else 0)
        if key == "sum_size":
            return (0, sum(sizes))
        if key == "min_density":
            dens = [summary(l, c).density
                    for l, c in zip(t.layers, t.communities) if c != 0]
            return (0 if has_zero else 1, min(dens) if dens else 0.0)
        raise UnknownKey(key)  # unreachable: validated above

    return sorted(result.tuples, key=lambda t: (tuple(-v for v in value(t)),
                                                t.sort_key()))


# ---------------------------------------------------------------------------
# serialization


def format_tuples(result: KCommunityResult) -> str:
    """Human-readable tuples: ``< c_A^2, c_D^1 ; x_{A,D} >`` with 0 and phi
    for empty slots."""
    lines = []
    for t in result.tuples:
        cs = ", ".join(f"c_{l}^{c}" if c != 0 else "0"
                       for l, c in zip(t.layers, t.communities))
        xs = ", ".join(
            f"x_{{{s.left},{s.right}}}" if x is not None else "phi"
            for s, x in zip(result.steps, t.x_slots))
        lines.append(f"< {cs} ; {xs} >")
    return "\n".join(lines) + ("\n" if lines else "")


def to_jsonl(result: KCommunityResult) -> str:
    lines = []
    for t in result.tuples:
        record = {
            "slots": [{"layer": l, "community": c}
                      for l, c in zip(t.layers, t.communities)],
            "x": [{"step": [s.left, s.right],
                   "pairs": [list(p) for p in sorted(x)]} if x is not None else None
                  for s, x in zip(result.steps, t.x_slots)],
            "total": t.total,
        }
        lines.append(json.dumps(record, separators=(",", ":"), sort_keys=True))
    return "\n".join(lines) + ("\n" if lines else "")


def diagnostics_tsv(result: KCommunityResult) -> str:
    """Per-step diagnostics. Wall times are deliberately left out so that
    identical runs produce byte-identical files; timings go to the log."""
    lines = ["step\tleft\tright\tcase\tu_left\tu_right\tcbg_edges\tmp_size"]
    for d in result.diagnostics:
        lines.append(f"{d.step_index}\t{d.left}\t{d.right}\t{d.case}\t"
                     f"{d.u_left_size}\t{d.u_right_size}\t"
                     f"{d.cbg_edge_count}\t{d.mp_size}")
    return "\n".join(lines) + "\n"
