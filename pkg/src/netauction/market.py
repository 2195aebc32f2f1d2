"""Auction scenarios, reports and the effective market they induce.

A scenario fixes the ground truth: the seller, each agent's bid, neighbor
list and (in single-minded mode) bundle.  Reports may lower bids or withhold
invitation edges, never invent them.  The effective market is the portion of
the network the seller can actually reach through reported invitations,
together with the scan order and the invitational-domination tree every
mechanism consumes.

All values here are immutable; building a market is a pure function of
(scenario, reports) and results are cached.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import networkx as nx

from .values import Value

AgentId = str

UNIT_DEMAND = "unit_demand"
SINGLE_MINDED = "single_minded"


class ValidationError(ValueError):
    """A scenario or report violates a structural invariant."""


class UnknownAgentError(ValidationError):
    """An id was referenced that no agent (or the seller) carries."""


class InvalidReportError(ValidationError):
    """A report invites someone outside the agent's true neighbor set."""


@dataclass(frozen=True)
class Scenario:
    """Ground-truth auction instance.

    ``neighbors`` keeps each agent's invite list in declared order; that order
    is what breaks BFS ties, so fixtures control their own scan order.
    """

    seller: AgentId
    agent_ids: tuple[AgentId, ...]
    bids: tuple[tuple[AgentId, Fraction], ...]
    neighbors: tuple[tuple[AgentId, tuple[AgentId, ...]], ...]
    mode: str = UNIT_DEMAND
    unit_count: int | None = None
    items: tuple[str, ...] | None = None
    bundles: tuple[tuple[AgentId, tuple[str, ...]], ...] | None = None

    @staticmethod
    def build(
        seller: AgentId,
        bids: Mapping[AgentId, Fraction | int | str],
        neighbors: Mapping[AgentId, Sequence[AgentId]],
        seller_neighbors: Sequence[AgentId],
        *,
        unit_count: int | None = None,
        items: Sequence[str] | None = None,
        bundles: Mapping[AgentId, Iterable[str]] | None = None,
    ) -> "Scenario":
        # Declaration order is semantic: it breaks scan-order ties (see
        # build_effective_market), so it is preserved, not sorted.
        agent_ids = tuple(bids)
        known = set(agent_ids) | {seller}
        if len(known) != len(agent_ids) + 1:
            raise ValidationError(f"seller id {seller!r} collides with an agent id")
        bid_map = {}
        for a in agent_ids:
            b = Fraction(bids[a])
            if b < 0:
                raise ValidationError(f"negative bid for {a!r}")
            bid_map[a] = b
        nbr_map: dict[AgentId, tuple[AgentId, ...]] = {seller: tuple(seller_neighbors)}
        for a in agent_ids:
            nbr_map[a] = tuple(neighbors.get(a, ()))
        for src, nbrs in nbr_map.items():
            if len(set(nbrs)) != len(nbrs):
                raise ValidationError(f"duplicate neighbor entries on {src!r}")
            for n in nbrs:
                if n == src:
                    raise ValidationError(f"self-loop on {src!r}")
                if n not in known or n == seller:
                    raise UnknownAgentError(f"{src!r} references unknown agent {n!r}")
        mode = SINGLE_MINDED if items is not None else UNIT_DEMAND
        bundle_rows = None
        if mode == UNIT_DEMAND:
            if unit_count is None or unit_count < 1:
                raise ValidationError("unit-demand scenario needs unit_count >= 1")
        else:
            item_set = set(items or ())
            if not item_set:
                raise ValidationError("single-minded scenario needs a nonempty item set")
            if bundles is None:
                raise ValidationError("single-minded scenario needs bundles")
            rows = []
            for a in agent_ids:
                if a not in bundles:
                    raise ValidationError(f"agent {a!r} has no bundle")
                bundle = tuple(sorted(set(bundles[a])))
                if not bundle:
                    raise ValidationError(f"agent {a!r} has an empty bundle")
                if not set(bundle) <= item_set:
                    raise ValidationError(f"bundle of {a!r} leaves the item set")
                rows.append((a, bundle))
            bundle_rows = tuple(rows)
        return Scenario(
            seller=seller,
            agent_ids=agent_ids,
            bids=tuple((a, bid_map[a]) for a in agent_ids),
            neighbors=tuple((src, nbr_map[src]) for src in [seller] + list(agent_ids)),
            mode=mode,
            unit_count=unit_count if mode == UNIT_DEMAND else None,
            items=tuple(sorted(set(items))) if items is not None else None,
            bundles=bundle_rows,
        )

    @property
    def true_bids(self) -> dict[AgentId, Fraction]:
        return dict(self.bids)

    @property
    def true_neighbors(self) -> dict[AgentId, tuple[AgentId, ...]]:
        return dict(self.neighbors)

    def bundle_of(self, agent: AgentId) -> tuple[str, ...]:
        assert self.bundles is not None
        return dict(self.bundles)[agent]

    @property
    def k(self) -> int:
        """Number of sellable units (items in single-minded mode)."""
        if self.mode == UNIT_DEMAND:
            assert self.unit_count is not None
            return self.unit_count
        assert self.items is not None
        return len(self.items)


@dataclass(frozen=True)
class ReportProfile:
    """Declared bids and invitation actions, one row per agent."""

    bids: tuple[tuple[AgentId, Value], ...]
    invites: tuple[tuple[AgentId, tuple[AgentId, ...]], ...]

    @staticmethod
    def truthful(scenario: Scenario) -> "ReportProfile":
        return ReportProfile(
            bids=scenario.bids,
            invites=tuple((a, n) for a, n in scenario.neighbors if a != scenario.seller),
        )

    def validated(self, scenario: Scenario) -> "ReportProfile":
        truth = scenario.true_neighbors
        for a, invited in self.invites:
            if a not in truth:
                raise UnknownAgentError(f"report for unknown agent {a!r}")
            if not set(invited) <= set(truth[a]):
                raise InvalidReportError(
                    f"{a!r} invites {sorted(set(invited) - set(truth[a]))} outside its neighbor set"
                )
        for a, b in self.bids:
            if a not in truth:
                raise UnknownAgentError(f"bid report for unknown agent {a!r}")
            if b < 0:
                raise InvalidReportError(f"negative reported bid for {a!r}")
        return self

    def replace(
        self,
        scenario: Scenario,
        agent: AgentId,
        *,
        bid: Value | None = None,
        invites: Iterable[AgentId] | None = None,
    ) -> "ReportProfile":
        """Profile with one agent's report swapped; invite order inherits the scenario."""
        new_bids = tuple((a, bid if (a == agent and bid is not None) else b) for a, b in self.bids)
        if invites is None:
            new_invites = self.invites
        else:
            chosen = set(invites)
            declared = dict(scenario.neighbors)[agent]
            row = tuple(n for n in declared if n in chosen)
            if len(row) != len(chosen):
                raise InvalidReportError(
                    f"{agent!r} invites {sorted(chosen - set(declared))} outside its neighbor set"
                )
            new_invites = tuple((a, row if a == agent else inv) for a, inv in self.invites)
        return ReportProfile(bids=new_bids, invites=new_invites)

    @property
    def bid_map(self) -> dict[AgentId, Value]:
        return dict(self.bids)

    @property
    def invite_map(self) -> dict[AgentId, tuple[AgentId, ...]]:
        return dict(self.invites)


@dataclass(frozen=True)
class EffectiveMarket:
    """Reachable sub-digraph under reports, with priority order and domination tree."""

    seller: AgentId
    participants: frozenset[AgentId]
    diffusion_edges: tuple[tuple[AgentId, AgentId], ...]
    priority: tuple[AgentId, ...]
    idt_parent: tuple[tuple[AgentId, AgentId], ...]
    subtrees: tuple[tuple[AgentId, frozenset[AgentId]], ...] = field(repr=False)

    def subtree(self, agent: AgentId) -> frozenset[AgentId]:
        """All participants that cannot reach the seller's invitation without `agent`."""
        table = dict(self.subtrees)
        if agent not in table:
            raise UnknownAgentError(f"{agent!r} is not a participant")
        return table[agent]

    @property
    def parent(self) -> dict[AgentId, AgentId]:
        return dict(self.idt_parent)

    @property
    def children(self) -> dict[AgentId, tuple[AgentId, ...]]:
        out: dict[AgentId, list[AgentId]] = {a: [] for a in self.priority}
        out[self.seller] = []
        for child, parent in self.idt_parent:
            out[parent].append(child)
        return {a: tuple(sorted(kids)) for a, kids in out.items()}


def build_effective_market(scenario: Scenario, reports: ReportProfile) -> EffectiveMarket:
    """Diffusion closure from the seller over reported invitations.

    Market structure ignores bids entirely, so the cache keys on the
    invitation rows only; bid sweeps during audits stay cheap.
    """
    reports.validated(scenario)
    return _market_from_invites(scenario, reports.invites)


@lru_cache(maxsize=65536)
def _market_from_invites(
    scenario: Scenario, invite_rows: tuple[tuple[AgentId, tuple[AgentId, ...]], ...]
) -> EffectiveMarket:
    invites = dict(invite_rows)
    invites[scenario.seller] = dict(scenario.neighbors)[scenario.seller]

    # Diffusion closure, tracking BFS depth.
    depth: dict[AgentId, int] = {scenario.seller: 0}
    edges: list[tuple[AgentId, AgentId]] = []
    frontier = [scenario.seller]
    while frontier:
        nxt: list[AgentId] = []
        for src in frontier:
            for dst in invites.get(src, ()):
                if dst not in depth:
                    depth[dst] = depth[src] + 1
                    nxt.append(dst)
                edges.append((src, dst))
        frontier = nxt
    participants = frozenset(depth) - {scenario.seller}
    sorted_edges = tuple(sorted({(u, v) for u, v in edges if v in participants}))

    graph = nx.DiGraph()
    graph.add_node(scenario.seller)
    graph.add_edges_from(sorted_edges)
    idom = nx.immediate_dominators(graph, scenario.seller)
    parent = {a: idom[a] for a in participants}

    subtree: dict[AgentId, set[AgentId]] = {a: {a} for a in participants}
    for a in participants:
        node = a
        while node != scenario.seller:
            node = parent[node]
            if node != scenario.seller:
                subtree[node].add(a)

    # Priority: breadth-first; ties inside a depth break by the agent's
    # declared position in the scenario.  Both keys are invariant to the
    # agent's own report (own invites cannot shorten own depth), so nobody
    # can scan earlier by misreporting.
    declared = {a: i for i, a in enumerate(scenario.agent_ids)}
    order = sorted(participants, key=lambda a: (depth[a], declared[a]))
    return EffectiveMarket(
        seller=scenario.seller,
        participants=participants,
        diffusion_edges=sorted_edges,
        priority=tuple(order),
        idt_parent=tuple(sorted(parent.items())),
        subtrees=tuple((a, frozenset(s)) for a, s in sorted(subtree.items())),
    )


def bfs_priority(market: EffectiveMarket) -> tuple[AgentId, ...]:
    """Scan order: breadth-first from the seller, seller excluded."""
    return market.priority


def build_idt(market: EffectiveMarket) -> dict[AgentId, AgentId]:
    """Immediate invitational dominator of every participant."""
    return market.parent


def subtree(market: EffectiveMarket, agent: AgentId) -> frozenset[AgentId]:
    return market.subtree(agent)
