"""Allocation rules and payment schemes for diffusion auctions.

Unit-demand rules: two threshold scans over the BFS priority order (one with
a decrementing supply counter and winner-excluding thresholds, kept as a
known non-strategyproof specimen; its refinement with fixed thresholds and
critical-bid payments), plus the efficient top-k allocation paired with
either the classic externality payment or the revenue-maximizing one.

Single-minded rules: the greedy v/sqrt(|bundle|) ranking over the whole
market (with the losers-subsidized payment), a per-agent argmax scan (with
losers-pay-zero payments), and two deliberately broken exploratory scans
retained as monotonicity counterexample specimens for the auditor.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, Mapping, Sequence

from .bids import (
    UNBOUNDED,
    CriticalBid,
    critical_bid_exact,
    kth_highest,
)
from .market import (
    AgentId,
    EffectiveMarket,
    ReportProfile,
    Scenario,
    SINGLE_MINDED,
    UNIT_DEMAND,
    build_effective_market,
)
from .values import Value, simplify


class UnboundedPaymentError(ArithmeticError):
    """A payment formula would have to charge an unbounded critical bid."""


def _bid_desc_key(bids: Mapping[AgentId, Value]):
    def cmp(a: AgentId, b: AgentId) -> int:
        ba, bb = bids[a], bids[b]
        if ba != bb:
            return -1 if ba > bb else 1
        return -1 if a < b else 1

    return functools.cmp_to_key(cmp)


def score_gt(bid_a: Value, size_a: int, bid_b: Value, size_b: int) -> bool:
    """bid_a/sqrt(size_a) > bid_b/sqrt(size_b), decided on cross-multiplied squares."""
    return bid_a * bid_a * size_b > bid_b * bid_b * size_a


def score_eq(bid_a: Value, size_a: int, bid_b: Value, size_b: int) -> bool:
    return bid_a * bid_a * size_b == bid_b * bid_b * size_a


# ---------------------------------------------------------------------------
# Outcomes and traces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TraceRow:
    """One priority-scan step: supply before the check, winners so far, decision."""

    agent: AgentId
    units_left: int
    winners_before: tuple[AgentId, ...]
    allocated: bool
    payment: Value


@dataclass(frozen=True, eq=False)
class Outcome:
    mechanism: str
    mode: str
    winners: tuple[AgentId, ...]
    allocation: Mapping[AgentId, int]
    payments: Mapping[AgentId, Value]
    social_welfare: Value
    revenue: Value
    granted: Mapping[AgentId, tuple[str, ...] | None] | None = None
    trace: tuple[TraceRow, ...] = ()
    units_remaining: int = 0


def _finish_outcome(
    mechanism: str,
    scenario: Scenario,
    winners: Sequence[AgentId],
    payments: Mapping[AgentId, Value],
    trace: tuple[TraceRow, ...],
) -> Outcome:
    true_bids = scenario.true_bids
    alloc = {a: (1 if a in set(winners) else 0) for a in scenario.agent_ids}
    pay = {a: simplify(payments.get(a, Fraction(0))) for a in scenario.agent_ids}
    granted = None
    if scenario.mode == SINGLE_MINDED:
        granted = {
            a: (scenario.bundle_of(a) if alloc[a] else None) for a in scenario.agent_ids
        }
        taken = {item for a in winners for item in scenario.bundle_of(a)}
        remaining = scenario.k - len(taken)
    else:
        remaining = scenario.k - len(winners)
    sw = sum((true_bids[a] for a in winners), Fraction(0))
    rev = simplify(sum(pay.values(), Fraction(0)))
    return Outcome(
        mechanism=mechanism,
        mode=scenario.mode,
        winners=tuple(winners),
        allocation=alloc,
        payments=pay,
        social_welfare=sw,
        revenue=rev,
        granted=granted,
        trace=trace,
        units_remaining=remaining,
    )


# ---------------------------------------------------------------------------
# Allocation rules
# ---------------------------------------------------------------------------


class AllocationRule:
    """Pure winner-set function of (scenario, reports); payments live elsewhere."""

    name: str = "base"
    mode: str = UNIT_DEMAND
    comparison_based: bool = True

    def winners(self, scenario: Scenario, reports: ReportProfile) -> tuple[AgentId, ...]:
        market = build_effective_market(scenario, reports)
        return tuple(a for a, won, _, _ in self.scan(scenario, market, reports.bid_map) if won)

    def scan(
        self, scenario: Scenario, market: EffectiveMarket, bids: Mapping[AgentId, Value]
    ) -> list[tuple[AgentId, bool, int, Value]]:
        """Rows (agent, allocated, units_left_before, scan_payment) in check order."""
        raise NotImplementedError

    def __hash__(self):
        return hash((type(self), self.name))

    def __eq__(self, other):
        return type(self) is type(other) and self.name == other.name

    def __repr__(self):
        return f"<allocation {self.name}>"


class DecrementingThresholdAllocation(AllocationRule):
    """Scan with decrementing supply k and thresholds that exclude prior winners.

    Winner check: bid >= k-th highest bid outside the agent's domination
    subtree and outside the current winner set.  The scan payment is that
    threshold at selection time.  Kept as a known non-strategyproof specimen.
    """

    name = "dna-mu"

    def scan(self, scenario, market, bids):
        k = scenario.k
        winners: list[AgentId] = []
        rows = []
        for agent in market.priority:
            if k == 0:
                rows.append((agent, False, 0, Fraction(0)))
                continue
            excluded = market.subtree(agent) | set(winners)
            pool = [bids[a] for a in market.priority if a not in excluded]
            threshold = kth_highest(pool, k)
            if bids[agent] >= threshold:
                rows.append((agent, True, k, threshold))
                winners.append(agent)
                k -= 1
            else:
                rows.append((agent, False, k, Fraction(0)))
        return rows


class FixedThresholdAllocation(AllocationRule):
    """Refined scan: fixed k-th-highest threshold outside the subtree only.

    The supply counter no longer decrements inside the threshold; the scan
    stops admitting winners once all units are claimed.
    """

    name = "dna-mu-r"

    def scan(self, scenario, market, bids):
        k = scenario.k
        winners: list[AgentId] = []
        rows = []
        for agent in market.priority:
            left = k - len(winners)
            if left == 0:
                rows.append((agent, False, 0, Fraction(0)))
                continue
            pool = [bids[a] for a in market.priority if a not in market.subtree(agent)]
            threshold = kth_highest(pool, k)
            if bids[agent] >= threshold:
                rows.append((agent, True, left, Fraction(0)))
                winners.append(agent)
            else:
                rows.append((agent, False, left, Fraction(0)))
        return rows


class EfficientAllocation(AllocationRule):
    """Top-k reported bids among participants; ties by ascending agent id."""

    name = "efficient"

    def top_k(self, scenario, market, bids) -> list[AgentId]:
        ranked = sorted(market.priority, key=_bid_desc_key(bids))
        return ranked[: scenario.k]

    def scan(self, scenario, market, bids):
        chosen = set(self.top_k(scenario, market, bids))
        rows = []
        taken = 0
        for agent in market.priority:
            won = agent in chosen
            rows.append((agent, won, scenario.k - taken, Fraction(0)))
            taken += int(won)
        return rows


def greedy_sqrt_k(
    entries: Sequence[tuple[AgentId, Value, tuple[str, ...]]],
    rank: Mapping[AgentId, int],
    pre_winners: Iterable[AgentId] = (),
    pre_bundles: Iterable[tuple[str, ...]] = (),
) -> set[AgentId]:
    """Greedy conflict-free selection in descending v/sqrt(|bundle|) order.

    Ties break by `rank` (priority position), then agent id.  `pre_winners`
    seed the winner set; their bundles (``pre_bundles``) block conflicts.
    """

    def cmp(x, y):
        (a, bid_a, bun_a), (b, bid_b, bun_b) = x, y
        if not score_eq(bid_a, len(bun_a), bid_b, len(bun_b)):
            return -1 if score_gt(bid_a, len(bun_a), bid_b, len(bun_b)) else 1
        if rank[a] != rank[b]:
            return -1 if rank[a] < rank[b] else 1
        return -1 if a < b else 1

    winners = set(pre_winners)
    taken: set[str] = set()
    for bundle in pre_bundles:
        taken |= set(bundle)
    for agent, _, bundle in sorted(entries, key=functools.cmp_to_key(cmp)):
        if agent in winners:
            continue
        if taken & set(bundle):
            continue
        winners.add(agent)
        taken |= set(bundle)
    return winners


class GreedyRankedAllocation(AllocationRule):
    """Greedy sqrt-ranked selection over every participant at once."""

    name = "greedy-sqrt-k"
    mode = SINGLE_MINDED

    def scan(self, scenario, market, bids):
        rank = {a: i for i, a in enumerate(market.priority)}
        entries = [(a, bids[a], scenario.bundle_of(a)) for a in market.priority]
        chosen = greedy_sqrt_k(entries, rank)
        rows = []
        taken: set[str] = set()
        for agent in market.priority:
            won = agent in chosen
            rows.append((agent, won, scenario.k - len(taken), Fraction(0)))
            if won:
                taken |= set(scenario.bundle_of(agent))
        return rows


class ArgmaxScanAllocation(AllocationRule):
    """Priority scan; an agent wins iff she attains the maximum score over the
    market outside her own domination subtree and her bundle is still free."""

    name = "nsa"
    mode = SINGLE_MINDED

    def scan(self, scenario, market, bids):
        rows = []
        winners: list[AgentId] = []
        taken: set[str] = set()
        for agent in market.priority:
            bundle = scenario.bundle_of(agent)
            rivals = [a for a in market.priority if a not in market.subtree(agent)]
            attains_max = all(
                not score_gt(bids[r], len(scenario.bundle_of(r)), bids[agent], len(bundle))
                for r in rivals
            )
            won = attains_max and not (taken & set(bundle))
            rows.append((agent, won, scenario.k - len(taken), Fraction(0)))
            if won:
                winners.append(agent)
                taken |= set(bundle)
        return rows


class ExploratoryReplayAllocation(AllocationRule):
    """Priority scan where each agent's check replays the greedy selection over
    the market outside her subtree, seeded with current winners.  Retained as a
    known invitation-monotonicity-violating specimen."""

    name = "exploratory-1"
    mode = SINGLE_MINDED

    def scan(self, scenario, market, bids):
        rank = {a: i for i, a in enumerate(market.priority)}
        rows = []
        winners: list[AgentId] = []
        taken_bundles: list[tuple[str, ...]] = []
        for agent in market.priority:
            competitors = [
                a
                for a in market.priority
                if a == agent or a not in market.subtree(agent)
            ]
            entries = [(a, bids[a], scenario.bundle_of(a)) for a in competitors]
            replay = greedy_sqrt_k(entries, rank, winners, taken_bundles)
            won = agent in replay
            units = scenario.k - len({i for b in taken_bundles for i in b})
            rows.append((agent, won, units, Fraction(0)))
            if won:
                winners.append(agent)
                taken_bundles.append(scenario.bundle_of(agent))
        return rows


class TopKScanAllocation(AllocationRule):
    """Priority scan; an agent wins iff fewer than `rank_k` rivals outside her
    subtree out-score her and her bundle is free.  Known monotonicity-violating
    specimen."""

    mode = SINGLE_MINDED

    def __init__(self, rank_k: int | None = None):
        self.rank_k = rank_k
        self.name = "exploratory-2" if rank_k is None else f"exploratory-2[k={rank_k}]"

    def __hash__(self):
        return hash((type(self), self.rank_k))

    def __eq__(self, other):
        return type(other) is type(self) and other.rank_k == self.rank_k

    def scan(self, scenario, market, bids):
        k = self.rank_k if self.rank_k is not None else scenario.k
        rows = []
        taken: set[str] = set()
        for agent in market.priority:
            bundle = scenario.bundle_of(agent)
            rivals = [a for a in market.priority if a not in market.subtree(agent)]
            above = sum(
                1
                for r in rivals
                if score_gt(bids[r], len(scenario.bundle_of(r)), bids[agent], len(bundle))
            )
            won = above < k and not (taken & set(bundle))
            rows.append((agent, won, scenario.k - len(taken), Fraction(0)))
            if won:
                taken |= set(bundle)
        return rows


# ---------------------------------------------------------------------------
# Payment schemes
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class PaymentDecomposition:
    """Winning/losing payment per agent; p = f*winning + (1-f)*losing."""

    winning_payment: Mapping[AgentId, Value | object]
    losing_payment: Mapping[AgentId, Value | object]


def _require_finite(v: CriticalBid, agent: AgentId, what: str) -> Value:
    if v.is_unbounded:
        raise UnboundedPaymentError(f"{what} for {agent!r} is unbounded")
    return v.value


def id_mon_rm_payment(
    alloc: AllocationRule,
    scenario: Scenario,
    reports: ReportProfile,
    agents: Iterable[AgentId] | None = None,
) -> PaymentDecomposition:
    """Revenue-maximizing scheme for invitation-depressed-monotone rules:
    winners pay their no-invite critical bid, losers are refunded the gap the
    allocation opens between their no-invite and reported-invite critical bids.
    """
    invites = reports.invite_map
    winning: dict[AgentId, Value] = {}
    losing: dict[AgentId, Value] = {}
    for agent in agents if agents is not None else scenario.agent_ids:
        v_empty = critical_bid_exact(alloc, scenario, reports, agent, ())
        v_rep = critical_bid_exact(alloc, scenario, reports, agent, invites.get(agent, ()))
        base = _require_finite(v_empty, agent, "no-invite critical bid")
        winning[agent] = simplify(base)
        losing[agent] = simplify(
            base - _require_finite(v_rep, agent, "reported-invite critical bid")
        )
    return PaymentDecomposition(winning_payment=winning, losing_payment=losing)


def ip_mon_rm_payment(
    alloc: AllocationRule,
    scenario: Scenario,
    reports: ReportProfile,
    agents: Iterable[AgentId] | None = None,
    winners: frozenset[AgentId] | None = None,
) -> PaymentDecomposition:
    """Revenue-maximizing scheme for invitation-promoted-monotone rules:
    winners pay their reported-invite critical bid, losers pay zero."""
    invites = reports.invite_map
    if winners is None:
        winners = frozenset(alloc.winners(scenario, reports))
    winning: dict[AgentId, Value | object] = {}
    losing: dict[AgentId, Value] = {}
    for agent in agents if agents is not None else scenario.agent_ids:
        losing[agent] = Fraction(0)
        v_rep = critical_bid_exact(alloc, scenario, reports, agent, invites.get(agent, ()))
        if agent in winners:
            winning[agent] = simplify(_require_finite(v_rep, agent, "critical bid"))
        else:
            winning[agent] = UNBOUNDED if v_rep.is_unbounded else simplify(v_rep.value)
    return PaymentDecomposition(winning_payment=winning, losing_payment=losing)


def polynomial_payment_family(
    alloc: AllocationRule,
    scenario: Scenario,
    reports: ReportProfile,
    alpha: Fraction,
    beta: Fraction,
    gamma: Fraction,
    mode: str,
    agents: Iterable[AgentId] | None = None,
) -> PaymentDecomposition:
    """Parametric strategyproof payment constructors on top of critical bids.

    mode "ID": winning = -alpha*v(r) - beta*v(r)^2 + gamma*v(0);
    mode "IP": winning =  alpha*v(r) + beta*v(r)^2 + gamma*v(0);
    losing = winning - v(r) in both modes.  alpha, beta, gamma >= 0.
    """
    if mode not in ("ID", "IP"):
        raise ValueError("mode must be 'ID' or 'IP'")
    if min(alpha, beta, gamma) < 0:
        raise ValueError("coefficients must be nonnegative")
    invites = reports.invite_map
    winners = frozenset(alloc.winners(scenario, reports))
    sign = Fraction(-1) if mode == "ID" else Fraction(1)
    # p_win = sign*(alpha*v + beta*v^2) + gamma*v0;  p_lose = p_win - v.
    coeffs = {
        "win": (sign * alpha, sign * beta),
        "lose": (sign * alpha - 1, sign * beta),
    }
    winning: dict[AgentId, Value | object] = {}
    losing: dict[AgentId, Value | object] = {}
    for agent in agents if agents is not None else scenario.agent_ids:
        charged = "win" if agent in winners else "lose"
        v_rep = critical_bid_exact(alloc, scenario, reports, agent, invites.get(agent, ()))
        v_empty = None
        if gamma:
            v_empty = critical_bid_exact(alloc, scenario, reports, agent, ())

        def side(which: str) -> Value | object:
            lin, quad = coeffs[which]
            needs_rep = lin != 0 or quad != 0
            if (needs_rep and v_rep.is_unbounded) or (gamma and v_empty.is_unbounded):
                if which == charged:
                    raise UnboundedPaymentError(
                        f"critical bid for {agent!r} is unbounded in {mode} payment"
                    )
                return UNBOUNDED
            total: Value = Fraction(0)
            if needs_rep:
                total = lin * v_rep.value + quad * v_rep.value * v_rep.value
            if gamma:
                total = total + gamma * v_empty.value
            return simplify(total)

        winning[agent] = side("win")
        losing[agent] = side("lose")
    return PaymentDecomposition(winning_payment=winning, losing_payment=losing)


# ---------------------------------------------------------------------------
# Mechanisms (allocation + payments -> Outcome)
# ---------------------------------------------------------------------------


class Mechanism:
    """Deterministic allocation plus payment rule; produces auditable Outcomes."""

    id: str
    mode: str
    allocation: AllocationRule

    def run(
        self,
        scenario: Scenario,
        reports: ReportProfile | None = None,
        payment_agents: Iterable[AgentId] | None = None,
    ) -> Outcome:
        reports = reports if reports is not None else ReportProfile.truthful(scenario)
        if scenario.mode != self.mode:
            raise ValueError(f"{self.id} needs a {self.mode} scenario")
        market = build_effective_market(scenario, reports)
        rows = self.allocation.scan(scenario, market, reports.bid_map)
        winners = [a for a, won, _, _ in rows if won]
        pay_for = set(payment_agents) if payment_agents is not None else set(scenario.agent_ids)
        payments = self._payments(scenario, reports, market, rows, winners, pay_for)
        trace = tuple(
            TraceRow(
                agent=a,
                units_left=units,
                winners_before=tuple(w for w, won2, _, _ in rows[:i] if won2),
                allocated=won,
                payment=simplify(payments.get(a, Fraction(0))),
            )
            for i, (a, won, units, _) in enumerate(rows)
        )
        return _finish_outcome(self.id, scenario, winners, payments, trace)

    def utility(self, scenario: Scenario, reports: ReportProfile, agent: AgentId) -> Value:
        """Quasi-linear utility at true value: f*v_true - p."""
        out = self.run(scenario, reports, payment_agents=(agent,))
        gain = scenario.true_bids[agent] if out.allocation[agent] else Fraction(0)
        return simplify(gain - out.payments[agent])

    def _payments(self, scenario, reports, market, rows, winners, pay_for):
        raise NotImplementedError

    def __repr__(self):
        return f"<mechanism {self.id}>"


class DnaMu(Mechanism):
    """Decrementing-threshold scan; winners pay the selection-time threshold."""

    id = "dna-mu"
    mode = UNIT_DEMAND
    allocation = DecrementingThresholdAllocation()

    def _payments(self, scenario, reports, market, rows, winners, pay_for):
        return {a: p for a, won, _, p in rows if won and a in pay_for}


class DnaMuR(Mechanism):
    """Fixed-threshold scan; winners pay their exact critical bid."""

    id = "dna-mu-r"
    mode = UNIT_DEMAND
    allocation = FixedThresholdAllocation()

    def _payments(self, scenario, reports, market, rows, winners, pay_for):
        invites = reports.invite_map
        payments = {}
        for agent in winners:
            if agent not in pay_for:
                continue
            cb = critical_bid_exact(
                self.allocation, scenario, reports, agent, invites.get(agent, ())
            )
            payments[agent] = _require_finite(cb, agent, "winner critical bid")
        return payments


def _optimal_unit_welfare(bids: Mapping[AgentId, Value], pool: Iterable[AgentId], k: int) -> Value:
    ranked = sorted((bids[a] for a in pool), reverse=True)
    return sum(ranked[:k], Fraction(0))


class Vcg(Mechanism):
    """Efficient allocation with subtree-removal externality payments."""

    id = "vcg"
    mode = UNIT_DEMAND
    allocation = EfficientAllocation()

    def _payments(self, scenario, reports, market, rows, winners, pay_for):
        bids = reports.bid_map
        winner_set = set(winners)
        total = sum((bids[a] for a in winners), Fraction(0))
        payments = {}
        for agent in market.priority:
            if agent not in pay_for:
                continue
            without = [a for a in market.priority if a not in market.subtree(agent)]
            opt_without = _optimal_unit_welfare(bids, without, scenario.k)
            others_now = total - (bids[agent] if agent in winner_set else Fraction(0))
            payments[agent] = opt_without - others_now
        return payments


class VcgRm(Mechanism):
    """Efficient allocation with the revenue-maximizing critical-bid payments:
    winner pays the k-th highest bid outside her subtree; a loser is paid the
    gap between that and the market-wide k-th highest bid."""

    id = "vcg-rm"
    mode = UNIT_DEMAND
    allocation = EfficientAllocation()

    def _payments(self, scenario, reports, market, rows, winners, pay_for):
        bids = reports.bid_map
        k = scenario.k
        v_k_all = kth_highest([bids[a] for a in market.priority], k)
        winner_set = set(winners)
        payments = {}
        for agent in market.priority:
            if agent not in pay_for:
                continue
            outside = [bids[a] for a in market.priority if a not in market.subtree(agent)]
            v_k_out = kth_highest(outside, k)
            payments[agent] = v_k_out if agent in winner_set else v_k_out - v_k_all
        return payments


class _CriticalBidPaid(Mechanism):
    """Shared payment plumbing for rules paired with critical-bid schemes."""

    scheme = "ip"  # or "id"

    def _payments(self, scenario, reports, market, rows, winners, pay_for):
        invites = reports.invite_map
        winner_set = set(winners)
        payments: dict[AgentId, Value] = {}
        for agent in market.priority:
            if agent not in pay_for:
                continue
            if self.scheme == "ip":
                if agent in winner_set:
                    cb = critical_bid_exact(
                        self.allocation, scenario, reports, agent, invites.get(agent, ())
                    )
                    payments[agent] = _require_finite(cb, agent, "winner critical bid")
                else:
                    payments[agent] = Fraction(0)
            else:
                v_empty = _require_finite(
                    critical_bid_exact(self.allocation, scenario, reports, agent, ()),
                    agent,
                    "no-invite critical bid",
                )
                if agent in winner_set:
                    payments[agent] = v_empty
                else:
                    v_rep = _require_finite(
                        critical_bid_exact(
                            self.allocation, scenario, reports, agent, invites.get(agent, ())
                        ),
                        agent,
                        "reported-invite critical bid",
                    )
                    payments[agent] = simplify(v_empty - v_rep)
        return payments


class NetSqrtKApm(_CriticalBidPaid):
    """Greedy sqrt-ranked allocation over the whole market with the
    losers-subsidized revenue-maximizing payment."""

    id = "net-sqrt-k-apm"
    mode = SINGLE_MINDED
    allocation = GreedyRankedAllocation()
    scheme = "id"


class Nsa(_CriticalBidPaid):
    """Argmax-gated scan with losers-pay-zero critical-bid payments."""

    id = "nsa"
    mode = SINGLE_MINDED
    allocation = ArgmaxScanAllocation()
    scheme = "ip"


class ExploratoryOne(_CriticalBidPaid):
    """Broken replay-scan specimen, paired with losers-pay-zero payments so the
    auditor can exercise it end to end."""

    id = "exploratory-1"
    mode = SINGLE_MINDED
    allocation = ExploratoryReplayAllocation()
    scheme = "ip"


class ExploratoryTwo(_CriticalBidPaid):
    """Broken top-k-gate specimen, losers-pay-zero payments."""

    id = "exploratory-2"
    mode = SINGLE_MINDED
    scheme = "ip"

    def __init__(self, rank_k: int | None = None):
        self.allocation = TopKScanAllocation(rank_k)
        if rank_k is not None:
            self.id = f"exploratory-2[k={rank_k}]"


class PairedMechanism(_CriticalBidPaid):
    """Any allocation rule married to one of the two critical-bid schemes;
    lets the auditor exercise arbitrary allocation/payment pairings."""

    def __init__(self, allocation: AllocationRule, scheme: str, mech_id: str | None = None):
        if scheme not in ("id", "ip"):
            raise ValueError("scheme must be 'id' or 'ip'")
        self.allocation = allocation
        self.scheme = scheme
        self.mode = allocation.mode
        self.id = mech_id or f"{allocation.name}+{scheme}-rm"


def alloc_exploratory_1(scenario: Scenario, reports: ReportProfile) -> set[AgentId]:
    return set(ExploratoryReplayAllocation().winners(scenario, reports))

def alloc_exploratory_2(
    scenario: Scenario, reports: ReportProfile, rank_k: int
) -> set[AgentId]:
    return set(TopKScanAllocation(rank_k).winners(scenario, reports))


MECHANISMS: dict[str, Callable[[], Mechanism]] = {
    "dna-mu": DnaMu,
    "dna-mu-r": DnaMuR,
    "vcg": Vcg,
    "vcg-rm": VcgRm,
    "net-sqrt-k-apm": NetSqrtKApm,
    "nsa": Nsa,
    "exploratory-1": ExploratoryOne,
    "exploratory-2": ExploratoryTwo,
}


def get_mechanism(mech_id: str, rank_k: int | None = None) -> Mechanism:
    if mech_id not in MECHANISMS:
        raise KeyError(f"unknown mechanism {mech_id!r}; known: {sorted(MECHANISMS)}")
    if mech_id == "exploratory-2":
        return ExploratoryTwo(rank_k)
    return MECHANISMS[mech_id]()
