"""Brute-force certification and refutation of auction axioms.

Every audit enumerates a finite deviation space and either certifies the
axiom over it or returns a concrete witness (agent, reports, values) that can
be replayed through the mechanism to reproduce the violation exactly.

Completeness argument for bid deviations: all engine rules are comparison
based, so an agent's outcome (and, by bid-independence within the win/lose
class, her utility) is constant on each open interval between adjacent
boundary candidates.  Probing every candidate plus one midpoint per gap and
one point above the top therefore covers the whole continuous bid space.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .bids import UNBOUNDED, boundary_candidates, critical_bid_exact
from .market import AgentId, ReportProfile, Scenario
from .mechanisms import AllocationRule, Mechanism
from .values import Value, simplify, value_str

BUDGET_ENV = "NETAUCTION_AUDIT_BUDGET"


class SpaceTooLargeError(RuntimeError):
    """Deviation enumeration exceeded the configured budget."""


class Axiom(str, Enum):
    IR = "IR"
    SP = "SP"
    WBB = "WBB"
    VALUE_MON = "VALUE_MON"
    INV_MON_PAYMENT = "INV_MON_PAYMENT"
    BID_INDEP = "BID_INDEP"
    ID_MON = "ID_MON"
    IP_MON = "IP_MON"
    DEGENERATED = "DEGENERATED"
    THM1_COND3 = "THM1_COND3"
    THM1_COND4 = "THM1_COND4"


@dataclass(frozen=True)
class Witness:
    """Concrete refutation: replaying `deviation` reproduces `after` exactly."""

    agent: AgentId
    detail: str
    baseline: ReportProfile | None = None
    deviation: ReportProfile | None = None
    before: object = None
    after: object = None

    def summary(self) -> str:
        return f"{self.agent}: {self.detail}"


@dataclass(frozen=True)
class AuditVerdict:
    axiom: Axiom
    passed: bool
    witness: Witness | None = None
    coverage: str = "exhaustive"
    opponent_scope: str = "truthful"

    def __str__(self):
        tail = f" [{self.witness.summary()}]" if self.witness else ""
        return f"{self.axiom.value}: {'pass' if self.passed else 'FAIL'}{tail}"


@dataclass(frozen=True)
class DeviationSpace:
    """Bounds on the enumerated deviations.

    Invite subsets are enumerated in full up to `invite_cap` neighbors;
    beyond that a seeded sample (plus the empty set, the full set and all
    single removals) is used and verdict coverage drops to "sampled".
    """

    invite_cap: int = 10
    budget: int | None = None
    sampled_opponents: int = 2
    sampled_invites: int = 12
    seed: int = 7

    @staticmethod
    def default() -> "DeviationSpace":
        raw = os.environ.get(BUDGET_ENV)
        return DeviationSpace(budget=int(raw) if raw else None)


class _Meter:
    def __init__(self, budget: int | None):
        self.budget = budget
        self.count = 0

    def tick(self, n: int = 1):
        self.count += n
        if self.budget is not None and self.count > self.budget:
            raise SpaceTooLargeError(
                f"deviation enumeration exceeded budget of {self.budget} evaluations"
            )


def invite_actions(
    scenario: Scenario, agent: AgentId, space: DeviationSpace, rng: random.Random
) -> tuple[list[tuple[AgentId, ...]], bool]:
    """Invitation actions to try, smallest first.  Second value: exhaustive?"""
    nbrs = scenario.true_neighbors[agent]
    if len(nbrs) <= space.invite_cap:
        actions = []
        for size in range(len(nbrs) + 1):
            for combo in combinations(nbrs, size):
                actions.append(tuple(combo))
        return actions, True
    picked = {(), tuple(nbrs)}
    for drop in nbrs:
        picked.add(tuple(n for n in nbrs if n != drop))
    while len(picked) < space.sampled_invites:
        picked.add(tuple(n for n in nbrs if rng.random() < 0.5))
    return sorted(picked, key=lambda t: (len(t), t)), False


def bid_grid(
    scenario: Scenario, reports: ReportProfile, agent: AgentId
) -> list[Value]:
    """Candidate bids covering every outcome class of the continuous bid space."""
    grid: list[Value] = list(boundary_candidates(scenario, reports, agent))
    for _, b in scenario.bids:
        grid.append(b)
    grid.sort()
    unique: list[Value] = []
    for g in grid:
        if not unique or g != unique[-1]:
            unique.append(g)
    full = list(unique)
    for lo, hi in zip(unique, unique[1:]):
        full.append(simplify((lo + hi) * Fraction(1, 2)))
    full.append(unique[-1] + 1)
    full.sort()
    return full


def opponent_profiles(
    scenario: Scenario, space: DeviationSpace
) -> list[tuple[str, ReportProfile]]:
    """Truthful profile plus seeded sampled misreport profiles of everyone."""
    truthful = ReportProfile.truthful(scenario)
    out = [("truthful", truthful)]
    rng = random.Random(f"opponents:{space.seed}:{len(scenario.agent_ids)}:{scenario.seller}")
    for s in range(space.sampled_opponents):
        profile = truthful
        for agent in scenario.agent_ids:
            nbrs = scenario.true_neighbors[agent]
            invites = tuple(n for n in nbrs if rng.random() < 0.7)
            num, den = rng.choice([(1, 1), (1, 1), (1, 2), (2, 1), (0, 1)])
            bid = scenario.true_bids[agent] * Fraction(num, den)
            profile = profile.replace(scenario, agent, bid=bid, invites=invites)
        out.append((f"sampled-{s}", profile))
    return out


def _reset_truthful(scenario: Scenario, profile: ReportProfile, agent: AgentId) -> ReportProfile:
    return profile.replace(
        scenario,
        agent,
        bid=scenario.true_bids[agent],
        invites=scenario.true_neighbors[agent],
    )


# ---------------------------------------------------------------------------
# Axiom audits
# ---------------------------------------------------------------------------


def audit_ir(
    mechanism: Mechanism, scenario: Scenario, space: DeviationSpace | None = None
) -> AuditVerdict:
    """Truthful bid, any invitation action: utility must be nonnegative."""
    space = space or DeviationSpace.default()
    rng = random.Random(space.seed)
    meter = _Meter(space.budget)
    coverage = "exhaustive"
    for scope, base in opponent_profiles(scenario, space):
        for agent in scenario.agent_ids:
            baseline = _reset_truthful(scenario, base, agent)
            actions, exhaustive = invite_actions(scenario, agent, space, rng)
            coverage = coverage if exhaustive else "sampled"
            for invites in actions:
                meter.tick()
                dev = baseline.replace(scenario, agent, invites=invites)
                u = mechanism.utility(scenario, dev, agent)
                if u < 0:
                    return AuditVerdict(
                        Axiom.IR,
                        False,
                        Witness(
                            agent,
                            f"invites {list(invites)} give utility {value_str(u)} < 0",
                            baseline=baseline,
                            deviation=dev,
                            before=Fraction(0),
                            after=u,
                        ),
                        coverage=coverage,
                        opponent_scope=scope,
                    )
    return AuditVerdict(Axiom.IR, True, coverage=coverage, opponent_scope=_scope_label(space))


def audit_sp(
    mechanism: Mechanism, scenario: Scenario, space: DeviationSpace | None = None
) -> AuditVerdict:
    """Truthful reporting must dominate every (bid, invite) deviation."""
    space = space or DeviationSpace.default()
    rng = random.Random(space.seed)
    meter = _Meter(space.budget)
    coverage = "exhaustive"
    for scope, base in opponent_profiles(scenario, space):
        for agent in scenario.agent_ids:
            baseline = _reset_truthful(scenario, base, agent)
            u_truth = mechanism.utility(scenario, baseline, agent)
            actions, exhaustive = invite_actions(scenario, agent, space, rng)
            coverage = coverage if exhaustive else "sampled"
            true_bid = scenario.true_bids[agent]
            for invites in actions:
                dev0 = baseline.replace(scenario, agent, invites=invites)
                grid = bid_grid(scenario, dev0, agent)
                # Truthful bid first: pure invitation manipulations surface
                # as witnesses before bid manipulations do.
                for bid in [true_bid] + [b for b in grid if b != true_bid]:
                    meter.tick()
                    dev = dev0.replace(scenario, agent, bid=bid)
                    u = mechanism.utility(scenario, dev, agent)
                    if u > u_truth:
                        return AuditVerdict(
                            Axiom.SP,
                            False,
                            Witness(
                                agent,
                                f"bid {value_str(bid)}, invites {list(invites)}: "
                                f"utility {value_str(u_truth)} -> {value_str(u)}",
                                baseline=baseline,
                                deviation=dev,
                                before=u_truth,
                                after=u,
                            ),
                            coverage=coverage,
                            opponent_scope=scope,
                        )
    return AuditVerdict(Axiom.SP, True, coverage=coverage, opponent_scope=_scope_label(space))


def audit_wbb(
    mechanism: Mechanism, scenario: Scenario, space: DeviationSpace | None = None
) -> AuditVerdict:
    """Seller revenue must be nonnegative on every profile in the space."""
    space = space or DeviationSpace.default()
    rng = random.Random(space.seed)
    meter = _Meter(space.budget)
    truthful = ReportProfile.truthful(scenario)
    coverage = "exhaustive"

    profiles: list[tuple[str, ReportProfile]] = list(opponent_profiles(scenario, space))
    for agent in scenario.agent_ids:
        actions, exhaustive = invite_actions(scenario, agent, space, rng)
        coverage = coverage if exhaustive else "sampled"
        for invites in actions:
            dev0 = truthful.replace(scenario, agent, invites=invites)
            profiles.append((f"deviate-{agent}", dev0))
            for bid in bid_grid(scenario, dev0, agent):
                profiles.append((f"deviate-{agent}", dev0.replace(scenario, agent, bid=bid)))

    for scope, profile in profiles:
        meter.tick()
        out = mechanism.run(scenario, profile)
        if out.revenue < 0:
            return AuditVerdict(
                Axiom.WBB,
                False,
                Witness(
                    scope,
                    f"revenue {value_str(out.revenue)} < 0",
                    baseline=truthful,
                    deviation=profile,
                    before=Fraction(0),
                    after=out.revenue,
                ),
                coverage=coverage,
                opponent_scope=scope,
            )
    return AuditVerdict(Axiom.WBB, True, coverage=coverage, opponent_scope=_scope_label(space))


def _wins(alloc: AllocationRule, scenario, reports, agent) -> bool:
    return agent in alloc.winners(scenario, reports)


def audit_value_monotone(
    alloc: AllocationRule, scenario: Scenario, space: DeviationSpace | None = None
) -> AuditVerdict:
    """For a fixed invitation action, the winning bid set must be upward closed."""
    space = space or DeviationSpace.default()
    rng = random.Random(space.seed)
    meter = _Meter(space.budget)
    truthful = ReportProfile.truthful(scenario)
    coverage = "exhaustive"
    for agent in scenario.agent_ids:
        actions, exhaustive = invite_actions(scenario, agent, space, rng)
        coverage = coverage if exhaustive else "sampled"
        for invites in actions:
            base = truthful.replace(scenario, agent, invites=invites)
            win_at = None
            for bid in bid_grid(scenario, base, agent):
                meter.tick()
                won = _wins(alloc, scenario, base.replace(scenario, agent, bid=bid), agent)
                if won and win_at is None:
                    win_at = bid
                elif win_at is not None and not won:
                    return AuditVerdict(
                        Axiom.VALUE_MON,
                        False,
                        Witness(
                            agent,
                            f"invites {list(invites)}: wins at {value_str(win_at)} "
                            f"but loses at {value_str(bid)}",
                            baseline=base.replace(scenario, agent, bid=win_at),
                            deviation=base.replace(scenario, agent, bid=bid),
                            before=1,
                            after=0,
                        ),
                        coverage=coverage,
                    )
    return AuditVerdict(Axiom.VALUE_MON, True, coverage=coverage)


def _audit_invite_mon(
    axiom: Axiom,
    alloc: AllocationRule,
    scenario: Scenario,
    space: DeviationSpace | None,
) -> AuditVerdict:
    """Shared lattice check; ID wants smaller invite sets to win at least as
    often, IP wants larger ones to."""
    value_mon = audit_value_monotone(alloc, scenario, space)
    if not value_mon.passed:
        return AuditVerdict(axiom, False, value_mon.witness, coverage=value_mon.coverage)
    space = space or DeviationSpace.default()
    rng = random.Random(space.seed)
    meter = _Meter(space.budget)
    truthful = ReportProfile.truthful(scenario)
    coverage = "exhaustive"
    for agent in scenario.agent_ids:
        actions, exhaustive = invite_actions(scenario, agent, space, rng)
        coverage = coverage if exhaustive else "sampled"
        for small, large in combinations(actions, 2):
            if not set(small) <= set(large):
                continue
            base_small = truthful.replace(scenario, agent, invites=small)
            base_large = truthful.replace(scenario, agent, invites=large)
            merged = sorted(
                set(bid_grid(scenario, base_small, agent))
                | set(bid_grid(scenario, base_large, agent))
            )
            grid = list(merged)
            for lo, hi in zip(merged, merged[1:]):
                grid.append(simplify((lo + hi) * Fraction(1, 2)))
            for bid in grid:
                meter.tick()
                f_small = _wins(
                    alloc, scenario, base_small.replace(scenario, agent, bid=bid), agent
                )
                f_large = _wins(
                    alloc, scenario, base_large.replace(scenario, agent, bid=bid), agent
                )
                bad = (f_small < f_large) if axiom is Axiom.ID_MON else (f_small > f_large)
                if bad:
                    keep, drop = (large, small) if f_small < f_large else (small, large)
                    return AuditVerdict(
                        axiom,
                        False,
                        Witness(
                            agent,
                            f"bid {value_str(bid)}: wins with invites {list(keep)} "
                            f"but loses with {list(drop)}",
                            baseline=truthful.replace(
                                scenario, agent, bid=bid, invites=keep
                            ),
                            deviation=truthful.replace(
                                scenario, agent, bid=bid, invites=drop
                            ),
                            before=1,
                            after=0,
                        ),
                        coverage=coverage,
                    )
    return AuditVerdict(axiom, True, coverage=coverage)


def audit_id_mon(
    alloc: AllocationRule, scenario: Scenario, space: DeviationSpace | None = None
) -> AuditVerdict:
    return _audit_invite_mon(Axiom.ID_MON, alloc, scenario, space)


def audit_ip_mon(
    alloc: AllocationRule, scenario: Scenario, space: DeviationSpace | None = None
) -> AuditVerdict:
    return _audit_invite_mon(Axiom.IP_MON, alloc, scenario, space)


def audit_payment_axioms(
    mechanism: Mechanism, scenario: Scenario, space: DeviationSpace | None = None
) -> list[AuditVerdict]:
    """Bid-independence, invitational monotonicity of the decomposition, the
    winning-losing gap identity against the exact critical bid, and the
    no-invite losing payment sign."""
    space = space or DeviationSpace.default()
    rng = random.Random(space.seed)
    meter = _Meter(space.budget)
    truthful = ReportProfile.truthful(scenario)
    coverage = "exhaustive"

    bid_indep: AuditVerdict | None = None
    inv_mon: AuditVerdict | None = None
    cond3: AuditVerdict | None = None
    cond4: AuditVerdict | None = None

    for agent in scenario.agent_ids:
        actions, exhaustive = invite_actions(scenario, agent, space, rng)
        coverage = coverage if exhaustive else "sampled"
        win_pay: dict[tuple[AgentId, ...], object] = {}
        lose_pay: dict[tuple[AgentId, ...], object] = {}
        for invites in actions:
            base = truthful.replace(scenario, agent, invites=invites)
            seen: dict[bool, tuple[Value, Value]] = {}
            for bid in bid_grid(scenario, base, agent):
                meter.tick()
                dev = base.replace(scenario, agent, bid=bid)
                out = mechanism.run(scenario, dev, payment_agents=(agent,))
                won = bool(out.allocation[agent])
                pay = out.payments[agent]
                if won not in seen:
                    seen[won] = (bid, pay)
                elif seen[won][1] != pay and bid_indep is None:
                    bid_indep = AuditVerdict(
                        Axiom.BID_INDEP,
                        False,
                        Witness(
                            agent,
                            f"invites {list(invites)}, {'winning' if won else 'losing'} "
                            f"payment differs across bids "
                            f"{value_str(seen[won][0])} / {value_str(bid)}: "
                            f"{value_str(seen[won][1])} vs {value_str(pay)}",
                            baseline=base.replace(scenario, agent, bid=seen[won][0]),
                            deviation=dev,
                            before=seen[won][1],
                            after=pay,
                        ),
                        coverage=coverage,
                    )
            win_pay[invites] = seen[True][1] if True in seen else UNBOUNDED
            lose_pay[invites] = seen[False][1] if False in seen else None

            cb = critical_bid_exact(mechanism.allocation, scenario, truthful, agent, invites)
            if cond3 is None and True in seen and False in seen and not cb.is_unbounded:
                gap = simplify(seen[True][1] - seen[False][1])
                if gap != cb.value:
                    cond3 = AuditVerdict(
                        Axiom.THM1_COND3,
                        False,
                        Witness(
                            agent,
                            f"invites {list(invites)}: winning-losing payment gap "
                            f"{value_str(gap)} != critical bid {value_str(cb.value)}",
                            before=gap,
                            after=cb.value,
                        ),
                        coverage=coverage,
                    )
            if cond4 is None and invites == () and False in seen and seen[False][1] > 0:
                cond4 = AuditVerdict(
                    Axiom.THM1_COND4,
                    False,
                    Witness(
                        agent,
                        f"losing payment with no invites is {value_str(seen[False][1])} > 0",
                        before=seen[False][1],
                        after=Fraction(0),
                    ),
                    coverage=coverage,
                )

        if inv_mon is None:
            for small, large in combinations(actions, 2):
                if not set(small) <= set(large):
                    continue

                def bad_pair(table, label):
                    # Monotone means paying less with more invites: need
                    # table[small] >= table[large], Unbounded acting as +inf.
                    a, b = table[small], table[large]
                    if a is None or b is None:
                        return None
                    a_inf, b_inf = a is UNBOUNDED, b is UNBOUNDED
                    if (b_inf and not a_inf) or (not a_inf and not b_inf and a < b):
                        return AuditVerdict(
                            Axiom.INV_MON_PAYMENT,
                            False,
                            Witness(
                                agent,
                                f"{label} payment rises with fewer invites: "
                                f"{value_str(b) if not b_inf else 'Unbounded'} at {list(large)} vs "
                                f"{value_str(a) if not a_inf else 'Unbounded'} at {list(small)}",
                                before=a,
                                after=b,
                            ),
                            coverage=coverage,
                        )
                    return None

                inv_mon = bad_pair(win_pay, "winning") or bad_pair(lose_pay, "losing")
                if inv_mon is not None:
                    break

    verdicts = [
        bid_indep or AuditVerdict(Axiom.BID_INDEP, True, coverage=coverage),
        inv_mon or AuditVerdict(Axiom.INV_MON_PAYMENT, True, coverage=coverage),
        cond3 or AuditVerdict(Axiom.THM1_COND3, True, coverage=coverage),
        cond4 or AuditVerdict(Axiom.THM1_COND4, True, coverage=coverage),
    ]
    return verdicts


def audit_degenerated(
    mechanism: Mechanism, scenario: Scenario, space: DeviationSpace | None = None
) -> AuditVerdict:
    """Passed means: at truthful bids, no agent's utility depends on her own
    invitation action."""
    space = space or DeviationSpace.default()
    rng = random.Random(space.seed)
    meter = _Meter(space.budget)
    truthful = ReportProfile.truthful(scenario)
    coverage = "exhaustive"
    for agent in scenario.agent_ids:
        u_truth = mechanism.utility(scenario, truthful, agent)
        actions, exhaustive = invite_actions(scenario, agent, space, rng)
        coverage = coverage if exhaustive else "sampled"
        for invites in actions:
            meter.tick()
            dev = truthful.replace(scenario, agent, invites=invites)
            u = mechanism.utility(scenario, dev, agent)
            if u != u_truth:
                return AuditVerdict(
                    Axiom.DEGENERATED,
                    False,
                    Witness(
                        agent,
                        f"utility moves with own invites: {value_str(u_truth)} at full set, "
                        f"{value_str(u)} at {list(invites)}",
                        baseline=truthful,
                        deviation=dev,
                        before=u_truth,
                        after=u,
                    ),
                    coverage=coverage,
                )
    return AuditVerdict(Axiom.DEGENERATED, True, coverage=coverage)


def _scope_label(space: DeviationSpace) -> str:
    if space.sampled_opponents:
        return f"truthful+{space.sampled_opponents}-sampled"
    return "truthful"


AUDITS = {
    "ir": audit_ir,
    "sp": audit_sp,
    "wbb": audit_wbb,
    "value-mon": lambda mech, scenario, space=None: audit_value_monotone(
        mech.allocation, scenario, space
    ),
    "id-mon": lambda mech, scenario, space=None: audit_id_mon(mech.allocation, scenario, space),
    "ip-mon": lambda mech, scenario, space=None: audit_ip_mon(mech.allocation, scenario, space),
    "degenerated": audit_degenerated,
    "payment-axioms": audit_payment_axioms,
}
