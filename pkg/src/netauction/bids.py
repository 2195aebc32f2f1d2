"""Order statistics over bid multisets and exact critical winning bids.

The critical bid of an agent under a fixed invitation action is the infimum
of the set of bids that make her win.  For comparison-based allocation rules
the win/lose outcome only depends on how the probed bid orders against a
finite candidate set (the other bids, or the cross-bundle score thresholds
for sqrt-ranked rules), so the outcome is constant on each open interval
between adjacent candidates.  Evaluating the rule at every candidate and at
one midpoint per gap therefore determines the infimum exactly, including
whether it is attained.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .market import AgentId, ReportProfile, Scenario, SINGLE_MINDED
from .values import RootSum, Value, simplify


class NotComparisonBasedError(TypeError):
    """Critical bids are only defined here for comparison-based rules."""


class NoWinningBidError(ValueError):
    """Binary search found no winning bid up to the given ceiling."""


class _Unbounded:
    """Sentinel: the winning set is empty, no finite bid ever wins."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Unbounded"


UNBOUNDED = _Unbounded()


def kth_highest(bids: Iterable[Value], k: int) -> Value:
    """k-th largest element counting multiplicity; 0 when fewer than k values."""
    if k < 1:
        raise ValueError("k must be >= 1")
    ranked = sorted(bids, reverse=True)
    if len(ranked) < k:
        return Fraction(0)
    return ranked[k - 1]


@dataclass(frozen=True)
class CriticalBid:
    """Infimum winning bid plus whether bidding exactly that value wins."""

    value: Value | _Unbounded
    attained: bool

    @property
    def is_unbounded(self) -> bool:
        return self.value is UNBOUNDED


def critical_leq(a: CriticalBid | Value | _Unbounded, b: CriticalBid | Value | _Unbounded) -> bool:
    """Compare critical-bid values with Unbounded treated as +infinity."""
    av = a.value if isinstance(a, CriticalBid) else a
    bv = b.value if isinstance(b, CriticalBid) else b
    if bv is UNBOUNDED:
        return True
    if av is UNBOUNDED:
        return False
    return av <= bv


def boundary_candidates(
    scenario: Scenario, reports: ReportProfile, agent: AgentId
) -> list[Value]:
    """Sorted candidate bids where the agent's win/lose outcome can flip.

    Unit demand: the other agents' reported bids.  Single-minded: the bids at
    which the agent's v/sqrt(|bundle|) score ties another agent's, kept exact
    as sqrt of a rational (cross-multiplied squares underneath).
    """
    others = [(a, b) for a, b in reports.bids if a != agent]
    cands: list[Value] = [Fraction(0)]
    if scenario.mode == SINGLE_MINDED:
        size_i = len(scenario.bundle_of(agent))
        for other, bid in others:
            size_j = len(scenario.bundle_of(other))
            # Score tie at v = bid * sqrt(size_i/size_j); kept closed under
            # RootSum multiplication even when `bid` is itself irrational.
            cands.append(bid * RootSum.sqrt(Fraction(size_i, size_j)))
    else:
        for _, bid in others:
            cands.append(bid)
    cands.sort()
    unique: list[Value] = []
    for c in cands:
        if not unique or c != unique[-1]:
            unique.append(simplify(c))
    return unique


def _win_probes(cands: Sequence[Value]) -> list[tuple[Value, Value]]:
    """(candidate, representative-of-the-open-interval-above) pairs."""
    probes = []
    for i, c in enumerate(cands):
        above = (c + cands[i + 1]) * Fraction(1, 2) if i + 1 < len(cands) else c + 1
        probes.append((c, simplify(above)))
    return probes


@lru_cache(maxsize=1 << 17)
def _critical_bid_cached(
    rule, scenario: Scenario, base: ReportProfile, agent: AgentId
) -> CriticalBid:
    cands = boundary_candidates(scenario, base, agent)

    def wins(bid: Value) -> bool:
        probe = base.replace(scenario, agent, bid=bid)
        return agent in rule.winners(scenario, probe)

    for cand, above in _win_probes(cands):
        if wins(cand):
            return CriticalBid(value=cand, attained=True)
        if wins(above):
            return CriticalBid(value=cand, attained=False)
    return CriticalBid(value=UNBOUNDED, attained=False)


def critical_bid_exact(
    rule,
    scenario: Scenario,
    reports: ReportProfile,
    agent: AgentId,
    invite_action: Iterable[AgentId],
) -> CriticalBid:
    """Exact infimum winning bid for `agent` under a fixed invitation action.

    The agent's own reported bid is irrelevant by definition, so it is
    normalized away before probing; this keeps the cache hot across bid
    deviations of the same agent.
    """
    if not getattr(rule, "comparison_based", False):
        raise NotComparisonBasedError(f"{rule!r} is not registered as comparison-based")
    base = reports.replace(scenario, agent, bid=Fraction(0), invites=invite_action)
    return _critical_bid_cached(rule, scenario, base, agent)


def critical_bid_bisect(
    rule,
    scenario: Scenario,
    reports: ReportProfile,
    agent: AgentId,
    invite_action: Iterable[AgentId],
    hi: Fraction,
    tol: Fraction,
) -> Fraction:
    """Tolerance oracle: binary search for the critical bid on [0, hi].

    Requires a value-monotone rule to be meaningful; used as a cross-check
    against critical_bid_exact, never for payments.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    base = reports.replace(scenario, agent, bid=Fraction(0), invites=invite_action)

    def wins(bid: Fraction) -> bool:
        return agent in rule.winners(scenario, base.replace(scenario, agent, bid=bid))

    hi = Fraction(hi)
    if not wins(hi):
        raise NoWinningBidError(f"{agent!r} still loses at bid {hi}")
    lo = Fraction(0)
    if wins(lo):
        return lo
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if wins(mid):
            hi = mid
        else:
            lo = mid
    return hi
