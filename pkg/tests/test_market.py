import random
from fractions import Fraction
from itertools import combinations

import pytest

from netauction import (
    InvalidReportError,
    ReportProfile,
    Scenario,
    UnknownAgentError,
    bfs_priority,
    build_effective_market,
    load_fixture,
    parse_reports,
)
from netauction.scenario_io import fixture_path

from genscenarios import random_unit_scenario


@pytest.fixture(scope="module")
def fig1():
    return load_fixture("fig1")


def test_truthful_diffusion_reaches_everyone(fig1):
    market = build_effective_market(fig1, ReportProfile.truthful(fig1))
    assert market.participants == frozenset("ABCDFH")


def test_withheld_invite_blocks_downstream(fig1):
    reports = parse_reports(fixture_path("fig2"), fig1)
    market = build_effective_market(fig1, reports)
    assert market.participants == frozenset("ABCDF")


def test_zero_seller_neighbors_gives_empty_market():
    empty = load_fixture("empty")
    market = build_effective_market(empty, ReportProfile.truthful(empty))
    assert market.participants == frozenset()
    assert market.priority == ()


def test_priority_order_fig1(fig1):
    market = build_effective_market(fig1, ReportProfile.truthful(fig1))
    assert bfs_priority(market) == ("A", "B", "F", "C", "D", "H")


def test_priority_order_fig7():
    fig7 = load_fixture("fig7")
    market = build_effective_market(fig7, ReportProfile.truthful(fig7))
    assert bfs_priority(market) == ("A", "B", "F", "C", "D", "G", "H")


def test_priority_single_agent():
    sc = Scenario.build("s", {"X": 3}, {"X": []}, ["X"], unit_count=1)
    market = build_effective_market(sc, ReportProfile.truthful(sc))
    assert bfs_priority(market) == ("X",)


def test_idt_tree_market_equals_diffusion_tree(fig1):
    market = build_effective_market(fig1, ReportProfile.truthful(fig1))
    assert market.subtree("B") == frozenset("BCDFH")
    assert market.subtree("F") == frozenset("F")
    assert market.subtree("C") == frozenset("CDH")
    assert market.parent["H"] == "D"


def test_idt_diamond_parent_is_seller():
    sc = Scenario.build(
        "s",
        {"x": 1, "y": 1, "z": 1},
        {"x": ["z"], "y": ["z"], "z": []},
        ["x", "y"],
        unit_count=1,
    )
    market = build_effective_market(sc, ReportProfile.truthful(sc))
    assert market.parent["z"] == "s"
    assert market.subtree("x") == frozenset({"x"})


def test_idt_fig8_subtree():
    fig8 = load_fixture("fig8")
    market = build_effective_market(fig8, ReportProfile.truthful(fig8))
    assert market.subtree("C") == frozenset("CDEI")


def test_subtree_leaf_is_singleton(fig1):
    market = build_effective_market(fig1, ReportProfile.truthful(fig1))
    assert market.subtree("H") == frozenset({"H"})
    with pytest.raises(UnknownAgentError):
        market.subtree("Z")


def test_invalid_report_rejected(fig1):
    reports = ReportProfile.truthful(fig1)
    with pytest.raises(InvalidReportError):
        # A has no neighbors; inviting H invents an edge.
        bad = ReportProfile(
            bids=reports.bids,
            invites=tuple(
                (a, ("H",) if a == "A" else inv) for a, inv in reports.invites
            ),
        )
        build_effective_market(fig1, bad)


def test_unknown_agent_rejected():
    with pytest.raises(UnknownAgentError):
        Scenario.build("s", {"A": 1}, {"A": ["ghost"]}, ["A"], unit_count=1)


def test_self_loop_rejected():
    with pytest.raises(Exception):
        Scenario.build("s", {"A": 1}, {"A": ["A"]}, ["A"], unit_count=1)


def test_reachability_monotone_under_larger_invites():
    for seed in range(40):
        sc = random_unit_scenario(seed)
        truth = ReportProfile.truthful(sc)
        rng = random.Random(f"mono:{seed}")
        agent = rng.choice(sc.agent_ids)
        nbrs = sc.true_neighbors[agent]
        small = tuple(n for n in nbrs if rng.random() < 0.5)
        large = tuple(n for n in nbrs if n in small or rng.random() < 0.5)
        p_small = build_effective_market(
            sc, truth.replace(sc, agent, invites=small)
        ).participants
        p_large = build_effective_market(
            sc, truth.replace(sc, agent, invites=large)
        ).participants
        assert p_small <= p_large


def _reachable_without(scenario, reports, blocked):
    invites = reports.invite_map
    invites[scenario.seller] = dict(scenario.neighbors)[scenario.seller]
    seen, stack = set(), [scenario.seller]
    while stack:
        node = stack.pop()
        if node in seen or node == blocked:
            continue
        seen.add(node)
        stack.extend(invites.get(node, ()))
    return seen - {scenario.seller}


def test_domination_soundness_by_path_enumeration():
    # For every participant j: deleting an IDT ancestor disconnects j,
    # deleting any other participant does not.
    for seed in range(30):
        sc = random_unit_scenario(seed, max_agents=12)
        truth = ReportProfile.truthful(sc)
        market = build_effective_market(sc, truth)
        for j in market.priority:
            ancestors = set()
            node = j
            while node != sc.seller:
                node = market.parent[node]
                if node != sc.seller:
                    ancestors.add(node)
            for x in market.priority:
                if x == j:
                    continue
                reachable = _reachable_without(sc, truth, x)
                if x in ancestors:
                    assert j not in reachable, (seed, j, x)
                else:
                    assert j in reachable, (seed, j, x)


def test_priority_stable_across_rebuilds(fig1):
    a = build_effective_market(fig1, ReportProfile.truthful(fig1))
    b = build_effective_market(load_fixture("fig1"), ReportProfile.truthful(fig1))
    assert a.priority == b.priority
    assert a.idt_parent == b.idt_parent


def test_negative_bid_rejected():
    with pytest.raises(Exception):
        Scenario.build("s", {"A": Fraction(-1)}, {"A": []}, ["A"], unit_count=1)


def test_all_invite_subsets_yield_valid_markets(fig1):
    truth = ReportProfile.truthful(fig1)
    for agent in fig1.agent_ids:
        nbrs = fig1.true_neighbors[agent]
        for size in range(len(nbrs) + 1):
            for sub in combinations(nbrs, size):
                market = build_effective_market(
                    fig1, truth.replace(fig1, agent, invites=sub)
                )
                assert sorted(market.priority) == sorted(market.participants)
