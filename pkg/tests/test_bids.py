from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from netauction import (
    NoWinningBidError,
    NotComparisonBasedError,
    ReportProfile,
    Scenario,
    UNBOUNDED,
    critical_bid_bisect,
    critical_bid_exact,
    get_mechanism,
    kth_highest,
    load_fixture,
    parse_reports,
)
from netauction.bids import critical_leq
from netauction.scenario_io import fixture_path


def test_kth_highest_examples():
    assert kth_highest([1, 4, 7, 6, 5], 3) == 5
    assert kth_highest([4], 3) == 0
    assert kth_highest([Fraction(7, 2)], 1) == Fraction(7, 2)


def test_kth_highest_counts_multiplicity():
    assert kth_highest([4, 4, 4], 2) == 4
    with pytest.raises(ValueError):
        kth_highest([1], 0)


rationals = st.fractions(min_value=0, max_value=30, max_denominator=6)


@given(st.lists(rationals, max_size=8), st.integers(min_value=1, max_value=9))
def test_kth_highest_permutation_invariant(values, k):
    assert kth_highest(values, k) == kth_highest(list(reversed(sorted(values))), k)


@given(st.lists(rationals, max_size=8), st.integers(min_value=1, max_value=9), rationals)
def test_kth_highest_monotone_in_extra_element(values, k, extra):
    assert kth_highest(values + [extra], k) >= kth_highest(values, k)


@pytest.fixture(scope="module")
def fig7_setup():
    scenario = load_fixture("fig7")
    return scenario, ReportProfile.truthful(scenario)


def test_infimum_can_be_unattained(fig7_setup):
    # At a bid of exactly 3 the seller-adjacent rival ties its own threshold,
    # wins a unit, and exhausts supply before the probed agent is reached.
    scenario, truth = fig7_setup
    rule = get_mechanism("dna-mu-r").allocation
    cb = critical_bid_exact(rule, scenario, truth, "D", ("G", "H"))
    assert cb.value == 3
    assert cb.attained is False


def test_threshold_scan_critical_bid_after_withholding():
    fig1 = load_fixture("fig1")
    reports = parse_reports(fixture_path("fig2"), fig1)
    rule = get_mechanism("dna-mu").allocation
    cb = critical_bid_exact(rule, fig1, reports, "D", ())
    assert cb.value == 6


def test_truthful_invite_can_price_agent_out_entirely():
    fig1 = load_fixture("fig1")
    truth = ReportProfile.truthful(fig1)
    rule = get_mechanism("dna-mu").allocation
    cb = critical_bid_exact(rule, fig1, truth, "D", ("H",))
    assert cb.is_unbounded
    # The refined scan prices D out under truthful invites as well.
    cb2 = critical_bid_exact(get_mechanism("dna-mu-r").allocation, fig1, truth, "D", ("H",))
    assert cb2.is_unbounded


def test_sole_participant_critical_bid_zero():
    sc = Scenario.build("s", {"X": 5}, {"X": []}, ["X"], unit_count=1)
    rule = get_mechanism("dna-mu-r").allocation
    cb = critical_bid_exact(rule, sc, ReportProfile.truthful(sc), "X", ())
    assert cb.value == 0 and cb.attained


def test_bisect_agrees_on_unattained_boundary(fig7_setup):
    scenario, truth = fig7_setup
    rule = get_mechanism("dna-mu-r").allocation
    tol = Fraction(1, 1024)
    b = critical_bid_bisect(rule, scenario, truth, "D", ("G", "H"), hi=Fraction(20), tol=tol)
    assert abs(b - 3) <= tol


def test_bisect_sole_participant_near_zero():
    sc = Scenario.build("s", {"X": 5}, {"X": []}, ["X"], unit_count=1)
    rule = get_mechanism("dna-mu-r").allocation
    tol = Fraction(1, 1024)
    b = critical_bid_bisect(rule, sc, ReportProfile.truthful(sc), "X", (), hi=Fraction(6), tol=tol)
    assert abs(b) <= tol


def test_bisect_fig8_matches_exact():
    fig8 = load_fixture("fig8")
    truth = ReportProfile.truthful(fig8)
    rule = get_mechanism("dna-mu-r").allocation
    tol = Fraction(1, 1024)
    b = critical_bid_bisect(rule, fig8, truth, "D", ("E", "I"), hi=Fraction(200), tol=tol)
    assert abs(b - 3) <= tol


def test_bisect_raises_when_nothing_wins():
    fig1 = load_fixture("fig1")
    truth = ReportProfile.truthful(fig1)
    rule = get_mechanism("dna-mu").allocation
    with pytest.raises(NoWinningBidError):
        critical_bid_bisect(rule, fig1, truth, "D", ("H",), hi=Fraction(1000), tol=Fraction(1, 8))


def test_non_comparison_rule_rejected():
    class Randomish:
        comparison_based = False

    fig1 = load_fixture("fig1")
    with pytest.raises(NotComparisonBasedError):
        critical_bid_exact(Randomish(), fig1, ReportProfile.truthful(fig1), "A", ())


def test_critical_leq_orders_unbounded_last(fig7_setup):
    scenario, truth = fig7_setup
    rule = get_mechanism("dna-mu-r").allocation
    finite = critical_bid_exact(rule, scenario, truth, "D", ("G", "H"))
    assert critical_leq(finite, UNBOUNDED)
    assert not critical_leq(UNBOUNDED, finite)
    assert critical_leq(UNBOUNDED, UNBOUNDED)
