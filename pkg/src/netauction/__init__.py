"""Network-auction engine: diffusion mechanisms, exact critical bids, and a
brute-force axiom auditor."""

from .bids import (
    UNBOUNDED,
    CriticalBid,
    NoWinningBidError,
    NotComparisonBasedError,
    critical_bid_bisect,
    critical_bid_exact,
    kth_highest,
)
from .market import (
    EffectiveMarket,
    InvalidReportError,
    ReportProfile,
    Scenario,
    UnknownAgentError,
    ValidationError,
    bfs_priority,
    build_effective_market,
    build_idt,
    subtree,
)
from .mechanisms import (
    MECHANISMS,
    Mechanism,
    Outcome,
    PaymentDecomposition,
    UnboundedPaymentError,
    get_mechanism,
    greedy_sqrt_k,
    id_mon_rm_payment,
    ip_mon_rm_payment,
    polynomial_payment_family,
)
from .audit import (
    AuditVerdict,
    Axiom,
    DeviationSpace,
    SpaceTooLargeError,
    audit_degenerated,
    audit_id_mon,
    audit_ip_mon,
    audit_ir,
    audit_payment_axioms,
    audit_sp,
    audit_value_monotone,
    audit_wbb,
)
from .scenario_io import (
    ParseError,
    SchemaMismatchError,
    dna_mu_counterexample,
    fixture_path,
    load_fixture,
    parse_reports,
    parse_scenario,
)
from .values import RootSum, parse_value, value_str

__version__ = "0.1.0"
