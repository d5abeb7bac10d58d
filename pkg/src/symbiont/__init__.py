"""Exact cooperative-game coordination engine for industrial symbiosis.

Models industrial symbiotic networks as cooperative games in exact rational
arithmetic, computes fair (Shapley) and stable (core) benefit allocations,
synthesizes tax/subsidy rule sets that enforce a normative policy, and
redistributes collected taxes budget-balanced.
"""

from .backend import backend_name, compiled_available
from .errors import (
    CapExceededError,
    ExclusivityError,
    InputError,
    InvalidCoalitionError,
    MalformedNetError,
    SuperadditivityError,
    SymbiontError,
    UniverseMismatchError,
)
from .games import (
    Allocation,
    Game,
    MCNet,
    Rule,
    Universe,
    applicable_rules,
    as_allocation,
    max_agents,
    universe_of,
    validate,
    value,
)
from .isn import CostTable, IsnClass, build_isn_game, check_superadditive, classify, to_mcnet
from .policy import Policy, PolicyLabel, check_minimality, check_mutual_exclusivity, label
from .rational import Rational, as_rational, format_rational
from .ratsolve import (
    FarkasCertificate,
    FeasibilityResult,
    LinearSystem,
    feasible,
    satisfies,
    system,
    verify_certificate,
)
from .redistribution import (
    ComplianceReport,
    EvidenceSet,
    RedistributionResult,
    collectible_tax,
    compliance,
    redistribute,
)
from .regulation import (
    CISNGame,
    EnforcementReport,
    IncentiveRuleSet,
    compose,
    empty_ruleset,
    generate_policy_regulation,
    generate_regulation,
    verify_enforcement,
)
from .solutions import (
    CoreVerdict,
    Implementability,
    MembershipViolation,
    balanced_check_by_vertices,
    check_implementable,
    core_feasible,
    core_membership,
    is_balanced,
    is_supermodular,
    shapley,
    shapley_mcnet,
    shapley_permutation,
)

__version__ = "0.1.0"
