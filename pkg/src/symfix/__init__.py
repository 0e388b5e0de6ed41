"""symfix: generate, transform, prune, and rank binary symmetric fix-free codes."""

from .bitpal import (
    Bitstring,
    cluster_code,
    complement,
    count_palindromic_proper_prefixes,
    descendants,
    enumerate_palindromes,
    is_palindrome,
    longest_palindromic_proper_prefix,
    neighbors,
    prefix_palindromes,
    root_code,
)
from .codes import (
    Code,
    LengthSequence,
    dominates,
    double_arrow_all,
    double_arrow_canonical,
    has_root_prefix_property,
    is_valid,
    length_sequence,
    validate,
    verify_arrow,
)
from .optimize import Source, best_code, entropy, expected_length
from .oracle import compare_with_search, enumerate_all_codes, oracle_dominant
from .search import (
    Chain,
    PruneConfig,
    SearchResult,
    check_conjecture,
    dominant_filter,
    is_shortest_chain,
    replay_with_order,
    search,
)

__version__ = "0.1.0"

__all__ = [
    "Bitstring",
    "Chain",
    "Code",
    "LengthSequence",
    "PruneConfig",
    "SearchResult",
    "Source",
    "best_code",
    "check_conjecture",
    "cluster_code",
    "compare_with_search",
    "complement",
    "count_palindromic_proper_prefixes",
    "descendants",
    "dominant_filter",
    "dominates",
    "double_arrow_all",
    "double_arrow_canonical",
    "entropy",
    "enumerate_all_codes",
    "enumerate_palindromes",
    "expected_length",
    "has_root_prefix_property",
    "is_palindrome",
    "is_shortest_chain",
    "is_valid",
    "length_sequence",
    "longest_palindromic_proper_prefix",
    "neighbors",
    "oracle_dominant",
    "prefix_palindromes",
    "replay_with_order",
    "root_code",
    "search",
    "validate",
    "verify_arrow",
    "__version__",
]
