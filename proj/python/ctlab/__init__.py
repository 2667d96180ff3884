"""Cube sums x^3 + y^3 = D: theta-trace invariants and identity checks."""

from ._ctlab import (
    CtlabError,
    __version__,
    ap_point_count,
    class_group_order,
    compute_S_D,
    compute_T_D,
    conductor,
    cubic_symbol,
    hecke_ap,
    point_search,
    split_prime,
    tamagawa_numbers,
    theta_K,
    verify,
)

__all__ = [
    "CtlabError",
    "__version__",
    "ap_point_count",
    "class_group_order",
    "compute_S_D",
    "compute_T_D",
    "conductor",
    "cubic_symbol",
    "hecke_ap",
    "point_search",
    "split_prime",
    "tamagawa_numbers",
    "theta_K",
    "verify",
]
