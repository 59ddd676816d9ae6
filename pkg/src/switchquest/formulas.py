"""Closed-form round counts and bounds used by the verification harness.

Every function is a pure total integer function on its stated domain;
the registry at the bottom records whether each value is exact, a lower
bound, or an upper bound.
"""

from __future__ import annotations


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def log_prime(d: int, k: int) -> int:
    """Largest i with 1 + d + ... + d^(i-1) <= k."""
    if d < 2:
        raise ValueError(f"base must be >= 2, got {d}")
    if k < 1:
        raise ValueError(f"budget must be >= 1, got {k}")
    i = 0
    total = 0
    power = 1
    while total + power <= k:
        total += power
        power *= d
        i += 1
    return i


def tree_rounds(d: int, n: int, k: int) -> int:
    """Optimal rounds on the complete d-ary tree with n+1 levels."""
    if n < 0:
        raise ValueError(f"depth must be >= 0, got {n}")
    if n == 0:
        return 0
    return _ceil_div(n, log_prime(d, k))


def s_of_l(l: int) -> int:
    """Questions needed to cover the top l pyramid levels: 1 + 2 + ... + l."""
    if l < 1:
        raise ValueError(f"level count must be >= 1, got {l}")
    return l * (l + 1) // 2


def pyramid_lower(n: int, k: int) -> int:
    """Round lower bound ceil(2n / (k+1)) for the height-n pyramid."""
    if n < 1 or k < 1:
        raise ValueError(f"need n >= 1 and k >= 1, got n={n}, k={k}")
    return _ceil_div(2 * n, k + 1)


def pyramid_upper(n: int, l: int) -> int:
    """Round upper bound ceil(n / l) with a budget of s_of_l(l)."""
    if n < 1 or l < 1:
        raise ValueError(f"need n >= 1 and l >= 1, got n={n}, l={l}")
    return _ceil_div(n, l)


def gpy_lower(d: int, n: int, k: int) -> int:
    """Round lower bound ceil(d*n / (k-1+d)) for width-d layered pyramids."""
    if d < 2 or n < 1 or k < 1:
        raise ValueError(f"need d >= 2, n >= 1, k >= 1, got d={d}, n={n}, k={k}")
    return _ceil_div(d * n, k - 1 + d)


def gpy_layered_upper(d: int, n: int, k: int) -> int:
    """Rounds of the frontier-plus-complete-levels play: ceil(n / floor((k-1+d)/d))."""
    if d < 2 or n < 1 or k < 1:
        raise ValueError(f"need d >= 2, n >= 1, k >= 1, got d={d}, n={n}, k={k}")
    return _ceil_div(n, (k - 1 + d) // d)


def ratio_bound(m: int, k: int) -> int:
    """Factor ceil(k/m) relating budget-m and budget-k round counts."""
    if not 1 <= m <= k:
        raise ValueError(f"need 1 <= m <= k, got m={m}, k={k}")
    return _ceil_div(k, m)


FORMULAS = {
    "log_prime": (log_prime, ("d", "k"), "exact"),
    "tree_rounds": (tree_rounds, ("d", "n", "k"), "exact"),
    "s_of_l": (s_of_l, ("l",), "exact"),
    "pyramid_lower": (pyramid_lower, ("n", "k"), "lower"),
    "pyramid_upper": (pyramid_upper, ("n", "l"), "upper"),
    "gpy_lower": (gpy_lower, ("d", "n", "k"), "lower"),
    "gpy_layered_upper": (gpy_layered_upper, ("d", "n", "k"), "upper"),
    "ratio_bound": (ratio_bound, ("m", "k"), "upper"),
}
