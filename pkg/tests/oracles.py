"""Independent brute-force oracles the DP implementations are checked against.

Each oracle takes a deliberately different route from the production code:
recursion straight off the defining recurrence (memoized only for
feasibility), subsequence/substring enumeration, and exhaustive monotone
alignment enumeration.  None of them share code with seqdrift.measures.
"""

from __future__ import annotations

from itertools import combinations


def lev_recursive(a, b):
    memo = {}

    def f(i, j):
        if i == 0 or j == 0:
            return max(i, j)
        key = (i, j)
        v = memo.get(key)
        if v is None:
            v = min(
                f(i - 1, j) + 1,
                f(i, j - 1) + 1,
                f(i - 1, j - 1) + (1 if a[i - 1] != b[j - 1] else 0),
            )
            memo[key] = v
        return v

    return f(len(a), len(b))


def osa_recursive(a, b):
    memo = {}

    def f(i, j):
        if i == 0 or j == 0:
            return max(i, j)
        key = (i, j)
        v = memo.get(key)
        if v is None:
            v = min(
                f(i - 1, j) + 1,
                f(i, j - 1) + 1,
                f(i - 1, j - 1) + (0 if a[i - 1] == b[j - 1] else 1),
            )
            if i >= 2 and j >= 2 and a[i - 1] == b[j - 2] and a[i - 2] == b[j - 1]:
                v = min(v, f(i - 2, j - 2) + 1)
            memo[key] = v
        return v

    return f(len(a), len(b))


def _is_subsequence(needle, haystack):
    it = iter(haystack)
    return all(tok in it for tok in needle)


def lcs_enumerate(a, b):
    """Longest common subsequence length by enumerating subsequences."""
    short, long_ = (a, b) if len(a) <= len(b) else (b, a)
    for length in range(len(short), 0, -1):
        for idx in combinations(range(len(short)), length):
            if _is_subsequence([short[i] for i in idx], long_):
                return length
    return 0


def substring_enumerate(a, b):
    """Longest common substring length by enumerating all substrings."""
    best = 0
    la, lb = len(a), len(b)
    for i in range(la):
        for j in range(i + 1 + best, la + 1):
            piece = tuple(a[i:j])
            ln = len(piece)
            if any(tuple(b[p : p + ln]) == piece for p in range(lb - ln + 1)):
                best = ln
            else:
                break
    return best


def dtw_paths(a, b):
    """Minimum alignment cost over explicitly enumerated monotone paths."""
    n, m = len(a), len(b)
    best = [float("inf")]

    def walk(i, j, cost):
        cost += abs(a[i] - b[j])
        if cost >= best[0]:
            return
        if i == n - 1 and j == m - 1:
            best[0] = cost
            return
        if i + 1 < n and j + 1 < m:
            walk(i + 1, j + 1, cost)
        if i + 1 < n:
            walk(i + 1, j, cost)
        if j + 1 < m:
            walk(i, j + 1, cost)

    walk(0, 0, 0)
    return float(best[0])


def dtw_recursive(a, b):
    memo = {}

    def f(i, j):
        if i == 0 and j == 0:
            return abs(a[0] - b[0])
        if i < 0 or j < 0:
            return float("inf")
        key = (i, j)
        v = memo.get(key)
        if v is None:
            v = abs(a[i] - b[j]) + min(f(i - 1, j), f(i, j - 1), f(i - 1, j - 1))
            memo[key] = v
        return v

    return float(f(len(a) - 1, len(b) - 1))


def jaro_reference(a, b):
    """Jaro per the definition: windowed matching, then half-counted swaps."""
    la, lb = len(a), len(b)
    if la == 0 or lb == 0:
        return 0.0
    window = max(max(la, lb) // 2 - 1, 0)
    used_b = set()
    pairs = []  # (i, j) matched positions
    for i in range(la):
        for j in range(max(0, i - window), min(lb, i + window + 1)):
            if j not in used_b and a[i] == b[j]:
                used_b.add(j)
                pairs.append((i, j))
                break
    m = len(pairs)
    if m == 0:
        return 0.0
    a_order = [a[i] for i, _ in sorted(pairs)]
    b_order = [b[j] for _, j in sorted(pairs, key=lambda p: p[1])]
    t = sum(1 for x, y in zip(a_order, b_order) if x != y) / 2.0
    return (m / la + m / lb + (m - t) / m) / 3.0


def jaro_winkler_reference(a, b):
    j = jaro_reference(a, b)
    prefix = 0
    for x, y in zip(a[:4], b[:4]):
        if x != y:
            break
        prefix += 1
    return j + prefix * 0.1 * (1.0 - j)
