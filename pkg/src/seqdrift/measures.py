"""Distance and similarity measures over integer token sequences.

A trajectory is handled as a plain sequence of non-negative integer state
codes.  All measures are pure functions, symmetric in their two arguments,
and safe to call concurrently.  Distances accept empty sequences; the
normalized variants raise ``ValueError`` when their denominator would be
zero (both inputs empty, or for DTW any empty input).

Every dynamic program runs in O(len(a) * len(b)) time with two-row (or
three-row) memory, because episodes can reach hundreds of tokens.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Sequence

Tokens = Sequence[int]


class MeasureKind(str, Enum):
    """The ten trajectory comparison measures, dispatchable by name."""

    LEVENSHTEIN = "levenshtein"
    LEVENSHTEIN_RATIO = "levenshtein_ratio"
    JARO = "jaro"
    JARO_WINKLER = "jaro_winkler"
    LCS_SIMILARITY = "lcs_similarity"
    LC_SUBSTRING_SIMILARITY = "lc_substring_similarity"
    DAMERAU = "damerau"
    DAMERAU_SIMILARITY = "damerau_similarity"
    DTW = "dtw"
    DTW_SIMILARITY = "dtw_similarity"

    @property
    def is_similarity(self) -> bool:
        return self in _SIMILARITY_KINDS

    @property
    def orientation(self) -> str:
        return "similarity" if self.is_similarity else "distance"


_SIMILARITY_KINDS = frozenset(
    {
        MeasureKind.LEVENSHTEIN_RATIO,
        MeasureKind.JARO,
        MeasureKind.JARO_WINKLER,
        MeasureKind.LCS_SIMILARITY,
        MeasureKind.LC_SUBSTRING_SIMILARITY,
        MeasureKind.DAMERAU_SIMILARITY,
        MeasureKind.DTW_SIMILARITY,
    }
)

ALL_KINDS: tuple[MeasureKind, ...] = tuple(MeasureKind)


@dataclass(frozen=True)
class MeasureValue:
    kind: MeasureKind
    value: float

    @property
    def orientation(self) -> str:
        return self.kind.orientation


def levenshtein(a: Tokens, b: Tokens) -> int:
    """Minimum number of token insertions, deletions, or substitutions."""
    n, m = len(a), len(b)
    if n == 0:
        return m
    if m == 0:
        return n
    if n < m:  # keep the inner row short
        a, b, n, m = b, a, m, n
    prev = list(range(m + 1))
    cur = [0] * (m + 1)
    for i in range(1, n + 1):
        cur[0] = i
        ai = a[i - 1]
        for j in range(1, m + 1):
            if ai == b[j - 1]:
                sub = prev[j - 1]
            else:
                sub = prev[j - 1] + 1
            dele = prev[j] + 1
            ins = cur[j - 1] + 1
            cur[j] = sub if sub <= dele and sub <= ins else (dele if dele <= ins else ins)
        prev, cur = cur, prev
    return prev[m]


def levenshtein_ratio(a: Tokens, b: Tokens) -> float:
    """Length-normalized Levenshtein similarity in [0, 1]."""
    total = len(a) + len(b)
    if total == 0:
        raise ValueError("levenshtein_ratio undefined for two empty sequences")
    return (total - levenshtein(a, b)) / total


def jaro(a: Tokens, b: Tokens) -> float:
    """Jaro similarity: matching tokens within a window, minus transpositions.

    Returns 0.0 when there are no matches (including when either input is
    empty), per the m = 0 branch of the definition.
    """
    if len(a) > len(b):  # canonical order makes symmetry exact
        a, b = b, a
    la, lb = len(a), len(b)
    if la == 0:
        return 0.0
    window = max(lb // 2 - 1, 0)
    b_taken = [False] * lb
    a_matched = []
    b_matched_idx = []
    for i in range(la):
        ai = a[i]
        lo = i - window
        if lo < 0:
            lo = 0
        hi = i + window + 1
        if hi > lb:
            hi = lb
        for j in range(lo, hi):
            if not b_taken[j] and b[j] == ai:
                b_taken[j] = True
                a_matched.append(ai)
                b_matched_idx.append(j)
                break
    m = len(a_matched)
    if m == 0:
        return 0.0
    b_matched_idx.sort()
    mismatches = 0
    for ai, j in zip(a_matched, b_matched_idx):
        if ai != b[j]:
            mismatches += 1
    t = mismatches / 2.0
    return (m / la + m / lb + (m - t) / m) / 3.0


def jaro_winkler(a: Tokens, b: Tokens) -> float:
    """Jaro boosted by the common prefix (capped at 4 tokens, scale 0.1)."""
    j = jaro(a, b)
    prefix = 0
    for x, y in zip(a, b):
        if x != y or prefix >= 4:
            break
        prefix += 1
    return j + prefix * 0.1 * (1.0 - j)


def lcs_length(a: Tokens, b: Tokens) -> int:
    """Length of the longest common subsequence (not necessarily contiguous)."""
    n, m = len(a), len(b)
    if n == 0 or m == 0:
        return 0
    if n < m:
        a, b, n, m = b, a, m, n
    prev = [0] * (m + 1)
    cur = [0] * (m + 1)
    for i in range(1, n + 1):
        ai = a[i - 1]
        for j in range(1, m + 1):
            if ai == b[j - 1]:
                cur[j] = prev[j - 1] + 1
            else:
                pj, cj = prev[j], cur[j - 1]
                cur[j] = pj if pj >= cj else cj
        prev, cur = cur, prev
    return prev[m]


def lcs_similarity(a: Tokens, b: Tokens) -> float:
    """LCS length normalized by the longer sequence length."""
    longest = max(len(a), len(b))
    if longest == 0:
        raise ValueError("lcs_similarity undefined for two empty sequences")
    return lcs_length(a, b) / longest


def lc_substring_length(a: Tokens, b: Tokens) -> int:
    """Length of the longest contiguous run common to both sequences."""
    n, m = len(a), len(b)
    if n == 0 or m == 0:
        return 0
    if n < m:
        a, b, n, m = b, a, m, n
    prev = [0] * (m + 1)
    cur = [0] * (m + 1)
    best = 0
    for i in range(1, n + 1):
        ai = a[i - 1]
        for j in range(1, m + 1):
            if ai == b[j - 1]:
                v = prev[j - 1] + 1
                cur[j] = v
                if v > best:
                    best = v
            else:
                cur[j] = 0
        prev, cur = cur, prev
    return best


def lc_substring_similarity(a: Tokens, b: Tokens) -> float:
    """Longest common substring length normalized by the longer length."""
    longest = max(len(a), len(b))
    if longest == 0:
        raise ValueError("lc_substring_similarity undefined for two empty sequences")
    return lc_substring_length(a, b) / longest


def damerau(a: Tokens, b: Tokens) -> int:
    """Restricted Damerau-Levenshtein (optimal string alignment) distance.

    The transposition case is dp[i-2][j-2] + 1, applicable when the two
    trailing tokens are swapped; no substring is edited twice, so e.g.
    the distance from (C, A) to (A, B, C) is 3, not the unrestricted 2.
    """
    n, m = len(a), len(b)
    if n == 0:
        return m
    if m == 0:
        return n
    if n < m:
        a, b, n, m = b, a, m, n
    prev2 = [0] * (m + 1)
    prev = list(range(m + 1))
    cur = [0] * (m + 1)
    for i in range(1, n + 1):
        cur[0] = i
        ai = a[i - 1]
        for j in range(1, m + 1):
            bj = b[j - 1]
            v = prev[j - 1] + (ai != bj)
            dele = prev[j] + 1
            if dele < v:
                v = dele
            ins = cur[j - 1] + 1
            if ins < v:
                v = ins
            if i > 1 and j > 1 and ai == b[j - 2] and a[i - 2] == bj:
                trans = prev2[j - 2] + 1
                if trans < v:
                    v = trans
            cur[j] = v
        prev2, prev, cur = prev, cur, prev2
    return prev[m]


def damerau_similarity(a: Tokens, b: Tokens) -> float:
    """Normalized restricted Damerau-Levenshtein similarity in [0, 1]."""
    longest = max(len(a), len(b))
    if longest == 0:
        raise ValueError("damerau_similarity undefined for two empty sequences")
    d = damerau(a, b)
    # the restricted distance never exceeds the longer length
    assert d <= longest
    return 1.0 - d / longest


def dtw(a: Tokens, b: Tokens) -> float:
    """Dynamic time warping cost with |a_i - b_j| as the local cost."""
    n, m = len(a), len(b)
    if n == 0 or m == 0:
        raise ValueError("dtw undefined for empty sequences")
    if n < m:
        a, b, n, m = b, a, m, n
    inf = float("inf")
    prev = [inf] * (m + 1)
    prev[0] = 0.0
    cur = [inf] * (m + 1)
    for i in range(1, n + 1):
        ai = a[i - 1]
        cur[0] = inf
        for j in range(1, m + 1):
            best = prev[j - 1]
            if prev[j] < best:
                best = prev[j]
            if cur[j - 1] < best:
                best = cur[j - 1]
            d = ai - b[j - 1]
            cur[j] = (d if d >= 0 else -d) + best
        prev, cur = cur, prev
    return float(prev[m])


def dtw_similarity(a: Tokens, b: Tokens) -> float:
    """DTW cost converted to a similarity score 1 / (1 + dtw)."""
    return 1.0 / (1.0 + dtw(a, b))


_DISPATCH: dict[MeasureKind, Callable[[Tokens, Tokens], float]] = {
    MeasureKind.LEVENSHTEIN: levenshtein,
    MeasureKind.LEVENSHTEIN_RATIO: levenshtein_ratio,
    MeasureKind.JARO: jaro,
    MeasureKind.JARO_WINKLER: jaro_winkler,
    MeasureKind.LCS_SIMILARITY: lcs_similarity,
    MeasureKind.LC_SUBSTRING_SIMILARITY: lc_substring_similarity,
    MeasureKind.DAMERAU: damerau,
    MeasureKind.DAMERAU_SIMILARITY: damerau_similarity,
    MeasureKind.DTW: dtw,
    MeasureKind.DTW_SIMILARITY: dtw_similarity,
}


def compute_measure(kind: MeasureKind, a: Tokens, b: Tokens) -> MeasureValue:
    """Uniform dispatch over the ten measures; propagates domain errors."""
    return MeasureValue(kind, float(_DISPATCH[kind](a, b)))


def suffix_measures(
    kind: MeasureKind, ref: Tokens, epi: Tokens, window: Optional[int] = None
) -> list[float]:
    """Measure values for every aligned suffix pair (ref[i:], epi[i:]).

    Position i runs over 0 .. min(len(ref), len(epi)) - 1, so both suffixes
    are always non-empty and all ten measures are defined.  With ``window``
    set, both suffixes are truncated to that many tokens before comparing.

    For the DP-based kinds the unwindowed profile is computed from a single
    backward table (suffix-indexed DP), which is O(len(ref) * len(epi))
    total instead of per position; the result is identical to calling the
    pairwise measure on each suffix pair.
    """
    k = min(len(ref), len(epi))
    if k == 0:
        return []
    if window is not None:
        if window <= 0:
            raise ValueError("window must be positive")
        fn = _DISPATCH[kind]
        return [
            float(fn(ref[i : i + window], epi[i : i + window])) for i in range(k)
        ]
    profiler = _SUFFIX_PROFILERS.get(kind)
    if profiler is None:
        fn = _DISPATCH[kind]
        return [float(fn(ref[i:], epi[i:])) for i in range(k)]
    return profiler(ref, epi, k)


def _suffix_levenshtein(a: Tokens, b: Tokens, k: int) -> list[int]:
    # backward table: row_i[j] = levenshtein(a[i:], b[j:])
    n, m = len(a), len(b)
    row = list(range(m, -1, -1))  # row_n[j] = m - j
    out = [0] * k
    for i in range(n - 1, -1, -1):
        ai = a[i]
        nxt = [0] * (m + 1)
        nxt[m] = n - i
        for j in range(m - 1, -1, -1):
            sub = row[j + 1] + (ai != b[j])
            dele = row[j] + 1
            if dele < sub:
                sub = dele
            ins = nxt[j + 1] + 1
            nxt[j] = ins if ins < sub else sub
        row = nxt
        if i < k:
            out[i] = row[i]
    return out


def _suffix_levenshtein_ratio(a: Tokens, b: Tokens, k: int) -> list[float]:
    dists = _suffix_levenshtein(a, b, k)
    n, m = len(a), len(b)
    return [((n - i) + (m - i) - d) / ((n - i) + (m - i)) for i, d in enumerate(dists)]


def _suffix_lcs(a: Tokens, b: Tokens, k: int) -> list[int]:
    n, m = len(a), len(b)
    row = [0] * (m + 1)
    out = [0] * k
    for i in range(n - 1, -1, -1):
        ai = a[i]
        nxt = [0] * (m + 1)
        for j in range(m - 1, -1, -1):
            if ai == b[j]:
                nxt[j] = row[j + 1] + 1
            else:
                rj, nj = row[j], nxt[j + 1]
                nxt[j] = rj if rj >= nj else nj
        row = nxt
        if i < k:
            out[i] = row[i]
    return out


def _suffix_lcs_similarity(a: Tokens, b: Tokens, k: int) -> list[float]:
    lens = _suffix_lcs(a, b, k)
    n, m = len(a), len(b)
    return [v / max(n - i, m - i) for i, v in enumerate(lens)]


def _suffix_substring(a: Tokens, b: Tokens, k: int) -> list[int]:
    # run[j] = longest common prefix of a[i:] and b[j:]; the longest common
    # substring of (a[i:], b[i:]) is the max run over the subtable p,q >= i
    n, m = len(a), len(b)
    run = [0] * (m + 1)
    colmax = [0] * (m + 1)  # per column, max run over rows already processed
    out = [0] * k
    for i in range(n - 1, -1, -1):
        ai = a[i]
        nxt = [0] * (m + 1)
        for j in range(m - 1, -1, -1):
            if ai == b[j]:
                nxt[j] = run[j + 1] + 1
        run = nxt
        for j in range(m):
            if run[j] > colmax[j]:
                colmax[j] = run[j]
        if i < k:
            out[i] = max(colmax[i:])
    return out


def _suffix_substring_similarity(a: Tokens, b: Tokens, k: int) -> list[float]:
    lens = _suffix_substring(a, b, k)
    n, m = len(a), len(b)
    return [v / max(n - i, m - i) for i, v in enumerate(lens)]


def _suffix_damerau(a: Tokens, b: Tokens, k: int) -> list[int]:
    n, m = len(a), len(b)
    row2 = [0] * (m + 1)  # row i+2
    row = list(range(m, -1, -1))  # row i+1, initially row_n
    out = [0] * k
    for i in range(n - 1, -1, -1):
        ai = a[i]
        nxt = [0] * (m + 1)
        nxt[m] = n - i
        can_trans_i = i + 1 < n
        for j in range(m - 1, -1, -1):
            bj = b[j]
            v = row[j + 1] + (ai != bj)
            dele = row[j] + 1
            if dele < v:
                v = dele
            ins = nxt[j + 1] + 1
            if ins < v:
                v = ins
            if can_trans_i and j + 1 < m and ai == b[j + 1] and a[i + 1] == bj:
                trans = row2[j + 2] + 1
                if trans < v:
                    v = trans
            nxt[j] = v
        row2, row = row, nxt
        if i < k:
            out[i] = row[i]
    return out


def _suffix_damerau_similarity(a: Tokens, b: Tokens, k: int) -> list[float]:
    dists = _suffix_damerau(a, b, k)
    n, m = len(a), len(b)
    return [1.0 - d / max(n - i, m - i) for i, d in enumerate(dists)]


def _suffix_dtw(a: Tokens, b: Tokens, k: int) -> list[float]:
    n, m = len(a), len(b)
    inf = float("inf")
    row = [inf] * (m + 1)  # row_n: only the (n, m) corner aligns for free
    row[m] = 0.0
    out = [0.0] * k
    for i in range(n - 1, -1, -1):
        ai = a[i]
        nxt = [inf] * (m + 1)
        for j in range(m - 1, -1, -1):
            best = row[j + 1]
            if row[j] < best:
                best = row[j]
            if nxt[j + 1] < best:
                best = nxt[j + 1]
            d = ai - b[j]
            nxt[j] = (d if d >= 0 else -d) + best
        row = nxt
        if i < k:
            out[i] = row[i]
    return out


def _suffix_dtw_similarity(a: Tokens, b: Tokens, k: int) -> list[float]:
    return [1.0 / (1.0 + v) for v in _suffix_dtw(a, b, k)]


_SUFFIX_PROFILERS: dict[MeasureKind, Callable[[Tokens, Tokens, int], list]] = {
    MeasureKind.LEVENSHTEIN: _suffix_levenshtein,
    MeasureKind.LEVENSHTEIN_RATIO: _suffix_levenshtein_ratio,
    MeasureKind.LCS_SIMILARITY: _suffix_lcs_similarity,
    MeasureKind.LC_SUBSTRING_SIMILARITY: _suffix_substring_similarity,
    MeasureKind.DAMERAU: _suffix_damerau,
    MeasureKind.DAMERAU_SIMILARITY: _suffix_damerau_similarity,
    MeasureKind.DTW: _suffix_dtw,
    MeasureKind.DTW_SIMILARITY: _suffix_dtw_similarity,
}
