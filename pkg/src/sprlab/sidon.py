"""Integer sequences with distinct multiset sums (B_2 / B_3) and their density.

Two generators are provided: a smallest-first greedy that admits every
integer preserving the distinct-sum property, and a brute-force search for
perfect difference sets (q+1 residues mod q^2+q+1 whose nonzero pairwise
differences hit every nonzero residue exactly once).  ``verify_bh`` is the
independent exhaustive check both generators are tested against.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class DifferenceSetNotFoundError(LookupError):
    """No perfect difference set exists in the searched range."""


@dataclass
class BhSequence:
    """Strictly increasing positive integers with distinct h-fold multiset sums."""

    terms: list[int]
    h: int
    method: str  # "greedy" | "singer"
    complete: bool = True  # False when a greedy run hit its limit early
    modulus: int | None = None  # q^2+q+1 for singer sets

    def __post_init__(self):
        if self.h not in (2, 3):
            raise ValueError("h must be 2 or 3")
        t = self.terms
        if any(a <= 0 for a in t) or any(b <= a for a, b in zip(t, t[1:])):
            raise ValueError("terms must be strictly increasing positive integers")


@dataclass
class DensityProfile:
    """Counting function alpha(N) = #{terms <= N} at checkpoints, plus a log-log fit.

    The fit is None when fewer than two checkpoints carry a positive count.
    """

    table: list[tuple[int, int]]
    fitted_exponent: float | None


def verify_bh(seq, h: int):
    """Exhaustively check that all h-fold multiset sums are distinct.

    Returns (True, None) or (False, witness) where witness is a pair of
    index tuples (1-based, nondecreasing) with equal sums.
    """
    if h not in (2, 3):
        raise ValueError("h must be 2 or 3")
    terms = list(seq)
    if not terms:
        raise ValueError("empty sequence")
    seen: dict[int, tuple] = {}
    n = len(terms)
    if h == 2:
        for i in range(n):
            for j in range(i, n):
                s = terms[i] + terms[j]
                if s in seen:
                    return False, (seen[s], (i + 1, j + 1))
                seen[s] = (i + 1, j + 1)
    else:
        for i in range(n):
            for j in range(i, n):
                tij = terms[i] + terms[j]
                for k in range(j, n):
                    s = tij + terms[k]
                    if s in seen:
                        return False, (seen[s], (i + 1, j + 1, k + 1))
                    seen[s] = (i + 1, j + 1, k + 1)
    return True, None


def _mark(blocked: np.ndarray, values: np.ndarray, above: int):
    v = values[(values > above) & (values < blocked.size)]
    blocked[v] = True


def _outer_diff_mark(blocked, sums, subs, above, chunk=8_000_000):
    """Mark s - t for all s in sums, t in subs that land in the horizon."""
    if not len(sums) or not len(subs):
        return
    step = max(1, chunk // len(subs))
    for i in range(0, len(sums), step):
        d = (sums[i : i + step, None] - subs[None, :]).ravel()
        _mark(blocked, d, above)


def greedy_bh(h: int, count: int, limit: int | None = None) -> BhSequence:
    """Smallest-first greedy: admit each integer that keeps h-fold sums distinct.

    Future collisions are marked incrementally in a boolean horizon, so the
    per-candidate test is a single lookup.  If ``limit`` is reached before
    ``count`` terms the partial sequence is returned with complete=False.
    """
    if h not in (2, 3):
        raise ValueError("h must be 2 or 3")
    if count < 1:
        raise ValueError("count must be >= 1")
    horizon = max(4096, (32 if h == 3 else 8) * count**h)
    if limit is not None:
        horizon = min(horizon, h * limit + 4)
    blocked = np.zeros(horizon, dtype=bool)
    terms: list[int] = []
    pair = np.zeros(0, dtype=np.int64)   # multiset pair sums
    trip = np.zeros(0, dtype=np.int64)   # multiset triple sums (h=3 only)
    c = 1
    while len(terms) < count and (limit is None or c <= limit):
        if c >= horizon:
            # extend and replay all blocking against the larger horizon
            horizon *= 2
            blocked = np.zeros(horizon, dtype=bool)
            ta = np.asarray(terms, dtype=np.int64)
            _outer_diff_mark(blocked, pair, ta, 0)
            _mark(blocked, pair[pair % 2 == 0] // 2, 0)
            if h == 3:
                _outer_diff_mark(blocked, trip, pair, 0)
                step = max(1, 8_000_000 // max(1, len(ta)))
                for i in range(0, len(trip), step):
                    d = trip[i : i + step, None] - ta[None, :]
                    d = d[d % 2 == 0] // 2
                    _mark(blocked, d, 0)
                _mark(blocked, trip[trip % 3 == 0] // 3, 0)
        if not blocked[c]:
            ta = np.asarray(terms, dtype=np.int64)
            c_arr = np.asarray([c], dtype=np.int64)
            all_terms = np.concatenate([ta, c_arr])
            new_pair = np.concatenate([c + ta, [2 * c]]) if len(ta) else np.asarray([2 * c])
            if h == 2:
                # c' is blocked when c' + t or 2c' equals a pair sum; only the
                # (new sums x all terms) and (old sums x new term) products are new
                _outer_diff_mark(blocked, new_pair, all_terms, c)
                _outer_diff_mark(blocked, pair, c_arr, c)
                _mark(blocked, new_pair[new_pair % 2 == 0] // 2, c)
                pair = np.concatenate([pair, new_pair])
            else:
                new_trip = (
                    np.concatenate([c + pair, 2 * c + ta, [3 * c]])
                    if len(ta)
                    else np.asarray([3 * c])
                )
                # c' + p in triple sums
                _outer_diff_mark(blocked, trip, new_pair, c)
                _outer_diff_mark(blocked, new_trip, pair, c)
                _outer_diff_mark(blocked, new_trip, new_pair, c)
                # c' + t in pair sums, 2c' in pair sums
                _outer_diff_mark(blocked, new_pair, all_terms, c)
                _outer_diff_mark(blocked, pair, c_arr, c)
                _mark(blocked, new_pair[new_pair % 2 == 0] // 2, c)
                # 2c' + t in triple sums, 3c' in triple sums
                for sums, subs in ((new_trip, all_terms), (trip, c_arr)):
                    if len(sums) and len(subs):
                        step = max(1, 8_000_000 // len(subs))
                        for i in range(0, len(sums), step):
                            d = sums[i : i + step, None] - subs[None, :]
                            d = d[d % 2 == 0] // 2
                            _mark(blocked, d, c)
                _mark(blocked, new_trip[new_trip % 3 == 0] // 3, c)
                pair = np.concatenate([pair, new_pair])
                trip = np.concatenate([trip, new_trip])
            terms.append(c)
        c += 1
    return BhSequence(terms, h, "greedy", complete=len(terms) == count)


_PRIME_POWERS = {2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27}


def singer_difference_set(q: int, q_max: int = 11) -> BhSequence:
    """Perfect difference set of size q+1 mod q^2+q+1 by backtracking search.

    The canonical representative contains the residues 0 and 1; it is
    returned shifted by one, as integers in [1, q^2+q+1].  Non prime-power
    q are rejected (no projective plane exists at these orders).
    """
    if q < 2 or q > q_max:
        raise ValueError(f"q must be in [2, {q_max}], got {q}")
    if q not in _PRIME_POWERS:
        raise ValueError(f"q={q} is not a prime power; no perfect difference set")
    v = q * q + q + 1
    k = q + 1
    used = [False] * v
    chosen = [0, 1]
    used[1] = True
    used[v - 1] = True

    def place(start: int) -> bool:
        if len(chosen) == k:
            return True
        remaining = k - len(chosen)
        for cand in range(start, v - remaining + 1):
            new: list[int] = []
            ok = True
            for d in chosen:
                a = (cand - d) % v
                b = v - a
                if used[a] or used[b] or a == b or a in new or b in new:
                    ok = False
                    break
                new.append(a)
                new.append(b)
            if ok:
                for x in new:
                    used[x] = True
                chosen.append(cand)
                if place(cand + 1):
                    return True
                chosen.pop()
                for x in new:
                    used[x] = False
        return False

    if not place(2):
        raise DifferenceSetNotFoundError(f"no perfect difference set found for q={q}")
    terms = sorted(x + 1 for x in chosen)
    return BhSequence(terms, 2, "singer", modulus=v)


def density_profile(seq: BhSequence, checkpoints=None) -> DensityProfile:
    """alpha(N) at the checkpoints and the least-squares slope of log alpha vs log N.

    Default checkpoints: 24 log-spaced integers spanning the sequence range.
    """
    terms = np.asarray(seq.terms, dtype=np.int64)
    if checkpoints is None:
        checkpoints = np.unique(
            np.round(
                np.logspace(np.log10(terms[0]), np.log10(terms[-1]), 24)
            ).astype(np.int64)
        )
    else:
        checkpoints = np.asarray(sorted(checkpoints), dtype=np.int64)
    alpha = np.searchsorted(terms, checkpoints, side="right")
    table = [(int(n), int(a)) for n, a in zip(checkpoints, alpha)]
    keep = alpha > 0
    slope = None
    if keep.sum() >= 2:
        slope = float(
            np.polyfit(
                np.log(checkpoints[keep].astype(float)),
                np.log(alpha[keep].astype(float)),
                1,
            )[0]
        )
    return DensityProfile(table, slope)
