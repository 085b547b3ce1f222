"""Exact and bounded computation of the finite covering number.

The covering number of (f, g) is the least m such that m slaloms with level
sets of size g(k) cover the whole product space below f.  Everything here is
brute force by design: instances are guarded, witnesses are deterministic,
and the exact search is an iterative-deepening DFS starting at the counting
lower bound.
"""

from __future__ import annotations

import itertools
import math

from .errors import GuardExceeded
from .scales import BoundFn
from .slaloms import Slalom, SlalomFamily, covers

BRUTE_GUARD = 10 ** 6


def _prod(xs):
    p = 1
    for x in xs:
        p *= x
    return p


def cover_number_bounds(f: BoundFn, g: BoundFn):
    """(counting lower bound, grid upper bound, grid witness family).

    lower = ceil(prod f / prod g); upper = prod ceil(f/g), witnessed by the
    family of axis-aligned grid cells of side g(k).
    """
    if all(f(k) <= g(k) for k in range(f.window)):
        full = Slalom(f, tuple(frozenset(range(f(k))) for k in range(f.window)))
        return 1, 1, SlalomFamily((full,))
    lower = -(-_prod(f.values) // _prod(g.values))
    per_level = [[frozenset(range(i * g(k), min((i + 1) * g(k), f(k))))
                  for i in range(math.ceil(f(k) / g(k)))]
                 for k in range(f.window)]
    family = SlalomFamily(tuple(Slalom(f, cells)
                                for cells in itertools.product(*per_level)))
    return lower, len(family), family


def _candidate_sets(fk: int, gk: int):
    """All gk-subsets of [0, fk) as sorted tuples, lexicographic."""
    size = min(gk, fk)
    return [tuple(c) for c in itertools.combinations(range(fk), size)]


def _slalom_space_size(f: BoundFn, g: BoundFn) -> int:
    return _prod(math.comb(f(k), min(g(k), f(k))) for k in range(f.window))


def cover_number_exact(f: BoundFn, g: BoundFn, budget: int = 64, guard: int = BRUTE_GUARD):
    """Least family size covering the product below f, with a witness family.

    Iterative deepening over the family size, starting at the counting
    bound.  Candidate slaloms have exact-cardinality level sets (padding
    makes that lossless).  Raises GuardExceeded when the candidate space
    is too large, and returns None if the budget is exhausted first.
    """
    space = _slalom_space_size(f, g)
    if space > guard:
        raise GuardExceeded(space, guard, "candidate slalom space")
    lower, upper, grid = cover_number_bounds(f, g)
    if all(f(k) <= g(k) for k in range(f.window)):
        return 1, grid
    all_branches = list(itertools.product(*(range(f(k)) for k in range(f.window))))
    per_level = [_candidate_sets(f(k), g(k)) for k in range(f.window)]
    max_cover = _prod(min(g(k), f(k)) for k in range(f.window))

    # candidates covering a given branch, lexicographic by level-set tuples
    def covering_candidates(branch):
        opts = [[s for s in per_level[k] if branch[k] in s] for k in range(f.window)]
        for combo in itertools.product(*opts):
            yield combo

    def dfs(uncovered, chosen, slots):
        if not uncovered:
            return list(chosen)
        if slots == 0 or len(uncovered) > slots * max_cover:
            return None
        pivot = uncovered[0]
        for cand in covering_candidates(pivot):
            rest = [b for b in uncovered
                    if not all(b[k] in cand[k] for k in range(f.window))]
            chosen.append(cand)
            found = dfs(rest, chosen, slots - 1)
            if found is not None:
                return found
            chosen.pop()
        return None

    for m in range(lower, min(upper, budget) + 1):
        found = dfs(all_branches, [], m)
        if found is not None:
            fam = SlalomFamily(tuple(Slalom(f, tuple(frozenset(s) for s in c))
                                     for c in found))
            ok, _ = covers(fam, g, f)
            assert ok
            return m, fam
    if upper <= budget:
        # the grid witness always covers, so this is unreachable
        raise AssertionError("grid bound not realized")
    return None, None


def greedy_cover(f: BoundFn, g: BoundFn, guard: int = BRUTE_GUARD) -> SlalomFamily:
    """Greedy heuristic: repeatedly add the slalom covering the most new
    branches, ties broken by lexicographic candidate order."""
    if _prod(f.values) > guard:
        raise GuardExceeded(_prod(f.values), guard, "branch space")
    space = _slalom_space_size(f, g)
    if space > guard:
        raise GuardExceeded(space, guard, "candidate slalom space")
    per_level = [_candidate_sets(f(k), min(g(k), f(k))) for k in range(f.window)]
    candidates = list(itertools.product(*per_level))
    uncovered = set(itertools.product(*(range(f(k)) for k in range(f.window))))
    chosen = []
    while uncovered:
        best, best_gain = None, -1
        for cand in candidates:
            gain = sum(1 for b in uncovered
                       if all(b[k] in cand[k] for k in range(f.window)))
            if gain > best_gain:
                best, best_gain = cand, gain
        uncovered = {b for b in uncovered
                     if not all(b[k] in best[k] for k in range(f.window))}
        chosen.append(best)
    fam = SlalomFamily(tuple(Slalom(f, tuple(frozenset(s) for s in c)) for c in chosen))
    ok, _ = covers(fam, g, f)
    assert ok
    return fam
