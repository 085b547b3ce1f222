"""Finite slaloms, branches of a product space, and the covering predicate.

A slalom assigns to every level k a nonempty set of values below the ambient
cap f(k).  A family of slaloms covers the product space below f when every
branch threads through at least one of them.  Covering is decided by full
enumeration of the product space; witnesses are lexicographically least.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import ValidationFailure, WindowMismatch
from .scales import BoundFn


@dataclass(frozen=True)
class Slalom:
    """Per-level value sets, each nonempty and below the cap."""

    cap: BoundFn
    sets: tuple  # tuple of frozensets

    def __post_init__(self):
        sets = tuple(frozenset(int(v) for v in s) for s in self.sets)
        object.__setattr__(self, "sets", sets)
        if len(sets) != self.cap.window:
            raise WindowMismatch(f"{len(sets)} sets on a window of {self.cap.window}")
        bad = []
        for k, s in enumerate(sets):
            if not s:
                bad.append((f"k={k}", "empty level set"))
            elif min(s) < 0 or max(s) >= self.cap(k):
                bad.append((f"k={k}", f"values outside [0, {self.cap(k)})"))
        if bad:
            raise ValidationFailure(bad)

    @property
    def window(self) -> int:
        return len(self.sets)

    def level_sizes(self) -> tuple:
        return tuple(len(s) for s in self.sets)


@dataclass(frozen=True)
class Branch:
    """One point of the product space: a value below the cap at every level."""

    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))

    @property
    def window(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class SlalomFamily:
    slaloms: tuple

    def __post_init__(self):
        sl = tuple(self.slaloms)
        object.__setattr__(self, "slaloms", sl)
        if sl:
            cap = sl[0].cap
            if any(s.cap != cap for s in sl):
                raise WindowMismatch("family members have different caps")

    def __iter__(self):
        return iter(self.slaloms)

    def __len__(self):
        return len(self.slaloms)


def member(s: Branch, B: Slalom) -> bool:
    """True iff the branch value lies in the slalom's set at every level."""
    if s.window != B.window:
        raise WindowMismatch(f"branch window {s.window} vs slalom window {B.window}")
    return all(v in B.sets[k] for k, v in enumerate(s.values))


def branches(f: BoundFn):
    """All branches below f, in lexicographic order."""
    for tup in itertools.product(*(range(f(k)) for k in range(f.window))):
        yield Branch(tup)


def pad_to(B: Slalom, g_bound: BoundFn) -> Slalom:
    """Grow each level set to exactly min(g(k), cap(k)) values.

    Padding uses the least absent values; covering can only improve.
    """
    new_sets = []
    for k, s in enumerate(B.sets):
        target = min(g_bound(k), B.cap(k))
        if len(s) > target:
            raise ValidationFailure([(f"k={k}", f"|B_k|={len(s)} > bound {target}")])
        s = set(s)
        for v in range(B.cap(k)):
            if len(s) >= target:
                break
            s.add(v)
        new_sets.append(frozenset(s))
    return Slalom(B.cap, tuple(new_sets))


def covers(F: SlalomFamily, g_bound: BoundFn, f: BoundFn):
    """Decide whether F covers the product space below f.

    Returns (True, None), or (False, witness) where witness is the
    lexicographically least uncovered branch.  Members violating the
    size bound g_bound are rejected up front with their index.
    """
    for i, B in enumerate(F):
        if B.cap.values != f.values:
            raise WindowMismatch(f"slalom {i} has cap {B.cap.values}, expected {f.values}")
        for k, s in enumerate(B.sets):
            if len(s) > g_bound(k):
                raise ValidationFailure([(f"slalom {i}, k={k}",
                                          f"|B_k|={len(s)} > g(k)={g_bound(k)}")])
    for br in branches(f):
        if not any(all(v in B.sets[k] for k, v in enumerate(br.values)) for B in F):
            return False, br
    return True, None
