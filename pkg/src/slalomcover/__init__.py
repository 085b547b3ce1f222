"""Finite slalom covers: scales, covering numbers, transfer systems,
normed-tree conditions, the fusion game, and slalom extraction."""

from .covernum import cover_number_bounds, cover_number_exact, greedy_cover
from .errors import (GuardExceeded, SlalomError, ValidationFailure,
                     WindowMismatch)
from .scales import (BoundFn, ScaleSeq, Triple, T1, gen_blass_family,
                     gen_square_pair, validate_scale, validate_triple)
from .slaloms import Branch, Slalom, SlalomFamily, covers, member

__all__ = [
    "BoundFn", "Branch", "GuardExceeded", "ScaleSeq", "Slalom",
    "SlalomFamily", "SlalomError", "T1", "Triple", "ValidationFailure",
    "WindowMismatch", "cover_number_bounds", "cover_number_exact", "covers",
    "gen_blass_family", "gen_square_pair", "greedy_cover", "member",
    "validate_scale", "validate_triple",
]
