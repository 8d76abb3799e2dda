# Standard Library Imports
from dataclasses import dataclass, field
from typing import Any, Optional, Tuple

# Quipu
from quipu.utils import Scope


@dataclass(frozen=True)
class MinimizerReport:
    """Every candidate within tie tolerance of the smallest spectral radius.

    ``argmin`` holds k-vectors for family scopes and canonical codes (or graph
    names) for the exhaustive scopes; ``labels`` are their printable forms.
    ``runner_up_gap`` is ``None`` when no candidate outside the tie exists.
    """

    n: int
    D: int
    scope: Scope
    argmin: Tuple[Any, ...]
    rho: Any
    runner_up_gap: Optional[Any]
    labels: Tuple[str, ...] = ()
    witnesses: Tuple[Any, ...] = field(default=(), compare=False, repr=False)

    @property
    def e(self):
        return self.n - self.D
