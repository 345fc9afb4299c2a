"""Prime-ideal references shared by all three ring models.

A prime reference names a prime without carrying the ideal representation:
the zero ideal (a prime in any domain), a labeled maximal ideal of a
Dedekind model, a level on the convex-subgroup chain of a valuation model
(with INF naming the maximal ideal of the omega-rank model), or a variable
subset in the monomial model.
"""

from __future__ import annotations

from dataclasses import dataclass

from .extnat import INF
from .errors import ValidationError


@dataclass(frozen=True)
class ZeroPrime:
    def __str__(self):
        return "0"


@dataclass(frozen=True)
class DedekindPrime:
    label: str

    def __str__(self):
        return self.label


@dataclass(frozen=True)
class ValuationPrime:
    """Level k >= 1 on the prime chain; level INF is the maximal ideal of
    the omega-rank model (the union of all finite levels, never equal to
    any of them)."""

    level: object

    def __post_init__(self):
        ok = self.level is INF or (isinstance(self.level, int) and self.level >= 1)
        if not ok:
            raise ValidationError(f"bad valuation prime level: {self.level!r}")

    def __str__(self):
        return "maxideal" if self.level is INF else f"prime({self.level})"


@dataclass(frozen=True)
class MonomialPrime:
    variables: tuple[str, ...]

    def __post_init__(self):
        if not self.variables:
            raise ValidationError("monomial prime needs at least one variable")
        if tuple(sorted(self.variables)) != self.variables:
            raise ValidationError("monomial prime variables must be sorted")

    def __str__(self):
        return "(" + ",".join(self.variables) + ")"


ZERO_PRIME = ZeroPrime()

PrimeRef = ZeroPrime | DedekindPrime | ValuationPrime | MonomialPrime
