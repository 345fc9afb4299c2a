"""Localizing systems: upward-closed, multiplicative families of integral
ideals, given by one of three finite descriptions.

* ``GeneratedByFG(gens)``: the smallest localizing system containing the
  given nonzero integral ideals; an ideal belongs iff it contains some
  finite product of generators.
* ``PrimeCut(prime)``: the ideals strictly containing the named prime.
* ``ValuationLevel(valuation, n)``: the ideals the valuation sends to n or
  higher.

Membership tests are exact closed forms in the Dedekind and valuation
models and a saturation computation in the monomial model.  A system is
*finite type* when every member contains a finitely generated member; the
structural tests below decide that without enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cuts import CutModule, ValuationRing
from .dedekind import DedekindModule, DedekindRing
from .errors import UsageError, ValidationError
from .extnat import INF, is_extnat
from .monomial import MonomialModule, MonomialRing
from .primes import PrimeRef, ZeroPrime


@dataclass(frozen=True)
class GeneratedByFG:
    ring: object
    gens: tuple

    def __post_init__(self):
        if not self.gens:
            raise ValidationError("a generated system needs at least one ideal")
        for g in self.gens:
            if getattr(g, "ring", None) != self.ring:
                raise ValidationError("generator from a different ring")
            if g.is_zero() or not g.is_integral():
                raise ValidationError(
                    "generators must be nonzero integral ideals")

    def membership(self, ideal) -> bool:
        if ideal.is_zero() or not ideal.is_integral():
            return False
        if ideal.is_unit():
            return True
        if isinstance(self.ring, DedekindRing):
            allowed = set()
            for g in self.gens:
                allowed |= set(g.support())
            return set(ideal.support()) <= allowed
        if isinstance(self.ring, ValuationRing):
            # powers of a generator sink below the ideal iff the generator
            # is not idempotent; the only idempotent proper ideal is the
            # maximal one, whose powers stay put
            deepening = [g for g in self.gens
                         if not g.is_unit() and g.mul(g) != g]
            if deepening:
                floor = min(g.radical_prime_ref().level for g in deepening)
                return floor <= ideal.radical_prime_ref().level
            if any(not g.is_unit() for g in self.gens):
                return ideal == self.ring.maximal_ideal()
            return False   # unit generators only: proper ideals stay out
        product = self.ring.unit()
        for g in self.gens:
            product = product.mul(g)
        current = ideal
        while True:
            step = current.rcolon(product)
            if step == current:
                return current.is_unit()
            current = step

    def is_finite_type(self) -> bool:
        if not isinstance(self.ring, ValuationRing):
            return True   # every Dedekind or monomial ideal is f.g.
        if any(not g.is_unit() and g.mul(g) != g for g in self.gens):
            # a deepening generator traps a principal system member inside
            # every member
            return True
        # units and copies of the maximal ideal only: the system is {R} or
        # {R, M}, and a non-principal M contains no f.g. member
        return all(g.is_unit() for g in self.gens)

    def name(self) -> str:
        return "gens[" + "; ".join(str(g) for g in self.gens) + "]"


@dataclass(frozen=True)
class PrimeCut:
    """The system of ideals not contained in the prime.  Escaping the prime
    survives products, so this is a localizing system on every model; on a
    valuation model, where ideals are totally ordered, escaping the prime is
    the same as strictly containing it."""

    ring: object
    prime: PrimeRef

    def prime_ideal(self):
        if isinstance(self.prime, ZeroPrime):
            return self.ring.zero()
        if isinstance(self.ring, DedekindRing):
            return self.ring.prime_ideal(self.prime.label)
        if isinstance(self.ring, ValuationRing):
            return self.ring.prime_from_ref(self.prime)
        return self.ring.prime_ideal(self.prime)

    def membership(self, ideal) -> bool:
        if ideal.is_zero() or not ideal.is_integral():
            return False
        return not self.prime_ideal().contains(ideal)

    def is_finite_type(self) -> bool:
        # a member owns an element outside the prime, and that element
        # generates a principal member inside it
        return True

    def name(self) -> str:
        return f"primecut({self.prime})"


@dataclass(frozen=True)
class ValuationLevel:
    ring: object
    valuation: object
    n: int

    def __post_init__(self):
        if not (isinstance(self.n, int) and self.n >= 0):
            raise ValidationError(f"level must be a natural number: {self.n!r}")
        if getattr(self.valuation, "ring", None) != self.ring:
            raise ValidationError("valuation is over a different ring")

    def membership(self, ideal) -> bool:
        if not ideal.is_integral():
            return False
        return self.valuation.value(ideal) >= self.n

    def is_finite_type(self) -> bool:
        # the value of an ideal is the supremum over finitely generated
        # subideals, and a supremum of naturals at or above a finite bound
        # is attained
        return True

    def name(self) -> str:
        return f"level({self.valuation.name()}, {self.n})"


LocalizingSystem = GeneratedByFG | PrimeCut | ValuationLevel
