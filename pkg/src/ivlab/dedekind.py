"""Dedekind-domain model with a finite labeled prime set.

Because the prime set is finite, every nonzero fractional ideal factors as
a product of primes with integer exponents, and the fraction-field modules
that closure operations produce extend the exponents by minus infinity
("locally everything at that prime").  A module is therefore a vector of
extended exponents indexed by the ring's primes; the zero module and the
full fraction field get their own variants, and the all-minus-infinity
vector is canonicalized to the full field.

Element membership works on valuation vectors: a nonzero field element is
represented by its vector of exponents at the primes, and it belongs to a
module exactly when its vector dominates the module's componentwise.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import UsageError, ValidationError
from .extnat import NEG_INF
from .primes import DedekindPrime, PrimeRef, ZeroPrime


@dataclass(frozen=True)
class DedekindRing:
    primes: tuple[str, ...]

    def __post_init__(self):
        if not self.primes:
            raise ValidationError("a Dedekind model needs at least one prime")
        if len(set(self.primes)) != len(self.primes):
            raise ValidationError("prime labels must be distinct")

    def name(self) -> str:
        return "dedekind{" + ",".join(self.primes) + "}"

    # -- constructors -------------------------------------------------------

    def module(self, exps: dict[str, object]) -> "DedekindModule":
        vec = []
        for p in self.primes:
            e = exps.get(p, 0)
            if not (isinstance(e, int) or e is NEG_INF):
                raise ValidationError(f"bad exponent for {p}: {e!r}")
            vec.append(e)
        unknown = set(exps) - set(self.primes)
        if unknown:
            raise UsageError(f"unknown primes: {sorted(unknown)}")
        return DedekindModule.make(self, tuple(vec))

    def ideal(self, exps: dict[str, int]) -> "DedekindModule":
        mod = self.module(exps)
        if not mod.is_integral():
            raise ValidationError("ideal exponents must be >= 0")
        return mod

    def zero(self) -> "DedekindModule":
        return DedekindModule(self, "zero", ())

    def unit(self) -> "DedekindModule":
        return DedekindModule(self, "exps", (0,) * len(self.primes))

    def full(self) -> "DedekindModule":
        return DedekindModule(self, "full", ())

    def prime_ideal(self, label: str) -> "DedekindModule":
        if label not in self.primes:
            raise UsageError(f"unknown prime: {label}")
        return self.ideal({label: 1})

    def prime_refs(self) -> tuple[PrimeRef, ...]:
        return tuple(DedekindPrime(p) for p in self.primes)

    # -- enumeration and sampling -------------------------------------------

    def all_ideals(self, max_exp: int, include_zero: bool = True):
        """Every integral ideal with exponents <= max_exp (plus Zero)."""
        out = []
        if include_zero:
            out.append(self.zero())
        for vec in itertools.product(range(max_exp + 1), repeat=len(self.primes)):
            out.append(DedekindModule.make(self, vec))
        return out

    def sample_ideals(self, rng, count: int, max_exp: int = 3):
        out = [self.zero(), self.unit(), self.prime_ideal(self.primes[0])]
        while len(out) < count:
            vec = tuple(rng.randint(0, max_exp) for _ in self.primes)
            out.append(DedekindModule.make(self, vec))
        return out[:count]

    def sample_vectors(self, rng, count: int, bound: int = 4):
        """Valuation vectors of nonzero field elements, for membership tests."""
        return [tuple(rng.randint(-bound, bound) for _ in self.primes)
                for _ in range(count)]


@dataclass(frozen=True)
class DedekindModule:
    ring: DedekindRing
    kind: str            # "zero" | "full" | "exps"
    exps: tuple          # aligned with ring.primes; ints or NEG_INF

    @staticmethod
    def make(ring: DedekindRing, exps) -> "DedekindModule":
        exps = tuple(exps)
        if all(e is NEG_INF for e in exps):
            return DedekindModule(ring, "full", ())
        return DedekindModule(ring, "exps", exps)

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        return self.kind == "zero"

    def is_full(self) -> bool:
        return self.kind == "full"

    def is_unit(self) -> bool:
        return self.kind == "exps" and all(e == 0 for e in self.exps)

    def is_integral(self) -> bool:
        if self.kind == "zero":
            return True
        return self.kind == "exps" and all(
            e is not NEG_INF and e >= 0 for e in self.exps)

    def is_proper_ideal(self) -> bool:
        return self.is_integral() and not self.is_unit() and not self.is_zero()

    def is_finitely_generated(self) -> bool:
        if self.kind == "zero":
            return True
        return self.kind == "exps" and all(e is not NEG_INF for e in self.exps)

    def support(self) -> tuple[str, ...]:
        """Primes with a nonzero constraint (positive exponent), for integral
        ideals; the factorization support."""
        if self.kind != "exps":
            return ()
        return tuple(p for p, e in zip(self.ring.primes, self.exps)
                     if e is NEG_INF or e != 0)

    # -- algebra -------------------------------------------------------------

    def _check_ring(self, other: "DedekindModule"):
        if self.ring != other.ring:
            raise UsageError("ring mismatch")

    def mul(self, other: "DedekindModule") -> "DedekindModule":
        self._check_ring(other)
        if self.kind == "zero" or other.kind == "zero":
            return self.ring.zero()
        if self.kind == "full" or other.kind == "full":
            return self.ring.full()
        return DedekindModule.make(
            self.ring, tuple(a + b for a, b in zip(self.exps, other.exps)))

    def add(self, other: "DedekindModule") -> "DedekindModule":
        """Ideal/module sum: componentwise minimum of constraints."""
        self._check_ring(other)
        if self.kind == "zero":
            return other
        if other.kind == "zero":
            return self
        if self.kind == "full" or other.kind == "full":
            return self.ring.full()
        return DedekindModule.make(
            self.ring, tuple(min(a, b) for a, b in zip(self.exps, other.exps)))

    def intersect(self, other: "DedekindModule") -> "DedekindModule":
        self._check_ring(other)
        if self.kind == "zero" or other.kind == "zero":
            return self.ring.zero()
        if self.kind == "full":
            return other
        if other.kind == "full":
            return self
        return DedekindModule.make(
            self.ring, tuple(max(a, b) for a, b in zip(self.exps, other.exps)))

    def colon(self, other: "DedekindModule") -> "DedekindModule":
        """The fraction-field colon (self :_K other) = {x in K : x*other <= self}."""
        self._check_ring(other)
        if other.kind == "zero":
            raise UsageError("colon by the zero module is undefined")
        if self.kind == "zero":
            return self.ring.zero()
        if other.kind == "full":
            return self.ring.full() if self.kind == "full" else self.ring.zero()
        if self.kind == "full":
            return self.ring.full()
        vec = []
        for a, b in zip(self.exps, other.exps):
            if a is NEG_INF:
                vec.append(NEG_INF)
            elif b is NEG_INF:
                # other is locally everything at this prime but self is
                # bounded there: no field element multiplies it inside.
                return self.ring.zero()
            else:
                vec.append(a - b)
        return DedekindModule.make(self.ring, tuple(vec))

    def radical(self) -> "DedekindModule":
        if not self.is_integral():
            raise UsageError("radical of a fractional module is undefined")
        if self.kind == "zero":
            return self
        return DedekindModule.make(
            self.ring, tuple(min(e, 1) for e in self.exps))

    def contains(self, other: "DedekindModule") -> bool:
        self._check_ring(other)
        if other.kind == "zero" or self.kind == "full":
            return True
        if self.kind == "zero" or other.kind == "full":
            return False
        return all(a <= b for a, b in zip(self.exps, other.exps))

    def membership(self, vec: tuple[int, ...]) -> bool:
        """Does the field element with this valuation vector lie in the module?"""
        if len(vec) != len(self.ring.primes):
            raise UsageError("vector length mismatch")
        if self.kind == "zero":
            return False
        if self.kind == "full":
            return True
        return all(e is NEG_INF or v >= e for v, e in zip(vec, self.exps))

    def minimal_primes(self) -> tuple[PrimeRef, ...]:
        if not self.is_integral() or self.is_unit() or self.is_zero():
            raise UsageError("minimal primes need a proper nonzero ideal")
        return tuple(DedekindPrime(p) for p in self.support())

    def localize(self, prime: PrimeRef) -> "DedekindModule":
        """The module self * R_P inside K."""
        if self.kind in ("zero", "full"):
            return self
        if isinstance(prime, ZeroPrime):
            return self.ring.full()
        if not isinstance(prime, DedekindPrime) or prime.label not in self.ring.primes:
            raise UsageError(f"not a prime of this ring: {prime}")
        vec = tuple(e if p == prime.label else NEG_INF
                    for p, e in zip(self.ring.primes, self.exps))
        return DedekindModule.make(self.ring, vec)

    # -- subideal enumeration for IV3-style checks ---------------------------

    def fg_subideals(self, rng, count: int, slack: int = 2):
        """Finitely generated (here: all) ideals inside an integral ideal."""
        if not self.is_integral() or self.is_zero():
            return []
        out = [self]
        while len(out) < count:
            vec = tuple(e + rng.randint(0, slack) for e in self.exps)
            out.append(DedekindModule.make(self.ring, vec))
        return out

    def __str__(self):
        return fmt_dedekind(self)


def fmt_dedekind(mod: DedekindModule) -> str:
    if mod.kind == "zero":
        return "zero"
    if mod.kind == "full":
        return "fullfield"
    if mod.is_unit():
        return "unit"
    parts = []
    for p, e in zip(mod.ring.primes, mod.exps):
        if e is NEG_INF:
            parts.append(f"{p}^neg_inf")
        elif e == 1:
            parts.append(p)
        elif e != 0:
            parts.append(f"{p}^{e}")
    return "*".join(parts)
