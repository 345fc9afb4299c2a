"""Ideal valuations: functions from integral ideals to extended naturals
satisfying the three defining laws

  V1  nu(zero) = 0 and nu(ring) = infinity;
  V2  nu(I*J) = min(nu(I), nu(J));
  V3  nu(I) is the supremum of nu(J) over finitely generated J <= I;

together with their consequences (monotone in containment, stable under
powers, radicals, and intersections).  Such a function is determined by
its values on primes, which is what every constructor here consumes or
produces.

Constructors: ``PrimeTable`` (per-prime values on a Dedekind model),
``Induced`` (monotone prime data on any model), ``FromLS`` (the indicator
of a localizing system, rejected when the system is not finite type),
``PGrade`` (height of the minimal primes), and contractions/extensions
along the ring maps at the bottom of this module.  ``check_axioms`` is
the sampling harness that audits any of them.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cuts import OMEGA_PRIME_BOUND, TOP, CutModule, ValuationRing
from .dedekind import DedekindModule, DedekindRing
from .errors import UsageError, ValidationError
from .extnat import INF, fmt_ext, is_extnat
from .groups import LexZ, LexZOmega, Rationals
from .localizing import LocalizingSystem
from .monomial import MonomialModule, MonomialRing
from .primes import (DedekindPrime, MonomialPrime, PrimeRef, ValuationPrime,
                     ZeroPrime)

Ring = DedekindRing | ValuationRing | MonomialRing


def _check_value(v):
    if v is INF or (isinstance(v, int) and v >= 0):
        return v
    raise ValidationError(f"valuation values are naturals or inf: {v!r}")


def prime_ideal_from_ref(ring: Ring, ref: PrimeRef):
    if isinstance(ref, ZeroPrime):
        return ring.zero()
    if isinstance(ring, DedekindRing):
        if not isinstance(ref, DedekindPrime):
            raise UsageError(f"not a prime of {ring.name()}: {ref}")
        return ring.prime_ideal(ref.label)
    if isinstance(ring, ValuationRing):
        if not isinstance(ref, ValuationPrime):
            raise UsageError(f"not a prime of {ring.name()}: {ref}")
        return ring.prime_from_ref(ref)
    if not isinstance(ref, MonomialPrime):
        raise UsageError(f"not a prime of {ring.name()}: {ref}")
    return ring.prime_ideal(ref)


def nonzero_prime_refs(ring: Ring, bound: int = OMEGA_PRIME_BOUND):
    """The nonzero primes a procedure inspects: all of them for the
    Dedekind and monomial models, the exposed chain for valuation models."""
    if isinstance(ring, DedekindRing):
        return ring.prime_refs()
    if isinstance(ring, ValuationRing):
        return ring.exposed_prime_refs(bound)
    return ring.nonzero_prime_refs()


def _guard(valuation, module):
    if module.ring != valuation.ring:
        raise UsageError("module from a different ring")
    if not module.is_integral():
        raise UsageError("valuations apply to integral ideals")


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PrimeTable:
    """Per-prime values on a Dedekind model; unlisted primes get 0."""

    ring: DedekindRing
    entries: tuple

    @staticmethod
    def make(ring: DedekindRing, table: dict) -> "PrimeTable":
        if not isinstance(ring, DedekindRing):
            raise ValidationError("prime tables describe Dedekind models")
        given = {}
        for key, val in table.items():
            label = key.label if isinstance(key, DedekindPrime) else str(key)
            if label not in ring.primes:
                raise ValidationError(f"unknown prime {label!r}")
            given[label] = _check_value(val)
        return PrimeTable(
            ring, tuple((p, given.get(p, 0)) for p in ring.primes))

    def value(self, module):
        _guard(self, module)
        if module.is_zero():
            return 0
        if module.is_unit():
            return INF
        table = dict(self.entries)
        return min(table[p] for p in module.support())

    def name(self) -> str:
        body = ", ".join(f"{p}={fmt_ext(v)}" for p, v in self.entries)
        return f"primes{{{body}}}"


@dataclass(frozen=True)
class Induced:
    """The valuation induced by monotone data on the nonzero primes: a
    proper nonzero ideal takes the minimum of the data over its minimal
    primes.

    On the omega-rank valuation model the maximal ideal is the union of
    the finite levels, so the induced value there is the tail value of the
    finite profile (the supremum the third law forces), not the listed
    entry for the maximal ideal.
    """

    ring: Ring
    entries: tuple   # ((prime ref, value), ...) materialized over the model

    @staticmethod
    def make(ring: Ring, table: dict) -> "Induced":
        given = {}
        for ref, val in table.items():
            if isinstance(ref, ZeroPrime):
                raise ValidationError("data is given on nonzero primes only")
            # surface arity/kind mismatches early
            prime_ideal_from_ref(ring, ref)
            given[ref] = _check_value(val)

        if isinstance(ring, DedekindRing):
            entries = tuple((ref, given.get(ref, 0))
                            for ref in ring.prime_refs())
            return Induced(ring, entries)

        if isinstance(ring, ValuationRing):
            refs = ring.exposed_prime_refs(OMEGA_PRIME_BOUND)
            for ref in given:
                if ref not in refs:
                    raise ValidationError(
                        f"{ref} is beyond the exposed prime chain")
            entries = []
            last = 0
            for ref in refs:
                val = given.get(ref, last)   # step extension between listings
                entries.append((ref, val))
                last = val
            vals = [v for _, v in entries]
            for a, b in zip(vals, vals[1:]):
                if not a <= b:
                    raise ValidationError(
                        "prime data must not decrease along the chain")
            return Induced(ring, tuple(entries))

        # monomial: fill unlisted subsets by the largest listed value below
        refs = ring.nonzero_prime_refs()
        entries = []
        for ref in refs:
            if ref in given:
                val = given[ref]
            else:
                below = [given[r] for r in given
                         if set(r.variables) <= set(ref.variables)]
                val = max(below, default=0)
            entries.append((ref, val))
        table_full = dict(entries)
        for small in refs:
            for big in refs:
                if set(small.variables) <= set(big.variables):
                    if not table_full[small] <= table_full[big]:
                        raise ValidationError(
                            "prime data must not decrease along containment")
        return Induced(ring, tuple(entries))

    def _level_value(self, level):
        table = dict(self.entries)
        tail_ref = ValuationPrime(OMEGA_PRIME_BOUND)
        if level is INF:
            if isinstance(self.ring.group, LexZOmega):
                return table[tail_ref]     # forced by the supremum law
            return table[ValuationPrime(1)]
        if isinstance(self.ring.group, LexZOmega) and level > OMEGA_PRIME_BOUND:
            return table[tail_ref]
        return table[ValuationPrime(level)]

    def value(self, module):
        _guard(self, module)
        if module.is_zero():
            return 0
        if module.is_unit():
            return INF
        table = dict(self.entries)
        if isinstance(self.ring, DedekindRing):
            return min(table[ref] for ref in module.minimal_primes())
        if isinstance(self.ring, ValuationRing):
            if isinstance(self.ring.group, Rationals):
                return table[ValuationPrime(1)]
            return self._level_value(module.radical_prime_ref().level)
        return min(table[ref] for ref in module.minimal_primes())

    def name(self) -> str:
        body = ", ".join(f"{ref}={fmt_ext(v)}" for ref, v in self.entries)
        return f"induced{{{body}}}"


@dataclass(frozen=True)
class FromLS:
    """The indicator valuation of a localizing system: members map to 1,
    proper non-members to 0.  The third law forces the system to be finite
    type; pass forced=True to build the function anyway and watch
    check_axioms fail it."""

    ring: Ring
    system: LocalizingSystem
    forced: bool = False

    def __post_init__(self):
        if getattr(self.system, "ring", None) != self.ring:
            raise ValidationError("system is over a different ring")
        if not self.forced and not self.system.is_finite_type():
            raise ValidationError(
                "system is not finite type: some member contains no "
                "finitely generated member of the system, so the "
                "finitely-generated-supremum law would fail")

    def value(self, module):
        _guard(self, module)
        if module.is_zero():
            return 0
        if module.is_unit():
            return INF
        return 1 if self.system.membership(module) else 0

    def name(self) -> str:
        return f"fromls{{{self.system.name()}}}"


@dataclass(frozen=True)
class PGrade:
    """Height of the minimal primes: 1 on every proper nonzero Dedekind
    ideal, the chain level of the radical prime on a valuation model
    (infinity at the omega model's maximal ideal), the cover height on
    monomial ideals."""

    ring: Ring

    def value(self, module):
        _guard(self, module)
        if module.is_zero():
            return 0
        if module.is_unit():
            return INF
        if isinstance(self.ring, DedekindRing):
            return 1
        if isinstance(self.ring, ValuationRing):
            level = module.radical_prime_ref().level
            return INF if level is INF else level
        return module.height()

    def name(self) -> str:
        return "pgrade"


# ---------------------------------------------------------------------------
# ring maps and valuation transport
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DedekindLocalization:
    """R -> R_S for the multiplicative set avoiding the kept primes: the
    target is the Dedekind model on the kept labels."""

    source: DedekindRing
    kept: tuple

    def __post_init__(self):
        if not self.kept:
            raise ValidationError("keep at least one prime")
        if len(set(self.kept)) != len(self.kept):
            raise ValidationError("duplicate kept primes")
        for p in self.kept:
            if p not in self.source.primes:
                raise ValidationError(f"unknown prime {p!r}")
        if tuple(p for p in self.source.primes if p in self.kept) != self.kept:
            raise ValidationError("kept primes must follow the source order")

    def target(self) -> DedekindRing:
        return DedekindRing(self.kept)

    def extend_module(self, module: DedekindModule) -> DedekindModule:
        if module.ring != self.source:
            raise UsageError("module from a different ring")
        tgt = self.target()
        if module.kind in ("zero", "full"):
            return DedekindModule(tgt, module.kind, ())
        table = dict(zip(self.source.primes, module.exps))
        return DedekindModule.make(tgt, tuple(table[p] for p in self.kept))

    def contract_module(self, module: DedekindModule) -> DedekindModule:
        if module.ring != self.target():
            raise UsageError("module from a different ring")
        if module.kind == "zero":
            return self.source.zero()
        if module.kind == "full":
            return self.source.unit()    # the full module meets R in R
        table = dict(zip(self.kept, module.exps))
        exps = tuple(max(table[p], 0) if p in table else 0
                     for p in self.source.primes)
        return DedekindModule.make(self.source, exps)

    def name(self) -> str:
        return "localization{keep=" + ",".join(self.kept) + "}"


@dataclass(frozen=True)
class ValuationOverring:
    """R -> R_{P_j}: the overring of a valuation model at a finite chain
    level j, presented as the rank-j finite-lex model (the identity map on
    the rationals model, whose only overring below the field is itself)."""

    source: ValuationRing
    level: int

    def __post_init__(self):
        g = self.source.group
        if isinstance(g, Rationals):
            if self.level != 1:
                raise ValidationError("the rationals model only has level 1")
            return
        if not (isinstance(self.level, int) and self.level >= 1):
            raise ValidationError(f"bad overring level: {self.level!r}")
        if isinstance(g, LexZ) and self.level > g.rank:
            raise ValidationError(f"level {self.level} exceeds rank {g.rank}")

    def target(self) -> ValuationRing:
        if isinstance(self.source.group, Rationals):
            return self.source
        return ValuationRing(LexZ(self.level))

    def extend_module(self, module: CutModule) -> CutModule:
        if module.ring != self.source:
            raise UsageError("module from a different ring")
        if isinstance(self.source.group, Rationals):
            return module
        tgt = self.target()
        if module.kind == "zero":
            return tgt.zero()
        if module.kind == "full":
            return tgt.full()
        loc = module.localize(ValuationPrime(self.level))
        from .cuts import make_cut
        return make_cut(tgt, loc.level, loc.threshold, loc.strict)

    def contract_module(self, module: CutModule) -> CutModule:
        if module.ring != self.target():
            raise UsageError("module from a different ring")
        if isinstance(self.source.group, Rationals):
            return module
        if module.kind == "zero":
            return self.source.zero()
        if module.kind == "full":
            return self.source.unit()
        from .cuts import make_cut
        back = make_cut(self.source, module.level, module.threshold,
                        module.strict)
        return back.intersect(self.source.unit())

    def name(self) -> str:
        return f"overring{{level={self.level}}}"


RingMap = DedekindLocalization | ValuationOverring


@dataclass(frozen=True)
class Contracted:
    """Pull a valuation on the target of a map back to the source:
    nu^c(I) = nu(I extended)."""

    map: RingMap
    inner: object

    def __post_init__(self):
        if getattr(self.inner, "ring", None) != self.map.target():
            raise ValidationError("inner valuation is not over the map target")

    @property
    def ring(self):
        return self.map.source

    def value(self, module):
        _guard(self, module)
        return self.inner.value(self.map.extend_module(module))

    def name(self) -> str:
        return f"contracted{{{self.map.name()}, {self.inner.name()}}}"


@dataclass(frozen=True)
class Extended:
    """Push a valuation on the source of a map to the target:
    nu^e(J) = nu(J contracted)."""

    map: RingMap
    inner: object

    def __post_init__(self):
        if getattr(self.inner, "ring", None) != self.map.source:
            raise ValidationError("inner valuation is not over the map source")

    @property
    def ring(self):
        return self.map.target()

    def value(self, module):
        _guard(self, module)
        return self.inner.value(self.map.contract_module(module))

    def name(self) -> str:
        return f"extended{{{self.map.name()}, {self.inner.name()}}}"


# ---------------------------------------------------------------------------
# the axiom audit
# ---------------------------------------------------------------------------


def _fg_supremum(valuation, module, rng, count: int):
    """Supremum of the valuation over finitely generated subideals, as a
    pair (value, exact).

    Finitely generated modules answer for themselves.  Otherwise the
    principal subideals near the boundary are cofinal, and on the
    omega-rank model a deterministic ladder of ever-deeper principals is
    walked as well: step data beyond the exposed chain is constant by
    construction, so a profile still climbing past twice the chain depth
    is unbounded and the supremum is infinity.  The result is flagged
    inexact only when neither route settles the value."""
    if not isinstance(module, CutModule) or module.is_finitely_generated():
        return valuation.value(module), True
    ring = module.ring
    g = ring.group
    vals = [valuation.value(j)
            for j in module.principal_subideals(rng, count)]
    if isinstance(g, LexZOmega):
        if module.kind == "maxlimit":
            base = g.zero()
        elif module.level is TOP:
            base = module.threshold    # a cut at a group element
        else:
            base = None    # finite-level cut: boundary probes are cofinal
        if base is not None:
            depth = 2 * OMEGA_PRIME_BOUND + 2
            start = 1 + max([i for i, _ in base], default=0)
            ladder = []
            for k in range(start, start + depth):
                x = g.add(base, g.make([(k, 1)]))
                if module.membership(x):
                    ladder.append(valuation.value(ring.principal(x)))
            if len(ladder) >= 2 and ladder[-1] > ladder[-2]:
                return INF, True
            vals += ladder
    return max(vals, default=0), bool(vals)


def check_axioms(valuation, rng, samples: int = 60):
    """Audit the defining laws and their consequences on sampled ideals of
    the valuation's ring.  Returns one entry per law:
    {"law", "status", "witness"?} with a witness on every failure."""
    ring = valuation.ring
    ideals = ring.sample_ideals(rng, max(8, samples))
    report = []

    def law(name, failures):
        entry = {"law": name, "status": "fail" if failures else "pass"}
        if failures:
            entry["witness"] = failures[0]
        report.append(entry)

    fails = []
    if valuation.value(ring.zero()) != 0:
        fails.append(f"nu(zero) = {fmt_ext(valuation.value(ring.zero()))}")
    if valuation.value(ring.unit()) is not INF:
        fails.append(f"nu(unit) = {fmt_ext(valuation.value(ring.unit()))}")
    law("zero-and-unit", fails)

    pairs = [(ideals[rng.randrange(len(ideals))],
              ideals[rng.randrange(len(ideals))]) for _ in range(samples)]

    fails = []
    for a, b in pairs:
        got = valuation.value(a.mul(b))
        want = min(valuation.value(a), valuation.value(b))
        if got != want:
            fails.append(f"nu({a} * {b}) = {fmt_ext(got)}, "
                         f"min gives {fmt_ext(want)}")
    law("product-min", fails)

    fails = []
    for a, b in pairs:
        got = valuation.value(a.intersect(b))
        want = min(valuation.value(a), valuation.value(b))
        if got != want:
            fails.append(f"nu({a} meet {b}) = {fmt_ext(got)}, "
                         f"min gives {fmt_ext(want)}")
    law("intersection-min", fails)

    fails = []
    for a, b in pairs:
        if not b.contains(a):
            continue
        if not valuation.value(a) <= valuation.value(b):
            fails.append(f"{a} <= {b} but nu = {fmt_ext(valuation.value(a))} "
                         f"> {fmt_ext(valuation.value(b))}")
    law("monotone", fails)

    fails = []
    for a in ideals:
        base = valuation.value(a)
        power = a.mul(a).mul(a)
        got = valuation.value(power)
        if got != base:
            fails.append(f"nu({a}^3) = {fmt_ext(got)} != {fmt_ext(base)}")
    law("power", fails)

    fails = []
    for a in ideals:
        got = valuation.value(a.radical())
        base = valuation.value(a)
        if got != base:
            fails.append(f"nu(radical {a}) = {fmt_ext(got)} "
                         f"!= {fmt_ext(base)}")
    law("radical", fails)

    fails = []
    for a in ideals:
        base = valuation.value(a)
        if a.is_zero():
            continue
        best, decisive = _fg_supremum(valuation, a, rng,
                                      max(12, samples // 4))
        if decisive and best != base:
            fails.append(f"nu({a}) = {fmt_ext(base)} but sampled finitely "
                         f"generated subideals reach {fmt_ext(best)}")
    law("fg-supremum", fails)

    return report
