"""Semistar operations: closure maps E -> E* on modules inside the
fraction field, with E* >= E, monotone, and idempotent, sending the zero
module to itself and the full module to itself.

Implemented operations:

* ``OpD`` (identity) and ``OpE`` (everything nonzero maps to the field);
* ``OpV`` (divisorial closure, the double dual E -> (R : (R : E)));
* ``OpW`` (the finite-type divisorial closure);
* ``SpectralOp`` (intersection of localizations at a prime list);
* ``LSOp`` (the closure attached to a localizing system);
* ``LevelOp`` (the closure attached to the system {I : nu(I) >= n}).

Chains of operations are represented by a finite prefix plus a tail rule
and give back an ideal valuation by comparing closures of an ideal with
closures of the ring; conversely a valuation or monotone prime data give
a chain.  The correspondences are exercised end to end by the test suite.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .cuts import CutModule, ValuationRing, make_cut
from .dedekind import DedekindModule, DedekindRing
from .errors import UsageError, ValidationError
from .extnat import INF, NEG_INF, fmt_ext
from .groups import LexZ, LexZOmega, Rationals
from .localizing import (GeneratedByFG, LocalizingSystem, PrimeCut,
                         ValuationLevel)
from .monomial import MonomialModule, MonomialRing, saturation_cap
from .primes import (DedekindPrime, MonomialPrime, PrimeRef, ValuationPrime,
                     ZeroPrime)
from .valuations import (OMEGA_PRIME_BOUND, Contracted, Extended, FromLS,
                         Induced, PGrade, PrimeTable, nonzero_prime_refs,
                         prime_ideal_from_ref)

Ring = DedekindRing | ValuationRing | MonomialRing


def _unit(ring):
    return ring.unit()


def _vclose(module):
    """(R : (R : E)) with the conventions (X : zero) = full and
    (X : full) = zero that make the double dual total."""
    ring = module.ring
    unit = ring.unit()
    first = ring.zero() if module.is_full() else unit.colon(module)
    if first.is_zero():
        return ring.full()
    return unit.colon(first)


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OpD:
    ring: Ring

    def closure(self, module):
        _op_guard(self, module)
        return module

    def name(self) -> str:
        return "d"


@dataclass(frozen=True)
class OpE:
    ring: Ring

    def closure(self, module):
        _op_guard(self, module)
        if module.is_zero():
            return module
        return self.ring.full()

    def name(self) -> str:
        return "e"


@dataclass(frozen=True)
class OpV:
    ring: Ring

    def closure(self, module):
        _op_guard(self, module)
        if module.is_zero() or module.is_full():
            return module
        return _vclose(module)

    def name(self) -> str:
        return "v"


@dataclass(frozen=True)
class OpW:
    """Finite-type divisorial closure: the union of J_v over finitely
    generated submodules J.  Every Dedekind or valuation-model module is a
    directed union of principal modules whose duals it already contains,
    so the operation is the identity there; on the monomial model it is
    the saturation by the intersection of the height-two primes."""

    ring: Ring

    def closure(self, module):
        _op_guard(self, module)
        if module.is_zero() or module.is_full():
            return module
        if isinstance(self.ring, MonomialRing):
            return module.saturate(self.ring.squarefree_colevel_ideal())
        return module

    def name(self) -> str:
        return "w"


@dataclass(frozen=True)
class SpectralOp:
    ring: Ring
    primes: tuple

    def __post_init__(self):
        if not self.primes:
            raise ValidationError("a spectral operation needs primes")
        for ref in self.primes:
            if not isinstance(ref, ZeroPrime):
                prime_ideal_from_ref(self.ring, ref)

    def closure(self, module):
        _op_guard(self, module)
        if module.is_zero() or module.is_full():
            return module
        nonzero = [p for p in self.primes if not isinstance(p, ZeroPrime)]
        if not nonzero:
            return self.ring.full()
        if isinstance(self.ring, MonomialRing):
            return _monomial_spectral(module, nonzero)
        out = self.ring.full()
        for ref in nonzero:
            out = out.intersect(module.localize(ref))
        return out

    def name(self) -> str:
        return "spectral{" + "; ".join(str(p) for p in self.primes) + "}"


@dataclass(frozen=True)
class LSOp:
    ring: Ring
    system: LocalizingSystem

    def __post_init__(self):
        if getattr(self.system, "ring", None) != self.ring:
            raise ValidationError("system is over a different ring")

    def closure(self, module):
        _op_guard(self, module)
        if module.is_zero() or module.is_full():
            return module
        sysm = self.system
        if isinstance(sysm, ValuationLevel):
            return LevelOp(self.ring, sysm.valuation, sysm.n).closure(module)
        if isinstance(sysm, PrimeCut):
            return _primecut_closure(module, sysm)
        return _generated_closure(module, sysm)

    def name(self) -> str:
        return f"lsop{{{self.system.name()}}}"


@dataclass(frozen=True)
class LevelOp:
    """Closure of the system {I : nu(I) >= n}: the union of (E : I) over
    members.  Computed by closed forms per model."""

    ring: Ring
    valuation: object
    n: int

    def __post_init__(self):
        if not (isinstance(self.n, int) and self.n >= 0):
            raise ValidationError(f"level must be a natural number: {self.n!r}")
        if getattr(self.valuation, "ring", None) != self.ring:
            raise ValidationError("valuation is over a different ring")

    def closure(self, module):
        _op_guard(self, module)
        if module.is_zero():
            return module
        if self.n == 0:
            return self.ring.full()   # every ideal has value at least 0
        if module.is_full():
            return module
        if isinstance(self.ring, DedekindRing):
            return _level_dedekind(module, self.valuation, self.n)
        if isinstance(self.ring, ValuationRing):
            return _level_valuation(module, self.valuation, self.n)
        return _level_monomial(module, self.valuation, self.n)

    def name(self) -> str:
        return f"level({self.valuation.name()}, {self.n})"


SemistarOp = OpD | OpE | OpV | OpW | SpectralOp | LSOp | LevelOp


def _op_guard(op, module):
    if module.ring != op.ring:
        raise UsageError("module from a different ring")


# ---------------------------------------------------------------------------
# closed forms
# ---------------------------------------------------------------------------


def _monomial_spectral(module: MonomialModule, refs):
    """Intersection of the localizations at the given monomial primes,
    computed as the least fixpoint of X -> meet over S of (X : product of
    the variables off S).  UsageError when the limit is not finitely
    generated."""
    ring = module.ring
    names = ring.var_names()
    shifts = []
    for ref in refs:
        keep = set(ref.variables)
        t = tuple(0 if nm in keep else 1 for nm in names)
        shifts.append(MonomialModule.make(ring, [t]))
    current = module
    for _ in range(saturation_cap()):
        step = None
        for t in shifts:
            piece = current.colon(t)
            step = piece if step is None else step.intersect(piece)
        if step == current:
            return current
        current = step
    raise UsageError(
        "spectral closure does not stabilize: the limit is not a finitely "
        "generated module")


def _primecut_closure(module, system: PrimeCut):
    """Union of (E : J) over ideals J escaping the prime: the localization
    of E at the prime, inside the field."""
    ring = module.ring
    prime = system.prime
    if isinstance(prime, ZeroPrime):
        return ring.full()    # every nonzero ideal belongs to the system
    if isinstance(ring, (DedekindRing, ValuationRing)):
        return module.localize(prime)
    # monomial: the principal ideals on powers of the product of the
    # variables off the prime are cofinal in the system
    keep = set(prime.variables)
    if keep == set(ring.var_names()):
        return module         # only units escape the maximal ideal
    t = MonomialModule.make(ring, [tuple(
        0 if nm in keep else 1 for nm in ring.var_names())])
    return module.saturate(t)


def _generated_closure(module, system: GeneratedByFG):
    ring = module.ring
    if isinstance(ring, DedekindRing):
        drop = set()
        for g in system.gens:
            drop |= set(g.support())
        table = dict(zip(ring.primes, module.exps))
        return DedekindModule.make(ring, tuple(
            NEG_INF if p in drop else table[p] for p in ring.primes))
    if isinstance(ring, ValuationRing):
        deepening = [g for g in system.gens
                     if not g.is_unit() and g.mul(g) != g]
        if deepening:
            floor = min(g.radical_prime_ref().level for g in deepening)
            if floor == 1:
                return ring.full()
            return module.localize(ValuationPrime(floor - 1))
        if any(not g.is_unit() for g in system.gens):
            # the system is {R, M}: the closure is (E : M)
            return module.colon(ring.maximal_ideal())
        return module            # the system is {R}
    product = ring.unit()
    for g in system.gens:
        product = product.mul(g)
    return module.saturate(product)


def _level_dedekind(module, valuation, n):
    ring = module.ring
    low = [p for p in ring.primes
           if valuation.value(ring.prime_ideal(p)) < n]
    if not low:
        return ring.full()
    table = dict(zip(ring.primes, module.exps))
    return DedekindModule.make(ring, tuple(
        table[p] if p in low else NEG_INF for p in ring.primes))


def _profile_horizon(valuation) -> int | None:
    """A chain level H with nu(P_k) constant for k >= H on the omega
    model, or None when the profile is strictly increasing without bound
    (so every threshold is crossed)."""
    if isinstance(valuation, Induced):
        return OMEGA_PRIME_BOUND
    if isinstance(valuation, PGrade):
        return None
    if isinstance(valuation, FromLS):
        sysm = valuation.system
        if isinstance(sysm, PrimeCut):
            if isinstance(sysm.prime, ZeroPrime):
                return 1
            level = sysm.prime.level
            return 1 if level is INF else level + 1
        if isinstance(sysm, GeneratedByFG):
            deepening = [g for g in sysm.gens
                         if not g.is_unit() and g.mul(g) != g]
            if deepening:
                return min(g.radical_prime_ref().level
                           for g in deepening) + 1
            return 1
        return _profile_horizon(sysm.valuation)
    if isinstance(valuation, Contracted):
        inner = _profile_horizon(valuation.inner)
        from .valuations import ValuationOverring
        if isinstance(valuation.map, ValuationOverring):
            return valuation.map.level + 1
        return inner
    if isinstance(valuation, ChainValuation):
        return valuation.chain.stabilization_cap()
    return OMEGA_PRIME_BOUND


def _level_valuation(module, valuation, n):
    ring = module.ring
    g = ring.group
    if isinstance(g, Rationals):
        m_value = valuation.value(ring.maximal_ideal())
        return module if m_value < n else ring.full()
    if isinstance(g, LexZ):
        limit = g.rank
    else:
        horizon = _profile_horizon(valuation)
        limit = max(horizon if horizon is not None else 0, n + 1) + 1
    crossing = None
    for k in range(1, limit + 1):
        if valuation.value(ring.prime_ideal(k)) >= n:
            crossing = k
            break
    if crossing == 1:
        return ring.full()           # no nonzero prime sits below the level
    if crossing is not None:
        return module.localize(ValuationPrime(crossing - 1))
    if isinstance(g, LexZ):
        return module                # every prime sits below the level
    m_value = valuation.value(ring.maximal_ideal())
    if m_value < n:
        return module
    # the system is {R, M}: value n is reached only in the limit
    return module.colon(ring.maximal_ideal())


def _level_monomial(module, valuation, n):
    ring = module.ring
    if isinstance(valuation, PGrade):
        return module.level_closure(n)
    refs = ring.nonzero_prime_refs()
    values = {ref: valuation.value(ring.prime_ideal(ref)) for ref in refs}
    low = [ref for ref in refs if values[ref] < n]
    if not low:
        return ring.full()
    high = [ref for ref in refs if values[ref] >= n]
    if not high:
        return module
    t = ring.unit()
    for ref in high:
        t = t.mul(ring.prime_ideal(ref))
    return module.saturate(t)


# ---------------------------------------------------------------------------
# chains
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConstantTail:
    """Repeat the last prefix member forever."""


@dataclass(frozen=True)
class LevelTail:
    """Member n is the level-n operation of a fixed valuation."""

    valuation: object


@dataclass(frozen=True)
class SpectralTail:
    """Member n localizes at the primes whose data is at most n (plus the
    zero prime)."""

    entries: tuple   # ((prime ref, value), ...)


@dataclass(frozen=True)
class IncreasingLevelsTail:
    """Member n localizes at the chain prime whose level keeps growing by
    one per step (omega-rank valuation model only)."""

    start: int       # level used by the first tail member


Tail = ConstantTail | LevelTail | SpectralTail | IncreasingLevelsTail


@dataclass(frozen=True)
class SemistarChain:
    """A decreasing sequence of operations, member(0) >= member(1) >= ...,
    presented as a finite prefix plus a tail rule.  A chain is *standard*
    when member(0) is the everything-to-the-field operation; construction
    rejects non-standard chains."""

    ring: Ring
    prefix: tuple
    tail: Tail

    def __post_init__(self):
        if isinstance(self.tail, ConstantTail) and not self.prefix:
            raise ValidationError("a constant tail needs a prefix")
        first = self.member(0)
        if not isinstance(first, OpE):
            ok, witness = op_equals(first, OpE(self.ring),
                                    random.Random(20260818), samples=24)
            if not ok:
                raise ValidationError(
                    f"chain is not standard: member 0 differs from the "
                    f"field operation ({witness})")

    def member(self, n: int):
        if n < 0:
            raise UsageError("chain members are indexed by naturals")
        if n < len(self.prefix):
            return self.prefix[n]
        tail = self.tail
        if isinstance(tail, ConstantTail):
            return self.prefix[-1]
        if isinstance(tail, LevelTail):
            return LevelOp(self.ring, tail.valuation, n)
        if isinstance(tail, SpectralTail):
            refs = tuple(ref for ref, v in tail.entries if v <= n)
            return SpectralOp(self.ring, (ZeroPrime(),) + refs)
        level = tail.start + (n - len(self.prefix))
        return LSOp(self.ring, PrimeCut(self.ring, ValuationPrime(level)))

    def stabilization_cap(self) -> int | None:
        """An index past which members stop changing, or None when they
        never do (increasing-levels tails)."""
        if isinstance(self.tail, ConstantTail):
            return len(self.prefix)
        if isinstance(self.tail, LevelTail):
            prof = [self.tail.valuation.value(
                        prime_ideal_from_ref(self.ring, ref))
                    for ref in nonzero_prime_refs(self.ring)]
            finite = [v for v in prof if v is not INF]
            return max(len(self.prefix), (max(finite, default=0)) + 2)
        if isinstance(self.tail, SpectralTail):
            finite = [v for _, v in self.tail.entries if v is not INF]
            return max(len(self.prefix), (max(finite, default=0)) + 2)
        return None

    def name(self) -> str:
        body = "; ".join(op.name() for op in self.prefix)
        return f"chain{{prefix=[{body}], tail={_tail_name(self.tail)}}}"


def _tail_name(tail) -> str:
    if isinstance(tail, ConstantTail):
        return "constant"
    if isinstance(tail, LevelTail):
        return f"levels({tail.valuation.name()})"
    if isinstance(tail, SpectralTail):
        body = ", ".join(f"{ref}={fmt_ext(v)}" for ref, v in tail.entries)
        return f"spectral({body})"
    return f"increasing({tail.start})"


@dataclass(frozen=True)
class ChainValuation:
    """The valuation read off a chain: nu(I) counts how long the closures
    of I agree with the closures of the ring."""

    chain: SemistarChain

    @property
    def ring(self):
        return self.chain.ring

    def value(self, module):
        if module.ring != self.ring:
            raise UsageError("module from a different ring")
        if not module.is_integral():
            raise UsageError("valuations apply to integral ideals")
        unit = self.ring.unit()
        cap = self._cap(module)
        k = 0
        while k <= cap:
            op = self.chain.member(k)
            if op.closure(module) != op.closure(unit):
                return k - 1 if k > 0 else 0
            k += 1
        return INF

    def _cap(self, module) -> int:
        cap = self.chain.stabilization_cap()
        if cap is not None:
            return cap
        # increasing-levels tail: closures at level j separate I from R
        # once j reaches the radical level, which is infinite only for the
        # maximal ideal (where closures agree forever)
        if module.is_zero() or module.is_unit():
            return 1
        level = module.radical_prime_ref().level
        if level is INF:
            return len(self.chain.prefix)   # agree forever; probe returns INF
        return len(self.chain.prefix) + level + 2

    def name(self) -> str:
        return f"chainvaluation{{{self.chain.name()}}}"


def chain_from_valuation(valuation) -> SemistarChain:
    """The standard chain whose level operations realize the valuation."""
    ring = valuation.ring
    return SemistarChain(ring, (OpE(ring),), LevelTail(valuation))


def valuation_from_chain(chain: SemistarChain) -> ChainValuation:
    return ChainValuation(chain)


def chain_from_prime_data(ring: Ring, table: dict) -> SemistarChain:
    """The standard chain of spectral operations attached to monotone
    prime data: member n localizes at the primes with data at most n."""
    entries = _normalize_prime_data(ring, table)
    finite = [v for _, v in entries if v is not INF]
    if any(v == 0 for v in finite):
        raise ValidationError(
            "prime data must be at least 1: a prime at level 0 would enter "
            "member 0, which a standard chain reserves for the field")
    cut = max(finite, default=0) + 1
    prefix = []
    for n in range(cut + 1):
        refs = tuple(ref for ref, v in entries if v <= n)
        prefix.append(SpectralOp(ring, (ZeroPrime(),) + refs)
                      if refs else OpE(ring))
    return SemistarChain(ring, tuple(prefix), ConstantTail())


def prime_data_from_chain(chain: SemistarChain) -> dict:
    """Recover monotone prime data from a chain: the data of a prime is
    the first member that tells its ideal apart from the ring."""
    ring = chain.ring
    unit = ring.unit()
    out = {}
    cap = chain.stabilization_cap()
    for ref in nonzero_prime_refs(ring):
        ideal = prime_ideal_from_ref(ring, ref)
        value = INF
        k = 0
        limit = cap if cap is not None else (
            len(chain.prefix) + (2 if ref.level is INF else ref.level) + 2)
        while k <= limit:
            op = chain.member(k)
            if op.closure(ideal) != op.closure(unit):
                value = k
                break
            k += 1
        out[ref] = value
    return out


def _normalize_prime_data(ring: Ring, table: dict):
    normalized = {}
    for ref, v in table.items():
        if isinstance(ref, ZeroPrime):
            raise ValidationError("data is given on nonzero primes only")
        prime_ideal_from_ref(ring, ref)
        if not (v is INF or (isinstance(v, int) and v >= 0)):
            raise ValidationError(f"bad data value: {v!r}")
        normalized[ref] = v
    entries = []
    for ref in nonzero_prime_refs(ring):
        if ref in normalized:
            entries.append((ref, normalized[ref]))
        else:
            entries.append((ref, INF))   # primes never entering the sets
    if isinstance(ring, ValuationRing):
        values = [v for _, v in entries]   # refs come in ascending order
        for a, b in zip(values, values[1:]):
            if b < a:
                raise ValidationError(
                    "prime data must be monotone: a larger prime got a "
                    "smaller value")
    if isinstance(ring, MonomialRing):
        for ra, va in entries:
            for rb, vb in entries:
                if set(ra.variables) < set(rb.variables) and vb < va:
                    raise ValidationError(
                        "prime data must be monotone: a larger prime got a "
                        "smaller value")
    return tuple(entries)


# ---------------------------------------------------------------------------
# operation comparison
# ---------------------------------------------------------------------------


def sample_op_arguments(ring: Ring, rng, count: int):
    """Modules used to compare operations: the sampled integral ideals
    plus fractional shifts where the model has them."""
    if isinstance(ring, ValuationRing):
        return ring.sample_modules(rng, count)
    ideals = ring.sample_ideals(rng, count)
    if isinstance(ring, MonomialRing):
        out = list(ideals)
        shift = MonomialModule.make(ring, [(-1,) + (0,) * (ring.num_vars - 1)])
        for i, e in enumerate(ideals):
            if i % 3 == 0 and e.kind == "gens":
                out.append(e.mul(shift))
        return out[:count] if len(out) >= count else out
    out = list(ideals)
    for i, e in enumerate(ideals):
        if i % 3 == 0 and e.kind == "exps":
            flipped = tuple(-x if isinstance(x, int) else x for x in e.exps)
            out.append(DedekindModule.make(ring, flipped))
    return out[:count] if len(out) >= count else out


def op_equals(op1, op2, rng, samples: int = 60):
    """Decide sampled equality of two operations over one ring; returns
    (verdict, witness) with a witness module on disagreement."""
    if op1.ring != op2.ring:
        raise UsageError("operations over different rings")
    for module in sample_op_arguments(op1.ring, rng, samples):
        try:
            a = op1.closure(module)
        except UsageError as err:
            a = ("error", str(err))
        try:
            b = op2.closure(module)
        except UsageError as err:
            b = ("error", str(err))
        if a != b:
            fa = a[1] if isinstance(a, tuple) else str(a)
            fb = b[1] if isinstance(b, tuple) else str(b)
            return False, (f"closures of {module} differ: "
                           f"{op1.name()} gives {fa}, {op2.name()} gives {fb}")
    return True, None
