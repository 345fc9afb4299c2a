"""Families of localization operations on valuation models and the
finite-type analysis that goes with them.

A family is a set of overring closures E -> E * R_P indexed by primes of
one valuation ring, either a finite list or a strictly-increasing-levels
sequence on the omega-rank model.  The intersection of the family is again
a closure operation, and it is of finite type exactly when the supremum of
the index primes is attained.  The same attainment question drives the
four-way equivalence for chains and the bound on how many values a chain
valuation can take on a finite-rank model.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cuts import CutModule, ValuationRing
from .errors import UsageError, ValidationError
from .extnat import INF, fmt_ext
from .groups import LexZ, LexZOmega, Rationals
from .primes import PrimeRef, ValuationPrime, ZeroPrime
from .semistar import ChainValuation, SemistarChain
from .valuations import prime_ideal_from_ref

FAMILY_PROBE_LEVELS = 4   # how far an increasing family is probed in reports


def _ref_level(ref) -> object:
    if isinstance(ref, ZeroPrime):
        return 0
    return ref.level


def model_rank(ring: ValuationRing):
    g = ring.group
    if isinstance(g, LexZ):
        return g.rank
    if isinstance(g, Rationals):
        return 1
    return INF


@dataclass(frozen=True)
class OpFamily:
    """Index primes of a family of localization closures, as a finite
    list ("constant" tail: the listed primes are all of them) or a list
    continued by strictly increasing levels on the omega model."""

    ring: ValuationRing
    primes: tuple
    tail: str = "constant"

    def __post_init__(self):
        if not isinstance(self.ring, ValuationRing):
            raise ValidationError("families live on valuation models")
        if self.tail not in ("constant", "increasing"):
            raise ValidationError(f"unknown family tail: {self.tail!r}")
        if self.tail == "constant" and not self.primes:
            raise ValidationError("a finite family needs at least one prime")
        for ref in self.primes:
            if not isinstance(ref, ZeroPrime):
                prime_ideal_from_ref(self.ring, ref)
        if self.tail == "increasing":
            if not isinstance(self.ring.group, LexZOmega):
                raise ValidationError(
                    "increasing-levels families need the omega-rank model")
            levels = [_ref_level(r) for r in self.primes]
            if any(lv is INF for lv in levels):
                raise ValidationError(
                    "an increasing family lists finite levels only")
            if any(b <= a for a, b in zip(levels, levels[1:])):
                raise ValidationError(
                    "an increasing family's listed levels must ascend")

    def sup_ref(self) -> PrimeRef:
        """The supremum of the index primes; for an increasing family
        this is the maximal ideal, which no member attains."""
        if self.tail == "increasing":
            return ValuationPrime(INF)
        return max(self.primes, key=_ref_level)

    def probe_refs(self) -> tuple:
        """Primes inspected by reports: all of a finite family, the
        listed ones plus the next few levels of an increasing one."""
        if self.tail == "constant":
            return self.primes
        start = (_ref_level(self.primes[-1]) + 1) if self.primes else 1
        grown = tuple(ValuationPrime(start + i)
                      for i in range(FAMILY_PROBE_LEVELS))
        return self.primes + grown

    def name(self) -> str:
        body = ", ".join(fmt_ext(_ref_level(p)) for p in self.primes)
        return f"levels=[{body}]; tail={self.tail}"


@dataclass(frozen=True)
class FiniteTypeReport:
    verdict: bool
    witness: object           # PrimeRef when the verdict is true
    diagnostics: tuple        # ((condition, rendered value), ...)

    def __post_init__(self):
        if self.verdict != (self.witness is not None):
            raise ValidationError("verdict and witness must agree")


def family_closure(family: OpFamily, module: CutModule) -> CutModule:
    """Intersection of the localizations at the family's primes.  The
    primes are totally ordered, so a finite family localizes at its
    largest prime; an increasing family's intersection is the limit of
    ever deeper truncations, which is the colon by the maximal ideal."""
    if module.ring != family.ring:
        raise UsageError("module from a different ring")
    if module.is_zero() or module.is_full():
        return module
    if family.tail == "constant":
        return module.localize(family.sup_ref())
    return module.colon(family.ring.maximal_ideal())


def is_finite_type(family: OpFamily, rng, samples: int = 30) -> FiniteTypeReport:
    """Decide finite-typeness by supremum attainment and record the two
    cross-checks: closure agreement with the witness localization on
    sampled ideals, and the prime-cut shape of the intersection system."""
    ring = family.ring
    ideals = [ring.unit(), ring.maximal_ideal()] + ring.sample_ideals(
        rng, samples)
    if family.tail == "constant":
        witness = family.sup_ref()
        agree = all(family_closure(family, I) == I.localize(witness)
                    for I in ideals)
        cut_ok = _intersection_is_prime_cut(family, witness, ideals)
        diagnostics = (
            ("supremum-attained", "true"),
            ("closure-matches-witness-localization", str(agree).lower()),
            ("intersection-system-is-prime-cut-at", str(witness)),
            ("prime-cut-membership-agrees", str(cut_ok).lower()),
        )
        if not (agree and cut_ok):
            # the closed forms guarantee these; a mismatch is a real bug
            raise UsageError(
                f"finite-type diagnostics disagree for {family.name()}")
        return FiniteTypeReport(True, witness, diagnostics)
    # increasing: the supremum is the maximal ideal and is not attained;
    # exhibit the contradiction pattern at each probed candidate
    pattern = []
    for ref in family.probe_refs():
        deeper = ring.prime_ideal(_ref_level(ref) + 1)
        lhs = family_closure(family, deeper)
        rhs = deeper.localize(ref)
        pattern.append((f"candidate {ref} fails on {deeper}",
                        f"{lhs} != {rhs}"))
        if lhs == rhs:
            raise UsageError(
                f"finite-type diagnostics disagree for {family.name()}")
    members = [I for I in ideals if _in_intersection_system(family, I)]
    cut_shape = all(I.is_unit() or I == ring.maximal_ideal()
                    for I in members)
    diagnostics = (
        ("supremum-attained", "false"),
        ("intersection-system-members-are-unit-or-maximal",
         str(cut_shape).lower()),
    ) + tuple(pattern)
    return FiniteTypeReport(False, None, diagnostics)


def _in_intersection_system(family: OpFamily, ideal: CutModule) -> bool:
    """Membership of the intersection of the member systems: the ideal
    must close to the ring under every member localization."""
    if ideal.is_zero() or not ideal.is_integral():
        return False
    for ref in family.probe_refs():
        if ideal.localize(ref) != family.ring.unit().localize(ref):
            return False
    if family.tail == "increasing":
        # beyond the probes: membership for every level forces radical
        # level infinity, so only the ring and the maximal ideal remain
        return ideal.is_unit() or ideal == family.ring.maximal_ideal()
    return True


def _intersection_is_prime_cut(family: OpFamily, witness, ideals) -> bool:
    ring = family.ring
    if isinstance(witness, ZeroPrime):
        return all(_in_intersection_system(family, I) == (not I.is_zero())
                   for I in ideals if I.is_integral())
    prime = ring.prime_from_ref(witness)
    for I in ideals:
        if not I.is_integral() or I.is_zero():
            continue
        member = _in_intersection_system(family, I)
        above = I.contains(prime) and I != prime
        if member != above:
            return False
    return True


# ---------------------------------------------------------------------------
# chain equivalences
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ChainEquivalenceReport:
    conditions: tuple         # ((name, bool), ...), four entries
    agree: bool
    verdict: object           # the common value when agree, else None
    m: object                 # stabilization index when it exists
    trace: tuple              # rendered evaluation steps

    def as_dict(self):
        return {
            "conditions": {name: value for name, value in self.conditions},
            "agree": self.agree,
            "verdict": self.verdict,
            "m": self.m if self.m is not None else None,
            "trace": list(self.trace),
        }


def _chain_family(chain: SemistarChain, trace):
    """The primes of the chain's member localizations, or None when some
    member is not a localization (detected on the ring's closure)."""
    ring = chain.ring
    cap = chain.stabilization_cap()
    if cap is None:
        trace.append("members localize at strictly increasing levels")
        return OpFamily(ring, (), "increasing"), cap
    refs = []
    for n in range(cap + 1):
        op = chain.member(n)
        closed_unit = op.closure(ring.unit())
        ref = _localization_ref(ring, closed_unit)
        if ref is not None:
            refs.append(ref)
    seen, uniq = set(), []
    for r in refs:
        if r not in seen:
            seen.add(r)
            uniq.append(r)
    trace.append("member localization primes: "
                 + (", ".join(str(r) for r in uniq) if uniq else "none"))
    return OpFamily(ring, tuple(uniq), "constant"), cap


def _localization_ref(ring: ValuationRing, closed_unit: CutModule):
    """Which prime's localization sends the ring to this module."""
    if closed_unit.is_full():
        return ZeroPrime()
    if closed_unit.is_unit():
        return ring.max_prime_ref()
    if closed_unit.kind == "cut" and not closed_unit.strict and all(
            c == 0 for c in closed_unit.threshold):
        return ValuationPrime(closed_unit.level)
    return None


def chain_equivalences(chain: SemistarChain, rng,
                       samples: int = 40) -> ChainEquivalenceReport:
    """Evaluate the four equivalent finiteness conditions for a standard
    chain on a valuation model, each by its own route, and report whether
    they agree."""
    ring = chain.ring
    if not isinstance(ring, ValuationRing):
        raise UsageError("chain equivalences live on valuation models")
    nu = ChainValuation(chain)
    trace = []
    ideals = [ring.unit(), ring.maximal_ideal()]
    ideals += [ring.prime_from_ref(r) for r in ring.exposed_prime_refs()]
    if isinstance(ring.group, LexZOmega):
        # the deepest exposed prime needs refuting probes from beyond the
        # exposure bound, where the chain of primes keeps ascending
        deepest = max(r.level for r in ring.exposed_prime_refs()
                      if r.level is not INF)
        ideals += [ring.prime_ideal(deepest + 1),
                   ring.prime_ideal(deepest + 2)]
    ideals += [I for I in ring.sample_ideals(rng, samples) if I.is_integral()]

    # (1) the limit operation of the chain is of finite type
    family, cap = _chain_family(chain, trace)
    if cap is None:
        cond1 = False
        trace.append("limit operation: no stable member")
    else:
        limit_op = chain.member(cap)
        witness = family.sup_ref()
        cond1 = all(limit_op.closure(I) == I.localize(witness)
                    for I in ideals)
        trace.append(f"limit member localizes at {witness}: "
                     + str(cond1).lower())

    # (2) the chain valuation has finite range: read off the tail rule,
    # with the realized values as evidence
    values = sorted({nu.value(I) for I in ideals},
                    key=lambda v: (v is INF, v))
    if cap is None:
        cond2 = False
        growth = [nu.value(ring.prime_ideal(k)) for k in (1, 2, 3, 4)]
        trace.append("value of the level-k prime grows without bound: "
                     + ", ".join(fmt_ext(v) for v in growth))
    else:
        cond2 = True
        trace.append("realized values: {"
                     + ", ".join(fmt_ext(v) for v in values) + "}")

    # (3) the intersection of the level systems is of finite type:
    # it must be the prime-cut system of some prime
    candidates = [ZeroPrime()] + list(ring.exposed_prime_refs())
    cond3 = False
    for ref in candidates:
        prime = (ring.zero() if isinstance(ref, ZeroPrime)
                 else ring.prime_from_ref(ref))
        if all((nu.value(I) is INF) == (I.contains(prime) and I != prime)
               for I in ideals):
            cond3 = True
            trace.append(f"infinite-value locus is the prime-cut at {ref}")
            break
    if not cond3:
        trace.append("infinite-value locus is not a prime cut")

    # (4) the level systems stabilize: some level equals the intersection
    maxfin = max((nu.value(I) for I in ideals
                  if not I.is_zero() and nu.value(I) is not INF),
                 default=None)
    if cap is None:
        cond4, m = False, None
        trace.append("no stabilization level: deeper primes keep entering")
    else:
        m = 0 if maxfin is None else maxfin + 1
        cond4 = all((nu.value(I) >= m) == (nu.value(I) is INF)
                    for I in ideals if not I.is_zero())
        trace.append(f"levels stabilize at m = {m}: " + str(cond4).lower())
        if not cond4:
            m = None

    conditions = (("limit-op-finite-type", cond1),
                  ("valuation-range-finite", cond2),
                  ("intersection-system-finite-type", cond3),
                  ("levels-stabilize", cond4))
    agree = len({v for _, v in conditions}) == 1
    verdict = conditions[0][1] if agree else None
    return ChainEquivalenceReport(conditions, agree, verdict,
                                  m if (agree and verdict) else None,
                                  tuple(trace))


# ---------------------------------------------------------------------------
# range bound
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RangeReport:
    realized: tuple           # rendered values, sorted, infinity last
    finite_count: int
    bound: int
    verdict: bool
    witness_primes: tuple     # ((value, prime ref rendered), ...)


def range_bound(valuation, rng, samples: int = 60) -> RangeReport:
    """Check that a valuation on a finite-rank model realizes at most
    rank + 1 finite values, and exhibit the witness prime below each
    realized threshold."""
    ring = valuation.ring
    if not isinstance(ring, ValuationRing):
        raise UsageError("the range bound applies to valuation models")
    rank = model_rank(ring)
    if rank is INF:
        raise UsageError("the range bound needs a finite-rank model")
    probes = [ring.zero(), ring.unit(), ring.maximal_ideal()]
    probes += [ring.prime_from_ref(r) for r in ring.exposed_prime_refs()]
    probes += [I for I in ring.sample_ideals(rng, samples) if I.is_integral()]
    values = {valuation.value(I) for I in probes}
    finite = sorted(v for v in values if v is not INF)
    witness = []
    for n in finite:
        if n < 1:
            continue
        witness.append((n, str(_threshold_prime(valuation, ring, n))))
    realized = tuple(fmt_ext(v) for v in
                     finite + ([INF] if INF in values else []))
    return RangeReport(realized, len(finite), rank + 1,
                       len(finite) <= rank + 1, tuple(witness))


def _threshold_prime(valuation, ring, n):
    """The prime of elements generating ideals of value below n, read off
    the valuation's profile."""
    crossing = None
    for ref in ring.exposed_prime_refs():
        if ref.level is INF:
            continue
        if valuation.value(ring.prime_from_ref(ref)) >= n:
            crossing = ref.level
            break
    if crossing == 1:
        return ZeroPrime()
    if crossing is not None:
        return ValuationPrime(crossing - 1)
    return ring.max_prime_ref()
