"""Valuation-domain model: ideals and fraction-field modules as order cuts.

A valuation domain's nonzero modules inside the fraction field correspond
to up-sets of its value group, and every up-set arising from the
implemented operations is one of:

* ``Zero`` and ``FullField``;
* a finite-level cut ``(k, t)``: all elements whose length-k prefix is
  lexicographically >= t (a "gap" cut, determined by finitely many leading
  coordinates; never attains a minimum when k is below the rank);
* a top-level cut at a full group element g, nonstrict ({v >= g},
  principal) or strict ({v > g}, the nondivisorial shape a*M);
* ``MaximalLimit`` (omega-rank model only): the up-set {v > 0}, i.e. the
  maximal ideal, which no finite level expresses.

Normalization keeps one representation per up-set: at a finite level k a
strict cut is rewritten to the nonstrict cut at the successor t + e_k; in
the finite-rank model every top cut is a rank-level cut and strictness
disappears entirely; in the omega model the strict top cut at 0 becomes
MaximalLimit.  The rationals model has only top cuts and keeps strictness.

The binary-operation formulas below are closed forms derived from the
up-set semantics; the test suite validates every one of them against a
brute-force membership-sampling oracle before anything else trusts them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import UsageError
from .extnat import INF, NEG_INF
from .groups import Group, LexZ, LexZOmega, Rationals
from .primes import PrimeRef, ValuationPrime, ZeroPrime


class _Top:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "top"


TOP = _Top()

#: exposure bound for the omega model's prime chain (levels 1..B plus the
#: maximal ideal); every procedure touches only finitely many primes.
OMEGA_PRIME_BOUND = 8


@dataclass(frozen=True)
class ValuationRing:
    group: Group

    def name(self) -> str:
        return f"valuation{{group={self.group.name()}}}"

    # -- constructors -------------------------------------------------------

    def zero(self) -> "CutModule":
        return CutModule(self, "zero")

    def full(self) -> "CutModule":
        return CutModule(self, "full")

    def unit(self) -> "CutModule":
        g = self.group
        if isinstance(g, LexZ):
            return make_cut(self, g.rank, (0,) * g.rank, False)
        return make_cut(self, TOP, g.zero(), False)

    def principal(self, elem) -> "CutModule":
        g = self.group
        g.check(elem)
        if isinstance(g, LexZ):
            return make_cut(self, g.rank, tuple(elem), False)
        return make_cut(self, TOP, elem, False)

    def cut(self, level, threshold, strict: bool = False) -> "CutModule":
        return make_cut(self, level, threshold, strict)

    def prime_ideal(self, level) -> "CutModule":
        """The prime at the given chain level: P_k = {v > 0 : first nonzero
        coordinate within the first k}, i.e. the cut (k, e_k)."""
        g = self.group
        if isinstance(g, Rationals):
            if level not in (1, INF):
                raise UsageError(f"no prime at level {level!r} over Q")
            return CutModule(self, "cut", TOP, Fraction(0), True)
        if isinstance(g, LexZ):
            if not (isinstance(level, int) and 1 <= level <= g.rank):
                raise UsageError(f"no prime at level {level!r}")
            return make_cut(self, level, (0,) * (level - 1) + (1,), False)
        if level is INF:
            return CutModule(self, "maxlimit")
        if not (isinstance(level, int) and level >= 1):
            raise UsageError(f"no prime at level {level!r}")
        return make_cut(self, level, (0,) * (level - 1) + (1,), False)

    def maximal_ideal(self) -> "CutModule":
        g = self.group
        if isinstance(g, LexZ):
            return self.prime_ideal(g.rank)
        if isinstance(g, LexZOmega):
            return CutModule(self, "maxlimit")
        return CutModule(self, "cut", TOP, Fraction(0), True)

    def prime_from_ref(self, ref: PrimeRef) -> "CutModule":
        if isinstance(ref, ZeroPrime):
            return self.zero()
        if not isinstance(ref, ValuationPrime):
            raise UsageError(f"not a prime of this ring: {ref}")
        return self.prime_ideal(ref.level)

    def max_prime_ref(self) -> ValuationPrime:
        g = self.group
        if isinstance(g, LexZ):
            return ValuationPrime(g.rank)
        if isinstance(g, LexZOmega):
            return ValuationPrime(INF)
        return ValuationPrime(1)

    def exposed_prime_refs(self, bound: int = OMEGA_PRIME_BOUND):
        """Nonzero primes in ascending order; the omega model exposes levels
        1..bound plus the maximal ideal."""
        g = self.group
        if isinstance(g, LexZ):
            return tuple(ValuationPrime(k) for k in range(1, g.rank + 1))
        if isinstance(g, LexZOmega):
            return tuple(ValuationPrime(k) for k in range(1, bound + 1)) + (
                ValuationPrime(INF),)
        return (ValuationPrime(1),)

    # -- sampling ------------------------------------------------------------

    def sample_ideals(self, rng, count: int):
        """Deterministic mix of integral ideals: primes, principals, gap
        cuts, multiples of the maximal ideal, unit and zero."""
        g = self.group
        out = [self.zero(), self.unit(), self.maximal_ideal()]
        for ref in self.exposed_prime_refs(bound=4):
            out.append(self.prime_from_ref(ref))
        while len(out) < count:
            x = _positive_element(g, rng)
            out.append(self.principal(x))
            if isinstance(g, (LexZOmega, Rationals)):
                out.append(self.maximal_ideal().mul(self.principal(x)))
            if isinstance(g, LexZ) and g.rank >= 2:
                k = rng.randint(1, g.rank - 1)
                t = tuple(rng.randint(0, 2) for _ in range(k - 1)) + (
                    rng.randint(1, 3),)
                out.append(make_cut(self, k, t, False))
            if isinstance(g, LexZOmega):
                k = rng.randint(1, 3)
                t = tuple(rng.randint(0, 2) for _ in range(k - 1)) + (
                    rng.randint(1, 3),)
                out.append(make_cut(self, k, t, False))
        return out[:count]

    def sample_modules(self, rng, count: int):
        """Like sample_ideals but fractional: shifted by negative elements."""
        out = list(self.sample_ideals(rng, count))
        shift = self.principal(self.group.neg(_positive_element(self.group, rng)))
        return [m.mul(shift) if i % 3 == 0 and m.kind == "cut" else m
                for i, m in enumerate(out)][:count]


def _positive_element(g: Group, rng):
    if isinstance(g, Rationals):
        return Fraction(rng.randint(1, 8), rng.randint(1, 6))
    if isinstance(g, LexZ):
        k = rng.randint(1, g.rank)
        head = (0,) * (k - 1) + (rng.randint(1, 3),)
        tail = tuple(rng.randint(-3, 3) for _ in range(g.rank - k))
        return head + tail
    k = rng.randint(1, 4)
    pairs = [(k, rng.randint(1, 3))]
    for j in range(k + 1, k + 3):
        v = rng.randint(-2, 2)
        if v:
            pairs.append((j, v))
    return g.make(pairs)


@dataclass(frozen=True)
class CutModule:
    ring: ValuationRing
    kind: str                 # "zero" | "full" | "cut" | "maxlimit"
    level: object = None      # int >= 1, or TOP
    threshold: object = None  # int tuple (finite level) / group element (TOP)
    strict: bool = False

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        return self.kind == "zero"

    def is_full(self) -> bool:
        return self.kind == "full"

    def is_unit(self) -> bool:
        return self == self.ring.unit()

    def is_cutlike(self) -> bool:
        return self.kind in ("cut", "maxlimit")

    def is_integral(self) -> bool:
        if self.kind == "zero":
            return True
        if self.kind == "full":
            return False
        return self.ring.unit().contains(self)

    def is_finitely_generated(self) -> bool:
        """In a valuation domain: finitely generated iff principal iff the
        cut attains its boundary."""
        if self.kind == "zero":
            return True
        if self.kind in ("full", "maxlimit"):
            return False
        g = self.ring.group
        if isinstance(g, LexZ):
            return self.level == g.rank
        return self.level is TOP and not self.strict

    # -- membership and containment -------------------------------------------

    def membership(self, elem) -> bool:
        """Is a nonzero field element with value ``elem`` in the module?"""
        g = self.ring.group
        g.check(elem)
        if self.kind == "zero":
            return False
        if self.kind == "full":
            return True
        if self.kind == "maxlimit":
            return g.cmp(elem, g.zero()) > 0
        if self.level is TOP:
            c = g.cmp(elem, self.threshold)
            return c > 0 or (c == 0 and not self.strict)
        return tuple(g.prefix(elem, self.level)) >= tuple(self.threshold)

    def contains(self, other: "CutModule") -> bool:
        _check_ring(self, other)
        if other.kind == "zero" or self.kind == "full":
            return True
        if self.kind == "zero" or other.kind == "full":
            return False
        c = _compare_boundary(self, other)
        if c != 0:
            return c < 0
        _, _, sa = _data(self)
        _, _, sb = _data(other)
        return (not sa) or sb

    # -- algebra ---------------------------------------------------------------

    def mul(self, other: "CutModule") -> "CutModule":
        _check_ring(self, other)
        if self.kind == "zero" or other.kind == "zero":
            return self.ring.zero()
        if self.kind == "full" or other.kind == "full":
            return self.ring.full()
        g = self.ring.group
        la, ta, sa = _data(self)
        lb, tb, sb = _data(other)
        if la is TOP and lb is TOP:
            return make_cut(self.ring, TOP, g.add(ta, tb), sa or sb)
        if la is TOP:
            return make_cut(self.ring, lb, _tadd(tb, g.prefix(ta, lb)), False)
        if lb is TOP:
            return make_cut(self.ring, la, _tadd(ta, g.prefix(tb, la)), False)
        k = min(la, lb)
        return make_cut(self.ring, k, _tadd(ta[:k], tb[:k]), False)

    def add(self, other: "CutModule") -> "CutModule":
        """Module sum = union-generated up-set = the larger of the two."""
        _check_ring(self, other)
        return self if self.contains(other) else other

    def intersect(self, other: "CutModule") -> "CutModule":
        _check_ring(self, other)
        return other if self.contains(other) else self

    def colon(self, other: "CutModule") -> "CutModule":
        """(self :_K other) = {x in K : x*other <= self}."""
        _check_ring(self, other)
        if other.kind == "zero":
            raise UsageError("colon by the zero module is undefined")
        if self.kind == "zero":
            return self.ring.zero()
        if other.kind == "full":
            return self.ring.full() if self.kind == "full" else self.ring.zero()
        if self.kind == "full":
            return self.ring.full()
        g = self.ring.group
        la, ta, sa = _data(self)
        lb, tb, sb = _data(other)
        if la is TOP and lb is TOP:
            return make_cut(self.ring, TOP, g.sub(ta, tb), sa and not sb)
        if lb is TOP or (la is not TOP and lb >= la):
            # the divisor's boundary is attained (or deeper than the
            # dividend's level): plain prefix subtraction at la
            tb_pref = g.prefix(tb, la) if lb is TOP else tb[:la]
            return make_cut(self.ring, la, _tsub(ta, tb_pref), False)
        # divisor at a strictly shallower finite level: its members dip
        # arbitrarily low past level lb, so domination must be strict there
        ta_pref = g.prefix(ta, lb) if la is TOP else ta[:lb]
        return make_cut(self.ring, lb, _tsub(ta_pref, tb), True)

    def radical(self) -> "CutModule":
        if not self.is_integral():
            raise UsageError("radical of a fractional module is undefined")
        if self.kind in ("zero", "maxlimit"):
            return self
        if self.is_unit():
            return self
        return self.ring.prime_from_ref(self.radical_prime_ref())

    def radical_prime_ref(self) -> PrimeRef:
        """The smallest prime containing a proper nonzero integral ideal."""
        if not self.is_integral() or self.kind == "zero" or self.is_unit():
            raise UsageError("radical prime needs a proper nonzero ideal")
        if self.kind == "maxlimit":
            return ValuationPrime(INF)
        g = self.ring.group
        level, t, strict = _data(self)
        if level is TOP:
            if g.is_zero(t):
                # the strict cut at zero: the maximal ideal of the Q model
                return ValuationPrime(1)
            return ValuationPrime(g.leading_level(t))
        lead = next(i + 1 for i, c in enumerate(t) if c != 0)
        return ValuationPrime(lead)

    def minimal_primes(self) -> tuple[PrimeRef, ...]:
        return (self.radical_prime_ref(),)

    def localize(self, prime: PrimeRef) -> "CutModule":
        """The module self * R_P: membership forgets every coordinate past
        P's level."""
        if self.kind in ("zero", "full"):
            return self
        if isinstance(prime, ZeroPrime):
            return self.ring.full()
        if not isinstance(prime, ValuationPrime):
            raise UsageError(f"not a prime of this ring: {prime}")
        j = prime.level
        g = self.ring.group
        if j is INF:
            if not isinstance(g, LexZOmega):
                raise UsageError("no limit prime over this group")
            return self
        if isinstance(g, Rationals):
            return self   # the only nonzero prime is maximal: R_M = R
        if isinstance(g, LexZ) and j >= g.rank:
            return self
        level, t, strict = _data(self)
        if level is TOP:
            return make_cut(self.ring, j, g.prefix(t, j), False)
        if level <= j:
            return self
        return make_cut(self.ring, j, t[:j], False)

    def scale(self, elem) -> "CutModule":
        return self.mul(self.ring.principal(elem))

    # -- probes for the membership oracle and IV3 sampling ---------------------

    def probe_elements(self, rng, count: int):
        """Group elements clustered around the cut's boundary (members and
        non-members), plus background noise; deterministic given rng."""
        g = self.ring.group
        out = list(g.sample_elements(rng, max(4, count // 4)))
        if self.kind in ("zero", "full"):
            return out[:count]
        level, t, strict = _data(self)
        base: list = []
        if isinstance(g, Rationals):
            base = [t, t + 1, t - 1]
            for j in range(1, 6):
                eps = Fraction(1, 2 ** j)
                base += [t + eps, t - eps]
        elif level is TOP:
            base = [t]
            if isinstance(g, LexZOmega):
                support = [i for i, _ in t]
                deep = max(support, default=0) + 3
                positions = sorted(set(
                    support + [1, 2, deep,
                               OMEGA_PRIME_BOUND, OMEGA_PRIME_BOUND + 2]))
            else:
                positions = list(range(1, g.rank + 1))
            for i in positions:
                base += [g.add(t, g.unit_at(i)), g.sub(t, g.unit_at(i))]
        else:
            k = level
            embed = _embed_prefix(g, t)
            base = [embed]
            for i in range(1, k + 1):
                base += [g.add(embed, g.unit_at(i)), g.sub(embed, g.unit_at(i))]
            # a finite-level cut ignores deeper coordinates entirely: probe
            # just past the level with large swings in both directions
            deeps = [k + 1, k + 2] if isinstance(g, LexZOmega) else [
                d for d in (k + 1, k + 2) if d <= g.rank]
            for d in deeps:
                bump = g.unit_at(d)
                swing = bump
                for _ in range(4):
                    swing = g.add(swing, bump)
                base += [g.add(embed, swing), g.sub(embed, swing)]
        out = base + out
        while len(out) < count:
            out.extend(g.sample_elements(rng, 8))
        return out[:count]

    def principal_subideals(self, rng, count: int):
        """Principal (= finitely generated) ideals inside this integral
        ideal, found from probe members."""
        subs = []
        for x in self.probe_elements(rng, count * 3):
            if self.membership(x):
                subs.append(self.ring.principal(x))
            if len(subs) >= count:
                break
        return subs

    def __str__(self):
        return fmt_cut(self)


# ---------------------------------------------------------------------------
# construction and normalization
# ---------------------------------------------------------------------------


def make_cut(ring: ValuationRing, level, threshold, strict: bool) -> CutModule:
    g = ring.group
    if isinstance(g, Rationals):
        if not isinstance(threshold, Fraction):
            threshold = Fraction(threshold)
        return CutModule(ring, "cut", TOP, threshold, bool(strict))
    if isinstance(g, LexZ):
        if level is TOP:
            level = g.rank
        if not (isinstance(level, int) and 1 <= level <= g.rank):
            raise UsageError(f"cut level out of range: {level!r}")
        t = tuple(int(c) for c in threshold)
        if len(t) != level:
            raise UsageError(f"threshold length {len(t)} != level {level}")
        if strict:
            t = t[:-1] + (t[-1] + 1,)
        return CutModule(ring, "cut", level, t, False)
    # omega model
    if level is TOP:
        t = g.check(g.make(threshold))
        if strict and g.is_zero(t):
            return CutModule(ring, "maxlimit")
        return CutModule(ring, "cut", TOP, t, bool(strict))
    if not (isinstance(level, int) and level >= 1):
        raise UsageError(f"cut level out of range: {level!r}")
    t = tuple(int(c) for c in threshold)
    if len(t) != level:
        raise UsageError(f"threshold length {len(t)} != level {level}")
    if strict:
        t = t[:-1] + (t[-1] + 1,)
    return CutModule(ring, "cut", level, t, False)


def _check_ring(a: CutModule, b: CutModule):
    if a.ring != b.ring:
        raise UsageError("ring mismatch")


def _data(mod: CutModule):
    """(level, threshold, strict), presenting MaximalLimit as the strict top
    cut at zero for the shared arithmetic."""
    if mod.kind == "maxlimit":
        return TOP, mod.ring.group.zero(), True
    return mod.level, mod.threshold, mod.strict


def _tadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _tsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _embed_prefix(g: Group, t):
    """Lift a dense prefix back into a full group element (zero tail)."""
    if isinstance(g, LexZ):
        return tuple(t) + (0,) * (g.rank - len(t))
    return g.make((i + 1, v) for i, v in enumerate(t) if v != 0)


def _coord_stream(mod: CutModule, i: int):
    """Coordinate i (1-based) of the cut's boundary in the completion:
    finite-level cuts pad with -inf past their level, top cuts read the
    element's coordinates (0 off support)."""
    g = mod.ring.group
    level, t, _ = _data(mod)
    if level is TOP:
        if isinstance(g, LexZ):
            return t[i - 1]
        return g.coord(t, i)
    return t[i - 1] if i <= level else NEG_INF


def _compare_boundary(a: CutModule, b: CutModule) -> int:
    """Lexicographic comparison of cut boundaries in the completion; a
    smaller boundary means a larger up-set."""
    g = a.ring.group
    if isinstance(g, Rationals):
        _, ta, _ = _data(a)
        _, tb, _ = _data(b)
        return (ta > tb) - (ta < tb)
    la, ta, _ = _data(a)
    lb, tb, _ = _data(b)

    def extent(level, t):
        if level is not TOP:
            return level
        if isinstance(g, LexZ):
            return g.rank
        return max((i for i, _ in t), default=0)

    limit = max(extent(la, ta), extent(lb, tb), 1) + 1
    for i in range(1, limit + 1):
        ca, cb = _coord_stream(a, i), _coord_stream(b, i)
        if ca != cb:
            return 1 if ca > cb else -1
    return 0


# ---------------------------------------------------------------------------
# printing
# ---------------------------------------------------------------------------


def fmt_cut(mod: CutModule) -> str:
    """Canonical text form, most specific name first: zero / fullfield /
    unit / maxideal / prime(k) / principal(...) / cut(...)."""
    if mod.kind == "zero":
        return "zero"
    if mod.kind == "full":
        return "fullfield"
    if mod.kind == "maxlimit":
        return "maxideal"
    if mod.is_unit():
        return "unit"
    if mod == mod.ring.maximal_ideal():
        return "maxideal"
    g = mod.ring.group
    if isinstance(g, Rationals):
        body = g.fmt_element(mod.threshold)
        if not mod.strict:
            return f"principal({body})"
        return f"cut(t={body}, strict)"
    if mod.level is TOP:
        if not mod.strict:
            return "principal(" + ", ".join(
                f"{i}:{v}" for i, v in mod.threshold) + ")"
        return f"cut(level=top, t={g.fmt_element(mod.threshold)}, strict)"
    k = mod.level
    if tuple(mod.threshold) == (0,) * (k - 1) + (1,):
        return f"prime({k})"
    body = ",".join(str(c) for c in mod.threshold)
    if isinstance(g, LexZ) and k == g.rank:
        return f"principal({body})"
    return f"cut(level={k}, t=({body}))"
