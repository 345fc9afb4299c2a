"""Monomial-module model over a polynomial ring k[x_1..x_m].

Modules are finitely generated monomial submodules of the Laurent field:
a generator is an integer exponent vector (negative entries make the
module fractional), and the stored generating set is the unique minimal
antichain under componentwise <= (divisibility), sorted lexicographically.
The unit ideal is the antichain {0}; the zero module has no generators;
``full`` stands for the whole fraction field, which no finite generating
set expresses.

Everything here is exact integer arithmetic.  Saturations iterate a
fraction-field colon and raise UsageError when the chain fails to
stabilize inside a generous cap, because the limit is then not a finitely
generated module and has no representation in this model.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass

from .errors import UsageError, ValidationError
from .primes import MonomialPrime, PrimeRef, ZeroPrime

#: iterations after which a non-stabilizing colon chain is abandoned
SATURATION_CAP = 64


def saturation_cap() -> int:
    """Iteration bound on saturation chains, overridable through the
    IVLAB_DEGREE_BOUND environment variable."""
    raw = os.environ.get("IVLAB_DEGREE_BOUND")
    if raw is None:
        return SATURATION_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise UsageError(f"IVLAB_DEGREE_BOUND must be an integer: {raw!r}")
    if cap < 1:
        raise UsageError(f"IVLAB_DEGREE_BOUND must be positive: {raw!r}")
    return cap


@dataclass(frozen=True)
class MonomialRing:
    num_vars: int

    def __post_init__(self):
        if not (isinstance(self.num_vars, int) and self.num_vars >= 1):
            raise ValidationError(f"bad variable count: {self.num_vars!r}")

    def name(self) -> str:
        return "monomial{vars=[" + ",".join(self.var_names()) + "]}"

    def var_names(self) -> tuple[str, ...]:
        if self.num_vars <= 3:
            return ("x", "y", "z")[: self.num_vars]
        return tuple(f"x{i + 1}" for i in range(self.num_vars))

    def var_index(self, name: str) -> int:
        try:
            return self.var_names().index(name)
        except ValueError:
            raise UsageError(f"unknown variable {name!r} in {self.name()}")

    # -- constructors -------------------------------------------------------

    def zero(self) -> "MonomialModule":
        return MonomialModule(self, "zero", ())

    def full(self) -> "MonomialModule":
        return MonomialModule(self, "full", ())

    def unit(self) -> "MonomialModule":
        return MonomialModule.make(self, [(0,) * self.num_vars])

    def module(self, gens) -> "MonomialModule":
        return MonomialModule.make(self, gens)

    def ideal(self, gens) -> "MonomialModule":
        mod = MonomialModule.make(self, gens)
        if not mod.is_integral():
            raise UsageError("ideal generators must have nonnegative exponents")
        return mod

    def variable(self, i: int):
        return tuple(1 if j == i else 0 for j in range(self.num_vars))

    def prime_ideal(self, ref: MonomialPrime) -> "MonomialModule":
        idxs = [self.var_index(v) for v in ref.variables]
        return MonomialModule.make(self, [self.variable(i) for i in idxs])

    def prime_ref(self, indices) -> MonomialPrime:
        names = self.var_names()
        return MonomialPrime(tuple(sorted(names[i] for i in indices)))

    def nonzero_prime_refs(self) -> tuple[MonomialPrime, ...]:
        """All 2^m - 1 monomial primes, by height then variable order."""
        out = []
        idx = range(self.num_vars)
        for size in range(1, self.num_vars + 1):
            for combo in itertools.combinations(idx, size):
                out.append(self.prime_ref(combo))
        return tuple(out)

    def squarefree_colevel_ideal(self) -> "MonomialModule":
        """The ideal generated by all squarefree monomials of degree m-1,
        i.e. the intersection of every height-two monomial prime (the unit
        ideal when m = 1)."""
        m = self.num_vars
        gens = []
        for skip in range(m):
            gens.append(tuple(0 if i == skip else 1 for i in range(m)))
        if m == 1:
            gens = [(0,)]
        return MonomialModule.make(self, gens)

    # -- sampling ------------------------------------------------------------

    def sample_ideals(self, rng, count: int, max_gens: int = 5,
                      max_deg: int = 6):
        """Random integral ideals plus fixed shapes that exercise the
        decomposition and closure paths."""
        m = self.num_vars
        out = [self.zero(), self.unit()]
        if m >= 3:
            out.append(self.ideal([(0, 1, 2) + (0,) * (m - 3),
                                   (1, 1, 1) + (0,) * (m - 3),
                                   (2, 0, 1) + (0,) * (m - 3),
                                   (1, 2, 0) + (0,) * (m - 3)]))
        if m >= 2:
            out.append(self.ideal([self.variable(0), self.variable(1)]))
            out.append(self.ideal([(2,) + (0,) * (m - 1),
                                   (1, 1) + (0,) * (m - 2)]))
        while len(out) < count:
            n_gens = rng.randint(1, max_gens)
            gens = []
            for _ in range(n_gens):
                g = [0] * m
                degree = rng.randint(1, max_deg)
                for _ in range(degree):
                    g[rng.randint(0, m - 1)] += 1
                gens.append(tuple(g))
            out.append(MonomialModule.make(self, gens))
        return out[:count]


@dataclass(frozen=True)
class MonomialModule:
    ring: MonomialRing
    kind: str                                  # "zero" | "full" | "gens"
    gens: tuple[tuple[int, ...], ...] = ()

    @staticmethod
    def make(ring: MonomialRing, gens) -> "MonomialModule":
        vecs = []
        for g in gens:
            t = tuple(int(c) for c in g)
            if len(t) != ring.num_vars:
                raise ValidationError(
                    f"generator arity {len(t)} != {ring.num_vars}")
            vecs.append(t)
        minimal = _antichain(vecs)
        if not minimal:
            return MonomialModule(ring, "zero", ())
        return MonomialModule(ring, "gens", minimal)

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        return self.kind == "zero"

    def is_full(self) -> bool:
        return self.kind == "full"

    def is_unit(self) -> bool:
        return self.gens == ((0,) * self.ring.num_vars,)

    def is_integral(self) -> bool:
        if self.kind == "zero":
            return True
        if self.kind == "full":
            return False
        return all(all(c >= 0 for c in g) for g in self.gens)

    def is_proper_ideal(self) -> bool:
        return self.kind == "gens" and self.is_integral() and not self.is_unit()

    def is_finitely_generated(self) -> bool:
        return self.kind != "full"

    # -- membership and containment -------------------------------------------

    def membership(self, exponents) -> bool:
        """Does the monomial with the given exponent vector lie in the
        module?"""
        e = tuple(int(c) for c in exponents)
        if len(e) != self.ring.num_vars:
            raise ValidationError(f"exponent arity {len(e)}")
        if self.kind == "zero":
            return False
        if self.kind == "full":
            return True
        return any(all(gc <= ec for gc, ec in zip(g, e)) for g in self.gens)

    def contains(self, other: "MonomialModule") -> bool:
        _check_ring(self, other)
        if other.kind == "zero" or self.kind == "full":
            return True
        if self.kind == "zero" or other.kind == "full":
            return False
        return all(self.membership(g) for g in other.gens)

    # -- algebra ---------------------------------------------------------------

    def mul(self, other: "MonomialModule") -> "MonomialModule":
        _check_ring(self, other)
        if self.kind == "zero" or other.kind == "zero":
            return self.ring.zero()
        if self.kind == "full" or other.kind == "full":
            return self.ring.full()
        return MonomialModule.make(
            self.ring, [_vadd(a, b) for a in self.gens for b in other.gens])

    def add(self, other: "MonomialModule") -> "MonomialModule":
        _check_ring(self, other)
        if self.kind == "full" or other.kind == "full":
            return self.ring.full()
        return MonomialModule.make(self.ring, self.gens + other.gens)

    def intersect(self, other: "MonomialModule") -> "MonomialModule":
        _check_ring(self, other)
        if self.kind == "zero" or other.kind == "zero":
            return self.ring.zero()
        if self.kind == "full":
            return other
        if other.kind == "full":
            return self
        return MonomialModule.make(
            self.ring, [_vmax(a, b) for a in self.gens for b in other.gens])

    def colon(self, other: "MonomialModule") -> "MonomialModule":
        """(self :_K other), a module in the fraction field; may be
        fractional even for integral inputs."""
        _check_ring(self, other)
        if other.kind == "zero":
            raise UsageError("colon by the zero module is undefined")
        if self.kind == "zero":
            return self.ring.zero()
        if other.kind == "full":
            return self.ring.full() if self.kind == "full" else self.ring.zero()
        if self.kind == "full":
            return self.ring.full()
        acc = None
        for b in other.gens:
            shifted = MonomialModule.make(
                self.ring, [_vsub(a, b) for a in self.gens])
            acc = shifted if acc is None else acc.intersect(shifted)
        return acc

    def rcolon(self, other: "MonomialModule") -> "MonomialModule":
        """(self :_R other) = (self :_K other) clamped into the ring: each
        generator's negative exponents raised to zero."""
        out = self.colon(other)
        if out.kind != "gens":
            return out
        return MonomialModule.make(
            self.ring, [tuple(max(c, 0) for c in g) for g in out.gens])

    def saturate(self, other: "MonomialModule",
                 cap: int | None = None) -> "MonomialModule":
        """Union of the chain self : other^k in the fraction field;
        UsageError if the chain is still growing after ``cap`` steps
        (default: the saturation cap, see IVLAB_DEGREE_BOUND)."""
        current = self
        for _ in range(saturation_cap() if cap is None else cap):
            step = current.colon(other)
            if step == current:
                return current
            current = step
        raise UsageError(
            "saturation does not stabilize: the limit is not a finitely "
            "generated module")

    def inverse(self) -> "MonomialModule":
        """(R :_K self); for a nonzero ideal this is the principal module
        at minus the componentwise gcd of the generators."""
        return self.ring.unit().colon(self)

    # -- structure -------------------------------------------------------------

    def radical(self) -> "MonomialModule":
        if not self.is_integral():
            raise UsageError("radical of a fractional module is undefined")
        if self.kind == "zero":
            return self
        return MonomialModule.make(
            self.ring, [tuple(min(c, 1) for c in g) for g in self.gens])

    def minimal_primes(self) -> tuple[MonomialPrime, ...]:
        """Minimal monomial primes over a proper nonzero ideal: the minimal
        covers of the generator supports."""
        if not self.is_proper_ideal():
            raise UsageError("minimal primes need a proper nonzero ideal")
        supports = [frozenset(i for i, c in enumerate(g) if c > 0)
                    for g in self.gens]
        m = self.ring.num_vars
        covers = []
        for size in range(1, m + 1):
            for combo in itertools.combinations(range(m), size):
                s = set(combo)
                if all(s & sup for sup in supports):
                    if not any(set(c) <= s for c in covers):
                        covers.append(combo)
        return tuple(self.ring.prime_ref(c) for c in covers)

    def height(self) -> int:
        """min of the heights of the minimal primes (a monomial prime on k
        variables has height k)."""
        return min(len(p.variables) for p in self.minimal_primes())

    def localize(self, prime: PrimeRef) -> "MonomialModule":
        """Contraction of self * R_P back to a monomial module: exponents
        at inverted variables drop to zero."""
        if self.kind in ("zero", "full"):
            return self
        if isinstance(prime, ZeroPrime):
            return self.ring.full()
        if not isinstance(prime, MonomialPrime):
            raise UsageError(f"not a prime of this ring: {prime}")
        keep = {self.ring.var_index(v) for v in prime.variables}
        return MonomialModule.make(
            self.ring,
            [tuple(c if i in keep else 0 for i, c in enumerate(g))
             for g in self.gens])

    def primary_decomposition(self):
        """Irredundant list of (component, associated prime) pairs whose
        intersection is self, by repeatedly splitting a mixed-support
        generator g = u*v with u the power of its first variable."""
        if not self.is_proper_ideal():
            raise UsageError("primary decomposition needs a proper nonzero ideal")
        components: list[MonomialModule] = []
        stack = [self]
        seen = set()
        while stack:
            ideal = stack.pop()
            if ideal in seen:
                continue
            seen.add(ideal)
            g = _first_mixed_generator(ideal)
            if g is None:
                components.append(ideal)
                continue
            first = next(i for i, c in enumerate(g) if c > 0)
            u = tuple(g[i] if i == first else 0
                      for i in range(self.ring.num_vars))
            v = tuple(0 if i == first else g[i]
                      for i in range(self.ring.num_vars))
            stack.append(ideal.add(MonomialModule.make(self.ring, [u])))
            stack.append(ideal.add(MonomialModule.make(self.ring, [v])))
        components = _strip_redundant(sorted(set(components),
                                             key=lambda c: c.gens))
        return [(c, c.radical().minimal_primes()[0]) for c in components]

    def level_closure(self, n) -> "MonomialModule":
        """Intersection of the primary components whose associated prime
        has height below n (the grade filtration of the ideal); the whole
        field for n <= 1, the unit ideal when no component qualifies."""
        if self.kind in ("zero", "full"):
            return self
        if n <= 1:
            return self.ring.full()
        if self.is_unit():
            return self
        kept = [c for c, p in self.primary_decomposition()
                if len(p.variables) < n]
        out = self.ring.unit()
        for c in kept:
            out = out.intersect(c)
        return out

    def __str__(self):
        return fmt_monomial(self)


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------


def _check_ring(a: MonomialModule, b: MonomialModule):
    if a.ring != b.ring:
        raise UsageError("ring mismatch")


def _vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _vmax(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _antichain(vecs):
    out = []
    for v in sorted(set(vecs)):
        if not any(_divides(u, v) for u in out):
            out = [u for u in out if not _divides(v, u)] + [v]
    return tuple(sorted(out))


def _first_mixed_generator(ideal: MonomialModule):
    for g in ideal.gens:
        if sum(1 for c in g if c > 0) >= 2:
            return g
    return None


def _strip_redundant(components):
    """Drop components containing the intersection of the others; pairwise
    first, then a full sweep until stable."""
    comps = list(components)
    changed = True
    while changed:
        changed = False
        for i, c in enumerate(comps):
            rest = [d for j, d in enumerate(comps) if j != i]
            if not rest:
                break
            inter = rest[0]
            for d in rest[1:]:
                inter = inter.intersect(d)
            if c.contains(inter):
                comps.pop(i)
                changed = True
                break
    return comps


# ---------------------------------------------------------------------------
# printing
# ---------------------------------------------------------------------------


def fmt_exponents(ring: MonomialRing, g) -> str:
    names = ring.var_names()
    parts = []
    for name, c in zip(names, g):
        if c == 0:
            continue
        parts.append(name if c == 1 else f"{name}^{c}")
    return "*".join(parts) if parts else "1"


def fmt_monomial(mod: MonomialModule) -> str:
    if mod.kind == "zero":
        return "zero"
    if mod.kind == "full":
        return "fullfield"
    if mod.is_unit():
        return "unit"
    return "(" + ", ".join(fmt_exponents(mod.ring, g) for g in mod.gens) + ")"
