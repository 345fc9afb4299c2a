"""Shared test corpora: the ring/valuation matrix audited for the defining
laws, exhaustive profile enumerations behind the round-trip suites, and
the seeded monomial ideal corpus.

The matrix deliberately omits pgrade on the rank-omega model: its value at
the maximal ideal is the supremum of the finite chain levels, so no finite
sample of finitely generated subideals can attain it and the
finitely-generated-supremum audit would report a spurious failure.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement, product

from .cuts import ValuationRing
from .dedekind import DedekindRing
from .extnat import INF
from .groups import LexZ, LexZOmega, Rationals
from .localizing import GeneratedByFG, PrimeCut, ValuationLevel
from .monomial import MonomialRing
from .primes import DedekindPrime, MonomialPrime, ValuationPrime
from .semistar import ChainValuation, chain_from_valuation
from .valuations import (Contracted, DedekindLocalization, Extended, FromLS,
                         Induced, PGrade, PrimeTable, ValuationOverring)


# ---------------------------------------------------------------------------
# exhaustive enumerations
# ---------------------------------------------------------------------------

def monotone_profiles(length: int, top: int, include_inf: bool = True):
    """Every nondecreasing tuple of the given length over {0..top}, with
    inf allowed as a tail value when include_inf is set."""
    values = list(range(top + 1)) + ([INF] if include_inf else [])
    return [tuple(c) for c in combinations_with_replacement(values, length)]


def all_tables(labels, values):
    """Every assignment of the given values to the given prime labels."""
    return [dict(zip(labels, row))
            for row in product(values, repeat=len(labels))]


def induced_from_profile(ring: ValuationRing, profile) -> Induced:
    """The induced valuation with value profile[k-1] at chain level k."""
    table = {ValuationPrime(k + 1): v for k, v in enumerate(profile)}
    return Induced.make(ring, table)


def prime_table(ring: DedekindRing, table: dict) -> PrimeTable:
    return PrimeTable.make(ring, table)


# ---------------------------------------------------------------------------
# the audited matrix
# ---------------------------------------------------------------------------

def standard_rings() -> dict:
    return {
        "dedekind2": DedekindRing(("p", "q")),
        "dedekind3": DedekindRing(("p", "q", "r")),
        "lexZ1": ValuationRing(LexZ(1)),
        "lexZ2": ValuationRing(LexZ(2)),
        "lexZ3": ValuationRing(LexZ(3)),
        "omega": ValuationRing(LexZOmega()),
        "rationals": ValuationRing(Rationals()),
        "monomial2": MonomialRing(2),
        "monomial3": MonomialRing(3),
    }


def _dedekind_rows(ring: DedekindRing):
    p, q = ring.primes[0], ring.primes[1]
    table = prime_table(ring, {p: 1, q: 3})
    loc = DedekindLocalization(ring, (p,))
    return [
        table,
        prime_table(ring, {p: 0, q: INF}),
        Induced.make(ring, {DedekindPrime(p): 2, DedekindPrime(q): 2}),
        PGrade(ring),
        FromLS(ring, GeneratedByFG(ring, (ring.ideal({p: 2}),
                                          ring.ideal({q: 1})))),
        FromLS(ring, PrimeCut(ring, DedekindPrime(p))),
        FromLS(ring, ValuationLevel(ring, PGrade(ring), 1)),
        Contracted(loc, prime_table(loc.target(), {p: 2})),
        Extended(loc, table),
        ChainValuation(chain_from_valuation(table)),
    ]


def _lexz_rows(ring: ValuationRing):
    rank = ring.group.rank
    stairs = induced_from_profile(ring, tuple(range(1, rank + 1)))
    rows = [
        stairs,
        induced_from_profile(ring, (0,) * (rank - 1) + (INF,)),
        PGrade(ring),
        FromLS(ring, PrimeCut(ring, ValuationPrime(1))),
        FromLS(ring, GeneratedByFG(
            ring, (ring.principal((1,) + (0,) * (rank - 1)),))),
        FromLS(ring, ValuationLevel(ring, stairs, rank)),
        ChainValuation(chain_from_valuation(stairs)),
    ]
    over = ValuationOverring(ring, 1)
    rows.append(Contracted(over, induced_from_profile(over.target(), (2,))))
    rows.append(Extended(over, stairs))
    return rows


def _omega_rows(ring: ValuationRing):
    profile = Induced.make(ring, {ValuationPrime(1): 1,
                                  ValuationPrime(2): 3,
                                  ValuationPrime(INF): 3})
    return [
        profile,
        FromLS(ring, PrimeCut(ring, ValuationPrime(2))),
        FromLS(ring, PrimeCut(ring, ValuationPrime(INF))),
        FromLS(ring, GeneratedByFG(ring, (ring.principal(((3, 1),)),))),
        ChainValuation(chain_from_valuation(profile)),
    ]


def _rationals_rows(ring: ValuationRing):
    flat = Induced.make(ring, {ValuationPrime(1): 2})
    return [
        flat,
        PGrade(ring),
        FromLS(ring, PrimeCut(ring, ValuationPrime(1))),
        FromLS(ring, GeneratedByFG(ring, (ring.principal(Fraction(1)),))),
        ChainValuation(chain_from_valuation(flat)),
    ]


def _monomial_rows(ring: MonomialRing):
    names = ring.var_names()
    heights = {}
    for size in range(1, ring.num_vars + 1):
        for combo in combinations_with_replacement(names, size):
            if len(set(combo)) == size:
                heights[MonomialPrime(combo)] = size
    xy = ring.ideal([tuple(1 if i == j else 0 for i in range(ring.num_vars))
                     for j in range(min(2, ring.num_vars))])
    return [
        PGrade(ring),
        Induced.make(ring, heights),
        FromLS(ring, GeneratedByFG(ring, (xy,))),
        FromLS(ring, ValuationLevel(ring, PGrade(ring), 2)),
        FromLS(ring, PrimeCut(ring, MonomialPrime(names[:2]))),
        ChainValuation(chain_from_valuation(PGrade(ring))),
    ]


def the_matrix():
    """Every (ring, valuation) pair the law audit runs over: builtin and
    constructed valuations on one representative ring per model."""
    rings = standard_rings()
    rows = []
    for val in _dedekind_rows(rings["dedekind2"]):
        rows.append((rings["dedekind2"], val))
    for val in _lexz_rows(rings["lexZ2"]):
        rows.append((rings["lexZ2"], val))
    for val in _omega_rows(rings["omega"]):
        rows.append((rings["omega"], val))
    for val in _rationals_rows(rings["rationals"]):
        rows.append((rings["rationals"], val))
    for val in _monomial_rows(rings["monomial3"]):
        rows.append((rings["monomial3"], val))
    return rows


def ring_maps():
    """The overring maps exercised by the composition laws."""
    rings = standard_rings()
    maps = [DedekindLocalization(rings["dedekind2"], ("p",)),
            DedekindLocalization(rings["dedekind3"], ("p", "r"))]
    for name in ("lexZ2", "lexZ3"):
        ring = rings[name]
        for level in range(1, ring.group.rank + 1):
            maps.append(ValuationOverring(ring, level))
    return maps


# ---------------------------------------------------------------------------
# seeded corpora
# ---------------------------------------------------------------------------

def random_monomial_ideals(rng, count: int, max_vars: int = 4,
                           max_gens: int = 5, max_degree: int = 6):
    """Seeded corpus of proper nonzero monomial ideals, mixing rings with
    2..max_vars variables; every generator has total degree <= max_degree."""
    rings = {n: MonomialRing(n) for n in range(2, max_vars + 1)}
    out = []
    while len(out) < count:
        ring = rings[rng.randint(2, max_vars)]
        gens = []
        for _ in range(rng.randint(1, max_gens)):
            degree = rng.randint(1, max_degree)
            exps = [0] * ring.num_vars
            for _ in range(degree):
                exps[rng.randrange(ring.num_vars)] += 1
            gens.append(tuple(exps))
        ideal = ring.ideal(gens)
        if ideal.is_proper_ideal():
            out.append(ideal)
    return out
