"""Semistar operations and chains: the closure laws, the closed forms
against brute-force unions, chain standardness, and the two round trips
between valuations, chains, and prime data."""

import itertools
import random
from fractions import Fraction

import pytest

from ivlab import INF, UsageError, ValidationError
from ivlab.cuts import ValuationRing
from ivlab.dedekind import DedekindRing
from ivlab.groups import LexZ, LexZOmega, Rationals
from ivlab.localizing import GeneratedByFG, PrimeCut, ValuationLevel
from ivlab.monomial import MonomialRing
from ivlab.primes import DedekindPrime, MonomialPrime, ValuationPrime, ZeroPrime
from ivlab.semistar import (ChainValuation, ConstantTail, IncreasingLevelsTail,
                            LevelOp, LevelTail, LSOp, OpD, OpE, OpV, OpW,
                            SemistarChain, SpectralOp, SpectralTail,
                            chain_from_prime_data, chain_from_valuation,
                            op_equals, prime_data_from_chain,
                            sample_op_arguments, valuation_from_chain)
from ivlab.valuations import FromLS, Induced, PGrade, PrimeTable

D2 = DedekindRing(("p", "q"))
V2 = ValuationRing(LexZ(2))
V3 = ValuationRing(LexZ(3))
VO = ValuationRing(LexZOmega())
VQ = ValuationRing(Rationals())
R3 = MonomialRing(3)


def _ops_for(ring):
    ops = [OpD(ring), OpE(ring), OpV(ring), OpW(ring)]
    if isinstance(ring, DedekindRing):
        ops.append(SpectralOp(ring, (DedekindPrime("p"),)))
        ops.append(LSOp(ring, GeneratedByFG(ring, (ring.prime_ideal("q"),))))
        ops.append(LevelOp(ring, PrimeTable.make(ring, {"p": 1, "q": 2}), 2))
    elif isinstance(ring, ValuationRing):
        refs = ring.exposed_prime_refs()
        ops.append(SpectralOp(ring, refs[:1]))
        ops.append(LSOp(ring, PrimeCut(ring, refs[-1])))
        if isinstance(ring.group, Rationals):
            nu = Induced.make(ring, {ValuationPrime(1): 2})
        else:
            nu = PGrade(ring)
        ops.append(LevelOp(ring, nu, 2))
    else:
        ops.append(SpectralOp(ring, (ring.prime_ref((0, 1)),)))
        ops.append(LevelOp(ring, PGrade(ring), 2))
    return ops


# -- the three closure laws -----------------------------------------------------------


@pytest.mark.parametrize("ring", [D2, V2, VO, VQ, R3], ids=lambda r: r.name())
def test_ops_are_extensive_idempotent_monotone(ring):
    rng = random.Random(29)
    modules = sample_op_arguments(ring, rng, 14)
    for op in _ops_for(ring):
        closed = []
        for e in modules:
            try:
                ce = op.closure(e)
            except UsageError:
                continue      # honestly reported non-representable closure
            assert ce.contains(e), (op.name(), str(e))
            assert op.closure(ce) == ce, (op.name(), str(e))
            closed.append((e, ce))
        for (a, ca), (b, cb) in itertools.combinations(closed, 2):
            if b.contains(a):
                assert cb.contains(ca), (op.name(), str(a), str(b))
            if a.contains(b):
                assert ca.contains(cb), (op.name(), str(a), str(b))


def test_identity_and_field_ops():
    i = D2.module({"p": 2})
    assert OpD(D2).closure(i) == i
    assert OpE(D2).closure(i).is_full()
    assert OpE(D2).closure(D2.zero()).is_zero()
    with pytest.raises(UsageError):
        OpD(D2).closure(V2.unit())


def test_divisorial_closure_on_monomial_is_the_principal_hull():
    i = R3.ideal([(2, 1, 0), (1, 3, 0)])
    # common factor x*y: the double dual collapses to it
    assert OpV(R3).closure(i) == R3.module([(1, 1, 0)])
    j = R3.ideal([(1, 0, 0), (0, 1, 0)])
    assert OpV(R3).closure(j).is_unit()


def test_divisorial_closure_is_identity_on_dedekind_and_lexz():
    rng = random.Random(33)
    ok, witness = op_equals(OpV(D2), OpD(D2), rng, samples=40)
    assert ok, witness
    for ring in (V2, V3):
        ok, witness = op_equals(OpV(ring), OpD(ring), rng, samples=40)
        assert ok, witness


def test_divisorial_closure_differs_at_idempotent_maximal_ideals():
    # the maximal ideal of the dense models is not divisorial: its dual
    # is the whole ring, so the double dual climbs to the ring
    for ring in (VQ, VO):
        m = ring.maximal_ideal()
        assert OpV(ring).closure(m) == ring.unit()
        ok, witness = op_equals(OpV(ring), OpD(ring), random.Random(1))
        assert not ok
    # open cuts at a rational close up to the principal at the boundary
    open_cut = VQ.cut(1, Fraction(3, 2), strict=True)
    assert OpV(VQ).closure(open_cut) == VQ.principal(Fraction(3, 2))


def test_w_closure_equals_the_height_two_level_op_on_monomial():
    rng = random.Random(35)
    ok, witness = op_equals(OpW(R3), LevelOp(R3, PGrade(R3), 2), rng,
                            samples=50)
    assert ok, witness


# -- spectral operations ----------------------------------------------------------------


def test_spectral_requires_primes_and_handles_zero_prime():
    with pytest.raises(ValidationError):
        SpectralOp(D2, ())
    zero_only = SpectralOp(D2, (ZeroPrime(),))
    assert zero_only.closure(D2.module({"p": 3})).is_full()
    assert zero_only.closure(D2.zero()).is_zero()


def test_spectral_on_dedekind_drops_other_primes():
    op = SpectralOp(D2, (DedekindPrime("p"),))
    i = D2.module({"p": 2, "q": 5})
    assert op.closure(i) == i.localize(DedekindPrime("p"))
    assert op.closure(i).membership((2, -9))
    both = SpectralOp(D2, D2.prime_refs())
    assert both.closure(i) == i


def test_spectral_on_monomial_intersects_localizations():
    op = SpectralOp(R3, (R3.prime_ref((0, 1)), R3.prime_ref((2,))))
    i = R3.ideal([(1, 0, 1)])
    # at (x, y) the z part inverts; at (z) the x part inverts
    want = R3.ideal([(1, 0, 0)]).intersect(R3.ideal([(0, 0, 1)]))
    assert op.closure(i) == want


def test_spectral_divergence_on_monomial_is_reported():
    op = SpectralOp(R3, (R3.prime_ref((0,)),))
    mixed = R3.ideal([(2, 0, 0), (1, 1, 0)])
    with pytest.raises(UsageError):
        op.closure(mixed)


# -- localizing-system operations vs brute-force unions ------------------------------------


def test_generated_closure_on_dedekind_matches_brute_force():
    """The closure is the union of (E : J) over finite products of
    generators.  The union never stabilizes as a module (exponents at the
    dropped primes sink forever), so the comparison is membership of
    bounded vectors: depth twelve colons decide every probe with
    exponents in the sampled range."""
    rng = random.Random(37)
    systems = [
        GeneratedByFG(D2, (D2.prime_ideal("p"),)),
        GeneratedByFG(D2, (D2.module({"p": 1, "q": 2}),)),
        GeneratedByFG(D2, (D2.prime_ideal("p"), D2.prime_ideal("q"))),
    ]
    probes = list(itertools.product(range(-6, 7), repeat=2))
    for system in systems:
        op = LSOp(D2, system)
        product = system.gens[0]
        for g in system.gens[1:]:
            product = product.mul(g)
        for i in D2.sample_ideals(rng, 10):
            if i.is_zero():
                continue
            got = op.closure(i)
            quotients = []
            current = i
            for _ in range(12):
                current = current.colon(product)
                quotients.append(current)
            for vec in probes:
                want = i.membership(vec) or any(
                    q.membership(vec) for q in quotients)
                assert got.membership(vec) == want, (
                    system.name(), str(i), vec)


def test_generated_closure_on_rationals_idempotent_system():
    system = GeneratedByFG(VQ, (VQ.maximal_ideal(),))
    op = LSOp(VQ, system)
    m = VQ.maximal_ideal()
    # (M : M) climbs only to the ring, not the field
    assert op.closure(m) == VQ.unit()
    # principals are already closed: (E : M) attains the same boundary
    p = VQ.principal(Fraction(3, 2))
    assert op.closure(p) == p
    assert op.closure(VQ.unit()) == VQ.unit()


def test_generated_closure_on_lexz_deepening_system():
    system = GeneratedByFG(V2, (V2.maximal_ideal(),))
    op = LSOp(V2, system)
    # powers of M sink without bound in the last coordinate: the closure
    # inverts exactly the level-2 part
    i = V2.principal((1, 3))
    assert op.closure(i) == i.localize(ValuationPrime(1))
    deep = GeneratedByFG(V2, (V2.prime_ideal(1),))
    assert LSOp(V2, deep).closure(i).is_full()


def test_primecut_closure_localizes():
    op = LSOp(D2, PrimeCut(D2, DedekindPrime("p")))
    i = D2.module({"p": 2, "q": 5})
    assert op.closure(i) == i.localize(DedekindPrime("p"))
    mop = LSOp(R3, PrimeCut(R3, R3.prime_ref((0, 1, 2))))
    j = R3.ideal([(1, 1, 0)])
    assert mop.closure(j) == j     # only units escape the maximal ideal
    zop = LSOp(V2, PrimeCut(V2, ZeroPrime()))
    assert zop.closure(V2.maximal_ideal()).is_full()


# -- level operations ------------------------------------------------------------------


def test_level_zero_is_the_field_op():
    nu = PrimeTable.make(D2, {"p": 1, "q": 2})
    op = LevelOp(D2, nu, 0)
    assert op.closure(D2.module({"p": 1})).is_full()
    assert op.closure(D2.zero()).is_zero()


def test_level_op_on_dedekind_keeps_low_components():
    nu = PrimeTable.make(D2, {"p": 1, "q": 3})
    op = LevelOp(D2, nu, 2)
    i = D2.module({"p": 2, "q": 5})
    got = op.closure(i)
    # the q component (value 3 >= 2) localizes away; p stays
    assert got == i.localize(DedekindPrime("p"))
    assert got.membership((2, -7))
    assert not got.membership((1, 0))
    # above every prime's value the system is just {R}: identity
    high = LevelOp(D2, nu, 4)
    assert high.closure(i) == i
    # at level one every prime qualifies: the closure is the field
    low = LevelOp(D2, nu, 1)
    assert low.closure(i).is_full()


def test_level_op_on_lexz_localizes_below_the_crossing():
    nu = Induced.make(V3, {ValuationPrime(1): 1, ValuationPrime(2): 2,
                           ValuationPrime(3): 5})
    i = V3.principal((1, 2, 3))
    assert LevelOp(V3, nu, 1).closure(i).is_full()
    assert LevelOp(V3, nu, 2).closure(i) == i.localize(ValuationPrime(1))
    assert LevelOp(V3, nu, 3).closure(i) == i.localize(ValuationPrime(2))
    assert LevelOp(V3, nu, 6).closure(i) == i


def test_level_op_on_rationals_is_all_or_nothing():
    nu = Induced.make(VQ, {ValuationPrime(1): 2})
    m = VQ.maximal_ideal()
    assert LevelOp(VQ, nu, 1).closure(m).is_full()
    assert LevelOp(VQ, nu, 2).closure(m).is_full()
    assert LevelOp(VQ, nu, 3).closure(m) == m


def test_level_op_on_omega_pgrade():
    nu = PGrade(VO)
    p2 = VO.prime_from_ref(ValuationPrime(2))
    got = LevelOp(VO, nu, 3).closure(p2)
    assert got == p2.localize(ValuationPrime(2))
    assert LevelOp(VO, nu, 1).closure(p2).is_full()


def test_level_op_dual_route_through_the_system():
    # the system wrapper and the direct level op are the same operation
    nu = PGrade(R3)
    rng = random.Random(43)
    ok, witness = op_equals(LSOp(R3, ValuationLevel(R3, nu, 2)),
                            LevelOp(R3, nu, 2), rng, samples=40)
    assert ok, witness


# -- chains ------------------------------------------------------------------------------


def test_chain_requires_standard_start():
    with pytest.raises(ValidationError):
        SemistarChain(D2, (OpD(D2),), ConstantTail())
    with pytest.raises(ValidationError):
        SemistarChain(D2, (), ConstantTail())
    chain = SemistarChain(D2, (OpE(D2), OpD(D2)), ConstantTail())
    assert chain.member(0).name() == "e"
    assert chain.member(5).name() == "d"


def test_chain_members_decrease():
    rng = random.Random(47)
    nu = Induced.make(V2, {ValuationPrime(1): 1, ValuationPrime(2): 3})
    chains = [
        chain_from_valuation(nu),
        chain_from_prime_data(V2, {ValuationPrime(1): 1,
                                   ValuationPrime(2): 3}),
        chain_from_valuation(PGrade(R3)),
        chain_from_prime_data(D2, {DedekindPrime("p"): 2}),
    ]
    for chain in chains:
        mods = sample_op_arguments(chain.ring, rng, 8)
        for e in mods:
            closures = []
            for n in range(6):
                try:
                    closures.append(chain.member(n).closure(e))
                except UsageError:
                    closures.append(None)
            for a, b in zip(closures, closures[1:]):
                if a is not None and b is not None:
                    assert a.contains(b), (chain.name(), str(e))


def test_chain_valuation_reads_back_prime_tables():
    nu = PrimeTable.make(D2, {"p": 1, "q": 2})
    round_trip = valuation_from_chain(chain_from_valuation(nu))
    rng = random.Random(53)
    for i in D2.sample_ideals(rng, 40):
        assert round_trip.value(i) == nu.value(i), str(i)


def test_chain_valuation_reads_back_pgrade_on_monomial():
    nu = PGrade(R3)
    round_trip = valuation_from_chain(chain_from_valuation(nu))
    rng = random.Random(59)
    for i in R3.sample_ideals(rng, 25):
        if not i.is_integral():
            continue
        assert round_trip.value(i) == nu.value(i), str(i)


def test_prime_data_round_trip_on_lexz():
    table = {ValuationPrime(1): 1, ValuationPrime(2): 3}
    chain = chain_from_prime_data(V2, table)
    back = prime_data_from_chain(chain)
    assert back == {ValuationPrime(1): 1, ValuationPrime(2): 3}


def test_prime_data_round_trip_on_dedekind_with_unlisted_primes():
    chain = chain_from_prime_data(D2, {DedekindPrime("p"): 2})
    back = prime_data_from_chain(chain)
    assert back[DedekindPrime("p")] == 2
    assert back[DedekindPrime("q")] is INF


def test_chain_from_prime_data_rejects_zero_and_nonmonotone():
    with pytest.raises(ValidationError):
        chain_from_prime_data(D2, {DedekindPrime("p"): 0})
    with pytest.raises(ValidationError):
        chain_from_prime_data(V2, {ValuationPrime(1): 3,
                                   ValuationPrime(2): 1})
    with pytest.raises(ValidationError):
        chain_from_prime_data(R3, {R3.prime_ref((0,)): 3,
                                   R3.prime_ref((0, 1)): 1})
    with pytest.raises(ValidationError):
        chain_from_prime_data(D2, {ZeroPrime(): 1})


def test_increasing_levels_chain_on_omega():
    chain = SemistarChain(VO, (OpE(VO),), IncreasingLevelsTail(1))
    assert chain.stabilization_cap() is None
    nu = valuation_from_chain(chain)
    assert nu.value(VO.maximal_ideal()) is INF
    assert nu.value(VO.unit()) is INF
    vals = [nu.value(VO.prime_from_ref(ValuationPrime(k)))
            for k in range(1, 5)]
    # strictly increasing along the chain of primes
    assert vals == sorted(vals) and len(set(vals)) == len(vals)


def test_op_equals_verdicts():
    rng = random.Random(61)
    ok, witness = op_equals(OpD(D2), OpD(D2), rng)
    assert ok and witness is None
    ok, witness = op_equals(OpD(D2), OpE(D2), rng)
    assert not ok and "differ" in witness
    with pytest.raises(UsageError):
        op_equals(OpD(D2), OpD(V2), rng)


def test_chain_names_round_trip_identity():
    chain = chain_from_prime_data(V2, {ValuationPrime(1): 1})
    assert chain.name().startswith("chain{prefix=[")
    assert "tail=constant" in chain.name()
    levels = chain_from_valuation(PGrade(R3))
    assert "tail=levels(pgrade)" in levels.name()
