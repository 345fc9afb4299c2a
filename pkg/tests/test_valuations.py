"""Ideal valuations: the builtin constructors against independent value
computations, transport along ring maps, and the axiom audit."""

import random
from fractions import Fraction

import pytest

from ivlab import INF, UsageError, ValidationError
from ivlab.cuts import ValuationRing
from ivlab.dedekind import DedekindRing
from ivlab.groups import LexZ, LexZOmega, Rationals
from ivlab.localizing import GeneratedByFG, PrimeCut, ValuationLevel
from ivlab.monomial import MonomialRing
from ivlab.primes import DedekindPrime, ValuationPrime, ZeroPrime
from ivlab.valuations import (Contracted, DedekindLocalization, Extended,
                              FromLS, Induced, PGrade, PrimeTable,
                              ValuationOverring, check_axioms,
                              nonzero_prime_refs)

from oracles import cover_height

D2 = DedekindRing(("p", "q"))
D3 = DedekindRing(("p", "q", "r"))
V2 = ValuationRing(LexZ(2))
V3 = ValuationRing(LexZ(3))
VO = ValuationRing(LexZOmega())
VQ = ValuationRing(Rationals())
R3 = MonomialRing(3)


# -- prime tables on Dedekind models -----------------------------------------------


def test_prime_table_construction():
    nu = PrimeTable.make(D2, {"p": 2})
    assert nu.entries == (("p", 2), ("q", 0))
    with pytest.raises(ValidationError):
        PrimeTable.make(D2, {"s": 1})
    with pytest.raises(ValidationError):
        PrimeTable.make(V2, {"p": 1})
    with pytest.raises(ValidationError):
        PrimeTable.make(D2, {"p": -3})
    with pytest.raises(ValidationError):
        PrimeTable.make(D2, {"p": Fraction(1, 2)})


def test_prime_table_value_is_min_over_support():
    nu = PrimeTable.make(D2, {"p": 1, "q": 3})
    assert nu.value(D2.module({"p": 2})) == 1
    assert nu.value(D2.module({"q": 5})) == 3
    assert nu.value(D2.module({"p": 1, "q": 1})) == 1
    assert nu.value(D2.zero()) == 0
    assert nu.value(D2.unit()) is INF


def test_prime_table_value_vs_dict_oracle():
    rng = random.Random(3)
    table = {"p": 2, "q": INF, "r": 0}
    nu = PrimeTable.make(D3, table)
    for ideal in D3.sample_ideals(rng, 60):
        if ideal.is_zero() or ideal.is_unit():
            continue
        want = min(table[p] for p in ideal.support())
        assert nu.value(ideal) == want, str(ideal)


def test_prime_table_rejects_foreign_and_fractional_modules():
    nu = PrimeTable.make(D2, {"p": 1})
    with pytest.raises(UsageError):
        nu.value(D3.unit())
    with pytest.raises(UsageError):
        nu.value(D2.module({"p": -1}))


# -- induced valuations --------------------------------------------------------------


def test_induced_on_dedekind_takes_min_over_minimal_primes():
    nu = Induced.make(D2, {DedekindPrime("p"): 2, DedekindPrime("q"): 5})
    assert nu.value(D2.module({"p": 3})) == 2
    assert nu.value(D2.module({"p": 1, "q": 1})) == 2
    assert nu.value(D2.module({"q": 2})) == 5
    # unlisted primes default to zero
    mu = Induced.make(D2, {DedekindPrime("q"): 4})
    assert mu.value(D2.module({"p": 1})) == 0


def test_induced_rejects_zero_prime_data():
    with pytest.raises(ValidationError):
        Induced.make(D2, {ZeroPrime(): 1})


def test_induced_on_lexz_requires_monotone_data():
    nu = Induced.make(V3, {ValuationPrime(1): 1, ValuationPrime(3): 4})
    # step extension: the unlisted middle level inherits the value below
    assert dict(nu.entries)[ValuationPrime(2)] == 1
    with pytest.raises(ValidationError):
        Induced.make(V3, {ValuationPrime(1): 3, ValuationPrime(2): 1})
    # a level beyond the rank is not a prime of the model at all
    with pytest.raises(UsageError):
        Induced.make(V2, {ValuationPrime(4): 1})


def test_induced_on_lexz_reads_the_radical_level():
    nu = Induced.make(V3, {ValuationPrime(1): 1, ValuationPrime(2): 2,
                           ValuationPrime(3): 7})
    assert nu.value(V3.prime_ideal(1)) == 1
    assert nu.value(V3.principal((2, 0, 0))) == 1
    assert nu.value(V3.principal((0, 4, 1))) == 2
    assert nu.value(V3.maximal_ideal()) == 7
    assert nu.value(V3.zero()) == 0
    assert nu.value(V3.unit()) is INF


def test_induced_on_omega_tail_value_overrides_the_top_entry():
    # data sends every finite prime to 1 and the maximal ideal to
    # infinity; the supremum law forces the induced value at the maximal
    # ideal down to the tail of the finite profile
    nu = Induced.make(VO, {ValuationPrime(1): 1, ValuationPrime(INF): INF})
    assert nu.value(VO.prime_from_ref(ValuationPrime(1))) == 1
    assert nu.value(VO.prime_from_ref(ValuationPrime(5))) == 1
    assert nu.value(VO.maximal_ideal()) == 1
    assert dict(nu.entries)[ValuationPrime(INF)] is INF


def test_induced_on_omega_beyond_exposed_chain_rejected():
    with pytest.raises(ValidationError):
        Induced.make(VO, {ValuationPrime(12): 1})


def test_induced_on_rationals_is_constant_on_proper_ideals():
    nu = Induced.make(VQ, {ValuationPrime(1): 3})
    assert nu.value(VQ.maximal_ideal()) == 3
    assert nu.value(VQ.principal(Fraction(7, 2))) == 3
    assert nu.value(VQ.unit()) is INF


def test_induced_on_monomial_fills_and_checks_containment_order():
    px = R3.prime_ref((0,))
    pxy = R3.prime_ref((0, 1))
    pxyz = R3.prime_ref((0, 1, 2))
    nu = Induced.make(R3, {px: 1, pxyz: 3})
    table = dict(nu.entries)
    assert table[pxy] == 1          # largest listed value below
    assert table[R3.prime_ref((1, 2))] == 0
    assert nu.value(R3.ideal([(2, 0, 0)])) == 1
    # minimal primes of (xy) are (x) and (y): min(1, 0) = 0
    assert nu.value(R3.ideal([(1, 1, 0)])) == 0
    with pytest.raises(ValidationError):
        Induced.make(R3, {px: 2, pxyz: 1})


# -- indicator valuations of localizing systems ---------------------------------------


def test_fromls_indicator_semantics():
    nu = FromLS(D2, GeneratedByFG(D2, (D2.prime_ideal("p"),)))
    assert nu.value(D2.module({"p": 4})) == 1
    assert nu.value(D2.module({"p": 1, "q": 1})) == 0
    assert nu.value(D2.unit()) is INF
    assert nu.value(D2.zero()) == 0


def test_fromls_rejects_non_finite_type_systems():
    system = GeneratedByFG(VQ, (VQ.maximal_ideal(),))
    with pytest.raises(ValidationError):
        FromLS(VQ, system)
    forced = FromLS(VQ, system, forced=True)
    assert forced.value(VQ.maximal_ideal()) == 1
    assert forced.value(VQ.principal(Fraction(1))) == 0
    assert forced.value(VQ.unit()) is INF


def test_forced_indicator_fails_the_suprema_law_at_the_maximal_ideal():
    system = GeneratedByFG(VQ, (VQ.maximal_ideal(),))
    forced = FromLS(VQ, system, forced=True)
    report = check_axioms(forced, random.Random(0), samples=40)
    by_law = {entry["law"]: entry for entry in report}
    assert by_law["fg-supremum"]["status"] == "fail"
    assert "nu(maxideal) = 1" in by_law["fg-supremum"]["witness"]
    assert "reach 0" in by_law["fg-supremum"]["witness"]
    # radical invariance breaks too: the radical of every proper
    # principal is the maximal ideal, which the system contains
    assert by_law["radical"]["status"] == "fail"
    for law in ("zero-and-unit", "product-min", "intersection-min",
                "monotone", "power"):
        assert by_law[law]["status"] == "pass", law


# -- the grade valuation ---------------------------------------------------------------


def test_pgrade_on_each_model():
    assert PGrade(D2).value(D2.module({"p": 1, "q": 2})) == 1
    assert PGrade(V3).value(V3.prime_ideal(2)) == 2
    assert PGrade(V3).value(V3.principal((0, 0, 5))) == 3
    assert PGrade(VO).value(VO.maximal_ideal()) is INF
    assert PGrade(VO).value(VO.prime_from_ref(ValuationPrime(3))) == 3
    assert PGrade(VQ).value(VQ.maximal_ideal()) == 1
    assert PGrade(R3).value(R3.ideal([(1, 0, 0), (0, 1, 0)])) == 2


def test_pgrade_matches_cover_height_oracle():
    rng = random.Random(23)
    nu = PGrade(R3)
    for ideal in R3.sample_ideals(rng, 40):
        if ideal.is_zero() or ideal.is_unit() or not ideal.is_integral():
            continue
        assert nu.value(ideal) == cover_height(ideal), str(ideal)


# -- transport along ring maps ----------------------------------------------------------


def test_dedekind_localization_shape():
    loc = DedekindLocalization(D3, ("p", "r"))
    assert loc.target() == DedekindRing(("p", "r"))
    with pytest.raises(ValidationError):
        DedekindLocalization(D3, ())
    with pytest.raises(ValidationError):
        DedekindLocalization(D3, ("p", "p"))
    with pytest.raises(ValidationError):
        DedekindLocalization(D3, ("p", "s"))
    with pytest.raises(ValidationError):
        DedekindLocalization(D3, ("r", "p"))


def test_dedekind_localization_extend_contract():
    loc = DedekindLocalization(D3, ("p", "r"))
    i = D3.module({"p": 2, "q": 5, "r": 1})
    assert loc.extend_module(i) == loc.target().module({"p": 2, "r": 1})
    j = loc.target().module({"p": 3})
    assert loc.contract_module(j) == D3.module({"p": 3})
    # contraction meets the ring: negative target exponents clamp away
    frac = loc.target().module({"p": -2, "r": 1})
    assert loc.contract_module(frac) == D3.module({"r": 1})
    assert loc.contract_module(loc.target().full()) == D3.unit()


def test_valuation_overring_extend_contract():
    over = ValuationOverring(V3, 2)
    assert over.target() == V2
    i = V3.principal((1, 2, 5))
    assert over.extend_module(i) == V2.principal((1, 2))
    j = V2.principal((0, 3))
    assert over.contract_module(j) == V3.cut(2, (0, 3))
    # a fractional cut contracts into the ring
    frac = V2.principal((-1, 0))
    assert over.contract_module(frac) == V3.unit()
    with pytest.raises(ValidationError):
        ValuationOverring(V3, 4)
    with pytest.raises(ValidationError):
        ValuationOverring(VQ, 2)


def test_contracted_and_extended_values():
    loc = DedekindLocalization(D3, ("p", "r"))
    inner_t = PrimeTable.make(loc.target(), {"p": 1, "r": 4})
    nu_c = Contracted(loc, inner_t)
    assert nu_c.ring == D3
    assert nu_c.value(D3.module({"q": 2})) is INF   # extends to the unit
    assert nu_c.value(D3.module({"p": 1, "q": 1})) == 1
    inner_s = PrimeTable.make(D3, {"p": 2, "q": 1, "r": 3})
    nu_e = Extended(loc, inner_s)
    assert nu_e.ring == loc.target()
    assert nu_e.value(loc.target().module({"r": 2})) == 3
    assert nu_e.value(loc.target().module({"p": 1, "r": 1})) == 2
    with pytest.raises(ValidationError):
        Contracted(loc, inner_s)
    with pytest.raises(ValidationError):
        Extended(loc, inner_t)


def test_transport_composition_identities_small():
    """Contract-extend-contract equals contract, extend-contract-extend
    equals extend, pointwise on sampled ideals."""
    rng = random.Random(41)
    maps = [DedekindLocalization(D3, ("p", "q")),
            DedekindLocalization(D3, ("q",)),
            ValuationOverring(V3, 1), ValuationOverring(V3, 2)]
    for m in maps:
        src, tgt = m.source, m.target()
        if isinstance(m, DedekindLocalization):
            inner_src = PrimeTable.make(src, {p: i + 1 for i, p in
                                              enumerate(src.primes)})
            inner_tgt = PrimeTable.make(tgt, {p: i + 2 for i, p in
                                              enumerate(tgt.primes)})
        else:
            inner_src = Induced.make(src, {
                ValuationPrime(k): k for k in range(1, src.group.rank + 1)})
            inner_tgt = Induced.make(tgt, {
                ValuationPrime(k): k + 1 for k in range(1, tgt.group.rank + 1)})
        e = Extended(m, inner_src)
        ece = Extended(m, Contracted(m, e))
        for j in tgt.sample_ideals(rng, 30):
            if not j.is_integral():
                continue
            assert ece.value(j) == e.value(j), (m.name(), str(j))
        c = Contracted(m, inner_tgt)
        cec = Contracted(m, Extended(m, c))
        for i in src.sample_ideals(rng, 30):
            if not i.is_integral():
                continue
            assert cec.value(i) == c.value(i), (m.name(), str(i))


# -- the axiom audit ---------------------------------------------------------------------


MATRIX_SPOT = [
    PrimeTable.make(D2, {"p": 1, "q": 2}),
    PrimeTable.make(D3, {"p": 0, "q": INF, "r": 3}),
    Induced.make(V2, {ValuationPrime(1): 1, ValuationPrime(2): 3}),
    Induced.make(VO, {ValuationPrime(1): 1, ValuationPrime(INF): INF}),
    Induced.make(VQ, {ValuationPrime(1): 2}),
    PGrade(R3),
    PGrade(VO),
    FromLS(D2, PrimeCut(D2, DedekindPrime("p"))),
    FromLS(R3, ValuationLevel(R3, PGrade(R3), 2)),
    FromLS(V2, GeneratedByFG(V2, (V2.maximal_ideal(),))),
]


@pytest.mark.parametrize("nu", MATRIX_SPOT, ids=lambda v: v.name())
def test_axiom_audit_passes_for_builtin_valuations(nu):
    report = check_axioms(nu, random.Random(19), samples=60)
    bad = [entry for entry in report if entry["status"] != "pass"]
    assert not bad, bad


def test_axiom_audit_reports_every_law_once():
    report = check_axioms(PGrade(R3), random.Random(2), samples=20)
    laws = [entry["law"] for entry in report]
    assert laws == ["zero-and-unit", "product-min", "intersection-min",
                    "monotone", "power", "radical", "fg-supremum"]


def test_nonzero_prime_refs_per_model():
    assert nonzero_prime_refs(D2) == D2.prime_refs()
    assert ValuationPrime(INF) in nonzero_prime_refs(VO)
    assert len(nonzero_prime_refs(R3)) == 7
