"""Families of localization closures, the finite-type report, the
four-way chain equivalence report, and the value-range bound."""

import random
from fractions import Fraction

import pytest

from ivlab import INF, UsageError, ValidationError
from ivlab.cuts import ValuationRing
from ivlab.families import (ChainEquivalenceReport, FiniteTypeReport,
                            OpFamily, RangeReport, chain_equivalences,
                            family_closure, is_finite_type, model_rank,
                            range_bound)
from ivlab.groups import LexZ, LexZOmega, Rationals
from ivlab.monomial import MonomialRing
from ivlab.primes import ValuationPrime, ZeroPrime
from ivlab.semistar import (IncreasingLevelsTail, OpE, SemistarChain,
                            chain_from_prime_data, chain_from_valuation,
                            valuation_from_chain)
from ivlab.valuations import Induced, PGrade

V2 = ValuationRing(LexZ(2))
V3 = ValuationRing(LexZ(3))
VO = ValuationRing(LexZOmega())
VQ = ValuationRing(Rationals())
R3 = MonomialRing(3)


# -- family construction ---------------------------------------------------------


def test_family_construction_rejections():
    with pytest.raises(ValidationError):
        OpFamily(R3, (R3.prime_ref((0,)),))
    with pytest.raises(ValidationError):
        OpFamily(V2, (ValuationPrime(1),), "weird")
    with pytest.raises(ValidationError):
        OpFamily(V2, (), "constant")
    with pytest.raises(ValidationError):
        OpFamily(V2, (ValuationPrime(1),), "increasing")
    with pytest.raises(ValidationError):
        OpFamily(VO, (ValuationPrime(INF),), "increasing")
    with pytest.raises(ValidationError):
        OpFamily(VO, (ValuationPrime(3), ValuationPrime(2)), "increasing")


def test_family_sup_and_probes():
    fam = OpFamily(V3, (ValuationPrime(1), ValuationPrime(3)))
    assert fam.sup_ref() == ValuationPrime(3)
    assert fam.probe_refs() == fam.primes
    inc = OpFamily(VO, (ValuationPrime(2),), "increasing")
    assert inc.sup_ref() == ValuationPrime(INF)
    probes = inc.probe_refs()
    assert probes[0] == ValuationPrime(2)
    assert [p.level for p in probes[1:]] == [3, 4, 5, 6]
    assert fam.name() == "levels=[1, 3]; tail=constant"


# -- the closure ------------------------------------------------------------------


def test_finite_family_closure_is_the_top_localization():
    fam = OpFamily(V3, (ValuationPrime(1), ValuationPrime(2)))
    i = V3.principal((1, 2, 3))
    assert family_closure(fam, i) == i.localize(ValuationPrime(2))
    assert family_closure(fam, V3.zero()).is_zero()
    assert family_closure(fam, V3.full()).is_full()
    with pytest.raises(UsageError):
        family_closure(fam, V2.unit())


def test_increasing_family_closure_is_the_limit_of_truncations():
    fam = OpFamily(VO, (), "increasing")
    rng = random.Random(3)
    for e in VO.sample_ideals(rng, 12):
        if e.is_zero():
            continue
        closed = family_closure(fam, e)
        assert closed.contains(e)
        # the closure sits inside every single truncation
        for k in (1, 2, 3, 6):
            assert e.localize(ValuationPrime(k)).contains(closed), str(e)
    # principals are already intersections of their truncations
    x = VO.group.make([(2, 1)])
    assert family_closure(fam, VO.principal(x)) == VO.principal(x)
    assert family_closure(fam, VO.maximal_ideal()) == VO.unit()


# -- finite-type reports ------------------------------------------------------------


def test_finite_family_is_finite_type_with_witness():
    fam = OpFamily(V2, (ValuationPrime(1), ValuationPrime(2)))
    report = is_finite_type(fam, random.Random(7))
    assert report.verdict is True
    assert report.witness == ValuationPrime(2)
    keys = [k for k, _ in report.diagnostics]
    assert "supremum-attained" in keys
    assert dict(report.diagnostics)["closure-matches-witness-localization"] \
        == "true"


def test_increasing_family_is_not_finite_type():
    fam = OpFamily(VO, (), "increasing")
    report = is_finite_type(fam, random.Random(7))
    assert report.verdict is False
    assert report.witness is None
    diag = dict(report.diagnostics)
    assert diag["supremum-attained"] == "false"
    assert diag["intersection-system-members-are-unit-or-maximal"] == "true"


def test_report_consistency_enforced():
    with pytest.raises(ValidationError):
        FiniteTypeReport(True, None, ())
    with pytest.raises(ValidationError):
        FiniteTypeReport(False, ValuationPrime(1), ())


# -- chain equivalences ----------------------------------------------------------------


def test_constant_tail_chain_reports_four_way_agreement():
    chain = chain_from_prime_data(V2, {ValuationPrime(1): 1,
                                       ValuationPrime(2): 2})
    report = chain_equivalences(chain, random.Random(11))
    assert report.agree is True
    assert report.verdict is True
    assert dict(report.conditions) == {
        "limit-op-finite-type": True,
        "valuation-range-finite": True,
        "intersection-system-finite-type": True,
        "levels-stabilize": True,
    }
    assert report.m == 2
    assert any("prime(2)" in line for line in report.trace)


def test_increasing_chain_reports_four_way_failure():
    chain = SemistarChain(VO, (OpE(VO),), IncreasingLevelsTail(1))
    report = chain_equivalences(chain, random.Random(13))
    assert report.agree is True
    assert report.verdict is False
    assert all(value is False for _, value in report.conditions)
    assert report.m is None


def test_rank_one_rational_chain_reports_agreement():
    chain = chain_from_prime_data(VQ, {ValuationPrime(1): 2})
    report = chain_equivalences(chain, random.Random(17))
    assert report.agree is True
    assert report.verdict is True
    assert report.m is not None


def test_chain_equivalences_rejects_other_models():
    chain = chain_from_valuation(PGrade(R3))
    with pytest.raises(UsageError):
        chain_equivalences(chain, random.Random(0))


def test_report_as_dict_shape():
    chain = chain_from_prime_data(V2, {ValuationPrime(1): 1})
    report = chain_equivalences(chain, random.Random(19))
    data = report.as_dict()
    assert set(data) == {"conditions", "agree", "verdict", "m", "trace"}
    assert isinstance(data["conditions"], dict)
    assert len(data["conditions"]) == 4


# -- range bound ------------------------------------------------------------------------


def test_model_ranks():
    assert model_rank(V3) == 3
    assert model_rank(VQ) == 1
    assert model_rank(VO) is INF


def test_pgrade_range_meets_the_bound_exactly():
    report = range_bound(PGrade(V3), random.Random(23))
    assert report.verdict is True
    assert report.bound == 4
    assert report.realized == ("0", "1", "2", "3", "inf")
    assert report.finite_count == 4
    # each positive value is witnessed by the prime just below it
    assert dict(report.witness_primes)[1] == str(ZeroPrime())
    assert dict(report.witness_primes)[2] == str(ValuationPrime(1))
    assert dict(report.witness_primes)[3] == str(ValuationPrime(2))


def test_flat_valuation_realizes_few_values():
    nu = Induced.make(V3, {ValuationPrime(k): 2 for k in (1, 2, 3)})
    report = range_bound(nu, random.Random(29))
    assert report.verdict is True
    assert report.realized == ("0", "2", "inf")
    assert report.finite_count == 2


def test_range_bound_rejects_unbounded_models():
    with pytest.raises(UsageError):
        range_bound(PGrade(VO), random.Random(0))
    with pytest.raises(UsageError):
        range_bound(PGrade(R3), random.Random(0))
