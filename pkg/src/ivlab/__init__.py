"""Exact workbench for ideal valuations, localizing systems, and semistar
closure operations, over three computable integral-domain models: Dedekind
models on finite labeled prime sets, valuation models on lexicographic
value groups, and monomial models in finitely many variables."""

from .cuts import TOP, CutModule, ValuationRing
from .dedekind import DedekindModule, DedekindRing
from .errors import IvlabError, UsageError, ValidationError
from .extnat import INF, NEG_INF, fmt_ext, is_extnat, parse_ext
from .families import (ChainEquivalenceReport, FiniteTypeReport, OpFamily,
                       RangeReport, chain_equivalences, family_closure,
                       is_finite_type, model_rank, range_bound)
from .groups import LexZ, LexZOmega, Rationals, group_from_token
from .localizing import GeneratedByFG, PrimeCut, ValuationLevel
from .monomial import MonomialModule, MonomialRing
from .primes import (DedekindPrime, MonomialPrime, PrimeRef, ValuationPrime,
                     ZeroPrime)
from .semistar import (ChainValuation, ConstantTail, IncreasingLevelsTail,
                       LevelOp, LevelTail, LSOp, OpD, OpE, OpV, OpW,
                       SemistarChain, SpectralOp, SpectralTail,
                       chain_from_prime_data, chain_from_valuation,
                       op_equals, prime_data_from_chain,
                       valuation_from_chain)
from .valuations import (Contracted, DedekindLocalization, Extended, FromLS,
                         Induced, PGrade, PrimeTable, ValuationOverring,
                         check_axioms)

__version__ = "0.1.0"
