"""Extended integers: two totally ordered sentinels INF and NEG_INF.

Valuations take values in the naturals extended by infinity, and Dedekind
module exponents extend the integers downward by minus infinity.  Both
sentinels compare correctly against ints and against each other, so the
builtin ``min``, ``max`` and ``sorted`` work on mixed lists.  Arithmetic is
only defined where it is unambiguous (INF + n, INF + INF, and the negations);
anything indeterminate raises.
"""

from __future__ import annotations

from .errors import IvlabError


class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("ivlab.INF")

    def __lt__(self, other):
        self._check(other)
        return False

    def __le__(self, other):
        self._check(other)
        return other is self

    def __gt__(self, other):
        self._check(other)
        return other is not self

    def __ge__(self, other):
        self._check(other)
        return True

    def __add__(self, other):
        if other is NEG_INF:
            raise IvlabError("INF + NEG_INF is indeterminate")
        self._check(other)
        return self

    __radd__ = __add__

    def __neg__(self):
        return NEG_INF

    @staticmethod
    def _check(other):
        if not (isinstance(other, int) or other is INF or other is NEG_INF):
            raise TypeError(f"cannot compare extended integer with {other!r}")


class _NegInfinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NEG_INF"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("ivlab.NEG_INF")

    def __lt__(self, other):
        _Infinity._check(other)
        return other is not self

    def __le__(self, other):
        _Infinity._check(other)
        return True

    def __gt__(self, other):
        _Infinity._check(other)
        return False

    def __ge__(self, other):
        _Infinity._check(other)
        return other is self

    def __add__(self, other):
        if other is INF:
            raise IvlabError("NEG_INF + INF is indeterminate")
        _Infinity._check(other)
        return self

    __radd__ = __add__

    def __neg__(self):
        return INF


INF = _Infinity()
NEG_INF = _NegInfinity()


def is_extnat(x) -> bool:
    """True for a natural number or INF: the value set of an ideal valuation."""
    return x is INF or (isinstance(x, int) and x >= 0)


def fmt_ext(x) -> str:
    """Render an extended integer for reports: sentinels become words."""
    if x is INF:
        return "inf"
    if x is NEG_INF:
        return "neg_inf"
    return str(x)


def parse_ext(tok: str):
    """Inverse of fmt_ext for the token forms accepted in expressions."""
    t = tok.strip().lower()
    if t in ("inf", "infinity", "oo"):
        return INF
    if t in ("neg_inf", "-inf", "-oo"):
        return NEG_INF
    return int(tok)
