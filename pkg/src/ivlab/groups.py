"""Totally ordered abelian value groups.

Three concrete groups drive the valuation-domain model:

* ``LexZ(n)``   -- Z^n under lexicographic order (rank n, discrete).
* ``LexZOmega`` -- finitely supported Z^omega under lexicographic order.
* ``Rationals`` -- Q with its usual order (rank 1, dense).

Elements are plain data: int tuples for LexZ, ascending ``(index, value)``
pair tuples with nonzero values for LexZOmega, and ``fractions.Fraction``
for Rationals.  Each group exposes the same small protocol: arithmetic,
comparison, leading level (position of the first nonzero coordinate, which
indexes the convex-subgroup chain), dense prefixes, and deterministic
element sampling for tests.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import ValidationError

# ---------------------------------------------------------------------------
# group classes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LexZ:
    rank: int

    def __post_init__(self):
        if self.rank < 1:
            raise ValidationError("LexZ rank must be >= 1")

    def name(self) -> str:
        return f"lexZ({self.rank})"

    def zero(self):
        return (0,) * self.rank

    def check(self, x):
        if not (isinstance(x, tuple) and len(x) == self.rank
                and all(isinstance(c, int) for c in x)):
            raise ValidationError(f"not a lexZ({self.rank}) element: {x!r}")
        return x

    def add(self, x, y):
        return tuple(a + b for a, b in zip(x, y))

    def neg(self, x):
        return tuple(-a for a in x)

    def sub(self, x, y):
        return tuple(a - b for a, b in zip(x, y))

    def cmp(self, x, y) -> int:
        return (x > y) - (x < y)

    def is_zero(self, x) -> bool:
        return all(c == 0 for c in x)

    def leading_level(self, x) -> int:
        """1-based index of the first nonzero coordinate (x must be nonzero)."""
        for i, c in enumerate(x):
            if c != 0:
                return i + 1
        raise ValidationError("leading level of zero is undefined")

    def prefix(self, x, k: int):
        return tuple(x[:k])

    def unit_at(self, k: int):
        return tuple(1 if i == k - 1 else 0 for i in range(self.rank))

    def fmt_element(self, x) -> str:
        return "(" + ",".join(str(c) for c in x) + ")"

    def sample_elements(self, rng, count: int = 12):
        out = [self.zero(), self.unit_at(1), self.neg(self.unit_at(1)),
               self.unit_at(self.rank)]
        while len(out) < count:
            out.append(tuple(rng.randint(-3, 3) for _ in range(self.rank)))
        return out


@dataclass(frozen=True)
class LexZOmega:
    def name(self) -> str:
        return "lexZ(omega)"

    def zero(self):
        return ()

    def check(self, x):
        if not isinstance(x, tuple):
            raise ValidationError(f"not a lexZ(omega) element: {x!r}")
        last = 0
        for pair in x:
            if not (isinstance(pair, tuple) and len(pair) == 2):
                raise ValidationError(f"bad support pair: {pair!r}")
            idx, val = pair
            if not (isinstance(idx, int) and idx > last and isinstance(val, int)
                    and val != 0):
                raise ValidationError(f"bad support pair: {pair!r}")
            last = idx
        return x

    @staticmethod
    def make(pairs):
        """Canonicalize an iterable of (index, value) pairs."""
        acc: dict[int, int] = {}
        for idx, val in pairs:
            acc[idx] = acc.get(idx, 0) + val
        return tuple(sorted((i, v) for i, v in acc.items() if v != 0))

    def add(self, x, y):
        return self.make(itertools.chain(x, y))

    def neg(self, x):
        return tuple((i, -v) for i, v in x)

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def cmp(self, x, y) -> int:
        d = self.sub(x, y)
        if not d:
            return 0
        return 1 if d[0][1] > 0 else -1

    def is_zero(self, x) -> bool:
        return not x

    def leading_level(self, x) -> int:
        if not x:
            raise ValidationError("leading level of zero is undefined")
        return x[0][0]

    def coord(self, x, k: int) -> int:
        for i, v in x:
            if i == k:
                return v
        return 0

    def prefix(self, x, k: int):
        return tuple(self.coord(x, i) for i in range(1, k + 1))

    def unit_at(self, k: int):
        return ((k, 1),)

    def fmt_element(self, x) -> str:
        if not x:
            return "{}"
        return "{" + ", ".join(f"{i}:{v}" for i, v in x) + "}"

    def sample_elements(self, rng, count: int = 12):
        out = [self.zero(), self.unit_at(1), self.neg(self.unit_at(1)),
               self.unit_at(3)]
        while len(out) < count:
            pairs = [(rng.randint(1, 5), rng.randint(-3, 3)) for _ in range(3)]
            out.append(self.make(pairs))
        return out


@dataclass(frozen=True)
class Rationals:
    def name(self) -> str:
        return "Q"

    def zero(self):
        return Fraction(0)

    def check(self, x):
        if not isinstance(x, Fraction):
            raise ValidationError(f"not a rational element: {x!r}")
        return x

    def add(self, x, y):
        return x + y

    def neg(self, x):
        return -x

    def sub(self, x, y):
        return x - y

    def cmp(self, x, y) -> int:
        return (x > y) - (x < y)

    def is_zero(self, x) -> bool:
        return x == 0

    def leading_level(self, x) -> int:
        if x == 0:
            raise ValidationError("leading level of zero is undefined")
        return 1

    def unit_at(self, k: int):
        return Fraction(1)

    def fmt_element(self, x) -> str:
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"

    def sample_elements(self, rng, count: int = 12):
        out = [Fraction(0), Fraction(1), Fraction(-1), Fraction(1, 2)]
        while len(out) < count:
            out.append(Fraction(rng.randint(-6, 6), rng.randint(1, 6)))
        return out


Group = LexZ | LexZOmega | Rationals


def group_from_token(tok: str) -> Group:
    """Resolve the group names accepted in ring expressions."""
    t = tok.replace(" ", "").lower()
    if t == "q":
        return Rationals()
    if t in ("lexz(omega)", "lexzomega"):
        return LexZOmega()
    if t.startswith("lexz(") and t.endswith(")"):
        return LexZ(int(t[5:-1]))
    raise ValidationError(f"unknown value group: {tok!r}")
