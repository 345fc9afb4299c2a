"""Text forms for every object the command layer exchanges.

Each parse_* function accepts exactly the canonical text its printer
emits, plus surrounding whitespace; parse(print(x)) == x on every value
with a textual form.  Errors carry the line and column of the offending
token so a bad invocation fails the same way every time.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cuts import TOP, ValuationRing
from .dedekind import DedekindRing
from .errors import UsageError, ValidationError
from .extnat import INF, NEG_INF
from .families import OpFamily
from .groups import LexZ, LexZOmega, Rationals
from .localizing import GeneratedByFG, PrimeCut, ValuationLevel
from .monomial import MonomialRing
from .primes import (DedekindPrime, MonomialPrime, ValuationPrime, ZeroPrime)
from .semistar import (ConstantTail, IncreasingLevelsTail, LevelTail, LSOp,
                       LevelOp, OpD, OpE, OpV, OpW, SemistarChain,
                       SpectralOp, SpectralTail)
from .valuations import FromLS, Induced, PGrade, PrimeTable


class ParseError(UsageError):
    """Malformed or ill-typed input text."""


# ---------------------------------------------------------------------------
# tokens
# ---------------------------------------------------------------------------

_SYMBOLS = "{}()[]=,;^*:/"


@dataclass(frozen=True)
class _Token:
    kind: str      # "ident" | "int" | "symbol" | "end"
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    line, col = 1, 1
    i = 0
    while i < len(text):
        c = text[i]
        if c == "\n":
            line, col = line + 1, 1
            i += 1
            continue
        if c.isspace():
            col += 1
            i += 1
            continue
        start_col = col
        if c.isalpha() or c == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(_Token("ident", text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if c.isdigit() or (c == "-" and i + 1 < len(text)
                           and text[i + 1].isdigit()):
            j = i + 1
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(_Token("int", text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if c in _SYMBOLS:
            tokens.append(_Token("symbol", c, line, start_col))
            col += 1
            i += 1
            continue
        raise ParseError(
            f"parse error at line {line}, column {col}: "
            f"unexpected character {c!r}")
    tokens.append(_Token("end", "", line, col))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    # -- plumbing ------------------------------------------------------------

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def next(self) -> _Token:
        tok = self.tokens[self.pos]
        if tok.kind != "end":
            self.pos += 1
        return tok

    def fail(self, detail: str):
        tok = self.peek()
        where = f"line {tok.line}, column {tok.col}"
        shown = tok.text if tok.kind != "end" else "end of input"
        raise ParseError(f"parse error at {where}: {detail} (got {shown!r})")

    def semantic(self, detail: str, tok: _Token):
        raise ParseError(
            f"semantic error at line {tok.line}, column {tok.col}: {detail}")

    def expect(self, text: str) -> _Token:
        tok = self.peek()
        if tok.text != text:
            self.fail(f"expected {text!r}")
        return self.next()

    def accept(self, text: str) -> bool:
        if self.peek().text == text:
            self.next()
            return True
        return False

    def ident(self, what: str = "a name") -> _Token:
        tok = self.peek()
        if tok.kind != "ident":
            self.fail(f"expected {what}")
        return self.next()

    def integer(self) -> int:
        tok = self.peek()
        if tok.kind != "int":
            self.fail("expected an integer")
        return int(self.next().text)

    def done(self):
        if self.peek().kind != "end":
            self.fail("expected end of input")

    # -- shared scalars --------------------------------------------------------

    def extnat(self):
        """A natural number or 'inf'."""
        tok = self.peek()
        if tok.text in ("inf", "infinity"):
            self.next()
            return INF
        n = self.integer()
        if n < 0:
            self.semantic("expected a natural number or inf", tok)
        return n

    def extint(self):
        """An integer, 'neg_inf', or 'inf' (module exponents)."""
        tok = self.peek()
        if tok.text == "neg_inf":
            self.next()
            return NEG_INF
        if tok.text in ("inf", "infinity"):
            self.next()
            return INF
        return self.integer()

    def fraction(self) -> Fraction:
        num = self.integer()
        if self.accept("/"):
            den = self.integer()
            if den == 0:
                self.semantic("zero denominator", self.peek())
            return Fraction(num, den)
        return Fraction(num)

    def int_tuple(self) -> tuple:
        """Parenthesized comma-separated integers: (a,b,c)."""
        self.expect("(")
        out = [self.integer()]
        while self.accept(","):
            out.append(self.integer())
        self.expect(")")
        return tuple(out)

    def sparse_pairs(self, close: str) -> tuple:
        """Comma-separated index:value pairs up to the closing symbol."""
        out = []
        while self.peek().text != close:
            idx = self.integer()
            self.expect(":")
            out.append((idx, self.integer()))
            if not self.accept(","):
                break
        self.expect(close)
        return tuple(out)


# ---------------------------------------------------------------------------
# rings
# ---------------------------------------------------------------------------

def parse_ring(text: str):
    p = _Parser(text)
    ring = _ring(p)
    p.done()
    return ring


def _ring(p: _Parser):
    head = p.ident("a ring kind")
    if head.text == "dedekind":
        p.expect("{")
        labels = [p.ident("a prime label").text]
        while p.accept(","):
            labels.append(p.ident("a prime label").text)
        p.expect("}")
        if len(set(labels)) != len(labels):
            p.semantic("repeated prime label", head)
        return DedekindRing(tuple(labels))
    if head.text == "valuation":
        p.expect("{")
        key = p.ident("'group'")
        if key.text != "group":
            p.semantic("expected group=...", key)
        p.expect("=")
        ring = ValuationRing(_group(p))
        p.expect("}")
        return ring
    if head.text == "monomial":
        p.expect("{")
        key = p.ident("'vars'")
        if key.text != "vars":
            p.semantic("expected vars=[...]", key)
        p.expect("=")
        p.expect("[")
        names = [p.ident("a variable").text]
        while p.accept(","):
            names.append(p.ident("a variable").text)
        p.expect("]")
        p.expect("}")
        ring = MonomialRing(len(names))
        if tuple(names) != ring.var_names():
            p.semantic(
                "variables must be named "
                + ",".join(ring.var_names()), key)
        return ring
    p.semantic(f"unknown ring kind {head.text!r}", head)


def _group(p: _Parser):
    tok = p.ident("a value group")
    if tok.text == "lexZ":
        p.expect("(")
        if p.accept("omega"):
            p.expect(")")
            return LexZOmega()
        rank = p.integer()
        p.expect(")")
        if rank < 1:
            p.semantic("rank must be at least 1", tok)
        return LexZ(rank)
    if tok.text == "Q":
        return Rationals()
    p.semantic(f"unknown value group {tok.text!r}", tok)


# ---------------------------------------------------------------------------
# modules
# ---------------------------------------------------------------------------

def parse_module(text: str, ring):
    """A module in the ring's canonical text form (ideals included)."""
    p = _Parser(text)
    mod = _module(p, ring)
    p.done()
    return mod


def parse_ideal(text: str, ring):
    """A module required to sit inside the ring."""
    mod = parse_module(text, ring)
    if not mod.is_integral():
        raise ParseError(
            f"semantic error: {text.strip()!r} is not an integral ideal")
    return mod


def _module(p: _Parser, ring):
    tok = p.peek()
    if tok.text == "zero":
        p.next()
        return ring.zero()
    if tok.text == "fullfield":
        p.next()
        return ring.full()
    if tok.text == "unit":
        p.next()
        return ring.unit()
    if isinstance(ring, DedekindRing):
        return _dedekind_module(p, ring)
    if isinstance(ring, ValuationRing):
        return _cut_module(p, ring)
    return _monomial_module(p, ring)


def _dedekind_module(p: _Parser, ring):
    exps = {}
    while True:
        tok = p.ident("a prime label")
        if tok.text not in ring.primes:
            p.semantic(f"unknown prime {tok.text!r}", tok)
        if tok.text in exps:
            p.semantic(f"repeated prime {tok.text!r}", tok)
        exps[tok.text] = p.extint() if p.accept("^") else 1
        if not p.accept("*"):
            break
    return ring.module(exps)


def _cut_module(p: _Parser, ring):
    group = ring.group
    tok = p.peek()
    if tok.text == "maxideal":
        p.next()
        return ring.maximal_ideal()
    if tok.text == "prime":
        p.next()
        p.expect("(")
        level = p.extnat()
        p.expect(")")
        if level == 0:
            p.semantic("prime levels start at 1", tok)
        return ring.prime_ideal(level)
    if tok.text == "principal":
        p.next()
        if isinstance(group, Rationals):
            p.expect("(")
            value = p.fraction()
            p.expect(")")
            return ring.principal(value)
        if isinstance(group, LexZ):
            elem = p.int_tuple()
            if len(elem) != group.rank:
                p.semantic(f"expected {group.rank} coordinates", tok)
            return ring.principal(elem)
        p.expect("(")
        return ring.principal(p.sparse_pairs(")"))
    if tok.text == "cut":
        p.next()
        return _cut_body(p, ring, tok)
    p.fail("expected a module")


def _cut_body(p: _Parser, ring, head: _Token):
    group = ring.group
    p.expect("(")
    if isinstance(group, Rationals):
        p.expect("t")
        p.expect("=")
        threshold = p.fraction()
        strict = p.accept(",") and p.expect("strict") is not None
        p.expect(")")
        return ring.cut(TOP, threshold, strict)
    key = p.ident("'level'")
    if key.text != "level":
        p.semantic("expected level=...", key)
    p.expect("=")
    if p.accept("top"):
        if not isinstance(group, LexZOmega):
            p.semantic("level top exists only at rank omega", head)
        level = TOP
    else:
        level = p.integer()
    p.expect(",")
    p.expect("t")
    p.expect("=")
    if level is TOP:
        p.expect("{")
        threshold = p.sparse_pairs("}")
    else:
        threshold = p.int_tuple()
    strict = p.accept(",") and p.expect("strict") is not None
    p.expect(")")
    return ring.cut(level, threshold, strict)


def _monomial_module(p: _Parser, ring):
    p.expect("(")
    gens = [_monomial(p, ring)]
    while p.accept(","):
        gens.append(_monomial(p, ring))
    p.expect(")")
    return ring.module(gens)


def _monomial(p: _Parser, ring) -> tuple:
    names = ring.var_names()
    if p.peek().text == "1":
        p.next()
        return (0,) * ring.num_vars
    exps = dict.fromkeys(names, 0)
    while True:
        tok = p.ident("a variable")
        if tok.text not in exps:
            p.semantic(f"unknown variable {tok.text!r}", tok)
        if exps[tok.text] != 0:
            p.semantic(f"repeated variable {tok.text!r}", tok)
        exps[tok.text] = p.integer() if p.accept("^") else 1
        if not p.accept("*"):
            break
    return tuple(exps[n] for n in names)


# ---------------------------------------------------------------------------
# prime references
# ---------------------------------------------------------------------------

def parse_prime_ref(text: str, ring):
    p = _Parser(text)
    ref = _prime_ref(p, ring)
    p.done()
    return ref


def _prime_ref(p: _Parser, ring):
    tok = p.peek()
    if tok.text == "0":
        p.next()
        return ZeroPrime()
    if isinstance(ring, DedekindRing):
        label = p.ident("a prime label")
        if label.text not in ring.primes:
            p.semantic(f"unknown prime {label.text!r}", label)
        return DedekindPrime(label.text)
    if isinstance(ring, ValuationRing):
        if p.accept("maxideal"):
            return ring.max_prime_ref()
        p.expect("prime")
        p.expect("(")
        level = p.extnat()
        p.expect(")")
        if level == 0:
            p.semantic("prime levels start at 1", tok)
        return ValuationPrime(level)
    p.expect("(")
    names = [p.ident("a variable").text]
    while p.accept(","):
        names.append(p.ident("a variable").text)
    p.expect(")")
    for name in names:
        if name not in ring.var_names():
            p.semantic(f"unknown variable {name!r}", tok)
    if tuple(sorted(names)) != tuple(names) or len(set(names)) != len(names):
        p.semantic("prime variables must be distinct and sorted", tok)
    return MonomialPrime(tuple(names))


# ---------------------------------------------------------------------------
# valuations and localizing systems
# ---------------------------------------------------------------------------

def parse_valuation(text: str, ring):
    p = _Parser(text)
    val = _valuation(p, ring)
    p.done()
    return val


def _valuation(p: _Parser, ring):
    tok = p.peek()
    if tok.text == "pgrade":
        p.next()
        return PGrade(ring)
    if tok.text == "primes":
        p.next()
        if not isinstance(ring, DedekindRing):
            p.semantic("prime tables describe Dedekind models", tok)
        p.expect("{")
        table = {}
        while not p.accept("}"):
            label = p.ident("a prime label")
            p.expect("=")
            if label.text in table:
                p.semantic(f"repeated prime {label.text!r}", label)
            table[label.text] = p.extnat()
            if not p.accept(","):
                p.expect("}")
                break
        return _build(PrimeTable.make, p, tok, ring, table)
    if tok.text == "induced":
        p.next()
        p.expect("{")
        table = {}
        while not p.accept("}"):
            ref = _prime_ref(p, ring)
            p.expect("=")
            if ref in table:
                p.semantic(f"repeated prime {ref}", tok)
            table[ref] = p.extnat()
            if not p.accept(","):
                p.expect("}")
                break
        return _build(Induced.make, p, tok, ring, table)
    if tok.text == "fromls":
        p.next()
        p.expect("{")
        system = _system(p, ring)
        p.expect("}")
        return _build(FromLS, p, tok, ring, system)
    p.semantic(f"unknown valuation {tok.text!r}", tok)


def _build(ctor, p: _Parser, tok: _Token, *args):
    """Constructor validation failures become semantic errors at the
    construct's position."""
    try:
        return ctor(*args)
    except (ValidationError, UsageError) as err:
        p.semantic(str(err), tok)


def parse_system(text: str, ring):
    p = _Parser(text)
    system = _system(p, ring)
    p.done()
    return system


def _system(p: _Parser, ring):
    tok = p.peek()
    if tok.text == "gens":
        p.next()
        p.expect("[")
        gens = [_module(p, ring)]
        while p.accept(";"):
            gens.append(_module(p, ring))
        p.expect("]")
        return _build(GeneratedByFG, p, tok, ring, tuple(gens))
    if tok.text == "primecut":
        p.next()
        p.expect("(")
        ref = _prime_ref(p, ring)
        p.expect(")")
        return _build(PrimeCut, p, tok, ring, ref)
    if tok.text == "level":
        p.next()
        p.expect("(")
        val = _valuation(p, ring)
        p.expect(",")
        n = p.integer()
        p.expect(")")
        return _build(ValuationLevel, p, tok, ring, val, n)
    p.semantic(f"unknown localizing system {tok.text!r}", tok)


# ---------------------------------------------------------------------------
# closure operations, chains, families
# ---------------------------------------------------------------------------

def parse_op(text: str, ring, default_level=None):
    p = _Parser(text)
    op = _op(p, ring, default_level)
    p.done()
    return op


def _op(p: _Parser, ring, default_level=None):
    tok = p.peek()
    plain = {"d": OpD, "e": OpE, "v": OpV, "w": OpW}
    if tok.text in plain:
        p.next()
        return plain[tok.text](ring)
    if tok.text == "level":
        p.next()
        p.expect("(")
        val = _valuation(p, ring)
        if p.accept(","):
            n = p.integer()
        elif default_level is not None:
            n = default_level
        else:
            p.semantic("level op needs a level: level(v, n) or --n", tok)
        p.expect(")")
        return _build(LevelOp, p, tok, ring, val, n)
    if tok.text == "spectral":
        p.next()
        p.expect("{")
        refs = [_prime_ref(p, ring)]
        while p.accept(";"):
            refs.append(_prime_ref(p, ring))
        p.expect("}")
        return _build(SpectralOp, p, tok, ring, tuple(refs))
    if tok.text == "lsop":
        p.next()
        p.expect("{")
        system = _system(p, ring)
        p.expect("}")
        return _build(LSOp, p, tok, ring, system)
    p.semantic(f"unknown closure operation {tok.text!r}", tok)


def parse_chain(text: str, ring):
    p = _Parser(text)
    head = p.expect("chain")
    p.expect("{")
    p.expect("prefix")
    p.expect("=")
    p.expect("[")
    prefix = [_op(p, ring)]
    while p.accept(";"):
        prefix.append(_op(p, ring))
    p.expect("]")
    p.expect(",")
    p.expect("tail")
    p.expect("=")
    tail = _tail(p, ring)
    p.expect("}")
    p.done()
    return _build(SemistarChain, p, head, ring, tuple(prefix), tail)


def _tail(p: _Parser, ring):
    tok = p.peek()
    if tok.text == "constant":
        p.next()
        return ConstantTail()
    if tok.text == "levels":
        p.next()
        p.expect("(")
        val = _valuation(p, ring)
        p.expect(")")
        return LevelTail(val)
    if tok.text == "spectral":
        p.next()
        p.expect("(")
        entries = []
        while not p.accept(")"):
            ref = _prime_ref(p, ring)
            p.expect("=")
            entries.append((ref, p.extnat()))
            if not p.accept(","):
                p.expect(")")
                break
        return _build(SpectralTail, p, tok, tuple(entries))
    if tok.text == "increasing":
        p.next()
        p.expect("(")
        start = p.integer()
        p.expect(")")
        return _build(IncreasingLevelsTail, p, tok, start)
    p.semantic(f"unknown tail {tok.text!r}", tok)


def parse_family(text: str, ring):
    p = _Parser(text)
    head = p.expect("levels")
    p.expect("=")
    p.expect("[")
    levels = []
    while not p.accept("]"):
        levels.append(p.extnat())
        if not p.accept(","):
            p.expect("]")
            break
    p.expect(";")
    p.expect("tail")
    p.expect("=")
    tail = p.ident("'constant' or 'increasing'")
    if tail.text not in ("constant", "increasing"):
        p.semantic(f"unknown tail {tail.text!r}", tail)
    p.done()
    refs = tuple(ZeroPrime() if lv == 0 else ValuationPrime(lv)
                 for lv in levels)
    return _build(OpFamily, p, head, ring, refs, tail.text)
