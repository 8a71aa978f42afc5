"""Alphabets, letters, words, noncommutative polynomials and tensors over Q.

A :class:`Signature` declares the shape of a letter as an ordered tuple of
slots.  Letters are interned, so two letters are equal exactly when they are
the same object; words are plain tuples of letters (the empty tuple is the
monoid unit).  Coefficients are ``gmpy2.mpq`` values.

Text forms::

    y3                      single Weight slot
    x[1/2]                  single Colour slot
    (y2,z[-1/3],x[1/2])     Weight x Centre x Colour
    y1.y2                   a word
    2 y1.y1 - 1/2 y2 + 3    a polynomial (bare rational = constant term)
"""

from __future__ import annotations

import enum
import numbers
import re
from collections.abc import Iterable, Mapping
from dataclasses import dataclass

from gmpy2 import mpq

from .errors import DomainError, ParseError, SignatureMismatch

Rational = type(mpq())
ZERO = mpq(0)
ONE = mpq(1)
NEG_INF = float("-inf")

_RATIONAL_RE = re.compile(r"\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*\Z")
_SYMBOL_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\Z")


def rational(x) -> Rational:
    """Coerce ``x`` to an exact rational.  Floats are rejected."""
    if isinstance(x, Rational):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(x, int):
        return mpq(x)
    if isinstance(x, str):
        m = _RATIONAL_RE.match(x)
        if not m:
            raise ParseError("not a rational", x, 0)
        den = int(m.group(2)) if m.group(2) else 1
        if den == 0:
            raise ParseError("zero denominator", x, 0)
        return mpq(int(m.group(1)), den)
    if isinstance(x, numbers.Rational):
        return mpq(x.numerator, x.denominator)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


def rational_text(q) -> str:
    return str(rational(q))


class SlotKind(enum.Enum):
    WEIGHT = "weight"
    COLOUR = "colour"
    CENTRE = "centre"
    ENUM = "enum"


@dataclass(frozen=True)
class Slot:
    kind: SlotKind
    symbols: tuple[str, ...] = ()
    # partial semigroup table as (left, right, product) triples
    table: tuple[tuple[str, str, str], ...] = ()

    def __post_init__(self):
        if self.kind is SlotKind.ENUM:
            if not self.symbols:
                raise ValueError("an Enum slot needs at least one symbol")
            if len(set(self.symbols)) != len(self.symbols):
                raise ValueError(f"duplicate Enum symbols in {self.symbols}")
            for s in self.symbols:
                if not _SYMBOL_RE.match(s):
                    raise ValueError(f"bad Enum symbol {s!r}")
            seen = set()
            for a, b, c in self.table:
                if not {a, b, c} <= set(self.symbols):
                    raise ValueError(f"table entry {a} {b} -> {c} uses unknown symbols")
                if (a, b) in seen:
                    raise ValueError(f"table entry for ({a}, {b}) given twice")
                seen.add((a, b))
        elif self.symbols or self.table:
            raise ValueError("only Enum slots carry symbols or tables")

    def __str__(self):
        if self.kind is SlotKind.ENUM:
            return "enum(" + "<".join(self.symbols) + ")"
        return self.kind.value


_KIND_ALIASES = {
    "weight": SlotKind.WEIGHT,
    "y": SlotKind.WEIGHT,
    "colour": SlotKind.COLOUR,
    "color": SlotKind.COLOUR,
    "x": SlotKind.COLOUR,
    "centre": SlotKind.CENTRE,
    "center": SlotKind.CENTRE,
    "z": SlotKind.CENTRE,
}


@dataclass(frozen=True)
class Signature:
    """Ordered tuple of slots describing one letter."""

    slots: tuple[Slot, ...]

    def __post_init__(self):
        if not self.slots:
            raise ValueError("a signature needs at least one slot")
        object.__setattr__(self, "_hash", hash(self.slots))
        ranks = [
            {s: i for i, s in enumerate(slot.symbols)} if slot.kind is SlotKind.ENUM else None
            for slot in self.slots
        ]
        object.__setattr__(self, "_ranks", ranks)

    def __hash__(self):
        return self._hash

    @classmethod
    def of(cls, *kinds) -> Signature:
        """``Signature.of("weight", "centre")``."""
        slots = []
        for k in kinds:
            if isinstance(k, Slot):
                slots.append(k)
            elif isinstance(k, SlotKind):
                slots.append(Slot(k))
            else:
                slots.append(Slot(_KIND_ALIASES[k.lower()]))
        return cls(tuple(slots))

    @classmethod
    def enum(cls, *symbols, table=None) -> Signature:
        triples = ()
        if table:
            items = table.items() if isinstance(table, Mapping) else table
            triples = tuple((a, b, c) for (a, b), c in items)
        return cls((Slot(SlotKind.ENUM, tuple(symbols), triples),))

    @classmethod
    def parse(cls, text: str) -> Signature:
        """Parse ``"weight,centre,colour"`` or ``"enum(a<b<c)"``."""
        slots = []
        for part in _split_top(text.strip(), ","):
            part = part.strip()
            m = re.fullmatch(r"enum\((.*)\)", part)
            if m:
                syms = [s.strip() for s in re.split(r"[<,\s]+", m.group(1)) if s.strip()]
                slots.append(Slot(SlotKind.ENUM, tuple(syms)))
            elif part.lower() in _KIND_ALIASES:
                slots.append(Slot(_KIND_ALIASES[part.lower()]))
            else:
                raise ParseError(f"unknown slot {part!r}", text, text.find(part))
        if not slots:
            raise ParseError("empty signature", text, 0)
        return cls(tuple(slots))

    def __str__(self):
        return ",".join(str(s) for s in self.slots)

    @property
    def kinds(self) -> tuple[SlotKind, ...]:
        return tuple(s.kind for s in self.slots)

    def slot_index(self, kind: SlotKind):
        """Index of the first slot of ``kind``, or ``None``."""
        for i, s in enumerate(self.slots):
            if s.kind is kind:
                return i
        return None

    def letter(self, *values) -> Letter:
        if len(values) == 1 and isinstance(values[0], tuple) and len(self.slots) > 1:
            values = values[0]
        return Letter(self, tuple(values))

    def normalize(self, values) -> tuple:
        if len(values) != len(self.slots):
            raise DomainError(f"expected {len(self.slots)} components, got {len(values)}")
        out = []
        for slot, v in zip(self.slots, values):
            kind = slot.kind
            if kind is SlotKind.WEIGHT:
                if isinstance(v, bool):
                    raise DomainError("weight must be an integer")
                if not isinstance(v, int):
                    q = rational(v)
                    if q.denominator != 1:
                        raise DomainError(f"weight {q} is not an integer")
                    v = int(q)
                if v < 1:
                    raise DomainError(f"weight {v} is not >= 1")
                out.append(int(v))
            elif kind is SlotKind.COLOUR:
                q = rational(v)
                if q == 0:
                    raise DomainError("colour must be nonzero")
                out.append(q)
            elif kind is SlotKind.CENTRE:
                q = rational(v)
                if q.denominator == 1 and q > 0:
                    raise DomainError(f"centre {q} is a positive integer")
                out.append(q)
            else:
                if v not in slot.symbols:
                    raise DomainError(f"{v!r} is not one of {slot.symbols}")
                out.append(v)
        return tuple(out)

    def sort_key(self, values) -> tuple:
        key = []
        for rank, v in zip(self._ranks, values):
            key.append(v if rank is None else rank[v])
        return tuple(key)

    def component_text(self, i, v) -> str:
        kind = self.slots[i].kind
        if kind is SlotKind.WEIGHT:
            return f"y{v}"
        if kind is SlotKind.COLOUR:
            return f"x[{v}]"
        if kind is SlotKind.CENTRE:
            return f"z[{v}]"
        return v


_LETTERS: dict = {}


class Letter:
    """An interned letter: one value per slot of its signature.

    Letters are totally ordered slot-wise lexicographically (numeric order on
    numeric slots, declaration order on Enum slots).
    """

    __slots__ = ("signature", "values", "key", "_text")

    def __new__(cls, signature: Signature, values):
        values = signature.normalize(tuple(values))
        ident = (signature, values)
        got = _LETTERS.get(ident)
        if got is not None:
            return got
        self = object.__new__(cls)
        object.__setattr__(self, "signature", signature)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "key", signature.sort_key(values))
        parts = [signature.component_text(i, v) for i, v in enumerate(values)]
        text = parts[0] if len(parts) == 1 else "(" + ",".join(parts) + ")"
        object.__setattr__(self, "_text", text)
        return _LETTERS.setdefault(ident, self)

    def __setattr__(self, name, value):
        raise AttributeError("letters are immutable")

    def __reduce__(self):
        return (Letter, (self.signature, self.values))

    def __copy__(self):
        return self

    def __deepcopy__(self, memo):
        return self

    def _other_key(self, other):
        if not isinstance(other, Letter):
            return NotImplemented
        if other.signature != self.signature:
            raise SignatureMismatch(f"cannot compare {self} with {other}")
        return other.key

    def __lt__(self, other):
        k = self._other_key(other)
        return k if k is NotImplemented else self.key < k

    def __le__(self, other):
        k = self._other_key(other)
        return k if k is NotImplemented else self.key <= k

    def __gt__(self, other):
        k = self._other_key(other)
        return k if k is NotImplemented else self.key > k

    def __ge__(self, other):
        k = self._other_key(other)
        return k if k is NotImplemented else self.key >= k

    def __str__(self):
        return self._text

    def __repr__(self):
        return f"Letter({self._text!r})"

    def component(self, kind: SlotKind):
        i = self.signature.slot_index(kind)
        return None if i is None else self.values[i]

    def replace(self, **changes) -> Letter:
        """Copy with some components changed, keyed by slot kind name."""
        values = list(self.values)
        for name, v in changes.items():
            i = self.signature.slot_index(_KIND_ALIASES[name])
            if i is None:
                raise SignatureMismatch(f"{self.signature} has no {name} slot")
            values[i] = v
        return Letter(self.signature, tuple(values))


Word = tuple  # tuple[Letter, ...]; () is the empty word


def word_key(w) -> tuple:
    """Canonical term order: length first, then lexicographic."""
    return (len(w), tuple(l.key for l in w))


def word_text(w, compact: bool = False) -> str:
    if not w:
        return "1"
    parts = [l._text for l in w]
    if compact and all(len(p) == 1 for p in parts):
        return "".join(parts)
    return ".".join(parts)


def check_word(signature: Signature, w) -> tuple:
    w = tuple(w)
    for l in w:
        if not isinstance(l, Letter):
            raise TypeError(f"{l!r} is not a Letter")
        if l.signature is not signature and l.signature != signature:
            raise SignatureMismatch(f"letter {l} is not over signature {signature}")
    return w


def _split_top(text: str, sep: str):
    depth = 0
    start = 0
    for i, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == sep and depth == 0:
            yield text[start:i]
            start = i + 1
    yield text[start:]


class _Reader:
    def __init__(self, text: str, signature: Signature):
        self.text = text
        self.sig = signature
        self.pos = 0

    def error(self, msg, pos=None):
        raise ParseError(msg, self.text, self.pos if pos is None else pos)

    def ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def at_end(self):
        self.ws()
        return self.pos >= len(self.text)

    def rational(self):
        m = re.compile(r"[+-]?\d+(?:/\d+)?").match(self.text, self.pos)
        if not m:
            self.error("expected a rational")
        self.pos = m.end()
        num, _, den = m.group(0).partition("/")
        if den and int(den) == 0:
            self.error("zero denominator", m.start())
        return mpq(int(num), int(den) if den else 1)

    def component(self, i):
        slot = self.sig.slots[i]
        start = self.pos
        if slot.kind is SlotKind.WEIGHT:
            m = re.compile(r"y(\d+)").match(self.text, self.pos)
            if not m:
                self.error("expected a weight component yK")
            self.pos = m.end()
            return int(m.group(1)), start
        if slot.kind in (SlotKind.COLOUR, SlotKind.CENTRE):
            tag = "x" if slot.kind is SlotKind.COLOUR else "z"
            if not self.text.startswith(tag + "[", self.pos):
                self.error(f"expected a {slot.kind.value} component {tag}[p/q]")
            self.pos += 2
            self.ws()
            q = self.rational()
            self.ws()
            self.expect("]")
            return q, start
        m = re.compile(r"[A-Za-z_][A-Za-z0-9_']*").match(self.text, self.pos)
        if not m or m.group(0) not in slot.symbols:
            self.error(f"expected one of the symbols {' '.join(slot.symbols)}")
        self.pos = m.end()
        return m.group(0), start

    def letter(self) -> Letter:
        start = self.pos
        n = len(self.sig.slots)
        parens = self.peek() == "("
        if n > 1 and not parens:
            self.error("expected '(' starting a letter")
        if parens:
            self.pos += 1
            self.ws()
        values = []
        for i in range(n):
            if i:
                self.ws()
                self.expect(",")
                self.ws()
            values.append(self.component(i)[0])
        if parens:
            self.ws()
            self.expect(")")
        try:
            return Letter(self.sig, tuple(values))
        except DomainError as exc:
            raise DomainError(f"{exc} at position {start}: {self.text!r}") from None

    def starts_letter(self):
        ch = self.peek()
        return ch == "(" or ch.isalpha() or ch == "_"

    def word(self):
        if self.peek() == "1" and not self.text[self.pos + 1:self.pos + 2].isdigit():
            self.pos += 1
            return ()
        letters = [self.letter()]
        while self.peek() == ".":
            self.pos += 1
            letters.append(self.letter())
        return tuple(letters)

    def term(self):
        """One signed term -> (coefficient, word)."""
        self.ws()
        sign = 1
        while self.peek() and self.peek() in "+-" and not self.text[self.pos + 1:self.pos + 2].isdigit():
            if self.peek() == "-":
                sign = -sign
            self.pos += 1
            self.ws()
        coef = None
        ch = self.peek()
        if ch.isdigit() or (ch and ch in "+-" and self.text[self.pos + 1:self.pos + 2].isdigit()):
            coef = self.rational()
            save = self.pos
            self.ws()
            if not self.starts_letter():
                self.pos = save
                return sign * coef, ()
        elif not self.starts_letter():
            self.error("expected a term")
        w = self.word()
        return sign * (ONE if coef is None else coef), w


def parse_letter(text: str, signature: Signature) -> Letter:
    r = _Reader(text.strip(), signature)
    l = r.letter()
    if not r.at_end():
        r.error("trailing input after letter")
    return l


def parse_word(text: str, signature: Signature) -> tuple:
    """Parse ``"(y2,z[0]).(y1,z[0])"``; ``""`` and ``"1"`` give the empty word."""
    text = text.strip()
    if not text:
        return ()
    r = _Reader(text, signature)
    w = r.word()
    if not r.at_end():
        r.error("trailing input after word")
    return w


def parse_letters(text: str, signature: Signature) -> list:
    """A letter list separated by commas, ``<`` or whitespace."""
    r = _Reader(text, signature)
    out = []
    r.ws()
    while not r.at_end():
        out.append(r.letter())
        r.ws()
        if r.peek() and r.peek() in ",<":
            r.pos += 1
    return out


def parse_poly(text: str, signature: Signature) -> NcPoly:
    r = _Reader(text, signature)
    terms: dict = {}
    if r.at_end():
        r.error("empty polynomial")
    first = True
    while not r.at_end():
        if not first:
            if not r.peek() or r.peek() not in "+-":
                r.error("expected '+' or '-'")
        c, w = r.term()
        terms[w] = terms.get(w, ZERO) + c
        first = False
    return NcPoly._raw(signature, {w: c for w, c in terms.items() if c})


_TOKEN_RE = re.compile(
    r"\(([^()]*)\)|(y\d+|x\[[^\]]*\]|z\[[^\]]*\]|[A-Za-z_][A-Za-z0-9_']*)"
)


def _classify(component: str):
    if re.fullmatch(r"y\d+", component):
        return SlotKind.WEIGHT
    if re.fullmatch(r"x\[[^\]]*\]", component):
        return SlotKind.COLOUR
    if re.fullmatch(r"z\[[^\]]*\]", component):
        return SlotKind.CENTRE
    return SlotKind.ENUM


def infer_signature(texts: Iterable[str]):
    """Guess a signature from letter text; ``None`` when no letter appears.

    Enum symbols are ordered by plain string order.
    """
    shapes = None
    symbols: list = []
    for text in texts:
        for m in _TOKEN_RE.finditer(text):
            comps = [c.strip() for c in m.group(1).split(",")] if m.group(1) is not None else [m.group(2)]
            kinds = [_classify(c) for c in comps]
            if shapes is None:
                shapes = kinds
                symbols = [set() for _ in kinds]
            elif kinds != shapes:
                raise SignatureMismatch(f"letter {m.group(0)!r} does not match the other letters")
            for i, (k, c) in enumerate(zip(kinds, comps)):
                if k is SlotKind.ENUM:
                    symbols[i].add(c)
    if shapes is None:
        return None
    slots = []
    for k, syms in zip(shapes, symbols):
        slots.append(Slot(k, tuple(sorted(syms))) if k is SlotKind.ENUM else Slot(k))
    return Signature(tuple(slots))


class NcPoly:
    """Finite map word -> nonzero rational over one signature.

    ``P * Q`` is the concatenation product, ``c * P`` scalar multiplication.
    """

    __slots__ = ("signature", "_terms")

    def __init__(self, signature: Signature, terms=()):
        acc: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for w, c in items:
            w = check_word(signature, w)
            acc[w] = acc.get(w, ZERO) + rational(c)
        self.signature = signature
        self._terms = {w: c for w, c in acc.items() if c}

    @classmethod
    def _raw(cls, signature, terms: dict) -> NcPoly:
        # trusted: words checked, values nonzero mpq
        self = object.__new__(cls)
        self.signature = signature
        self._terms = terms
        return self

    @classmethod
    def zero(cls, signature) -> NcPoly:
        return cls._raw(signature, {})

    @classmethod
    def one(cls, signature) -> NcPoly:
        return cls._raw(signature, {(): ONE})

    @classmethod
    def from_word(cls, w, signature=None, coefficient=1) -> NcPoly:
        w = tuple(w)
        if signature is None:
            if not w:
                raise ValueError("the empty word needs an explicit signature")
            signature = w[0].signature
        return cls(signature, {w: coefficient})

    @classmethod
    def parse(cls, text: str, signature: Signature) -> NcPoly:
        return parse_poly(text, signature)

    def coeff(self, w) -> Rational:
        w = check_word(self.signature, w)
        return self._terms.get(w, ZERO)

    def items(self):
        return self._terms.items()

    def sorted_items(self) -> list:
        return sorted(self._terms.items(), key=lambda kv: word_key(kv[0]))

    def support(self) -> list:
        return [w for w, _ in self.sorted_items()]

    def letters(self) -> set:
        return {l for w in self._terms for l in w}

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __contains__(self, w):
        return tuple(w) in self._terms

    def _same(self, other):
        if other.signature is not self.signature and other.signature != self.signature:
            raise SignatureMismatch(f"{self.signature} vs {other.signature}")

    def __eq__(self, other):
        if isinstance(other, NcPoly):
            return (other.signature is self.signature or other.signature == self.signature) and self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        return hash((self.signature, frozenset(self._terms.items())))

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        if not isinstance(other, NcPoly):
            return NotImplemented
        self._same(other)
        out = dict(self._terms)
        for w, c in other._terms.items():
            s = out.get(w, ZERO) + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return NcPoly._raw(self.signature, out)

    __radd__ = __add__

    def __neg__(self):
        return NcPoly._raw(self.signature, {w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, NcPoly):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> NcPoly:
        c = rational(c)
        if not c:
            return NcPoly.zero(self.signature)
        return NcPoly._raw(self.signature, {w: c * v for w, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, NcPoly):
            return conc(self, other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def deg(self):
        return max((len(w) for w in self._terms), default=NEG_INF)

    def homogeneous_part(self, k: int) -> NcPoly:
        return NcPoly._raw(self.signature, {w: c for w, c in self._terms.items() if len(w) == k})

    def __str__(self):
        return print_poly(self)

    def __repr__(self):
        return f"NcPoly({print_poly(self)!r})"


def coeff(P: NcPoly, w) -> Rational:
    return P.coeff(w)


def add(P: NcPoly, Q: NcPoly) -> NcPoly:
    return P + Q


def scalar_mul(c, P: NcPoly) -> NcPoly:
    return P.scale(c)


def conc(P: NcPoly, Q: NcPoly) -> NcPoly:
    """Concatenation product, extended bilinearly."""
    P._same(Q)
    out: dict = {}
    for u, a in P._terms.items():
        for v, b in Q._terms.items():
            w = u + v
            s = out.get(w, ZERO) + a * b
            if s:
                out[w] = s
            else:
                out.pop(w, None)
    return NcPoly._raw(P.signature, out)


def deg(P: NcPoly):
    """Largest word length in the support; ``-inf`` for the zero polynomial."""
    return P.deg()


def _format_terms(pairs, explicit_ones: bool) -> str:
    """pairs: iterable of (coefficient, body-text or None for constants)."""
    out = []
    for c, body in pairs:
        neg = c < 0
        a = -c if neg else c
        if body is None:
            piece = str(a)
        elif a == 1 and not explicit_ones:
            piece = body
        else:
            piece = f"{a} {body}"
        if not out:
            out.append(("-" if neg else "") + piece)
        else:
            out.append((" - " if neg else " + ") + piece)
    return "".join(out) if out else "0"


def _ordered(P: NcPoly, descending: bool) -> list:
    items = P.sorted_items()
    if descending:
        # longest words first, lexicographic within a length
        items.sort(key=lambda kv: -len(kv[0]))
    return items


def print_poly(P: NcPoly, explicit_ones: bool = False, descending: bool = False) -> str:
    """Canonical text: terms by (length, lexicographic).

    ``descending=True`` lists the longest words first (the CLI layout).
    """
    return _format_terms(
        ((c, word_text(w) if w else None) for w, c in _ordered(P, descending)), explicit_ones
    )


def poly_lines(P: NcPoly, descending: bool = False) -> list[str]:
    """Machine-readable form: one ``coeff<TAB>word`` line per term."""
    return [f"{c}\t{word_text(w)}" for w, c in _ordered(P, descending)]


class Tensor2:
    """Finite map (word, word) -> nonzero rational: an element of A<X> (x) A<X>.

    ``T1 * T2`` multiplies componentwise by concatenation.
    """

    __slots__ = ("signature", "_terms")

    def __init__(self, signature: Signature, terms=()):
        acc: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for (u, v), c in items:
            key = (check_word(signature, u), check_word(signature, v))
            acc[key] = acc.get(key, ZERO) + rational(c)
        self.signature = signature
        self._terms = {k: c for k, c in acc.items() if c}

    @classmethod
    def _raw(cls, signature, terms):
        self = object.__new__(cls)
        self.signature = signature
        self._terms = terms
        return self

    @classmethod
    def zero(cls, signature):
        return cls._raw(signature, {})

    def coeff(self, u, v) -> Rational:
        return self._terms.get((check_word(self.signature, u), check_word(self.signature, v)), ZERO)

    def items(self):
        return self._terms.items()

    def sorted_items(self):
        return sorted(self._terms.items(), key=lambda kv: (word_key(kv[0][0]), word_key(kv[0][1])))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, Tensor2):
            return other.signature == self.signature and self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        return hash((self.signature, frozenset(self._terms.items())))

    def _same(self, other):
        if other.signature != self.signature:
            raise SignatureMismatch(f"{self.signature} vs {other.signature}")

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        if not isinstance(other, Tensor2):
            return NotImplemented
        self._same(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out.get(k, ZERO) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return Tensor2._raw(self.signature, out)

    __radd__ = __add__

    def __neg__(self):
        return Tensor2._raw(self.signature, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = rational(c)
        if not c:
            return Tensor2.zero(self.signature)
        return Tensor2._raw(self.signature, {k: c * v for k, v in self._terms.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def __mul__(self, other):
        if not isinstance(other, Tensor2):
            return self.scale(other)
        self._same(other)
        out: dict = {}
        for (a, b), x in self._terms.items():
            for (c, d), y in other._terms.items():
                k = (a + c, b + d)
                s = out.get(k, ZERO) + x * y
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return Tensor2._raw(self.signature, out)

    def __str__(self):
        return _format_terms(
            ((c, f"{word_text(u)} ⊗ {word_text(v)}") for (u, v), c in self.sorted_items()),
            explicit_ones=True,
        )

    def __repr__(self):
        return f"Tensor2({str(self)!r})"

    def lines(self) -> list[str]:
        return [f"{c}\t{word_text(u)}\t{word_text(v)}" for (u, v), c in self.sorted_items()]
