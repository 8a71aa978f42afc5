"""Letter-level laws phi, their bilinear extension, and law checkers.

A :class:`PhiLaw` maps a pair of letters to a homogeneous degree-1 polynomial
(possibly zero).  ``law.phi_terms(a, b)`` returns the raw ``{letter: coeff}``
form used by the product engine; ``law(a, b)`` returns an :class:`NcPoly`.

Built-in laws::

    shuffle        phi = 0                                     any signature
    stuffle        y_i, y_j -> y_{i+j}                         weight
    minstuffle     y_i, y_j -> -y_{i+j}                        weight
    muffle         x_k, x_l -> x_{k*l}                         colour (or weight)
    qshuffle       y_i, y_j -> q y_{i+j}                       weight, q=
    qshuffle2      y_i, y_j -> q^(i*j) y_{i+j}                 weight, q=
    ldiag          a, b -> qs (a.b)                            weight or enum+table, qs=
    qinfiltration  a, b -> q [a == b] a                        any signature, q=
    semigroup      x_t, x_s -> x_{t.s} (0 where undefined)     enum+table
    duffle         (y_i,x_k),(y_j,x_l) -> (y_{i+j},x_{k*l})     weight,colour
    huffle         two-pole partial fractions                  weight,centre
    luffle         huffle with colour product attached         weight,centre,colour
    custom         table file                                  any signature
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import product as cartesian
from math import comb
from pathlib import Path
from types import MappingProxyType

from .errors import LawError, ParseError, SignatureMismatch
from .words import (
    ONE,
    ZERO,
    Letter,
    NcPoly,
    Signature,
    SlotKind,
    _Reader,
    infer_signature,
    parse_poly,
    rational,
)

BUILTIN_LAWS = (
    "shuffle",
    "stuffle",
    "minstuffle",
    "muffle",
    "qshuffle",
    "qshuffle2",
    "ldiag",
    "qinfiltration",
    "semigroup",
    "duffle",
    "huffle",
    "luffle",
    "custom",
)

W, CO, CE, EN = SlotKind.WEIGHT, SlotKind.COLOUR, SlotKind.CENTRE, SlotKind.ENUM

DEFAULT_SIGNATURES = {
    "stuffle": (W,),
    "minstuffle": (W,),
    "qshuffle": (W,),
    "qshuffle2": (W,),
    "ldiag": (W,),
    "muffle": (CO,),
    "duffle": (W, CO),
    "huffle": (W, CE),
    "luffle": (W, CE, CO),
}


class PhiLaw:
    """A named phi with its class tag and analytic dualizability flag.

    ``signature`` is ``None`` for laws that make sense on every alphabet
    (shuffle, q-infiltration).  ``dualizable`` is ``True``/``False`` when
    known for the whole (infinite) alphabet and ``None`` otherwise.
    """

    def __init__(self, name, tag, rule, signature=None, params=None, dualizable=None, preimages=None):
        self.name = name
        self.tag = tag
        self.signature = signature
        self.params = MappingProxyType(dict(params or {}))
        self.dualizable = dualizable
        self._rule = rule
        self._preimages = preimages
        self._phi_cache: dict = {}
        self.product_cache: dict = {}
        self.cache_limit = 50_000

    def __repr__(self):
        ps = ",".join(f"{k}={v}" for k, v in self.params.items() if k not in ("text",))
        return f"PhiLaw({self.name}{':' + ps if ps else ''}, class {self.tag})"

    def check_signature(self, sig):
        if self.signature is not None and sig != self.signature:
            raise SignatureMismatch(f"law {self.name} works over {self.signature}, not {sig}")

    def phi_terms(self, a: Letter, b: Letter) -> dict:
        key = (a, b)
        got = self._phi_cache.get(key)
        if got is None:
            if a.signature != b.signature:
                raise SignatureMismatch(f"{a} and {b} have different signatures")
            self.check_signature(a.signature)
            got = {l: c for l, c in self._rule(a, b).items() if c}
            self._phi_cache[key] = got
        return got

    def __call__(self, a: Letter, b: Letter) -> NcPoly:
        return NcPoly._raw(a.signature, {(l,): c for l, c in self.phi_terms(a, b).items()})

    def preimages(self, z: Letter):
        """All (x, y) with <phi(x,y)|z> != 0 over the whole alphabet, if known."""
        if self._preimages is None:
            return None
        return sorted(self._preimages(z), key=lambda p: (p[0].key, p[1].key))

    def clear_cache(self):
        self._phi_cache.clear()
        self.product_cache.clear()


def _need(params, key, name):
    if key not in params:
        raise LawError(f"law {name} needs parameter {key}=")
    try:
        return rational(params[key])
    except (TypeError, ParseError) as exc:
        raise LawError(f"parameter {key} of {name}: {exc}") from None


def _require_kinds(name, sig, kinds):
    if sig is None:
        sig = Signature.of(*kinds)
    if sorted(k.value for k in sig.kinds) != sorted(k.value for k in kinds):
        want = ",".join(k.value for k in kinds)
        raise LawError(f"law {name} needs a {want} signature, got {sig}")
    return sig


def _weight_sum_preimages(sig):
    def pre(z):
        k = z.values[0]
        return [(sig.letter(i), sig.letter(k - i)) for i in range(1, k)]

    return pre


def _weight_law(name, sig, coef):
    """y_i, y_j -> coef(i, j) y_{i+j}."""
    sig = _require_kinds(name, sig, (W,))

    def rule(a, b):
        i, j = a.values[0], b.values[0]
        return {sig.letter(i + j): coef(i, j)}

    return sig, rule


def _huffle_terms(i, t, j, tp):
    """phi((y_i,z_t),(y_j,z_t')) as [(weight, centre, coefficient)]."""
    if t == tp:
        return [(i + j, t, ONE)]
    out = []
    for n in range(i):
        out.append((i - n, t, comb(j - 1 + n, j - 1) * (-1) ** n / (t - tp) ** (j + n)))
    for n in range(j):
        out.append((j - n, tp, comb(i - 1 + n, i - 1) * (-1) ** n / (tp - t) ** (i + n)))
    return out


def _table_rule(table):
    def rule(a, b):
        return table.get((a, b), {})

    return rule


def _table_preimages(table):
    def pre(z):
        return [pair for pair, out in table.items() if out.get(z)]

    return pre


def parse_phi_table(text: str, signature: Signature = None):
    """Parse the line format ``<letter> <letter> -> <poly>``.

    Returns ``(signature, {(x, y): {letter: coeff}})``.  Every right-hand side
    must be a combination of single letters (or ``0``).
    """
    lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "->" not in line:
            raise LawError(f"line {lineno}: expected '->' in {raw!r}")
        lhs, rhs = line.split("->", 1)
        lines.append((lineno, lhs.strip(), rhs.strip()))
    if signature is None:
        signature = infer_signature([l for _, l, _ in lines] + [r for _, _, r in lines])
        if signature is None:
            raise LawError("empty phi table and no signature given")
    table: dict = {}
    for lineno, lhs, rhs in lines:
        r = _Reader(lhs, signature)
        try:
            x = r.letter()
            r.ws()
            y = r.letter()
            if not r.at_end():
                r.error("expected exactly two letters")
            poly = parse_poly(rhs, signature)
        except ParseError as exc:
            raise LawError(f"line {lineno}: {exc}") from None
        out = {}
        for w, c in poly.items():
            if len(w) != 1:
                raise LawError(f"line {lineno}: phi({x},{y}) must be homogeneous of degree 1, got term {c} {w or '1'}")
            out[w[0]] = c
        if (x, y) in table:
            raise LawError(f"line {lineno}: phi({x},{y}) defined twice")
        table[(x, y)] = out
    return signature, table


def _load_table(name, params, signature):
    if "file" in params:
        try:
            text = Path(params["file"]).read_text(encoding="utf-8")
        except OSError as exc:
            raise LawError(f"cannot read table for {name}: {exc}") from None
    elif "text" in params:
        text = params["text"]
    elif "table" in params:
        return signature, params["table"]
    else:
        raise LawError(f"law {name} needs file= (or text=/table=)")
    return parse_phi_table(text, signature)


def make_law(name: str, params=None, signature: Signature = None) -> PhiLaw:
    """Build one of the built-in laws; see the module docstring for names."""
    params = dict(params or {})
    name = name.lower().replace("-", "").replace("_", "")
    if name == "shuffle":
        return PhiLaw("shuffle", "I", lambda a, b: {}, signature, params, True, lambda z: [])

    if name in ("stuffle", "minstuffle", "qshuffle", "qshuffle2"):
        if name == "stuffle":
            coef, tag = (lambda i, j: ONE), "I"
        elif name == "minstuffle":
            coef, tag = (lambda i, j: -ONE), "III"
        elif name == "qshuffle":
            q = _need(params, "q", name)
            params["q"] = q
            coef, tag = (lambda i, j: q), "III"
        else:
            q = _need(params, "q", name)
            params["q"] = q
            coef, tag = (lambda i, j: q ** (i * j)), "II"
        sig, rule = _weight_law(name, signature, coef)
        q = params.get("q", ONE)
        pre = _weight_sum_preimages(sig) if q else (lambda z: [])
        return PhiLaw(name, tag, rule, sig, params, True, pre)

    if name == "muffle":
        sig = signature or Signature.of(CO)
        if len(sig.slots) != 1 or sig.kinds[0] not in (CO, W):
            raise LawError(f"law muffle needs a single colour (or weight) slot, got {sig}")

        def rule(a, b):
            return {sig.letter(a.values[0] * b.values[0]): ONE}

        if sig.kinds[0] is W:
            # positive integers under x: finitely many factorisations
            def pre(z):
                k = z.values[0]
                return [(sig.letter(d), sig.letter(k // d)) for d in range(1, k + 1) if k % d == 0]

            return PhiLaw("muffle", "I", rule, sig, params, True, pre)
        return PhiLaw("muffle", "I", rule, sig, params, False, None)

    if name == "ldiag":
        qs = _need(params, "qs", name)
        params["qs"] = qs
        sig = signature or Signature.of(W)
        if sig.kinds == (W,):
            return PhiLaw("ldiag", "II", lambda a, b: {sig.letter(a.values[0] + b.values[0]): qs}, sig, params,
                          True, _weight_sum_preimages(sig) if qs else (lambda z: []))
        if sig.kinds == (EN,) and sig.slots[0].table:
            prod = {(a, b): c for a, b, c in sig.slots[0].table}

            def rule(a, b):
                c = prod.get((a.values[0], b.values[0]))
                return {} if c is None else {sig.letter(c): qs}

            return PhiLaw("ldiag", "II", rule, sig, params, True,
                          lambda z: [(sig.letter(a), sig.letter(b)) for (a, b), c in prod.items() if c == z.values[0] and qs])
        raise LawError(f"law ldiag needs a weight signature or an enum slot with a table, got {sig}")

    if name == "qinfiltration":
        q = _need(params, "q", name)
        params["q"] = q
        return PhiLaw("qinfiltration", "III", lambda a, b: {a: q} if a is b else {}, signature, params, True,
                      lambda z: [(z, z)] if q else [])

    if name == "semigroup":
        if signature is not None and signature.kinds == (EN,) and signature.slots[0].table and not (
            {"file", "text", "table"} & params.keys()
        ):
            sig = signature
            table = {(sig.letter(a), sig.letter(b)): {sig.letter(c): ONE} for a, b, c in sig.slots[0].table}
        else:
            sig, table = _load_table(name, params, signature)
            if isinstance(next(iter(table), None), tuple) and table and not isinstance(next(iter(table))[0], Letter):
                # mapping of symbol pairs -> symbol
                if sig is None:
                    syms = sorted({s for pair, c in table.items() for s in (*pair, c)})
                    sig = Signature.enum(*syms)
                table = {(sig.letter(a), sig.letter(b)): {sig.letter(c): ONE} for (a, b), c in table.items()}
            for (x, y), out in table.items():
                if len(out) != 1 or next(iter(out.values())) != 1:
                    raise LawError(f"semigroup table entry for ({x},{y}) must be a single letter")
        if sig.kinds != (EN,):
            raise LawError(f"law semigroup needs a single enum slot, got {sig}")
        return PhiLaw("semigroup", "I", _table_rule(table), sig, params, True, _table_preimages(table))

    if name == "duffle":
        sig = _require_kinds(name, signature, (W, CO))
        iw, ic = sig.slot_index(W), sig.slot_index(CO)

        def rule(a, b):
            vals = [None, None]
            vals[iw] = a.values[iw] + b.values[iw]
            vals[ic] = a.values[ic] * b.values[ic]
            return {Letter(sig, tuple(vals)): ONE}

        return PhiLaw("duffle", "I", rule, sig, params, False, None)

    if name in ("huffle", "luffle"):
        kinds = (W, CE) if name == "huffle" else (W, CE, CO)
        sig = _require_kinds(name, signature, kinds)
        iw, it = sig.slot_index(W), sig.slot_index(CE)
        ic = sig.slot_index(CO)

        def rule(a, b):
            out = {}
            colour = None if ic is None else a.values[ic] * b.values[ic]
            for k, t, c in _huffle_terms(a.values[iw], a.values[it], b.values[iw], b.values[it]):
                vals = [None] * len(sig.slots)
                vals[iw], vals[it] = k, t
                if ic is not None:
                    vals[ic] = colour
                l = Letter(sig, tuple(vals))
                out[l] = out.get(l, ZERO) + c
            return out

        return PhiLaw(name, "IV", rule, sig, params, False, None)

    if name == "custom":
        sig, table = _load_table(name, params, signature)
        return PhiLaw("custom", "V", _table_rule(table), sig, params, True, _table_preimages(table))

    raise LawError(f"unknown law {name!r}; expected one of {', '.join(BUILTIN_LAWS)}")


def parse_law_selector(text: str):
    """``"qshuffle:q=1/2"`` -> ``("qshuffle", {"q": "1/2"})``."""
    name, _, rest = text.strip().partition(":")
    params = {}
    if rest:
        for item in rest.split(","):
            key, eq, value = item.partition("=")
            if not eq or not key.strip():
                raise ParseError("expected key=value in law selector", text, text.find(item))
            params[key.strip()] = value.strip()
    if not name:
        raise ParseError("empty law name", text, 0)
    return name, params


def law_from_selector(text: str, signature: Signature = None) -> PhiLaw:
    name, params = parse_law_selector(text)
    return make_law(name, params, signature)


def _as_linear(P) -> dict:
    if isinstance(P, Letter):
        return {P: ONE}
    if isinstance(P, dict):
        return P
    out = {}
    for w, c in P.items():
        if len(w) != 1:
            raise ValueError(f"phi_extend needs homogeneous degree-1 input, found a term of length {len(w)}")
        out[w[0]] = c
    return out


def extend_terms(p: dict, q: dict, law: PhiLaw) -> dict:
    out: dict = {}
    for x, a in p.items():
        for y, b in q.items():
            ab = a * b
            for z, g in law.phi_terms(x, y).items():
                s = out.get(z, ZERO) + ab * g
                if s:
                    out[z] = s
                else:
                    out.pop(z, None)
    return out


def phi_extend(P, Q, law: PhiLaw) -> NcPoly:
    """sum_{x,y} <P|x><Q|y> phi(x, y) for degree-1 P and Q."""
    p, q = _as_linear(P), _as_linear(Q)
    sig = getattr(P, "signature", None) or getattr(Q, "signature", None) or law.signature
    return NcPoly._raw(sig, {(z,): c for z, c in extend_terms(p, q, law).items()})


@dataclass(frozen=True)
class Verdict:
    """Outcome of a law check on a finite letter window.

    ``verdict`` is ``"yes"``, ``"no"`` or ``"inconclusive"``.  ``closed`` tells
    whether the working set for an associativity check was closed under phi
    (if not, "yes" covers the letters reachable in ``rounds`` closure steps).
    """

    verdict: str
    witness: tuple = None
    letters: tuple = ()
    closed: bool = True
    rounds: int = 0

    def __bool__(self):
        return self.verdict == "yes"

    def describe(self) -> str:
        s = self.verdict
        if self.witness is not None:
            s += " witness=(" + ",".join(str(l) for l in self.witness) + ")"
        return s


def is_commutative_on(law: PhiLaw, letters) -> Verdict:
    work = sorted(set(letters))
    for i, x in enumerate(work):
        for y in work[i + 1:]:
            if law.phi_terms(x, y) != law.phi_terms(y, x):
                return Verdict("no", (x, y), tuple(work))
    return Verdict("yes", None, tuple(work))


def _phi_support(law, work):
    new = set()
    for x in work:
        for y in work:
            new.update(law.phi_terms(x, y))
    return new


def is_associative_on(law: PhiLaw, letters, rounds: int = 3, max_letters: int = 64) -> Verdict:
    """phi(phi(x,y),z) == phi(x,phi(y,z)) over a window grown by phi-images.

    The window is enlarged by the letters of phi(x, y) for up to ``rounds``
    rounds; every triple of the working set is checked.  If growth would pass
    ``max_letters`` the answer is ``inconclusive``.
    """
    work = sorted(set(letters))
    seen = 0
    for rnd in range(rounds + 1):
        n = len(work)
        for i in range(n):
            x = work[i]
            for j in range(n):
                y = work[j]
                xy = law.phi_terms(x, y)
                for k in range(n):
                    if i < seen and j < seen and k < seen:
                        continue
                    z = work[k]
                    left = extend_terms(xy, {z: ONE}, law)
                    right = extend_terms({x: ONE}, law.phi_terms(y, z), law)
                    if left != right:
                        return Verdict("no", (x, y, z), tuple(work), rounds=rnd)
        if rnd == rounds:
            break
        new = _phi_support(law, work) - set(work)
        if not new:
            return Verdict("yes", None, tuple(work), True, rnd)
        if len(work) + len(new) > max_letters:
            return Verdict("inconclusive", None, tuple(work), False, rnd)
        seen = len(work)
        work = work + sorted(new)
    return Verdict("yes", None, tuple(work), False, rounds)


def closure(law: PhiLaw, letters, rounds: int = 3, max_letters: int = 64) -> list:
    """Working sets W_0 = letters, W_{k+1} = W_k + supp phi(W_k x W_k)."""
    sets = [sorted(set(letters))]
    for _ in range(rounds):
        cur = sets[-1]
        new = _phi_support(law, cur) - set(cur)
        if not new or len(cur) + len(new) > max_letters:
            break
        sets.append(sorted(set(cur) | new))
    return sets


@dataclass(frozen=True)
class StructureConstant:
    x: Letter
    y: Letter
    z: Letter
    gamma: object

    def __str__(self):
        return f"({self.x},{self.y},{self.gamma})"


def structure_constants(law: PhiLaw, z: Letter, window) -> list:
    """Every (x, y) in window^2 with <phi(x,y)|z> != 0."""
    out = []
    work = sorted(set(window))
    for x in work:
        for y in work:
            g = law.phi_terms(x, y).get(z)
            if g:
                out.append(StructureConstant(x, y, z, g))
    return out


@dataclass(frozen=True)
class DualizabilityReport:
    """Window evidence only: counts preimage pairs of ``z`` inside the window."""

    z: Letter
    count: int
    verdict: str  # "finite-in-window" | "exceeds-threshold"
    threshold: int
    window_size: int
    pairs: tuple = field(default=(), repr=False)


def dualizable_on(law: PhiLaw, z: Letter, window, threshold: int = 8) -> DualizabilityReport:
    consts = structure_constants(law, z, window)
    verdict = "exceeds-threshold" if len(consts) > threshold else "finite-in-window"
    return DualizabilityReport(z, len(consts), verdict, threshold, len(set(window)), tuple(consts))


@dataclass
class LawReport:
    law: PhiLaw
    commutative: Verdict
    associative: Verdict
    evidence: list  # per z: list of DualizabilityReport over growing windows
    verdict: str  # overall dualizability evidence
    show: int = 6  # witness pairs printed per letter

    def lines(self) -> list[str]:
        out = [f"law: {self.law.name} (class {self.law.tag})"]
        out.append(f"commutative: {self.commutative.describe()}")
        a = self.associative
        extra = f" (closed={'yes' if a.closed else 'no'}, rounds={a.rounds}, letters={len(a.letters)})"
        out.append(f"associative: {a.describe()}{extra}")
        for reports in self.evidence:
            last = reports[-1]
            counts = "/".join(str(r.count) for r in reports)
            shown = last.pairs[:self.show]
            wit = " ".join(f"({c.x},{c.y})" for c in shown)
            if len(last.pairs) > len(shown):
                wit += f" (+{len(last.pairs) - len(shown)} more)"
            out.append(f"dualizable-evidence {last.z}: {last.verdict} counts={counts} pairs: {wit}".rstrip())
        out.append(f"dualizable-evidence: {self.verdict}")
        flag = {True: "yes", False: "no", None: "unknown"}[self.law.dualizable]
        out.append(f"dualizable-analytic: {flag}")
        return out


def check_law(law: PhiLaw, window, rounds: int = 3, threshold: int = 8, max_letters: int = 64) -> LawReport:
    """Commutativity, associativity and dualizability evidence on a window."""
    comm = is_commutative_on(law, window)
    assoc = is_associative_on(law, window, rounds, max_letters)
    sets = closure(law, window, rounds, max_letters)
    evidence = []
    for z in sorted(set(window)):
        evidence.append([dualizable_on(law, z, s, threshold) for s in sets])
    exceeded = any(r[-1].verdict == "exceeds-threshold" for r in evidence)
    return LawReport(law, comm, assoc, evidence, "exceeds-threshold" if exceeded else "finite-in-window")
