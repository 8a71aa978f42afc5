"""Exact truncated sums and the product identities they satisfy.

    M^N(s, xi, t) = sum_{N >= n_1 > ... > n_r > 0} prod_i xi_i^{n_i} / (n_i - t_i)^{s_i}

An index (s, xi, t) is the word (y_{s_1}, z_{t_1}, x_{xi_1}) ... ; single
letters drop the slots their signature lacks (colour 1, centre 0).  Values
for every N = 0..Nmax are computed together as a vector: prepending a letter
x to w maps V to  V'[N] = sum_{n <= N} term_x(n) V[n-1].
"""

from __future__ import annotations

import gc
from dataclasses import dataclass
from functools import reduce
from itertools import product as cartesian

from gmpy2 import lcm, mpq, mpz

from .errors import DomainError, LawError
from .laws import PhiLaw, make_law
from .shuffle import product_terms
from .words import ONE, ZERO, Letter, NcPoly, Signature, SlotKind, check_word, rational, word_text

W, CO, CE = SlotKind.WEIGHT, SlotKind.COLOUR, SlotKind.CENTRE

ZETA_LAWS = ("stuffle", "duffle", "huffle", "luffle")


@dataclass(frozen=True)
class ZetaIndex:
    s: tuple
    xi: tuple
    t: tuple

    def __post_init__(self):
        if not (len(self.s) == len(self.xi) == len(self.t)):
            raise ValueError("s, xi and t must have equal lengths")
        object.__setattr__(self, "s", tuple(int(k) for k in self.s))
        object.__setattr__(self, "xi", tuple(rational(x) for x in self.xi))
        object.__setattr__(self, "t", tuple(rational(x) for x in self.t))
        for k in self.s:
            if k < 1:
                raise DomainError(f"exponent {k} must be >= 1")
        for x in self.xi:
            if not x:
                raise DomainError("colours must be nonzero")
        for x in self.t:
            if x >= 1 and x.denominator == 1:
                raise DomainError(f"centre {x} is a positive integer")

    def __len__(self):
        return len(self.s)

    @classmethod
    def from_word(cls, w, centre=0, colour=1) -> ZetaIndex:
        """Read slots by kind; a missing colour is ``colour``, a missing centre ``centre``."""
        s, xi, t = [], [], []
        for l in w:
            k = l.component(W)
            if k is None:
                raise DomainError(f"letter {l} has no weight slot")
            c = l.component(CO)
            z = l.component(CE)
            s.append(k)
            xi.append(colour if c is None else c)
            t.append(centre if z is None else z)
        return cls(tuple(s), tuple(xi), tuple(t))

    def to_word(self, signature: Signature) -> tuple:
        out = []
        for k, x, z in zip(self.s, self.xi, self.t):
            vals = []
            for slot in signature.slots:
                if slot.kind is W:
                    vals.append(k)
                elif slot.kind is CO:
                    vals.append(x)
                elif slot.kind is CE:
                    vals.append(z)
                else:
                    raise DomainError("zeta signatures have no enum slots")
            if CO not in signature.kinds and x != 1 or CE not in signature.kinds and z != 0:
                raise DomainError(f"{signature} cannot carry colour {x} / centre {z}")
            out.append(Letter(signature, tuple(vals)))
        return tuple(out)


def _term_vector(s, xi, t, Nmax):
    """[0, xi^1/(1-t)^s, ..., xi^N/(N-t)^s]."""
    out = [ZERO]
    p = ONE
    for n in range(1, Nmax + 1):
        p *= xi
        out.append(p / (n - t) ** s)
    return out


class Evaluator:
    """Memoised M-vectors over N = 0..Nmax.

    ``centre``/``colour`` fill slots missing from a signature; ``powers`` is a
    uniform power character xi -> xi^m.
    """

    def __init__(self, Nmax: int, centre=0, colour=1, power: int = 1):
        if Nmax < 0:
            raise ValueError("N must be >= 0")
        if power < 1:
            raise ValueError("character exponents must be >= 1")
        self.Nmax = Nmax
        self.centre = rational(centre)
        self.colour = rational(colour)
        self.power = power
        self._letters: dict = {}
        self._words: dict = {(): [ONE] * (Nmax + 1)}

    def letter_terms(self, l: Letter):
        got = self._letters.get(l)
        if got is None:
            k = l.component(W)
            c = l.component(CO)
            z = l.component(CE)
            if k is None:
                raise DomainError(f"letter {l} has no weight slot")
            xi = self.colour if c is None else c
            t = self.centre if z is None else z
            if t >= 1 and t.denominator == 1:
                raise DomainError(f"centre {t} is a positive integer")
            got = self._letters[l] = _term_vector(k, xi ** self.power, t, self.Nmax)
        return got

    def vector(self, w) -> list:
        got = self._words.get(w)
        if got is not None:
            return got
        # extend from the longest cached suffix
        i = len(w)
        while i > 0 and w[i - 1:] in self._words:
            i -= 1
        for j in range(i - 1, -1, -1):
            tail = self._words[w[j + 1:]]
            term = self.letter_terms(w[j])
            v = [ZERO] * (self.Nmax + 1)
            acc = ZERO
            for n in range(1, self.Nmax + 1):
                acc += term[n] * tail[n - 1]
                v[n] = acc
            self._words[w[j:]] = v
        return self._words[w]

    def poly_vector(self, terms) -> list:
        out = [ZERO] * (self.Nmax + 1)
        for w, c in terms.items():
            v = self.vector(w)
            for n in range(self.Nmax + 1):
                out[n] += c * v[n]
        return out

    def clear(self, keep_below: int = 0):
        self._words = {w: v for w, v in self._words.items() if len(w) < keep_below} or {(): [ONE] * (self.Nmax + 1)}


def truncated_M(N: int, idx: ZetaIndex):
    """Direct evaluation by the simplex recursion (no memo)."""
    if not isinstance(idx, ZetaIndex):
        idx = ZetaIndex(*idx)
    return truncated_M_char(N, idx, (1,) * len(idx))


def truncated_M_char(N: int, idx: ZetaIndex, powers):
    """The sum with each xi_i replaced by xi_i^{m_i}."""
    if not isinstance(idx, ZetaIndex):
        idx = ZetaIndex(*idx)
    powers = tuple(powers)
    if len(powers) != len(idx):
        raise ValueError("character length must match the index length")
    if any(m < 1 for m in powers):
        raise ValueError("character exponents must be >= 1")
    if N < 0:
        raise ValueError("N must be >= 0")
    v = [ONE] * (N + 1)
    for k, x, t, m in reversed(list(zip(idx.s, idx.xi, idx.t, powers))):
        term = _term_vector(k, x ** m, t, N)
        nv = [ZERO] * (N + 1)
        acc = ZERO
        for n in range(1, N + 1):
            acc += term[n] * v[n - 1]
            nv[n] = acc
        v = nv
    return v[N]


def truncated_M_word(N: int, w, centre=0, colour=1):
    return truncated_M(N, ZetaIndex.from_word(w, centre, colour))


def truncated_M_poly(N: int, P: NcPoly, centre=0, colour=1):
    ev = Evaluator(N, centre, colour)
    return ev.poly_vector(dict(P.items()))[N]


@dataclass(frozen=True)
class IdentityReport:
    N: int
    left: tuple
    right: tuple
    lhs: object
    rhs: object

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs

    def __bool__(self):
        return self.equal


def _law(law) -> PhiLaw:
    if isinstance(law, str):
        law = make_law(law)
    if law.name not in ZETA_LAWS:
        raise LawError(f"product identities hold for {', '.join(ZETA_LAWS)}, not {law.name}")
    return law


def verify_product_identity(N: int, left, right, law, centre=0, power: int = 1, evaluator=None) -> IdentityReport:
    """M^N(left) M^N(right) against M^N(left *phi right).

    Stuffle words take the common centre ``centre`` (0 by default) and colour
    1; duffle words take centre 0; huffle words colour 1.  ``power`` applies
    the character xi -> xi^power to every colour.
    """
    law = _law(law)
    sig = law.signature
    left, right = check_word(sig, tuple(left)), check_word(sig, tuple(right))
    ev = evaluator or Evaluator(N, centre, 1, power)
    lhs = ev.vector(left)[N] * ev.vector(right)[N]
    rhs = ev.poly_vector(product_terms(left, right, law))[N]
    return IdentityReport(N, left, right, lhs, rhs)


@dataclass
class GridReport:
    law: str
    letters: int
    indices: int
    pairs: int
    Nmax: int
    checks: int
    failures: list

    @property
    def ok(self) -> bool:
        return not self.failures

    def __str__(self):
        state = "OK" if self.ok else f"FAIL ({len(self.failures)} failures)"
        return (f"{self.law}: {state} letters={self.letters} indices={self.indices} "
                f"pairs={self.pairs} N<={self.Nmax} checks={self.checks}")


def grid_letters(law: PhiLaw, weights, centres, colours) -> list:
    sig = law.signature
    axes = []
    for slot in sig.slots:
        axes.append({W: weights, CE: centres, CO: colours}[slot.kind])
    return sorted(Letter(sig, vals) for vals in cartesian(*axes))


class ScaledEvaluator:
    """Integer form of :class:`Evaluator` for batch checks over a fixed letter set.

    With E(n) = lcm of the denominators of term_x(n) over ``universe`` and
    D_N = E(1) ... E(N), every D_N M^N(w) is an integer (each n occurs at most
    once per summand), computed by

        I_w'[N] = E(N) I_w'[N-1] + e_x(N) I_w[N-1],   e_x(n) = E(n) term_x(n).

    The vector over N is also kept packed into one integer, entry n in a slot
    sized for D_n, so a linear combination of words costs one big-integer
    multiply-add per term.
    """

    def __init__(self, Nmax: int, universe, centre=0, power: int = 1):
        self.base = Evaluator(Nmax, centre, 1, power)
        self.Nmax = Nmax
        E = [mpz(1)] * (Nmax + 1)
        for l in universe:
            t = self.base.letter_terms(l)
            for n in range(1, Nmax + 1):
                E[n] = lcm(E[n], mpz(t[n].denominator))
        self.E = E
        D = [mpz(1)]
        for n in range(1, Nmax + 1):
            D.append(D[-1] * E[n])
        self.D = D
        # packed vectors are only read as tails, so they hold entries 0..Nmax-1;
        # slot n is byte-aligned and sized for D_n, and widths are checked before every packed sum
        self.widths = [(int(d.bit_length()) + 64 + 7) // 8 * 8 for d in D[:-1]]
        self.offsets = [0]
        for wd in self.widths[:-1]:
            self.offsets.append(self.offsets[-1] + wd)
        self._cuts = [(o // 8, (o + wd) // 8) for o, wd in zip(self.offsets, self.widths)]
        self._nbytes = (self.offsets[-1] + self.widths[-1]) // 8 if Nmax else 0
        self._halves = [1 << (wd - 1) for wd in self.widths]
        self._bias = mpz(sum(h << o for h, o in zip(self._halves, self.offsets)))
        self._slotbits = [0] * Nmax
        self.headroom = min(self.widths, default=1 << 30)
        self._eint: dict = {}
        self._e: dict = {}
        self._words: dict = {(): D}
        self._packed: dict = {}

    def _letter(self, l):
        got = self._e.get(l)
        if got is None:
            t = self.base.letter_terms(l)
            got = [mpz(0)]
            for n in range(1, self.Nmax + 1):
                q = t[n] * self.E[n]
                if q.denominator != 1:
                    raise ValueError(f"letter {l} lies outside the evaluator's letter set")
                got.append(mpz(q.numerator))
            self._e[l] = got
        return got

    def vector(self, w) -> list:
        got = self._words.get(w)
        if got is not None:
            return got
        i = len(w)
        while i > 0 and w[i - 1:] in self._words:
            i -= 1
        E = self.E
        for j in range(i - 1, -1, -1):
            tail = self._words[w[j + 1:]]
            e = self._letter(w[j])
            v = [mpz(0)]
            acc = mpz(0)
            for n in range(1, self.Nmax + 1):
                acc = acc * E[n] + e[n] * tail[n - 1]
                v.append(acc)
            self._words[w[j:]] = v
        return self._words[w]

    def packed(self, w):
        """Entries 0..Nmax-1 of the scaled vector of w as one integer."""
        got = self._packed.get(w)
        if got is None:
            v = self.vector(w)
            sb = self._slotbits
            for n, x in enumerate(v[:-1]):
                b = int(x.bit_length())
                if b > sb[n]:
                    sb[n] = b
                    self.headroom = min(self.headroom, self.widths[n] - b)
            got = mpz(0)
            for x, o in zip(v, self.offsets):
                got += mpz(x) << o
            self._packed[w] = got
        return got

    def unpack(self, x) -> list:
        raw = (x + self._bias).to_bytes(self._nbytes, "little")
        return [int.from_bytes(raw[i:j], "little") - h for (i, j), h in zip(self._cuts, self._halves)]

    def apply_letter(self, x, G) -> list:
        """Scaled M-vector of x.P from the scaled vector G of P."""
        e = self._letter(x)
        E = self.E
        out = [mpz(0)]
        acc = mpz(0)
        for n in range(1, self.Nmax + 1):
            acc = acc * E[n] + e[n] * G[n - 1]
            out.append(acc)
        return out

    def combination(self, terms: dict) -> tuple:
        """(B, [S_0..S_Nmax]) with B * sum c_w M^N(w) = S_N / D_N.

        Terms are grouped by first letter x, and each group's tail sum G_x is
        formed in packed form.  The letter recursion is linear, so all groups
        share one pass:  S_N = E(N) S_{N-1} + sum_x e_x(N) G_x[N-1],
        starting from S_0 = the constant coefficient.
        """
        if not terms:
            return 1, [mpz(0)] * (self.Nmax + 1)
        B = reduce(lcm, {c.denominator for c in terms.values()}, 1)
        if B == 1:
            nums = [(w, c.numerator) for w, c in terms.items()]
        else:
            nums = [(w, c.numerator * (B // c.denominator)) for w, c in terms.items()]
        amax = (B * max(map(abs, terms.values()))).numerator
        get = self._packed.get
        groups: dict = {}
        const = 0
        # products list terms in runs sharing a first letter; sum each run locally
        cur = g = None
        for w, a in nums:
            if not w:
                const = a
                continue
            x = get(w[1:])
            if x is None:
                x = self.packed(w[1:])
            f = w[0]
            if f is cur:
                g += a * x
            else:
                if cur is not None:
                    h = groups.get(cur)
                    groups[cur] = g if h is None else h + g
                cur, g = f, a * x
        if cur is not None:
            h = groups.get(cur)
            groups[cur] = g if h is None else h + g
        N = self.Nmax
        if int(amax.bit_length()) + len(terms).bit_length() + 1 >= self.headroom:
            # too wide for the packed slots: sum entrywise
            S = [mpz(0)] * (N + 1)
            for w, c in terms.items():
                a = c.numerator * (B // c.denominator)
                v = self.vector(w)
                for n in range(N + 1):
                    S[n] += a * v[n]
            return B, S
        H = [0] * N  # H[n-1] = sum_x e_x(n) G_x[n-1]
        eint = self._eint
        unpack = self.unpack
        for x, g in groups.items():
            e = eint.get(x)
            if e is None:
                e = eint[x] = [int(v) for v in self._letter(x)[1:]]
            H = [h + en * gn for h, en, gn in zip(H, e, unpack(g))]
        acc = mpz(const)
        S = [acc]
        for En, hn in zip(self.E[1:], H):
            acc = acc * En + hn
            S.append(acc)
        return B, S


def verify_grid(law, Nmax=12, max_length=2, weights=(1, 2, 3), centres=(0, -1, "1/2", "1/3"),
                colours=(1, "1/2", "-1/3"), centre=0, power: int = 1, max_failures: int = 20) -> GridReport:
    """Check the identity for every unordered pair of indices and every N <= Nmax.

    The product is commutative for these laws, so each unordered pair
    {u, v} is checked once (u before v in canonical order).  Both sides are
    compared exactly after clearing denominators:
    B D_N^2 M(u) M(v) = D_N S_N.
    """
    law = _law(law)
    letters = grid_letters(law, weights, centres, colours)
    words = [()]
    layer = [()]
    for _ in range(max_length):
        layer = [w + (l,) for w in layer for l in letters]
        words.extend(layer)
    universe = set(letters)
    for x in letters:
        for y in letters:
            universe.update(law.phi_terms(x, y))
    ev = ScaledEvaluator(Nmax, universe, centre, power)
    vec = [ev.vector(w) for w in words]
    D = ev.D
    failures = []
    checks = pairs = 0
    rng = range(Nmax + 1)
    saved = law.cache_limit
    law.cache_limit = max(saved, 4 * len(words) * (len(letters) + 1))
    # millions of acyclic dicts/tuples: the cycle collector only costs time here
    gc_was_on = gc.isenabled()
    gc.disable()
    try:
        for i, u in enumerate(words):
            mu = vec[i]
            for j in range(i, len(words)):
                v = words[j]
                mv = vec[j]
                B, S = ev.combination(product_terms(u, v, law))
                pairs += 1
                checks += Nmax + 1
                if [B * a * b for a, b in zip(mu, mv)] != [d * x for d, x in zip(D, S)]:
                    for n in rng:
                        if B * mu[n] * mv[n] != D[n] * S[n]:
                            if len(failures) < max_failures:
                                lhs = mpq(mu[n] * mv[n], D[n] * D[n])
                                failures.append((n, u, v, lhs, mpq(S[n], B * D[n])))
                            break
    finally:
        law.cache_limit = saved
        if gc_was_on:
            gc.enable()
    return GridReport(law.name, len(letters), len(words), pairs, Nmax, checks, failures)


def describe_failure(f) -> str:
    n, u, v, lhs, rhs = f
    return f"N={n} {word_text(u)} * {word_text(v)}: {lhs} != {rhs}"
