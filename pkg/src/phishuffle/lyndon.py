"""Lyndon words, multi-index phi-powers and decomposition in the power basis.

For an associative phi-shuffle, the products

    X^alpha = l_1^{*a_1} * ... * l_r^{*a_r}      (l_1 > ... > l_r Lyndon)

form a linear basis of the polynomial algebra.  Their top-degree part is the
plain shuffle power, whose lexicographically largest word is the
concatenation l_1^{a_1} ... l_r^{a_r} with coefficient a_1! ... a_r!.  That
makes the change of basis triangular, and :func:`decompose_in_basis` solves
it by graded elimination.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial, prod

from .errors import InvariantError, NotAssociativeError
from .laws import PhiLaw, is_associative_on, is_commutative_on
from .shuffle import phi_shuffle_poly
from .words import ONE, ZERO, NcPoly, check_word, rational, word_key, word_text


def _keys(w):
    return tuple(l.key for l in w)


def is_lyndon(w) -> bool:
    """Strictly smaller than every proper nonempty suffix."""
    w = tuple(w)
    if not w:
        raise ValueError("the empty word is not a Lyndon candidate")
    k = _keys(w)
    return all(k < k[i:] for i in range(1, len(k)))


def lyndon_words(window, max_length: int) -> list:
    """All Lyndon words over ``window`` of length <= max_length, in lex order.

    Duval's successor rule: repeat the current word to length n, drop
    trailing maximal letters, bump the last one.
    """
    letters = sorted(set(window))
    if not letters:
        raise ValueError("empty letter window")
    if max_length < 1:
        return []
    n = max_length
    k = len(letters)
    out = []
    w = [-1]
    while w:
        w[-1] += 1
        out.append(tuple(letters[i] for i in w))
        m = len(w)
        while len(w) < n:
            w.append(w[len(w) - m])
        while w and w[-1] == k - 1:
            w.pop()
    return out


def lyndon_factorization(w) -> list:
    """Chen-Fox-Lyndon factorization l_1 >= l_2 >= ... (Duval's algorithm)."""
    w = tuple(w)
    k = _keys(w)
    n = len(w)
    out = []
    i = 0
    while i < n:
        j, m = i + 1, i
        while j < n and k[m] <= k[j]:
            m = i if k[m] < k[j] else m + 1
            j += 1
        while i <= m:
            out.append(w[i:i + j - m])
            i += j - m
    return out


class MultiIndex:
    """Finitely supported map Lyndon word -> positive exponent."""

    __slots__ = ("_items", "_hash")

    def __init__(self, exponents=()):
        items = exponents.items() if isinstance(exponents, dict) else exponents
        acc: dict = {}
        for l, e in items:
            l = tuple(l)
            if not isinstance(e, int) or e < 0:
                raise ValueError(f"exponent of {word_text(l)} must be a natural number, got {e!r}")
            if not l or not is_lyndon(l):
                raise ValueError(f"{word_text(l)} is not a Lyndon word")
            acc[l] = acc.get(l, 0) + e
        # decreasing Lyndon order
        self._items = tuple(sorted(((l, e) for l, e in acc.items() if e), key=lambda kv: _keys(kv[0]), reverse=True))
        self._hash = hash(self._items)

    @classmethod
    def of_word(cls, w) -> MultiIndex:
        acc: dict = {}
        for l in lyndon_factorization(w):
            acc[l] = acc.get(l, 0) + 1
        return cls(acc)

    def items(self):
        return self._items

    def __getitem__(self, l):
        return dict(self._items).get(tuple(l), 0)

    def __len__(self):
        return len(self._items)

    def __eq__(self, other):
        return isinstance(other, MultiIndex) and self._items == other._items

    def __hash__(self):
        return self._hash

    @property
    def norm(self) -> int:
        return sum(e * len(l) for l, e in self._items)

    def word(self) -> tuple:
        """l_1^{a_1} ... l_r^{a_r}: the leading word of the shuffle power."""
        return tuple(x for l, e in self._items for _ in range(e) for x in l)

    def sort_key(self):
        return (self.norm, tuple((_keys(l), e) for l, e in self._items))

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        if not self._items:
            return "{}"
        return "{" + ", ".join(f"{word_text(l, compact=True)}:{e}" for l, e in self._items) + "}"

    __repr__ = __str__


def alpha_norm(alpha: MultiIndex) -> int:
    return alpha.norm


def _power(l, e, law, sig) -> NcPoly:
    base = NcPoly._raw(sig, {l: ONE})
    out = NcPoly.one(sig)
    for _ in range(e):
        out = phi_shuffle_poly(out, base, law)
    return out


def multi_power(alpha: MultiIndex, law: PhiLaw, signature=None, padding=()) -> NcPoly:
    """l_1^{*a_1} * ... * l_r^{*a_r}, factors taken in strictly decreasing order.

    ``padding`` lists extra Lyndon words to include at exponent 0.
    """
    if not isinstance(alpha, MultiIndex):
        alpha = MultiIndex(alpha)
    for l in padding:
        if not is_lyndon(l):
            raise ValueError(f"{word_text(l)} is not a Lyndon word")
    sig = signature or law.signature
    if sig is None:
        for l, _ in alpha.items():
            sig = l[0].signature
            break
        else:
            for l in padding:
                sig = l[0].signature
                break
    if sig is None:
        raise ValueError("cannot infer a signature for the empty multi-index")
    exps = dict(alpha.items())
    for l in padding:
        exps.setdefault(tuple(l), 0)
    out = NcPoly.one(sig)
    for l in sorted(exps, key=_keys, reverse=True):
        out = phi_shuffle_poly(out, _power(check_word(sig, l), exps[l], law, sig), law)
    return out


def enumerate_multi_indices(lyndons, max_norm: int) -> list:
    """Every alpha supported on ``lyndons`` with ||alpha|| <= max_norm, sorted."""
    lyndons = sorted({tuple(l) for l in lyndons if len(l) <= max_norm}, key=_keys)
    out = []

    def rec(start, budget, acc):
        out.append(MultiIndex(dict(acc)))
        for i in range(start, len(lyndons)):
            l = lyndons[i]
            if len(l) <= budget:
                acc[l] = acc.get(l, 0) + 1
                rec(i, budget - len(l), acc)
                acc[l] -= 1
                if not acc[l]:
                    del acc[l]

    rec(0, max_norm, {})
    return sorted(out)


def basis_matrix(alphas, law: PhiLaw, signature=None):
    """Rows = words in the union of supports (canonical order), columns = alphas."""
    cols = [multi_power(a, law, signature) for a in alphas]
    words = sorted({w for P in cols for w, _ in P.items()}, key=word_key)
    return words, [[P.coeff(w) for P in cols] for w in words]


def column_rank(rows) -> int:
    """Exact rank of a rational matrix by Gaussian elimination."""
    m = [[rational(x) for x in r] for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank]
        for r in range(rank + 1, len(m)):
            f = m[r][c]
            if f:
                f = f / p[c]
                m[r] = [x - f * y for x, y in zip(m[r], p)]
        rank += 1
    return rank


@dataclass(frozen=True)
class BasisDecomposition:
    """P = sum_alpha c_alpha X^alpha, understood for the given law."""

    law: PhiLaw
    signature: object
    coefficients: tuple  # ((MultiIndex, Rational), ...) sorted by alpha

    def as_dict(self) -> dict:
        return dict(self.coefficients)

    def reconstruct(self) -> NcPoly:
        out = NcPoly.zero(self.signature)
        for alpha, c in self.coefficients:
            out = out + multi_power(alpha, self.law, self.signature).scale(c)
        return out

    def __str__(self):
        return "\n".join(f"{c}\t{a}" for a, c in self.coefficients) or "0"


def require_ac(law: PhiLaw, window):
    comm = is_commutative_on(law, window)
    if comm.verdict == "no":
        raise NotAssociativeError(f"law {law.name} is not commutative on the window: witness {comm.describe()}")
    assoc = is_associative_on(law, window)
    if assoc.verdict != "yes":
        raise NotAssociativeError(f"law {law.name} is not known associative on the window: {assoc.describe()}")


def decompose_in_basis(P: NcPoly, law: PhiLaw, window=None, check: bool = True) -> BasisDecomposition:
    """Coefficients of P in the basis X^alpha, by graded triangular elimination.

    Repeatedly take the lexicographically largest word w of top degree in
    the remainder; its Lyndon factorization is the only alpha whose power
    reaches w without lower-ranked contributions.  Subtract the matching
    multiple of X^alpha and continue.  Lower-degree letters produced by phi
    (e.g. y4 from y2*y2 under the stuffle) are Lyndon words themselves and
    are absorbed the same way.
    """
    sig = P.signature
    letters = P.letters()
    if window is None:
        window = letters
    window = set(window)
    if not letters <= window:
        raise ValueError("polynomial uses letters outside the window: " + ", ".join(sorted(map(str, letters - window))))
    if check and window:
        require_ac(law, window)
    rest = dict(P.items())
    coeffs: dict = {}
    while rest:
        top = max(len(w) for w in rest)
        w = max((u for u in rest if len(u) == top), key=_keys)
        alpha = MultiIndex.of_word(w)
        lead = prod(factorial(e) for _, e in alpha.items())
        c = rest[w] / lead
        coeffs[alpha] = coeffs.get(alpha, ZERO) + c
        for u, a in multi_power(alpha, law, sig).items():
            s = rest.get(u, ZERO) - c * a
            if s:
                rest[u] = s
            else:
                rest.pop(u, None)
        if w in rest:
            raise InvariantError(f"elimination failed to clear {word_text(w)}")
    items = tuple(sorted(((a, c) for a, c in coeffs.items() if c), key=lambda kv: kv[0].sort_key()))
    return BasisDecomposition(law, sig, items)

