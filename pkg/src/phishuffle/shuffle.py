"""The generic phi-shuffle product and the two-pole partial-fraction kernel.

The product is the unique bilinear map with the empty word as unit and::

    au * bv = a(u * bv) + b(au * v) + phi(a, b)(u * v)

It is evaluated bottom-up over suffix pairs, so long words never hit the
interpreter's recursion limit.  Suffix products are memoised on the law
object; the cache only ever receives idempotent inserts and is flushed
wholesale when it grows past ``law.cache_limit``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .errors import SignatureMismatch
from .words import ONE, ZERO, NcPoly, Rational, check_word, rational


def _merge(out, x, terms, g=None):
    for w, c in terms.items():
        k = (x,) + w
        s = out.get(k, ZERO) + (c if g is None else g * c)
        if s:
            out[k] = s
        else:
            out.pop(k, None)


def _step(a, b, left, right, both, phi_ab) -> dict:
    """Assemble au*bv from u*bv (left), au*v (right) and u*v (both).

    Letters are interned, so blocks with distinct leading letters cannot
    collide and are copied without lookups.
    """
    out = {(a,) + w: c for w, c in left.items()}
    if a is b:
        _merge(out, b, right)
    else:
        out.update({(b,) + w: c for w, c in right.items()})
    for x, g in phi_ab.items():
        if x is a or x is b:
            _merge(out, x, both, g)
        else:
            out.update({(x,) + w: g * c for w, c in both.items()})
    return out


def product_terms(u: tuple, v: tuple, law, cache=None) -> dict:
    """u *_phi v as a raw ``{word: coefficient}`` dict.  Do not mutate it."""
    if cache is None:
        cache = law.product_cache
    key = (u, v)
    got = cache.get(key)
    if got is not None:
        return got
    if not u:
        return {v: ONE}
    if not v:
        return {u: ONE}
    limit = getattr(law, "cache_limit", None)
    phi = law.phi_terms
    u1, v1 = u[1:], v[1:]
    left = cache.get((u1, v)) if u1 else {v: ONE}
    right = cache.get((u, v1)) if v1 else {u: ONE}
    both = cache.get((u1, v1)) if u1 and v1 else {u1 or v1: ONE}
    if left is not None and right is not None and both is not None:
        # all three suffix products are known: one step
        got = _step(u[0], v[0], left, right, both, phi(u[0], v[0]))
        if limit is not None and len(cache) >= limit:
            cache.clear()
        cache[key] = got
        return got
    m, n = len(u), len(v)
    # below[j] holds u[i+1:] * v[j:]
    below = [{v[j:]: ONE} for j in range(n + 1)]
    for i in range(m - 1, -1, -1):
        a = u[i]
        ui = u[i:]
        row = [None] * (n + 1)
        row[n] = {ui: ONE}
        for j in range(n - 1, -1, -1):
            k = (ui, v[j:])
            got = cache.get(k)
            if got is None:
                b = v[j]
                got = _step(a, b, below[j], row[j + 1], below[j + 1], phi(a, b))
                if limit is not None and len(cache) >= limit:
                    cache.clear()
                cache[k] = got
            row[j] = got
        below = row
    return below[0]


def _signature_for(law, *words, signature=None):
    sig = signature or law.signature
    if sig is None:
        for w in words:
            if w:
                sig = w[0].signature
                break
    if sig is None:
        raise SignatureMismatch("cannot infer a signature from empty words; pass signature=")
    return sig


def phi_shuffle(u, v, law, memo: bool = True, signature=None) -> NcPoly:
    """u *_phi v for two words."""
    sig = _signature_for(law, u, v, signature=signature)
    u = check_word(sig, u)
    v = check_word(sig, v)
    law.check_signature(sig)
    terms = product_terms(u, v, law, None if memo else {})
    return NcPoly._raw(sig, dict(terms))


def phi_shuffle_poly(P: NcPoly, Q: NcPoly, law, memo: bool = True) -> NcPoly:
    """Bilinear extension of :func:`phi_shuffle` to polynomials."""
    P._same(Q)
    law.check_signature(P.signature)
    cache = None if memo else {}
    out: dict = {}
    for u, a in P.items():
        for v, b in Q.items():
            ab = a * b
            for w, c in product_terms(u, v, law, cache).items():
                s = out.get(w, ZERO) + ab * c
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
    return NcPoly._raw(P.signature, out)


@dataclass(frozen=True)
class PartialFractionResult:
    """Coefficients of 1/((x-a)^s (x-b)^r) on the poles; index 0 is power 1."""

    a: Rational
    b: Rational
    a_coeffs: tuple
    b_coeffs: tuple

    def __call__(self, x):
        """Evaluate the expansion at a rational point."""
        x = rational(x)
        total = ZERO
        for k, c in enumerate(self.a_coeffs, 1):
            total += c / (x - self.a) ** k
        for k, c in enumerate(self.b_coeffs, 1):
            total += c / (x - self.b) ** k
        return total


def partial_fraction(s: int, r: int, a, b) -> PartialFractionResult:
    """Split 1/((x-a)^s (x-b)^r) into simple poles at a and b."""
    if s < 1 or r < 1:
        raise ValueError("pole orders must be >= 1")
    a, b = rational(a), rational(b)
    if a == b:
        raise ValueError("partial_fraction needs two distinct poles")
    ac = tuple(
        comb(s + r - k - 1, r - 1) * (-1) ** (s - k) / (a - b) ** (s + r - k) for k in range(1, s + 1)
    )
    bc = tuple(
        comb(s + r - k - 1, s - 1) * (-1) ** (r - k) / (b - a) ** (s + r - k) for k in range(1, r + 1)
    )
    return PartialFractionResult(a, b, ac, bc)
