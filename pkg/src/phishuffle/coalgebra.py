"""Deconcatenation, the coproduct dual to a phi-shuffle, and bialgebra checks."""

from __future__ import annotations

from .errors import NotDualizableError
from .laws import PhiLaw, structure_constants
from .shuffle import _signature_for, product_terms
from .words import ONE, ZERO, NcPoly, Tensor2, check_word, word_text


def _sig(w, signature):
    if signature is not None:
        return signature
    if w:
        return w[0].signature
    raise ValueError("the empty word needs an explicit signature")


def delta_conc(w, signature=None) -> Tensor2:
    """sum over uv = w of u (x) v."""
    w = tuple(w)
    sig = _sig(w, signature)
    w = check_word(sig, w)
    return Tensor2._raw(sig, {(w[:i], w[i:]): ONE for i in range(len(w) + 1)})


def delta_conc_plus(w, signature=None) -> Tensor2:
    """Proper cuts only: u, v both nonempty."""
    w = tuple(w)
    sig = _sig(w, signature)
    w = check_word(sig, w)
    return Tensor2._raw(sig, {(w[:i], w[i:]): ONE for i in range(1, len(w))})


def delta_conc_poly(P: NcPoly) -> Tensor2:
    out: dict = {}
    for w, c in P.items():
        for i in range(len(w) + 1):
            k = (w[:i], w[i:])
            s = out.get(k, ZERO) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return Tensor2._raw(P.signature, out)


def _apply_first(terms: dict, proper: bool) -> dict:
    """(Delta (x) id (x) ... (x) id) on a multi-tensor {(w1, ..., wk): c}."""
    out: dict = {}
    lo = 1 if proper else 0
    for key, c in terms.items():
        head, rest = key[0], key[1:]
        hi = len(head) if proper else len(head) + 1
        for i in range(lo, hi):
            k = (head[:i], head[i:]) + rest
            out[k] = out.get(k, ZERO) + c
    return {k: c for k, c in out.items() if c}


def _apply_last(terms: dict) -> dict:
    out: dict = {}
    for key, c in terms.items():
        init, tail = key[:-1], key[-1]
        for i in range(len(tail) + 1):
            k = init + (tail[:i], tail[i:])
            out[k] = out.get(k, ZERO) + c
    return {k: c for k, c in out.items() if c}


def delta_conc_plus_iterate(w, k: int) -> dict:
    """k-th iterate of the reduced coproduct, as {(w1, ..., w_{k+1}): c}.

    Iterate 0 is w itself; iterate k splits w into k+1 nonempty factors.
    """
    terms = {(tuple(w),): ONE}
    for _ in range(k):
        terms = _apply_first(terms, proper=True)
    return terms


def coassociativity_sides(w):
    """((Delta (x) id) Delta w, (id (x) Delta) Delta w) as 3-fold tensors."""
    d = {k: c for k, c in delta_conc(w).items()} if w else {((), ()): ONE}
    return _apply_first(d, proper=False), _apply_last(d)


def counit(P) -> object:
    """Constant term <P|1>."""
    if isinstance(P, NcPoly):
        return P.coeff(())
    return ONE if not tuple(P) else ZERO


def counit_sides(T: Tensor2):
    """((eps (x) id) T, (id (x) eps) T) as polynomials."""
    left: dict = {}
    right: dict = {}
    for (u, v), c in T.items():
        if not u:
            left[v] = left.get(v, ZERO) + c
        if not v:
            right[u] = right.get(u, ZERO) + c
    clean = lambda d: NcPoly._raw(T.signature, {w: c for w, c in d.items() if c})
    return clean(left), clean(right)


def letter_coproduct(z, law: PhiLaw, window=None) -> Tensor2:
    """z (x) 1 + 1 (x) z + sum gamma^z_{x,y} x (x) y.

    With ``window=None`` the law's own preimage enumeration is used.  A law
    known to be non-dualizable is refused outright; a window that misses
    preimages the law can enumerate is refused too.
    """
    sig = z.signature
    if law.dualizable is False:
        raise NotDualizableError(
            f"law {law.name} is not dualizable: letter {z} has infinitely many phi-preimages", z
        )
    exact = law.preimages(z)
    if window is None:
        if exact is None:
            raise NotDualizableError(f"law {law.name} cannot enumerate preimages of {z}; pass a window", z)
        pairs = exact
    else:
        window = set(window)
        if exact is not None:
            missing = [(x, y) for x, y in exact if x not in window or y not in window]
            if missing:
                x, y = missing[0]
                raise NotDualizableError(f"window misses preimage ({x},{y}) of letter {z}", z)
        pairs = [(c.x, c.y) for c in structure_constants(law, z, window)]
    terms = {((z,), ()): ONE, ((), (z,)): ONE}
    for x, y in pairs:
        g = law.phi_terms(x, y).get(z)
        if g:
            terms[((x,), (y,))] = terms.get(((x,), (y,)), ZERO) + g
    return Tensor2._raw(sig, {k: c for k, c in terms.items() if c})


def delta_phi(w, law: PhiLaw, window=None, signature=None) -> Tensor2:
    """Multiplicative extension Delta(z1) Delta(z2) ... Delta(zn), componentwise concatenation."""
    w = tuple(w)
    sig = signature or law.signature or _sig(w, None)
    w = check_word(sig, w)
    out = Tensor2._raw(sig, {((), ()): ONE})
    cache: dict = {}
    for z in w:
        d = cache.get(z)
        if d is None:
            d = cache[z] = letter_coproduct(z, law, window)
        out = out * d
    return out


def pairing(T: Tensor2, u, v):
    """<T | u (x) v>."""
    return T.coeff(tuple(u), tuple(v))


def duality_check(u, v, w, law: PhiLaw, window=None, signature=None) -> bool:
    """<u *phi v | w> == <u (x) v | Delta_phi(w)>."""
    u, v, w = tuple(u), tuple(v), tuple(w)
    sig = _signature_for(law, u, v, w, signature=signature)
    lhs = product_terms(u, v, law).get(w, ZERO)
    rhs = pairing(delta_phi(w, law, window, sig), u, v)
    return lhs == rhs


def tensor_phi_product(S: Tensor2, T: Tensor2, law: PhiLaw) -> Tensor2:
    """(a (x) b)(c (x) d) = (a *phi c) (x) (b *phi d), bilinearly."""
    S._same(T)
    out: dict = {}
    for (a, b), x in S.items():
        for (c, d), y in T.items():
            left = product_terms(a, c, law)
            right = product_terms(b, d, law)
            xy = x * y
            for p, e in left.items():
                pe = xy * e
                for q, f in right.items():
                    k = (p, q)
                    s = out.get(k, ZERO) + pe * f
                    if s:
                        out[k] = s
                    else:
                        out.pop(k, None)
    return Tensor2._raw(S.signature, out)


def bialgebra_sides(w1, w2, law: PhiLaw, signature=None):
    """(Delta_conc(w1 *phi w2), Delta_conc(w1) Delta_conc(w2)) with the phi product on factors."""
    w1, w2 = tuple(w1), tuple(w2)
    sig = _signature_for(law, w1, w2, signature=signature)
    prod = NcPoly._raw(sig, dict(product_terms(w1, w2, law)))
    lhs = delta_conc_poly(prod)
    rhs = tensor_phi_product(delta_conc(w1, sig), delta_conc(w2, sig), law)
    return lhs, rhs


def bialgebra_check(w1, w2, law: PhiLaw, signature=None) -> bool:
    lhs, rhs = bialgebra_sides(w1, w2, law, signature)
    return lhs == rhs


def format_multi_tensor(terms: dict) -> str:
    if not terms:
        return "0"
    parts = []
    for key, c in sorted(terms.items(), key=lambda kv: tuple((len(w), tuple(l.key for l in w)) for w in kv[0])):
        parts.append(f"{c} " + " ⊗ ".join(word_text(w) for w in key))
    return " + ".join(parts)
