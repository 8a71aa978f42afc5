import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from phishuffle import NcPoly, make_law, partial_fraction, phi_shuffle, phi_shuffle_poly, rational
from phishuffle.words import conc, parse_poly

from conftest import ABC, W, law_zoo, naive_product, w, words_over


def as_fracs(P):
    return {k: Fraction(c.numerator, c.denominator) for k, c in P.items()}


def interleavings(u, v):
    """Count of position subsets placing u inside u+v giving each word."""
    n = len(u) + len(v)
    out: dict = {}
    for pos in itertools.combinations(range(n), len(u)):
        it_u, it_v = iter(u), iter(v)
        s = set(pos)
        word = tuple(next(it_u) if i in s else next(it_v) for i in range(n))
        out[word] = out.get(word, 0) + 1
    return out


@pytest.mark.parametrize("label,law,window", law_zoo(), ids=[z[0] for z in law_zoo()])
def test_unit_and_recursion_match_naive(label, law, window):
    rng = random.Random(label)
    sig = window[0].signature
    one = NcPoly.one(sig)
    for _ in range(25):
        m = rng.randint(0, 3)
        n = rng.randint(0, 6 - m)
        u = tuple(rng.choice(window) for _ in range(m))
        v = tuple(rng.choice(window) for _ in range(n))
        P = phi_shuffle(u, v, law, signature=sig)
        assert as_fracs(P) == naive_product(u, v, law)
        assert phi_shuffle((), v, law, signature=sig) == NcPoly(sig, {v: 1})
        assert phi_shuffle(u, (), law, signature=sig) == NcPoly(sig, {u: 1})
        if u and v:
            a, b = NcPoly(sig, {u[:1]: 1}), NcPoly(sig, {v[:1]: 1})
            rhs = (
                conc(a, phi_shuffle(u[1:], v, law, signature=sig))
                + conc(b, phi_shuffle(u, v[1:], law, signature=sig))
                + conc(law(u[0], v[0]) + NcPoly.zero(sig), phi_shuffle(u[1:], v[1:], law, signature=sig))
            )
            assert P == rhs
        assert phi_shuffle_poly(NcPoly(sig, {u: 1}), one, law) == NcPoly(sig, {u: 1})


def test_letter_product_examples():
    law = make_law("stuffle")
    y1 = W.letter(1)
    assert phi_shuffle((y1,), (y1,), law) == parse_poly("2 y1.y1 + y2", W)
    for label, law, (a, b, _) in law_zoo():
        sig = a.signature
        expected = NcPoly(sig, {(a, b): 1}) + NcPoly(sig, {(b, a): 1}) + law(a, b)
        assert phi_shuffle((a,), (b,), law, signature=sig) == expected, label


def test_shuffle_example():
    assert phi_shuffle(w("a.b"), w("c"), make_law("shuffle")) == parse_poly("a.b.c + a.c.b + c.a.b", ABC)


def test_shuffle_counts_interleavings():
    law = make_law("shuffle")
    letters = [ABC.letter(s) for s in "ab"]
    for u in words_over(letters, 3):
        for v in words_over(letters, 6 - len(u)):
            got = {k: int(c) for k, c in phi_shuffle(u, v, law, signature=ABC).items()}
            assert got == interleavings(u, v)


@pytest.mark.parametrize("label,law,window", law_zoo(), ids=[z[0] for z in law_zoo()])
def test_degree_bound_and_leading_term(label, law, window):
    shuffle = make_law("shuffle")
    sig = window[0].signature
    for u in words_over(window[:2], 3):
        for v in words_over(window[:2], 3):
            P = phi_shuffle(u, v, law, signature=sig)
            Q = phi_shuffle(u, v, shuffle, signature=sig)
            assert P.deg() <= len(u) + len(v)
            assert P.deg() == len(u) + len(v)
            assert (P - Q).deg() < len(u) + len(v)


def test_memo_matches_unmemoised():
    for label, law, window in law_zoo():
        sig = window[0].signature
        for u in words_over(window, 2):
            for v in words_over(window, 2):
                assert phi_shuffle(u, v, law, memo=False, signature=sig) == phi_shuffle(u, v, law, signature=sig)


def test_poly_linearity():
    law = make_law("qinfiltration", {"q": "1/2"})
    P = parse_poly("a + b", ABC)
    C = parse_poly("c", ABC)
    assert phi_shuffle_poly(P, C, law) == phi_shuffle(w("a"), w("c"), law) + phi_shuffle(w("b"), w("c"), law)


y_letters = [W.letter(i) for i in (1, 2)]
small = st.dictionaries(
    st.lists(st.sampled_from(y_letters), max_size=2).map(tuple),
    st.integers(-3, 3),
    max_size=3,
).map(lambda d: NcPoly(W, d))


@given(small, small, small)
def test_stuffle_poly_associative(P, Q, R):
    law = make_law("stuffle")
    assert phi_shuffle_poly(phi_shuffle_poly(P, Q, law), R, law) == phi_shuffle_poly(P, phi_shuffle_poly(Q, R, law), law)


def test_long_words_do_not_hit_recursion_limit():
    law = make_law("stuffle")
    u = (W.letter(1),) * 300
    v = (W.letter(2),)
    P = phi_shuffle(u, v, law)
    assert len(P) == 301 + 300
    assert P.deg() == 301


def pf_oracle(s, r, a, b, x):
    return 1 / ((x - a) ** s * (x - b) ** r)


def test_partial_fraction_simple_poles():
    a, b = rational("1/3"), rational(-2)
    pf = partial_fraction(1, 1, a, b)
    assert pf.a_coeffs == (1 / (a - b),)
    assert pf.b_coeffs == (1 / (b - a),)


def test_partial_fraction_evaluation_oracle():
    pf = partial_fraction(2, 3, 0, "1/2")
    for x in range(2, 8):
        assert pf(x) == pf_oracle(2, 3, 0, rational("1/2"), rational(x))


@given(
    st.integers(1, 4),
    st.integers(1, 4),
    st.fractions(-3, 3, max_denominator=5),
    st.fractions(-3, 3, max_denominator=5),
)
def test_partial_fraction_symmetry_and_identity(s, r, a, b):
    if a == b:
        with pytest.raises(ValueError):
            partial_fraction(s, r, a, b)
        return
    pf = partial_fraction(s, r, a, b)
    assert pf.a_coeffs == partial_fraction(r, s, b, a).b_coeffs
    a, b = rational(a), rational(b)
    pts = [rational(k) + rational("1/7") for k in range(4, 4 + s + r + 1)]
    for x in pts:
        assert pf(x) == pf_oracle(s, r, a, b, x)
