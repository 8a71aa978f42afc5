import itertools

import pytest

from phishuffle import (
    NcPoly,
    NotDualizableError,
    Signature,
    Tensor2,
    bialgebra_check,
    delta_conc,
    delta_conc_plus,
    delta_conc_plus_iterate,
    delta_phi,
    duality_check,
    make_law,
    pairing,
)
from phishuffle.coalgebra import coassociativity_sides, counit, counit_sides, letter_coproduct
from phishuffle.words import parse_letter

from conftest import ABC, W, w, words_over

a, b = ABC.letter("a"), ABC.letter("b")
Y = [W.letter(i) for i in (1, 2, 3, 4)]


def T(sig, d):
    return Tensor2(sig, d)


def test_delta_conc_examples():
    assert delta_conc((), ABC) == T(ABC, {((), ()): 1})
    assert delta_conc(w("a.b")) == T(ABC, {((a, b), ()): 1, ((a,), (b,)): 1, ((), (a, b)): 1})


def test_coassociative_and_counital():
    for u in words_over([a, b, ABC.letter("c")], 4):
        left, right = coassociativity_sides(u)
        assert left == right
        if u:
            l, r = counit_sides(delta_conc(u))
            assert l == NcPoly(ABC, {u: 1}) == r


def test_counit():
    assert counit(NcPoly(ABC, {(): 3, (a,): 2})) == 3
    assert counit(w("a")) == 0
    assert counit(()) == 1


def test_delta_plus():
    assert delta_conc_plus(w("a")) == Tensor2.zero(ABC)
    assert delta_conc_plus(w("a.b")) == T(ABC, {((a,), (b,)): 1})


@pytest.mark.parametrize("n", range(1, 6))
def test_delta_plus_nilpotent(n):
    u = tuple(itertools.islice(itertools.cycle([a, b]), n))
    assert delta_conc_plus_iterate(u, n - 1) == {tuple((x,) for x in u): 1}
    assert delta_conc_plus_iterate(u, n) == {}


def test_delta_phi_examples():
    st = make_law("stuffle")
    y1, y2 = Y[0], Y[1]
    assert delta_phi((y2,), st, [y1]) == T(W, {((y2,), ()): 1, ((), (y2,)): 1, ((y1,), (y1,)): 1})
    assert delta_phi((a,), make_law("shuffle"), signature=ABC) == T(ABC, {((a,), ()): 1, ((), (a,)): 1})


def test_delta_phi_boundary_terms():
    st = make_law("stuffle")
    for u in words_over(Y[:3], 3, 1):
        D = delta_phi(u, st)
        assert pairing(D, u, ()) == 1 and pairing(D, (), u) == 1


def test_duality_examples():
    st = make_law("stuffle")
    y1, y2 = Y[0], Y[1]
    assert duality_check((y1,), (y1,), (y2,), st)
    assert pairing(delta_phi((y2,), st), (y1,), (y1,)) == 1
    assert duality_check((a,), (b,), (a, b), make_law("shuffle"))


def test_duality_exhaustive_small():
    st = make_law("stuffle")
    ys = Y[:2]
    for u in words_over(ys, 3):
        for v in words_over(ys, 3):
            for x in words_over(ys, 3):
                assert duality_check(u, v, x, st, window=None)


@pytest.mark.parametrize("name,params", [("qinfiltration", {"q": "1/2"}), ("qshuffle", {"q": "2/3"}), ("minstuffle", {})])
def test_duality_other_dualizable_laws(name, params):
    law = make_law(name, params)
    letters = [a, b] if name == "qinfiltration" else Y[:2]
    for u in words_over(letters, 2):
        for v in words_over(letters, 2):
            for x in words_over(letters, 3):
                assert duality_check(u, v, x, law, signature=letters[0].signature)


def test_refusal_names_letter():
    hu = make_law("huffle")
    sig = Signature.parse("weight,centre")
    z = parse_letter("(y1,z[0])", sig)
    with pytest.raises(NotDualizableError) as e:
        delta_phi((z,), hu)
    assert e.value.letter is z
    mu = make_law("muffle")
    x1 = parse_letter("x[1]", Signature.parse("colour"))
    with pytest.raises(NotDualizableError):
        delta_phi((x1,), mu, [x1])


def test_window_missing_preimage_refused():
    st = make_law("stuffle")
    with pytest.raises(NotDualizableError):
        letter_coproduct(Y[2], st, [Y[0]])


def test_bialgebra_examples():
    assert bialgebra_check((a,), (b,), make_law("shuffle"))
    assert bialgebra_check((Y[0],), (Y[0], Y[1]), make_law("stuffle"))


def test_bialgebra_exhaustive():
    for law, letters in ((make_law("shuffle"), [a, b]), (make_law("stuffle"), Y[:2])):
        for u in words_over(letters, 4):
            for v in words_over(letters, 4 - len(u)):
                assert bialgebra_check(u, v, law, letters[0].signature)
