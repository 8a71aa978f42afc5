import itertools
from fractions import Fraction
from functools import lru_cache

import pytest
from hypothesis import settings

from phishuffle import Signature, make_law, parse_word

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

ABC = Signature.enum("a", "b", "c")
W = Signature.parse("weight")


def words_over(letters, max_len, min_len=0):
    for n in range(min_len, max_len + 1):
        yield from itertools.product(letters, repeat=n)


def w(text, sig=ABC):
    return parse_word(text, sig)


@pytest.fixture
def abc():
    return ABC


@pytest.fixture
def stuffle():
    return make_law("stuffle")


Z3 = Signature.enum(
    "e", "g", "h",
    table={(x, y): "egh"[("egh".index(x) + "egh".index(y)) % 3] for x in "egh" for y in "egh"},
)
NONCOMM = "a b -> a\nb a -> b\n"
NONASSOC = "a a -> b\na b -> a\n"


def law_zoo():
    """(label, law, 3-letter window) for every built-in law."""
    y = [W.letter(i) for i in (1, 2, 3)]
    col = Signature.parse("colour")
    wc = Signature.parse("weight,colour")
    wz = Signature.parse("weight,centre")
    wzx = Signature.parse("weight,centre,colour")
    abc = [ABC.letter(s) for s in "abc"]
    return [
        ("shuffle", make_law("shuffle"), abc),
        ("stuffle", make_law("stuffle"), y),
        ("minstuffle", make_law("minstuffle"), y),
        ("muffle", make_law("muffle"), [col.letter(x) for x in ("1/2", 2, 3)]),
        ("qshuffle", make_law("qshuffle", {"q": "1/2"}), y),
        ("qshuffle2", make_law("qshuffle2", {"q": "2"}), y),
        ("ldiag", make_law("ldiag", {"qs": "3"}), y),
        ("qinfiltration", make_law("qinfiltration", {"q": "1/2"}), abc),
        ("semigroup", make_law("semigroup", signature=Z3), [Z3.letter(s) for s in "egh"]),
        ("duffle", make_law("duffle"), [wc.letter(1, 2), wc.letter(2, "1/2"), wc.letter(1, "-1/3")]),
        ("huffle", make_law("huffle"), [wz.letter(1, 0), wz.letter(2, "1/2"), wz.letter(1, -1)]),
        ("luffle", make_law("luffle"), [wzx.letter(1, 0, 2), wzx.letter(2, "1/2", "1/2"), wzx.letter(1, "1/3", -1)]),
        ("custom", make_law("custom", {"text": NONCOMM}, ABC), abc),
    ]


def naive_product(u, v, law):
    """Direct transcription of the defining recursion, Fraction coefficients."""

    @lru_cache(maxsize=None)
    def rec(u, v):
        if not u:
            return {v: Fraction(1)}
        if not v:
            return {u: Fraction(1)}
        out: dict = {}

        def put(k, c):
            out[k] = out.get(k, 0) + c

        for x, c in rec(u[1:], v).items():
            put((u[0],) + x, c)
        for x, c in rec(u, v[1:]).items():
            put((v[0],) + x, c)
        for z, g in law.phi_terms(u[0], v[0]).items():
            for x, c in rec(u[1:], v[1:]).items():
                put((z,) + x, Fraction(g.numerator, g.denominator) * c)
        return out

    return {k: c for k, c in rec(tuple(u), tuple(v)).items() if c}
