import itertools
import random
from fractions import Fraction

import pytest
from gmpy2 import mpq

from phishuffle import (
    DomainError,
    LawError,
    ZetaIndex,
    make_law,
    phi_shuffle,
    truncated_M,
    truncated_M_char,
    truncated_M_poly,
    verify_grid,
    verify_product_identity,
)
from phishuffle.words import parse_poly, parse_word
from phishuffle.zeta import Evaluator, ScaledEvaluator, grid_letters

from conftest import W


def brute_M(N, s, xi, t, powers=None):
    """Sum over strictly decreasing tuples N >= n_1 > ... > n_r >= 1."""
    powers = powers or (1,) * len(s)
    xi = [Fraction(x) for x in xi]
    t = [Fraction(x) for x in t]
    total = Fraction(0)
    for ns in itertools.combinations(range(N, 0, -1), len(s)):
        term = Fraction(1)
        for n, k, x, z, m in zip(ns, s, xi, t, powers):
            term *= x ** (m * n) / (n - z) ** k
        total += term
    return total


def frac(q):
    return Fraction(int(q.numerator), int(q.denominator))


def test_small_values():
    assert truncated_M(2, ((1,), (1,), (0,))) == Fraction(3, 2)
    assert truncated_M(5, ((), (), ())) == 1
    assert truncated_M(1, ((1, 1), (1, 1), (0, 0))) == 0
    assert truncated_M(0, ((2,), (1,), (0,))) == 0
    assert truncated_M(0, ((), (), ())) == 1


def test_square_identity_at_two():
    # (1 + 1/2)^2 = 2 M(1,1) + M(2) at N = 2
    rep = verify_product_identity(2, parse_word("y1", W), parse_word("y1", W), "stuffle")
    assert rep.lhs == Fraction(9, 4) == rep.rhs


def test_brute_force_oracle():
    rng = random.Random(5)
    for _ in range(40):
        r = rng.randint(1, 3)
        s = tuple(rng.randint(1, 3) for _ in range(r))
        xi = tuple(rng.choice(["1", "-1", "1/2", "-2/3"]) for _ in range(r))
        t = tuple(rng.choice(["0", "-1", "1/2", "-1/3"]) for _ in range(r))
        N = rng.randint(0, 7)
        assert frac(truncated_M(N, ZetaIndex(s, xi, t))) == brute_M(N, s, xi, t)


def test_character_values():
    idx = ZetaIndex((1,), ("1/2",), (0,))
    # sum_{n<=2} (1/4)^n / n = 1/4 + 1/32
    assert truncated_M_char(2, idx, (2,)) == Fraction(9, 32)
    rng = random.Random(9)
    for _ in range(20):
        r = rng.randint(1, 3)
        s = tuple(rng.randint(1, 2) for _ in range(r))
        xi = tuple(rng.choice(["1/2", "-1/3", "2"]) for _ in range(r))
        t = tuple(rng.choice(["0", "1/2"]) for _ in range(r))
        m = tuple(rng.randint(1, 3) for _ in range(r))
        N = rng.randint(0, 6)
        idx = ZetaIndex(s, xi, t)
        assert frac(truncated_M_char(N, idx, m)) == brute_M(N, s, xi, t, m)
        assert truncated_M_char(N, idx, (1,) * r) == truncated_M(N, idx)


@pytest.mark.parametrize("power", [1, 2, 3])
def test_character_product_identity(power):
    law = make_law("duffle")
    sig = law.signature
    u, v = parse_word("(y1,x[1/2])", sig), parse_word("(y2,x[-1/3]).(y1,x[1/2])", sig)
    for N in range(6):
        assert verify_product_identity(N, u, v, law, power=power)


def test_huffle_identity():
    law = make_law("huffle")
    sig = law.signature
    u = parse_word("(y2,z[1/2])", sig)
    v = parse_word("(y1,z[-1]).(y1,z[0])", sig)
    for N in range(11):
        rep = verify_product_identity(N, u, v, law)
        assert rep.equal
    rep = verify_product_identity(10, u, v, law)
    s = (2, 1, 1)
    assert frac(rep.lhs) == brute_M(10, s[:1], (1,), ("1/2",)) * brute_M(10, s[1:], (1, 1), (-1, 0))


def test_identity_refuses_other_laws():
    with pytest.raises(LawError):
        verify_product_identity(3, (), (), "shuffle")


def test_domain_errors():
    with pytest.raises(DomainError):
        ZetaIndex((0,), (1,), (0,))
    with pytest.raises(DomainError):
        ZetaIndex((1,), (0,), (0,))
    with pytest.raises(DomainError):
        ZetaIndex((1,), (1,), (2,))
    with pytest.raises(ValueError):
        ZetaIndex((1, 2), (1,), (0,))


def test_index_word_round_trip():
    sig = make_law("luffle").signature
    idx = ZetaIndex((2, 1), ("1/2", -1), ("1/3", 0))
    assert ZetaIndex.from_word(idx.to_word(sig)) == idx
    with pytest.raises(DomainError):
        idx.to_word(W)


def test_poly_linearity():
    P = parse_poly("2 y1.y1 + y2", W)
    for N in range(6):
        assert truncated_M_poly(N, P) == truncated_M(N, ((1,), (1,), (0,))) ** 2


def test_scaled_matches_rational():
    law = make_law("luffle")
    letters = grid_letters(law, (1, 2), (0, "1/2"), (1, "-1/3"))
    universe = set(letters)
    for x in letters:
        for y in letters:
            universe.update(law.phi_terms(x, y))
    N = 7
    sc = ScaledEvaluator(N, universe)
    ev = Evaluator(N)
    rng = random.Random(3)
    for _ in range(30):
        u = tuple(rng.choice(letters) for _ in range(rng.randint(0, 2)))
        v = tuple(rng.choice(letters) for _ in range(rng.randint(0, 2)))
        terms = dict(phi_shuffle(u, v, law).items())
        B, S = sc.combination(terms)
        exact = ev.poly_vector(terms)
        assert [mpq(S[n], B * sc.D[n]) for n in range(N + 1)] == exact
        assert [mpq(x, d) for x, d in zip(sc.vector(u), sc.D)] == ev.vector(u)


@pytest.mark.parametrize("name", ["stuffle", "duffle", "huffle", "luffle"])
def test_small_grids(name):
    rep = verify_grid(name, Nmax=6, weights=(1, 2), centres=(0, "1/2"), colours=(1, "-1/2"))
    assert rep.ok, rep.failures
    assert rep.pairs == rep.indices * (rep.indices + 1) // 2


def test_grid_detects_a_wrong_law():
    # a deliberately broken stuffle variant: phi(y_i, y_j) = 2 y_{i+j}
    bad = make_law("stuffle")
    orig = bad.phi_terms

    def doubled(a, b):
        return {z: 2 * g for z, g in orig(a, b).items()}

    bad.phi_terms = doubled
    bad.product_cache = {}
    rep = verify_grid(bad, Nmax=3, max_length=1, weights=(1,))
    assert not rep.ok
