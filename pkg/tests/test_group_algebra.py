import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tracepoly.characters import dim_hook, partitions
from tracepoly.group_algebra import (GAElement, chi_q, contract_perm, contract_sequential, coordinates,
                                     ga_gram_of, ga_mul_star, gram_matrix, is_central_in_centralizer,
                                     jucys_murphy, kernel_generator, laplacian_exp, tilde_exponent)
from tracepoly.perm import (Matching, PartialPerm, Perm, all_perms, all_perms_fixing_zero, compose,
                            enumerate_matchings, enumerate_partial_perms)
from tracepoly.scalar import ONE, Q, LaurentScalar, q_pow, rank, sym_rank_psd

P = Perm.parse
F = Fraction


def delta(text, n=None, c=1):
    return GAElement.delta(P(text, n), c)


def remark_exponent(i, j, alpha):
    """Oracle: the four-case classification of a single transposition contraction."""
    cyc = {x: c for c in alpha.cycles() for x in c}
    if alpha(i) == j and alpha(j) == i and 0 not in cyc[i]:
        return -1
    if alpha(i) == i and alpha(j) == j:
        return 0
    if cyc[i] is cyc[j] and len(cyc[i]) >= 3 and (alpha(i) == j or alpha(j) == i):
        return 0
    return 1


def test_group_algebra_examples():
    assert delta("(0 1)") * delta("(0 1)") == GAElement.one(1)
    x = delta("(0 1)") + delta("(0)(1)")
    assert x.star() == x
    assert ga_mul_star("mul", delta("(0 1 2)"), delta("(0 2 1)")) == GAElement.one(2)
    assert ga_mul_star("star", delta("(0 1 2)")) == delta("(0 2 1)")


def test_star_is_anti_multiplicative():
    for a in all_perms(2):
        for b in all_perms(2):
            x = GAElement.delta(a, 2) + GAElement.delta(b, Q)
            y = GAElement.delta(b) + GAElement.delta(compose(a, b), 3)
            assert (x * y).star() == y.star() * x.star()


def test_chi_q_examples():
    assert chi_q(GAElement.one(2)) == ONE
    assert chi_q(delta("(0 1)")) == Q
    assert chi_q(delta("(0 1 2)")) == q_pow(2)


def test_contraction_examples():
    t = Matching(2, [(1, 2)])
    assert contract_perm(t, P("(0)(1 2)")) == contract_perm(t, P("(0)(1 2)"))
    assert tuple(contract_perm(t, P("(0)(1 2)"))) == (q_pow(-1), P("(0)"))
    assert tuple(contract_perm(t, Perm.identity(2))) == (ONE, P("(0)"))
    assert tuple(contract_perm(t, P("(0 1 2)"))) == (ONE, P("(0)"))
    with pytest.raises(ValueError):
        contract_perm(Matching(3, [(1, 2)]), P("(0 1 2)"))


@pytest.mark.parametrize("n", range(2, 6))
def test_transposition_weights_match_classification(n):
    for alpha in all_perms(n):
        for i, j in itertools.combinations(range(1, n + 1), 2):
            r = contract_perm(Matching(n, [(i, j)]), alpha)
            assert r.exponent == remark_exponent(i, j, alpha), (alpha, i, j)


@pytest.mark.parametrize("n", range(2, 6))
def test_sequential_contraction_equals_direct(n):
    for alpha in all_perms(n)[::3]:
        for m in enumerate_matchings("all", n):
            for order in itertools.permutations(m.pairs):
                assert contract_sequential(order, alpha) == contract_perm(m, alpha)


@pytest.mark.parametrize("n", range(2, 5))
def test_contraction_is_conjugation_covariant(n):
    """Conjugating by sigma in S(n) relabels both the matching and the reduced permutation."""
    for sigma in all_perms_fixing_zero(n):
        for m in enumerate_matchings("all", n):
            if not m.pairs:
                continue
            m2 = Matching(n, [(sigma(i), sigma(j)) for i, j in m.pairs])
            kept = [x for x in range(n + 1) if x not in m.support]
            kept2 = sorted(sigma(x) for x in kept)
            # tau: relabelled positions of kept after conjugation
            tau = Perm([kept2.index(sigma(x)) for x in kept])
            for alpha in all_perms(n)[::5]:
                r = contract_perm(m, alpha)
                r2 = contract_perm(m2, compose(compose(sigma, alpha), sigma.inverse()))
                assert r2.exponent == r.exponent
                assert r2.reduced == compose(compose(tau, r.reduced), tau.inverse())


def test_tilde_exponent_is_nonnegative():
    for n in range(1, 6):
        for alpha in all_perms(n)[::2]:
            for m in enumerate_matchings("all", n):
                e = tilde_exponent(m, alpha)
                assert e >= 0
                assert e - contract_perm(m, alpha).exponent == alpha.cyc0 - contract_perm(m, alpha).reduced.cyc0


def test_laplacian_examples():
    assert laplacian_exp("L", delta("(0 1 2)")) == {0: GAElement.one(0)}
    assert laplacian_exp("L", delta("(0)(1 2)")) == {0: GAElement.delta(Perm.identity(0), q_pow(-1))}
    assert laplacian_exp("L", GAElement.one(1)) == {}


def random_ga(n, seed):
    import random
    rng = random.Random(seed)
    perms = all_perms(n)
    return GAElement(n, {rng.choice(perms): LaurentScalar({rng.randint(-1, 1): rng.randint(-3, 3)})
                         for _ in range(4)})


@pytest.mark.parametrize("n", range(6))
def test_exp_series_are_inverse(n):
    for seed in range(3):
        eta = random_ga(n, seed)
        back = laplacian_exp("exp_negL", laplacian_exp("exp_L", eta))
        expect = {n: eta} if not eta.is_zero() else {}
        assert back == expect


def test_exp_L_is_series_of_L():
    """exp(L) = sum_k L^k / k!: the matching sum counts each l-pair matching l! times in L^l."""
    from math import factorial
    for n in range(5):
        for alpha in all_perms(n):
            eta = GAElement.delta(alpha)
            total: dict = {}
            cur = {n: eta}
            k = 0
            while cur:
                for deg, el in cur.items():
                    total[deg] = total.get(deg, GAElement(deg)) + el.scale(Fraction(1, factorial(k)))
                cur = laplacian_exp("L", cur)
                k += 1
            total = {d: e for d, e in total.items() if not e.is_zero()}
            assert total == laplacian_exp("exp_L", eta)


def test_inhomogeneous_laplacian_levels():
    for n, k in [(1, 1), (2, 1), (2, 2), (1, 3)]:
        for alpha in all_perms(n + k)[::2]:
            eta = GAElement.delta(alpha)
            level1 = laplacian_exp("L_inhom_level", eta, n, k, 1)
            assert level1 == laplacian_exp("L_inhom", eta, n, k)
            # only cross transpositions: L minus L_inhom comes from pairs inside one block
            inside = [m for m in enumerate_matchings("all", n + k)
                      if m.num_pairs == 1 and (m.pairs[0][1] <= n or m.pairs[0][0] > n)]
            out: dict = {}
            for m in inside:
                r = contract_perm(m, alpha)
                out[r.reduced] = out.get(r.reduced, LaurentScalar()) + r.weight
            rest = {n + k - 2: GAElement(n + k - 2, out)} if any(out.values()) else {}
            full = laplacian_exp("L", eta)
            got = {d: full[d] - level1.get(d, GAElement(d)) for d in full}
            got = {d: e for d, e in got.items() if not e.is_zero()}
            assert got == rest
    with pytest.raises(ValueError):
        laplacian_exp("L_inhom", GAElement.one(3), 1, 1)


def test_kernel_generator_example():
    pp = PartialPerm(1, {})
    assert pp.num_linear == 2
    eta = kernel_generator(pp, "-")
    assert eta == GAElement.one(1) - delta("(0 1)")
    assert chi_q(eta * eta.star()).eval(1) == 0
    with pytest.raises(ValueError):
        kernel_generator(pp, "*")


def expected_kernel(n, N):
    return sum(dim_hook(l) ** 2 for l in partitions(n + 1) if len(l) > N)


@pytest.mark.parametrize("n,N", [(n, N) for n in range(1, 4) for N in (1, 2, 3)])
def test_kernel_generators_span_the_kernel(n, N):
    for sign, q0 in (("-", F(1, N)), ("+", F(-1, N))):
        gens = [kernel_generator(p, sign) for p in enumerate_partial_perms(n, N + 1)]
        G = gram_matrix(n, q0)
        rows = coordinates(gens, q0, n)
        for r in rows:
            assert G.apply(r) == [0] * G.rows
        assert (rank(rows) if rows else 0) == expected_kernel(n, N)
        rk, psd = sym_rank_psd(G)
        assert psd and G.rows - rk == expected_kernel(n, N)


def test_n_orbit_reading_is_too_large():
    """Generators with N (rather than N + 1) linear orbits leave the kernel."""
    n, N = 2, 1
    gens = [kernel_generator(p, "-") for p in enumerate_partial_perms(n, N)]
    rows = coordinates(gens, F(1, N), n)
    assert rank(rows) > expected_kernel(n, N)


def test_jucys_murphy():
    assert jucys_murphy(0).is_zero()
    assert jucys_murphy(2) == delta("(0 1)", 2) + delta("(0 2)")
    for n in range(5):
        J = jucys_murphy(n)
        assert is_central_in_centralizer(J)
        for s in all_perms_fixing_zero(n):
            d = GAElement.delta(s)
            assert J * d == d * J
    assert not is_central_in_centralizer(delta("(0 1)", 2))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 3), st.integers(0, 10 ** 6), st.sampled_from([F(1, 2), F(-1, 3), F(1)]))
def test_chi_q_gram_matches_element_gram(n, seed, q0):
    xs = [random_ga(n, seed), random_ga(n, seed + 1)]
    G = ga_gram_of(xs, q0)
    for i, x in enumerate(xs):
        for j, y in enumerate(xs):
            assert G[i, j] == chi_q(y.star() * x).eval(q0)


def test_json_round_trip():
    x = random_ga(3, 5)
    assert GAElement.from_json(x.to_json()) == x
