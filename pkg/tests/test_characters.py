import itertools
from fractions import Fraction
from functools import lru_cache
from math import factorial

import pytest

from tracepoly.characters import (IntPartition, central_projection, char_table, character_element,
                                  chi_q_decompose, cycle_type, dim_hook, irr_character, partitions,
                                  restricted_character, restricted_character_element, ssyt_count)
from tracepoly.group_algebra import GAElement, chi_q
from tracepoly.perm import Perm, all_perms, compose

F = Fraction


# -- oracle: Young's seminormal form -------------------------------------------------


def standard_tableaux(shape):
    """Standard tableaux as dicts letter -> (row, col), letters 1..|shape|."""
    m = sum(shape)
    out = []

    def rec(filled, pos):
        k = sum(filled)
        if k == m:
            out.append(dict(pos))
            return
        for r in range(len(shape)):
            c = filled[r]
            if c < shape[r] and (r == 0 or filled[r - 1] > c):
                filled[r] += 1
                pos[k + 1] = (r, c)
                rec(filled, pos)
                filled[r] -= 1
                del pos[k + 1]

    rec([0] * len(shape), {})
    return out


@lru_cache(maxsize=None)
def seminormal(shape):
    tabs = standard_tableaux(shape)
    keys = [tuple(sorted(t.items())) for t in tabs]
    index = {k: i for i, k in enumerate(keys)}
    m, d = sum(shape), len(tabs)
    gens = []
    for i in range(1, m):
        M = [[F(0)] * d for _ in range(d)]
        for t, T in enumerate(tabs):
            (r1, c1), (r2, c2) = T[i], T[i + 1]
            r = (c2 - r2) - (c1 - r1)
            M[t][t] = F(1, r)
            S = dict(T)
            S[i], S[i + 1] = T[i + 1], T[i]
            k = tuple(sorted(S.items()))
            if k in index:
                s = index[k]
                M[s][t] = F(1) if r > 0 else 1 - F(1, r * r)
        gens.append(M)
    return tabs, gens


def matmul(A, B):
    return [[sum((A[i][k] * B[k][j] for k in range(len(B))), F(0)) for j in range(len(B[0]))] for i in range(len(A))]


def rep_matrix(shape, images):
    """rho(g) for g in S_m given by images on 0..m-1 (letter x+1 <-> point x)."""
    tabs, gens = seminormal(shape)
    d = len(tabs)
    R = [[F(int(i == j)) for j in range(d)] for i in range(d)]
    # bubble sort writes g (or its inverse; traces do not care) as adjacent transpositions
    word = []
    arr = list(images)
    for _ in range(len(arr)):
        for j in range(len(arr) - 1):
            if arr[j] > arr[j + 1]:
                arr[j], arr[j + 1] = arr[j + 1], arr[j]
                word.append(j + 1)
    for a in word:
        R = matmul(R, gens[a - 1])
    return R


def oracle_character(shape, images):
    R = rep_matrix(shape, images)
    return sum(R[i][i] for i in range(len(R)))


def points_to_images(alpha: Perm):
    """S_0(n) acting on {0..n}; the point 0 becomes the last letter."""
    n = alpha.n
    relabel = lambda x: n if x == 0 else x - 1
    img = [0] * (n + 1)
    for x in range(n + 1):
        img[relabel(x)] = relabel(alpha(x))
    return img


@pytest.mark.parametrize("m", range(2, 6))
def test_seminormal_oracle_is_a_representation(m):
    for shape in partitions(m):
        _, gens = seminormal(tuple(shape))
        d = len(gens[0])
        eye = [[F(int(i == j)) for j in range(d)] for i in range(d)]
        for i, s in enumerate(gens):
            assert matmul(s, s) == eye
            if i + 1 < len(gens):
                t = gens[i + 1]
                assert matmul(matmul(s, t), s) == matmul(matmul(t, s), t)
            for j in range(i + 2, len(gens)):
                assert matmul(s, gens[j]) == matmul(gens[j], s)


@pytest.mark.parametrize("n", range(0, 5))
def test_characters_against_seminormal_traces(n):
    t = char_table(n)
    for lam in partitions(n + 1):
        for alpha in all_perms(n):
            assert t(lam, alpha) == oracle_character(tuple(lam), points_to_images(alpha))


def test_character_examples():
    assert all(irr_character((3,), mu) == 1 for mu in partitions(3))
    assert irr_character((1, 1, 1), (3,)) == 1
    assert irr_character((1, 1, 1), (2, 1)) == -1
    assert irr_character((2, 1), (3,)) == -1
    with pytest.raises(ValueError):
        irr_character((2, 1), (2,))


def test_dimensions():
    assert dim_hook((4,)) == 1 and dim_hook((2, 1)) == 2
    for m in range(1, 7):
        assert sum(dim_hook(l) ** 2 for l in partitions(m)) == factorial(m)
        for l in partitions(m):
            assert dim_hook(l) == len(standard_tableaux(tuple(l)))


def test_partition_counts():
    assert [len(list(partitions(m))) for m in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]
    assert IntPartition((2, 1)).conjugate() == IntPartition((2, 1))
    assert IntPartition((3, 1)).conjugate() == IntPartition((2, 1, 1))
    assert set(IntPartition((1,)).covers()) == {IntPartition((2,)), IntPartition((1, 1))}


def ssyt_brute(shape, N):
    cells = [(r, c) for r in range(len(shape)) for c in range(shape[r])]
    count = 0
    for vals in itertools.product(range(1, N + 1), repeat=len(cells)):
        v = dict(zip(cells, vals))
        if all((c == 0 or v[(r, c - 1)] <= v[(r, c)]) and (r == 0 or v[(r - 1, c)] < v[(r, c)]) for r, c in cells):
            count += 1
    return count


def test_ssyt_counts():
    assert ssyt_count((2,), 2) == 3 and ssyt_count((1, 1), 2) == 1
    assert ssyt_count((1, 1, 1), 2) == 0
    for m in range(1, 6):
        for lam in partitions(m):
            for N in (1, 2, 3):
                assert ssyt_count(lam, N) == ssyt_brute(tuple(lam), N)


@pytest.mark.parametrize("n", range(5))
def test_chi_q_decomposition(n):
    t = char_table(n)
    for N in (1, 2, 3, None):
        coef = chi_q_decompose(n, N)
        q0 = F(0) if N is None else F(1, N)
        for mu in t.classes:
            val = sum(c * t(lam, mu) for lam, c in coef.items())
            assert val == q0 ** (n + 1 - len(mu))
    assert chi_q_decompose(1, 2) == {IntPartition((2,)): F(3, 4), IntPartition((1, 1)): F(1, 4)}
    assert {l: c for l, c in chi_q_decompose(3, 1).items() if c} == {IntPartition((4,)): 1}


def test_character_table_orthogonality():
    for n in range(5):
        t = char_table(n)
        for lam in t.irreps:
            for nu in t.irreps:
                s = sum(t.class_size(mu) * t(lam, mu) * t(nu, mu) for mu in t.classes)
                assert s == (factorial(n + 1) if lam == nu else 0)
    assert char_table(1).to_tsv().splitlines()[1:] == ["(2)\t1\t1", "(1,1)\t-1\t1"]


def test_restricted_character_examples():
    assert restricted_character((1,), (2,), Perm.identity(1)) == 1
    assert restricted_character((1,), (2,), Perm.parse("(0 1)")) == 1
    assert restricted_character((1,), (1, 1), Perm.parse("(0 1)")) == -1
    with pytest.raises(ValueError):
        restricted_character((1,), (3,), Perm.identity(1))
    a = restricted_character_element((1,), (2,), 1)
    b = restricted_character_element((1,), (1, 1), 1)
    for q0 in (F(1, 2), F(-1, 3), F(0)):
        assert chi_q(b.star() * a).eval(q0) == 0


@pytest.mark.parametrize("n", range(1, 4))
def test_restricted_characters_against_branching(n):
    """Trace of rho^lam'(alpha) over the standard tableaux whose box lam'/lam holds the last letter."""
    for lam_p in partitions(n + 1):
        tabs, _ = seminormal(tuple(lam_p))
        for lam in partitions(n):
            if lam_p not in lam.covers():
                continue
            for alpha in all_perms(n):
                R = rep_matrix(tuple(lam_p), points_to_images(alpha))
                box = [r for r in range(len(lam_p)) if (lam[r] if r < len(lam) else 0) != lam_p[r]][0]
                want = sum(R[i][i] for i, T in enumerate(tabs) if T[n + 1][0] == box)
                assert restricted_character(lam, lam_p, alpha) == want
        for alpha in all_perms(n):
            total = sum(restricted_character(l, lam_p, alpha) for l in partitions(n) if lam_p in l.covers())
            assert total == irr_character(lam_p, cycle_type(alpha))


def test_restricted_characters_are_class_functions_under_S_n():
    from tracepoly.perm import all_perms_fixing_zero
    for alpha in all_perms(3):
        for s in all_perms_fixing_zero(3):
            beta = compose(compose(s, alpha), s.inverse())
            assert restricted_character((2, 1), (3, 1), alpha) == restricted_character((2, 1), (3, 1), beta)


def test_central_projections():
    for n in range(4):
        ps = {l: central_projection(l) for l in partitions(n + 1)}
        total = GAElement(n)
        for l, p in ps.items():
            total = total + p
            assert p * p == p
            for m, r in ps.items():
                if m != l:
                    assert (p * r).is_zero()
        assert total == GAElement.one(n)
    assert (character_element((2,)) * character_element((1, 1))).is_zero()
