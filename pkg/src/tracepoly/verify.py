"""Property suites run by ``tracepoly verify``.

Each check returns a dict {name, status, detail}; on failure the detail
carries a serialized counterexample.
"""
from __future__ import annotations

import itertools
import random
from fractions import Fraction
from math import factorial
from typing import Callable

from .characters import (central_projection, char_table, chi_q_decompose, dim_hook,
                         irr_character, partitions)
from .fock import FockBasis, create_annihilate, dgamma, field_operator, is_adjoint_pair, operator_matrix, rank_one
from .group_algebra import GAElement, gram_matrix
from .gue import mc_check, wick_moment
from .perm import Perm, all_perms, compose, enumerate_matchings, restrict_relabel, union
from .scalar import Q, LaurentScalar, eval_at_q, sym_rank_psd
from .textio import format_element
from .trace_algebra import (TraceElement, equal_mod_symmetrization, inner_product_q,
                            linearized_moments, multiply, power, star, state_phi)


def _check(name: str, fn: Callable[[], object]) -> dict:
    try:
        res = fn()
    except Exception as exc:  # reported, never raised
        return {"name": name, "status": "error", "detail": f"{type(exc).__name__}: {exc}"}
    if res is None or res is True:
        return {"name": name, "status": "pass", "detail": ""}
    return {"name": name, "status": "fail", "detail": str(res)}


def _random_element(rng: random.Random, maxdeg: int, d: int = 2, nterms: int = 3, basis: str = "I") -> TraceElement:
    terms = {}
    for _ in range(nterms):
        n = rng.randint(0, maxdeg)
        a = rng.choice(all_perms(n))
        w = tuple(rng.randint(1, d) for _ in range(n))
        terms[(a, w)] = LaurentScalar({rng.randint(-1, 1): rng.randint(-3, 3)})
    return TraceElement(terms, basis)


# -- perm ---------------------------------------------------------------------


def suite_perm(max_degree: int = 4, **_) -> list[dict]:
    def union_lengths():
        for n in range(max_degree):
            for k in range(max_degree - n):
                for a in all_perms(n):
                    for b in all_perms(k):
                        u = union(a, b)
                        if u.length != a.length + b.length or u.cyc0 != a.cyc0 + b.cyc0:
                            return f"union({a}, {b}) = {u}"

    def union_assoc():
        for a in all_perms(2):
            for b in all_perms(1):
                for c in all_perms(2):
                    if union(union(a, b), c) != union(a, union(b, c)):
                        return f"{a}, {b}, {c}"

    def compose_laws():
        ps = all_perms(3)
        for a, b in itertools.product(ps, repeat=2):
            if compose(a, b).inverse() != compose(b.inverse(), a.inverse()):
                return f"{a}, {b}"
            for c in ps[:6]:
                if compose(compose(a, b), c) != compose(a, compose(b, c)):
                    return f"{a}, {b}, {c}"

    def restrict_iterated():
        n = 5
        for a in all_perms(n)[::7]:
            for s1 in itertools.combinations(range(1, n + 1), 1):
                for s2 in itertools.combinations([x for x in range(1, n + 1) if x not in s1], 2):
                    once = restrict_relabel(a, set(s1) | set(s2))
                    first = restrict_relabel(a, s2)
                    shifted = {x - sum(1 for y in s2 if y < x) for x in s1}
                    if once != restrict_relabel(first, shifted):
                        return f"{a}, {s1}, {s2}"

    def matching_counts():
        expect = {(2,): 1, (4,): 3, (6,): 15, (8,): 105}
        for (n,), c in expect.items():
            ms = enumerate_matchings("pairs_only", n)
            if len(ms) != c or len(set(ms)) != c:
                return f"|Part_2({n})| = {len(ms)}"
        for n in range(4):
            for k in range(4):
                want = sum(factorial(l) * _binom(n, l) * _binom(k, l) for l in range(min(n, k) + 1))
                if len(enumerate_matchings("inhomogeneous", n, k)) != want:
                    return f"|Part_12({n},{k})|"

    return [_check("union is additive on length and cyc0", union_lengths),
            _check("union is associative", union_assoc),
            _check("composition associative, inverse anti-multiplicative", compose_laws),
            _check("iterated restriction is consistent", restrict_iterated),
            _check("matching counts", matching_counts)]


def _binom(n, k):
    return factorial(n) // (factorial(k) * factorial(n - k)) if 0 <= k <= n else 0


# -- algebra ------------------------------------------------------------------------


def suite_algebra(max_degree: int = 4, seed: int = 0, **_) -> list[dict]:
    rng = random.Random(seed)

    def basis_inverse():
        for _ in range(50):
            x = _random_element(rng, max_degree)
            if x.to_basis("T").to_basis("I") != x:
                return format_element(x)

    def product_routes():
        for _ in range(40):
            x, y = _random_element(rng, max_degree // 2 + 1), _random_element(rng, max_degree // 2)
            if multiply(x, y, "T") != multiply(x, y, "I"):
                return f"{format_element(x)} ; {format_element(y)}"

    def state_inner():
        for _ in range(40):
            x, y = _random_element(rng, max_degree), _random_element(rng, max_degree)
            if inner_product_q(x, y) != state_phi(multiply(star(y), x)):
                return f"{format_element(x)} ; {format_element(y)}"

    def traciality():
        for _ in range(20):
            x, y = _random_element(rng, max_degree // 2), _random_element(rng, max_degree // 2)
            if state_phi(multiply(x, y)) != state_phi(multiply(y, x)):
                return f"{format_element(x)} ; {format_element(y)}"

    def star_anti():
        for _ in range(20):
            x, y = _random_element(rng, max_degree // 2), _random_element(rng, max_degree // 2)
            if not equal_mod_symmetrization(star(multiply(x, y)), multiply(star(y), star(x))):
                return f"{format_element(x)} ; {format_element(y)}"

    def moments():
        g = TraceElement.basis_element(Perm.parse("(0)(1)", 1), (1,))
        u = TraceElement.basis_element(Perm.parse("(0 1)", 1), (1,))
        cat = [1, 1, 2, 5, 14]
        for m in range(1, 5):
            df = 1
            for j in range(1, 2 * m, 2):
                df *= j
            if state_phi(power(g, 2 * m)) != df:
                return f"Gaussian moment {2 * m}"
            s = state_phi(power(u, 2 * m))
            if eval_at_q(s, 1) != df or eval_at_q(s, 0) != cat[m]:
                return f"GUE moment {2 * m}: {s}"

    def linearization():
        f = (Perm.parse("(0 1)", 1), (1,))
        if linearized_moments([f] * 4) != LaurentScalar({0: 2, 2: 1}):
            return str(linearized_moments([f] * 4))

    return [_check("to_I and to_T are inverse", basis_inverse),
            _check("T-route and I-route products agree", product_routes),
            _check("<x,y> = phi[y* x]", state_inner),
            _check("state is tracial", traciality),
            _check("star is anti-multiplicative modulo symmetrization", star_anti),
            _check("Gaussian and GUE moments", moments),
            _check("linearized fourth moment 2 + q^2", linearization)]


# -- characters -------------------------------------------------------------------


def suite_characters(max_degree: int = 4, **_) -> list[dict]:
    top = min(max_degree, 4)

    def orthogonality():
        for n in range(top + 1):
            t = char_table(n)
            for mu in t.classes:
                for nu in t.classes:
                    s = sum(t(lam, mu) * t(lam, nu) for lam in t.irreps)
                    want = factorial(n + 1) // t.class_size(mu) if mu == nu else 0
                    if s != want:
                        return f"n={n}, classes {mu}, {nu}"

    def dims():
        for n in range(top + 1):
            if sum(dim_hook(l) ** 2 for l in partitions(n + 1)) != factorial(n + 1):
                return f"n={n}"
            if any(dim_hook(l) != irr_character(l, (1,) * (n + 1)) for l in partitions(n + 1)):
                return f"n={n}"

    def decomposition():
        for n in range(top + 1):
            t = char_table(n)
            for N in (1, 2, 3):
                coef = chi_q_decompose(n, N)
                for mu in t.classes:
                    val = sum(c * t(lam, mu) for lam, c in coef.items())
                    if val != Fraction(1, N) ** (n + 1 - len(mu)):
                        return f"n={n}, N={N}, class {mu}"

    def kernel_ranks():
        for n in range(min(top, 3) + 1):
            for N in (1, 2, 3):
                rk, psd = sym_rank_psd(gram_matrix(n, Fraction(1, N)))
                want = sum(dim_hook(l) ** 2 for l in partitions(n + 1) if len(l) <= N)
                if rk != want or not psd:
                    return f"n={n}, N={N}: rank {rk}, expected {want}"

    def projections():
        for n in range(min(top, 3) + 1):
            ps = {l: central_projection(l) for l in partitions(n + 1)}
            total = GAElement(n)
            for l, p in ps.items():
                total = total + p
                if p * p != p:
                    return f"p_{l} not idempotent"
            if total != GAElement.one(n):
                return f"n={n}: projections do not sum to 1"

    return [_check("character table column orthogonality", orthogonality),
            _check("hook dimensions", dims),
            _check("chi_{1/N} decomposition", decomposition),
            _check("Gram rank at q = 1/N", kernel_ranks),
            _check("central projections", projections)]


# -- fock ---------------------------------------------------------------------------


def suite_fock(max_degree: int = 3, q: Fraction | None = None, dim: int = 2, **_) -> list[dict]:
    top = min(max_degree, 3)
    q0 = Fraction(1, 2) if q is None else q
    hs = [[1] + [0] * (dim - 1), list(range(1, dim + 1))]

    def decomposition(flavor, gen):
        def run():
            from .trace_algebra import basis_labels
            for n in range(top + 1):
                for lab in basis_labels(n, dim):
                    for h in hs:
                        lhs = field_operator(flavor, h, lab)
                        g = TraceElement.from_vectors(Perm.parse(gen, 1), [h], "I")
                        if lhs != multiply(TraceElement.basis_element(*lab), g):
                            return f"{lab}, h={h}"
        return run

    def adjoint():
        for flavor in ("gaussian", "gue"):
            for n in range(top):
                b0, b1 = FockBasis(n, dim, q0), FockBasis(n + 1, dim, q0)
                for h in hs:
                    mp = operator_matrix(lambda k: create_annihilate(flavor, "+", h, k), b0, b1)
                    mm = operator_matrix(lambda k: create_annihilate(flavor, "-", h, k), b1, b0)
                    if not is_adjoint_pair(mp, mm, b0, b1):
                        return f"{flavor}, degree {n}, h={h}"

    def commutation():
        from .trace_algebra import basis_labels
        f, g = hs[0], hs[-1]
        ip = sum(Fraction(a) * b for a, b in zip(f, g))
        for n in range(top + 1):
            for lab in basis_labels(n, dim):
                lhs = create_annihilate("gue", "-", f, create_annihilate("gue", "+", g, lab))
                rhs = TraceElement.basis_element(*lab).scale(ip) + dgamma(rank_one(g, f), lab).scale(Q)
                if not equal_mod_symmetrization(lhs, rhs):
                    return f"{lab}"

    return [_check("Gaussian field = a+ + a-", decomposition("gaussian", "(0)(1)")),
            _check("GUE field = a+ + a-", decomposition("gue", "(0 1)")),
            _check("a+ and a- are Gram adjoints", adjoint),
            _check("a-(f) a+(g) = <f,g> + q dGamma(|g><f|)", commutation)]


# -- oracle / mc ----------------------------------------------------------------------


def suite_oracle(max_degree: int = 4, N: int | None = None, dim: int = 2, **_) -> list[dict]:
    Ns = [N] if N else [1, 2, 3]

    def run():
        count = 0
        for n in range(max_degree + 1):
            for a in all_perms(n):
                for w in itertools.product(range(1, dim + 1), repeat=n):
                    s = state_phi(TraceElement.basis_element(a, w, "T"))
                    vecs = [[int(i == c) for i in range(1, dim + 1)] for c in w]
                    for NN in Ns:
                        count += 1
                        if eval_at_q(s, Fraction(1, NN)) != wick_moment(a, vecs, NN):
                            return f"alpha={a}, word={w}, N={NN}"
        return None

    return [_check(f"state at q=1/N equals Wick moment (N in {Ns}, degree <= {max_degree})", run)]


def suite_mc(samples: int = 100_000, seed: int = 0, **_) -> list[dict]:
    cases = [("(0 1 2)", 2), ("(0)(1 2)", 3), ("(0 1 2 3 4)", 2), ("(0 1)(2 3 4)", 3)]
    out = []
    for text, N in cases:
        a = Perm.parse(text)
        vecs = [[1]] * a.n
        name = f"Monte Carlo {text}, N={N}"
        try:
            est, se = mc_check(a, vecs, N, samples, seed)
        except Exception as exc:
            out.append({"name": name, "status": "error", "detail": f"{type(exc).__name__}: {exc}"})
            continue
        oracle = wick_moment(a, vecs, N)
        sig = abs(est - float(oracle)) / se if se else 0.0
        detail = f"estimate {est.real:.5f} +- {se:.5f}, oracle {oracle}, {sig:.2f} sigma"
        out.append({"name": name, "status": "pass" if sig <= 4 else "fail", "detail": detail})
    return out


SUITES = {
    "perm": suite_perm,
    "algebra": suite_algebra,
    "characters": suite_characters,
    "fock": suite_fock,
    "oracle": suite_oracle,
    "mc": suite_mc,
}


def run_suite(name: str, **caps) -> dict:
    if name == "all":
        checks = []
        for n, fn in SUITES.items():
            checks.extend(fn(**caps))
        return {"suite": "all", "checks": checks}
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}")
    return {"suite": name, "checks": SUITES[name](**caps)}
