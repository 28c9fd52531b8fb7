"""The graded star-algebra of trace polynomials over Q^d.

An element is a finite sum of coefficients times basis labels ``(alpha, word)``,
where ``alpha`` is a permutation of {0..n} and ``word`` a tuple of n basis
indices in 1..d (standing for e_{w_1} x ... x e_{w_n}).  The label is read in
one of the bases

* ``"T"``: trace monomials T[alpha x F],
* ``"I"``: Hermite elements I[alpha x F] = T[exp(-L)(alpha x F)],
* ``"Ttilde"`` / ``"Itilde"``: the normalized (q -> 0 friendly) variants.

All coefficients are Laurent polynomials in q.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Mapping, Sequence

from .group_algebra import _add_into, _contract, tilde_exponent
from .perm import (Matching, Perm, all_perms_fixing_zero, compose, conjugate,
                   enumerate_matchings, union)
from .scalar import ONE, ZERO, ExactMatrix, LaurentScalar, as_fraction, eval_at_q, q_pow

Key = tuple  # (Perm, tuple[int, ...])

BASES = ("T", "I", "Ttilde", "Itilde")
_PARTNER = {"T": "I", "I": "T", "Ttilde": "Itilde", "Itilde": "Ttilde"}


class TraceElement:
    """A graded, finitely supported map (Perm, word) -> LaurentScalar in a given basis."""

    __slots__ = ("terms", "basis")

    def __init__(self, terms: Mapping[Key, object] | None = None, basis: str = "I"):
        if basis not in BASES:
            raise ValueError(f"unknown basis {basis!r}")
        self.basis = basis
        clean: dict = {}
        for (p, w), c in (terms or {}).items():
            w = tuple(int(x) for x in w)
            if len(w) != p.n:
                raise ValueError(f"word {w} does not match degree {p.n} of {p}")
            if any(x < 1 for x in w):
                raise ValueError("word letters are basis indices starting at 1")
            _add_into(clean, (p, w), LaurentScalar.coerce(c))
        self.terms = clean

    @classmethod
    def _raw(cls, terms: dict, basis: str) -> "TraceElement":
        obj = cls.__new__(cls)
        obj.terms = terms
        obj.basis = basis
        return obj

    @classmethod
    def basis_element(cls, alpha: Perm, word: Sequence[int] = (), basis: str = "I", coeff=1) -> "TraceElement":
        return cls({(alpha, tuple(word)): coeff}, basis)

    @classmethod
    def unit(cls, basis: str = "I") -> "TraceElement":
        return cls.basis_element(Perm.identity(0), (), basis)

    @classmethod
    def scalar(cls, c, basis: str = "I") -> "TraceElement":
        return cls.basis_element(Perm.identity(0), (), basis, c)

    @classmethod
    def from_vectors(cls, alpha: Perm, vectors: Sequence[Sequence], basis: str = "I", coeff=1) -> "TraceElement":
        """alpha x (v_1 x ... x v_n) for rational vectors, expanded multilinearly."""
        if len(vectors) != alpha.n:
            raise ValueError(f"need {alpha.n} vectors, got {len(vectors)}")
        coeff = LaurentScalar.coerce(coeff)
        out: dict = {}
        supports = [[(i + 1, as_fraction(x)) for i, x in enumerate(v) if as_fraction(x)] for v in vectors]
        for combo in itertools.product(*supports):
            c = Fraction(1)
            for _, x in combo:
                c *= x
            _add_into(out, (alpha, tuple(i for i, _ in combo)), coeff * c)
        return cls._raw(out, basis)

    # -- vector space structure ------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> list[int]:
        return sorted({p.n for p, _ in self.terms})

    def max_degree(self) -> int:
        return max((p.n for p, _ in self.terms), default=0)

    def component(self, n: int) -> "TraceElement":
        return TraceElement._raw({k: c for k, c in self.terms.items() if k[0].n == n}, self.basis)

    def coeff(self, alpha: Perm, word: Sequence[int] = ()) -> LaurentScalar:
        return self.terms.get((alpha, tuple(word)), ZERO)

    def _same_basis(self, other: "TraceElement") -> "TraceElement":
        return other if other.basis == self.basis else other.to_basis(self.basis)

    def __add__(self, other: "TraceElement") -> "TraceElement":
        other = self._same_basis(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            _add_into(out, k, c)
        return TraceElement._raw(out, self.basis)

    def __neg__(self) -> "TraceElement":
        return TraceElement._raw({k: -c for k, c in self.terms.items()}, self.basis)

    def __sub__(self, other: "TraceElement") -> "TraceElement":
        return self + (-other)

    def scale(self, c) -> "TraceElement":
        c = LaurentScalar.coerce(c)
        if not c:
            return TraceElement._raw({}, self.basis)
        return TraceElement._raw({k: v * c for k, v in self.terms.items()}, self.basis)

    def __mul__(self, other):
        if isinstance(other, TraceElement):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TraceElement):
            return NotImplemented
        return self.terms == self._same_basis(other).terms

    def __repr__(self) -> str:
        from .textio import format_element
        return f"TraceElement[{self.basis}]({format_element(self)})"

    def map_coeffs(self, f) -> "TraceElement":
        out = {}
        for k, c in self.terms.items():
            v = f(c)
            if v:
                out[k] = v
        return TraceElement._raw(out, self.basis)

    def substitute_neg_q(self) -> "TraceElement":
        return self.map_coeffs(LaurentScalar.substitute_neg)

    def eval(self, q0) -> dict:
        return {k: eval_at_q(c, q0) for k, c in self.terms.items()}

    def is_zero_at(self, q0) -> bool:
        return all(v == 0 for v in self.eval(q0).values())

    # -- algebra ---------------------------------------------------------------

    def to_basis(self, basis: str) -> "TraceElement":
        """The same element written in another basis."""
        if basis == self.basis:
            return self
        if {basis, self.basis} == {"T", "I"}:
            # T[x] = sum I[C_pi x]  and  I[x] = sum (-1)^l T[C_pi x]
            return TraceElement._raw(coupled_exp(self.terms, negative=self.basis == "I"), basis)
        if {basis, self.basis} == {"Ttilde", "Itilde"}:
            return TraceElement._raw(coupled_exp(self.terms, negative=self.basis == "Itilde", tilde=True), basis)
        raise ValueError(f"no basis change from {self.basis} to {basis}")

    def star(self) -> "TraceElement":
        return star(self)


def _tr(terms: dict, basis: str) -> TraceElement:
    return TraceElement._raw(terms, basis)


# -- coupled contractions ------------------------------------------------------


@lru_cache(maxsize=None)
def _singletons(m: Matching) -> tuple[int, ...]:
    return m.singletons


@lru_cache(maxsize=100_000)
def compatible_matchings(word: tuple[int, ...], kind: str = "all", split: int | None = None) -> tuple[Matching, ...]:
    """Matchings of the slots whose pairs join equal letters, so that the
    tensor contraction (a product of <e_i, e_j>) does not vanish."""
    n = len(word)
    if kind == "all":
        ms = enumerate_matchings("all", n)
    elif kind == "pairs_only":
        ms = enumerate_matchings("pairs_only", n)
    elif kind == "inhomogeneous":
        ms = enumerate_matchings("inhomogeneous", split, n - split)
    else:
        raise ValueError(kind)
    return tuple(m for m in ms if all(word[i - 1] == word[j - 1] for i, j in m.pairs))


def coupled_contract(pi: Matching, alpha: Perm, word: Sequence[int], tilde: bool = False):
    """C_pi(alpha x F) for a word F: returns (weight, reduced perm, reduced word),
    or None when the tensor contraction vanishes."""
    word = tuple(word)
    if any(word[i - 1] != word[j - 1] for i, j in pi.pairs):
        return None
    r = _contract(pi, alpha)
    e = tilde_exponent(pi, alpha) if tilde else r.exponent
    return q_pow(e), r.reduced, tuple(word[i - 1] for i in _singletons(pi))


def coupled_exp(terms: Mapping[Key, LaurentScalar], negative: bool = False, tilde: bool = False,
                kind: str = "all") -> dict:
    """Apply exp(+-L) (coupled, on labels) to a coefficient map."""
    out: dict = {}
    for (a, w), c in terms.items():
        for m in compatible_matchings(w, kind):
            r = _contract(m, a)
            e = tilde_exponent(m, a) if tilde else r.exponent
            v = c.shift(e)
            if negative and m.num_pairs % 2:
                v = -v
            _add_into(out, (r.reduced, tuple(w[i - 1] for i in _singletons(m))), v)
    return out


def coupled_laplacian(terms: Mapping[Key, LaurentScalar]) -> dict:
    out: dict = {}
    for (a, w), c in terms.items():
        for m in compatible_matchings(w):
            if m.num_pairs != 1:
                continue
            r = _contract(m, a)
            _add_into(out, (r.reduced, tuple(w[i - 1] for i in _singletons(m))), c.shift(r.exponent))
    return out


def hermite_transform(direction: str, x: TraceElement) -> TraceElement:
    """Coupled Laplacian exponentials on the coefficient map of ``x``.

    ``to_I`` forms I[x] = T[exp(-L) x] and returns it in the T basis;
    ``to_T`` forms T[x] = I[exp(L) x] and returns it in the I basis.  The two
    are mutually inverse on coefficient maps.
    """
    if direction == "to_I":
        return _tr(coupled_exp(x.terms, negative=True), "T")
    if direction == "to_T":
        return _tr(coupled_exp(x.terms, negative=False), "I")
    raise ValueError(f"unknown direction {direction!r}")


# -- products ------------------------------------------------------------------


def _union_product(xt: dict, yt: dict) -> dict:
    out: dict = {}
    for (a, w), c in xt.items():
        for (b, v), d in yt.items():
            _add_into(out, (union(a, b), w + v), c * d)
    return out


def multiply(x: TraceElement, y: TraceElement, route: str = "T") -> TraceElement:
    """Product x * y, returned in the basis of x.

    route ``T`` concatenates trace monomials through the union product;
    route ``I`` sums inhomogeneous contractions directly in the Hermite basis.
    """
    tilde = x.basis in ("Ttilde", "Itilde")
    tb, ib = ("Ttilde", "Itilde") if tilde else ("T", "I")
    if y.basis not in (tb, ib):
        raise ValueError(f"cannot multiply {x.basis} by {y.basis}")
    if route == "T":
        res = _tr(_union_product(x.to_basis(tb).terms, y.to_basis(tb).terms), tb)
        return res.to_basis(x.basis)
    if route == "I":
        if tilde:
            raise ValueError("route I is only provided for the T/I bases")
        res = _tr(product_I(x.to_basis("I").terms, y.to_basis("I").terms), "I")
        return res.to_basis(x.basis)
    raise ValueError(f"unknown route {route!r}")


def product_I(xt: dict, yt: dict) -> dict:
    """sum over pi in Part_{1,2}(n, k) of I[C_pi((alpha u beta) x (F x G))]."""
    out: dict = {}
    for (a, w), c in xt.items():
        for (b, v), d in yt.items():
            g, word = union(a, b), w + v
            cd = c * d
            for m in compatible_matchings(word, "inhomogeneous", a.n):
                r = _contract(m, g)
                _add_into(out, (r.reduced, tuple(word[i - 1] for i in _singletons(m))), cd.shift(r.exponent))
    return out


def star(x: TraceElement) -> TraceElement:
    """alpha x F -> alpha^-1 x F (coefficients are real)."""
    out: dict = {}
    for (a, w), c in x.terms.items():
        _add_into(out, (a.inverse(), w), c)
    return _tr(out, x.basis)


def power(x: TraceElement, k: int) -> TraceElement:
    res = TraceElement.unit(x.basis)
    for _ in range(k):
        res = multiply(res, x)
    return res


def commutator(x: TraceElement, y: TraceElement) -> TraceElement:
    return multiply(x, y) - multiply(y, x)


# -- symmetrization ------------------------------------------------------------


def apply_U(sigma: Perm, word: Sequence[int]) -> tuple[int, ...]:
    """(U_sigma w)_i = w_{sigma^-1(i)}."""
    out = [0] * len(word)
    for i, x in enumerate(word, start=1):
        out[sigma(i) - 1] = x
    return tuple(out)


def symmetrize(x: TraceElement) -> TraceElement:
    """P_n: alpha x F -> (1/n!) sum_sigma sigma alpha sigma^-1 x U_sigma F."""
    out: dict = {}
    for (a, w), c in x.terms.items():
        cn = c * Fraction(1, factorial(a.n))
        for s in all_perms_fixing_zero(a.n):
            _add_into(out, (conjugate(s, a), apply_U(s, w)), cn)
    return _tr(out, x.basis)


def equal_mod_symmetrization(x: TraceElement, y: TraceElement) -> bool:
    return symmetrize(x - y).is_zero()


# -- state and inner product ---------------------------------------------------


def state_phi(x: TraceElement, q0=None):
    """The state: the I[(0)] coefficient.  ``q0=None`` keeps q symbolic."""
    if x.basis == "I":
        val = x.coeff(Perm.identity(0))
    elif x.basis == "T":
        val = state_T(x.terms)
    elif x.basis == "Itilde":
        val = x.coeff(Perm.identity(0))
    else:
        val = state_T(x.terms, tilde=True)
    return val if q0 is None else eval_at_q(val, q0)


def state_T(terms: Mapping[Key, LaurentScalar], tilde: bool = False) -> LaurentScalar:
    """State of a T-basis coefficient map by the perfect-matching sum

    phi[T[alpha x F]] = sum_pi q^(n - cyc0(pi alpha)) C_pi(F),  degree 2n,

    with exponent cyc0(alpha) - cyc0(pi alpha) + n in the normalized variant.
    """
    acc = ZERO
    for (a, w), c in terms.items():
        if a.n % 2:
            continue
        half = a.n // 2
        exps: dict = {}
        for m in compatible_matchings(w, "pairs_only"):
            cyc = compose(m.as_perm(), a).cyc0 if m.pairs else a.cyc0
            e = (a.cyc0 if tilde else 0) - cyc + half
            exps[e] = exps.get(e, 0) + 1
        acc = acc + c * LaurentScalar(exps)
    return acc


def inner_product_q(x: TraceElement, y: TraceElement) -> LaurentScalar:
    """<x, y>_q = sum over sigma in S(n) of chi_q(alpha sigma beta^-1 sigma^-1) <F, U_sigma G>
    on Hermite coordinates."""
    xt = x.to_basis("I").terms
    yt = y.to_basis("I").terms
    groups: dict = {}
    for (b, v), d in yt.items():
        groups.setdefault((b.n, tuple(sorted(v))), []).append((b, v, d))
    acc = ZERO
    for (a, w), c in xt.items():
        for b, v, d in groups.get((a.n, tuple(sorted(w))), ()):
            e_counts: dict = {}
            for s in all_perms_fixing_zero(a.n):
                if apply_U(s, v) != w:
                    continue
                e = compose(a, conjugate(s, b.inverse())).length
                e_counts[e] = e_counts.get(e, 0) + 1
            if e_counts:
                acc = acc + c * d * LaurentScalar(e_counts)
    return acc


# -- conditional expectation ---------------------------------------------------


def _check_projection(P: ExactMatrix) -> None:
    if not P.is_symmetric():
        raise ValueError("projection must be symmetric")
    if P @ P != P:
        raise ValueError("projection must be idempotent")


def apply_slotwise(A: ExactMatrix, terms: Mapping[Key, LaurentScalar]) -> dict:
    """alpha x w -> alpha x (A e_{w_1}) x ... x (A e_{w_n})."""
    d = A.rows
    out: dict = {}
    for (a, w), c in terms.items():
        if any(x > d for x in w):
            raise ValueError(f"word letter exceeds dimension {d}")
        cols = [[(i + 1, A[i, x - 1]) for i in range(d) if A[i, x - 1]] for x in w]
        for combo in itertools.product(*cols):
            f = Fraction(1)
            for _, v in combo:
                f *= v
            _add_into(out, (a, tuple(i for i, _ in combo)), c * f)
    return out


def conditional_expectation(x: TraceElement, P: ExactMatrix) -> TraceElement:
    """Gamma(P): applies P in every tensor slot of the Hermite coordinates."""
    _check_projection(P)
    res = _tr(apply_slotwise(P, x.to_basis("I").terms), "I")
    return res.to_basis(x.basis)


def single_variable_ce(alpha: Perm, h: Sequence, P: ExactMatrix) -> TraceElement:
    """Closed form for Gamma(P)(T[alpha x h^n]):
    sum_pi ||P_perp h||^(2 |Pair pi|) T[C_pi(alpha) x (P h)^(|Sing pi|)]."""
    _check_projection(P)
    h = [as_fraction(x) for x in h]
    ph = P.apply(h)
    perp = [a - b for a, b in zip(h, ph)]
    norm2 = sum((x * x for x in perp), Fraction(0))
    out = TraceElement._raw({}, "T")
    for m in enumerate_matchings("all", alpha.n):
        r = _contract(m, alpha)
        k = len(_singletons(m))
        piece = TraceElement.from_vectors(r.reduced, [ph] * k, "T", q_pow(r.exponent) * norm2 ** m.num_pairs)
        out = out + piece
    return out


# -- Euler operator --------------------------------------------------------------


def apply_euler_laplacian(mode: str, x: TraceElement) -> TraceElement:
    """E (degree on T coordinates), L (coupled Laplacian on T coordinates) or E - 2L."""
    t = x.to_basis("T").terms
    if mode == "E":
        out = {k: c * k[0].n for k, c in t.items() if k[0].n}
    elif mode == "L":
        out = coupled_laplacian(t)
    elif mode == "E_minus_2L":
        out = {k: c * k[0].n for k, c in t.items() if k[0].n}
        for k, c in coupled_laplacian(t).items():
            _add_into(out, k, c * -2)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return _tr(out, "T").to_basis(x.basis)


# -- linearization ---------------------------------------------------------------


def linearized_moments(factors: Sequence[tuple[Perm, Sequence[int]]]) -> LaurentScalar:
    """phi[I[f_1] ... I[f_k]] as a sum over inhomogeneous pair matchings."""
    if not factors:
        return ONE
    g = Perm.identity(0)
    word: tuple = ()
    sizes = []
    for a, w in factors:
        g = union(g, a)
        word = word + tuple(w)
        sizes.append(a.n)
    exps: dict = {}
    for m in enumerate_matchings("inhomogeneous_pairs", *sizes):
        if any(word[i - 1] != word[j - 1] for i, j in m.pairs):
            continue
        e = _contract(m, g).exponent
        exps[e] = exps.get(e, 0) + 1
    return LaurentScalar(exps)


# -- normalized variant ------------------------------------------------------------


def tilde_contract(pi: Matching, alpha: Perm) -> tuple[LaurentScalar, Perm]:
    """C~_pi(alpha) = q^(cyc0(alpha) - cyc0(pi alpha) + l) * reduced."""
    r = _contract(pi, alpha)
    return q_pow(tilde_exponent(pi, alpha)), r.reduced


def tilde_ops(mode: str, x, q0=0, pi: Matching | None = None):
    if mode == "tilde_contract":
        w, red = tilde_contract(pi, x)
        return (w, red) if q0 is None else (eval_at_q(w, q0), red)
    if mode == "tilde_to_T":
        return x.to_basis("Ttilde")
    if mode == "tilde_to_I":
        return x.to_basis("Itilde")
    if mode == "tilde_state":
        return state_phi(x, q0)
    raise ValueError(f"unknown mode {mode!r}")


def tilde_norm(x: TraceElement, q0=0) -> Fraction:
    """phi[x* x] in the normalized calculus, evaluated at q0."""
    return state_phi(multiply(star(x), x), q0)


def tilde_inner(x: TraceElement, y: TraceElement, q0=0) -> Fraction:
    """<x, y> = phi[y* x] in the normalized calculus."""
    return state_phi(multiply(star(y), x), q0)


def at_q(x: TraceElement, q0) -> TraceElement:
    """Evaluate the coefficients at q0, keeping them as constant Laurent scalars."""
    return x.map_coeffs(lambda c: LaurentScalar.const(eval_at_q(c, q0)))


# -- the q <-> -q map ----------------------------------------------------------------


def r_map(x: TraceElement) -> TraceElement:
    """Hermite coordinates multiplied by (-1)^|alpha|."""
    xi = x.to_basis("I")
    out = {k: (-c if k[0].length % 2 else c) for k, c in xi.terms.items()}
    return _tr(out, "I")


def multiply_neg_q(x: TraceElement, y: TraceElement) -> TraceElement:
    """The product of the -q structure, on Hermite coordinates."""
    a = x.to_basis("I").substitute_neg_q()
    b = y.to_basis("I").substitute_neg_q()
    return multiply(a, b).substitute_neg_q()


def inner_product_neg_q(x: TraceElement, y: TraceElement) -> LaurentScalar:
    a = x.to_basis("I").substitute_neg_q()
    b = y.to_basis("I").substitute_neg_q()
    return inner_product_q(a, b).substitute_neg()


def state_neg_q(x: TraceElement) -> LaurentScalar:
    """phi_{-q}; on Hermite coordinates the state does not depend on q."""
    return state_phi(x.to_basis("I"))


def t_to_i_neg_q(terms: Mapping[Key, LaurentScalar]) -> TraceElement:
    """T^(-q)[x] written in Hermite coordinates."""
    flipped = {k: c.substitute_neg() for k, c in terms.items()}
    return _tr(coupled_exp(flipped), "I").substitute_neg_q()


# -- basis enumeration ---------------------------------------------------------------


def basis_labels(n: int, d: int) -> list[Key]:
    """All (alpha, word) with alpha in S_0(n) and letters in 1..d."""
    from .perm import all_perms
    return [(a, w) for a in all_perms(n) for w in itertools.product(range(1, d + 1), repeat=n)]


def vacuum() -> TraceElement:
    return TraceElement.unit("I")


def monomial(alpha: Perm | str, word: Iterable[int] = (), basis: str = "I", coeff=1) -> TraceElement:
    if isinstance(alpha, str):
        word = tuple(word)
        alpha = Perm.parse(alpha, len(word))
    return TraceElement.basis_element(alpha, tuple(word), basis, coeff)
