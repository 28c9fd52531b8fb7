"""The group algebra C[S_0(n)] over Laurent scalars, the character chi_q,
permutation contractions and the Laplacian."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .perm import (Matching, PartialPerm, Perm, all_perms, all_perms_fixing_zero,
                   close_partial, compose, conjugate, enumerate_matchings,
                   restrict_relabel)
from .scalar import ONE, ExactMatrix, LaurentScalar, as_fraction, eval_at_q, q_pow


def _add_into(acc: dict, key, c: LaurentScalar) -> None:
    v = acc.get(key)
    v = c if v is None else v + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


class GAElement:
    """A finitely supported map S_0(n) -> LaurentScalar."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[Perm, object] | None = None):
        self.n = n
        clean = {}
        for p, c in (terms or {}).items():
            if p.n != n:
                raise ValueError(f"permutation {p} has degree {p.n}, expected {n}")
            _add_into(clean, p, LaurentScalar.coerce(c))
        self.terms = clean

    @classmethod
    def delta(cls, p: Perm, c=1) -> "GAElement":
        return cls(p.n, {p: c})

    @classmethod
    def zero(cls, n: int) -> "GAElement":
        return cls(n)

    @classmethod
    def one(cls, n: int) -> "GAElement":
        return cls.delta(Perm.identity(n))

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, GAElement) and self.n == other.n and self.terms == other.terms

    def _check(self, other: "GAElement") -> None:
        if self.n != other.n:
            raise ValueError(f"degree mismatch: {self.n} vs {other.n}")

    def __add__(self, other: "GAElement") -> "GAElement":
        self._check(other)
        out = dict(self.terms)
        for p, c in other.terms.items():
            _add_into(out, p, c)
        return _ga(self.n, out)

    def __neg__(self) -> "GAElement":
        return _ga(self.n, {p: -c for p, c in self.terms.items()})

    def __sub__(self, other: "GAElement") -> "GAElement":
        return self + (-other)

    def scale(self, c) -> "GAElement":
        c = LaurentScalar.coerce(c)
        if not c:
            return GAElement(self.n)
        return _ga(self.n, {p: v * c for p, v in self.terms.items()})

    __rmul__ = scale

    def __mul__(self, other):
        if not isinstance(other, GAElement):
            return self.scale(other)
        self._check(other)
        out: dict = {}
        for a, c in self.terms.items():
            for b, d in other.terms.items():
                _add_into(out, compose(a, b), c * d)
        return _ga(self.n, out)

    def star(self) -> "GAElement":
        # coefficients are real, so conjugation is trivial
        return _ga(self.n, {p.inverse(): c for p, c in self.terms.items()})

    def conjugate_by(self, sigma: Perm) -> "GAElement":
        return _ga(self.n, {conjugate(sigma, p): c for p, c in self.terms.items()})

    def eval(self, q0) -> dict:
        return {p: eval_at_q(c, q0) for p, c in self.terms.items()}

    def __repr__(self) -> str:
        body = " + ".join(f"({c})*{p}" for p, c in sorted(self.terms.items()))
        return f"GAElement(n={self.n}: {body or '0'})"

    def to_json(self) -> dict:
        return {"degree": self.n,
                "terms": [{"perm": p.to_json(), "coeff": c.to_json()} for p, c in sorted(self.terms.items())]}

    @classmethod
    def from_json(cls, data: dict) -> "GAElement":
        return cls(data["degree"], {Perm.from_json(t["perm"]): LaurentScalar.from_json(t["coeff"])
                                    for t in data["terms"]})


def _ga(n: int, terms: dict) -> GAElement:
    obj = GAElement.__new__(GAElement)
    obj.n = n
    obj.terms = terms
    return obj


def ga_mul_star(op: str, *args):
    if op == "mul":
        return args[0] * args[1]
    if op == "star":
        return args[0].star()
    if op == "add":
        return args[0] + args[1]
    if op == "scale":
        return args[0].scale(args[1])
    raise ValueError(f"unknown operation {op!r}")


def chi_q(eta: GAElement) -> LaurentScalar:
    """Linear extension of alpha -> q^|alpha|."""
    acc: dict = {}
    for p, c in eta.terms.items():
        e = p.length
        for k, v in c.terms.items():
            acc[k + e] = acc.get(k + e, 0) + v
    return LaurentScalar(acc)


def chi_q_value(alpha: Perm, q0) -> Fraction:
    return as_fraction(q0) ** alpha.length


class ContractionResult:
    __slots__ = ("exponent", "reduced")

    def __init__(self, exponent: int, reduced: Perm):
        self.exponent = exponent
        self.reduced = reduced

    @property
    def weight(self) -> LaurentScalar:
        return q_pow(self.exponent)

    def __eq__(self, other) -> bool:
        return (isinstance(other, ContractionResult) and self.exponent == other.exponent
                and self.reduced == other.reduced)

    def __iter__(self):
        yield self.weight
        yield self.reduced

    def __repr__(self) -> str:
        return f"ContractionResult(q^{self.exponent}, {self.reduced})"


def contract_perm(pi: Matching, alpha: Perm) -> ContractionResult:
    """C_pi(alpha) = q^(cyc0(reduced) - cyc0(pi alpha) + l) * reduced,
    where reduced is pi alpha restricted to the complement of supp(pi)."""
    if pi.n != alpha.n:
        raise ValueError(f"matching on [{pi.n}] applied to permutation of degree {alpha.n}")
    return _contract(pi, alpha)


@lru_cache(maxsize=500_000)
def _contract(pi: Matching, alpha: Perm) -> ContractionResult:
    if not pi.pairs:
        return ContractionResult(0, alpha)
    gamma = compose(pi.as_perm(), alpha)
    reduced = restrict_relabel(gamma, pi.support)
    return ContractionResult(reduced.cyc0 - gamma.cyc0 + pi.num_pairs, reduced)


def tilde_exponent(pi: Matching, alpha: Perm) -> int:
    """Exponent cyc0(alpha) - cyc0(pi alpha) + l of the normalized contraction."""
    if not pi.pairs:
        return 0
    gamma = compose(pi.as_perm(), alpha)
    return alpha.cyc0 - gamma.cyc0 + pi.num_pairs


def contract_sequential(pairs: Iterable[tuple[int, int]], alpha: Perm) -> ContractionResult:
    """Contract one transposition at a time, relabelling the remaining pairs."""
    pairs = list(pairs)
    exp = 0
    cur = alpha
    while pairs:
        (i, j), rest = pairs[0], pairs[1:]
        r = contract_perm(Matching(cur.n, [(i, j)]), cur)
        exp += r.exponent
        cur = r.reduced

        def shift(x, i=i, j=j):
            return x - (x > i) - (x > j)
        pairs = [(shift(a), shift(b)) for a, b in rest]
    return ContractionResult(exp, cur)


Graded = dict  # degree -> GAElement


def _graded_add(out: dict, n: int, p: Perm, c: LaurentScalar) -> None:
    _add_into(out.setdefault(n, {}), p, c)


def _finish(out: dict) -> dict[int, GAElement]:
    return {n: _ga(n, t) for n, t in sorted(out.items()) if t}


def _as_graded(eta) -> dict[int, GAElement]:
    if isinstance(eta, GAElement):
        return {eta.n: eta}
    return dict(eta)


def _apply_matchings(eta, matchings_for, sign: bool) -> dict[int, GAElement]:
    out: dict = {}
    for n, el in _as_graded(eta).items():
        ms = matchings_for(n)
        for p, c in el.terms.items():
            for m in ms:
                r = _contract(m, p)
                w = c.shift(r.exponent)
                if sign and m.num_pairs % 2:
                    w = -w
                _graded_add(out, r.reduced.n, r.reduced, w)
    return _finish(out)


@lru_cache(maxsize=None)
def _transpositions(n: int) -> tuple[Matching, ...]:
    return tuple(m for m in enumerate_matchings("all", n) if m.num_pairs == 1)


def laplacian_exp(mode: str, eta, n: int | None = None, k: int | None = None, level: int | None = None):
    """Apply L, exp(L), exp(-L), the inhomogeneous Laplacian or a level of it.

    Returns a graded map degree -> GAElement.  exp(L) equals the sum of C_pi
    over all matchings and exp(-L) carries the sign (-1)^l.
    """
    if mode == "L":
        return _apply_matchings(eta, _transpositions, False)
    if mode == "exp_L":
        return _apply_matchings(eta, lambda m: enumerate_matchings("all", m), False)
    if mode == "exp_negL":
        return _apply_matchings(eta, lambda m: enumerate_matchings("all", m), True)
    if mode == "L_inhom":
        ms = tuple(m for m in enumerate_matchings("inhomogeneous", n, k) if m.num_pairs == 1)
        return _apply_matchings(eta, lambda m: _only_degree(m, n + k, ms), False)
    if mode == "L_inhom_level":
        ms = tuple(m for m in enumerate_matchings("inhomogeneous", n, k) if m.num_pairs == level)
        return _apply_matchings(eta, lambda m: _only_degree(m, n + k, ms), False)
    raise ValueError(f"unknown mode {mode!r}")


def _only_degree(m, expected, ms):
    if m != expected:
        raise ValueError(f"element of degree {m} does not match n + k = {expected}")
    return ms


def kernel_generator(pi: PartialPerm, sign: str) -> GAElement:
    """Sum of close_partial(pi, sigma) over sigma permuting the linear orbits,
    with the sign (-1)^|sigma| when ``sign == '-'``."""
    if sign not in "+-" or len(sign) != 1:
        raise ValueError("sign must be '+' or '-'")
    out: dict = {}
    for sigma in all_perms(pi.num_linear - 1):
        c = ONE if sign == "+" or sigma.length % 2 == 0 else -ONE
        _add_into(out, close_partial(pi, sigma), c)
    return _ga(pi.n, out)


def jucys_murphy(n: int) -> GAElement:
    return GAElement(n, {Perm.from_cycles([(0, k)], n): 1 for k in range(1, n + 1)})


def gram_matrix(n: int, q0, basis: list[Perm] | None = None) -> ExactMatrix:
    """Gram matrix chi_q(alpha beta^-1) on C[S_0(n)] at a rational q."""
    basis = all_perms(n) if basis is None else basis
    q0 = as_fraction(q0)
    powers = [q0 ** k for k in range(n + 1)]
    invs = [b.inverse() for b in basis]
    rows = [[powers[compose(a, bi).length] for bi in invs] for a in basis]
    return ExactMatrix(rows)


def ga_gram_of(elements: list[GAElement], q0) -> ExactMatrix:
    """Gram matrix chi_q(y* x) of a list of group-algebra elements."""
    vals = [{p: eval_at_q(c, q0) for p, c in e.terms.items()} for e in elements]
    q0 = as_fraction(q0)
    out = []
    for x in vals:
        row = []
        for y in vals:
            s = Fraction(0)
            for a, ca in x.items():
                for b, cb in y.items():
                    s += ca * cb * q0 ** compose(b.inverse(), a).length
            row.append(s)
        out.append(row)
    return ExactMatrix(out)


def coordinates(elements: list[GAElement], q0, n: int) -> list[list[Fraction]]:
    """Coordinate rows of elements (evaluated at q0) in the basis all_perms(n)."""
    idx = {p: i for i, p in enumerate(all_perms(n))}
    rows = []
    for e in elements:
        row = [Fraction(0)] * len(idx)
        for p, c in e.terms.items():
            row[idx[p]] = eval_at_q(c, q0)
        rows.append(row)
    return rows


def is_central_in_centralizer(eta: GAElement) -> bool:
    """True when eta commutes with every sigma in S(n)."""
    return all(eta.conjugate_by(s) == eta for s in all_perms_fixing_zero(eta.n))
