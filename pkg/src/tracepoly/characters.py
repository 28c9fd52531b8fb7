"""Characters of symmetric groups: Murnaghan-Nakayama, hook formulas,
the decomposition of chi_{1/N}, restricted characters and central projections."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterator, Sequence

from .group_algebra import GAElement
from .perm import Perm, all_perms, all_perms_fixing_zero, compose


class IntPartition(tuple):
    """A weakly decreasing tuple of positive integers."""

    def __new__(cls, parts: Sequence[int] = ()):
        parts = tuple(int(p) for p in parts if p)
        if any(p < 0 for p in parts) or list(parts) != sorted(parts, reverse=True):
            raise ValueError(f"not a partition: {parts}")
        return super().__new__(cls, parts)

    @property
    def weight(self) -> int:
        return sum(self)

    @property
    def rows(self) -> int:
        return len(self)

    def conjugate(self) -> "IntPartition":
        return IntPartition([sum(1 for p in self if p > j) for j in range(self[0])] if self else [])

    def covers(self) -> list["IntPartition"]:
        """Partitions obtained by adding one box."""
        out = []
        parts = list(self)
        for i in range(len(parts) + 1):
            if i == len(parts) or i == 0 or parts[i - 1] > parts[i]:
                new = parts[:i] + [parts[i] + 1 if i < len(parts) else 1] + parts[i + 1:]
                out.append(IntPartition(new))
        return out

    def __repr__(self) -> str:
        return "(" + ",".join(map(str, self)) + ")"


def partitions(n: int, max_part: int | None = None) -> Iterator[IntPartition]:
    """Partitions of n in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield IntPartition(())
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield IntPartition((first,) + tuple(rest))


def cycle_type(alpha: Perm) -> IntPartition:
    return IntPartition(sorted((len(c) for c in alpha.cycles()), reverse=True))


def _to_beta(lam: tuple[int, ...], length: int) -> tuple[int, ...]:
    lam = tuple(lam) + (0,) * (length - len(lam))
    return tuple(lam[i] + length - 1 - i for i in range(length))


@lru_cache(maxsize=None)
def _mn(beta: frozenset, mu: tuple[int, ...]) -> int:
    """Murnaghan-Nakayama on beta-sets: remove rim hooks of size mu[0]."""
    if not mu:
        return 1
    r, rest = mu[0], mu[1:]
    total = 0
    for b in beta:
        if b - r >= 0 and (b - r) not in beta:
            height = sum(1 for x in beta if b - r < x < b)
            new = (beta - {b}) | {b - r}
            total += (-1) ** height * _mn(frozenset(new), rest)
    return total


def irr_character(lam: Sequence[int], mu: Sequence[int]) -> int:
    lam, mu = IntPartition(lam), IntPartition(mu)
    if lam.weight != mu.weight:
        raise ValueError(f"size mismatch: |lambda| = {lam.weight}, |mu| = {mu.weight}")
    return _mn(frozenset(_to_beta(lam, len(lam))), tuple(mu))


def hooks(lam: Sequence[int]) -> list[int]:
    lam = IntPartition(lam)
    conj = lam.conjugate()
    return [lam[i] - j + conj[j] - i - 1 for i in range(len(lam)) for j in range(lam[i])]


def dim_hook(lam: Sequence[int]) -> int:
    lam = IntPartition(lam)
    prod = 1
    for h in hooks(lam):
        prod *= h
    return factorial(lam.weight) // prod


def ssyt_count(lam: Sequence[int], N: int) -> int:
    """Semistandard tableaux of shape lam with entries in 1..N (hook-content formula)."""
    lam = IntPartition(lam)
    num, den = 1, 1
    for i in range(len(lam)):
        for j in range(lam[i]):
            num *= N + j - i
    for h in hooks(lam):
        den *= h
    return num // den


def chi_q_decompose(n: int, N: int | None) -> dict[IntPartition, Fraction]:
    """Coefficients n_lambda with chi_{1/N} = sum n_lambda chi^lambda on S_0(n).

    ``N=None`` gives the q = 0 case d_lambda / (n+1)!.
    """
    m = n + 1
    if N is None:
        return {lam: Fraction(dim_hook(lam), factorial(m)) for lam in partitions(m)}
    if N < 1:
        raise ValueError("N must be positive")
    return {lam: Fraction(ssyt_count(lam, N), N ** m) for lam in partitions(m)}


class CharTable:
    """Character table of S_{n+1}; columns are cycle types."""

    def __init__(self, n: int):
        self.n = n
        self.irreps = list(partitions(n + 1))
        self.classes = list(partitions(n + 1))
        self.values = {(lam, mu): irr_character(lam, mu) for lam in self.irreps for mu in self.classes}

    def __call__(self, lam, alpha_or_mu) -> int:
        mu = cycle_type(alpha_or_mu) if isinstance(alpha_or_mu, Perm) else IntPartition(alpha_or_mu)
        return self.values[(IntPartition(lam), mu)]

    def class_size(self, mu) -> int:
        mu = IntPartition(mu)
        z = 1
        for k in set(mu):
            m = mu.count(k)
            z *= k ** m * factorial(m)
        return factorial(self.n + 1) // z

    def to_tsv(self) -> str:
        head = "lambda\\class\t" + "\t".join(repr(mu) for mu in self.classes)
        lines = [head]
        for lam in self.irreps:
            lines.append(repr(lam) + "\t" + "\t".join(str(self.values[(lam, mu)]) for mu in self.classes))
        return "\n".join(lines)


@lru_cache(maxsize=None)
def char_table(n: int) -> CharTable:
    return CharTable(n)


def restricted_character(lam: Sequence[int], lam_prime: Sequence[int], alpha: Perm) -> Fraction:
    """(d_lam / n!) sum over sigma in S(n) of chi^lam(sigma) chi^lam'(sigma^-1 alpha)."""
    lam, lam_prime = IntPartition(lam), IntPartition(lam_prime)
    n = alpha.n
    if lam.weight != n or lam_prime not in lam.covers():
        raise ValueError(f"{lam_prime!r} does not cover {lam!r} with |lambda| = {n}")
    total = 0
    for sigma in all_perms_fixing_zero(n):
        inner = IntPartition(sorted((len(c) for c in sigma.cycles()[1:]), reverse=True))
        total += irr_character(lam, inner) * irr_character(lam_prime, cycle_type(compose(sigma.inverse(), alpha)))
    return Fraction(dim_hook(lam) * total, factorial(n))


def restricted_character_element(lam, lam_prime, n: int) -> GAElement:
    return GAElement(n, {a: restricted_character(lam, lam_prime, a) for a in all_perms(n)})


def central_projection(lam: Sequence[int]) -> GAElement:
    lam = IntPartition(lam)
    n = lam.weight - 1
    c = Fraction(dim_hook(lam), factorial(n + 1))
    return GAElement(n, {s: c * irr_character(lam, cycle_type(s)) for s in all_perms(n)})


def character_element(lam: Sequence[int]) -> GAElement:
    """sum_sigma chi^lam(sigma) delta_sigma."""
    lam = IntPartition(lam)
    return GAElement(lam.weight - 1, {s: irr_character(lam, cycle_type(s)) for s in all_perms(lam.weight - 1)})
