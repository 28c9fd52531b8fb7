"""Permutations of {0, ..., n}, matchings and partial permutations.

Composition convention: ``(a * b)(x) == a(b(x))``.
"""
from __future__ import annotations

import itertools
import re
from functools import lru_cache
from typing import Iterable, Iterator, Sequence


class Perm:
    """A bijection of {0, ..., n}. Immutable and hashable."""

    __slots__ = ("images", "_cycles")

    def __init__(self, images: Sequence[int]):
        images = tuple(int(x) for x in images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation of 0..{len(images) - 1}: {images}")
        self.images = images
        self._cycles = None

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls(range(n + 1))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], n: int | None = None) -> "Perm":
        cycles = [tuple(c) for c in cycles]
        top = max((x for c in cycles for x in c), default=0)
        if n is None:
            n = top
        if top > n:
            raise ValueError(f"cycle element {top} exceeds degree {n}")
        images = list(range(n + 1))
        seen = set()
        for c in cycles:
            for i, x in enumerate(c):
                if x in seen or x < 0:
                    raise ValueError(f"bad cycle notation: {cycles}")
                seen.add(x)
                images[x] = c[(i + 1) % len(c)]
        return cls(images)

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "Perm":
        """Parse cycle notation such as ``"(0 1 2)(3)"``; commas are also accepted."""
        text = text.strip()
        if not re.fullmatch(r"(\(\s*\d+(?:[\s,]+\d+)*\s*\)\s*)+", text):
            raise ValueError(f"cannot parse permutation {text!r}")
        groups = re.findall(r"\(([^)]*)\)", text)
        cycles = [[int(t) for t in re.split(r"[\s,]+", g.strip())] for g in groups]
        return cls.from_cycles(cycles, n)

    @property
    def n(self) -> int:
        return len(self.images) - 1

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Perm") -> "Perm":
        return compose(self, other)

    def __eq__(self, other) -> bool:
        return isinstance(other, Perm) and self.images == other.images

    def __lt__(self, other: "Perm") -> bool:
        return (self.n, self.images) < (other.n, other.images)

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Perm({self.to_text()!r}, n={self.n})"

    def __str__(self) -> str:
        return self.to_text()

    def inverse(self) -> "Perm":
        inv = [0] * len(self.images)
        for x, y in enumerate(self.images):
            inv[y] = x
        return Perm(inv)

    def cycles(self) -> tuple[tuple[int, ...], ...]:
        """Cycles, each starting at its minimum, sorted by minimum."""
        if self._cycles is None:
            seen = [False] * len(self.images)
            out = []
            for start in range(len(self.images)):
                if seen[start]:
                    continue
                cyc = []
                x = start
                while not seen[x]:
                    seen[x] = True
                    cyc.append(x)
                    x = self.images[x]
                out.append(tuple(cyc))
            self._cycles = tuple(out)
        return self._cycles

    @property
    def cyc0(self) -> int:
        """Number of cycles not containing 0."""
        return len(self.cycles()) - 1

    @property
    def length(self) -> int:
        """The length function ``|a| = n - cyc0(a)``."""
        return self.n - self.cyc0

    def zero_cycle(self) -> tuple[int, ...]:
        return self.cycles()[0]

    def cycle_type_without_zero(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles()[1:]), reverse=True))

    def to_text(self, omit_fixed: bool = False) -> str:
        parts = []
        for c in self.cycles():
            if omit_fixed and len(c) == 1 and c[0] != 0:
                continue
            parts.append("(" + " ".join(map(str, c)) + ")")
        return "".join(parts)

    def to_json(self) -> dict:
        return {"n": self.n, "images": list(self.images)}

    @classmethod
    def from_json(cls, data: dict) -> "Perm":
        p = cls(data["images"])
        if "n" in data and data["n"] != p.n:
            raise ValueError("degree does not match images")
        return p


def _check_same_degree(*perms: Perm) -> None:
    if len({p.n for p in perms}) > 1:
        raise ValueError("degree mismatch: " + ", ".join(str(p.n) for p in perms))


def compose(a: Perm, b: Perm) -> Perm:
    _check_same_degree(a, b)
    ai = a.images
    return Perm(tuple(ai[y] for y in b.images))


def conjugate(sigma: Perm, alpha: Perm) -> Perm:
    """Return ``sigma alpha sigma^-1``."""
    _check_same_degree(sigma, alpha)
    out = [0] * len(alpha.images)
    for x, y in enumerate(alpha.images):
        out[sigma.images[x]] = sigma.images[y]
    return Perm(out)


def perm_arith(op: str, *args: Perm | int) -> Perm:
    if op == "compose":
        return compose(*args)
    if op == "inverse":
        return args[0].inverse()
    if op == "conjugate":
        return conjugate(*args)
    if op == "identity":
        return Perm.identity(args[0])
    raise ValueError(f"unknown operation {op!r}")


def cycle_stats(alpha: Perm) -> dict:
    return {
        "cycles": alpha.cycles(),
        "cyc0": alpha.cyc0,
        "length": alpha.length,
        "cycle_type_without_0": alpha.cycle_type_without_zero(),
        "marked_cycle_length": len(alpha.zero_cycle()),
    }


def embed(alpha: Perm, m: int) -> Perm:
    """View ``alpha`` in S_0(m), m >= n, fixing n+1..m."""
    if m < alpha.n:
        raise ValueError("cannot embed into smaller degree")
    return Perm(alpha.images + tuple(range(alpha.n + 1, m + 1)))


def all_perms(n: int) -> list[Perm]:
    """All of S_0(n) in lexicographic order of image sequences."""
    return _all_perms(n)


@lru_cache(maxsize=None)
def _all_perms(n):
    return [Perm(p) for p in itertools.permutations(range(n + 1))]


def all_perms_fixing_zero(n: int) -> list[Perm]:
    """S(n) inside S_0(n)."""
    return _all_perms_fixing_zero(n)


@lru_cache(maxsize=None)
def _all_perms_fixing_zero(n):
    return [Perm((0,) + p) for p in itertools.permutations(range(1, n + 1))]


def union(alpha: Perm, beta: Perm) -> Perm:
    """The product on the tensor algebra: merge the 0-cycles, shift beta by n.

    Computed as ``s^-1 beta s alpha`` where ``s`` cyclically shifts the two
    blocks of {1..n+k}; on {0} u {n+1..n+k} the conjugate is beta shifted by n.
    """
    n, k = alpha.n, beta.n
    bi = beta.images

    def shifted(y):
        if y == 0:
            z = bi[0]
        elif y > n:
            z = bi[y - n]
        else:
            return y
        return z + n if z else 0

    out = [shifted(y) for y in alpha.images]
    out.extend(shifted(x) for x in range(n + 1, n + k + 1))
    return Perm(out)


def restrict_relabel(alpha: Perm, removed: Iterable[int]) -> Perm:
    """Induced permutation on {0..n} minus ``removed``, relabelled in order."""
    removed = frozenset(removed)
    if 0 in removed:
        raise ValueError("cannot remove 0")
    if any(x < 0 or x > alpha.n for x in removed):
        raise ValueError(f"removed set {sorted(removed)} not inside [1, {alpha.n}]")
    return _restrict_relabel(alpha, removed)


@lru_cache(maxsize=200_000)
def _restrict_relabel(alpha: Perm, removed: frozenset) -> Perm:
    img = alpha.images
    keep = [x for x in range(len(img)) if x not in removed]
    label = {x: i for i, x in enumerate(keep)}
    out = []
    for x in keep:
        y = img[x]
        while y in removed:
            y = img[y]
        out.append(label[y])
    return Perm(out)


class Matching:
    """A partition of [n] = {1..n} into pairs and singletons."""

    __slots__ = ("n", "pairs", "_hash")

    def __init__(self, n: int, pairs: Iterable[Sequence[int]] = ()):
        ps = []
        seen = set()
        for p in pairs:
            i, j = sorted(p)
            if i == j or i < 1 or j > n or i in seen or j in seen:
                raise ValueError(f"invalid pair {p} for matching on [{n}]")
            seen.update((i, j))
            ps.append((i, j))
        self.n = n
        self.pairs = tuple(sorted(ps))
        self._hash = hash((n, self.pairs))

    @property
    def singletons(self) -> tuple[int, ...]:
        used = self.support
        return tuple(x for x in range(1, self.n + 1) if x not in used)

    @property
    def support(self) -> frozenset:
        return frozenset(x for p in self.pairs for x in p)

    @property
    def num_pairs(self) -> int:
        return len(self.pairs)

    def as_perm(self) -> Perm:
        """The involution of {0..n}, fixing 0."""
        img = list(range(self.n + 1))
        for i, j in self.pairs:
            img[i], img[j] = j, i
        return Perm(img)

    def is_crossing(self) -> bool:
        return any(a < c < b < d or c < a < d < b
                   for (a, b), (c, d) in itertools.combinations(self.pairs, 2))

    def __eq__(self, other) -> bool:
        return isinstance(other, Matching) and self.n == other.n and self.pairs == other.pairs

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Matching({self.n}, {list(self.pairs)})"


def _matchings(n: int, block_of: tuple[int, ...] | None, perfect: bool) -> Iterator[Matching]:
    img = [0] * (n + 1)

    def rec(i):
        while i <= n and img[i]:
            i += 1
        if i > n:
            yield Matching(n, [(x, img[x]) for x in range(1, n + 1) if x < img[x]])
            return
        if not perfect:
            img[i] = i
            yield from rec(i + 1)
            img[i] = 0
        for j in range(i + 1, n + 1):
            if img[j] or (block_of is not None and block_of[i] == block_of[j]):
                continue
            img[i], img[j] = j, i
            yield from rec(i + 1)
            img[i] = img[j] = 0

    yield from rec(1)


@lru_cache(maxsize=None)
def _matching_list(n, block_of, perfect):
    return tuple(_matchings(n, block_of, perfect))


def _blocks(sizes: Sequence[int]) -> tuple[int, ...]:
    block_of = [0]
    for b, s in enumerate(sizes):
        block_of.extend([b] * s)
    return tuple(block_of)


def enumerate_matchings(kind: str, *sizes: int) -> tuple[Matching, ...]:
    """Matchings of [n] in lexicographic order of the involution's image sequence.

    kind is one of ``all`` (pairs and singletons of [n]), ``pairs_only``,
    ``inhomogeneous`` (sizes n, k; every pair joins the two blocks) and
    ``inhomogeneous_pairs`` (sizes n_1..n_r; perfect, no pair inside a block).
    """
    if kind == "all":
        (n,) = sizes
        return _matching_list(n, None, False)
    if kind == "pairs_only":
        (n,) = sizes
        return _matching_list(n, None, True) if n % 2 == 0 else ()
    if kind == "inhomogeneous":
        n, k = sizes
        return _matching_list(n + k, _blocks((n, k)), False)
    if kind == "inhomogeneous_pairs":
        total = sum(sizes)
        if total % 2:
            return ()
        return _matching_list(total, _blocks(sizes), True)
    raise ValueError(f"unknown matching kind {kind!r}")


class PartialPerm:
    """A partial injection of {0..n}; every element lies in exactly one orbit.

    Linear orbits are listed with the orbit of 0 first, then by initial element.
    """

    def __init__(self, n: int, arcs: dict[int, int]):
        arcs = {int(a): int(b) for a, b in arcs.items()}
        if len(set(arcs.values())) != len(arcs):
            raise ValueError("arcs are not injective")
        if any(not (0 <= x <= n) for kv in arcs.items() for x in kv):
            raise ValueError("arc endpoint out of range")
        self.n = n
        self.arcs = arcs
        targets = set(arcs.values())
        linear = []
        in_linear = set()
        for a in range(n + 1):
            if a in targets:
                continue
            orbit = [a]
            while orbit[-1] in arcs:
                orbit.append(arcs[orbit[-1]])
            linear.append(tuple(orbit))
            in_linear.update(orbit)
        zero = [o for o in linear if 0 in o]
        if not zero:
            raise ValueError("0 must lie in a linear orbit")
        self.linear_orbits = tuple(zero + [o for o in linear if 0 not in o])
        cyclic = []
        rest = sorted(set(range(n + 1)) - in_linear)
        seen = set()
        for x in rest:
            if x in seen:
                continue
            c = [x]
            seen.add(x)
            while arcs[c[-1]] != x:
                c.append(arcs[c[-1]])
                seen.add(c[-1])
            cyclic.append(tuple(c))
        self.cyclic_orbits = tuple(cyclic)

    @property
    def num_linear(self) -> int:
        return len(self.linear_orbits)

    @property
    def initials(self) -> tuple[int, ...]:
        return tuple(o[0] for o in self.linear_orbits)

    @property
    def finals(self) -> tuple[int, ...]:
        return tuple(o[-1] for o in self.linear_orbits)

    def closure(self) -> Perm:
        """Close every linear orbit onto itself."""
        return close_partial(self, Perm.identity(self.num_linear - 1))

    def __repr__(self) -> str:
        return f"PartialPerm({self.n}, {self.arcs})"


def close_partial(pi: PartialPerm, sigma: Perm) -> Perm:
    """Concatenate linear orbits along sigma: the final b_i goes to a_sigma(i)."""
    if sigma.n != pi.num_linear - 1:
        raise ValueError(f"sigma must permute {pi.num_linear} orbit indices")
    img = list(range(pi.n + 1))
    for a, b in pi.arcs.items():
        img[a] = b
    a_, b_ = pi.initials, pi.finals
    for i in range(pi.num_linear):
        img[b_[i]] = a_[sigma(i)]
    return Perm(img)


def enumerate_partial_perms(n: int, num_linear: int | None = None) -> Iterator[PartialPerm]:
    """All partial injections of {0..n} with 0 in a linear orbit."""
    pts = list(range(n + 1))
    for k in range(n + 1):
        for dom in itertools.combinations(pts, k):
            for cod in itertools.permutations(pts, k):
                arcs = dict(zip(dom, cod))
                # 0 lies on a linear orbit iff following arcs from 0 terminates
                x, steps = 0, 0
                while x in arcs and steps <= n:
                    x = arcs[x]
                    steps += 1
                if x in arcs:
                    continue
                pp = PartialPerm(n, arcs)
                if num_linear is None or pp.num_linear == num_linear:
                    yield pp
