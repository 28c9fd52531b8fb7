"""Exact coefficients: Laurent polynomials in q over the rationals, and
exact symmetric matrix routines."""
from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Mapping, Sequence

Rational = Fraction


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot convert {x!r} to an exact rational")


class LaurentScalar:
    """A Laurent polynomial in q with rational coefficients. Immutable."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[int, object] | None = None):
        clean = {}
        if terms:
            for e, c in terms.items():
                c = as_fraction(c)
                if c:
                    clean[int(e)] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "LaurentScalar":
        obj = cls.__new__(cls)
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c) -> "LaurentScalar":
        return cls({0: c})

    @classmethod
    def monomial(cls, e: int, c=1) -> "LaurentScalar":
        return cls({e: c})

    @classmethod
    def coerce(cls, x) -> "LaurentScalar":
        if isinstance(x, LaurentScalar):
            return x
        return cls.const(as_fraction(x))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def min_exp(self) -> int:
        return min(self.terms) if self.terms else 0

    def max_exp(self) -> int:
        return max(self.terms) if self.terms else 0

    def constant_term(self) -> Fraction:
        return self.terms.get(0, Fraction(0))

    def __add__(self, other):
        other = LaurentScalar.coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentScalar._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentScalar._raw({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-LaurentScalar.coerce(other))

    def __rsub__(self, other):
        return LaurentScalar.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, LaurentScalar):
            c = as_fraction(other)
            if not c:
                return ZERO
            return LaurentScalar._raw({e: v * c for e, v in self.terms.items()})
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return LaurentScalar._raw(out)

    __rmul__ = __mul__

    def shift(self, k: int) -> "LaurentScalar":
        """Multiply by q^k."""
        if k == 0:
            return self
        return LaurentScalar._raw({e + k: c for e, c in self.terms.items()})

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial():
                raise ValueError("negative power of a non-monomial Laurent polynomial")
            ((e, c),) = self.terms.items()
            return LaurentScalar._raw({e * k: c ** k})
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, LaurentScalar):
            return self * other ** -1
        return self * (1 / as_fraction(other))

    def substitute_neg(self) -> "LaurentScalar":
        """Replace q by -q."""
        return LaurentScalar._raw({e: (-c if e % 2 else c) for e, c in self.terms.items()})

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentScalar):
            return self.terms == other.terms
        try:
            return self.terms == LaurentScalar.coerce(other).terms
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"LaurentScalar({self.to_text()!r})"

    def __str__(self) -> str:
        return self.to_text()

    def eval(self, q0) -> Fraction:
        return eval_at_q(self, q0)

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if e == 0:
                body = str(a)
            else:
                qpart = "q" if e == 1 else f"q^{e}"
                body = qpart if a == 1 else f"{a}*{qpart}"
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for s, b in pieces[1:]:
            out += f" {s} {b}"
        return out

    @classmethod
    def parse(cls, text: str) -> "LaurentScalar":
        """Parse strings such as ``"q^-1 + 2"``, ``"3/2*q^2 - q"``, ``"-1/2"``."""
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty scalar")
        if s[0] not in "+-":
            s = "+" + s
        pos = 0
        term_re = re.compile(r"([+-])(?:(\d+(?:/\d+)?)(?:\*?(q)(?:\^(-?\d+))?)?|(q)(?:\^(-?\d+))?)")
        total = ZERO
        while pos < len(s):
            m = term_re.match(s, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse scalar {text!r}")
            sign = -1 if m.group(1) == "-" else 1
            if m.group(2) is not None:
                c = Fraction(m.group(2))
                if m.group(3):
                    e = int(m.group(4)) if m.group(4) is not None else 1
                else:
                    e = 0
            else:
                c = Fraction(1)
                e = int(m.group(6)) if m.group(6) is not None else 1
            total = total + cls.monomial(e, sign * c)
            pos = m.end()
        return total

    def to_json(self) -> dict:
        return {"terms": {str(e): str(c) for e, c in sorted(self.terms.items())}}

    @classmethod
    def from_json(cls, data: dict) -> "LaurentScalar":
        return cls({int(e): Fraction(c) for e, c in data["terms"].items()})


ZERO = LaurentScalar._raw({})
ONE = LaurentScalar._raw({0: Fraction(1)})
Q = LaurentScalar._raw({1: Fraction(1)})


def q_pow(e: int) -> LaurentScalar:
    return LaurentScalar._raw({e: Fraction(1)})


def laurent_arith(op: str, *args):
    if op == "add":
        return args[0] + args[1]
    if op == "mul":
        return args[0] * args[1]
    if op == "neg":
        return -args[0]
    if op == "scale_by_rational":
        return args[0] * as_fraction(args[1])
    if op == "pow":
        return args[0] ** int(args[1])
    raise ValueError(f"unknown operation {op!r}")


def eval_at_q(x: LaurentScalar, q0) -> Fraction:
    q0 = as_fraction(q0)
    if q0 == 0:
        if any(e < 0 for e in x.terms):
            raise ZeroDivisionError("negative power of q evaluated at q = 0")
        return x.terms.get(0, Fraction(0))
    return sum((c * q0 ** e for e, c in x.terms.items()), Fraction(0))


def parse_q(text: str):
    """``"symbolic"`` gives None, otherwise an exact rational."""
    text = text.strip()
    if text.lower() == "symbolic":
        return None
    return Fraction(text)


class ExactMatrix:
    """A dense matrix of exact rationals."""

    def __init__(self, entries: Sequence[Sequence[object]]):
        rows = [[as_fraction(x) for x in row] for row in entries]
        if rows and len({len(r) for r in rows}) != 1:
            raise ValueError("ragged matrix")
        self.rows = len(rows)
        self.cols = len(rows[0]) if rows else 0
        self.entries = rows

    @classmethod
    def zeros(cls, r: int, c: int) -> "ExactMatrix":
        return cls([[0] * c for _ in range(r)])

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix([[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)])

    T = property(transpose)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        # operator and Gram matrices are sparse: skip zero entries on both sides
        orows = [[(j, x) for j, x in enumerate(r) if x] for r in other.entries]
        out = []
        for row in self.entries:
            acc: dict = {}
            for k, a in enumerate(row):
                if a:
                    for j, b in orows[k]:
                        acc[j] = acc.get(j, 0) + a * b
            out.append([acc.get(j, Fraction(0)) for j in range(other.cols)])
        return ExactMatrix(out)

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return ExactMatrix([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)])

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self + other.scale(-1)

    def scale(self, c) -> "ExactMatrix":
        c = as_fraction(c)
        return ExactMatrix([[c * a for a in r] for r in self.entries])

    def __eq__(self, other) -> bool:
        return isinstance(other, ExactMatrix) and self.entries == other.entries

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self.entries[i][j] == self.entries[j][i] for i in range(self.rows) for j in range(i))

    def is_zero(self) -> bool:
        return all(not x for r in self.entries for x in r)

    def apply(self, v: Sequence) -> list[Fraction]:
        return [sum((a * as_fraction(b) for a, b in zip(row, v)), Fraction(0)) for row in self.entries]

    def rank(self) -> int:
        return rank(self.entries)

    def to_tsv(self) -> str:
        return "\n".join("\t".join(str(x) for x in r) for r in self.entries)

    def to_json(self) -> list:
        return [[str(x) for x in r] for r in self.entries]

    def __repr__(self) -> str:
        return f"ExactMatrix({self.to_json()})"


def rank(rows: Iterable[Sequence]) -> int:
    """Rank over the rationals by Gaussian elimination."""
    m = [[as_fraction(x) for x in r] for r in rows]
    if not m:
        return 0
    r = 0
    ncols = len(m[0])
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pr = m[r]
        inv = 1 / pr[c]
        for i in range(r + 1, len(m)):
            if m[i][c]:
                f = m[i][c] * inv
                row = m[i]
                for j in range(c, ncols):
                    if pr[j]:
                        row[j] -= f * pr[j]
        r += 1
        if r == len(m):
            break
    return r


def sym_rank_psd(M: ExactMatrix | Sequence[Sequence]) -> tuple[int, bool]:
    """Rank and positive semi-definiteness of a symmetric rational matrix.

    Congruence diagonalization: pivot on the diagonal entry of largest
    magnitude; a negative pivot, or an active block with zero diagonal and a
    nonzero off-diagonal entry, certifies that M is not PSD.
    """
    if not isinstance(M, ExactMatrix):
        M = ExactMatrix(M)
    if not M.is_symmetric():
        raise ValueError("matrix is not symmetric")
    a = [list(r) for r in M.entries]
    active = list(range(M.rows))
    rk = 0
    psd = True
    while active:
        k = max(active, key=lambda i: abs(a[i][i]))
        if not a[k][k]:
            pair = next(((i, j) for i in active for j in active if a[i][j]), None)
            if pair is None:
                break
            psd = False
            i, j = pair
            # congruence by E = I + e_i e_j^T makes the (i, i) entry 2 a_ij
            for t in range(len(a)):
                a[i][t] += a[j][t]
            for t in range(len(a)):
                a[t][i] += a[t][j]
            k = i
        p = a[k][k]
        if p < 0:
            psd = False
        rk += 1
        active.remove(k)
        rowk = a[k]
        for i in active:
            if a[i][k]:
                f = a[i][k] / p
                row = a[i]
                for j in active:
                    if rowk[j]:
                        row[j] -= f * rowk[j]
        for i in active:
            a[i][k] = Fraction(0)
            a[k][i] = Fraction(0)
    return rk, psd
