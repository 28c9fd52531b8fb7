"""Creation, annihilation and second-quantization operators on the graded
Fock space, realized as exact matrices over truncated bases."""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence

from .group_algebra import _add_into
from .perm import Perm, compose, restrict_relabel
from .scalar import ONE, Q, ExactMatrix, LaurentScalar, as_fraction, eval_at_q
from .trace_algebra import TraceElement, basis_labels, inner_product_q

Key = tuple


def _vec(h: Sequence) -> list[Fraction]:
    return [as_fraction(x) for x in h]


def _ip_letter(letter: int, h: list[Fraction]) -> Fraction:
    return h[letter - 1] if letter - 1 < len(h) else Fraction(0)


def _transposition_0(k: int, n: int) -> Perm:
    img = list(range(n + 1))
    img[0], img[k] = k, 0
    return Perm(img)


def _create(flavor: str, h: list[Fraction], alpha: Perm, word: tuple) -> dict:
    n = alpha.n
    ext = Perm(alpha.images + (n + 1,))
    if flavor == "gue":
        ext = compose(_transposition_0(n + 1, n + 1), ext)
    elif flavor != "gaussian":
        raise ValueError(f"unknown flavor {flavor!r}")
    out: dict = {}
    for i, x in enumerate(h, start=1):
        if x:
            out[(ext, word + (i,))] = LaurentScalar.const(x)
    return out


def _annihilate(flavor: str, h: list[Fraction], alpha: Perm, word: tuple) -> dict:
    n = alpha.n
    out: dict = {}
    inv0 = alpha.inverse()(0)
    for k in range(1, n + 1):
        ip = _ip_letter(word[k - 1], h)
        if not ip:
            continue
        rest = word[:k - 1] + word[k:]
        if flavor == "gaussian":
            weight = ONE if alpha(k) == k else Q
            red = restrict_relabel(alpha, {k})
        elif flavor == "gue":
            weight = ONE if k == inv0 else Q
            red = restrict_relabel(compose(_transposition_0(k, n), alpha), {k})
        else:
            raise ValueError(f"unknown flavor {flavor!r}")
        _add_into(out, (red, rest), weight * ip)
    return out


def create_annihilate(flavor: str, which: str, h: Sequence, x) -> TraceElement:
    """a+ or a- of the Gaussian ((0)(1)) or GUE ((01)) field, applied to a Fock vector.

    ``x`` is a basis label (alpha, word) or a TraceElement in Hermite coordinates.
    """
    h = _vec(h)
    fn = {"+": _create, "plus": _create, "-": _annihilate, "minus": _annihilate}[which]
    if isinstance(x, TraceElement):
        items = x.to_basis("I").terms.items()
    else:
        items = [((x[0], tuple(x[1])), ONE)]
    out: dict = {}
    for (a, w), c in items:
        for k, v in fn(flavor, h, a, w).items():
            _add_into(out, k, c * v)
    return TraceElement._raw(out, "I")


def field_operator(flavor: str, h: Sequence, x) -> TraceElement:
    return create_annihilate(flavor, "+", h, x) + create_annihilate(flavor, "-", h, x)


def dgamma(A: ExactMatrix, x) -> TraceElement:
    """dGamma(A)(alpha x w) = sum_i (0 i) alpha x (w with A applied in slot i)."""
    if A.rows != A.cols:
        raise ValueError("A must be square")
    d = A.rows
    items = x.to_basis("I").terms.items() if isinstance(x, TraceElement) else [((x[0], tuple(x[1])), ONE)]
    out: dict = {}
    for (a, w), c in items:
        n = a.n
        for i in range(1, n + 1):
            if w[i - 1] > d:
                raise ValueError(f"word letter exceeds dimension {d}")
            p = compose(_transposition_0(i, n), a)
            for r in range(d):
                v = A[r, w[i - 1] - 1]
                if v:
                    _add_into(out, (p, w[:i - 1] + (r + 1,) + w[i:]), c * v)
    return TraceElement._raw(out, "I")


def rank_one(g: Sequence, f: Sequence) -> ExactMatrix:
    """|g><f|."""
    g, f = _vec(g), _vec(f)
    return ExactMatrix([[gi * fj for fj in f] for gi in g])


class FockBasis:
    """Basis labels of degree n (all permutations and words over d letters)
    together with their Gram matrix at a rational q."""

    def __init__(self, n: int, d: int, q0, labels: list[Key] | None = None):
        self.n, self.d = n, d
        self.q0 = as_fraction(q0)
        self.labels = basis_labels(n, d) if labels is None else list(labels)
        self.index = {k: i for i, k in enumerate(self.labels)}
        self._gram = None

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def gram(self) -> ExactMatrix:
        if self._gram is None:
            self._gram = gram_of_labels(self.labels, self.q0)
        return self._gram

    def coordinates(self, x: TraceElement) -> list[Fraction]:
        v = [Fraction(0)] * len(self.labels)
        for k, c in x.to_basis("I").terms.items():
            val = eval_at_q(c, self.q0)
            if not val:
                continue
            if k not in self.index:
                raise ValueError(f"image {k} escapes the codomain span")
            v[self.index[k]] += val
        return v


def gram_of_labels(labels: list[Key], q0) -> ExactMatrix:
    """<x_i, x_j>_q at q0 for Hermite basis labels."""
    q0 = as_fraction(q0)
    from .perm import all_perms_fixing_zero, conjugate
    from .trace_algebra import apply_U
    rows = []
    for a, w in labels:
        row = []
        for b, v in labels:
            s = Fraction(0)
            if a.n == b.n and sorted(w) == sorted(v):
                binv = b.inverse()
                for sg in all_perms_fixing_zero(a.n):
                    if apply_U(sg, v) == w:
                        s += q0 ** compose(a, conjugate(sg, binv)).length
            row.append(s)
        rows.append(row)
    return ExactMatrix(rows)


def operator_matrix(op: Callable[[Key], TraceElement], domain: FockBasis, codomain: FockBasis) -> ExactMatrix:
    """Column j holds the codomain coordinates of op(domain label j)."""
    cols = [codomain.coordinates(op(k)) for k in domain.labels]
    return ExactMatrix([[cols[j][i] for j in range(len(cols))] for i in range(len(codomain))])


def is_adjoint_pair(m_plus: ExactMatrix, m_minus: ExactMatrix, dom: FockBasis, cod: FockBasis) -> bool:
    """<A x, y> = <x, B y> for A: dom -> cod and B: cod -> dom, i.e. A^T G_cod = G_dom B."""
    return m_plus.transpose() @ cod.gram == dom.gram @ m_minus


def sym_gram_rank(n: int, d: int, q0) -> int:
    from .scalar import rank
    return rank(FockBasis(n, d, q0).gram.entries)


def ip_at(x: TraceElement, y: TraceElement, q0) -> Fraction:
    return eval_at_q(inner_product_q(x, y), q0)
