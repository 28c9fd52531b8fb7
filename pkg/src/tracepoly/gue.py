"""Independent checks against Hermitian Gaussian random matrices: exact Wick
moments, trace-monomial evaluation and Monte Carlo estimation."""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Sequence

import numpy as np

from .perm import Perm, compose, enumerate_matchings
from .scalar import as_fraction


class ExactComplex:
    """A Gaussian rational a + b i."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = as_fraction(re)
        self.im = as_fraction(im)

    @staticmethod
    def _c(x) -> "ExactComplex":
        return x if isinstance(x, ExactComplex) else ExactComplex(x)

    def __add__(self, o):
        o = self._c(o)
        return ExactComplex(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, o):
        o = self._c(o)
        return ExactComplex(self.re - o.re, self.im - o.im)

    def __neg__(self):
        return ExactComplex(-self.re, -self.im)

    def __mul__(self, o):
        o = self._c(o)
        return ExactComplex(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self) -> "ExactComplex":
        return ExactComplex(self.re, -self.im)

    def __eq__(self, o) -> bool:
        try:
            o = self._c(o)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self) -> str:
        return f"({self.re}+{self.im}i)" if self.im else str(self.re)


# -- generic matrix helpers over any commutative ring --------------------------


def mat_identity(N: int, one=Fraction(1), zero=Fraction(0)) -> list[list]:
    return [[one if i == j else zero for j in range(N)] for i in range(N)]


def mat_mul(A, B):
    N = len(A)
    if len(B) != N or any(len(r) != N for r in A) or any(len(r) != N for r in B):
        raise ValueError("size mismatch")
    return [[sum((A[i][k] * B[k][j] for k in range(1, N)), A[i][0] * B[0][j]) for j in range(N)] for i in range(N)]


def mat_scale(A, c):
    return [[c * x for x in row] for row in A]


def mat_add(A, B):
    return [[a + b for a, b in zip(r, s)] for r, s in zip(A, B)]


def mat_trace(A):
    return sum((A[i][i] for i in range(1, len(A))), A[0][0])


def _check_sizes(mats) -> int:
    sizes = {len(m) for m in mats} | {len(r) for m in mats for r in m}
    if len(sizes) > 1:
        raise ValueError("matrices must be square and of the same size")
    return sizes.pop() if sizes else 0


# -- trace monomials ---------------------------------------------------------------


def trace_monomial(alpha: Perm, mats: Sequence, mul=mat_mul, trace=mat_trace, identity=None):
    """Tr_alpha[x_1, ..., x_n]: the ordered product along the 0-cycle
    (0, alpha(0), alpha^2(0), ...) times the traces of the other cycles."""
    if len(mats) != alpha.n:
        raise ValueError(f"need {alpha.n} matrices, got {len(mats)}")
    cycles = alpha.cycles()
    if identity is None:
        raise ValueError("identity matrix required")
    part = identity
    x = alpha(0)
    while x != 0:
        part = mul(part, mats[x - 1])
        x = alpha(x)
    scalars = []
    for c in cycles[1:]:
        m = mats[c[0] - 1]
        for y in c[1:]:
            m = mul(m, mats[y - 1])
        scalars.append(trace(m))
    return part, scalars


def evaluate_trace_monomial(alpha: Perm, matrices: Sequence):
    """Returns (matrix_part, scalar) with scalar = Tr(matrix_part)/N.

    Works for exact nested lists (Fraction or ExactComplex entries) and for
    numpy arrays, including batches of shape (..., N, N).
    """
    if matrices and isinstance(matrices[0], np.ndarray):
        N = matrices[0].shape[-1]
        if any(m.shape != matrices[0].shape for m in matrices) or matrices[0].shape[-2] != N:
            raise ValueError("matrices must be square and of the same size")
        eye = np.broadcast_to(np.eye(N, dtype=complex), matrices[0].shape)
        part, scal = trace_monomial(alpha, matrices, np.matmul,
                                    lambda m: np.trace(m, axis1=-2, axis2=-1), eye)
        for s in scal:
            part = part * s[..., None, None]
        return part, np.trace(part, axis1=-2, axis2=-1) / N
    N = _check_sizes(matrices) if matrices else None
    if N is None:
        raise ValueError("matrix size unknown for degree 0; pass numpy arrays")
    one = matrices[0][0][0] * 0 + 1
    zero = one * 0
    part, scal = trace_monomial(alpha, matrices, identity=mat_identity(N, one, zero))
    for s in scal:
        part = mat_scale(part, s)
    return part, mat_trace(part) * Fraction(1, N)


# -- Wick formula -------------------------------------------------------------------


def _pair_products(words_or_vectors, m) -> Fraction:
    vecs = words_or_vectors
    c = Fraction(1)
    for i, j in m.pairs:
        c *= sum((a * b for a, b in zip(vecs[i - 1], vecs[j - 1])), Fraction(0))
        if not c:
            break
    return c


def wick_moment(alpha: Perm, vectors: Sequence[Sequence], N: int) -> Fraction:
    """E[(1/N) Tr(Tr_alpha[X(h_1), ..., X(h_n)])] = sum_pi N^(cyc0(pi alpha) - n/2) prod <h_i, h_j>."""
    n = alpha.n
    if len(vectors) != n:
        raise ValueError(f"need {n} vectors")
    if n % 2:
        return Fraction(0)
    vecs = [[as_fraction(x) for x in v] for v in vectors]
    total = Fraction(0)
    for m in enumerate_matchings("pairs_only", n):
        c = _pair_products(vecs, m)
        if c:
            g = compose(m.as_perm(), alpha)
            total += c * Fraction(N) ** (len(g.cycles()) - 1 - n // 2)
    return total


def wick_matrix_moment(alpha: Perm, vectors: Sequence[Sequence], D: Sequence, N: int):
    """D0 E[Tr_alpha[X(h_1) D1, ..., X(h_n) Dn]] = N^(-n/2) sum_pi C_pi(F) D0 Tr_{pi alpha}[D1, ..., Dn]."""
    n = alpha.n
    if len(D) != n + 1 or len(vectors) != n:
        raise ValueError("need n vectors and n+1 matrices")
    if _check_sizes(D) != N:
        raise ValueError("matrix size does not match N")
    one = D[0][0][0] * 0 + 1
    zero = one * 0
    acc = [[zero] * N for _ in range(N)]
    if n % 2:
        return acc
    vecs = [[as_fraction(x) for x in v] for v in vectors]
    scale = Fraction(1, N ** (n // 2))
    for m in enumerate_matchings("pairs_only", n):
        c = _pair_products(vecs, m)
        if not c:
            continue
        part, scal = trace_monomial(compose(m.as_perm(), alpha), list(D[1:]),
                                    identity=mat_identity(N, one, zero))
        term = mat_mul(D[0], part)
        f = c * scale
        for s in scal:
            term = mat_scale(term, s)
        acc = mat_add(acc, mat_scale(term, f))
    return acc


# -- sampling ----------------------------------------------------------------------


class GaussianEnsemble:
    """One independent Hermitian Gaussian matrix per basis direction, with
    E[X(f)_ij X(g)_kl] = (1/N) delta_{i=l} delta_{j=k} <f, g>."""

    def __init__(self, N: int, d: int, seed=None):
        self.N, self.d = N, d
        self.seed = seed

    @staticmethod
    def sample_batch(rng: np.random.Generator, N: int, d: int, batch: int) -> np.ndarray:
        """Array of shape (d, batch, N, N)."""
        b = rng.standard_normal((d, batch, N, N))
        upper = np.triu(b, 1)
        lower = np.swapaxes(np.tril(b, -1), -1, -2)
        off = (upper + 1j * lower) / np.sqrt(2 * N)
        diag = np.diagonal(b, axis1=-2, axis2=-1) / np.sqrt(N)
        X = off + np.conj(np.swapaxes(off, -1, -2))
        idx = np.arange(N)
        X[..., idx, idx] = diag
        return X

    def sample(self, batch: int) -> np.ndarray:
        return self.sample_batch(np.random.default_rng(self.seed), self.N, self.d, batch)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("TRACEPOLY_THREADS", "1")))
    except ValueError:
        return 1


def _chunk_stats(alpha: Perm, coeffs: np.ndarray, N: int, seed_seq, size: int):
    rng = np.random.default_rng(seed_seq)
    X = GaussianEnsemble.sample_batch(rng, N, coeffs.shape[1], size)
    mats = [np.tensordot(c, X, axes=1) for c in coeffs]
    if not mats:
        vals = np.ones(size, dtype=complex)
    else:
        _, vals = evaluate_trace_monomial(alpha, mats)
    return vals.sum(), (vals.real ** 2).sum(), (vals.imag ** 2).sum(), size


def mc_check(alpha: Perm, vectors: Sequence[Sequence], N: int, samples: int, seed=0, chunk: int = 20_000):
    """Sample mean of the scalar part of Tr_alpha[X(h_1), ..., X(h_n)] and its
    standard error.  Reproducible for a given seed; chunks use spawned streams
    and are combined in a fixed order."""
    if samples < 1:
        raise ValueError("samples must be positive")
    n = alpha.n
    d = max((len(v) for v in vectors), default=1)
    coeffs = np.array([[float(as_fraction(x)) for x in v] + [0.0] * (d - len(v)) for v in vectors]).reshape(n, d)
    sizes = [chunk] * (samples // chunk) + ([samples % chunk] if samples % chunk else [])
    seqs = np.random.SeedSequence(seed).spawn(len(sizes))
    jobs = list(zip(seqs, sizes))
    workers = _threads()
    if workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(workers) as ex:
            parts = list(ex.map(lambda j: _chunk_stats(alpha, coeffs, N, *j), jobs))
    else:
        parts = [_chunk_stats(alpha, coeffs, N, *j) for j in jobs]
    total = sum(p[0] for p in parts)
    sq_re = sum(p[1] for p in parts)
    sq_im = sum(p[2] for p in parts)
    mean = total / samples
    var = (sq_re - samples * mean.real ** 2 + sq_im - samples * mean.imag ** 2) / max(samples - 1, 1)
    stderr = float(np.sqrt(max(var, 0.0) / samples))
    return complex(mean), stderr


def mc_report(alpha: Perm, vectors, N: int, samples: int, seed=0) -> dict:
    est, se = mc_check(alpha, vectors, N, samples, seed)
    oracle = wick_moment(alpha, vectors, N)
    sig = abs(est - float(oracle)) / se if se > 0 else (0.0 if abs(est - float(oracle)) < 1e-12 else float("inf"))
    return {"estimate": [est.real, est.imag], "stderr": se, "oracle": str(oracle), "sigmas": sig}
