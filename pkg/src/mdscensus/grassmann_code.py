"""The evaluation code of the Plucker embedding of G(k, n).

Length is the number of Grassmann points, dimension the number of
coordinates C(n, k); column j of the generator matrix is the Plucker vector
of the j-th enumerated point.  Codewords are identified with k-forms, and a
codeword's Hamming weight equals the number of points on which the form
pairs nonzero, so the weight machinery of the exterior module applies
verbatim.
"""

import itertools
import random
from dataclasses import dataclass

import numpy as np

from . import _vecgf
from .budget import check_budget
from .errors import OutOfRange, RankDeficient, ShapeMismatch
from .exterior import DualForm, plucker_embed
from .linalg import (
    MatrixGF,
    _binom,
    enumerate_grassmannian,
    gaussian_binomial,
    rank,
)


@dataclass(frozen=True)
class GrassmannCode:
    gf: object
    k: int
    n: int
    length: int     # number of Grassmann points
    dimension: int  # number of Plucker coordinates
    generator: MatrixGF  # dimension x length


def build_code(k, n, gf, budget=None):
    """Generator matrix built column by column from the point enumeration."""
    length = gaussian_binomial(k, n, gf.q)
    dimension = _binom(n, k)
    check_budget(length * dimension, budget, f"code build at (k={k}, n={n}, q={gf.q})")
    columns = []
    for pt in enumerate_grassmannian(gf, k, n, budget=budget):
        columns.append(plucker_embed(pt.matrix).coeffs)
    data = []
    for i in range(dimension):
        data.extend(col[i] for col in columns)
    generator = MatrixGF(gf, dimension, length, data)
    if rank(generator) != dimension:
        raise RankDeficient("the Plucker embedding generator lost row rank")
    return GrassmannCode(gf=gf, k=k, n=n, length=length, dimension=dimension,
                         generator=generator)


def codeword_weight(code, omega):
    """Hamming weight of the codeword of the form omega, streamed across the
    generator columns (independent of the vectorized weight path)."""
    if not isinstance(omega, DualForm):
        raise ShapeMismatch("codewords are indexed by DualForms")
    if omega.gf != code.gf or (omega.k, omega.n) != (code.k, code.n):
        raise ShapeMismatch("form does not match the code parameters")
    gf = code.gf
    gen = code.generator
    support = [
        (i, c) for i, c in enumerate(omega.coeffs) if c
    ]
    if not support:
        return 0
    weight = 0
    for j in range(code.length):
        acc = 0
        for i, c in support:
            acc = gf.add(acc, gf.mul(c, gen.entry(i, j)))
        if acc:
            weight += 1
    return weight


def _generator_array(code):
    return np.array(
        [list(code.generator.row(i)) for i in range(code.dimension)],
        dtype=np.int64,
    )


def _batched_weights(code, coeff_rows):
    """Weights of many codewords at once via the vectorized backend."""
    gf = code.gf
    ops = _vecgf.vector_ops(gf)
    if ops is None:
        return [
            codeword_weight(code, DualForm(gf, code.k, code.n, coeffs))
            for coeffs in coeff_rows
        ]
    gen = _generator_array(code).astype(ops.dtype)
    out = []
    for coeffs in coeff_rows:
        acc = np.zeros(code.length, dtype=ops.dtype)
        for i, c in enumerate(coeffs):
            if c:
                acc = ops.add(acc, ops.mul(int(c), gen[i]))
        out.append(int(np.count_nonzero(acc)))
    return out


def weight_spectrum(code, mode="exhaustive", sample_count=None, seed=0, budget=None):
    """Weight -> multiplicity over nonzero codewords.

    exhaustive walks all q^dimension - 1 codewords; sample draws
    sample_count coefficient vectors from a seeded Mersenne Twister
    (random.Random(seed)), rejecting the zero vector, so sampled spectra are
    reproducible bit for bit.
    """
    gf = code.gf
    q = gf.q
    if mode == "exhaustive":
        n_words = q**code.dimension
        check_budget(n_words, budget, "exhaustive codeword sweep")
        spectrum = {}
        block = []
        for coeffs in itertools.product(range(q), repeat=code.dimension):
            if not any(coeffs):
                continue
            block.append(coeffs)
            if len(block) == 4096:
                for w in _batched_weights(code, block):
                    spectrum[w] = spectrum.get(w, 0) + 1
                block = []
        for w in _batched_weights(code, block):
            spectrum[w] = spectrum.get(w, 0) + 1
        return spectrum
    if mode == "sample":
        if not sample_count or sample_count < 1:
            raise OutOfRange("sample mode needs a positive draw count")
        rng = random.Random(seed)
        spectrum = {}
        block = []
        for _ in range(sample_count):
            while True:
                coeffs = tuple(rng.randrange(q) for _ in range(code.dimension))
                if any(coeffs):
                    break
            block.append(coeffs)
        for w in _batched_weights(code, block):
            spectrum[w] = spectrum.get(w, 0) + 1
        return spectrum
    raise OutOfRange(f"unknown spectrum mode {mode!r}")


def higher_weight_value(k, n, q, r):
    """q^delta + q^(delta-1) + ... + q^(delta-r+1)."""
    delta = k * (n - k)
    return sum(q ** (delta - i) for i in range(r))


def two_form_weight_value(n, q, r):
    """Weight of the rank-2r two-form e^1^e^2 + e^3^e^4 + ... on GF(q)^n."""
    delta = 2 * (n - 2)
    return sum(q ** (delta - 2 * i) for i in range(r))


def standard_two_form(gf, n, r):
    """e^1^e^2 + e^3^e^4 + ... + e^(2r-1)^e^(2r) as a DualForm."""
    if 2 * r > n:
        raise OutOfRange(f"rank-{2 * r} form needs dimension >= {2 * r}")
    terms = [((2 * i + 1, 2 * i + 2), 1) for i in range(r)]
    return DualForm.from_terms(gf, 2, n, terms)


def subcode_weight(code, forms):
    """Support size of the subcode spanned by the given forms: columns where
    at least one spanning form evaluates nonzero."""
    gf = code.gf
    gen = code.generator
    weight = 0
    supports = [
        [(i, c) for i, c in enumerate(f.coeffs) if c] for f in forms
    ]
    for j in range(code.length):
        hit = False
        for support in supports:
            acc = 0
            for i, c in support:
                acc = gf.add(acc, gf.mul(c, gen.entry(i, j)))
            if acc:
                hit = True
                break
        if hit:
            weight += 1
    return weight


def higher_weight_search(code, r, mode="exhaustive", budget=None):
    """Minimum support size over r-dimensional subcodes.

    exhaustive enumerates every r-dimensional space of forms (feasible only
    for tiny parameters); structured evaluates the one family of sections
    whose annihilators are built inside a single maximal linear subspace of
    decomposable forms, which attains q^delta + ... + q^(delta-r+1) and is
    an upper-bound certificate.
    """
    gf = code.gf
    if r < 1 or r > code.dimension:
        raise OutOfRange(f"subcode dimension {r} outside 1..{code.dimension}")
    if mode == "exhaustive":
        n_subspaces = gaussian_binomial(r, code.dimension, gf.q)
        check_budget(n_subspaces * code.length, budget,
                     "exhaustive subcode search")
        best = None
        for pt in enumerate_grassmannian(gf, r, code.dimension, budget=budget):
            forms = [
                DualForm(gf, code.k, code.n, pt.matrix.row(i)) for i in range(r)
            ]
            w = subcode_weight(code, forms)
            if best is None or w < best:
                best = w
        return best
    if mode == "structured":
        if r > code.n - code.k + 1:
            raise OutOfRange(
                f"structured certificates exist only for r <= n-k+1 = "
                f"{code.n - code.k + 1}"
            )
        core = tuple(range(1, code.k))
        forms = [
            DualForm.basis(gf, code.k, code.n, core + (code.k - 1 + i,))
            for i in range(1, r + 1)
        ]
        return subcode_weight(code, forms)
    raise OutOfRange(f"unknown search mode {mode!r}")
