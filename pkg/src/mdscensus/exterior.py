"""Exterior algebra over V = GF(q)^n and its dual.

Degree-k multivectors and k-forms are dense coefficient tuples over the
lexicographically ordered basis of strictly increasing multi-indices.  The
sign conventions are fixed by the determinant pairing <e^I, e_J> = delta_IJ,
which forces iota_{e_i} e^I = (-1)^(t-1) e^(I minus i) when i is the t-th
index of I.

Weights of forms (the number of Grassmann points on which a form pairs
nonzero) can be computed two ways: a direct sweep of the Grassmannian, and
a recursion that contracts the form along every vector outside its kernel
and averages the quotient-form weights.  The two are kept as independent
code paths and cross-checked in the test suite.
"""

import functools
import itertools
from dataclasses import dataclass

from .budget import check_budget
from .errors import (
    DegreeMismatch,
    DimensionMismatch,
    OutOfRange,
    RankDeficient,
    ShapeMismatch,
    ZeroInput,
)
from .linalg import (
    MatrixGF,
    enumerate_grassmannian,
    kernel_basis,
    minor,
    point_from_rows,
    rref,
    _binom,
)


@functools.lru_cache(maxsize=None)
def multi_indices(k, n):
    """All strictly increasing k-tuples from 1..n, lexicographic."""
    if k < 0 or k > n:
        return ()
    return tuple(itertools.combinations(range(1, n + 1), k))


@functools.lru_cache(maxsize=None)
def index_positions(k, n):
    return {idx: pos for pos, idx in enumerate(multi_indices(k, n))}


def merge_sign(a, b):
    """Sign of sorting the concatenation of disjoint increasing tuples a, b,
    i.e. (-1)^(number of pairs x in a, y in b with x > y); 0 on overlap."""
    sign = 1
    for x in a:
        for y in b:
            if x == y:
                return 0, ()
            if x > y:
                sign = -sign
    return sign, tuple(sorted(a + b))


class _Graded:
    """Shared behavior of MultiVector and DualForm: coefficients over I_{k,n}."""

    __slots__ = ("gf", "k", "n", "coeffs")

    def __init__(self, gf, k, n, coeffs):
        coeffs = tuple(coeffs)
        if len(coeffs) != _binom(n, k):
            raise ShapeMismatch(
                f"need {_binom(n, k)} coefficients for degree {k} in dimension {n}"
            )
        for v in coeffs:
            if not 0 <= v < gf.q:
                raise ShapeMismatch(f"coefficient {v} is not in GF({gf.q})")
        self.gf = gf
        self.k = k
        self.n = n
        self.coeffs = coeffs

    def is_zero(self):
        return all(v == 0 for v in self.coeffs)

    def coefficient(self, index):
        return self.coeffs[index_positions(self.k, self.n)[tuple(index)]]

    def add(self, other):
        self._match(other)
        gf = self.gf
        return type(self)(
            gf, self.k, self.n,
            tuple(gf.add(a, b) for a, b in zip(self.coeffs, other.coeffs)),
        )

    def scale(self, c):
        gf = self.gf
        return type(self)(gf, self.k, self.n, tuple(gf.mul(c, v) for v in self.coeffs))

    def _match(self, other):
        if (
            type(other) is not type(self)
            or self.gf != other.gf
            or (self.k, self.n) != (other.k, other.n)
        ):
            raise ShapeMismatch("operands live in different graded pieces")

    def __eq__(self, other):
        return (
            type(other) is type(self)
            and self.gf == other.gf
            and (self.k, self.n, self.coeffs) == (other.k, other.n, other.coeffs)
        )

    def __hash__(self):
        return hash((type(self).__name__, self.gf, self.k, self.n, self.coeffs))

    def __repr__(self):
        terms = [
            f"{c}*{idx}" for idx, c in zip(multi_indices(self.k, self.n), self.coeffs) if c
        ]
        body = " + ".join(terms) if terms else "0"
        return f"{type(self).__name__}[k={self.k},n={self.n}]({body})"

    @classmethod
    def zero(cls, gf, k, n):
        return cls(gf, k, n, (0,) * _binom(n, k))

    @classmethod
    def basis(cls, gf, k, n, index):
        pos = index_positions(k, n)[tuple(index)]
        coeffs = [0] * _binom(n, k)
        coeffs[pos] = 1
        return cls(gf, k, n, coeffs)

    @classmethod
    def from_terms(cls, gf, k, n, terms):
        """Build from (multi-index, coefficient) pairs; repeats accumulate."""
        coeffs = [0] * _binom(n, k)
        pos = index_positions(k, n)
        for index, c in terms:
            key = tuple(index)
            coeffs[pos[key]] = gf.add(coeffs[pos[key]], c)
        return cls(gf, k, n, coeffs)


class MultiVector(_Graded):
    """Element of the k-th exterior power of V in the e_I basis."""


class DualForm(_Graded):
    """Element of the k-th exterior power of V* in the e^I basis."""


def plucker_embed(matrix):
    """All maximal minors of a full-rank k x n matrix, as a MultiVector."""
    k, n = matrix.rows, matrix.cols
    coeffs = [minor(matrix, idx) for idx in multi_indices(k, n)]
    if all(c == 0 for c in coeffs):
        raise RankDeficient("matrix has rank below its row count")
    return MultiVector(matrix.gf, k, n, coeffs)


def pairing(omega, lam):
    """Determinant pairing of a k-form with a k-multivector: sum of
    coordinatewise products."""
    if not isinstance(omega, DualForm) or not isinstance(lam, MultiVector):
        raise ShapeMismatch("pairing takes (DualForm, MultiVector)")
    if omega.gf != lam.gf or (omega.k, omega.n) != (lam.k, lam.n):
        raise ShapeMismatch("pairing operands live in different spaces")
    gf = omega.gf
    acc = 0
    for a, b in zip(omega.coeffs, lam.coeffs):
        if a and b:
            acc = gf.add(acc, gf.mul(a, b))
    return acc


def wedge(x, y):
    """Wedge product of two elements of the same algebra (both primal or
    both dual)."""
    if type(x) is not type(y):
        raise ShapeMismatch("wedge needs two multivectors or two forms")
    if x.gf != y.gf or x.n != y.n:
        raise ShapeMismatch("wedge operands live over different spaces")
    k_out = x.k + y.k
    gf = x.gf
    if k_out > x.n:
        # every term vanishes; the degree-(> n) piece is the zero space
        return type(x)(gf, k_out, x.n, ())
    out = [0] * _binom(x.n, k_out)
    pos = index_positions(k_out, x.n)
    xi = multi_indices(x.k, x.n)
    yi = multi_indices(y.k, y.n)
    for ia, a in zip(xi, x.coeffs):
        if not a:
            continue
        for ib, b in zip(yi, y.coeffs):
            if not b:
                continue
            sign, merged = merge_sign(ia, ib)
            if sign == 0:
                continue
            term = gf.mul(a, b)
            if sign < 0:
                term = gf.neg(term)
            p = pos[merged]
            out[p] = gf.add(out[p], term)
    return type(x)(gf, k_out, x.n, out)


def interior_mult(xi, omega):
    """Contraction adjoint to the wedge: <iota_xi omega, zeta> = <omega, xi ^ zeta>.

    A MultiVector contracts a DualForm (yielding a DualForm) and a DualForm
    contracts a MultiVector (yielding a MultiVector).
    """
    if isinstance(xi, MultiVector) and isinstance(omega, DualForm):
        out_cls = DualForm
    elif isinstance(xi, DualForm) and isinstance(omega, MultiVector):
        out_cls = MultiVector
    else:
        raise ShapeMismatch("contraction takes (MultiVector, DualForm) or (DualForm, MultiVector)")
    if xi.gf != omega.gf or xi.n != omega.n:
        raise ShapeMismatch("contraction operands live over different spaces")
    if xi.k > omega.k:
        raise DegreeMismatch(f"cannot contract degree {omega.k} by degree {xi.k}")
    gf, n = xi.gf, xi.n
    k_out = omega.k - xi.k
    out = [0] * _binom(n, k_out)
    pos = index_positions(k_out, n)
    xi_idx = multi_indices(xi.k, n)
    om_idx = multi_indices(omega.k, n)
    for ia, a in zip(xi_idx, xi.coeffs):
        if not a:
            continue
        ia_set = set(ia)
        for ib, b in zip(om_idx, omega.coeffs):
            if not b:
                continue
            if not ia_set.issubset(ib):
                continue
            rest = tuple(i for i in ib if i not in ia_set)
            sign, _ = merge_sign(ia, rest)
            term = gf.mul(a, b)
            if sign < 0:
                term = gf.neg(term)
            p = pos[rest]
            out[p] = gf.add(out[p], term)
    return out_cls(gf, k_out, n, out)


@functools.lru_cache(maxsize=None)
def _plucker_relation_terms(k, n):
    """Quadratic relations cutting out decomposables: one relation per pair
    (K in I_{k-1,n}, J in I_{k+1,n}), as terms (sign, posA, posB) meaning
    sign * x[posA] * x[posB] summed to zero.

    Derived from requiring (iota_{e^K} x) wedge x = 0 for every basis
    contraction, expanded on the basis.
    """
    pos_k = index_positions(k, n)
    relations = []
    for kk in multi_indices(k - 1, n):
        kk_set = set(kk)
        for jj in multi_indices(k + 1, n):
            terms = []
            for i in jj:
                if i in kk_set:
                    continue
                big = tuple(sorted(kk + (i,)))
                if len(big) != k:
                    continue
                rest = tuple(x for x in jj if x != i)
                s1, _ = merge_sign(kk, (i,))
                s2, _ = merge_sign((i,), rest)
                terms.append((s1 * s2, pos_k[big], pos_k[rest]))
            if terms:
                relations.append(tuple(terms))
    return tuple(relations)


def satisfies_plucker(x):
    """True when the coefficient vector is decomposable (a single wedge of
    vectors / covectors), i.e. every quadratic relation vanishes."""
    if x.is_zero():
        raise ZeroInput("the zero element has no projective class")
    if x.k in (0, 1) or x.k >= x.n - 1:
        return True
    gf = x.gf
    c = x.coeffs
    for rel in _plucker_relation_terms(x.k, x.n):
        acc = 0
        for sign, a, b in rel:
            if c[a] and c[b]:
                t = gf.mul(c[a], c[b])
                acc = gf.add(acc, t if sign > 0 else gf.neg(t))
        if acc:
            return False
    return True


# ---------------------------------------------------------------------------
# Kernel/support profile of a form.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FormProfile:
    form: DualForm
    v_omega: MatrixGF  # rows span {v : iota_v omega = 0}
    u_omega: MatrixGF  # rows span the annihilator of v_omega in V*
    decomposable: bool


def _contraction_matrix(omega):
    """Rows indexed by e_1..e_n; row i holds the coefficients of the
    contraction of omega by e_i."""
    gf, k, n = omega.gf, omega.k, omega.n
    width = _binom(n, k - 1)
    pos = index_positions(k - 1, n)
    rows = [[0] * width for _ in range(n)]
    for ib, b in zip(multi_indices(k, n), omega.coeffs):
        if not b:
            continue
        for t, i in enumerate(ib):
            rest = ib[:t] + ib[t + 1:]
            val = b if t % 2 == 0 else gf.neg(b)
            p = pos[rest]
            rows[i - 1][p] = gf.add(rows[i - 1][p], val)
    return MatrixGF.from_rows(gf, rows)


def _kernel_matrix(omega):
    """Echelonized basis of {v : iota_v omega = 0}."""
    gf, n = omega.gf, omega.n
    t = _contraction_matrix(omega)
    # v lies in the kernel iff sum_i v_i * row_i = 0: left null space of t
    t_transpose = MatrixGF.from_rows(
        gf, [[t.entry(i, j) for i in range(t.rows)] for j in range(t.cols)]
    )
    v_omega = kernel_basis(t_transpose)
    if not v_omega.rows:
        return MatrixGF(gf, 0, n, ())
    red, _ = rref(v_omega)
    return red


def form_profile(omega):
    """Kernel subspace, its annihilator, and the decomposability flag."""
    if omega.is_zero():
        raise ZeroInput("profile of the zero form")
    gf, n = omega.gf, omega.n
    v_omega = _kernel_matrix(omega)
    if v_omega.rows:
        u_omega = kernel_basis(v_omega)
    else:
        u_omega = MatrixGF.identity(gf, n)
    if u_omega.rows:
        u_omega, _ = rref(u_omega)
    return FormProfile(
        form=omega,
        v_omega=v_omega,
        u_omega=u_omega,
        decomposable=satisfies_plucker(omega),
    )


# ---------------------------------------------------------------------------
# Weights.
# ---------------------------------------------------------------------------

def form_weight(omega, method="direct", budget=None):
    """Number of k-subspaces whose Plucker vector pairs nonzero with omega.

    direct: sweep the Grassmannian.  recursive: contract along every vector
    outside the form's kernel, recurse on the quotient forms, and divide by
    q^k - 1; base case of 1-forms counted directly.
    """
    if not isinstance(omega, DualForm):
        raise ShapeMismatch("form_weight takes a DualForm")
    if omega.is_zero():
        raise ZeroInput("weight of the zero form")
    if method == "direct":
        return _weight_direct(omega, budget)
    if method == "recursive":
        return _weight_recursive(omega, budget)
    raise OutOfRange(f"unknown method {method!r}")


def _weight_direct(omega, budget=None):
    gf, k, n = omega.gf, omega.k, omega.n
    check_budget(gf.q ** (k * (n - k)) * _binom(n, k), budget,
                 f"weight sweep of G({k},{n}) over GF({gf.q})")
    from . import _vecgf

    mat = _vecgf.plucker_matrix(gf, k, n)
    if mat is not None:
        return _vecgf.count_nonzero_pairings(gf, omega.coeffs, mat)
    count = 0
    for pt in enumerate_grassmannian(gf, k, n, budget=budget):
        if pairing(omega, plucker_embed(pt.matrix)) != 0:
            count += 1
    return count


def _all_vectors(gf, n):
    return itertools.product(gf.elements(), repeat=n)


def _span_set(gf, matrix):
    """All vectors in the row space (small dimensions only)."""
    vectors = {(0,) * matrix.cols}
    for i in range(matrix.rows):
        row = matrix.row(i)
        additions = []
        for scale in range(1, gf.q):
            scaled = tuple(gf.mul(scale, v) for v in row)
            for base in vectors:
                additions.append(tuple(gf.add(a, b) for a, b in zip(base, scaled)))
        vectors.update(additions)
    return vectors


def _vector_contraction(omega, u):
    """Contraction of omega by the plain vector u (tuple of n encodings)."""
    gf, n = omega.gf, omega.n
    terms = MultiVector.from_terms(
        gf, 1, n, [((i + 1,), c) for i, c in enumerate(u) if c]
    )
    return interior_mult(terms, omega)


def _restrict_to_complement(form, drop_index):
    """Reinterpret a form with no dependence on basis direction drop_index
    (1-based) as a form on the (n-1)-dimensional complement subspace."""
    gf, k, n = form.gf, form.k, form.n
    keep = [i for i in range(1, n + 1) if i != drop_index]
    relabel = {old: new + 1 for new, old in enumerate(keep)}
    out = [0] * _binom(n - 1, k)
    pos = index_positions(k, n - 1)
    for idx, c in zip(multi_indices(k, n), form.coeffs):
        if not c:
            continue
        if drop_index in idx:
            continue
        out[pos[tuple(relabel[i] for i in idx)]] = c
    return DualForm(gf, k, n - 1, out)


def _weight_recursive(omega, budget=None):
    gf, k, n = omega.gf, omega.k, omega.n
    if k == 1:
        # count projective points with a nonzero evaluation directly; the
        # coordinate vector of a line's representative is its own embedding
        count = 0
        coeffs = omega.coeffs
        add, mul = gf.add, gf.mul
        for v in _projective_reps(gf, n):
            acc = 0
            for c, x in zip(coeffs, v):
                if c and x:
                    acc = add(acc, mul(c, x))
            if acc:
                count += 1
        return count
    kernel_vectors = _span_set(gf, _kernel_matrix(omega))
    total = 0
    for u in _all_vectors(gf, n):
        if u in kernel_vectors:
            continue
        contracted = _vector_contraction(omega, u)
        # quotient by the line through u: complement spanned by the standard
        # basis directions other than u's leading coordinate
        pivot = next(i + 1 for i, c in enumerate(u) if c)
        quotient = _restrict_to_complement(contracted, pivot)
        total += _weight_recursive(quotient, budget)
    denom = gf.q**k - 1
    assert total % denom == 0
    return total // denom


# ---------------------------------------------------------------------------
# Maximal linear subspaces of the Grassmannian.
# ---------------------------------------------------------------------------

def pi_alpha(alpha, budget=None):
    """The set of (alpha.k + 1)-subspaces of GF(q)^n containing alpha."""
    gf = alpha.matrix.gf
    n = alpha.n
    k = alpha.k + 1
    if k > n:
        raise DimensionMismatch(f"no {k}-subspaces in dimension {n}")
    check_budget(gf.q**n, budget, "vector sweep for pi_alpha")
    base_rows = [list(alpha.matrix.row(i)) for i in range(alpha.k)]
    span = _span_set(gf, alpha.matrix)
    out = set()
    for v in _all_vectors(gf, n):
        if v in span:
            continue
        out.add(point_from_rows(gf, base_rows + [list(v)]))
    return out


def pi_gamma(gamma, budget=None):
    """The set of (gamma.k - 1)-subspaces contained in gamma."""
    gf = gamma.matrix.gf
    kk = gamma.k
    if kk < 1:
        raise DimensionMismatch("ambient subspace must have dimension >= 1")
    check_budget(gf.q**kk, budget, "functional sweep for pi_gamma")
    out = set()
    for c in _projective_reps(gf, kk):
        # kernel of the functional c on the row space, lifted to V
        coeff_rows = MatrixGF.from_rows(gf, [list(c)])
        ker = kernel_basis(coeff_rows)  # (kk-1) x kk
        rows = []
        for i in range(ker.rows):
            combo = [0] * gamma.n
            for j in range(kk):
                cj = ker.entry(i, j)
                if cj:
                    grow = gamma.matrix.row(j)
                    combo = [gf.add(a, gf.mul(cj, b)) for a, b in zip(combo, grow)]
            rows.append(combo)
        out.add(point_from_rows(gf, rows))
    return out


def _projective_reps(gf, n):
    """One representative per projective point of GF(q)^n: first nonzero
    coordinate normalized to 1."""
    for v in _all_vectors(gf, n):
        lead = next((c for c in v if c), None)
        if lead == 1:
            yield v
