"""Linear sections of the Grassmannian and the inclusion-exclusion census.

A codimension-r section is carried by a basis of its annihilator: r
independent k-forms.  Its norm counts the Grassmann points outside the
section, by two independent routes: a point scan, and the exact average of
the q^(r-1) + ... + 1 annihilator form weights divided by q^(r-1).

The inclusion-exclusion report walks every subset of the coordinate
hyperplanes p_I = 0 and reassembles the number of subspaces with all
Plucker coordinates nonzero, which must equal the census count.
"""

import itertools
from collections import Counter
from dataclasses import dataclass

import numpy as np

from . import _vecgf
from .budget import check_budget
from .errors import (
    BudgetExceeded,
    DimensionMismatch,
    ExactnessViolation,
    OutOfRange,
    ShapeMismatch,
)
from .exterior import (
    DualForm,
    MultiVector,
    form_weight,
    multi_indices,
    pairing,
    plucker_embed,
    satisfies_plucker,
)
from .linalg import MatrixGF, _binom, enumerate_grassmannian, gaussian_binomial, rank


@dataclass(frozen=True)
class LinearSection:
    """Codimension-r subspace of the Plucker space, given by Ann(L)."""

    gf: object
    k: int
    n: int
    ann_basis: tuple  # independent DualForms

    def __post_init__(self):
        if not self.ann_basis:
            raise ShapeMismatch("a section needs at least one annihilator form")
        for omega in self.ann_basis:
            if not isinstance(omega, DualForm):
                raise ShapeMismatch("annihilator entries must be DualForms")
            if omega.gf != self.gf or (omega.k, omega.n) != (self.k, self.n):
                raise ShapeMismatch("annihilator form in the wrong space")
        coeff_matrix = MatrixGF.from_rows(
            self.gf, [list(f.coeffs) for f in self.ann_basis]
        )
        if rank(coeff_matrix) != len(self.ann_basis):
            raise DimensionMismatch("annihilator basis is linearly dependent")

    @property
    def codim(self):
        return len(self.ann_basis)


def coordinate_section(gf, k, n, indices):
    """Section annihilated by the chosen coordinate forms e^I."""
    forms = tuple(DualForm.basis(gf, k, n, idx) for idx in indices)
    return LinearSection(gf, k, n, forms)


def _ann_projective_forms(section):
    """One representative per projective point of the annihilator span."""
    gf = section.gf
    basis = section.ann_basis
    r = len(basis)
    for coeffs in itertools.product(gf.elements(), repeat=r):
        lead = next((c for c in coeffs if c), None)
        if lead != 1:
            continue
        acc = DualForm.zero(gf, section.k, section.n)
        for c, omega in zip(coeffs, basis):
            if c:
                acc = acc.add(omega.scale(c))
        yield acc


def section_norm(section, method="point-scan", budget=None):
    """Number of Grassmann points outside the section."""
    if method == "point-scan":
        return _norm_point_scan(section, budget)
    if method == "annihilator-sum":
        return _norm_annihilator_sum(section, budget)
    raise OutOfRange(f"unknown section norm method {method!r}")


def _norm_point_scan(section, budget=None):
    gf, k, n = section.gf, section.k, section.n
    check_budget(
        gf.q ** (k * (n - k)) * _binom(n, k), budget,
        f"section point scan on G({k},{n}) over GF({gf.q})",
    )
    mat = _vecgf.plucker_matrix(gf, k, n)
    if mat is not None:
        hit = np.zeros(mat.shape[1], dtype=bool)
        for omega in section.ann_basis:
            hit |= _vecgf.form_values(gf, omega.coeffs, mat) != 0
        return int(np.count_nonzero(hit))
    count = 0
    for pt in enumerate_grassmannian(gf, k, n, budget=budget):
        lam = plucker_embed(pt.matrix)
        if any(pairing(omega, lam) != 0 for omega in section.ann_basis):
            count += 1
    return count


def _norm_annihilator_sum(section, budget=None):
    gf = section.gf
    r = section.codim
    total = 0
    for omega in _ann_projective_forms(section):
        total += form_weight(omega, "direct", budget=budget)
    denom = gf.q ** (r - 1)
    if total % denom != 0:
        raise ExactnessViolation(
            f"annihilator weight sum {total} not divisible by q^(r-1) = {denom}"
        )
    return total // denom


def section_cardinality(gf, k, n, spanning, budget=None):
    """Number of decomposable projective points in the span of the given
    multivectors (the section given directly inside the Plucker space)."""
    if not spanning:
        return 0
    for lam in spanning:
        if not isinstance(lam, MultiVector):
            raise ShapeMismatch("spanning entries must be MultiVectors")
        if lam.gf != gf or (lam.k, lam.n) != (k, n):
            raise ShapeMismatch("spanning vector in the wrong space")
    coeff_matrix = MatrixGF.from_rows(gf, [list(v.coeffs) for v in spanning])
    d = rank(coeff_matrix)
    check_budget(gf.q**d, budget, "projective sweep of a section")
    # reduce to an independent spanning set
    from .linalg import rref

    reduced, _ = rref(coeff_matrix)
    basis = [
        MultiVector(gf, k, n, reduced.row(i)) for i in range(d)
    ]
    count = 0
    for coeffs in itertools.product(gf.elements(), repeat=d):
        lead = next((c for c in coeffs if c), None)
        if lead != 1:
            continue
        acc = MultiVector.zero(gf, k, n)
        for c, lam in zip(coeffs, basis):
            if c:
                acc = acc.add(lam.scale(c))
        if satisfies_plucker(acc):
            count += 1
    return count


# ---------------------------------------------------------------------------
# Inclusion-exclusion over coordinate sections.
# ---------------------------------------------------------------------------

MAX_COORDS_FOR_SWEEP = 12


@dataclass(frozen=True)
class InclusionExclusionReport:
    k: int
    n: int
    q: int
    e_terms: tuple  # E_1 .. E_N
    gamma_reconstructed: int
    c1_by_r: dict
    c2_by_r: dict


def support_mask_counts(gf, k, n, budget=None):
    """How many Grassmann points have each nonzero-coordinate pattern.

    Returns {bitmask over lexicographic coordinate positions: point count}.
    """
    big_n = _binom(n, k)
    mat = _vecgf.plucker_matrix(gf, k, n)
    if mat is not None:
        masks = np.zeros(mat.shape[1], dtype=np.int64)
        for i in range(big_n):
            masks |= (mat[i] != 0).astype(np.int64) << i
        values, counts = np.unique(masks, return_counts=True)
        return dict(zip((int(v) for v in values), (int(c) for c in counts)))
    counter = Counter()
    for pt in enumerate_grassmannian(gf, k, n, budget=budget):
        lam = plucker_embed(pt.matrix)
        mask = 0
        for i, c in enumerate(lam.coeffs):
            if c:
                mask |= 1 << i
        counter[mask] += 1
    return dict(counter)


def coordinate_norm_from_masks(mask_counts, total, subset_mask):
    """||L|| for the coordinate section killing the coordinates in
    subset_mask: points having at least one of those coordinates nonzero."""
    inside = sum(c for m, c in mask_counts.items() if m & subset_mask == 0)
    return total - inside


def inclusion_exclusion(k, n, gf, budget=None):
    """Reassemble the count of all-coordinates-nonzero subspaces from the
    alternating sum over coordinate-section unions."""
    big_n = _binom(n, k)
    if big_n > MAX_COORDS_FOR_SWEEP:
        raise BudgetExceeded(2**big_n, 2**MAX_COORDS_FOR_SWEEP,
                             f"2^{big_n} coordinate subsets")
    total = gaussian_binomial(k, n, gf.q)
    masks = support_mask_counts(gf, k, n, budget=budget)
    e_terms = []
    for r in range(1, big_n + 1):
        term = 0
        for subset in itertools.combinations(range(big_n), r):
            subset_mask = 0
            for i in subset:
                subset_mask |= 1 << i
            term += coordinate_norm_from_masks(masks, total, subset_mask)
        e_terms.append(term)
    gamma = 0
    for r, term in enumerate(e_terms, start=1):
        gamma += term if r % 2 == 1 else -term
    c1, c2 = structured_counts(k, n)
    return InclusionExclusionReport(
        k=k, n=n, q=gf.q,
        e_terms=tuple(e_terms),
        gamma_reconstructed=gamma,
        c1_by_r=c1,
        c2_by_r=c2,
    )


def coordinate_section_rows(gf, k, n, max_r, budget=None):
    """Rows (r, subset bitmask, ||L||, annihilator-inside-Grassmannian flag)
    for every coordinate subset of size <= max_r; deterministic order."""
    big_n = _binom(n, k)
    total = gaussian_binomial(k, n, gf.q)
    masks = support_mask_counts(gf, k, n, budget=budget)
    indices = multi_indices(k, n)
    for r in range(1, min(max_r, big_n) + 1):
        for subset in itertools.combinations(range(big_n), r):
            subset_mask = 0
            for i in subset:
                subset_mask |= 1 << i
            norm = coordinate_norm_from_masks(masks, total, subset_mask)
            in_g = coordinate_ann_in_grassmannian([indices[i] for i in subset])
            yield r, subset_mask, norm, in_g


# ---------------------------------------------------------------------------
# Combinatorial classification of coordinate annihilators.
# ---------------------------------------------------------------------------

def shares_common_core(index_subset):
    """True when one (k-1)-set of positions lies in every multi-index."""
    sets = [set(idx) for idx in index_subset]
    k = len(index_subset[0])
    core = set.intersection(*sets)
    return len(core) >= k - 1


def within_common_extension(index_subset):
    """True when all multi-indices fit inside one (k+1)-set of positions."""
    sets = [set(idx) for idx in index_subset]
    k = len(index_subset[0])
    union = set.union(*sets)
    return len(union) <= k + 1


def coordinate_ann_in_grassmannian(index_subset):
    """Whether the span of the coordinate forms e^I, I in the subset, lies
    entirely inside the Grassmannian of decomposable forms."""
    if len(index_subset) == 1:
        return True
    return shares_common_core(index_subset) or within_common_extension(index_subset)


def structured_counts(k, n):
    """Exact counts of r-subsets of coordinates whose annihilator lies in a
    single maximal linear subspace: the common-core family and the
    common-extension family."""
    big_n = _binom(n, k)
    c1 = {}
    c2 = {}
    for r in range(2, big_n + 1):
        c1[r] = _binom(n, k - 1) * _binom(n - k + 1, r) if r <= n - k + 1 else 0
        c2[r] = _binom(n, k + 1) * _binom(k + 1, r) if r <= k + 1 else 0
    return c1, c2
