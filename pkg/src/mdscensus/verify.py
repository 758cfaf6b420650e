"""Orchestrated invariant suites behind the `mds verify` command.

Each check states the mathematical claim it exercises and reports pass/fail
with a short detail line.  `quick` keeps every suite under a few seconds;
`full` runs the exhaustive sweeps.
"""

import itertools
import random
from dataclasses import dataclass

from .asymptotics import a2_closed_form, arc_series_top3, convergence, params
from .census import count_mds_matrix_scan
from .exterior import (
    DualForm,
    MultiVector,
    form_profile,
    form_weight,
    interior_mult,
    multi_indices,
    pairing,
    pi_alpha,
    pi_gamma,
    plucker_embed,
    satisfies_plucker,
    wedge,
)
from .fields import field_of_order, make_field
from .grassmann_code import (
    build_code,
    higher_weight_search,
    higher_weight_value,
    weight_spectrum,
)
from .linalg import enumerate_grassmannian, rank
from .sections import (
    coordinate_ann_in_grassmannian,
    coordinate_section,
    inclusion_exclusion,
    section_norm,
    structured_counts,
)

SUITES = ("fields", "plucker", "weights", "sections", "asymptotics")


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    claim: str
    passed: bool
    detail: str = ""


def _result(suite, name, claim, passed, detail=""):
    return CheckResult(suite=suite, name=name, claim=claim, passed=bool(passed),
                       detail=detail)


def _random_form(gf, k, n, rng):
    width = len(multi_indices(k, n))
    while True:
        coeffs = tuple(rng.randrange(gf.q) for _ in range(width))
        if any(coeffs):
            return DualForm(gf, k, n, coeffs)


# ---------------------------------------------------------------------------

def _suite_fields(scale):
    qs = (2, 3, 4, 5, 9) if scale == "quick" else (2, 3, 4, 5, 7, 8, 9, 16, 25, 27)
    out = []
    for q in qs:
        gf = field_of_order(q)
        elems = list(gf.elements())
        ok = all(
            gf.mul(a, gf.add(b, c)) == gf.add(gf.mul(a, b), gf.mul(a, c))
            and gf.add(gf.add(a, b), c) == gf.add(a, gf.add(b, c))
            and gf.mul(gf.mul(a, b), c) == gf.mul(a, gf.mul(b, c))
            for a, b, c in itertools.product(elems, repeat=3)
        )
        ok = ok and all(
            gf.mul(a, gf.inv(a)) == 1 and gf.inv(gf.inv(a)) == a
            for a in elems[1:]
        )
        ok = ok and len(set(elems)) == q and elems[0] == 0 and elems[1] == 1
        out.append(_result("fields", f"axioms-q{q}",
                           "field axioms, inverse involution, element order",
                           ok, f"q={q} exhaustive"))
    gf4 = make_field(2, 2)
    out.append(_result("fields", "gf4-modulus",
                       "the unique irreducible quadratic over GF(2) is chosen",
                       gf4.modulus == (1, 1, 1)))
    return out


def _suite_plucker(scale):
    out = []
    gf = make_field(2, 1)
    # embedding image vs the quadratic relations, exhaustively at (2,4,2)
    image = {plucker_embed(p.matrix).coeffs for p in enumerate_grassmannian(gf, 2, 4)}
    passing = {
        coeffs
        for coeffs in itertools.product(range(2), repeat=6)
        if any(coeffs) and satisfies_plucker(MultiVector(gf, 2, 4, coeffs))
    }
    out.append(_result("plucker", "relations-image",
                       "the quadratic relations cut out exactly the embedded points",
                       passing == image and len(image) == 35,
                       f"{len(passing)} of 63 projective points pass"))
    # contraction adjunction on full basis at (2,4) and (2,5)
    ok = True
    for n in (4, 5):
        for xi_idx in multi_indices(1, n):
            xi = MultiVector.basis(gf, 1, n, xi_idx)
            for om_idx in multi_indices(2, n):
                omega = DualForm.basis(gf, 2, n, om_idx)
                down = interior_mult(xi, omega)
                for z_idx in multi_indices(1, n):
                    zeta = MultiVector.basis(gf, 1, n, z_idx)
                    if pairing(down, zeta) != pairing(omega, wedge(xi, zeta)):
                        ok = False
    out.append(_result("plucker", "contraction-adjunction",
                       "contraction is adjoint to the wedge on all basis triples", ok))
    # decomposability of a 3-form on GF(2)^5 is equivalent to decomposability
    # of all its vector contractions
    rng = random.Random(2024)
    width = len(multi_indices(3, 5))
    if scale == "full":
        candidates = [
            coeffs for coeffs in itertools.product(range(2), repeat=width) if any(coeffs)
        ]
    else:
        candidates = []
        for _ in range(150):
            while True:
                c = tuple(rng.randrange(2) for _ in range(width))
                if any(c):
                    break
            candidates.append(c)
    ok = True
    checked = 0
    for coeffs in candidates:
        omega = DualForm(gf, 3, 5, coeffs)
        contractions_ok = True
        for vec in itertools.product(range(2), repeat=5):
            if not any(vec):
                continue
            xi = MultiVector.from_terms(
                gf, 1, 5, [((i + 1,), c) for i, c in enumerate(vec) if c]
            )
            down = interior_mult(xi, omega)
            if not down.is_zero() and not satisfies_plucker(down):
                contractions_ok = False
                break
        checked += 1
        if satisfies_plucker(omega) != contractions_ok:
            ok = False
            break
    out.append(_result("plucker", "contraction-decomposability",
                       "a form is decomposable exactly when all its vector "
                       "contractions are",
                       ok, f"{checked} forms checked"))
    # kernel bound for indecomposables: annihilator support needs k+2 directions
    ok = True
    rng = random.Random(7)
    for _ in range(60 if scale == "quick" else 200):
        omega = _random_form(gf, 2, 5, rng)
        prof = form_profile(omega)
        if prof.decomposable:
            if prof.v_omega.rows != 3:
                ok = False
        elif prof.u_omega.rows < 4:
            ok = False
    out.append(_result("plucker", "kernel-dimensions",
                       "decomposable forms have full kernels; indecomposable "
                       "ones span at least k+2 dual directions", ok))
    if scale == "full":
        out.append(_suite_plucker_fact0())
    return out


def _suite_plucker_fact0():
    gf = make_field(2, 1)
    lines = list(enumerate_grassmannian(gf, 1, 4))
    solids = list(enumerate_grassmannian(gf, 3, 4))
    pa = {a: pi_alpha(a) for a in lines}
    pg = {g: pi_gamma(g) for g in solids}
    ok = True
    for a1, a2 in itertools.combinations(lines, 2):
        meet = pa[a1] & pa[a2]
        want = 1 if rank(a1.matrix.stack(a2.matrix)) == 2 else 0
        if len(meet) != want:
            ok = False
    for a in lines:
        for g in solids:
            meet = pa[a] & pg[g]
            inside = rank(a.matrix.stack(g.matrix)) == 3
            if inside and len(meet) != 3 or (not inside and meet):
                ok = False
    return _result("plucker", "maximal-subspace-intersections",
                   "the two families of maximal linear subspaces intersect "
                   "by the dimension rules", ok)


def _suite_weights(scale):
    out = []
    gf = make_field(2, 1)
    w1 = form_weight(DualForm.basis(gf, 2, 4, (1, 2)))
    w2 = form_weight(DualForm.from_terms(gf, 2, 4, [((1, 2), 1), ((3, 4), 1)]))
    w3 = form_weight(DualForm.basis(gf, 2, 5, (1, 2)))
    out.append(_result("weights", "known-weights",
                       "decomposable weight q^delta; rank-4 form adds q^(delta-2)",
                       (w1, w2, w3) == (16, 20, 64), f"got {(w1, w2, w3)}"))
    rng = random.Random(5)
    param_sets = ((3, 2, 4, 20), (2, 2, 5, 20))
    if scale == "full":
        param_sets = ((3, 2, 4, 200), (2, 2, 5, 200), (2, 3, 6, 200))
    ok = True
    lower_ok = True
    for q, k, n, trials in param_sets:
        gfq = field_of_order(q)
        for _ in range(trials):
            omega = _random_form(gfq, k, n, rng)
            d = form_weight(omega, "direct")
            if d != form_weight(omega, "recursive"):
                ok = False
            if d < q ** (k * (n - k)):
                lower_ok = False
    out.append(_result("weights", "direct-vs-recursive",
                       "the contraction recursion reproduces the direct sweep", ok))
    out.append(_result("weights", "minimum-weight-bound",
                       "every nonzero form has weight at least q^delta", lower_ok))
    code = build_code(2, 4, gf)
    spec = weight_spectrum(code)
    out.append(_result("weights", "spectrum-2-4-2",
                       "the full spectrum is {q^4: 35, q^4+q^2: 28}",
                       spec == {16: 35, 20: 28}, f"got {spec}"))
    if scale == "full":
        code5 = build_code(2, 5, gf)
        spec5 = weight_spectrum(code5)
        out.append(_result("weights", "spectrum-2-5-2",
                           "the spectrum support is {q^6, q^6+q^4}",
                           set(spec5) == {64, 80}))
        d2 = higher_weight_search(code, 2, mode="exhaustive")
        out.append(_result("weights", "second-weight",
                           "the second generalized weight is q^4 + q^3",
                           d2 == 24, f"d2={d2}"))
        trend_ok = True
        for q in (2, 3, 4):
            gfq = field_of_order(q)
            delta = 9
            rngq = random.Random(q)
            found = 0
            while found < 3:
                omega = _random_form(gfq, 3, 6, rngq)
                if satisfies_plucker(omega):
                    continue
                found += 1
                w = form_weight(omega, "direct")
                if abs(w - q**delta - q ** (delta - 2)) > 4 * q ** (delta - 3):
                    trend_ok = False
        out.append(_result("weights", "indecomposable-trend",
                           "indecomposable 3-form weights stay within "
                           "4 q^(delta-3) of q^delta + q^(delta-2)", trend_ok))
    for r in (1, 2, 3):
        got = higher_weight_search(code, r, mode="structured")
        want = higher_weight_value(2, 4, 2, r)
        out.append(_result("weights", f"structured-d{r}",
                           "structured sections certify the higher weight "
                           "q^delta + ... + q^(delta-r+1)",
                           got == want, f"r={r}: {got}"))
    return out


def _suite_sections(scale):
    out = []
    pairs = []
    gf2 = make_field(2, 1)
    coords = multi_indices(2, 4)
    ok = True
    for r in range(1, 7):
        for subset in itertools.combinations(coords, r):
            s = coordinate_section(gf2, 2, 4, subset)
            if section_norm(s, "point-scan") != section_norm(s, "annihilator-sum"):
                ok = False
    out.append(_result("sections", "norm-methods",
                       "point scan equals the exact annihilator-weight average",
                       ok, "all coordinate sections of (2,4,2)"))
    for q in (2, 3):
        gfq = field_of_order(q)
        rep = inclusion_exclusion(2, 4, gfq)
        want = count_mds_matrix_scan(2, 4, gfq).gamma
        pairs.append((rep.gamma_reconstructed, want))
    agree = all(a == b for a, b in pairs)
    out.append(_result("sections", "inclusion-exclusion",
                       "the alternating sum over coordinate sections "
                       "reassembles the census count",
                       agree, f"(2,4) over q=2,3: {pairs}"))
    if scale == "full":
        rep5 = inclusion_exclusion(2, 5, gf2)
        want5 = count_mds_matrix_scan(2, 5, gf2).gamma
        out.append(_result("sections", "inclusion-exclusion-2-5",
                           "the alternating sum matches the census at (2,5,2)",
                           rep5.gamma_reconstructed == want5))
    ok = True
    for q in (2, 3, 4):
        gfq = field_of_order(q)
        delta = 4
        for r, extra in ((2, 1), (3, 2)):
            predicted = q**delta + q ** (delta - 1) + extra * q ** (delta - 2)
            for subset in itertools.combinations(coords, r):
                if coordinate_ann_in_grassmannian(subset):
                    continue
                norm = section_norm(coordinate_section(gfq, 2, 4, subset))
                if abs(norm - predicted) > 4 * q ** (delta - 3):
                    ok = False
    out.append(_result("sections", "codim-r-residuals",
                       "non-degenerate coordinate sections stay within "
                       "4 q^(delta-3) of the three-term value", ok))
    c1, c2 = structured_counts(2, 5)
    got = (c1[3], c2[3])
    out.append(_result("sections", "structured-counts",
                       "the two maximal-subspace families count "
                       "C(n,k-1)C(n-k+1,r) and C(n,k+1)C(k+1,r)",
                       got == (20, 10), f"(2,5) r=3: {got}"))
    return out


def _suite_asymptotics(scale):
    out = []
    golden = {(3, 6): 152, (3, 7): 506, (3, 8): 1360, (3, 9): 3158}
    got = {kn: params(*kn).a2 for kn in golden}
    out.append(_result("asymptotics", "a2-golden",
                       "the quadratic coefficients for the k=3 family",
                       got == golden, f"{got}"))
    ok = all(
        params(k, n).a2 == a2_closed_form(k, n)
        for k in (1, 2)
        for n in range(3, 13)
    )
    out.append(_result("asymptotics", "a2-closed-forms",
                       "the k=1,2 polynomial families agree with the "
                       "general formula", ok))
    ok = all(
        params(k, n).a2 == params(n - k, n).a2
        for n in range(2, 13)
        for k in range(1, n)
    )
    out.append(_result("asymptotics", "a2-duality",
                       "the quadratic coefficient is symmetric under "
                       "k -> n-k", ok))
    p310, p48 = params(3, 10), params(4, 8)
    out.append(_result("asymptotics", "arc-coefficients",
                       "the arc-count expansions carry (110, 5561) and "
                       "(62, 1710)",
                       (p310.b1, p310.b2, p48.b1, p48.b2) == (110, 5561, 62, 1710)))
    ok = all(
        arc_series_top3(k, n) == (1, -params(k, n).b1, params(k, n).b2)
        for k, n in ((3, 10), (4, 8), (2, 6))
    )
    out.append(_result("asymptotics", "arc-series",
                       "long division by (q-1)^(n-1) reproduces the arc "
                       "coefficients", ok))
    qs = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16] if scale == "quick" else [
        q for q in range(2, 65) if _is_prime_power(q)
    ]
    rep = convergence(2, 5, qs)
    out.append(_result("asymptotics", "convergence-2-5",
                       "normalized residuals of the (2,5) family stay bounded",
                       rep.bounded, f"max |residual|/q^(delta-3) = {rep.max_normalized}"))
    if scale == "full":
        rep36 = convergence(3, 6, [2, 3, 4, 5])
        out.append(_result("asymptotics", "convergence-3-6",
                           "normalized residuals of the (3,6) family stay "
                           "bounded on the brute-force sweep",
                           rep36.bounded,
                           f"max |residual|/q^6 = {rep36.max_normalized}"))
    return out


def _is_prime_power(q):
    from .fields import factor_prime_power
    from .errors import NonPrimePower

    try:
        factor_prime_power(q)
        return True
    except NonPrimePower:
        return False


_SUITE_FUNCS = {
    "fields": _suite_fields,
    "plucker": _suite_plucker,
    "weights": _suite_weights,
    "sections": _suite_sections,
    "asymptotics": _suite_asymptotics,
}


def run_suite(suite, scale="quick"):
    """Run one named suite (or 'all'); returns a list of CheckResults."""
    if scale not in ("quick", "full"):
        raise ValueError(f"unknown scale {scale!r}")
    if suite == "all":
        out = []
        for name in SUITES:
            out.extend(_SUITE_FUNCS[name](scale))
        return out
    if suite not in _SUITE_FUNCS:
        raise ValueError(f"unknown suite {suite!r}")
    return _SUITE_FUNCS[suite](scale)
