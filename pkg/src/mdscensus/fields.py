"""Exact arithmetic in GF(p**m).

Elements are plain Python ints in [0, q): the canonical encoding of the
polynomial representation a_0 + a_1*x + ... + a_{m-1}*x^{m-1} as
sum(a_i * p**i).  A GF object carries the arithmetic context; for q <= 256
all operations go through precomputed lookup tables so they are cheap in
hot enumeration loops, above that they fall back to polynomial arithmetic.

Fields are immutable after construction and safe to share across worker
processes; make_field() is cached and deterministic.
"""

import functools

from .errors import (
    DivisionByZero,
    FieldMismatch,
    NonPrimeCharacteristic,
    NonPrimePower,
    UnsupportedSize,
)

ORDER_CAP = 2**20
MAX_DEGREE = 8
TABLE_LIMIT = 256

# Type alias documenting the public contract: field elements are ints.
FieldElem = int


def is_prime(n):
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# ---------------------------------------------------------------------------
# Polynomials over GF(p): little-endian coefficient tuples, no trailing zeros.
# ---------------------------------------------------------------------------

def _poly_trim(coeffs):
    i = len(coeffs)
    while i > 0 and coeffs[i - 1] == 0:
        i -= 1
    return tuple(coeffs[:i])


def _poly_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)


def _poly_mod(a, mod, p):
    # mod is monic
    a = list(a)
    dm = len(mod) - 1
    while len(a) - 1 >= dm and a:
        lead = a[-1]
        shift = len(a) - 1 - dm
        if lead:
            for i in range(dm + 1):
                a[shift + i] = (a[shift + i] - lead * mod[i]) % p
        a.pop()
    return _poly_trim(a)


def _poly_divmod(a, b, p):
    # b nonzero, not necessarily monic
    a = list(a)
    db = len(b) - 1
    inv_lead = pow(b[-1], -1, p)
    quo = [0] * max(len(a) - db, 0)
    while len(a) - 1 >= db and a:
        lead = a[-1] * inv_lead % p
        shift = len(a) - 1 - db
        quo[shift] = lead
        if lead:
            for i in range(db + 1):
                a[shift + i] = (a[shift + i] - lead * b[i]) % p
        a.pop()
    return _poly_trim(quo), _poly_trim(a)


def _poly_ext_euclid_inv(a, mod, p):
    # inverse of a modulo mod, both over GF(p); a nonzero mod `mod`
    r0, r1 = mod, a
    s0, s1 = (), (1,)
    while r1:
        q, r = _poly_divmod(r0, r1, p)
        r0, r1 = r1, r
        qs = _poly_mul(q, s1, p)
        width = max(len(s0), len(qs))
        s = tuple((s0[i] if i < len(s0) else 0) - (qs[i] if i < len(qs) else 0)
                  for i in range(width))
        s = _poly_trim(tuple(c % p for c in s))
        s0, s1 = s1, s
    # r0 is the gcd, a nonzero constant
    c_inv = pow(r0[0], -1, p)
    return _poly_trim(tuple(c * c_inv % p for c in s0))


def _monic_polys(p, degree):
    """All monic polynomials of the given degree, low coefficients in odometer order."""
    total = p**degree
    for code in range(total):
        coeffs = []
        c = code
        for _ in range(degree):
            coeffs.append(c % p)
            c //= p
        coeffs.append(1)
        yield tuple(coeffs)


def is_irreducible(poly, p):
    """Trial division by every monic polynomial of degree <= deg(poly)/2."""
    degree = len(poly) - 1
    if degree <= 0:
        return False
    if degree == 1:
        return True
    if poly[0] == 0:  # divisible by x
        return False
    for d in range(1, degree // 2 + 1):
        for div in _monic_polys(p, d):
            _, rem = _poly_divmod(poly, div, p)
            if not rem:
                return False
    return True


def smallest_irreducible(p, m):
    """Lexicographically smallest monic irreducible of degree m over GF(p).

    Candidates x^m + c_{m-1}x^{m-1} + ... + c_0 are ordered by comparing
    coefficients from the highest degree down, i.e. (c_{m-1}, ..., c_0)
    counts up like a base-p number.
    """
    if m == 1:
        return (0, 1)  # the polynomial x
    for code in range(p**m):
        coeffs = [0] * m
        c = code
        for pos in range(m - 1, -1, -1):
            coeffs[pos] = c % p
            c //= p
        # coeffs[pos] holds c_pos; build little-endian with leading 1
        cand = tuple(coeffs) + (1,)
        if is_irreducible(cand, p):
            return cand
    raise AssertionError("no irreducible polynomial found")  # unreachable


# ---------------------------------------------------------------------------
# The field object.
# ---------------------------------------------------------------------------

class GF:
    """Arithmetic context for GF(p**m).  Construct via make_field()."""

    __slots__ = (
        "p", "m", "q", "modulus",
        "_add", "_sub", "_mul", "_neg", "_inv", "_log", "_exp",
        "_np_cache",
    )

    def __init__(self, p, m, modulus):
        self.p = p
        self.m = m
        self.q = p**m
        self.modulus = modulus
        self._np_cache = None
        if self.q <= TABLE_LIMIT:
            self._build_tables()
        else:
            self._add = self._sub = self._mul = None
            self._neg = self._inv = self._log = self._exp = None

    # -- encoding -----------------------------------------------------------

    def coeffs(self, a):
        """Little-endian base-p digits of the canonical encoding."""
        self._check(a)
        out = []
        for _ in range(self.m):
            out.append(a % self.p)
            a //= self.p
        return tuple(out)

    def encode(self, coeffs):
        """Inverse of coeffs(): canonical integer of a digit vector."""
        if len(coeffs) > self.m or any(not 0 <= c < self.p for c in coeffs):
            raise FieldMismatch(f"invalid coefficient vector {coeffs!r}")
        out = 0
        for c in reversed(coeffs):
            out = out * self.p + c
        return out

    def _check(self, a):
        if not 0 <= a < self.q:
            raise FieldMismatch(f"{a} is not an element encoding of GF({self.q})")

    # -- table construction --------------------------------------------------

    def _poly_of(self, a):
        out = []
        for _ in range(self.m):
            out.append(a % self.p)
            a //= self.p
        return _poly_trim(out)

    def _enc_of(self, poly):
        out = 0
        for c in reversed(poly):
            out = out * self.p + c
        return out

    def _mul_raw(self, a, b):
        prod = _poly_mul(self._poly_of(a), self._poly_of(b), self.p)
        return self._enc_of(_poly_mod(prod, self.modulus, self.p))

    def _add_raw(self, a, b):
        p = self.p
        out, shift = 0, 1
        for _ in range(self.m):
            out += ((a + b) % p) * shift
            a //= p
            b //= p
            shift *= p
        return out

    def _build_tables(self):
        q, p = self.q, self.p
        self._neg = [self._add_inverse(a) for a in range(q)]
        self._add = [[self._add_raw(a, b) for b in range(q)] for a in range(q)]
        self._sub = [[self._add[a][self._neg[b]] for b in range(q)] for a in range(q)]
        # discrete-log tables from the smallest-encoding generator
        gen = self._find_generator()
        exp = [1]
        for _ in range(q - 2):
            exp.append(self._mul_raw(exp[-1], gen))
        log = [0] * q
        for i, v in enumerate(exp):
            log[v] = i
        self._exp, self._log = exp, log
        order = q - 1
        self._mul = [[0] * q for _ in range(q)]
        for a in range(1, q):
            row = self._mul[a]
            la = log[a]
            for b in range(1, q):
                row[b] = exp[(la + log[b]) % order]
        self._inv = [0] * q
        for a in range(1, q):
            self._inv[a] = exp[(order - log[a]) % order]

    def _add_inverse(self, a):
        p = self.p
        out, shift = 0, 1
        for _ in range(self.m):
            out += ((-a) % p) * shift
            a //= p
            shift *= p
        return out

    def _find_generator(self):
        q = self.q
        if q == 2:
            return 1
        for g in range(2, q):
            seen = 1
            x = g
            while x != 1:
                x = self._mul_raw(x, g)
                seen += 1
            if seen == q - 1:
                return g
        raise AssertionError("no multiplicative generator found")  # unreachable

    # -- operations ----------------------------------------------------------

    def add(self, a, b):
        self._check(a)
        self._check(b)
        if self._add is not None:
            return self._add[a][b]
        return self._add_raw(a, b)

    def sub(self, a, b):
        self._check(a)
        self._check(b)
        if self._sub is not None:
            return self._sub[a][b]
        return self._add_raw(a, self._add_inverse(b))

    def neg(self, a):
        self._check(a)
        if self._neg is not None:
            return self._neg[a]
        return self._add_inverse(a)

    def mul(self, a, b):
        self._check(a)
        self._check(b)
        if self._mul is not None:
            return self._mul[a][b]
        return self._mul_raw(a, b)

    def inv(self, a):
        self._check(a)
        if a == 0:
            raise DivisionByZero(f"inverse of 0 in GF({self.q})")
        if self._inv is not None:
            return self._inv[a]
        poly = _poly_ext_euclid_inv(self._poly_of(a), self.modulus, self.p)
        return self._enc_of(poly)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        self._check(a)
        if e < 0:
            return self.pow(self.inv(a), -e)
        out, base = 1, a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def elements(self):
        """All q elements in increasing canonical order, starting 0, 1."""
        return range(self.q)

    # -- misc -----------------------------------------------------------------

    def modulus_string(self):
        terms = []
        for d in range(self.m, -1, -1):
            c = self.modulus[d] if d < len(self.modulus) else 0
            if c == 0:
                continue
            if d == 0:
                terms.append(str(c))
            else:
                xt = "x" if d == 1 else f"x^{d}"
                terms.append(xt if c == 1 else f"{c}{xt}")
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        return f"GF({self.q})"

    def __eq__(self, other):
        return (
            isinstance(other, GF)
            and (self.p, self.m, self.modulus) == (other.p, other.m, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.m, self.modulus))

    def __reduce__(self):
        return (make_field, (self.p, self.m))


@functools.lru_cache(maxsize=None)
def make_field(p, m=1):
    """Field GF(p**m) with the smallest monic irreducible modulus of degree m.

    Deterministic across runs: the modulus is the lexicographically smallest
    irreducible candidate (coefficients compared from the highest degree
    down); for m = 1 it is x.
    """
    if not is_prime(p):
        raise NonPrimeCharacteristic(f"characteristic {p} is not prime")
    if not 1 <= m <= MAX_DEGREE:
        raise UnsupportedSize(f"extension degree {m} outside 1..{MAX_DEGREE}")
    if p**m > ORDER_CAP:
        raise UnsupportedSize(f"field order {p**m} exceeds cap {ORDER_CAP}")
    return GF(p, m, smallest_irreducible(p, m))


def factor_prime_power(q):
    """Split q into (p, m) with p prime and p**m == q; reject other q."""
    if q < 2:
        raise NonPrimePower(f"{q} is not a prime power")
    p = q
    for d in range(2, q + 1):
        if d * d > q:
            break
        if q % d == 0:
            p = d
            break
    m = 0
    rest = q
    while rest % p == 0:
        rest //= p
        m += 1
    if rest != 1:
        raise NonPrimePower(f"{q} is not a prime power")
    return p, m


def field_of_order(q):
    """make_field() addressed by order, factoring q into p**m."""
    p, m = factor_prime_power(q)
    return make_field(p, m)
