"""Exact arithmetic in the field tower GF(p) <= GF(q) <= GF(r).

Here q = p^s and r = q^m.  GF(r) is realized as GF(p)[x]/(f) for a monic
primitive f of degree d = s*m, so the residue class of x (written gamma)
generates the multiplicative group.  A field element with coefficient
vector (c_0, ..., c_{d-1}) over GF(p) is stored as the plain int
sum_i c_i * p**i; zero is 0, one is 1, and gamma is the int p when d >= 2
(for d = 1 gamma is the chosen primitive root itself).

Construction builds the full power table exp[k] = gamma^k and its inverse
dlog, so multiplication, inversion, and subgroup/coset questions are table
lookups.  That caps the usable field size (default r <= 2^21), which is
ample for desk-scale work; everything downstream indexes cyclotomic
structure through dlog.

A FieldTower is immutable once built (its numpy tables are marked
read-only), so concurrent readers are safe.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import (
    GammaNotPrimitive,
    ModulusNotIrreducible,
    NotPrime,
    TowerTooLarge,
)

# A field element: coefficient vector over GF(p) packed in base p.
Element = int

DEFAULT_TABLE_CAP = 1 << 21


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division (n stays desk-sized here)."""
    out: dict[int, int] = {}
    f = 2
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


# ----------------------------------------------------------------------
# Polynomials over GF(p): coefficient tuples, ascending degree, trimmed.
# ----------------------------------------------------------------------

def poly_trim(a: tuple[int, ...]) -> tuple[int, ...]:
    i = len(a)
    while i > 0 and a[i - 1] == 0:
        i -= 1
    return tuple(a[:i])


def poly_mul(a, b, p: int) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return poly_trim(tuple(out))


def poly_mod(a, f, p: int) -> tuple[int, ...]:
    """Remainder of a modulo f; f need not be monic."""
    a = list(poly_trim(a))
    f = poly_trim(f)
    df = len(f) - 1
    inv_lead = pow(f[-1], p - 2, p)
    while len(a) - 1 >= df and a:
        coef = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - df
        for i, fi in enumerate(f):
            a[shift + i] = (a[shift + i] - coef * fi) % p
        while a and a[-1] == 0:
            a.pop()
    return tuple(a)


def poly_mulmod(a, b, f, p: int) -> tuple[int, ...]:
    return poly_mod(poly_mul(a, b, p), f, p)


def poly_powmod(base, e: int, f, p: int) -> tuple[int, ...]:
    result = (1,)
    base = poly_mod(base, f, p)
    while e > 0:
        if e & 1:
            result = poly_mulmod(result, base, f, p)
        base = poly_mulmod(base, base, f, p)
        e >>= 1
    return result


def poly_gcd(a, b, p: int) -> tuple[int, ...]:
    a, b = poly_trim(a), poly_trim(b)
    while b:
        a, b = b, poly_mod(a, b, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = tuple((c * inv) % p for c in a)
    return a


def poly_sub(a, b, p: int) -> tuple[int, ...]:
    n = max(len(a), len(b))
    a = tuple(a) + (0,) * (n - len(a))
    b = tuple(b) + (0,) * (n - len(b))
    return poly_trim(tuple((x - y) % p for x, y in zip(a, b)))


def is_irreducible(poly, p: int) -> bool:
    """Irreducibility over GF(p) by the derandomized Frobenius criterion.

    A monic f of degree d is irreducible iff x^(p^d) = x (mod f) and, for
    every prime divisor l of d, gcd(x^(p^(d/l)) - x, f) = 1.
    """
    f = poly_trim(tuple(c % p for c in poly))
    if len(f) <= 1:
        return False  # zero or a unit
    d = len(f) - 1
    if d == 1:
        return True
    x = (0, 1)
    for ell in factorize(d):
        xp = poly_powmod(x, p ** (d // ell), f, p)
        diff = poly_sub(xp, x, p)
        if not diff or len(poly_gcd(diff, f, p)) != 1:
            return False
    return poly_powmod(x, p ** d, f, p) == x


def _x_is_primitive(f, p: int, r: int) -> bool:
    """Does x generate the multiplicative group of GF(p)[x]/(f)?"""
    for ell in factorize(r - 1):
        if poly_powmod((0, 1), (r - 1) // ell, f, p) == (1,):
            return False
    return True


def smallest_primitive_root(p: int) -> int:
    if p == 2:
        return 1  # the trivial group
    fac = factorize(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // ell, p) != 1 for ell in fac):
            return g
    raise NotPrime(f"{p} has no primitive root; not prime?")


def default_modulus(p: int, d: int) -> tuple[int, ...]:
    """Deterministic monic primitive modulus of degree d over GF(p).

    Degree 1 uses x - g with g the smallest primitive root mod p, so that
    gamma is the smallest primitive root.  Degree >= 2 scans monic
    polynomials in lexicographic order of the ascending coefficient list
    (c_0 first) and returns the first one with x primitive.
    """
    if d == 1:
        g = smallest_primitive_root(p)
        return ((-g) % p, 1)
    r = p ** d
    counters = [0] * d  # c_0 .. c_{d-1}, c_0 varies slowest
    while True:
        if counters[0] != 0:  # constant term 0 means x divides f
            f = tuple(counters) + (1,)
            if is_irreducible(f, p) and _x_is_primitive(f, p, r):
                return f
        # increment the lex counter: last coefficient fastest
        i = d - 1
        while i >= 0:
            counters[i] += 1
            if counters[i] < p:
                break
            counters[i] = 0
            i -= 1
        if i < 0:
            raise GammaNotPrimitive(
                f"no primitive polynomial of degree {d} over GF({p})")


def cyclotomic_coset(a: int, q: int, r: int) -> set[int]:
    """The orbit {a * q^j mod r-1}; its size is the degree of the minimal
    polynomial over GF(q) of gamma^(-a)."""
    n = r - 1
    a %= n
    coset = {a}
    b = (a * q) % n
    while b != a:
        coset.add(b)
        b = (b * q) % n
    return coset


# ----------------------------------------------------------------------
# The tower itself.
# ----------------------------------------------------------------------

class FieldTower:
    """GF(p) <= GF(q = p^s) <= GF(r = q^m) with a primitive gamma and full
    discrete-log table.  Use build_field() to construct."""

    def __init__(self, p: int, s: int, m: int, modulus: tuple[int, ...],
                 table_cap: int = DEFAULT_TABLE_CAP):
        if not is_prime(p):
            raise NotPrime(f"p = {p} is not prime")
        if s < 1 or m < 1:
            raise ValueError("s and m must be positive")
        d = s * m
        r = p ** d
        if r > table_cap:
            raise TowerTooLarge(f"r = {r} exceeds the table cap {table_cap}")
        modulus = tuple(c % p for c in modulus)
        if len(modulus) != d + 1 or modulus[-1] != 1:
            raise ValueError(
                f"modulus must be monic of degree {d}, got {modulus}")
        if not is_irreducible(modulus, p):
            raise ModulusNotIrreducible(f"{modulus} factors over GF({p})")
        self.p, self.s, self.m = p, s, m
        self.q = p ** s
        self.r = r
        self.degree = d
        self.modulus = modulus
        if d == 1:
            gamma = (-modulus[0]) % p
            if gamma == 0:
                raise GammaNotPrimitive("x = 0 in GF(p)[x]/(x)")
        else:
            gamma = p
        if not self._gamma_is_primitive():
            raise GammaNotPrimitive(
                f"x has order < r-1 modulo {modulus} over GF({p})")
        self.gamma: Element = gamma
        self._build_tables()

    def _gamma_is_primitive(self) -> bool:
        if self.degree == 1:
            g = (-self.modulus[0]) % self.p
            return g != 0 and all(
                pow(g, (self.p - 1) // ell, self.p) != 1
                for ell in factorize(self.p - 1))
        return _x_is_primitive(self.modulus, self.p, self.r)

    def _build_tables(self) -> None:
        p, d, r = self.p, self.degree, self.r
        exp = np.empty(r - 1, dtype=np.int64)
        if d == 1:
            g = self.gamma
            v = 1
            for k in range(r - 1):
                exp[k] = v
                v = (v * g) % p
        elif p == 2:
            # packed bits; reduction is a single XOR with the modulus mask
            fmask = 0
            for i, c in enumerate(self.modulus):
                fmask |= c << i
            top = 1 << d
            v = 1
            for k in range(r - 1):
                exp[k] = v
                v <<= 1
                if v & top:
                    v ^= fmask
            assert v == 1
        else:
            mod = self.modulus[:d]
            coeffs = [0] * d
            coeffs[0] = 1
            ppow = [p ** i for i in range(d)]
            for k in range(r - 1):
                exp[k] = sum(c * w for c, w in zip(coeffs, ppow))
                carry = coeffs[d - 1]
                coeffs[1:] = coeffs[: d - 1]
                coeffs[0] = 0
                if carry:
                    for i in range(d):
                        coeffs[i] = (coeffs[i] - carry * mod[i]) % p
            assert coeffs[0] == 1 and not any(coeffs[1:])
        dlog = np.full(r, -1, dtype=np.int64)
        dlog[exp] = np.arange(r - 1, dtype=np.int64)
        if dlog[0] != -1 or np.any(dlog[1:] < 0):
            raise GammaNotPrimitive("power table did not cover GF(r)*")
        exp.setflags(write=False)
        dlog.setflags(write=False)
        self.exp = exp
        self.dlog = dlog

    # -- element accessors -------------------------------------------------

    def coeffs(self, a: Element) -> tuple[int, ...]:
        """Coefficient vector (c_0, ..., c_{d-1}) of a over GF(p)."""
        out = []
        for _ in range(self.degree):
            a, c = divmod(a, self.p)
            out.append(c)
        return tuple(out)

    def from_coeffs(self, cs) -> Element:
        a = 0
        for c in reversed(list(cs)):
            a = a * self.p + (c % self.p)
        return a

    def gamma_pow(self, k: int) -> Element:
        return int(self.exp[k % (self.r - 1)])

    def dlog_of(self, a: Element) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no discrete log")
        return int(self.dlog[a])

    # -- arithmetic ---------------------------------------------------------

    def add(self, a: Element, b: Element) -> Element:
        if self.p == 2:
            return a ^ b
        p, out, w = self.p, 0, 1
        for _ in range(self.degree):
            a, ca = divmod(a, p)
            b, cb = divmod(b, p)
            out += ((ca + cb) % p) * w
            w *= p
        return out

    def neg(self, a: Element) -> Element:
        if self.p == 2:
            return a
        p, out, w = self.p, 0, 1
        for _ in range(self.degree):
            a, c = divmod(a, p)
            out += ((-c) % p) * w
            w *= p
        return out

    def sub(self, a: Element, b: Element) -> Element:
        return self.add(a, self.neg(b))

    def mul(self, a: Element, b: Element) -> Element:
        if a == 0 or b == 0:
            return 0
        k = self.dlog[a] + self.dlog[b]
        return int(self.exp[k % (self.r - 1)])

    def inv(self, a: Element) -> Element:
        if a == 0:
            raise ZeroDivisionError("0 is not invertible")
        return int(self.exp[(-self.dlog[a]) % (self.r - 1)])

    def pow(self, a: Element, k: int) -> Element:
        if a == 0:
            if k < 0:
                raise ZeroDivisionError("0 is not invertible")
            return 0 if k else 1
        return int(self.exp[(self.dlog[a] * k) % (self.r - 1)])

    def scalar_mul(self, c: int, a: Element) -> Element:
        """Multiply by the GF(p) scalar c (an int in [0, p))."""
        return self.mul(c % self.p, a)

    # -- traces and subfields -----------------------------------------------

    @cached_property
    def _trace_basis(self) -> tuple[int, ...]:
        """Tr_{r/p}(x^i) for i < d, via Newton's identities on the modulus."""
        p, d = self.p, self.degree
        a = self.modulus  # a[i] is the coefficient of x^i, a[d] = 1
        s = [0] * d
        s[0] = d % p
        for k in range(1, d):
            acc = (k * a[d - k]) % p
            for i in range(1, k):
                acc = (acc + a[d - i] * s[k - i]) % p
            s[k] = (-acc) % p
        return tuple(s)

    def trace_to_p(self, a: Element) -> int:
        """Tr_{r/p}(a) = sum of the p-power conjugates, as an int in [0, p)."""
        basis = self._trace_basis
        p, out = self.p, 0
        for i in range(self.degree):
            a, c = divmod(a, p)
            out = (out + c * basis[i]) % p
        return out

    def trace_to_q(self, a: Element) -> Element:
        """Tr_{r/q}(a) = sum_{i<m} a^(q^i), an element of the GF(q) subfield."""
        out = 0
        for i in range(self.m):
            out = self.add(out, self.pow(a, self.q ** i))
        return out

    def in_subfield_q(self, a: Element) -> bool:
        return a == 0 or self.pow(a, self.q) == a

    @cached_property
    def subfield_q_generator(self) -> Element:
        """gamma^((r-1)/(q-1)), a generator of GF(q)*."""
        return self.gamma_pow((self.r - 1) // (self.q - 1))

    # -- bulk tables used by the enumeration and cyclotomy layers ------------

    @cached_property
    def digit_matrix(self) -> np.ndarray:
        """Shape (r, d) array of GF(p) coefficient vectors, row k = coeffs(k)."""
        dtype = np.uint8 if self.p < 256 else np.int64
        out = np.empty((self.r, self.degree), dtype=dtype)
        rest = np.arange(self.r, dtype=np.int64)
        for i in range(self.degree):
            rest, dig = np.divmod(rest, self.p)
            out[:, i] = dig
        out.setflags(write=False)
        return out

    @cached_property
    def trace_p_vector(self) -> np.ndarray:
        """trace_to_p for every element, shape (r,), dtype int64."""
        basis = np.array(self._trace_basis, dtype=np.int64)
        v = (self.digit_matrix.astype(np.int64) @ basis) % self.p
        v.setflags(write=False)
        return v

    @cached_property
    def trace_q_vector(self) -> np.ndarray:
        """trace_to_q for every element (packed values), shape (r,)."""
        r1 = self.r - 1
        acc = np.zeros((self.r, self.degree), dtype=np.int64)
        ks = np.arange(r1, dtype=np.int64)
        for i in range(self.m):
            powmap = np.zeros(self.r, dtype=np.int64)
            powmap[self.exp] = self.exp[(ks * (self.q ** i)) % r1]
            acc += self.digit_matrix[powmap]
        v = (acc % self.p) @ self._packing_weights
        v.setflags(write=False)
        return v

    def add_arrays(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Elementwise field addition of packed-element arrays (broadcasts)."""
        if self.p == 2:
            return a ^ b
        dig = (self.digit_matrix[a].astype(np.int64)
               + self.digit_matrix[b]) % self.p
        return dig @ self._packing_weights

    @cached_property
    def _packing_weights(self) -> np.ndarray:
        return np.array([self.p ** i for i in range(self.degree)],
                        dtype=np.int64)

    def mul_constant_table(self, c: Element) -> np.ndarray:
        """Lookup table t with t[x] = c * x for every element x."""
        out = np.zeros(self.r, dtype=np.int64)
        if c != 0:
            k = self.dlog_of(c)
            out[self.exp] = self.exp[(np.arange(self.r - 1) + k) % (self.r - 1)]
        return out

    # -- misc ----------------------------------------------------------------

    def element_str(self, a: Element) -> str:
        """Human form: GF(p) constants print as ints; other subfield members
        print as powers of g, the canonical generator of GF(q)* inside GF(r);
        anything else as a power of gamma."""
        if a < self.p:
            return str(a)
        k = self.dlog_of(a)
        step = (self.r - 1) // (self.q - 1)
        if k % step == 0:
            e = k // step
            return "g" if e == 1 else f"g^{e}"
        return f"gamma^{k}"

    def __repr__(self) -> str:
        return (f"FieldTower(p={self.p}, s={self.s}, m={self.m}, "
                f"r={self.r}, modulus={self.modulus})")

    def __eq__(self, other) -> bool:
        return (isinstance(other, FieldTower)
                and (self.p, self.s, self.m, self.modulus)
                == (other.p, other.s, other.m, other.modulus))

    def __hash__(self) -> int:
        return hash((self.p, self.s, self.m, self.modulus))


def build_field(p: int, s: int, m: int, modulus=None,
                table_cap: int = DEFAULT_TABLE_CAP) -> FieldTower:
    """Construct the tower GF(p) <= GF(p^s) <= GF(p^(s*m)).

    If modulus is omitted, a deterministic primitive modulus is selected
    (see default_modulus), so repeated builds agree.
    """
    if not is_prime(p):
        raise NotPrime(f"p = {p} is not prime")
    if s < 1 or m < 1:
        raise ValueError("s and m must be positive")
    d = s * m
    if p ** d > table_cap:
        raise TowerTooLarge(f"r = {p**d} exceeds the table cap {table_cap}")
    if modulus is None:
        modulus = default_modulus(p, d)
    return FieldTower(p, s, m, tuple(modulus), table_cap=table_cap)


def trace_to_subfield(tower: FieldTower, x: Element, target: str) -> Element:
    """Trace of x down to GF(q) (target="q") or GF(p) (target="p")."""
    if target == "q":
        return tower.trace_to_q(x)
    if target == "p":
        return tower.trace_to_p(x)
    raise ValueError(f"target must be 'q' or 'p', got {target!r}")


# ----------------------------------------------------------------------
# Minimal polynomials over the middle field GF(q).
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class SubfieldPolynomial:
    """A monic polynomial with coefficients in the GF(q) subfield of GF(r).

    Coefficients are stored ascending as packed GF(r) elements; every one
    satisfies c^q = c.  When s = 1 the coefficients are ordinary ints in
    [0, p) and gfp_coeffs() exposes them that way.
    """

    tower: FieldTower
    coeffs: tuple[Element, ...]

    def __post_init__(self):
        for c in self.coeffs:
            if not self.tower.in_subfield_q(c):
                raise ValueError(f"coefficient {c} is not in GF(q)")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def gfp_coeffs(self) -> tuple[int, ...]:
        if self.tower.s != 1:
            raise ValueError("coefficients live in GF(q) with q > p")
        return self.coeffs  # packed GF(p) constants are their own ints

    def eval_at(self, x: Element) -> Element:
        t = self.tower
        acc = 0
        for c in reversed(self.coeffs):
            acc = t.add(t.mul(acc, x), c)
        return acc

    def serial(self) -> str:
        """Comma-separated ascending coefficients (ints when s = 1, else
        powers of the subfield generator g)."""
        return ",".join(self.tower.element_str(c) for c in self.coeffs)

    def __str__(self) -> str:
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            cs = self.tower.element_str(c)
            if i == 0:
                terms.append(cs)
            else:
                xi = "x" if i == 1 else f"x^{i}"
                terms.append(xi if cs == "1" else f"{cs}{xi}" if cs.isdigit()
                             else f"({cs}){xi}")
        return " + ".join(terms) if terms else "0"


def min_poly(tower: FieldTower, beta: Element) -> SubfieldPolynomial:
    """Minimal polynomial of beta over GF(q): the product of (X - c) over
    the distinct q-power conjugates c of beta."""
    if beta == 0:
        raise ValueError("beta must be nonzero")
    conjugates = [beta]
    c = tower.pow(beta, tower.q)
    while c != beta:
        conjugates.append(c)
        c = tower.pow(c, tower.q)
    # expand prod (X - c_j) with coefficients in GF(r)
    coeffs: list[Element] = [1]
    for c in conjugates:
        nc = tower.neg(c)
        nxt = [0] * (len(coeffs) + 1)
        for i, a in enumerate(coeffs):
            nxt[i] = tower.add(nxt[i], tower.mul(a, nc))
            nxt[i + 1] = tower.add(nxt[i + 1], a)
        coeffs = nxt
    return SubfieldPolynomial(tower, tuple(coeffs))
