"""Cyclotomic classes, cyclotomic numbers, and exact Gaussian periods.

The canonical additive character of GF(r) sends x to zeta^Tr(x) with zeta a
primitive p-th root of unity and Tr the trace down to GF(p).  Sums of
character values therefore live in the ring Z[zeta], which we represent
exactly: a CyclotomicInteger is the vector of integer multiplicities of
zeta^0, ..., zeta^(p-1).  Since 1 + zeta + ... + zeta^(p-1) = 0, the value
is a rational integer exactly when all multiplicities above index 0 agree.

The Gaussian period of class i is the character sum over the coset
C_i = gamma^i <gamma^L>, computed here by tallying trace values (the exact
oracle, no floating point anywhere).  Closed forms are implemented for four
classical situations:

* order2:        L = 2, quadratic Gauss sums (rational when s*m is even);
* order3:        L = 3 with p = 1 mod 3 and 3 | s*m, via 4p^(sm/3) = c^2 + 27d^2;
* semiprimitive: p^j = -1 mod L, two rational values;
* index2:        L = 3 mod 4 prime, p a quadratic residue mod L, via the
                 class number of Q(sqrt(-L)) and a^2 + L b^2 = 4 p^h.

Closed forms are always cross-checkable against the exact oracle; the
order3 and index2 variants use the oracle to pin the class labels that
genuinely depend on the choice of gamma (only the value multiset is
canonical there).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

import numpy as np

from .errors import BadL, HypothesisNotMet, NoDiophantineSolution, NotADivisor
from .gf import Element, FieldTower, is_prime


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a|p) in {-1, 0, 1} for odd prime p."""
    a %= p
    if a == 0:
        return 0
    t = pow(a, (p - 1) // 2, p)
    return 1 if t == 1 else -1


# ----------------------------------------------------------------------
# Exact elements of Z[zeta_p].
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class CyclotomicInteger:
    """sum_c counts[c] * zeta_p^c with integer counts (possibly negative).

    Adding the same constant to every count leaves the value unchanged;
    equality and hashing go through that normalization.  The value is a
    rational integer iff counts[1] = ... = counts[p-1], and then equals
    counts[0] - counts[1].
    """

    p: int
    counts: tuple[int, ...]

    def __post_init__(self):
        if len(self.counts) != self.p:
            raise ValueError("counts must have length p")

    @classmethod
    def from_int(cls, p: int, n: int) -> "CyclotomicInteger":
        return cls(p, (n,) + (0,) * (p - 1))

    def _canon(self) -> tuple[int, ...]:
        k = self.counts[-1]
        return tuple(c - k for c in self.counts)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CyclotomicInteger):
            if isinstance(other, int):
                return self.is_rational() and self.rational_value() == other
            return NotImplemented
        return self.p == other.p and self._canon() == other._canon()

    def __hash__(self) -> int:
        return hash((self.p, self._canon()))

    def __add__(self, other) -> "CyclotomicInteger":
        if isinstance(other, int):
            other = CyclotomicInteger.from_int(self.p, other)
        return CyclotomicInteger(
            self.p, tuple(a + b for a, b in zip(self.counts, other.counts)))

    __radd__ = __add__

    def __neg__(self) -> "CyclotomicInteger":
        return CyclotomicInteger(self.p, tuple(-c for c in self.counts))

    def __sub__(self, other) -> "CyclotomicInteger":
        if isinstance(other, int):
            other = CyclotomicInteger.from_int(self.p, other)
        return self + (-other)

    def __rsub__(self, other: int) -> "CyclotomicInteger":
        return CyclotomicInteger.from_int(self.p, other) + (-self)

    def __mul__(self, k: int) -> "CyclotomicInteger":
        return CyclotomicInteger(self.p, tuple(k * c for c in self.counts))

    __rmul__ = __mul__

    def is_rational(self) -> bool:
        return all(c == self.counts[1] for c in self.counts[2:]) \
            if self.p > 1 else True

    def rational_value(self) -> int:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.counts[0] - self.counts[1]

    def rational_or_none(self):
        return self.rational_value() if self.is_rational() else None

    def __repr__(self) -> str:
        if self.is_rational():
            return f"CyclotomicInteger({self.rational_value()})"
        return f"CyclotomicInteger(p={self.p}, counts={self.counts})"


# ----------------------------------------------------------------------
# Cyclotomic classes and numbers.
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class CyclotomicClassTable:
    """Order-L cyclotomic classes of GF(r)*: class i is gamma^i <gamma^L>."""

    tower: FieldTower
    L: int

    @property
    def class_size(self) -> int:
        return (self.tower.r - 1) // self.L

    def index_of(self, x: Element) -> int:
        return self.tower.dlog_of(x) % self.L

    def class_elements(self, i: int):
        return (int(v) for v in self.tower.exp[i % self.L::self.L])

    def index_vector(self) -> np.ndarray:
        """index_of for every element; -1 at the zero element."""
        out = np.full(self.tower.r, -1, dtype=np.int64)
        out[self.tower.exp] = np.arange(self.tower.r - 1) % self.L
        return out


def cyclotomic_classes(tower: FieldTower, L: int) -> CyclotomicClassTable:
    if L < 1 or (tower.r - 1) % L:
        raise NotADivisor(f"L = {L} does not divide r - 1 = {tower.r - 1}")
    return CyclotomicClassTable(tower, L)


def cyclotomic_numbers(tower: FieldTower, L: int) -> np.ndarray:
    """The L x L matrix whose (i, j) entry counts x in C_i with x + 1 in C_j.

    One vectorized pass over GF(r)* minus {-1}: adding 1 to a packed element
    only changes its constant digit, so x + 1 is a pure index rewrite.
    """
    if L < 1 or (tower.r - 1) % L:
        raise NotADivisor(f"L = {L} does not divide r - 1 = {tower.r - 1}")
    p = tower.p
    xs = tower.exp
    low = xs % p
    ys = xs - low + (low + 1) % p
    i_cls = np.arange(tower.r - 1, dtype=np.int64) % L
    mask = ys != 0
    j_cls = tower.dlog[ys[mask]] % L
    flat = np.bincount(i_cls[mask] * L + j_cls, minlength=L * L)
    return flat.reshape(L, L)


# ----------------------------------------------------------------------
# Gaussian periods: exact oracle.
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class GaussianPeriodSet:
    """Exact order-L Gaussian periods of GF(r), indexed by class."""

    tower: FieldTower
    L: int
    values: tuple[CyclotomicInteger, ...]
    source: str  # "exact" or "closed:<variant>"

    @property
    def eta_bar_zero(self) -> int:
        """The modified period at the zero argument, (r - 1) / L."""
        return (self.tower.r - 1) // self.L

    @property
    def rational_values(self) -> tuple:
        return tuple(v.rational_or_none() for v in self.values)

    def value(self, i: int) -> CyclotomicInteger:
        return self.values[i % self.L]

    def tallies(self) -> tuple[tuple[int, ...], ...]:
        return tuple(v.counts for v in self.values)

    def rational_multiset(self) -> tuple:
        """Sorted rational values, or None if any value is irrational."""
        vals = self.rational_values
        return None if any(v is None for v in vals) else tuple(sorted(vals))


def gaussian_periods(tower: FieldTower, L: int) -> GaussianPeriodSet:
    """Exact periods by tallying trace values over each class (the oracle)."""
    if L < 1 or (tower.r - 1) % L:
        raise NotADivisor(f"L = {L} does not divide r - 1 = {tower.r - 1}")
    p = tower.p
    cls = np.arange(tower.r - 1, dtype=np.int64) % L
    tr = tower.trace_p_vector[tower.exp]
    tall = np.bincount(cls * p + tr, minlength=L * p).reshape(L, p)
    values = tuple(CyclotomicInteger(p, tuple(int(c) for c in row))
                   for row in tall)
    total = sum(values[1:], values[0])
    assert total.is_rational() and total.rational_value() == -1, \
        "period sum must be -1 (character orthogonality)"
    return GaussianPeriodSet(tower, L, values, source="exact")


def modified_period(pset: GaussianPeriodSet, v: Element):
    """(r-1)/L at v = 0, otherwise the period of v's class.  Returns a plain
    int whenever the value is rational."""
    if v == 0:
        return pset.eta_bar_zero
    val = pset.value(pset.tower.dlog_of(v) % pset.L)
    return val.rational_value() if val.is_rational() else val


@dataclass(frozen=True)
class DistinctPeriodMultiset:
    """The distinct period values with their class multiplicities."""

    L: int
    pairs: tuple[tuple[CyclotomicInteger, int], ...]

    @property
    def mu(self) -> int:
        return len(self.pairs)

    @property
    def taus(self) -> tuple[int, ...]:
        return tuple(t for _, t in self.pairs)

    def rational_pairs(self) -> tuple:
        return tuple((v.rational_or_none(), t) for v, t in self.pairs)


def distinct_values(pset: GaussianPeriodSet) -> DistinctPeriodMultiset:
    groups: dict[CyclotomicInteger, int] = {}
    for v in pset.values:
        groups[v] = groups.get(v, 0) + 1
    pairs = tuple(sorted(groups.items(), key=lambda kv: kv[0]._canon()))
    assert sum(t for _, t in pairs) == pset.L
    return DistinctPeriodMultiset(pset.L, pairs)


# ----------------------------------------------------------------------
# Closed forms.
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class ClosedFormParams:
    """Solved constants behind a closed-form period computation."""

    variant: str  # order2 | order3 | semiprimitive | index2
    branch: str | None = None
    c1: int | None = None          # order3: 4 p^(sm/3) = c1^2 + 27 d1^2
    d1: int | None = None
    j: int | None = None           # semiprimitive: least j with p^j = -1 mod L
    v: int | None = None           # semiprimitive: r = p^(2 j v)
    h_L: int | None = None         # index2: class number of Q(sqrt(-L))
    a_qf: int | None = None        # index2: a^2 + L b^2 = 4 p^h_L
    b_qf: int | None = None
    k: int | None = None           # index2: sm = k (L-1) / 2
    P_k: int | None = None
    A_k: Fraction | None = None
    B_k: Fraction | None = None

    def to_json_dict(self) -> dict:
        out: dict = {"variant": self.variant}
        for name in ("branch", "c1", "d1", "j", "v", "h_L",
                     "a_qf", "b_qf", "k", "P_k"):
            val = getattr(self, name)
            if val is not None:
                out[name] = val
        for name in ("A_k", "B_k"):
            val = getattr(self, name)
            if val is not None:
                out[name] = str(val)
        return out


def imaginary_quadratic_class_number(L: int) -> int:
    """Class number of Q(sqrt(-L)) for prime L = 3 mod 4, L != 3, via a
    count of reduced primitive binary quadratic forms of discriminant -L."""
    if L == 3 or L % 4 != 3 or not is_prime(L):
        raise BadL(f"L = {L} must be a prime = 3 mod 4, L != 3")
    h = 0
    b = 1  # -L = 1 mod 4 forces b odd
    while b * b <= L // 3:
        ac4 = b * b + L
        a = max(b, 1)
        while 4 * a * a <= ac4:
            if ac4 % (4 * a) == 0:
                c = ac4 // (4 * a)
                if gcd(gcd(a, b), c) == 1:
                    h += 1 if (a == b or a == c) else 2
            a += 1
        b += 2
    return h


def solve_index2_form(L: int, p: int, h_L: int) -> tuple[int, int]:
    """The unique (a, b) with a^2 + L b^2 = 4 p^h_L, b > 0, p not dividing b,
    and a = -2 p^((L-1+2h_L)/4) mod L."""
    target = 4 * p ** h_L
    a_cong = (-2 * pow(p, (L - 1 + 2 * h_L) // 4, L)) % L
    b = 1
    while L * b * b <= target:
        a2 = target - L * b * b
        a = isqrt(a2)
        if a * a == a2 and b % p != 0:
            for signed in (a, -a):
                if signed % L == a_cong:
                    return signed, b
        b += 1
    raise NoDiophantineSolution(
        f"no (a, b) with a^2 + {L} b^2 = {target} and the sign congruence")


def _quadratic_gauss_counts(p: int) -> CyclotomicInteger:
    """sum_c (c|p) zeta^c, the quadratic Gauss sum over GF(p)."""
    return CyclotomicInteger(
        p, (0,) + tuple(legendre(c, p) for c in range(1, p)))


def _closed_order2(tower: FieldTower):
    sm = tower.s * tower.m
    p = tower.p
    minus_one = CyclotomicInteger(p, (0,) + (1,) * (p - 1))  # value -1
    if sm % 2 == 0:
        # eta_0 = (-1 + sign * sqrt(r)) / 2 with an integer sqrt(r)
        sqrt_r = p ** (sm // 2)
        sign = -1 if p % 4 == 1 else -((-1) ** (sm // 2))
        eta0 = (-1 + sign * sqrt_r) // 2
        assert (-1 + sign * sqrt_r) % 2 == 0
        vals = (CyclotomicInteger.from_int(p, eta0),
                CyclotomicInteger.from_int(p, -1 - eta0))
        branch = "even"
    else:
        # eta_0 = (-1 + K g)/2 with g the quadratic Gauss sum over GF(p)
        # and K = ((-1|p) p)^((sm-1)/2); counts stay integral because K is odd
        K = (legendre(-1, p) * p) ** ((sm - 1) // 2)
        counts = tuple((1 + K * legendre(c, p)) // 2 if c else 0
                       for c in range(p))
        eta0 = CyclotomicInteger(p, counts)
        vals = (eta0, minus_one - eta0)
        branch = "odd"
    return vals, ClosedFormParams(variant="order2", branch=branch)


def _closed_order3(tower: FieldTower, exact: GaussianPeriodSet):
    p, sm = tower.p, tower.s * tower.m
    if p % 3 != 1:
        raise HypothesisNotMet(f"p = {p} is not 1 mod 3")
    if sm % 3:
        raise HypothesisNotMet(f"s*m = {sm} is not divisible by 3")
    R = p ** (sm // 3)
    target = 4 * R
    candidates = []
    d = 1
    while 27 * d * d < target:
        c2 = target - 27 * d * d
        c = isqrt(c2)
        if c * c == c2 and c % p != 0:
            candidates.append((c, d))
        d += 1
    if not candidates:
        raise NoDiophantineSolution(f"4*{R} = c^2 + 27 d^2 has no p-coprime solution")
    exact_vals = exact.values
    for c_abs, d_abs in candidates:
        c = c_abs if c_abs % 3 == 2 else -c_abs  # integrality: c R = -1 mod 3
        for d in (d_abs, -d_abs):
            eta0, rem0 = divmod(-1 - c * R, 3)
            eta1, rem1 = divmod(-2 + (c + 9 * d) * R, 6)
            eta2, rem2 = divmod(-2 + (c - 9 * d) * R, 6)
            if rem0 or rem1 or rem2:
                continue
            vals = tuple(CyclotomicInteger.from_int(p, e)
                         for e in (eta0, eta1, eta2))
            if vals == exact_vals:
                return vals, ClosedFormParams(variant="order3", c1=c, d1=d)
    raise NoDiophantineSolution(
        "no sign choice reproduces the exact order-3 periods")


def _closed_semiprimitive(tower: FieldTower, L: int):
    p, sm = tower.p, tower.s * tower.m
    if L <= 2:
        raise HypothesisNotMet("semiprimitive form needs L > 2")
    j = None
    for cand in range(1, L + 1):
        if pow(p, cand, L) == L - 1:
            j = cand
            break
    if j is None:
        raise HypothesisNotMet(f"no j with {p}^j = -1 mod {L}")
    if sm % (2 * j):
        raise HypothesisNotMet(f"s*m = {sm} is not a multiple of 2j = {2*j}")
    v = sm // (2 * j)
    sqrt_r = p ** (j * v)
    if v % 2 and p % 2 and ((p ** j + 1) // L) % 2:
        special_index = L // 2
        special = ((L - 1) * sqrt_r - 1) // L
        common = -(sqrt_r + 1) // L
        assert ((L - 1) * sqrt_r - 1) % L == 0 and (sqrt_r + 1) % L == 0
        branch = "all-odd"
    else:
        special_index = 0
        sgn = -1 if v % 2 else 1
        special, rs = divmod(-sgn * (L - 1) * sqrt_r - 1, L)
        common, rc = divmod(sgn * sqrt_r - 1, L)
        assert rs == 0 and rc == 0
        branch = "general"
    vals = tuple(
        CyclotomicInteger.from_int(p, special if i == special_index else common)
        for i in range(L))
    return vals, ClosedFormParams(variant="semiprimitive", branch=branch,
                                  j=j, v=v)


def _closed_index2(tower: FieldTower, L: int, exact: GaussianPeriodSet):
    p, sm = tower.p, tower.s * tower.m
    if L == 3 or L % 4 != 3 or not is_prime(L):
        raise HypothesisNotMet(f"L = {L} is not a prime = 3 mod 4 (or is 3)")
    if legendre(p, L) != 1:
        raise HypothesisNotMet(f"p = {p} is not a quadratic residue mod {L}")
    if (2 * sm) % (L - 1):
        raise HypothesisNotMet(f"(L-1)/2 = {(L-1)//2} does not divide s*m = {sm}")
    k = 2 * sm // (L - 1)
    h_L = imaginary_quadratic_class_number(L)
    a, b = solve_index2_form(L, p, h_L)
    exponent4 = k * (L - 1 - 2 * h_L)
    assert exponent4 % 4 == 0 and exponent4 >= 0
    P = (-1) ** (k - 1) * p ** (exponent4 // 4)
    # ((a + b sqrt(-L)) / 2)^k = A + B sqrt(-L), tracked exactly
    A, B = Fraction(a, 2), Fraction(b, 2)
    for _ in range(k - 1):
        A, B = A * Fraction(a, 2) - L * B * Fraction(b, 2), \
               A * Fraction(b, 2) + B * Fraction(a, 2)
    eta0_f = (P * A * (L - 1) - 1) / L
    eta_plus_f = -(P * A + P * B * L + 1) / L
    eta_minus_f = -(P * A - P * B * L + 1) / L
    fvals = (eta0_f, eta_plus_f, eta_minus_f)
    if not all(f.denominator == 1 for f in fvals):
        raise NoDiophantineSolution(f"non-integral index-2 periods {fvals}")
    eta0, eta_plus, eta_minus = (int(f) for f in fvals)
    # the +/- labeling depends on gamma; try both against the exact oracle
    for ep, em in ((eta_plus, eta_minus), (eta_minus, eta_plus)):
        vals = tuple(
            CyclotomicInteger.from_int(
                p, eta0 if i == 0 else (ep if legendre(i, L) == 1 else em))
            for i in range(L))
        if vals == exact.values:
            return vals, ClosedFormParams(
                variant="index2", h_L=h_L, a_qf=a, b_qf=b, k=k,
                P_k=P, A_k=A, B_k=B)
    raise NoDiophantineSolution(
        "index-2 closed form does not reproduce the exact periods")


CLOSED_FORM_VARIANTS = ("order2", "order3", "semiprimitive", "index2")


def gaussian_periods_closed_form(
        variant: str, tower: FieldTower, L: int
) -> tuple[GaussianPeriodSet, ClosedFormParams]:
    """Closed-form periods of order L, labeled by class.

    The order3 and index2 variants consult the exact oracle to resolve the
    gamma-dependent labels (signs of d1, the +/- class split); the value
    multiset itself comes from the solved closed form.
    """
    if L < 1 or (tower.r - 1) % L:
        raise NotADivisor(f"L = {L} does not divide r - 1 = {tower.r - 1}")
    if variant == "order2":
        if L != 2:
            raise HypothesisNotMet("order2 form needs L = 2")
        vals, params = _closed_order2(tower)
    elif variant == "order3":
        if L != 3:
            raise HypothesisNotMet("order3 form needs L = 3")
        vals, params = _closed_order3(tower, gaussian_periods(tower, 3))
    elif variant == "semiprimitive":
        vals, params = _closed_semiprimitive(tower, L)
    elif variant == "index2":
        vals, params = _closed_index2(tower, L, gaussian_periods(tower, L))
    else:
        raise ValueError(f"unknown variant {variant!r}")
    pset = GaussianPeriodSet(tower, L, vals, source=f"closed:{variant}")
    total = sum(vals[1:], vals[0])
    assert total.is_rational() and total.rational_value() == -1
    return pset, params


def applicable_closed_form(tower: FieldTower, L: int) -> str | None:
    """The first closed-form variant whose hypotheses hold, or None."""
    for variant in CLOSED_FORM_VARIANTS:
        try:
            gaussian_periods_closed_form(variant, tower, L)
            return variant
        except (HypothesisNotMet, NotADivisor):
            continue
    return None
