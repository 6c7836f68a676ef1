"""Construction of the trace-defined cyclic code family.

A code instance is fixed by (p, s, m, e, t, a, D_1..D_t) with q = p^s,
r = q^m, e | r - 1, and exponents a_i = a + (r-1)/e * D_i mod r-1.  The
codeword attached to (x_1, ..., x_t) in GF(r)^t has i-th symbol
Tr_{r/q}(sum_j x_j gamma^(a_j i)) for i = 0..n-1, where n = (r-1)/delta
and delta = gcd(r-1, a_1, ..., a_t).  Under the validity conditions below
this is an [n, t*m] cyclic code over GF(q) whose parity-check polynomial
is the product of the minimal polynomials of the gamma^(-a_i).

Validity conditions checked by validate_assumptions:
  i)   a != 0 mod r-1 and e | r-1;
  ii)  the D_i are distinct mod e and gcd(D_2-D_1, ..., D_t-D_1, e) = 1;
  iii) each minimal polynomial has full degree m and they are pairwise
       distinct (equivalently the q-cyclotomic cosets of the a_i mod r-1
       have size m and are pairwise disjoint).
Condition iii has two fast sufficient criteria (N <= sqrt(r); or no
(r-1)/(q^l - 1) with l a proper divisor of m divides N); the report
records which fired, but the direct coset computation is always run and
is the verdict of record.

Every function here is pure; towers and derived parameter bundles are
immutable, so concurrent use is safe.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import gcd

from .cyclotomy import CyclotomicInteger, GaussianPeriodSet
from .errors import (
    AssumptionViolated,
    DivisionNotExact,
    EDoesNotDivide,
    NonIntegralWeight,
)
from .gf import (
    Element,
    FieldTower,
    SubfieldPolynomial,
    build_field,
    cyclotomic_coset,
    min_poly,
)


@dataclass(frozen=True)
class CodeSpec:
    """Input parameters of one code instance.

    deltas are the offsets D_1..D_t (mod e); modulus, when given, pins the
    field realization so printed polynomials are reproducible.
    """

    p: int
    s: int
    m: int
    e: int
    t: int
    a: int
    deltas: tuple[int, ...]
    modulus: tuple[int, ...] | None = None

    def __post_init__(self):
        if len(self.deltas) != self.t:
            raise ValueError("need exactly t offsets")
        if not (2 <= self.t <= self.e):
            raise ValueError("need e >= t >= 2")

    @property
    def q(self) -> int:
        return self.p ** self.s

    @property
    def r(self) -> int:
        return self.p ** (self.s * self.m)

    def to_json_dict(self) -> dict:
        out = {"p": self.p, "s": self.s, "m": self.m, "e": self.e,
               "t": self.t, "a": self.a,
               "delta": ",".join(str(d) for d in self.deltas)}
        if self.modulus is not None:
            out["modulus"] = ",".join(str(c) for c in self.modulus)
        return out


def build_tower(spec: CodeSpec, table_cap=None) -> FieldTower:
    kwargs = {} if table_cap is None else {"table_cap": table_cap}
    return build_field(spec.p, spec.s, spec.m, modulus=spec.modulus, **kwargs)


@dataclass(frozen=True)
class DerivedParams:
    """Quantities derived from a spec: exponents a_i, delta = gcd(r-1, a_i),
    length n = (r-1)/delta, N = gcd((r-1)/(q-1), a e), the step g = gamma^a,
    and the column roots beta_tau = gamma^((r-1) D_tau / e)."""

    e: int
    t: int
    a: int
    a_list: tuple[int, ...]
    delta: int
    n: int
    N: int
    g: Element
    betas: tuple[Element, ...]


def derive_params(tower: FieldTower, spec: CodeSpec) -> DerivedParams:
    r1 = tower.r - 1
    if spec.e < 1 or r1 % spec.e:
        raise EDoesNotDivide(f"e = {spec.e} does not divide r - 1 = {r1}")
    step = r1 // spec.e
    a_list = tuple((spec.a + step * d) % r1 for d in spec.deltas)
    delta = gcd(r1, *a_list)
    n = r1 // delta
    N = gcd(r1 // (tower.q - 1), spec.a * spec.e)
    g = tower.gamma_pow(spec.a)
    betas = tuple(tower.gamma_pow(step * d) for d in spec.deltas)
    return DerivedParams(e=spec.e, t=spec.t, a=spec.a % r1, a_list=a_list,
                         delta=delta, n=n, N=N, g=g, betas=betas)


@dataclass(frozen=True)
class AssumptionReport:
    """Per-condition verdicts, with the method that settled iii and any
    failing witnesses."""

    cond_i: bool
    cond_ii: bool
    cond_iii: bool
    iii_method: str  # "sqrt-bound" | "divisor-criterion" | "direct-only"
    witnesses: dict = field(default_factory=dict)

    @property
    def all_hold(self) -> bool:
        return self.cond_i and self.cond_ii and self.cond_iii

    def failing(self) -> list[str]:
        out = []
        if not self.cond_i:
            out.append("i")
        if not self.cond_ii:
            out.append("ii")
        if not self.cond_iii:
            out.append("iii")
        return out

    def to_json_dict(self) -> dict:
        return {"i": self.cond_i, "ii": self.cond_ii, "iii": self.cond_iii,
                "iii_method": self.iii_method,
                "witnesses": {k: str(v) for k, v in self.witnesses.items()}}


def validate_assumptions(tower: FieldTower, spec: CodeSpec,
                         derived: DerivedParams | None = None) -> AssumptionReport:
    r1 = tower.r - 1
    witnesses: dict = {}

    e_divides = spec.e >= 1 and r1 % spec.e == 0
    cond_i = spec.a % r1 != 0 and e_divides
    if not cond_i:
        witnesses["i"] = f"a = {spec.a} mod {r1}, e = {spec.e}"

    residues = [d % spec.e for d in spec.deltas]
    distinct = len(set(residues)) == spec.t
    g_all = gcd(spec.e, *[(d - spec.deltas[0]) % spec.e
                          for d in spec.deltas[1:]]) if spec.t > 1 else spec.e
    cond_ii = distinct and g_all == 1
    if not distinct:
        witnesses["ii"] = f"repeated offsets mod e: {sorted(residues)}"
    elif g_all != 1:
        witnesses["ii"] = f"gcd of offset differences with e is {g_all}"

    if not e_divides:
        # the exponents a_i are undefined, so iii cannot be evaluated
        witnesses["iii"] = "e does not divide r - 1"
        return AssumptionReport(cond_i, cond_ii, False, "direct-only",
                                witnesses)

    if derived is None:
        derived = derive_params(tower, spec)

    # fast sufficient criteria for iii (they presuppose i and ii);
    # recorded but never trusted alone
    method = "direct-only"
    if cond_i and cond_ii:
        if derived.N * derived.N <= tower.r:
            method = "sqrt-bound"
        else:
            m = tower.m
            proper = [l for l in range(1, m) if m % l == 0]
            if all(derived.N % (r1 // (tower.q ** l - 1)) for l in proper):
                method = "divisor-criterion"

    cosets = [frozenset(cyclotomic_coset(ai, tower.q, tower.r))
              for ai in derived.a_list]
    sizes_ok = all(len(c) == tower.m for c in cosets)
    disjoint = len(set(cosets)) == spec.t
    cond_iii = sizes_ok and disjoint
    if not sizes_ok:
        bad = next(ai for ai, c in zip(derived.a_list, cosets)
                   if len(c) != tower.m)
        witnesses["iii"] = f"coset of {bad} has size != m"
    elif not disjoint:
        witnesses["iii"] = "two exponents share a q-cyclotomic coset"
    if method != "direct-only" and not cond_iii:
        raise AssertionError(
            "fast criterion claimed condition iii but the cosets disagree")
    return AssumptionReport(cond_i, cond_ii, cond_iii, method, witnesses)


def independent_power_rows(tower: FieldTower, derived: DerivedParams) -> bool:
    """Whether every t x t minor of the e x t matrix with rows
    (beta_1^h, ..., beta_t^h), h = 0..e-1, is invertible over GF(r)."""
    rows = [[tower.pow(b, h) for b in derived.betas] for h in range(derived.e)]
    for pick in combinations(range(derived.e), derived.t):
        mat = [list(rows[h]) for h in pick]
        if _det_is_zero(tower, mat):
            return False
    return True


def _det_is_zero(tower: FieldTower, mat: list[list[Element]]) -> bool:
    n = len(mat)
    for col in range(n):
        piv = next((row for row in range(col, n) if mat[row][col]), None)
        if piv is None:
            return True
        mat[col], mat[piv] = mat[piv], mat[col]
        inv = tower.inv(mat[col][col])
        for row in range(col + 1, n):
            if mat[row][col]:
                f = tower.mul(mat[row][col], inv)
                for k in range(col, n):
                    mat[row][k] = tower.sub(mat[row][k],
                                            tower.mul(f, mat[col][k]))
    return False


# ----------------------------------------------------------------------
# Parity-check and generator polynomials.
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class CodePolynomials:
    factors: tuple[SubfieldPolynomial, ...]  # h_{a_i}, ascending a_i order
    h: SubfieldPolynomial
    g: SubfieldPolynomial


def _poly_mul_elems(tower, a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = tower.add(out[i + j], tower.mul(ai, bj))
    return out


def _poly_divmod_monic(tower, num, den):
    num = list(num)
    dd = len(den) - 1
    quot = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            quot[i - dd] = c
            for k in range(dd + 1):
                num[i - dd + k] = tower.sub(num[i - dd + k],
                                            tower.mul(c, den[k]))
    return quot, num[:dd]


def build_polynomials(tower: FieldTower, spec: CodeSpec,
                      derived: DerivedParams | None = None) -> CodePolynomials:
    """h_i = minimal polynomial of gamma^(-a_i) over GF(q); h = prod h_i;
    g = (x^n - 1) / h by exact division."""
    if derived is None:
        derived = derive_params(tower, spec)
    report = validate_assumptions(tower, spec, derived)
    if not report.all_hold:
        raise AssumptionViolated(
            f"conditions {report.failing()} fail: {report.witnesses}")
    factors = tuple(min_poly(tower, tower.gamma_pow(-ai))
                    for ai in derived.a_list)
    h_coeffs = [1]
    for f in factors:
        h_coeffs = _poly_mul_elems(tower, h_coeffs, list(f.coeffs))
    h = SubfieldPolynomial(tower, tuple(h_coeffs))
    xn1 = [tower.neg(1)] + [0] * (derived.n - 1) + [1]
    g_coeffs, rem = _poly_divmod_monic(tower, xn1, h_coeffs)
    if any(rem):
        raise DivisionNotExact("parity-check polynomial does not divide x^n - 1")
    g = SubfieldPolynomial(tower, tuple(g_coeffs))
    return CodePolynomials(factors=factors, h=h, g=g)


# ----------------------------------------------------------------------
# Codewords and their weights.
# ----------------------------------------------------------------------

def codeword(tower: FieldTower, derived: DerivedParams,
             x_vec: tuple[Element, ...]) -> tuple[Element, ...]:
    """Symbols Tr_{r/q}(sum_j x_j gamma^(a_j i)) for i = 0..n-1."""
    powers = [tower.gamma_pow(ai) for ai in derived.a_list]
    cur = list(x_vec)
    out = []
    for _ in range(derived.n):
        acc = 0
        for xj in cur:
            acc = tower.add(acc, xj)
        out.append(tower.trace_to_q(acc))
        cur = [tower.mul(xj, w) for xj, w in zip(cur, powers)]
    return tuple(out)


def codeword_weight_from_periods(tower: FieldTower, derived: DerivedParams,
                                 pset: GaussianPeriodSet,
                                 x_vec: tuple[Element, ...]) -> int:
    """Hamming weight of the codeword of x_vec via the period-sum identity:

        w = (q-1)/(q delta) * [ (r-1) - (N/e) * T ],
        T = sum_h modified_period(g^h * sum_tau x_tau beta_tau^h),

    evaluated in exact integer (or cyclotomic) arithmetic.
    """
    if pset.L != derived.N:
        raise ValueError(f"need periods of order N = {derived.N}, got {pset.L}")
    q, r, e, delta = tower.q, tower.r, derived.e, derived.delta
    # N*T accumulates with the 1/N of the zero value cleared
    NT = CyclotomicInteger.from_int(tower.p, 0)
    for h in range(e):
        v = 0
        for x, b in zip(x_vec, derived.betas):
            v = tower.add(v, tower.mul(x, tower.pow(b, h)))
        v = tower.mul(tower.pow(derived.g, h), v)
        if v == 0:
            NT = NT + (r - 1)
        else:
            NT = NT + derived.N * pset.value(tower.dlog_of(v) % pset.L)
    scaled = (e * (r - 1)) - NT  # equals e * [(r-1) - (N/e) T]
    if not scaled.is_rational():
        raise NonIntegralWeight(f"period sum is irrational for {x_vec}")
    num = (q - 1) * scaled.rational_value()
    den = q * delta * e
    if num % den:
        raise NonIntegralWeight(f"weight {num}/{den} is not an integer")
    w = num // den
    if not 0 <= w <= derived.n:
        raise NonIntegralWeight(f"weight {w} outside [0, n]")
    return w
