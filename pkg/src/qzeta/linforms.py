"""Exact linear forms A·zeta_q(k) − B out of Heine-type series.

The basic object is the series

    F(a, b) = C(q) · sum_{t>=0} S(q^t),
    S(x) = x^e · prod_i (1 - q^i x) / prod_j (1 - q^j x)^{m_j},

a rewriting of the q-hypergeometric sum in which every Gamma_q ratio has
been expanded into finite q-Pochhammer products.  Partial fractions of S
in x over Q(p) (p = 1/q) turn the t-sum into A·zeta_q(1) − B (simple poles)
or A·zeta_q(2) − B (double poles), with A, B exact rational functions of p
whose denominators are products of cyclotomic polynomials and powers of p.

Everything here is exact; the only floating point is in the optional
certification step, which itself runs on dyadic interval enclosures.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .dyadic import Interval
from .parith import FactoredPPoly, PPoly, cyclotomic, cyclotomic_value, divisors, prod_ppoly
from .qseries import zeta_q_value


# --------------------------------------------------------------------------
# parameter tuples and c-vectors


@dataclass(frozen=True)
class ParamsZ1:
    """Parameters (a0, a1, a2, b) of the zeta_q(1) series."""

    a0: int
    a1: int
    a2: int
    b: int

    def __post_init__(self):
        if min(self.a0, self.a1, self.a2, self.b) < 1:
            raise ValueError("parameters must be positive integers")

    @property
    def admissible(self) -> bool:
        # convergence region plus nonnegativity of every c-label
        return self.a1 + self.a2 <= self.b and self.a0 + self.a1 + self.a2 >= self.b + 1

    def as_tuple(self):
        return (self.a0, self.a1, self.a2, self.b)


@dataclass(frozen=True)
class ParamsZ2:
    """Parameters (a1, a2, a3, b2, b3) of the zeta_q(2) series."""

    a1: int
    a2: int
    a3: int
    b2: int
    b3: int

    def __post_init__(self):
        if min(self.as_tuple()) < 1:
            raise ValueError("parameters must be positive integers")

    @property
    def admissible(self) -> bool:
        a = (self.a1, self.a2, self.a3)
        b = (self.b2, self.b3)
        return all(aj < bk for aj in a for bk in b) and sum(a) < sum(b)

    def as_tuple(self):
        return (self.a1, self.a2, self.a3, self.b2, self.b3)


LABELS_Z1 = ("00", "01", "11", "21", "12", "22")
LABELS_Z2 = ("00", "11", "12", "13", "21", "22", "23", "31", "32", "33")

# labels whose q-factorials make up Pi_q(c)
FACTORIAL_LABELS = {"zeta1": ("01", "21", "22"), "zeta2": ("00", "21", "22", "33", "31")}


@dataclass(frozen=True)
class CVector:
    """The labeled parameter differences acted on by the transformation groups."""

    kind: str
    values: tuple[int, ...]

    @property
    def labels(self) -> tuple[str, ...]:
        return LABELS_Z1 if self.kind == "zeta1" else LABELS_Z2

    def __getitem__(self, label: str) -> int:
        return self.values[self.labels.index(label)]

    def as_dict(self) -> dict[str, int]:
        return dict(zip(self.labels, self.values))

    @property
    def m(self) -> int:
        return max(self.values)

    @property
    def m1m2(self) -> tuple[int, int]:
        top = sorted(self.values, reverse=True)
        return top[0], top[1]

    def factorial_labels(self) -> tuple[str, ...]:
        return FACTORIAL_LABELS[self.kind]


def cvector(params, check: bool = True) -> CVector:
    """Labeled c-values of a parameter tuple; rejects inadmissible input.

    check=False skips the admissibility test (used on group images, which may
    leave the convergence region and still need their labels).
    """
    if isinstance(params, ParamsZ1):
        if check and not params.admissible:
            raise ValueError(f"inadmissible parameters {params.as_tuple()}")
        a0, a1, a2, b = params.as_tuple()
        vals = (a0 + a1 + a2 - b - 1, a0 - 1, a1 - 1, a2 - 1, b - a1 - 1, b - a2 - 1)
        return CVector("zeta1", vals)
    if isinstance(params, ParamsZ2):
        if check and not params.admissible:
            raise ValueError(f"inadmissible parameters {params.as_tuple()}")
        a = (params.a1, params.a2, params.a3)
        bs = (params.b2, params.b3)
        vals = [sum(bs) - sum(a) - 1]
        for aj in a:
            vals.extend((aj - 1, bs[0] - aj - 1, bs[1] - aj - 1))
        return CVector("zeta2", tuple(vals))
    raise TypeError("params must be ParamsZ1 or ParamsZ2")


# --------------------------------------------------------------------------
# rational functions of p with factored cyclotomic denominators


def _phi_exponents(d: int) -> dict[int, int]:
    return {l: 1 for l in divisors(d)}


@dataclass(frozen=True)
class UnitMono:
    """A unit monomial ±p^a · prod_l Phi_l(p)^{e_l} with integer exponents."""

    sign: int
    ppow: int
    phi: tuple[tuple[int, int], ...]  # sorted (l, exponent != 0)

    @staticmethod
    def make(sign: int, ppow: int = 0, phi: dict[int, int] | None = None) -> "UnitMono":
        items = tuple(sorted((l, e) for l, e in (phi or {}).items() if e != 0))
        return UnitMono(1 if sign > 0 else -1, ppow, items)

    @staticmethod
    def one() -> "UnitMono":
        return UnitMono.make(1)

    @staticmethod
    def one_minus_q_power(j: int) -> "UnitMono":
        """(1 - q^j) = (p^j - 1)/p^j as a unit monomial, j >= 1."""
        return UnitMono.make(1, -j, _phi_exponents(j))

    @staticmethod
    def one_minus_p_power(d: int) -> "UnitMono":
        """(1 - p^d) for d != 0."""
        if d == 0:
            raise ValueError("1 - p^0 = 0 is not a unit")
        if d > 0:
            return UnitMono.make(-1, 0, _phi_exponents(d))
        return UnitMono.make(1, d, _phi_exponents(-d))

    def __mul__(self, other: "UnitMono") -> "UnitMono":
        phi = dict(self.phi)
        for l, e in other.phi:
            phi[l] = phi.get(l, 0) + e
        return UnitMono.make(self.sign * other.sign, self.ppow + other.ppow, phi)

    def inv(self) -> "UnitMono":
        return UnitMono.make(self.sign, -self.ppow, {l: -e for l, e in self.phi})

    def value_at(self, p: int) -> Fraction:
        v = Fraction(self.sign) * Fraction(p) ** self.ppow
        for l, e in self.phi:
            v *= Fraction(cyclotomic_value(l, p)) ** e
        return v


def _unit_product(factors) -> UnitMono:
    acc = UnitMono.one()
    for f in factors:
        acc = acc * f
    return acc


class RatFunc:
    """num(p) / (p^dpow · prod_l Phi_l(p)^dphi[l]), numerator an exact PPoly.

    Denominators are kept factored and are not reduced against the numerator
    unless reduce() is called; p-order and Phi-order queries work either way.
    """

    __slots__ = ("num", "dpow", "dphi")

    def __init__(self, num: PPoly, dpow: int = 0, dphi: dict[int, int] | None = None):
        if dpow < 0:
            raise ValueError("denominator p-power must be nonnegative")
        dphi = {l: e for l, e in (dphi or {}).items() if e != 0}
        if any(e < 0 or l < 1 for l, e in dphi.items()):
            raise ValueError("denominator exponents must be positive")
        self.num, self.dpow, self.dphi = num, dpow, dphi

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "RatFunc":
        return RatFunc(PPoly.zero())

    @staticmethod
    def from_int(c: int) -> "RatFunc":
        return RatFunc(PPoly.const(c))

    @staticmethod
    def from_unit(u: UnitMono) -> "RatFunc":
        pos = {l: e for l, e in u.phi if e > 0}
        neg = {l: -e for l, e in u.phi if e < 0}
        num = prod_ppoly(cyclotomic(l).pow(e) for l, e in pos.items()) * u.sign
        if u.ppow >= 0:
            return RatFunc(num.shift(u.ppow), 0, neg)
        return RatFunc(num, -u.ppow, neg)

    # -- ring operations ---------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.dpow, self.dphi)

    def __add__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc.sum((self, other))

    def __sub__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc.sum((self, -other))

    def __mul__(self, other) -> "RatFunc":
        if isinstance(other, UnitMono):
            return self * RatFunc.from_unit(other)
        if isinstance(other, int):
            return RatFunc(self.num * other, self.dpow, self.dphi)
        dphi = dict(self.dphi)
        for l, e in other.dphi.items():
            dphi[l] = dphi.get(l, 0) + e
        return RatFunc(self.num * other.num, self.dpow + other.dpow, dphi)

    __rmul__ = __mul__

    @staticmethod
    def sum(terms) -> "RatFunc":
        """Single common-denominator sum of many RatFuncs."""
        terms = [t for t in terms if not t.is_zero()]
        if not terms:
            return RatFunc.zero()
        dpow = max(t.dpow for t in terms)
        dphi: dict[int, int] = {}
        for t in terms:
            for l, e in t.dphi.items():
                if e > dphi.get(l, 0):
                    dphi[l] = e
        total = PPoly.zero()
        for t in terms:
            cof = prod_ppoly(
                cyclotomic(l).pow(dphi.get(l, 0) - t.dphi.get(l, 0))
                for l in dphi
                if dphi.get(l, 0) > t.dphi.get(l, 0)
            )
            total = total + (t.num * cof).shift(dpow - t.dpow)
        return RatFunc(total, dpow, dphi)

    # -- queries -----------------------------------------------------------

    def value_at(self, p: int) -> Fraction:
        den = Fraction(p) ** self.dpow
        for l, e in self.dphi.items():
            den *= Fraction(cyclotomic_value(l, p)) ** e
        return Fraction(self.num(p)) / den

    def ord_p(self) -> int:
        """p-adic order; by convention 0 for the zero function."""
        if self.is_zero():
            return 0
        return self.num.trailing_zeros() - self.dpow

    def phi_order(self, l: int, cap: int | None = None) -> int:
        """ord at Phi_l, capped from above if requested (saves division work)."""
        if self.is_zero():
            raise ValueError("zero has no Phi-order")
        own = self.dphi.get(l, 0)
        top = None if cap is None else cap + own
        return self.num.ord_at(cyclotomic(l), cap=top) - own

    def reduce(self) -> "RatFunc":
        """Cancel all cyclotomic and p-power content shared with the numerator."""
        if self.is_zero():
            return RatFunc.zero()
        num = self.num
        dpow = self.dpow
        t = min(num.trailing_zeros(), dpow)
        if t:
            num = PPoly(num.coeffs[t:])
            dpow -= t
        dphi = {}
        for l, e in sorted(self.dphi.items()):
            phi = cyclotomic(l)
            while e > 0:
                q = num.try_exact_div(phi)
                if q is None:
                    break
                num, e = q, e - 1
            if e:
                dphi[l] = e
        return RatFunc(num, dpow, dphi)

    def equal(self, other: "RatFunc") -> bool:
        # cross-multiplied comparison, exact
        lhs = self.num * RatFunc.from_unit(
            UnitMono.make(1, other.dpow, dict(other.dphi))
        ).num
        rhs = other.num * RatFunc.from_unit(
            UnitMono.make(1, self.dpow, dict(self.dphi))
        ).num
        return lhs == rhs

    def __repr__(self):
        return f"RatFunc(num deg {self.num.degree}, dpow {self.dpow}, dphi {self.dphi})"


# --------------------------------------------------------------------------
# Laurent coefficients for the x-polynomial division


class _Laurent:
    """num(p) · p^shift with shift of either sign; coefficient ring of the x-work."""

    __slots__ = ("num", "shift")

    def __init__(self, num: PPoly, shift: int = 0):
        self.num, self.shift = num, shift

    @staticmethod
    def const(c: int) -> "_Laurent":
        return _Laurent(PPoly.const(c))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __mul__(self, other: "_Laurent") -> "_Laurent":
        return _Laurent(self.num * other.num, self.shift + other.shift)

    def __sub__(self, other: "_Laurent") -> "_Laurent":
        s = min(self.shift, other.shift)
        return _Laurent(
            self.num.shift(self.shift - s) - other.num.shift(other.shift - s), s
        )

    def times_q_power(self, j: int) -> "_Laurent":
        return _Laurent(self.num, self.shift - j)

    def to_ratfunc(self) -> RatFunc:
        if self.shift >= 0:
            return RatFunc(self.num.shift(self.shift))
        return RatFunc(self.num, -self.shift)


def _poly_part(numx: list[_Laurent], denx: list[_Laurent]) -> list[_Laurent]:
    """Quotient coefficients of the x-division numx / denx (ascending in x)."""
    qdeg = len(numx) - len(denx)
    if qdeg < 0:
        return []
    rem = list(numx)
    dd = len(denx) - 1
    lead = denx[dd]
    if lead.num.degree != 0 or abs(lead.num.coeffs[0]) != 1:
        raise AssertionError("divisor leading coefficient is not a unit monomial")
    lead_inv = _Laurent(PPoly.const(lead.num.coeffs[0]), -lead.shift)
    quot: list[_Laurent] = [_Laurent.const(0)] * (qdeg + 1)
    for d in range(qdeg, -1, -1):
        c = rem[d + dd] * lead_inv
        quot[d] = c
        if not c.is_zero():
            for i in range(dd + 1):
                rem[d + i] = rem[d + i] - c * denx[i]
    return quot


# --------------------------------------------------------------------------
# the summand in product form


@dataclass(frozen=True)
class Summand:
    """S(x) = x^expo · prod_{i in num_i}(1 - q^i x) / prod_j (1 - q^j x)^{mult[j]}."""

    expo: int
    num_i: tuple[int, ...]
    mult: tuple[tuple[int, int], ...]  # sorted (pole j, multiplicity)
    prefactor_num: tuple[int, ...]  # C = prod (1-q^j) over these j ...
    prefactor_den: tuple[int, ...]  # ... divided by these


def _cancel(num: list[int], den: dict[int, int]) -> tuple[list[int], dict[int, int]]:
    keep = []
    for i in num:
        if den.get(i, 0) > 0:
            den[i] -= 1
        else:
            keep.append(i)
    return keep, {j: m for j, m in den.items() if m > 0}


def summand_z1(params: ParamsZ1) -> Summand:
    a0, a1, a2, b = params.as_tuple()
    num = list(range(1, a1))
    den = {j: 1 for j in range(a2, b)}
    num, den = _cancel(num, den)
    return Summand(
        a0,
        tuple(num),
        tuple(sorted(den.items())),
        tuple(range(1, b - a2)),
        tuple(range(1, a1)),
    )


def summand_z2(params: ParamsZ2) -> Summand:
    a1, a2, a3, b2, b3 = params.as_tuple()
    num = list(range(1, a1))
    den: dict[int, int] = {}
    for j in range(a2, b2):
        den[j] = den.get(j, 0) + 1
    for j in range(a3, b3):
        den[j] = den.get(j, 0) + 1
    num, den = _cancel(num, den)
    return Summand(
        b2 + b3 - a1 - a2 - a3,
        tuple(num),
        tuple(sorted(den.items())),
        tuple(range(1, b2 - a2)) + tuple(range(1, b3 - a3)),
        tuple(range(1, a1)),
    )


def _prefactor(s: Summand) -> UnitMono:
    c = _unit_product(UnitMono.one_minus_q_power(j) for j in s.prefactor_num)
    return c * _unit_product(
        UnitMono.one_minus_q_power(j) for j in s.prefactor_den
    ).inv()


def heine_terms(params: ParamsZ1, T: int, p: int) -> list[Fraction]:
    """First T summands of the zeta_q(1) series at q = 1/p, exactly."""
    if abs(p) < 2:
        raise ValueError("need |p| >= 2")
    if not params.admissible:
        raise ValueError(f"inadmissible parameters {params.as_tuple()}")
    return _exact_terms(summand_z1(params), T, p)


def _exact_terms(s: Summand, T: int, p: int) -> list[Fraction]:
    q = Fraction(1, p)
    c = Fraction(1)
    for j in s.prefactor_num:
        c *= 1 - q**j
    for j in s.prefactor_den:
        c /= 1 - q**j
    out = []
    for t in range(T):
        x = q**t
        v = c * x**s.expo
        for i in s.num_i:
            v *= 1 - q**i * x
        for j, m in s.mult:
            v /= (1 - q**j * x) ** m
        out.append(v)
    return out


# --------------------------------------------------------------------------
# partial-sum tails T1_{<j} = sum_{s<j} 1/(p^s-1), T2_{<j} = sum_{s<j} p^s/(p^s-1)^2


def _tail_tables(jmax: int) -> tuple[list[RatFunc], list[RatFunc]]:
    """T1_{<j} and T2_{<j} for j = 0..jmax as RatFuncs over D_{j-1}-type denominators."""
    t1: list[RatFunc] = [RatFunc.zero(), RatFunc.zero()]  # j = 0 and j = 1 are empty
    t2: list[RatFunc] = [RatFunc.zero(), RatFunc.zero()]
    u = PPoly.zero()  # numerator of T1_{<j+1} over V = prod_{l<=j} Phi_l
    x = PPoly.zero()  # numerator of T2_{<j+1} over V^2
    v = PPoly.const(1)  # V itself
    vphi: dict[int, int] = {}
    for j in range(1, jmax):
        phi_j = cyclotomic(j)
        v = v * phi_j
        vphi = dict(vphi)
        vphi[j] = 1
        # V now includes all l <= j; the new term 1/(p^j - 1) has cofactor
        # V / (p^j - 1) = prod_{l <= j, l not dividing j} Phi_l
        cof = v.div_binomial(j)
        u = u * phi_j + cof
        x = x * (phi_j * phi_j) + (cof * cof).shift(j)
        t1.append(RatFunc(u, 0, vphi))
        t2.append(RatFunc(x, 0, {l: 2 * e for l, e in vphi.items()}))
    return t1, t2


# --------------------------------------------------------------------------
# the linear form itself


@dataclass
class LinearForm:
    """A·zeta_q(k) − B with exact coefficients and its arithmetic data."""

    kind: str
    params: object
    A: RatFunc
    B: RatFunc
    cvec: CVector
    M: int = 0

    @property
    def m(self) -> int:
        return self.cvec.m

    @property
    def m1m2(self) -> tuple[int, int]:
        return self.cvec.m1m2

    def d_exponents(self) -> dict[int, int]:
        """Cyclotomic exponents of the clearing product D."""
        if self.kind == "zeta1":
            return {l: 1 for l in range(1, self.m + 1)}
        m1, m2 = self.m1m2
        return {l: (2 if l <= m2 else 1) for l in range(1, m1 + 1)}

    def d_value(self, p: int) -> int:
        v = 1
        for l, e in self.d_exponents().items():
            v *= cyclotomic_value(l, p) ** e
        return v


def _residue_unit(s: Summand, j: int) -> UnitMono:
    """N(p^j) / prod_{i != j} (1 - p^{j-i})^{m_i} with the pole's factor removed."""
    parts = [UnitMono.make(1, s.expo * j)]
    parts.extend(UnitMono.one_minus_p_power(j - i) for i in s.num_i)
    for i, m in s.mult:
        if i != j:
            parts.extend([UnitMono.one_minus_p_power(j - i).inv()] * m)
    return _unit_product(parts)


def _log_derivative_at_pole(s: Summand, j: int) -> RatFunc:
    """Lambda_j(p^j): logarithmic x-derivative of S·(1-q^j x)^{m_j} at x = p^j.

    Terms: expo/x − sum_num q^i/(1−q^i x) + sum_{den, i != j} m_i q^i/(1−q^i x),
    and q^i/(1 − q^i p^j) simplifies to −p^{-i}/(p^{j-i} − 1) for i < j and
    p^{-j}/(p^{i-j} − 1) for i > j.
    """

    def simple(i: int, w: int) -> RatFunc:
        if i < j:
            return RatFunc(PPoly.const(-w), i, _phi_exponents(j - i))
        return RatFunc(PPoly.const(w), j, _phi_exponents(i - j))

    terms = [RatFunc(PPoly.const(s.expo), j)]
    for i in s.num_i:
        terms.append(simple(i, -1))
    for i, m in s.mult:
        if i != j:
            terms.append(simple(i, m))
    return RatFunc.sum(terms)


def _build_xpoly(s: Summand) -> tuple[list[_Laurent], list[_Laurent]]:
    numx = [_Laurent.const(0)] * s.expo + _expand_factors(s.num_i)
    den_factors: list[int] = []
    for j, m in s.mult:
        den_factors.extend([j] * m)
    denx = _expand_factors(den_factors)
    return numx, denx


def _expand_factors(indices) -> list[_Laurent]:
    coeffs = [_Laurent.const(1)]
    for i in indices:
        nxt = []
        prev = _Laurent.const(0)
        for c in coeffs:
            nxt.append(c - prev.times_q_power(i))
            prev = c
        nxt.append(_Laurent.const(0) - prev.times_q_power(i))
        coeffs = nxt
    return coeffs


def _poly_part_contribution(quot: list[_Laurent]) -> tuple[RatFunc, RatFunc]:
    """(c0 as a RatFunc, sum_{i>=1} c_i/(1 - q^i)) from the polynomial part."""
    c0 = quot[0].to_ratfunc() if quot else RatFunc.zero()
    terms = []
    for i, c in enumerate(quot[1:], start=1):
        if c.is_zero():
            continue
        # c_i/(1-q^i) = c_i p^i/(p^i - 1)
        shifted = _Laurent(c.num, c.shift + i)
        terms.append(RatFunc(PPoly.const(1), 0, _phi_exponents(i)) * shifted.to_ratfunc())
    return c0, RatFunc.sum(terms)


_FORM_CACHE: dict[tuple, LinearForm] = {}
_CERTIFIED: set[tuple] = set()


def _cached(key, build, certify_at):
    if key not in _FORM_CACHE:
        _FORM_CACHE[key] = build()
    form = _FORM_CACHE[key]
    if certify_at is not None and key + (certify_at,) not in _CERTIFIED:
        rep = certify(form, certify_at)
        if not rep.ok:
            raise AssertionError(f"numeric certification failed: {rep}")
        _CERTIFIED.add(key + (certify_at,))
    return form


def linform_zeta1(params: ParamsZ1, certify_at: int | None = 2) -> LinearForm:
    """Exact A, B with F(a,b) = A·zeta_q(1) − B, certified numerically."""
    return _cached(("zeta1", params.as_tuple()), lambda: _build_zeta1(params), certify_at)


def _build_zeta1(params: ParamsZ1) -> LinearForm:
    cv = cvector(params)  # also validates admissibility
    s = summand_z1(params)
    if any(m > 1 for _, m in s.mult):
        raise AssertionError("zeta_q(1) summand acquired a double pole")
    c_unit = _prefactor(s)
    poles = [j for j, _ in s.mult]
    res = {j: _residue_unit(s, j) for j in poles}
    numx, denx = _build_xpoly(s)
    quot = _poly_part(numx, denx)
    c0, poly_sum = _poly_part_contribution(quot)
    total_res = RatFunc.sum([RatFunc.from_unit(res[j]) for j in poles])
    if not (c0 + total_res).is_zero():
        raise AssertionError(
            "constant term does not cancel the residue sum; the series would diverge"
        )
    t1, _ = _tail_tables(max(poles) + 1)
    b_terms = [RatFunc.from_unit(res[j]) * t1[j] for j in poles]
    b_terms.append(-poly_sum)
    A = RatFunc.from_unit(c_unit) * total_res
    B = RatFunc.from_unit(c_unit) * RatFunc.sum(b_terms)
    form = LinearForm("zeta1", params, A, B, cv)
    form.M = determine_M(form)
    return form


def linform_zeta2(params: ParamsZ2, certify_at: int | None = 2) -> LinearForm:
    """Exact A, B with F(a,b) = A·zeta_q(2) − B; zeta_q(1) terms must cancel."""
    return _cached(("zeta2", params.as_tuple()), lambda: _build_zeta2(params), certify_at)


def _build_zeta2(params: ParamsZ2) -> LinearForm:
    cv = cvector(params)
    s = summand_z2(params)
    c_unit = _prefactor(s)
    if s.expo + len(s.num_i) >= sum(m for _, m in s.mult):
        raise AssertionError("zeta_q(2) summand is not a proper rational function")
    singles = {}
    doubles_f = {}
    doubles_e = {}
    for j, m in s.mult:
        if m == 1:
            singles[j] = RatFunc.from_unit(_residue_unit(s, j))
        elif m == 2:
            g = _residue_unit(s, j)
            doubles_f[j] = RatFunc.from_unit(g)
            lam = _log_derivative_at_pole(s, j)
            doubles_e[j] = -(lam * UnitMono.make(1, j) * g)
        else:
            raise AssertionError("pole multiplicity above 2 is not supported")
    zeta1_coeff = RatFunc.sum(
        list(singles.values()) + list(doubles_e.values()) + list(doubles_f.values())
    )
    if not zeta1_coeff.is_zero():
        raise AssertionError("zeta_q(1) contribution failed to cancel")
    jmax = max(j for j, _ in s.mult)
    t1, t2 = _tail_tables(jmax + 1)
    b_terms = [e * t1[j] for j, e in [*singles.items(), *doubles_e.items()]]
    b_terms.extend(f * (t1[j] + t2[j]) for j, f in doubles_f.items())
    A = RatFunc.from_unit(c_unit) * RatFunc.sum(list(doubles_f.values()))
    B = RatFunc.from_unit(c_unit) * RatFunc.sum(b_terms)
    form = LinearForm("zeta2", params, A, B, cv)
    form.M = determine_M(form)
    return form


def linform(params, certify_at: int | None = 2) -> LinearForm:
    if isinstance(params, ParamsZ1):
        return linform_zeta1(params, certify_at)
    return linform_zeta2(params, certify_at)


# --------------------------------------------------------------------------
# M, inclusions, certification, growth


def determine_M(form: LinearForm) -> int:
    """Largest M with p^{-M}·D·A and p^{-M}·D·B both in Z[p] (0 for a zero side)."""
    return min(form.A.ord_p(), form.B.ord_p())


@dataclass(frozen=True)
class InclusionResult:
    ok: bool
    witness: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify_inclusion(form: LinearForm, omega: FactoredPPoly | None = None) -> InclusionResult:
    """Exact check of p^{-M}·D·Omega^{-1}·{A, B} in Z[p]."""
    d_exp = form.d_exponents()
    o_exp = dict(omega.exponents) if omega is not None else {}
    if omega is not None and omega.p_power:
        return InclusionResult(False, "Omega carries a power of p")
    for name, coeff in (("A", form.A), ("B", form.B)):
        if coeff.is_zero():
            continue
        if coeff.ord_p() < form.M:
            return InclusionResult(False, f"p-power deficit in {name}")
        ls = set(coeff.dphi) | set(o_exp)
        for l in sorted(ls):
            need = coeff.dphi.get(l, 0) + o_exp.get(l, 0) - d_exp.get(l, 0)
            if need <= 0:
                continue
            have = coeff.num.ord_at(cyclotomic(l), cap=need)
            if have < need:
                return InclusionResult(
                    False, f"Phi_{l} exponent deficit in {name}: need {need}, have {have}"
                )
    return InclusionResult(True)


def numeric_form_value(
    params, p: int, terms: int = 200, prec: int = 256
) -> tuple[Interval, Fraction]:
    """Certified enclosure of F at q = 1/p by direct interval summation.

    Returns (enclosure including the tail, tail bound used).  With T = terms
    the tail is sum_{t>=T} |S(q^t)|, bounded by
    |q|^{eT}/(1-|q|^e) · prod_i(1+|q|^i) / prod_j(1-|q|^{j+T})^{m_j},
    every factor being monotone in t on t >= T.
    """
    if abs(p) < 2:
        raise ValueError("need |p| >= 2")
    s = summand_z1(params) if isinstance(params, ParamsZ1) else summand_z2(params)
    q = Fraction(1, p)
    qq = Interval.exact(q, prec)
    c = Interval.exact(1, prec)
    for j in s.prefactor_num:
        c = c * (1 - qq.pow(j))
    for j in s.prefactor_den:
        c = c / (1 - qq.pow(j))
    qi = {i: qq.pow(i) for i in s.num_i}
    qj = {j: qq.pow(j) for j, _ in s.mult}
    qe = qq.pow(s.expo)
    acc = Interval.exact(0, prec)
    x = Interval.exact(1, prec)  # q^t
    xe = Interval.exact(1, prec)  # q^(expo·t)
    for _ in range(terms):
        v = c * xe
        for i in s.num_i:
            v = v * (1 - qi[i] * x)
        for j, m in s.mult:
            v = v / (1 - qj[j] * x).pow(m)
        acc = acc + v
        x = x * qq
        xe = xe * qe
    aq = abs(q)
    tail = aq ** (s.expo * terms) / (1 - aq**s.expo)
    for i in s.num_i:
        tail *= 1 + aq**i
    for j, m in s.mult:
        tail /= (1 - aq ** (j + terms)) ** m
    tail_bound = max(abs(c.lo), abs(c.hi)) * tail
    return acc.widen(tail_bound), tail_bound


@dataclass(frozen=True)
class Certification:
    residual: Fraction
    bound: Fraction
    terms: int
    ok: bool


_ZETA_CACHE: dict[tuple[int, int, int], object] = {}


def _zeta_eval(k: int, p: int, terms: int):
    key = (k, p, terms)
    if key not in _ZETA_CACHE:
        _ZETA_CACHE[key] = zeta_q_value(k, p, terms)
    return _ZETA_CACHE[key]


def certify(form: LinearForm, p: int = 2, terms: int = 200) -> Certification:
    """Compare exact A·zeta_q(k) − B against a direct summation of the series."""
    k = 1 if form.kind == "zeta1" else 2
    enc, tail_f = numeric_form_value(form.params, p, terms=terms)
    zv = _zeta_eval(k, p, terms)
    a_val = form.A.value_at(p)
    b_val = form.B.value_at(p)
    predicted = a_val * zv.value - b_val
    mid = (enc.lo + enc.hi) / 2
    residual = abs(mid - predicted)
    bound = 10 * (tail_f + (enc.hi - enc.lo) / 2 + abs(a_val) * zv.tail_bound)
    return Certification(residual, bound, terms, residual < bound)


def growth_scan(family, n_max: int, p: int) -> list[dict]:
    """Per-n growth exponents log|A_n| and log|F_n| against n² log|p|."""
    if abs(p) < 2:
        raise ValueError("need |p| >= 2")
    rows = []
    for n in range(1, n_max + 1):
        form = linform(family.params(n), certify_at=None)
        a_val = form.A.value_at(p)
        enc, _ = numeric_form_value(form.params, p, terms=40 + 8 * n)
        mid = enc.midpoint()
        denom = n * n * math.log(abs(p))
        rows.append(
            {
                "n": n,
                "a_exponent": _log_abs(a_val) / denom,
                "f_exponent": (_log_abs(mid) / denom) if mid else float("-inf"),
                "M": form.M,
            }
        )
    return rows


def _log_abs(x) -> float:
    """log|x| for rationals far outside float range (math.log takes big ints)."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("log of zero")
    return math.log(abs(x.numerator)) - math.log(x.denominator)


@dataclass(frozen=True)
class Family:
    """A one-parameter direction n -> params(n) through parameter space."""

    kind: str
    rates: tuple[int, ...]
    offsets: tuple[int, ...]
    name: str

    def params(self, n: int):
        vals = tuple(r * n + o for r, o in zip(self.rates, self.offsets))
        return ParamsZ1(*vals) if self.kind == "zeta1" else ParamsZ2(*vals)


THEOREM1 = Family("zeta1", (8, 6, 8, 15), (1, 1, 1, 1), "theorem1")
THEOREM2 = Family("zeta2", (5, 6, 7, 14, 15), (1, 1, 1, 2, 2), "theorem2")
BV = Family("zeta1", (1, 1, 1, 2), (1, 1, 1, 2), "bv")
APERY = Family("zeta2", (1, 1, 1, 2, 2), (1, 1, 1, 2, 2), "apery")

FAMILIES = {f.name: f for f in (THEOREM1, THEOREM2, BV, APERY)}
