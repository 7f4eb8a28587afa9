"""Exact arithmetic in the parameter p: Gaussian integers [n]_p, cyclotomic
polynomials, q-factorials, their common multiples D_n(p), and the trigamma
function used for the totient-density constants.

Polynomials live in Z[p] as dense coefficient tuples (ascending powers).
Multiplication goes through Kronecker substitution on top of big integers
(gmpy2 when available), which keeps degree-several-thousand products cheap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

try:
    from gmpy2 import mpz as _mpz
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    _mpz = int


# ---------------------------------------------------------------------------
# small multiplicative helpers


@lru_cache(maxsize=None)
def divisors(n: int) -> tuple[int, ...]:
    """All positive divisors of n, ascending."""
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return tuple(small + large[::-1])


@lru_cache(maxsize=None)
def mobius(n: int) -> int:
    """Moebius function."""
    if n == 1:
        return 1
    m, k, d = n, 0, 2
    while d * d <= m:
        if m % d == 0:
            m //= d
            if m % d == 0:
                return 0
            k += 1
        d += 1
    if m > 1:
        k += 1
    return -1 if k % 2 else 1


@lru_cache(maxsize=None)
def totient(n: int) -> int:
    """Euler's totient."""
    result, m, d = n, n, 2
    while d * d <= m:
        if m % d == 0:
            while m % d == 0:
                m //= d
            result -= result // d
        d += 1
    if m > 1:
        result -= result // m
    return result


# ---------------------------------------------------------------------------
# dense integer polynomials in p


def _trim(coeffs):
    i = len(coeffs)
    while i > 0 and coeffs[i - 1] == 0:
        i -= 1
    return tuple(coeffs[:i])


_KRON_CUTOFF = 24  # below this, schoolbook beats packing overhead


def _school_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _kron_mul(a, b):
    """Multiply integer coefficient sequences via Kronecker substitution.

    Each operand is evaluated at 2^k (as a genuine integer, via separate
    packing of positive and negative parts); the single big multiplication
    is delegated to gmpy2 and the signed digits are read back out.
    """
    max_a = max(abs(c) for c in a)
    max_b = max(abs(c) for c in b)
    bits = (
        max_a.bit_length()
        + max_b.bit_length()
        + min(len(a), len(b)).bit_length()
        + 2
    )
    k = ((bits + 7) // 8) * 8
    kb = k // 8
    za = _pack(a, kb)
    zb = _pack(b, kb)
    prod = int(_mpz(za) * _mpz(zb))
    return _unpack(prod, len(a) + len(b) - 1, k, kb)


def _pack(coeffs, kb):
    """Evaluate the coefficient sequence at 2^(8*kb) exactly."""
    pos = bytearray(kb * len(coeffs))
    neg = bytearray(kb * len(coeffs))
    for i, c in enumerate(coeffs):
        if c > 0:
            pos[i * kb : i * kb + kb] = c.to_bytes(kb, "little")
        elif c < 0:
            neg[i * kb : i * kb + kb] = (-c).to_bytes(kb, "little")
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def _unpack(z, slots, k, kb):
    half = 1 << (k - 1)
    full = 1 << k
    z &= (1 << (k * slots)) - 1
    raw = z.to_bytes(kb * slots, "little")
    out = [0] * slots
    carry = 0
    for i in range(slots):
        v = int.from_bytes(raw[i * kb : (i + 1) * kb], "little") + carry
        if v >= half:
            v -= full
            carry = 1
        else:
            carry = 0
        out[i] = v
    return out


class PPoly:
    """Dense polynomial in Z[p], ascending coefficients, trailing zeros trimmed."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        self.coeffs = _trim(tuple(coeffs))

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "PPoly":
        return PPoly(())

    @staticmethod
    def const(c: int) -> "PPoly":
        return PPoly((c,))

    @staticmethod
    def monomial(k: int, c: int = 1) -> "PPoly":
        return PPoly((0,) * k + (c,))

    @staticmethod
    def p_power_minus_one(d: int) -> "PPoly":
        """p^d - 1."""
        return PPoly((-1,) + (0,) * (d - 1) + (1,))

    # -- structure ---------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree, with deg 0 = -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, PPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"PPoly({list(self.coeffs)})"

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return PPoly(out)

    def __neg__(self):
        return PPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return PPoly()
            return PPoly(tuple(c * other for c in self.coeffs))
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return PPoly()
        if min(len(a), len(b)) < _KRON_CUTOFF:
            return PPoly(_school_mul(a, b))
        return PPoly(_kron_mul(a, b))

    __rmul__ = __mul__

    def shift(self, k: int) -> "PPoly":
        """Multiply by p^k (k >= 0)."""
        if not self.coeffs:
            return self
        return PPoly((0,) * k + self.coeffs)

    def trailing_zeros(self) -> int:
        """ord_p of the polynomial; raises on zero."""
        if not self.coeffs:
            raise ValueError("ord_p of zero polynomial")
        i = 0
        while self.coeffs[i] == 0:
            i += 1
        return i

    def content(self) -> int:
        return math.gcd(*self.coeffs) if self.coeffs else 0

    # -- division -----------------------------------------------------------

    def divrem(self, g: "PPoly") -> tuple["PPoly", "PPoly"]:
        """Quotient and remainder by a divisor with leading coefficient +-1."""
        gc = g.coeffs
        if not gc:
            raise ZeroDivisionError("polynomial division by zero")
        lead = gc[-1]
        if lead not in (1, -1):
            raise ValueError("divrem requires a unit leading coefficient")
        rem = list(self.coeffs)
        dg = len(gc) - 1
        if len(rem) <= dg:
            return PPoly(), self
        quot = [0] * (len(rem) - dg)
        for i in range(len(rem) - 1, dg - 1, -1):
            c = rem[i]
            if c:
                c = c * lead  # lead is +-1, so this is exact
                quot[i - dg] = c
                for k in range(dg + 1):
                    rem[i - dg + k] -= c * gc[k]
        return PPoly(quot), PPoly(rem)

    def try_exact_div(self, g: "PPoly"):
        """Exact quotient self/g if it exists in Z[p], else None.

        Works low-end first, so it only needs the constant coefficient of g
        to be a unit (true for every cyclotomic polynomial and p^d - 1).
        """
        gc = g.coeffs
        if not gc:
            raise ZeroDivisionError("polynomial division by zero")
        if not self.coeffs:
            return PPoly()
        if gc[0] not in (1, -1):
            q, r = self.divrem(g) if gc[-1] in (1, -1) else (None, None)
            if q is None:
                raise ValueError("divisor needs a unit constant or leading coefficient")
            return q if r.is_zero() else None
        g0 = gc[0]
        rem = list(self.coeffs)
        nq = len(rem) - len(gc) + 1
        if nq <= 0:
            return None
        quot = [0] * nq
        for i in range(nq):
            c = rem[i]
            if c:
                c = c * g0
                quot[i] = c
                for k, gk in enumerate(gc):
                    rem[i + k] -= c * gk
        if any(rem[nq:]) or any(rem[:nq]):
            return None
        return PPoly(quot)

    def div_binomial(self, d: int) -> "PPoly":
        """Exact quotient by p^d - 1 in a single O(degree) pass."""
        if d < 1:
            raise ValueError("exponent must be positive")
        f = self.coeffs
        if not f:
            return PPoly()
        n = len(f) - 1
        if n < d:
            raise ValueError("not divisible by p^d - 1")
        quot = [0] * (n - d + 1)
        # f = q·(p^d - 1) means f_k = q_{k-d} - q_k
        for k in range(n, d - 1, -1):
            qk = quot[k] if k <= n - d else 0
            quot[k - d] = f[k] + qk
        for k in range(d):
            qk = quot[k] if k <= n - d else 0
            if f[k] != -qk:
                raise ValueError("not divisible by p^d - 1")
        return PPoly(quot)

    def ord_at(self, g: "PPoly", cap: int | None = None) -> int:
        """Multiplicity of the irreducible factor g in self (exact divisions)."""
        if not self.coeffs:
            raise ValueError("ord of zero polynomial")
        n, cur = 0, self
        while cap is None or n < cap:
            nxt = cur.try_exact_div(g)
            if nxt is None:
                return n
            cur, n = nxt, n + 1
        return n

    # -- evaluation ----------------------------------------------------------

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def pow(self, e: int) -> "PPoly":
        result, base = PPoly((1,)), self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result


def prod_ppoly(factors) -> PPoly:
    """Product of an iterable of PPoly, balanced for Kronecker efficiency."""
    items = [f for f in factors]
    if not items:
        return PPoly((1,))
    while len(items) > 1:
        items = [
            items[i] * items[i + 1] if i + 1 < len(items) else items[i]
            for i in range(0, len(items), 2)
        ]
    return items[0]


# ---------------------------------------------------------------------------
# factored products of cyclotomics


@dataclass
class FactoredPPoly:
    """A polynomial known in the form unit * p^p_power * prod Phi_l^e_l."""

    exponents: dict[int, int] = field(default_factory=dict)
    p_power: int = 0
    unit: int = 1

    def __post_init__(self):
        if self.unit not in (1, -1):
            raise ValueError("unit must be +-1")
        if self.p_power < 0:
            raise ValueError("p_power must be nonnegative")
        self.exponents = {l: e for l, e in self.exponents.items() if e}
        if any(e < 0 for e in self.exponents.values()):
            raise ValueError("exponents must be nonnegative")

    @property
    def degree(self) -> int:
        return self.p_power + sum(totient(l) * e for l, e in self.exponents.items())

    def expand(self) -> PPoly:
        """Multiply the factorization out to a dense polynomial."""
        out = PPoly((self.unit,)).shift(self.p_power)
        for l in sorted(self.exponents):
            out = out * cyclotomic(l).pow(self.exponents[l])
        return out

    def value_at(self, p: int) -> int:
        v = self.unit * p**self.p_power
        for l, e in self.exponents.items():
            v *= cyclotomic_value(l, p) ** e
        return v


# ---------------------------------------------------------------------------
# Gaussian integers and factorials


def gauss_number(n: int) -> PPoly:
    """[n]_p = (p^n - 1)/(p - 1) = 1 + p + ... + p^(n-1)."""
    if n < 1:
        raise ValueError("gauss_number needs n >= 1")
    return PPoly((1,) * n)


_GAUSS_FACT: list[PPoly] = [PPoly((1,))]


def gauss_factorial(n: int) -> PPoly:
    """[n]_p! = prod_{v<=n} [v]_p, cached incrementally."""
    if n < 0:
        raise ValueError("gauss_factorial needs n >= 0")
    while len(_GAUSS_FACT) <= n:
        v = len(_GAUSS_FACT)
        _GAUSS_FACT.append(_GAUSS_FACT[-1] * gauss_number(v))
    return _GAUSS_FACT[n]


_CYCLO: dict[int, PPoly] = {}


def cyclotomic(l: int) -> PPoly:
    """The l-th cyclotomic polynomial Phi_l(p).

    Computed by exact division of p^l - 1 by the product of Phi_d over the
    proper divisors d of l; results are memoized.
    """
    if l < 1:
        raise ValueError("cyclotomic index must be positive")
    got = _CYCLO.get(l)
    if got is not None:
        return got
    if l == 1:
        phi = PPoly((-1, 1))
    else:
        lower = prod_ppoly(cyclotomic(d) for d in divisors(l)[:-1])
        quot, rem = PPoly.p_power_minus_one(l).divrem(lower)
        if not rem.is_zero():
            raise AssertionError(f"cyclotomic division left a remainder at l={l}")
        phi = quot
    _CYCLO[l] = phi
    return phi


@lru_cache(maxsize=None)
def cyclotomic_value(l: int, p: int) -> int:
    """Phi_l(p) as an exact integer, via the Moebius product over p^(l/d) - 1.

    Independent of the polynomial construction in cyclotomic(); the two are
    cross-checked in the test suite.
    """
    if l < 1:
        raise ValueError("cyclotomic index must be positive")
    if l == 1:
        return p - 1
    num, den = 1, 1
    for d in divisors(l):
        mu = mobius(d)
        if mu == 1:
            num *= p ** (l // d) - 1
        elif mu == -1:
            den *= p ** (l // d) - 1
    q, r = divmod(num, den)
    if r:
        raise AssertionError(f"Moebius product not integral at l={l}, p={p}")
    return q


def dnp(n: int) -> FactoredPPoly:
    """D_n(p) = prod_{l<=n} Phi_l(p), the common multiple of [1]_p .. [n]_p."""
    if n < 1:
        raise ValueError("dnp needs n >= 1")
    return FactoredPPoly({l: 1 for l in range(1, n + 1)})


def ord_phi_factorial(l: int, n: int) -> int:
    """ord_{Phi_l} [n]_p! = floor(n/l) for l >= 2.

    l = 1 is rejected: Phi_1 = p - 1 never divides a Gaussian factorial and
    its order is fixed at 0 by convention.
    """
    if l < 2:
        raise ValueError("ord_phi_factorial needs l >= 2")
    if n < 0:
        raise ValueError("n must be nonnegative")
    return n // l


def mertens_ratio(n: int, p: int) -> float:
    """log|D_n(p)| / (n^2 log|p|), the Mertens-type normalized size of D_n."""
    if n < 1 or abs(p) < 2:
        raise ValueError("need n >= 1 and |p| >= 2")
    total = 0.0
    for l in range(1, n + 1):
        v = abs(cyclotomic_value(l, p))
        if v > 1:
            total += math.log(v)
    return total / (n * n * math.log(abs(p)))


def phi_block_sum(n: int, p: int, u: Fraction, v: Fraction) -> float:
    """Normalized sum of log|Phi_l(p)| over l with {n/l} in [u, v).

    The index l is unbounded above in principle; {n/l} >= u > 0 forces
    l <= n/u, so the sum is finite.  Returns the sum divided by n^2 log|p|.
    """
    u, v = Fraction(u), Fraction(v)
    if not (0 < u < v <= 1):
        raise ValueError("need 0 < u < v <= 1")
    if n < 1 or abs(p) < 2:
        raise ValueError("need n >= 1 and |p| >= 2")
    total = 0.0
    for l in range(1, int(n / u) + 1):
        frac = Fraction(n % l, l)
        if u <= frac < v:
            val = abs(cyclotomic_value(l, p))
            if val > 1:
                total += math.log(val)
    return total / (n * n * math.log(abs(p)))


# ---------------------------------------------------------------------------
# trigamma


@dataclass
class Trigamma:
    """Certified trigamma value: float approximation with absolute error bound."""

    x: Fraction
    value: float
    abs_err: float
    exact: Fraction  # the rational approximant that `value` rounds

    def __post_init__(self):
        if self.abs_err > 1e-13:
            raise ValueError("trigamma certification exceeded 1e-13")


# Bernoulli numbers B_2 .. B_14 for the asymptotic series.
_BERNOULLI = (
    Fraction(1, 6),
    Fraction(-1, 30),
    Fraction(1, 42),
    Fraction(-1, 30),
    Fraction(5, 66),
    Fraction(-691, 2730),
    Fraction(7, 6),
)
_TRIGAMMA_SHIFT = 16
# |B_16| = 3617/510; first omitted term bounds the truncation error.
_B16 = Fraction(3617, 510)


def trigamma(x) -> Trigamma:
    """psi'(x) for rational x > 0.

    Upward recurrence psi'(x) = psi'(x+1) + 1/x^2 moves the argument to
    >= 16, where the Bernoulli asymptotic series is accurate far below the
    1e-13 certification; all arithmetic is exact until the final rounding.
    """
    x = Fraction(x)
    if x <= 0:
        raise ValueError("trigamma needs x > 0")
    if x < Fraction(1, 32):
        raise ValueError("x too small to certify 1e-13 absolute error in a float")
    shift = Fraction(0)
    y = x
    while y < _TRIGAMMA_SHIFT:
        shift += 1 / (y * y)
        y += 1
    inv = 1 / y
    inv2 = inv * inv
    acc = inv + inv2 / 2
    power = inv2 * inv
    for b in _BERNOULLI:
        acc += b * power
        power *= inv2
    exact = shift + acc
    trunc = _B16 * power  # first omitted term, power = y^-(17)
    value = float(exact)
    abs_err = float(trunc) + abs(value) * 2.0**-52
    return Trigamma(x=x, value=value, abs_err=abs_err, exact=exact)
