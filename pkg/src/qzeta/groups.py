"""Label permutations, their groups, and the cyclotomic correction factor.

The c-labels of a parameter tuple can be permuted by transformations of the
underlying series that leave the normalized quantity

    Q = F / prod_{j in S} [c_j]_q!        (S the factorial label set)

unchanged.  Maximizing cyclotomic orders of the factorial products over a
group of such permutations yields a polynomial factor Omega(p) that can be
divided out of the linear forms on top of the usual common denominator.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .dyadic import Interval
from .linforms import (
    LABELS_Z1,
    LABELS_Z2,
    CVector,
    ParamsZ1,
    ParamsZ2,
    cvector,
    numeric_form_value,
)
from .parith import FactoredPPoly


# --------------------------------------------------------------------------
# permutations of a label set


@dataclass(frozen=True)
class Perm:
    """Bijection of a label tuple; acts on c-vectors by (g·c)_j = c_{g(j)}."""

    labels: tuple[str, ...]
    images: tuple[str, ...]  # images[i] = g(labels[i])

    def __post_init__(self):
        if sorted(self.images) != sorted(self.labels):
            raise ValueError("not a bijection of the label set")

    @staticmethod
    def identity(labels: tuple[str, ...]) -> "Perm":
        return Perm(labels, labels)

    @staticmethod
    def from_cycles(labels: tuple[str, ...], cycles) -> "Perm":
        """Cycle (x1 x2 ... xk) maps x1 -> x2 -> ... -> xk -> x1."""
        mapping = {l: l for l in labels}
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                if a not in mapping:
                    raise ValueError(f"unknown label {a!r}")
                mapping[a] = b
        return Perm(labels, tuple(mapping[l] for l in labels))

    def __call__(self, label: str) -> str:
        return self.images[self.labels.index(label)]

    def apply(self, c: CVector) -> CVector:
        if c.labels != self.labels:
            raise ValueError("label sets differ")
        return CVector(c.kind, tuple(c[g] for g in self.images))

    def __mul__(self, other: "Perm") -> "Perm":
        """Composition acting as (g·h).apply(c) == g.apply(h.apply(c))."""
        if self.labels != other.labels:
            raise ValueError("label sets differ")
        return Perm(self.labels, tuple(other(self(l)) for l in self.labels))

    def inverse(self) -> "Perm":
        inv = {g: l for l, g in zip(self.labels, self.images)}
        return Perm(self.labels, tuple(inv[l] for l in self.labels))

    def order(self) -> int:
        power, n = self, 1
        ident = Perm.identity(self.labels)
        while power != ident:
            power, n = power * self, n + 1
        return n

    def cycles(self) -> tuple[tuple[str, ...], ...]:
        seen, out = set(), []
        for start in self.labels:
            if start in seen:
                continue
            cyc, cur = [], start
            while cur not in seen:
                seen.add(cur)
                cyc.append(cur)
                cur = self(cur)
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return tuple(out)

    def __repr__(self):
        cyc = self.cycles()
        return "Perm(id)" if not cyc else "Perm" + "".join(str(c) for c in cyc)


@dataclass(frozen=True)
class Group:
    """Closure of a generator list, in deterministic breadth-first order."""

    elements: tuple[Perm, ...]
    generators: tuple[Perm, ...]

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g: Perm) -> bool:
        return g in self.elements


def generate(generators) -> Group:
    generators = tuple(generators)
    if not generators:
        raise ValueError("need at least one generator")
    labels = generators[0].labels
    if any(g.labels != labels for g in generators):
        raise ValueError("generators act on different label sets")
    ident = Perm.identity(labels)
    seen = {ident.images}
    frontier = [ident]
    elements = [ident]
    while frontier:
        nxt = []
        for h in frontier:
            for g in generators:
                prod = g * h
                if prod.images not in seen:
                    seen.add(prod.images)
                    nxt.append(prod)
        nxt.sort(key=lambda p: p.images)
        elements.extend(nxt)
        frontier = nxt
    return Group(tuple(elements), generators)


# --------------------------------------------------------------------------
# the specific groups

TAU = Perm.from_cycles(LABELS_Z1, [("22", "21", "01", "11", "12", "00")])
SIGMA = Perm.from_cycles(LABELS_Z1, [("11", "21"), ("12", "22")])

# rows are indexed by the a-parameters, columns by (a_j, b2-a_j, b3-a_j)
_ROW12 = Perm.from_cycles(LABELS_Z2, [("11", "21"), ("12", "22"), ("13", "23")])
_ROW23 = Perm.from_cycles(LABELS_Z2, [("21", "31"), ("22", "32"), ("23", "33")])
_COLSWAP = Perm.from_cycles(LABELS_Z2, [("12", "13"), ("22", "23"), ("32", "33")])
_INVOL = Perm.from_cycles(LABELS_Z2, [("00", "22"), ("11", "33"), ("13", "31")])


def zeta1_group() -> Group:
    """⟨τ,σ⟩ of order 12: all label symmetries of the zeta_q(1) data."""
    return generate([TAU, SIGMA])


def zeta1_arith_group() -> Group:
    """⟨τ²,σ⟩ of order 6: the subgroup preserving the factorial weight."""
    return generate([TAU * TAU, SIGMA])


def zeta2_group() -> Group:
    """The order-120 symmetry group of the zeta_q(2) data."""
    return generate([_ROW12, _ROW23, _COLSWAP, _INVOL])


def tau_params(params: ParamsZ1) -> ParamsZ1:
    """(a0,a1,a2,b) -> (a1, b-a1, a0, a0+a2); the image may be inadmissible."""
    a0, a1, a2, b = params.as_tuple()
    return ParamsZ1(a1, b - a1, a0, a0 + a2)


def sigma_params(params: ParamsZ1) -> ParamsZ1:
    """(a0,a1,a2,b) -> (a0,a2,a1,b); always admissible with the input."""
    a0, a1, a2, b = params.as_tuple()
    return ParamsZ1(a0, a2, a1, b)


def params_from_cvector(c: CVector):
    """Invert a c-vector back to parameters; None if no tuple realizes it."""
    try:
        if c.kind == "zeta1":
            a2 = c["21"] + 1
            cand = ParamsZ1(c["01"] + 1, c["11"] + 1, a2, c["22"] + a2 + 1)
        else:
            a1 = c["11"] + 1
            cand = ParamsZ2(
                a1, c["21"] + 1, c["31"] + 1, c["12"] + a1 + 1, c["13"] + a1 + 1
            )
    except ValueError:
        return None
    return cand if cvector(cand, check=False).values == c.values else None


# --------------------------------------------------------------------------
# the arithmetic factor Omega


def nu_l(c: CVector, G: Group, l: int, base: tuple[str, ...] | None = None) -> int:
    """max over g of sum_{j in base}(floor(c_j/l) - floor((gc)_j/l)), l >= 2.

    `base` is the label set being normalized, the factorial labels by
    default; any orbit representative may be used instead.
    """
    if l < 2:
        raise ValueError("nu_l needs l >= 2 (the l = 1 order is fixed at 0)")
    S = c.factorial_labels() if base is None else base
    anchor = sum(c[j] // l for j in S)
    best = 0
    for g in G:
        moved = sum(c[g(j)] // l for j in S)
        if anchor - moved > best:
            best = anchor - moved
    return best


@dataclass(frozen=True)
class OmegaResult:
    omega: FactoredPPoly
    nu: dict[int, int]
    group_used: Group
    c: CVector


def omega(c: CVector, G: Group) -> OmegaResult:
    """Omega(p) = prod_{l=2}^m Phi_l(p)^{nu_l}; nu_1 = 0 by convention."""
    nu = {l: nu_l(c, G, l) for l in range(2, c.m + 1)}
    return OmegaResult(FactoredPPoly({l: e for l, e in nu.items() if e}), nu, G, c)


# --------------------------------------------------------------------------
# stability of the normalized series


def q_factorial_value(n: int, p: int) -> Fraction:
    """[n]_q! at q = 1/p, exactly."""
    if n < 0 or abs(p) < 2:
        raise ValueError("need n >= 0 and |p| >= 2")
    q = Fraction(1, p)
    out = Fraction(1)
    for k in range(1, n + 1):
        out *= (1 - q**k) / (1 - q)
    return out


_Q_CACHE: dict[tuple, Interval] = {}


def stable_quantity(params, p: int, terms: int = 120, prec: int = 320) -> Interval:
    """Certified enclosure of Q = F / prod_{j in S} [c_j]_q! at q = 1/p."""
    key = (params.as_tuple(), type(params).__name__, p, terms, prec)
    if key not in _Q_CACHE:
        enc, _ = numeric_form_value(params, p, terms=terms, prec=prec)
        cv = cvector(params)
        pi = Fraction(1)
        for j in cv.factorial_labels():
            pi *= q_factorial_value(cv[j], p)
        _Q_CACHE[key] = enc / Interval.exact(pi, prec)
    return _Q_CACHE[key]


@dataclass(frozen=True)
class StabilityResult:
    ok: bool
    width: Fraction
    image: object  # the image parameter tuple

    def __bool__(self) -> bool:
        return self.ok


def stability_check(
    params, g: Perm, p: int = 2, terms: int = 120, prec: int = 320
) -> StabilityResult:
    """Do the enclosures of Q(c) and Q(gc) overlap?  Exact-image arithmetic.

    Raises ValueError when g maps the parameters outside the admissible
    region (sweeps catch this and report the element as skipped).
    """
    image = params_from_cvector(g.apply(cvector(params)))
    if image is None or not image.admissible:
        raise ValueError(f"image of {params.as_tuple()} under {g} is not admissible")
    lhs = stable_quantity(params, p, terms, prec)
    rhs = stable_quantity(image, p, terms, prec)
    return StabilityResult(lhs.overlaps(rhs), max(lhs.width, rhs.width), image)


def stability_sweep(params, G: Group, p: int = 2, terms: int = 120, prec: int = 320):
    """stability_check across a whole group; inadmissible images are reported."""
    rows = []
    for g in G:
        try:
            res = stability_check(params, g, p, terms, prec)
        except ValueError:
            rows.append({"g": repr(g), "status": "skipped (inadmissible image)"})
        else:
            rows.append(
                {
                    "g": repr(g),
                    "status": "ok" if res.ok else "UNSTABLE",
                    "width": res.width,
                    "image": res.image.as_tuple(),
                }
            )
    return rows
