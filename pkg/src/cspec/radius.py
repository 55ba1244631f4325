"""Certified spectral radii.

A spectral radius is carried as an :class:`AlgebraicRadius`: a square-free
integer polynomial plus a rational interval isolating exactly one of its
real roots. Comparisons are decided exactly; numeric closeness never
produces ``Equal``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .digraph import Digraph, is_strongly_connected
from .errors import AlgebraError, CapabilityError, ContractError, InternalError
from .exactpoly import (
    IntPolynomial,
    RationalInterval,
    cauchy_bound,
    descartes_sign_changes,
    exact_divide,
    fraction_to_str,
    parse_fraction,
    primitive_gcd,
    squarefree_part,
    sturm_count,
)

CHAR_POLY_LIMIT = 64
DEFAULT_WIDTH = Fraction(1, 2**40)


class Order(enum.Enum):
    LESS = "Less"
    EQUAL = "Equal"
    GREATER = "Greater"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class AlgebraicRadius:
    """A nonnegative real algebraic number given by ``(defining_poly, isolating)``.

    ``sturm_count(defining_poly, isolating) == 1`` always holds. Rational
    values, in particular 0 and 1, are stored canonically as ``x - c`` with a
    point interval.
    """

    defining_poly: IntPolynomial
    isolating: RationalInterval
    approx: float = field(default=math.nan, compare=False)

    @classmethod
    def rational(cls, value: Fraction | int) -> "AlgebraicRadius":
        v = Fraction(value)
        return cls(IntPolynomial([-v.numerator, v.denominator]), RationalInterval.point(v), float(v))

    @classmethod
    def zero(cls) -> "AlgebraicRadius":
        return cls.rational(0)

    @classmethod
    def one(cls) -> "AlgebraicRadius":
        return cls.rational(1)

    @property
    def is_exact(self) -> bool:
        return self.isolating.is_point

    @property
    def exact_value(self) -> Fraction | None:
        return self.isolating.lo if self.isolating.is_point else None

    def refined(self, width: Fraction) -> "AlgebraicRadius":
        if self.isolating.is_point or self.isolating.width <= width:
            return self
        iv = refine_root(self.defining_poly, self.isolating, width, check=False)
        if iv.is_point:
            return AlgebraicRadius.rational(iv.lo)
        return AlgebraicRadius(self.defining_poly, iv, float(iv.midpoint))

    def __float__(self) -> float:
        return self.approx

    def to_json(self) -> dict:
        out = {"poly": self.defining_poly.to_json()}
        out.update(self.isolating.to_json())
        out["approx"] = format(self.approx, ".17g")
        return out

    @classmethod
    def from_json(cls, data: dict) -> "AlgebraicRadius":
        iv = RationalInterval(parse_fraction(data["lo"]), parse_fraction(data["hi"]))
        approx = float(data.get("approx", float(iv.midpoint)))
        return cls(IntPolynomial.from_json(data["poly"]), iv, approx)

    def __str__(self) -> str:
        if self.isolating.is_point:
            return fraction_to_str(self.isolating.lo).removesuffix("/1")
        return f"≈{self.approx:.12g} (root of {self.defining_poly} in {self.isolating})"


# ---------------------------------------------------------------------------
# Characteristic polynomials
# ---------------------------------------------------------------------------


def char_poly(d: Digraph, max_n: int | None = CHAR_POLY_LIMIT) -> IntPolynomial:
    """``det(xI - A(D))`` by the Faddeev-LeVerrier recursion in exact integers.

    Multiplication by the 0/1 adjacency matrix is a sum of successor rows, so a
    step costs O(m n) integer additions.
    """
    n = d.n
    if max_n is not None and n > max_n:
        raise CapabilityError(f"characteristic polynomial limited to n <= {max_n}, got {n}")
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    succ = d.succ
    m = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        am = []
        for i in range(n):
            row = [0] * n
            for j in succ[i]:
                mj = m[j]
                for t in range(n):
                    row[t] += mj[t]
            am.append(row)
        c = coeffs[n - k + 1]
        for i in range(n):
            am[i][i] += c
        m = am
        trace = 0
        for i in range(n):
            for j in succ[i]:
                trace += m[j][i]
        q, r = divmod(-trace, k)
        if r:
            raise InternalError("non-integral Faddeev-LeVerrier coefficient")
        coeffs[n - k] = q
    return IntPolynomial(coeffs)


# ---------------------------------------------------------------------------
# Root isolation and refinement
# ---------------------------------------------------------------------------


def refine_root(
    p: IntPolynomial, interval: RationalInterval, width: Fraction, check: bool = True
) -> RationalInterval:
    """Bisect an isolating interval of ``p`` down to ``width`` using exact signs."""
    if interval.is_point:
        if p.sign_at(interval.lo) != 0:
            raise ContractError(f"{interval} is not a root of {p}")
        return interval
    if check and sturm_count(p, interval) != 1:
        raise ContractError(f"{interval} does not isolate a single root of {p}")
    q = squarefree_part(p)
    lo, hi = interval.lo, interval.hi
    s_hi = q.sign_at(hi)
    if s_hi == 0:
        return RationalInterval.point(hi)
    width = Fraction(width)
    while hi - lo > width:
        mid = (lo + hi) / 2
        s = q.sign_at(mid)
        if s == 0:
            return RationalInterval.point(mid)
        if s == s_hi:
            hi = mid
        else:
            lo = mid
    return RationalInterval(lo, hi)


def _float_value(q: IntPolynomial, x: float) -> float:
    deg = q.degree
    if x >= 1.0:
        return sum(float(c) * x ** (i - deg) for i, c in q.terms())
    return sum(float(c) * x**i for i, c in q.terms())


def _float_positive_root(q: IntPolynomial, upper: float) -> float:
    """Float bisection for the unique positive root of ``q``."""
    lo, hi = 0.0, upper
    s_hi = 1.0 if q.leading > 0 else -1.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        v = _float_value(q, mid)
        if v == 0.0:
            return mid
        if (v > 0) == (s_hi > 0):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def _dyadic_floor(x: float, bits: int) -> Fraction:
    return Fraction(math.floor(x * 2**bits), 2**bits)


def isolate_unique_positive_root(q: IntPolynomial) -> RationalInterval:
    """Isolating interval for the positive root of ``q``, which must have one Descartes sign change.

    A float estimate proposes a short dyadic interval, and exact sign
    evaluation at both ends certifies it; exact bisection is the fallback.
    """
    if descartes_sign_changes(q) != 1:
        raise ContractError(f"{q} does not have exactly one Descartes sign change")
    _, q = q.strip_x()
    s_after = 1 if q.leading > 0 else -1
    bound = cauchy_bound(q)
    try:
        x = _float_positive_root(q, float(bound))
        if x > 0 and math.isfinite(x):
            bits = 44 - math.frexp(x)[1]
            step = Fraction(1, 2**bits)
            base = _dyadic_floor(x, bits)
            lo, hi = base - 4 * step, base + 5 * step
            if lo > 0:
                s_lo, s_hi = q.sign_at(lo), q.sign_at(hi)
                if s_lo == -s_after and s_hi in (0, s_after):
                    if s_hi == 0:
                        return RationalInterval.point(hi)
                    return RationalInterval(lo, hi)
    except OverflowError:
        pass
    iv = RationalInterval(0, bound)
    return refine_root(q, iv, DEFAULT_WIDTH, check=False)


def _isolate_largest_sturm(q: IntPolynomial) -> RationalInterval | None:
    bound = cauchy_bound(q)
    lo, hi = Fraction(0), bound
    count = sturm_count(q, RationalInterval(lo, hi))
    if count == 0:
        return None
    while count > 1:
        mid = (lo + hi) / 2
        upper = sturm_count(q, RationalInterval(mid, hi))
        if upper >= 1:
            lo, count = mid, upper
        else:
            hi = mid
    return RationalInterval(lo, hi)


def _finalize(q: IntPolynomial, iv: RationalInterval, width: Fraction) -> AlgebraicRadius:
    if not iv.is_point:
        iv = refine_root(q, iv, width, check=False)
    if iv.is_point:
        return AlgebraicRadius.rational(iv.lo)
    # the monic case: any rational root is an integer; at most one fits in a narrow interval
    c = math.floor(iv.hi)
    if iv.contains(c) and q.sign_at(c) == 0:
        return AlgebraicRadius.rational(c)
    return AlgebraicRadius(q, iv, float(iv.midpoint))


@lru_cache(maxsize=65536)
def perron_root(p: IntPolynomial, width: Fraction = DEFAULT_WIDTH) -> AlgebraicRadius:
    """Largest nonnegative real root of ``p``, the spectral radius when ``p`` is the
    characteristic polynomial of a nonnegative matrix."""
    if p.is_zero():
        raise ContractError("the zero polynomial has no Perron root")
    k, q = p.strip_x()
    if q.degree >= 1:
        q = squarefree_part(q)
    changes = descartes_sign_changes(q) if q.degree >= 1 else 0
    if changes == 1:
        return _finalize(q, isolate_unique_positive_root(q), width)
    if changes > 1:
        iv = _isolate_largest_sturm(q)
        if iv is not None:
            return _finalize(q, iv, width)
    if k > 0:
        return AlgebraicRadius.zero()
    raise ContractError(f"{p} has no nonnegative real root")


def spectral_radius(d: Digraph, crosscheck: bool = True, max_n: int | None = CHAR_POLY_LIMIT) -> AlgebraicRadius:
    """ρ(D) as the largest real root of the characteristic polynomial.

    With ``crosscheck``, the Sturm-certified interval of a strongly connected
    digraph is tested against a Collatz-Wielandt enclosure.
    """
    if d.n == 0:
        return AlgebraicRadius.zero()
    rho = perron_root(char_poly(d, max_n))
    if crosscheck and d.n >= 2 and is_strongly_connected(d):
        cw = collatz_wielandt_interval(d, iterations=16)
        if cw.intersect(rho.isolating) is None and not _touches(cw, rho.isolating):
            raise InternalError(f"Collatz-Wielandt {cw} misses Sturm interval {rho.isolating}")
    return rho


def _touches(a: RationalInterval, b: RationalInterval) -> bool:
    # closed-interval intersection, for enclosures whose endpoints may be attained
    return a.lo <= b.hi and b.lo <= a.hi


def collatz_wielandt_interval(d: Digraph, iterations: int = 64) -> RationalInterval:
    """Enclosure ``[min (Ax)_i/x_i, max (Ax)_i/x_i]`` of ρ for the iterated positive vector ``x``.

    ``x`` evolves by ``x <- x + A x`` (the lazy walk, which is primitive for any
    strongly connected digraph), is trimmed to bounded bit length, and the
    intersection of all enclosures seen is returned.
    """
    if d.n == 1:
        return RationalInterval.point(0)
    if not is_strongly_connected(d):
        raise ContractError("Collatz-Wielandt bounds need a strongly connected digraph")
    succ = d.succ
    n = d.n
    x = [1] * n
    lo: Fraction | None = None
    hi: Fraction | None = None
    for _ in range(max(iterations, 0) + 1):
        y = [sum(x[j] for j in succ[i]) for i in range(n)]
        ratios = [Fraction(y[i], x[i]) for i in range(n)]
        l, h = min(ratios), max(ratios)
        lo = l if lo is None else max(lo, l)
        hi = h if hi is None else min(hi, h)
        if lo >= hi:
            break
        x = [x[i] + y[i] for i in range(n)]
        top = max(x).bit_length()
        if top > 320:
            s = top - 256
            x = [(v >> s) + 1 for v in x]
    if lo > hi:
        raise InternalError("empty Collatz-Wielandt intersection")
    return RationalInterval(lo, hi)


# ---------------------------------------------------------------------------
# Exact comparison
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ComparisonCertificate:
    order: Order
    left: AlgebraicRadius
    right: AlgebraicRadius
    common_factor: IntPolynomial | None = None
    overlap: RationalInterval | None = None

    def to_json(self) -> dict:
        out = {
            "order": self.order.value,
            "left": self.left.to_json(),
            "right": self.right.to_json(),
        }
        if self.common_factor is not None:
            out["common_factor"] = self.common_factor.to_json()
            out["overlap"] = self.overlap.to_json()
        return out


def certify_comparison(a: AlgebraicRadius, b: AlgebraicRadius) -> ComparisonCertificate:
    """Decide ``a`` vs ``b`` exactly.

    Intervals are bisected until disjoint. Before refining, one gcd test
    settles equality: the roots coincide iff the gcd of the defining
    polynomials has a root in the overlap of the isolating intervals.
    """
    if a.isolating.is_point and b.isolating.is_point:
        x, y = a.isolating.lo, b.isolating.lo
        order = Order.LESS if x < y else Order.GREATER if x > y else Order.EQUAL
        return ComparisonCertificate(order, a, b)
    gcd_tested = False
    while True:
        if a.isolating.strictly_below(b.isolating):
            return ComparisonCertificate(Order.LESS, a, b)
        if b.isolating.strictly_below(a.isolating):
            return ComparisonCertificate(Order.GREATER, a, b)
        overlap = a.isolating.intersect(b.isolating)
        if overlap is None:
            raise InternalError(f"intervals neither overlap nor separate: {a.isolating}, {b.isolating}")
        if not gcd_tested:
            gcd_tested = True
            g = primitive_gcd(a.defining_poly, b.defining_poly)
            if g.degree >= 1 and sturm_count(g, overlap) >= 1:
                return ComparisonCertificate(Order.EQUAL, a, b, g, overlap)
        a = a.refined(a.isolating.width / 4)
        b = b.refined(b.isolating.width / 4)


def compare_radii(a: AlgebraicRadius, b: AlgebraicRadius) -> Order:
    return certify_comparison(a, b).order


def check_isolation(poly: IntPolynomial, interval: RationalInterval) -> bool:
    """Independent re-check that ``interval`` isolates exactly one root of ``poly``."""
    if interval.is_point:
        return poly.sign_at(interval.lo) == 0
    if interval.lo >= 0 and descartes_sign_changes(poly) == 1:
        # unique positive root: a strict sign change across the interval pins it
        _, q = poly.strip_x()
        s_lo, s_hi = q.sign_at(interval.lo), q.sign_at(interval.hi)
        if s_lo != 0 and (s_hi == 0 or s_hi == -s_lo):
            return True
    return sturm_count(poly, interval) == 1


def check_comparison(cert: dict) -> bool:
    """Re-validate a serialized :class:`ComparisonCertificate` without re-searching."""
    left = AlgebraicRadius.from_json(cert["left"])
    right = AlgebraicRadius.from_json(cert["right"])
    if not (check_isolation(left.defining_poly, left.isolating) and check_isolation(right.defining_poly, right.isolating)):
        return False
    order = cert["order"]
    if order == Order.LESS.value:
        return left.isolating.strictly_below(right.isolating)
    if order == Order.GREATER.value:
        return right.isolating.strictly_below(left.isolating)
    if left.isolating.is_point and right.isolating.is_point:
        return left.isolating.lo == right.isolating.lo
    g = IntPolynomial.from_json(cert["common_factor"])
    overlap = RationalInterval.from_json(cert["overlap"])
    try:
        exact_divide(left.defining_poly, g)
        exact_divide(right.defining_poly, g)
    except AlgebraError:
        return False
    return (
        left.isolating.intersect(right.isolating) is not None
        and sturm_count(g, overlap) >= 1
        and overlap.intersect(left.isolating) == overlap
        and overlap.intersect(right.isolating) == overlap
    )
