"""Exact integer polynomial algebra.

Dense univariate polynomials over the integers, subresultant gcd, Sturm
sequences, Descartes counting, and the trinomial machinery used to pin down
minimal polynomials of Perron roots of ``x^n - x^b - x^a``.

Nothing in this module touches floating point.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator

from .errors import AlgebraError, ContractError, InputError

Rational = Fraction | int


class IntPolynomial:
    """Immutable polynomial with arbitrary-precision integer coefficients.

    ``coeffs[i]`` is the coefficient of ``x**i``. Trailing zeros are stripped,
    so the zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[int, ...] = tuple(c)
        self._hash = hash(self.coeffs)

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "IntPolynomial":
        if degree < 0:
            raise InputError(f"negative degree {degree}")
        return cls([0] * degree + [coeff])

    @classmethod
    def from_terms(cls, terms: dict[int, int] | Iterable[tuple[int, int]]) -> "IntPolynomial":
        """Build from ``{degree: coeff}``; repeated degrees are summed."""
        items = terms.items() if isinstance(terms, dict) else terms
        items = list(items)
        if not items:
            return cls()
        c = [0] * (max(d for d, _ in items) + 1)
        for d, v in items:
            if d < 0:
                raise InputError(f"negative degree {d}")
            c[d] += v
        return cls(c)

    # -- basic accessors -------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def terms(self) -> list[tuple[int, int]]:
        """Nonzero ``(degree, coeff)`` pairs, lowest degree first."""
        return [(i, c) for i, c in enumerate(self.coeffs) if c]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, IntPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == IntPolynomial([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self.coeffs)!r})"

    def __str__(self) -> str:
        return format_polynomial(self)

    # -- ring operations -------------------------------------------------

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(-c for c in self.coeffs)

    def __add__(self, other: "IntPolynomial | int") -> "IntPolynomial":
        other = _coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPolynomial(out)

    __radd__ = __add__

    def __sub__(self, other: "IntPolynomial | int") -> "IntPolynomial":
        return self + (-_coerce(other))

    def __rsub__(self, other: "IntPolynomial | int") -> "IntPolynomial":
        return _coerce(other) - self

    def __mul__(self, other: "IntPolynomial | int") -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial(c * other for c in self.coeffs)
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        bt = other.terms()
        for i, a in self.terms():
            for j, b in bt:
                out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "IntPolynomial":
        if e < 0:
            raise InputError("negative exponent")
        result, base = IntPolynomial([1]), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def shift(self, k: int) -> "IntPolynomial":
        """Multiply by ``x**k``."""
        if not self.coeffs:
            return self
        return IntPolynomial([0] * k + list(self.coeffs))

    def compose_power(self, d: int) -> "IntPolynomial":
        """Substitute ``x -> x**d``."""
        if d < 1:
            raise InputError(f"compose_power needs d >= 1, got {d}")
        if d == 1 or not self.coeffs:
            return self
        out = [0] * (self.degree * d + 1)
        for i, c in self.terms():
            out[i * d] = c
        return IntPolynomial(out)

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = math.gcd(g, c)
        return g

    def primitive(self) -> "IntPolynomial":
        """Divide by the content and make the leading coefficient positive."""
        if not self.coeffs:
            return self
        g = self.content()
        if self.leading < 0:
            g = -g
        return IntPolynomial(c // g for c in self.coeffs)

    def strip_x(self) -> tuple[int, "IntPolynomial"]:
        """Split off the largest power of ``x``: returns ``(k, q)`` with ``self = x**k * q``."""
        k = 0
        while k < len(self.coeffs) and self.coeffs[k] == 0:
            k += 1
        return k, IntPolynomial(self.coeffs[k:])

    # -- evaluation ------------------------------------------------------

    def __call__(self, x: Rational) -> Fraction:
        return Fraction(self.scaled_value(x), 1) / Fraction(x).denominator ** max(self.degree, 0)

    def scaled_value(self, x: Rational) -> int:
        """``q**deg * p(r/q)`` for ``x = r/q`` (``q > 0``); same sign as ``p(x)``."""
        x = Fraction(x)
        num, den = x.numerator, x.denominator
        deg = self.degree
        if deg < 0:
            return 0
        if den == 1:
            return sum(c * num**i for i, c in self.terms())
        if den & (den - 1) == 0:
            shift = den.bit_length() - 1
            return sum((c * num**i) << (shift * (deg - i)) for i, c in self.terms())
        return sum(c * num**i * den ** (deg - i) for i, c in self.terms())

    def sign_at(self, x: Rational) -> int:
        v = self.scaled_value(x)
        return (v > 0) - (v < 0)

    # -- serialization ---------------------------------------------------

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Iterable[str | int]) -> "IntPolynomial":
        try:
            return cls(int(v) for v in data)
        except (TypeError, ValueError) as exc:
            raise InputError(f"bad polynomial coefficients: {data!r}") from exc


def _coerce(p: IntPolynomial | int) -> IntPolynomial:
    if isinstance(p, IntPolynomial):
        return p
    if isinstance(p, int):
        return IntPolynomial([p])
    raise TypeError(f"cannot use {type(p).__name__} as a polynomial")


X = IntPolynomial([0, 1])
ONE = IntPolynomial([1])


def format_polynomial(p: IntPolynomial) -> str:
    """Human-readable form, highest degree first: ``x^5 - x^4 - 1``."""
    if not p.coeffs:
        return "0"
    parts: list[str] = []
    for i, c in reversed(p.terms()):
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            mono = "x" if i == 1 else f"x^{i}"
            body = mono if mag == 1 else f"{mag} {mono}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts)


# ---------------------------------------------------------------------------
# Division and gcd
# ---------------------------------------------------------------------------


def exact_divide(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    """Quotient ``p / q`` in Z[x]; raises :class:`AlgebraError` when ``q`` does not divide ``p``."""
    if q.is_zero():
        raise InputError("division by the zero polynomial")
    if p.is_zero():
        return p
    if p.degree < q.degree:
        raise AlgebraError(f"{q} does not divide {p}")
    rem = list(p.coeffs)
    lq, dq = q.leading, q.degree
    low_terms = [(j, c) for j, c in q.terms() if j < dq]
    quot = [0] * (p.degree - dq + 1)
    for k in range(p.degree - dq, -1, -1):
        top = rem[k + dq]
        if top == 0:
            continue
        t, r = divmod(top, lq)
        if r:
            raise AlgebraError(f"{q} does not divide {p} over the integers")
        quot[k] = t
        rem[k + dq] = 0
        for j, c in low_terms:
            rem[k + j] -= t * c
    if any(rem):
        raise AlgebraError(f"{q} does not divide {p}: nonzero remainder")
    return IntPolynomial(quot)


def pseudo_remainder(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    """``prem(p, q) = lc(q)**(deg p - deg q + 1) * p mod q``, computed over Z."""
    if q.is_zero():
        raise InputError("pseudo-remainder by the zero polynomial")
    dq = q.degree
    if p.degree < dq:
        return p
    delta = p.degree - dq
    lq = q.leading
    q_low = [(j, c) for j, c in q.terms() if j < dq]
    rem = list(p.coeffs)
    # delta + 1 steps, each scaling the running remainder by lq once
    for k in range(dq + delta, dq - 1, -1):
        top = rem[k]
        rem[k] = 0
        for i in range(k):
            rem[i] *= lq
        if top:
            for j, c in q_low:
                rem[k - dq + j] -= top * c
    return IntPolynomial(rem[:dq])


def primitive_gcd(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    """Primitive gcd with positive leading coefficient (subresultant PRS)."""
    if p.is_zero() and q.is_zero():
        raise InputError("gcd(0, 0) is undefined")
    if p.is_zero():
        return q.primitive()
    if q.is_zero():
        return p.primitive()
    a, b = p.primitive(), q.primitive()
    if a.degree < b.degree:
        a, b = b, a
    if b.degree == 0:
        return ONE
    g = h = 1
    while True:
        delta = a.degree - b.degree
        r = pseudo_remainder(a, b)
        if r.is_zero():
            break
        if r.degree == 0:
            return ONE
        divisor = g * h**delta
        a, b = b, IntPolynomial(c // divisor for c in r.coeffs)
        g = a.leading
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = g**delta // h ** (delta - 1)
    return b.primitive()


def squarefree_part(p: IntPolynomial) -> IntPolynomial:
    """Primitive square-free part ``p / gcd(p, p')``."""
    if p.is_zero():
        raise InputError("square-free part of the zero polynomial")
    if p.degree <= 0:
        return ONE
    g = primitive_gcd(p, p.derivative())
    return exact_divide(p.primitive(), g).primitive() if g.degree > 0 else p.primitive()


# ---------------------------------------------------------------------------
# Real root counting
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RationalInterval:
    """Exact interval with endpoints ``lo <= hi``.

    A proper interval (``lo < hi``) stands for the half-open set ``(lo, hi]``;
    a degenerate one (``lo == hi``) stands for the single point ``lo``. Both
    readings contain a root isolated by either bisection or an exact hit.
    """

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise InputError(f"interval with lo > hi: [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, v: Rational) -> "RationalInterval":
        return cls(Fraction(v), Fraction(v))

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, v: Rational) -> bool:
        if self.is_point:
            return v == self.lo
        return self.lo < v <= self.hi

    def intersect(self, other: "RationalInterval") -> "RationalInterval | None":
        if self.is_point:
            return self if other.contains(self.lo) else None
        if other.is_point:
            return other if self.contains(other.lo) else None
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        if lo >= hi:
            return None
        return RationalInterval(lo, hi)

    def strictly_below(self, other: "RationalInterval") -> bool:
        """True when every point of ``self`` is smaller than every point of ``other``."""
        if self.hi < other.lo:
            return True
        return self.hi == other.lo and not other.is_point

    def to_json(self) -> dict[str, str]:
        return {"lo": fraction_to_str(self.lo), "hi": fraction_to_str(self.hi)}

    @classmethod
    def from_json(cls, data: dict) -> "RationalInterval":
        return cls(parse_fraction(data["lo"]), parse_fraction(data["hi"]))

    def __str__(self) -> str:
        if self.is_point:
            return f"[{fraction_to_str(self.lo)}]"
        return f"({fraction_to_str(self.lo)}, {fraction_to_str(self.hi)}]"


def fraction_to_str(v: Fraction) -> str:
    v = Fraction(v)
    return f"{v.numerator}/{v.denominator}"


def parse_fraction(s: str | int) -> Fraction:
    try:
        return Fraction(s)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad rational {s!r}") from exc


def descartes_sign_changes(p: IntPolynomial) -> int:
    """Sign changes in the nonzero coefficient sequence."""
    if p.is_zero():
        raise InputError("Descartes' rule is undefined for the zero polynomial")
    signs = [c > 0 for c in p.coeffs if c]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def cauchy_bound(p: IntPolynomial) -> Fraction:
    """``1 + max|c_i| / |c_deg|``: every complex root has modulus below it."""
    if p.degree < 1:
        return Fraction(1)
    lc = abs(p.leading)
    return 1 + Fraction(max(abs(c) for c in p.coeffs[:-1]), lc)


@lru_cache(maxsize=4096)
def sturm_sequence(p: IntPolynomial) -> tuple[IntPolynomial, ...]:
    """Sturm sequence of the square-free part of ``p``.

    Successive terms are negated pseudo-remainders rescaled by positive
    constants, so sign variations are exactly those of the classical sequence.
    """
    s0 = squarefree_part(p)
    if s0.degree <= 0:
        return (s0,)
    seq = [s0, s0.derivative()]
    while seq[-1].degree > 0:
        a, b = seq[-2], seq[-1]
        r = pseudo_remainder(a, b)
        if r.is_zero():
            break
        delta = a.degree - b.degree
        if b.leading < 0 and (delta + 1) % 2 == 1:
            r = -r
        g = r.content()
        seq.append(IntPolynomial(-c // g for c in r.coeffs))
    return tuple(seq)


def _variations(seq: tuple[IntPolynomial, ...], x: Fraction) -> int:
    count, last = 0, 0
    for q in seq:
        s = q.sign_at(x)
        if s:
            if last and s != last:
                count += 1
            last = s
    return count


def sturm_count(p: IntPolynomial, interval: RationalInterval) -> int:
    """Number of distinct real roots of ``p`` in ``(lo, hi]`` (or at the point, if degenerate)."""
    if p.is_zero():
        raise InputError("sturm_count of the zero polynomial")
    if interval.is_point:
        return 1 if p.sign_at(interval.lo) == 0 else 0
    seq = sturm_sequence(p)
    return _variations(seq, interval.lo) - _variations(seq, interval.hi)


def unique_positive_root_certified(p: IntPolynomial) -> bool:
    """Descartes' rule with exactly one sign change proves a unique positive root."""
    return not p.is_zero() and descartes_sign_changes(p) == 1


# ---------------------------------------------------------------------------
# Trinomials and minimal polynomials of Perron roots
# ---------------------------------------------------------------------------

H_POLY = IntPolynomial([1, -1, 1])  # x^2 - x + 1


def trinomial(k: int, m: int) -> IntPolynomial:
    """``f_{k,m}(x) = x^k - x^m - 1``."""
    if not k > m > 0:
        raise InputError(f"trinomial needs k > m > 0, got k={k}, m={m}")
    return IntPolynomial.from_terms({k: 1, m: -1, 0: -1})


def h_power(d: int) -> IntPolynomial:
    """``h(x^d) = x^{2d} - x^d + 1``."""
    return H_POLY.compose_power(d)


@dataclass(frozen=True)
class TrinomialFactorization:
    k: int
    m: int
    d: int
    k1: int
    m1: int
    cofactor: IntPolynomial | None = None

    @property
    def irreducible(self) -> bool:
        return self.cofactor is None

    @property
    def polynomial(self) -> IntPolynomial:
        return trinomial(self.k, self.m)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "m": self.m,
            "d": self.d,
            "k1": self.k1,
            "m1": self.m1,
            "outcome": "Irreducible" if self.irreducible else "Factored",
            "cofactor": None if self.cofactor is None else self.cofactor.to_json(),
        }


def trinomial_is_reducible(k: int, m: int) -> bool:
    """The divisibility criterion on ``(k/d, m/d)``, ``d = gcd(k, m)``."""
    d = math.gcd(k, m)
    k1, m1 = k // d, m // d
    return (k1 + m1) % 3 == 0 and m1 % 2 == 0


@lru_cache(maxsize=65536)
def factor_trinomial(k: int, m: int) -> TrinomialFactorization:
    """Factor ``x^k - x^m - 1`` as ``h(x^d) * cofactor`` or report it irreducible."""
    if not (isinstance(k, int) and isinstance(m, int)) or not k > m > 0:
        raise InputError(f"factor_trinomial needs integers k > m > 0, got k={k!r}, m={m!r}")
    d = math.gcd(k, m)
    k1, m1 = k // d, m // d
    if not trinomial_is_reducible(k, m):
        return TrinomialFactorization(k, m, d, k1, m1)
    cofactor = exact_divide(trinomial(k, m), h_power(d))
    return TrinomialFactorization(k, m, d, k1, m1, cofactor)


def theta_polynomial(n: int, a: int, b: int) -> IntPolynomial:
    """``x^n - x^b - x^a``."""
    return IntPolynomial.from_terms([(n, 1), (b, -1), (a, -1)])


def _check_theta_triple(n: int, a: int, b: int) -> None:
    if not (n > b >= a >= 0 and n >= a + b + 2):
        raise InputError(f"need n > b >= a >= 0 and n >= a + b + 2, got n={n}, a={a}, b={b}")


def min_poly_perron(n: int, a: int, b: int, check: bool = True) -> IntPolynomial:
    """Minimal polynomial over Q of the positive root of ``x^n - x^b - x^a``.

    With ``check`` the result is confirmed to divide the input polynomial and
    to have exactly one real root above 1.
    """
    _check_theta_triple(n, a, b)
    if a == b:
        result = IntPolynomial.from_terms({n - a: 1, 0: -2})
    else:
        fac = factor_trinomial(n - a, b - a)
        result = fac.polynomial if fac.irreducible else fac.cofactor
    if check:
        exact_divide(theta_polynomial(n, a, b), result)
        if sturm_count(result, RationalInterval(1, cauchy_bound(result))) != 1:
            raise ContractError(f"{result} does not have exactly one real root above 1")
    return result


def _roots_above_one(p: IntPolynomial) -> tuple[int, Fraction]:
    bound = max(cauchy_bound(p), Fraction(2))
    k, q = p.strip_x()
    if unique_positive_root_certified(q):
        s = q.sign_at(1) * (1 if q.leading > 0 else -1)
        return (1 if s < 0 else 0), bound
    return sturm_count(p, RationalInterval(1, bound)), bound


def perron_roots_equal(p: IntPolynomial, q: IntPolynomial) -> bool:
    """Do the unique real roots above 1 of ``p`` and ``q`` coincide?

    Raises :class:`ContractError` if either polynomial does not have exactly
    one real root greater than 1.
    """
    bounds = []
    for name, poly in (("p", p), ("q", q)):
        if poly.is_zero():
            raise ContractError(f"{name} is the zero polynomial")
        count, bound = _roots_above_one(poly)
        if count != 1:
            raise ContractError(
                f"{name} = {poly} has {count} real roots above 1; exactly one is required"
            )
        bounds.append(bound)
    g = primitive_gcd(p, q)
    if g.degree < 1:
        return False
    return sturm_count(g, RationalInterval(1, max(bounds))) >= 1


def iter_theta_pairs(n: int) -> Iterator[tuple[int, int]]:
    """All ``(a, b)`` with ``n > b >= a >= 0`` and ``n >= a + b + 2``."""
    for a in range(0, n):
        for b in range(a, n):
            if a + b + 2 <= n:
                yield a, b
