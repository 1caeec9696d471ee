"""Truncated Laurent series over prime fields and the discriminant factor.

A series is t^lead * (unit known to `precision` terms); `precision=None` means
the series is an exact Laurent polynomial (all unwritten coefficients are
zero).  Arithmetic tracks precision pessimistically.  A zero result remembers
only the order up to which it is known to vanish: asking for its valuation
raises, because an undetected cancellation has unbounded valuation.

The absolute value is normalized by |t| = p^{-1}; half-integer powers arising
from the discriminant factor are kept exact as a base with a rational
exponent.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import NotStronglyRegular, PrecisionInsufficient, ZeroWithinPrecision
from .rootdata import RootDatum

DEFAULT_PRECISION = 32


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class LaurentSeries:
    """An element of F_p((t)) known to finite (or exact) precision."""

    __slots__ = ("p", "lead", "coeffs", "precision")

    def __init__(self, p: int, lead: int, coeffs: Sequence[int], precision: int | None = None):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        coeffs = [c % p for c in coeffs]
        # strip leading zeros, adjusting the lead exponent and precision
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
            lead += 1
            if precision is not None:
                precision -= 1
        if precision is None:
            # exact: trailing zeros carry no information
            while coeffs and coeffs[-1] == 0:
                coeffs.pop()
        else:
            precision = max(precision, 0)
            coeffs = coeffs[:precision]
        if not coeffs:
            # for an inexact zero, `lead` marks the order up to which the
            # series is known to vanish; an exact zero resets it
            if precision is None:
                lead = 0
            precision = None if precision is None else 0
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "lead", lead)
        object.__setattr__(self, "coeffs", tuple(coeffs))
        object.__setattr__(self, "precision", precision)

    def __setattr__(self, *a):
        raise AttributeError("LaurentSeries is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, p: int, known_order: int | None = None) -> "LaurentSeries":
        """The zero series; `known_order` bounds where a hidden term could hide."""
        if known_order is None:
            return cls(p, 0, [])
        return cls(p, known_order, [], precision=0)

    @classmethod
    def constant(cls, p: int, c: int) -> "LaurentSeries":
        return cls(p, 0, [c])

    @classmethod
    def t_power(cls, p: int, k: int) -> "LaurentSeries":
        return cls(p, k, [1])

    def is_zero_like(self) -> bool:
        """All known coefficients vanish (exactly zero if also exact)."""
        return not self.coeffs

    def is_exact(self) -> bool:
        return self.precision is None

    def _known_order(self) -> int | None:
        """Absolute order up to which coefficients are known; None = all."""
        if self.precision is None:
            return None
        return self.lead + self.precision if self.coeffs else self.lead

    def coefficient(self, k: int) -> int:
        """Coefficient of t^k, when it is known."""
        ko = self._known_order()
        if ko is not None and k >= ko:
            raise PrecisionInsufficient(f"coefficient of t^{k} is beyond known precision")
        if k < self.lead or k >= self.lead + len(self.coeffs):
            return 0
        return self.coeffs[k - self.lead]

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other: "LaurentSeries") -> "LaurentSeries":
        p = self._common_prime(other)
        orders = [o for o in (self._known_order(), other._known_order()) if o is not None]
        cut = min(orders) if orders else None
        leads = [s.lead for s in (self, other) if s.coeffs]
        if not leads:
            return LaurentSeries.zero(p, known_order=cut)
        lo = min(leads)
        hi = max(s.lead + len(s.coeffs) for s in (self, other) if s.coeffs)
        if cut is not None:
            hi = min(hi, cut)
        out = []
        for k in range(lo, hi):
            a = self.coeffs[k - self.lead] if self.lead <= k < self.lead + len(self.coeffs) else 0
            b = other.coeffs[k - other.lead] if other.lead <= k < other.lead + len(other.coeffs) else 0
            out.append((a + b) % p)
        if cut is None:
            return LaurentSeries(p, lo, out)
        if not any(out):
            return LaurentSeries.zero(p, known_order=cut)
        return LaurentSeries(p, lo, out, precision=cut - lo)

    def __neg__(self) -> "LaurentSeries":
        return LaurentSeries(self.p, self.lead, [-c % self.p for c in self.coeffs], self.precision)

    def __sub__(self, other: "LaurentSeries") -> "LaurentSeries":
        return self + (-other)

    def __mul__(self, other: "LaurentSeries") -> "LaurentSeries":
        p = self._common_prime(other)
        if self.is_zero_like() or other.is_zero_like():
            # an exact zero annihilates; an inexact zero O(t^k) keeps its
            # known order shifted by the other factor's lead
            if (self.is_zero_like() and self.is_exact()) or (
                other.is_zero_like() and other.is_exact()
            ):
                return LaurentSeries.zero(p)
            return LaurentSeries.zero(p, known_order=self.lead + other.lead)
        n1, n2 = len(self.coeffs), len(other.coeffs)
        prec = None
        if self.precision is not None:
            prec = self.precision
        if other.precision is not None:
            prec = other.precision if prec is None else min(prec, other.precision)
        out_len = n1 + n2 - 1 if prec is None else min(n1 + n2 - 1, prec)
        out = [0] * out_len
        for i, a in enumerate(self.coeffs):
            if a == 0 or i >= out_len:
                continue
            for j, b in enumerate(other.coeffs):
                if i + j >= out_len:
                    break
                out[i + j] = (out[i + j] + a * b) % p
        return LaurentSeries(p, self.lead + other.lead, out, precision=prec)

    def inverse(self, precision: int | None = None) -> "LaurentSeries":
        """Multiplicative inverse of the unit part, shifted by -lead.

        A single-term series inverts exactly; otherwise the expansion is
        truncated at the requested precision (default 32 terms).
        """
        if self.is_zero_like():
            raise ZeroWithinPrecision("cannot invert a series with no known nonzero term")
        p = self.p
        if len(self.coeffs) == 1 and self.is_exact():
            inv0 = pow(self.coeffs[0], p - 2, p)
            return LaurentSeries(p, -self.lead, [inv0], precision=precision)
        if precision is None:
            precision = self.precision if self.precision is not None else DEFAULT_PRECISION
        inv0 = pow(self.coeffs[0], p - 2, p)
        out = [0] * precision
        out[0] = inv0
        # recursive long division: (sum a_i t^i)(sum b_j t^j) = 1
        for k in range(1, precision):
            acc = 0
            for i in range(1, min(k, len(self.coeffs) - 1) + 1):
                acc = (acc + self.coeffs[i] * out[k - i]) % p
            out[k] = (-inv0 * acc) % p
        return LaurentSeries(p, -self.lead, out, precision=precision)

    def power(self, e: int, precision: int | None = None) -> "LaurentSeries":
        if e == 0:
            return LaurentSeries.constant(self.p, 1)
        base = self if e > 0 else self.inverse(precision)
        out = base
        for _ in range(abs(e) - 1):
            out = out * base
        return out

    def _common_prime(self, other: "LaurentSeries") -> int:
        if self.p != other.p:
            raise ValueError("series over different prime fields")
        return self.p

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LaurentSeries)
            and self.p == other.p
            and self.lead == other.lead
            and self.coeffs == other.coeffs
            and self.precision == other.precision
        )

    def __repr__(self) -> str:
        if not self.coeffs:
            return f"LaurentSeries(0 over F{self.p})"
        terms = " + ".join(
            f"{c}*t^{self.lead + i}" for i, c in enumerate(self.coeffs) if c
        )
        tail = "" if self.precision is None else f" + O(t^{self.lead + self.precision})"
        return f"LaurentSeries({terms}{tail})"


@dataclass(frozen=True)
class ValuedNumber:
    """An exact power q^exponent of the residue cardinality."""

    base: int
    exponent: Fraction

    def __mul__(self, other: "ValuedNumber") -> "ValuedNumber":
        if self.base != other.base:
            raise ValueError("mismatched bases")
        return ValuedNumber(self.base, self.exponent + other.exponent)

    def inverse(self) -> "ValuedNumber":
        return ValuedNumber(self.base, -self.exponent)

    def is_one(self) -> bool:
        return self.exponent == 0

    def __str__(self) -> str:
        return f"{self.base}^{self.exponent}"


def valuation(x: LaurentSeries) -> int:
    """The t-adic valuation; raises if every known coefficient vanishes."""
    if x.is_zero_like():
        raise ZeroWithinPrecision("series is zero to working precision")
    return x.lead


def abs_value(x: LaurentSeries) -> ValuedNumber:
    """The normalized absolute value p^{-valuation}."""
    return ValuedNumber(x.p, Fraction(-valuation(x)))


def char_value(root: Sequence[int], gamma: Sequence[LaurentSeries]) -> LaurentSeries:
    """Evaluate a character on a split-torus point: prod gamma_i^{root_i}."""
    if len(root) != len(gamma):
        raise ValueError("coordinate count mismatch")
    p = gamma[0].p
    out = LaurentSeries.constant(p, 1)
    for e, x in zip(root, gamma):
        if e:
            out = out * x.power(e)
    return out


def is_strongly_regular(rd: RootDatum, gamma: Sequence[LaurentSeries]) -> bool:
    """Whether every root is nontrivial on the point.

    Requires a split datum (trivial action).  A difference that vanishes to
    working precision without being provably zero raises
    :class:`PrecisionInsufficient`.
    """
    _require_split(rd)
    one = LaurentSeries.constant(gamma[0].p, 1) if gamma else None
    for a in rd.roots:
        diff = char_value(a, gamma) - one
        if diff.is_zero_like():
            if diff.is_exact():
                return False
            raise PrecisionInsufficient(
                "a root value equals 1 to working precision; raise the precision"
            )
    return True


def delta_IV(rd_g: RootDatum, rd_h: RootDatum, gamma: Sequence[LaurentSeries]) -> ValuedNumber:
    """The discriminant-quotient transfer factor term.

    Computes p^{-(v_G - v_H)/2} where v_* sums the valuations of a(gamma)-1
    over all roots of the respective datum; the subsystem's roots must be a
    subset of the ambient ones.
    """
    _require_split(rd_g)
    ambient = set(rd_g.roots)
    for a in rd_h.roots:
        if tuple(a) not in ambient:
            raise ValueError("subsystem root outside the ambient root set")
    if not is_strongly_regular(rd_g, gamma):
        raise NotStronglyRegular("a root takes the value 1 on the point")
    p = gamma[0].p if gamma else 2
    one = LaurentSeries.constant(p, 1)

    def total(roots) -> int:
        v = 0
        for a in roots:
            v += valuation(char_value(a, gamma) - one)
        return v

    v = total(rd_g.roots) - total(rd_h.roots)
    return ValuedNumber(p, Fraction(-v, 2))


def _require_split(rd: RootDatum) -> None:
    from .intmatrix import IntMatrix

    eye = IntMatrix.identity(rd.rank)
    if any(A != eye for A in rd.cochar.action):
        raise ValueError("the datum must be split (trivial Galois action)")
