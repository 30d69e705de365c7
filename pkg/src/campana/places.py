"""Places of Q, local Hilbert symbols, and the place-set invariants.

The closed-form local symbol is the classical one (signs at the real place,
Legendre-symbol formulas at odd p, the eps/omega formula at 2).  It is
validated against hilbert_oracle, an independent exhaustive search for
Hensel-liftable solutions of z^2 = a x^2 + b y^2 over Z/p^m.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import FrozenSet, Iterable, Iterator, Optional, Tuple, Union

from . import arith, kernels
from .arith import RationalLike
from .errors import SearchExhausted


@dataclass(frozen=True)
class Place:
    """A place of Q: a finite prime, or the single real archimedean place
    (prime is None)."""

    prime: Optional[int]

    def __post_init__(self):
        if self.prime is not None and not arith.is_prime(self.prime):
            raise ValueError(f"{self.prime} is not prime")

    @property
    def is_real(self) -> bool:
        return self.prime is None

    def _sort_key(self) -> Tuple[int, int]:
        return (0, 0) if self.is_real else (1, self.prime)

    def __lt__(self, other: "Place") -> bool:
        return self._sort_key() < other._sort_key()

    def __repr__(self):
        return "Place(inf)" if self.is_real else f"Place({self.prime})"


REAL_PLACE = Place(None)


def finite(p: int) -> Place:
    return Place(p)


def _coerce_place(v) -> Place:
    if isinstance(v, Place):
        return v
    if v is None or v == "inf":
        return REAL_PLACE
    return Place(int(v))


class PlaceSet:
    """Finite set of places, canonically ordered: infinity first, then
    primes ascending."""

    __slots__ = ("_places",)

    def __init__(self, places: Iterable = ()):
        seen = {_coerce_place(v) for v in places}
        object.__setattr__(self, "_places", tuple(sorted(seen, key=Place._sort_key)))

    @classmethod
    def of_primes(cls, primes: Iterable[int]) -> "PlaceSet":
        return cls(Place(p) for p in primes)

    def primes(self) -> Tuple[int, ...]:
        return tuple(p.prime for p in self._places if not p.is_real)

    def __iter__(self) -> Iterator[Place]:
        return iter(self._places)

    def __len__(self) -> int:
        return len(self._places)

    def __contains__(self, v) -> bool:
        return _coerce_place(v) in self._places

    def __eq__(self, other) -> bool:
        if isinstance(other, PlaceSet):
            return self._places == other._places
        return NotImplemented

    def __hash__(self):
        return hash(self._places)

    def __or__(self, other: "PlaceSet") -> "PlaceSet":
        return PlaceSet(tuple(self._places) + tuple(other._places))

    def __and__(self, other: "PlaceSet") -> "PlaceSet":
        return PlaceSet(p for p in self._places if p in other)

    def isdisjoint(self, other: "PlaceSet") -> bool:
        return len(self & other) == 0

    def __repr__(self):
        inner = ", ".join("inf" if p.is_real else str(p.prime) for p in self._places)
        return "{" + inner + "}"


def _eps(u_mod4: int) -> int:
    # (u - 1)/2 mod 2 for odd u
    return (u_mod4 - 1) // 2 % 2


def _omega(u_mod8: int) -> int:
    # (u^2 - 1)/8 mod 2 for odd u
    return (u_mod8 * u_mod8 - 1) // 8 % 2


def _unit_residue(u: Fraction, modulus: int) -> int:
    return u.numerator * pow(u.denominator, -1, modulus) % modulus


def hilbert(a: RationalLike, b: RationalLike, v) -> int:
    """Quadratic Hilbert symbol (a,b)_v over Q_v, by the closed-form local
    formulas.  Returns +1 or -1."""
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise ValueError("a, b must be nonzero")
    place = _coerce_place(v)
    if place.is_real:
        return -1 if (a < 0 and b < 0) else 1
    p = place.prime
    alpha, beta = arith.valuation(a, p), arith.valuation(b, p)
    u, w = arith.unit_part(a, p), arith.unit_part(b, p)
    if p == 2:
        u8, w8 = _unit_residue(u, 8), _unit_residue(w, 8)
        e = _eps(u8 % 4) * _eps(w8 % 4) + alpha * _omega(w8) + beta * _omega(u8)
        return -1 if e % 2 else 1
    e = alpha * beta * ((p - 1) // 2)
    sym = -1 if e % 2 else 1
    if beta % 2:
        sym *= arith.legendre(_unit_residue(u, p), p)
    if alpha % 2:
        sym *= arith.legendre(_unit_residue(w, p), p)
    return sym


def hilbert_oracle(a: RationalLike, b: RationalLike, p: int, precision: int) -> int:
    """Independent local-solvability oracle at a finite prime.

    Clears denominators and strips square factors of p (both are exact
    changes of variables on the conic z^2 = a x^2 + b y^2), then scans all
    primitive triples mod p^m for a Hensel-liftable solution.  m is capped
    at 2*(v_p(2) + max residual valuation) + 1, which is always <= precision
    given the stated precondition, and suffices for lifting.
    """
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise ValueError("a, b must be nonzero")
    if not arith.is_prime(p):
        raise ValueError(f"{p} is not prime")
    va, vb = arith.valuation(a, p), arith.valuation(b, p)
    # tight Hensel requirement: 2*(v_p(2) + max residual valuation) + 1
    min_precision = max(3, 2 * max(abs(va), abs(vb)) + (3 if p == 2 else 1))
    if precision < min_precision:
        raise ValueError(
            f"precision {precision} too small; need >= {min_precision}"
        )
    ai = a.numerator * a.denominator  # a * den(a)^2
    bi = b.numerator * b.denominator
    ra = ai // p ** (2 * (arith.valuation(ai, p) // 2))
    rb = bi // p ** (2 * (arith.valuation(bi, p) // 2))
    resid = max(arith.valuation(ra, p), arith.valuation(rb, p))
    m = min(precision, 2 * ((1 if p == 2 else 0) + resid) + 1)
    return 1 if kernels.conic_has_solution(ra, rb, p, m) else -1


def default_oracle_precision(a: RationalLike, b: RationalLike, p: int) -> int:
    va = arith.valuation(Fraction(a), p)
    vb = arith.valuation(Fraction(b), p)
    return 2 * max(abs(va), abs(vb)) + 3


def odd_support(lam: RationalLike) -> PlaceSet:
    """Finite primes at which the valuation of lam is odd."""
    if Fraction(lam) == 0:
        raise ValueError("lam must be nonzero")
    fac = arith.factorize(lam)
    return PlaceSet.of_primes(p for p, e in fac.factors.items() if e % 2)


def _scan_places(a: Fraction, b: Fraction) -> PlaceSet:
    """Places where the symbol can be -1: infinity, 2, and the supports."""
    supp = set(arith.factorize(a).factors) | set(arith.factorize(b).factors)
    supp.add(2)
    return PlaceSet([REAL_PLACE] + [Place(p) for p in supp])


def delta(a: RationalLike, b: RationalLike) -> PlaceSet:
    """Places v with (a,b)_v = -1 (ramification set of the quaternion
    algebra); the scan is restricted to the finite set where -1 can occur."""
    a, b = Fraction(a), Fraction(b)
    return PlaceSet(v for v in _scan_places(a, b) if hilbert(a, b, v) == -1)


def delta_upper(a: RationalLike, b: RationalLike) -> PlaceSet:
    return delta(a, b) & (odd_support(a) | odd_support(b))


def omega(a: RationalLike, b: RationalLike, c: RationalLike, d: RationalLike) -> PlaceSet:
    return delta_upper(a, b) & delta_upper(c, d)


def reciprocity_check(a: RationalLike, b: RationalLike) -> bool:
    """Product of the local symbols over the scan set; always +1."""
    a, b = Fraction(a), Fraction(b)
    prod = 1
    for v in _scan_places(a, b):
        prod *= hilbert(a, b, v)
    return prod == 1


def find_local_counterexample(
    a: RationalLike, v, cap: int = 10_000
) -> Fraction:
    """Given a nonsquare in Q_v, find b with (a,b)_v = -1 by bounded
    enumeration over small integers (existence is guaranteed, so hitting
    the cap raises SearchExhausted)."""
    a = Fraction(a)
    place = _coerce_place(v)
    if arith.is_square_local(a, place):
        raise ValueError(f"{a} is a square in Q_v at {place}; no counterexample")
    if place.is_real:
        return Fraction(-1)
    count = 0
    n = 1
    while count < cap:
        for b in (n, -n):
            count += 1
            if hilbert(a, b, place) == -1:
                return Fraction(b)
        n += 1
    raise SearchExhausted(f"no b with (a,b)_v = -1 found within {cap} candidates")
