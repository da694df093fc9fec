"""Exact ground arithmetic.

Rationals are stdlib ``fractions.Fraction`` (already reduced, positive
denominator).  On top of that this module provides projective points over Q
with a canonical integer representation, elements of quadratic fields
Q(sqrt(d)) with exact square/cube root extraction, naive-height helpers, and
the integer factoring utilities (Miller-Rabin + Brent's rho) that root
finding and squarefree-part computations need.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import BudgetExceededError, FieldMixError

Rat = Fraction


class Infinity:
    """The point at infinity on the projective line (singleton ``INF``)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "inf"

    def __hash__(self):
        return hash("critcycles-point-at-infinity")

    def __eq__(self, other):
        return isinstance(other, Infinity)


INF = Infinity()


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


def format_rational(q: Fraction) -> str:
    return str(q)


@dataclass(frozen=True)
class ProjPoint:
    """Point of P^1(Q) as a coprime integer pair [a : b].

    Canonical form: gcd(a, b) = 1 and either b > 0, or b = 0 and a = 1.
    """

    a: int
    b: int

    def __post_init__(self):
        a, b = self.a, self.b
        if a == 0 and b == 0:
            raise ValueError("[0 : 0] is not a projective point")
        g = math.gcd(a, b)
        a //= g
        b //= g
        if b < 0 or (b == 0 and a < 0):
            a, b = -a, -b
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @classmethod
    def from_value(cls, v) -> "ProjPoint":
        if isinstance(v, Infinity):
            return cls(1, 0)
        q = Fraction(v)
        return cls(q.numerator, q.denominator)

    @classmethod
    def parse(cls, text: str) -> "ProjPoint":
        text = text.strip()
        if text in ("inf", "oo", "infinity"):
            return cls(1, 0)
        return cls.from_value(Fraction(text))

    @property
    def is_infinity(self) -> bool:
        return self.b == 0

    def value(self):
        """Affine value: a Fraction, or INF for [1 : 0]."""
        if self.b == 0:
            return INF
        return Fraction(self.a, self.b)

    def __str__(self):
        if self.b == 0:
            return "inf"
        if self.b == 1:
            return str(self.a)
        return f"{self.a}/{self.b}"


def height(P) -> int:
    """Naive multiplicative height.

    Accepts a ProjPoint, a Fraction/int, or INF; for [a : b] in lowest terms
    the height is max(|a|, |b|).
    """
    if isinstance(P, ProjPoint):
        return max(abs(P.a), abs(P.b))
    if isinstance(P, Infinity):
        return 1
    q = Fraction(P)
    return max(abs(q.numerator), q.denominator)


# ----------------------------------------------------------------------
# integer and rational radicals


def perfect_square_root(n: int) -> int | None:
    """The nonnegative integer square root of n, or None if n is not a
    perfect square."""
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


def integer_root(n: int, k: int) -> int | None:
    """Exact k-th root of an integer (sign-aware for odd k), else None."""
    if k <= 0:
        raise ValueError("k must be positive")
    if n < 0:
        if k % 2 == 0:
            return None
        r = integer_root(-n, k)
        return None if r is None else -r
    if n in (0, 1):
        return n
    r = round(n ** (1.0 / k))
    # float estimate can be off by a couple of units for big n
    while r > 0 and r**k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r if r**k == n else None


def rational_square_root(q: Fraction) -> Fraction | None:
    q = Fraction(q)
    a = perfect_square_root(q.numerator)
    if a is None:
        return None
    b = perfect_square_root(q.denominator)
    if b is None:
        return None
    return Fraction(a, b)


def rational_root(q: Fraction, k: int) -> Fraction | None:
    q = Fraction(q)
    a = integer_root(q.numerator, k)
    if a is None:
        return None
    b = integer_root(q.denominator, k)
    if b is None:
        return None
    return Fraction(a, b)


def rational_cube_root(q: Fraction) -> Fraction | None:
    return rational_root(q, 3)


# ----------------------------------------------------------------------
# integer factoring (trial division + Miller-Rabin + Brent's rho)

_SMALL_PRIMES = []


def _small_primes():
    global _SMALL_PRIMES
    if not _SMALL_PRIMES:
        limit = 10000
        sieve = bytearray([1]) * (limit + 1)
        sieve[0] = sieve[1] = 0
        for i in range(2, math.isqrt(limit) + 1):
            if sieve[i]:
                sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
        _SMALL_PRIMES = [i for i in range(limit + 1) if sieve[i]]
    return _SMALL_PRIMES


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin; deterministic for n < 3.3e24, overwhelming otherwise."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    bases = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]
    if n >= 3317044064679887385961981:
        rng = random.Random(n)
        bases = bases + [rng.randrange(40, n - 2) for _ in range(20)]
    for a in bases:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent_rho(n: int) -> int:
    """A nontrivial factor of composite odd n."""
    if n % 2 == 0:
        return 2
    rng = random.Random(n ^ 0x5DEECE66D)
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def factorint(n: int) -> dict[int, int]:
    """Prime factorization of |n| as {prime: exponent} (1 -> {})."""
    n = abs(n)
    if n <= 1:
        return {}
    out: dict[int, int] = {}
    for p in _small_primes():
        if p * p > n:
            break
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    if n == 1:
        return out
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_probable_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _brent_rho(m)
        stack.append(d)
        stack.append(m // d)
    return out


def divisors(n: int, budget: int | None = None) -> list[int]:
    """All positive divisors of |n|, smallest first.

    ``budget`` caps the number of divisors produced; exceeding it raises
    BudgetExceededError carrying the divisor count in ``partial``.
    """
    fac = factorint(n)
    count = 1
    for e in fac.values():
        count *= e + 1
    if budget is not None and count > budget:
        raise BudgetExceededError(
            f"divisor enumeration needs {count} divisors, budget is {budget}",
            partial={"divisor_count": count},
        )
    divs = [1]
    for p, e in fac.items():
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def squarefree_part(n: int) -> int:
    """The squarefree integer d with n = d * (square); sign preserved.
    squarefree_part(0) = 0."""
    if n == 0:
        return 0
    sign = -1 if n < 0 else 1
    d = 1
    for p, e in factorint(n).items():
        if e % 2:
            d *= p
    return sign * d


def fraction_squarefree_part(q: Fraction) -> int:
    """Squarefree d with q = d * (rational square); 0 for q = 0."""
    q = Fraction(q)
    if q == 0:
        return 0
    return squarefree_part(q.numerator * q.denominator)


# ----------------------------------------------------------------------
# quadratic fields


def _check_quad_d(d: int):
    if d in (0, 1):
        raise ValueError("quadratic field needs squarefree d not in {0, 1}")
    if squarefree_part(d) != d:
        raise ValueError(f"d = {d} is not squarefree")


@dataclass(frozen=True)
class QuadElement:
    """Element u + v*sqrt(d) of Q(sqrt(d)), d squarefree, d not in {0, 1}.

    Mixing elements with distinct d raises FieldMixError even when one side
    happens to be rational; that catches field-mixing bugs early.  Plain
    ints and Fractions coerce into any QuadElement's field.
    """

    d: int
    u: Fraction
    v: Fraction

    def __post_init__(self):
        _check_quad_d(self.d)
        object.__setattr__(self, "u", Fraction(self.u))
        object.__setattr__(self, "v", Fraction(self.v))

    def _coerce(self, other):
        if isinstance(other, QuadElement):
            if other.d != self.d:
                raise FieldMixError(
                    f"cannot mix Q(sqrt({self.d})) and Q(sqrt({other.d}))"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return QuadElement(self.d, Fraction(other), Fraction(0))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElement(self.d, self.u + o.u, self.v + o.v)

    __radd__ = __add__

    def __neg__(self):
        return QuadElement(self.d, -self.u, -self.v)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElement(self.d, self.u - o.u, self.v - o.v)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElement(
            self.d,
            self.u * o.u + self.d * self.v * o.v,
            self.u * o.v + self.v * o.u,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "QuadElement":
        return QuadElement(self.d, self.u, -self.v)

    def norm(self) -> Fraction:
        return self.u * self.u - self.d * self.v * self.v

    def trace(self) -> Fraction:
        return 2 * self.u

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero quadratic element")
        c = self * o.conjugate()
        return QuadElement(self.d, c.u / n, c.v / n)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if k < 0:
            return (self.one(self.d) / self) ** (-k)
        out = QuadElement(self.d, Fraction(1), Fraction(0))
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __bool__(self):
        return bool(self.u) or bool(self.v)

    @property
    def is_rational(self) -> bool:
        return self.v == 0

    @classmethod
    def one(cls, d: int) -> "QuadElement":
        return cls(d, Fraction(1), Fraction(0))

    def __str__(self):
        if self.v == 0:
            return str(self.u)
        vtxt = f"{self.v}*" if abs(self.v) != 1 else ""
        root = f"sqrt({self.d})"
        if self.u == 0:
            sign = "-" if self.v < 0 else ""
            return f"{sign}{vtxt.lstrip('-') if self.v < 0 else vtxt}{root}"
        op = "-" if self.v < 0 else "+"
        vabs = abs(self.v)
        vtxt = f"{vabs}*" if vabs != 1 else ""
        return f"{self.u}{op}{vtxt}{root}"


def parse_quad(text: str, d: int) -> QuadElement:
    """Parse 'u+v*sqrt(d)' / 'u-v*sqrt(d)' / 'u' into Q(sqrt(d))."""
    t = text.replace(" ", "")
    root = f"sqrt({d})"
    if root not in t:
        return QuadElement(d, Fraction(t), Fraction(0))
    head, _, _ = t.partition(root)
    head = head[: -1] if head.endswith("*") else head
    # split off the trailing signed v coefficient
    for i in range(len(head) - 1, 0, -1):
        if head[i] in "+-" and head[i - 1] not in "+-*/(":
            u_txt, v_txt = head[:i], head[i:]
            break
    else:
        u_txt, v_txt = "0", head or "1"
    if v_txt in ("", "+"):
        v_txt = "1"
    elif v_txt == "-":
        v_txt = "-1"
    return QuadElement(d, Fraction(u_txt), Fraction(v_txt))


def quad_height(e: QuadElement) -> int:
    """Plumbing height used only for orbit caps: max coordinate height."""
    return max(height(e.u), height(e.v))


def quad_sqrt(e: QuadElement) -> QuadElement | None:
    """A square root of e inside Q(sqrt(d)), or None.

    Norm test: u^2 - d v^2 must be the square of a rational N, and then one
    of (u +- N)/2 must be a rational square a^2, with b = v/(2a).
    """
    d = e.d
    if not e:
        return QuadElement(d, Fraction(0), Fraction(0))
    if e.v == 0:
        r = rational_square_root(e.u)
        if r is not None:
            return QuadElement(d, r, Fraction(0))
        r = rational_square_root(e.u / d)
        if r is not None:
            return QuadElement(d, Fraction(0), r)
        return None
    N = rational_square_root(e.norm())
    if N is None:
        return None
    for sign in (1, -1):
        a2 = (e.u + sign * N) / 2
        a = rational_square_root(a2)
        if a is not None and a != 0:
            b = e.v / (2 * a)
            cand = QuadElement(d, a, b)
            if cand * cand == e:
                return cand
    return None


def quad_cube_root(e: QuadElement) -> QuadElement | None:
    """A cube root of e inside Q(sqrt(d)), or None.

    The two component equations a^3 + 3 a b^2 d = u and 3 a^2 b + b^3 d = v
    reduce, after eliminating b through the norm m = (u^2 - d v^2)^(1/3),
    to the cubic 4 a^3 - 3 m a - u = 0; each rational root a gives
    b^2 = (a^2 - m)/d, checked by cubing.  Rational cube roots (b = 0) are
    preferred when several roots exist.
    """
    d = e.d
    if not e:
        return QuadElement(d, Fraction(0), Fraction(0))
    m = rational_cube_root(e.norm())
    if m is None:
        return None
    # roots of 4a^3 - 3ma - u
    from .polys.roots import rational_roots_of_coeffs

    roots = rational_roots_of_coeffs([-e.u, -3 * m, Fraction(0), Fraction(4)])
    candidates = []
    for a in sorted(set(roots), reverse=True):
        b2 = (a * a - m) / d
        b = rational_square_root(b2)
        if b is None:
            continue
        for bb in ((b,) if b == 0 else (b, -b)):
            w = QuadElement(d, a, bb)
            if w * w * w == e:
                candidates.append(w)
    if not candidates:
        return None
    candidates.sort(key=lambda w: (w.v != 0, -w.u, -w.v))
    return candidates[0]
