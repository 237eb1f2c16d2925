"""Exact arithmetic in F_p, F_{p^k}, Q and quadratic extensions Q(eps).

Every field exposes the same small set of operations on *raw* values, which
is what the search and geometry code uses in its inner loops:

* finite fields: an ``int`` code ``c0 + c1*p + ... + c_{k-1}*p^(k-1)``,
  where ``c0..c_{k-1}`` are the coefficients of the residue class modulo the
  defining polynomial (constant term first);
* ``Q``: a :class:`fractions.Fraction`;
* ``Q(eps)``: a pair ``(a, b)`` of fractions standing for ``a + b*eps``.

:class:`FieldElement` wraps a raw value together with its field and provides
the usual operators for interactive use.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import (
    DivisionByZero,
    FieldMismatch,
    InfiniteField,
    NonPrime,
    ParseError,
    ReducibleQuadratic,
    UnsupportedDegree,
)

#: fields up to this size get log/antilog multiplication tables
LOG_TABLE_LIMIT = 1 << 16
#: odd-characteristic extension fields up to this size get an addition table
ADD_TABLE_LIMIT = 256


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % d for d in range(3, math.isqrt(n) + 1, 2))


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, e)`` with ``q == p**e``, or raise :class:`NonPrime`."""
    if q < 2:
        raise NonPrime(q)
    for p in range(2, math.isqrt(q) + 1):
        if q % p == 0:
            e = 0
            while q % p == 0:
                q //= p
                e += 1
            if q != 1:
                raise NonPrime(f"{p ** e * q} is not a prime power")
            return p, e
    return q, 1


# --------------------------------------------------------------------------
# polynomials over F_p as coefficient lists, constant term first


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], m: Sequence[int], p: int) -> list[int]:
    a = _trim(list(a))
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _trim(a)
    return a


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def _poly_sub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def _x_pow_mod(e: int, m: Sequence[int], p: int) -> list[int]:
    result, base = [1], _poly_mod([0, 1], m, p)
    while e:
        if e & 1:
            result = _poly_mod(_poly_mul(result, base, p), m, p)
        base = _poly_mod(_poly_mul(base, base, p), m, p)
        e >>= 1
    return result


def is_irreducible(coeffs: Sequence[int], p: int) -> bool:
    """Irreducibility over F_p of the polynomial with the given coefficients.

    A degree-k polynomial is irreducible iff it shares no factor with
    ``x^(p^i) - x`` for ``i <= k // 2``.
    """
    f = _trim([c % p for c in coeffs])
    k = len(f) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    for i in range(1, k // 2 + 1):
        h = _poly_sub(_x_pow_mod(p ** i, f, p), [0, 1], p)
        if len(_poly_gcd(f, h, p)) > 1:
            return False
    return True


@lru_cache(maxsize=None)
def smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree ``k`` over F_p.

    Coefficient tuples ``(c0, ..., c_{k-1}, 1)`` are compared constant term
    first.
    """
    if k == 1:
        return (0, 1)
    for low in itertools.product(range(p), repeat=k):
        cand = low + (1,)
        if low[0] != 0 and is_irreducible(cand, p):
            return cand
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


# --------------------------------------------------------------------------
# rational helpers


def _rational_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def _fmt_fraction(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _parse_fraction(token: str) -> Fraction:
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational literal {token!r}") from exc


# --------------------------------------------------------------------------
# fields


class FieldSpec:
    """Common interface of all supported fields (operations on raw values)."""

    kind: str
    char: int
    size: int | None = None

    @property
    def is_finite(self) -> bool:
        return self.size is not None

    def __call__(self, value) -> "FieldElement":
        return FieldElement(self, self.coerce(value))

    def wrap(self, raw) -> "FieldElement":
        return FieldElement(self, raw)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def pow(self, a, e: int):
        if e < 0:
            a, e = self.inv(a), -e
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def is_zero(self, a) -> bool:
        return a == self.zero

    def sum(self, values: Iterable):
        acc = self.zero
        for v in values:
            acc = self.add(acc, v)
        return acc

    def elements(self) -> list:
        raise InfiniteField(f"{self} has no finite enumeration")

    def sort_key(self, a):
        return self.coeffs(a)

    def sqrt(self, a):
        """Some square root of ``a`` in the field, or ``None``."""
        for x in self.elements():
            if self.mul(x, x) == a:
                return x
        return None

    def __repr__(self) -> str:
        return self.name


class FiniteField(FieldSpec):
    """F_p or F_{p^k} with a fixed monic irreducible modulus."""

    def __init__(self, p: int, k: int = 1, modulus: Sequence[int] | None = None):
        if not is_prime(p):
            raise NonPrime(p)
        if k < 1:
            raise ValueError(f"extension degree must be >= 1, got {k}")
        if modulus is None:
            modulus = smallest_irreducible(p, k)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise ValueError(f"modulus must be monic of degree {k}: {modulus}")
        if not is_irreducible(modulus, p):
            raise ValueError(f"modulus {modulus} is reducible over F_{p}")
        self.p = self.char = p
        self.k = k
        self.modulus = modulus
        self.size = q = p ** k
        self.kind = "prime" if k == 1 else "finite-extension"
        self.name = f"F_{q}" if k == 1 else f"F_{p}^{k}"
        self.zero, self.one = 0, 1

        if k == 1:
            self.add = lambda a, b: (a + b) % p
            self.sub = lambda a, b: (a - b) % p
            self.neg = lambda a: -a % p
        elif p == 2:
            self.add = self.sub = lambda a, b: a ^ b
            self.neg = lambda a: a
        elif q <= ADD_TABLE_LIMIT:
            digits = [self.coeffs(a) for a in range(q)]
            table = [[self._encode([(x + y) % p for x, y in zip(da, db)]) for db in digits] for da in digits]
            negs = [self._encode([-x % p for x in da]) for da in digits]
            self.add = lambda a, b: table[a][b]
            self.neg = negs.__getitem__
            self.sub = lambda a, b: table[a][negs[b]]
        else:
            self.add = self._add_digits
            self.neg = lambda a: self._encode([-x % p for x in self.coeffs(a)])

        if k == 1:
            self.mul = lambda a, b: a * b % p
            self._inv = lambda a: pow(a, p - 2, p)
        elif q <= LOG_TABLE_LIMIT:
            self._build_log_tables()
            exp, log, order = self._exp, self._log, q - 1

            def mul(a, b):
                if a == 0 or b == 0:
                    return 0
                return exp[log[a] + log[b]]

            self.mul = mul
            self._inv = lambda a: exp[order - log[a]]
        else:
            self.mul = self.mul_direct
            self._inv = lambda a: self.pow(a, q - 2)


        self._rank = None
        if q <= LOG_TABLE_LIMIT:
            self._rank = [self.rank(a) for a in range(q)]

    # representation ---------------------------------------------------------
    def coeffs(self, a: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.k):
            a, r = divmod(a, self.p)
            out.append(r)
        return tuple(out)

    def _encode(self, coeffs: Sequence[int]) -> int:
        code = 0
        for c in reversed(coeffs):
            code = code * self.p + c
        return code

    def from_coeffs(self, coeffs: Sequence[int]) -> int:
        """Raw code of the residue class of an arbitrary coefficient list."""
        return self._encode(_poly_mod([c % self.p for c in coeffs], self.modulus, self.p))

    def _add_digits(self, a: int, b: int) -> int:
        p = self.p
        return self._encode([(x + y) % p for x, y in zip(self.coeffs(a), self.coeffs(b))])

    def mul_direct(self, a: int, b: int) -> int:
        """Schoolbook multiplication followed by reduction by the modulus."""
        prod = _poly_mul(list(self.coeffs(a)), list(self.coeffs(b)), self.p)
        return self._encode(_poly_mod(prod, self.modulus, self.p))

    def _build_log_tables(self) -> None:
        q = self.size
        for g in range(2, q) if q > 2 else [1]:
            exp = [1]
            x = g
            while x != 1:
                exp.append(x)
                x = self.mul_direct(x, g)
            if len(exp) == q - 1:
                break
        log = [0] * q
        for i, x in enumerate(exp):
            log[x] = i
        self.generator = g
        self._exp = exp + exp
        self._log = log

    # arithmetic -------------------------------------------------------------
    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero(f"inverse of 0 in {self.name}")
        return self._inv(a)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if a == 0:
            return 1 if e == 0 else 0
        if self.k > 1 and self.size <= LOG_TABLE_LIMIT:
            return self._exp[self._log[a] * e % (self.size - 1)]
        if self.k == 1:
            return pow(a, e, self.p)
        return FieldSpec.pow(self, a, e)

    def elements(self) -> list[int]:
        """All elements, lexicographic on coefficient vectors (constant term first)."""
        # the rank of a code is its digit string read in reverse
        return [self._encode(tuple(reversed(self.coeffs(r)))) for r in range(self.size)]

    def rank(self, a: int) -> int:
        """Position of ``a`` in :meth:`elements`."""
        if self._rank is not None:
            return self._rank[a]
        r = 0
        for c in self.coeffs(a):
            r = r * self.p + c
        return r

    def sort_key(self, a: int) -> int:
        return self.rank(a)

    def coerce(self, value) -> int:
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatch(f"{value.field} element used in {self}")
            return value.raw
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int):
            return value % self.p
        if isinstance(value, Fraction):
            return self.mul(value.numerator % self.p, self.inv(value.denominator % self.p))
        if isinstance(value, (tuple, list)):
            return self.from_coeffs(value)
        raise TypeError(f"cannot coerce {value!r} into {self}")

    # serialization ----------------------------------------------------------
    def format(self, a: int) -> str:
        if self.k == 1:
            return str(a)
        return "[" + ",".join(map(str, self.coeffs(a))) + "]"

    def parse(self, token: str) -> int:
        """Read ``[c0,c1,...]``, or a bare integer for a prime-subfield element."""
        token = token.strip()
        try:
            if self.k == 1 or not token.startswith("["):
                return int(token) % self.p
            if not token.endswith("]"):
                raise ValueError
            coeffs = [int(c) for c in token[1:-1].split(",")]
        except ValueError as exc:
            raise ParseError(f"bad {self.name} literal {token!r}") from exc
        if len(coeffs) > self.k:
            raise ParseError(f"too many coefficients in {token!r} for {self.name}")
        return self.from_coeffs(coeffs)

    def header(self) -> str:
        if self.k == 1:
            return f"field {self.p} 1"
        return f"field {self.p} {self.k} " + " ".join(map(str, self.modulus))

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteField) and (self.p, self.modulus) == (other.p, other.modulus)

    def __hash__(self) -> int:
        return hash(("finite", self.p, self.modulus))


class RationalField(FieldSpec):
    kind = "rational"
    char = 0
    name = "Q"

    def __init__(self):
        self.zero, self.one = Fraction(0), Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of 0 in Q")
        return 1 / a

    def coeffs(self, a):
        return (a,)

    def sqrt(self, a):
        return _rational_sqrt(a)

    def coerce(self, value) -> Fraction:
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatch(f"{value.field} element used in {self}")
            return value.raw
        if isinstance(value, (int, Fraction)):
            return Fraction(value)
        if isinstance(value, str):
            return _parse_fraction(value)
        raise TypeError(f"cannot coerce {value!r} into Q")

    def format(self, a) -> str:
        return _fmt_fraction(a)

    def parse(self, token: str) -> Fraction:
        return _parse_fraction(token.strip())

    def header(self) -> str:
        return "field Q"

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("Q")


class QuadraticField(FieldSpec):
    """Q(eps) with ``c2*eps^2 + c1*eps + c0 = 0``; raw values are pairs ``(a, b)``."""

    kind = "rational-quadratic"
    char = 0

    def __init__(self, c2, c1, c0):
        c2, c1, c0 = Fraction(c2), Fraction(c1), Fraction(c0)
        if c2 == 0:
            raise ReducibleQuadratic("leading coefficient is zero")
        disc = c1 * c1 - 4 * c2 * c0
        if _rational_sqrt(disc) is not None:
            raise ReducibleQuadratic(f"discriminant {disc} is a rational square")
        self.defining = (c2, c1, c0)
        # eps^2 = -s*eps - t
        self._s, self._t = c1 / c2, c0 / c2
        # theta = eps + s/2 satisfies theta^2 = delta
        self._delta = self._s * self._s / 4 - self._t
        self.name = "Q(eps | " + " ".join(map(_fmt_fraction, self.defining)) + ")"
        self.zero, self.one = (Fraction(0), Fraction(0)), (Fraction(1), Fraction(0))
        self.eps = (Fraction(0), Fraction(1))

    def add(self, a, b):
        return (a[0] + b[0], a[1] + b[1])

    def sub(self, a, b):
        return (a[0] - b[0], a[1] - b[1])

    def neg(self, a):
        return (-a[0], -a[1])

    def mul(self, a, b):
        x, y = a
        u, v = b
        bb = y * v
        return (x * u - bb * self._t, x * v + y * u - bb * self._s)

    def norm(self, a) -> Fraction:
        x, y = a
        return x * x - self._s * x * y + self._t * y * y

    def inv(self, a):
        nrm = self.norm(a)
        if nrm == 0:
            raise DivisionByZero("inverse of 0 in Q(eps)")
        x, y = a
        return ((x - self._s * y) / nrm, -y / nrm)

    def coeffs(self, a):
        return tuple(a)

    def sqrt(self, a):
        s = self._s
        u, v = a[0] - a[1] * s / 2, a[1]  # a = u + v*theta
        delta = self._delta
        candidates = []
        if v == 0:
            r = _rational_sqrt(u)
            if r is not None:
                candidates.append((r, Fraction(0)))
            r = _rational_sqrt(u / delta)
            if r is not None:
                candidates.append((Fraction(0), r))
        else:
            root_n = _rational_sqrt(u * u - delta * v * v)
            if root_n is not None:
                for xx in ((u + root_n) / 2, (u - root_n) / 2):
                    x = _rational_sqrt(xx)
                    if x:
                        candidates.append((x, v / (2 * x)))
        for x, y in candidates:
            root = (x + y * s / 2, y)
            if self.mul(root, root) == tuple(a):
                return root
        return None

    def coerce(self, value):
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatch(f"{value.field} element used in {self}")
            return value.raw
        if isinstance(value, (int, Fraction)):
            return (Fraction(value), Fraction(0))
        if isinstance(value, (tuple, list)) and len(value) == 2:
            return (Fraction(value[0]), Fraction(value[1]))
        if isinstance(value, str):
            return self.parse(value)
        raise TypeError(f"cannot coerce {value!r} into {self}")

    def format(self, a) -> str:
        x, y = a
        if y == 0:
            return _fmt_fraction(x)
        b = "" if abs(y) == 1 else _fmt_fraction(abs(y)) + "*"
        if x == 0:
            return ("-" if y < 0 else "") + b + "eps"
        return _fmt_fraction(x) + ("-" if y < 0 else "+") + b + "eps"

    def parse(self, token: str):
        s = token.replace(" ", "")
        if "eps" not in s:
            return (_parse_fraction(s), Fraction(0))
        if not s.endswith("eps") or s.count("eps") != 1:
            raise ParseError(f"bad Q(eps) literal {token!r}")
        body = s[:-3]
        if body.endswith("*"):
            body = body[:-1]
        cut = max(body.rfind("+"), body.rfind("-"))
        a_str, b_str = (body[:cut], body[cut:]) if cut > 0 else ("", body)
        a = _parse_fraction(a_str) if a_str else Fraction(0)
        if b_str in ("", "+"):
            b = Fraction(1)
        elif b_str == "-":
            b = Fraction(-1)
        else:
            b = _parse_fraction(b_str)
        return (a, b)

    def header(self) -> str:
        return "field Qquad " + " ".join(_fmt_fraction(c) for c in self.defining)

    def __eq__(self, other) -> bool:
        return isinstance(other, QuadraticField) and (self._s, self._t) == (other._s, other._t)

    def __hash__(self) -> int:
        return hash(("Qquad", self._s, self._t))


@lru_cache(maxsize=64)
def _finite_field(p: int, k: int, modulus: tuple[int, ...] | None) -> FiniteField:
    return FiniteField(p, k, modulus)


def make_field(p=None, k: int = 1, *, modulus: Sequence[int] | None = None, quadratic=None) -> FieldSpec:
    """Build a field.

    ``make_field(7)`` is F_7, ``make_field(2, 4)`` is F_16 with the
    lexicographically smallest monic irreducible modulus, ``make_field()`` or
    ``make_field("Q")`` is the rationals and ``make_field(quadratic=(4, -6, 1))``
    is Q(eps) with ``4*eps^2 - 6*eps + 1 = 0``.
    """
    if quadratic is not None:
        return QuadraticField(*quadratic)
    if p is None or p == "Q":
        return RationalField()
    p, k = int(p), int(k)
    if not is_prime(p):
        raise NonPrime(p)
    if k < 1:
        raise ValueError(f"extension degree must be >= 1, got {k}")
    return _finite_field(p, k, tuple(modulus) if modulus is not None else None)


def field_of_order(q: int) -> FiniteField:
    """The canonical field with ``q`` elements (``q`` a prime power)."""
    p, e = prime_power(q)
    return make_field(p, e)


class FieldElement:
    """A field element with operator overloading; immutable."""

    __slots__ = ("field", "raw")

    def __init__(self, field: FieldSpec, raw):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "raw", raw)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other.raw
        return self.field.coerce(other)

    @property
    def coeffs(self) -> tuple:
        return self.field.coeffs(self.raw)

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.raw, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.raw, self._other(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub(self._other(other), self.raw))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.raw, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.raw, self._other(other)))

    def __rtruediv__(self, other):
        return FieldElement(self.field, self.field.div(self._other(other), self.raw))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.raw))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.raw, e))

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.raw))

    def is_zero(self) -> bool:
        return self.field.is_zero(self.raw)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.field == other.field and self.raw == other.raw
        try:
            return self.raw == self.field.coerce(other)
        except (TypeError, FieldMismatch):
            return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field, self.raw))

    def __repr__(self) -> str:
        return f"{self.field.format(self.raw)} in {self.field}"

    def __str__(self) -> str:
        return self.field.format(self.raw)


def roots_of(poly: Sequence, field: FieldSpec) -> list[FieldElement]:
    """All roots in ``field`` of the polynomial with coefficients ``poly``.

    Coefficients are given constant term first. Finite fields are scanned
    exhaustively; over Q and Q(eps) only degrees up to 2 are supported.
    """
    coeffs = [field.coerce(c) for c in poly]
    while coeffs and field.is_zero(coeffs[-1]):
        coeffs.pop()
    if not coeffs:
        raise ValueError("the zero polynomial has every element as a root")
    deg = len(coeffs) - 1

    if field.is_finite:
        roots = [x for x in field.elements() if field.is_zero(_horner(field, coeffs, x))]
        return [field.wrap(x) for x in roots]

    if deg > 2:
        raise UnsupportedDegree(f"degree {deg} over {field}")
    if deg == 0:
        return []
    if deg == 1:
        roots = [field.neg(field.div(coeffs[0], coeffs[1]))]
    else:
        c0, c1, c2 = coeffs
        four = field.coerce(4)
        disc = field.sub(field.mul(c1, c1), field.mul(four, field.mul(c2, c0)))
        r = field.sqrt(disc)
        if r is None:
            return []
        two_a = field.add(c2, c2)
        roots = {field.div(field.sub(r, c1), two_a), field.div(field.sub(field.neg(r), c1), two_a)}
    return [field.wrap(x) for x in sorted(roots, key=field.sort_key)]


def _horner(field: FieldSpec, coeffs, x):
    acc = field.zero
    for c in reversed(coeffs):
        acc = field.add(field.mul(acc, x), c)
    return acc
