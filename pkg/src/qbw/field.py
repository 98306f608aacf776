"""Exact scalar fields: the rationals, prime fields and cyclotomic fields.

Matrices in :mod:`qbw.linalg` store *raw* values and delegate arithmetic to
their :class:`FieldSpec`.  Raw values are

* ``gmpy2.mpq`` for the rationals,
* ``int`` in ``[0, p)`` for a prime field,
* a tuple of ``mpq`` of length ``phi(n)`` (coefficients of 1, z, z^2, ...)
  for the cyclotomic field Q(z) with z a primitive n-th root of unity.

:class:`Scalar` is the user-facing wrapper that carries its field along.
"""

from __future__ import annotations

import operator
import re
from fractions import Fraction
from functools import lru_cache

from gmpy2 import mpq

__all__ = [
    "DivisionByZero",
    "FieldMismatch",
    "FieldSpec",
    "Scalar",
    "cyclotomic_polynomial",
    "euler_phi",
    "parse_scalar",
    "scalar_arith",
]


class FieldMismatch(ValueError):
    pass


class DivisionByZero(ZeroDivisionError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def euler_phi(n: int) -> int:
    result, m, q = n, n, 2
    while q * q <= m:
        if m % q == 0:
            while m % q == 0:
                m //= q
            result -= result // q
        q += 1
    if m > 1:
        result -= result // m
    return result


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # both low-to-high, den monic; the division must leave no remainder
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1]
        out[k] = c
        if c:
            for i, d in enumerate(den):
                num[k + i] -= c * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def _cyclotomic(n: int) -> tuple[int, ...]:
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, list(_cyclotomic(d)))
    return tuple(poly)


def cyclotomic_polynomial(n: int) -> list[int]:
    """Coefficients of the n-th cyclotomic polynomial, lowest degree first.

    Computed by dividing ``t**n - 1`` by every ``Phi_d`` with ``d | n, d < n``.

    >>> cyclotomic_polynomial(6)
    [1, -1, 1]
    """
    if n < 1:
        raise ValueError("n must be positive")
    return list(_cyclotomic(n))


_MPQ0 = mpq(0)
_MPQ1 = mpq(1)


class FieldSpec:
    """An exact field.  Instances are interned: equal specs are identical."""

    _cache: dict[tuple[str, int], "FieldSpec"] = {}

    kind: str
    param: int

    def __new__(cls, kind: str, param: int = 0):
        key = (kind, int(param))
        inst = cls._cache.get(key)
        if inst is not None:
            return inst
        if kind not in ("rationals", "prime", "cyclotomic"):
            raise ValueError(f"unknown field kind {kind!r}")
        if kind == "prime" and not _is_prime(param):
            raise ValueError(f"{param} is not prime")
        if kind == "cyclotomic" and param < 1:
            raise ValueError("cyclotomic order must be positive")
        inst = super().__new__(cls)
        inst.kind, inst.param = key
        inst._setup()
        cls._cache[key] = inst
        return inst

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls("rationals")

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls("prime", p)

    @classmethod
    def cyclotomic(cls, n: int) -> "FieldSpec":
        return cls("cyclotomic", n)

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        t = text.strip().replace(" ", "")
        if t in ("Q", "QQ", "rationals"):
            return cls.rationals()
        m = re.fullmatch(r"(?:GF|F|prime)\(?(\d+)\)?", t)
        if m:
            return cls.prime(int(m.group(1)))
        m = re.fullmatch(r"(?:Q\(zeta_?|cyclotomic\()(\d+)\)", t)
        if m:
            return cls.cyclotomic(int(m.group(1)))
        raise ValueError(f"cannot parse field spec {text!r}")

    def __reduce__(self):
        return (FieldSpec, (self.kind, self.param))

    def __repr__(self) -> str:
        return f"FieldSpec({self})"

    def __str__(self) -> str:
        if self.kind == "rationals":
            return "Q"
        if self.kind == "prime":
            return f"GF({self.param})"
        return f"Q(zeta{self.param})"

    @property
    def characteristic(self) -> int:
        return self.param if self.kind == "prime" else 0

    # raw arithmetic -----------------------------------------------------

    def _setup(self) -> None:
        if self.kind == "rationals":
            self.degree = 1
            self.zero, self.one = _MPQ0, _MPQ1
            self.add, self.sub, self.mul = operator.add, operator.sub, operator.mul
            self.neg = operator.neg
            self.is_zero = operator.not_
            self.from_int = mpq
            self._inv = lambda a: 1 / a
        elif self.kind == "prime":
            p = self.param
            self.degree = 1
            self.zero, self.one = 0, 1 % p
            self.add = lambda a, b: (a + b) % p
            self.sub = lambda a, b: (a - b) % p
            self.mul = lambda a, b: (a * b) % p
            self.neg = lambda a: (-a) % p
            self.is_zero = operator.not_
            self.from_int = lambda n: int(n) % p
            self._inv = lambda a: pow(a, -1, p)
        else:
            self._setup_cyclotomic()

    def _setup_cyclotomic(self) -> None:
        phi = _cyclotomic(self.param)
        d = len(phi) - 1
        self.degree = d
        self.modulus = phi
        low = [mpq(c) for c in phi[:d]]
        zero = (_MPQ0,) * d
        self.zero = zero
        self.one = (_MPQ1,) + zero[1:]

        def add(a, b):
            return tuple(map(operator.add, a, b))

        def sub(a, b):
            return tuple(map(operator.sub, a, b))

        def neg(a):
            return tuple(-c for c in a)

        if d == 1:
            def mul(a, b):
                return (a[0] * b[0],)
        else:
            def mul(a, b):
                prod = [_MPQ0] * (2 * d - 1)
                for i, ai in enumerate(a):
                    if ai:
                        for j, bj in enumerate(b):
                            if bj:
                                prod[i + j] += ai * bj
                for k in range(2 * d - 2, d - 1, -1):
                    c = prod[k]
                    if c:
                        base = k - d
                        for i in range(d):
                            if low[i]:
                                prod[base + i] -= c * low[i]
                return tuple(prod[:d])

        def is_zero(a):
            return not any(a)

        self.add, self.sub, self.mul, self.neg, self.is_zero = add, sub, mul, neg, is_zero
        self.from_int = lambda n: (mpq(n),) + zero[1:]
        self._inv = self._cyc_inv

    def _cyc_inv(self, a):
        # solve (multiplication by a) b = 1 over Q
        d = self.degree
        cols = []
        e = list(self.zero)
        for j in range(d):
            basis = list(self.zero)
            basis[j] = _MPQ1
            cols.append(self.mul(a, tuple(basis)))
        rows = [[cols[j][i] for j in range(d)] + [_MPQ1 if i == 0 else _MPQ0] for i in range(d)]
        for c in range(d):
            piv = next(r for r in range(c, d) if rows[r][c])
            rows[c], rows[piv] = rows[piv], rows[c]
            inv = 1 / rows[c][c]
            rows[c] = [v * inv for v in rows[c]]
            for r in range(d):
                if r != c and rows[r][c]:
                    f = rows[r][c]
                    rows[r] = [v - f * w for v, w in zip(rows[r], rows[c])]
        for i in range(d):
            e[i] = rows[i][d]
        return tuple(e)

    def inv(self, a):
        if self.is_zero(a):
            raise DivisionByZero("inverse of zero")
        return self._inv(a)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def eq(self, a, b) -> bool:
        return a == b

    def pow(self, a, e: int):
        if e < 0:
            return self.pow(self.inv(a), -e)
        result, base = self.one, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def from_fraction(self, num: int, den: int = 1):
        if den == 0:
            raise DivisionByZero("zero denominator")
        if self.kind == "prime":
            if den % self.param == 0:
                raise DivisionByZero(f"denominator divisible by {self.param}")
            return (num * pow(den, -1, self.param)) % self.param
        q = mpq(num, den)
        if self.kind == "rationals":
            return q
        return (q,) + self.zero[1:]

    def coerce(self, value):
        """Raw value from an int, Fraction, mpq, raw value or Scalar."""
        if isinstance(value, Scalar):
            if value.field is not self:
                raise FieldMismatch(f"{value.field} vs {self}")
            return value.raw
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int):
            return self.from_int(value)
        if isinstance(value, Fraction):
            return self.from_fraction(value.numerator, value.denominator)
        if type(value) is type(_MPQ0):
            return self.from_fraction(int(value.numerator), int(value.denominator))
        if self.kind == "cyclotomic" and isinstance(value, tuple) and len(value) == self.degree:
            return tuple(mpq(c) for c in value)
        raise TypeError(f"cannot coerce {value!r} into {self}")

    def zeta(self):
        """The class of z, a primitive n-th root of unity."""
        if self.kind != "cyclotomic":
            raise ValueError("zeta only exists in a cyclotomic field")
        n = self.param
        if self.degree == 1:
            return self.from_int(1 if n == 1 else -1)
        z = [_MPQ0] * self.degree
        z[1] = _MPQ1
        return tuple(z)

    def root_of_unity(self, order: int):
        """A primitive root of unity of the given order, as a raw value."""
        if order == 1:
            return self.one
        if order == 2 and self.characteristic != 2:
            return self.neg(self.one)
        if self.kind == "cyclotomic":
            n = self.param
            if n % order == 0:
                return self.pow(self.zeta(), n // order)
            if order % 2 == 0 and n % 2 == 1 and (2 * n) % order == 0:
                # -z has order 2n when n is odd
                return self.pow(self.neg(self.zeta()), 2 * n // order)
        if self.kind == "prime" and (self.param - 1) % order == 0:
            p = self.param
            for g in range(2, p):
                r = pow(g, (p - 1) // order, p)
                if all(pow(r, order // q, p) != 1 for q in _prime_factors(order)):
                    return r
        raise ValueError(f"{self} has no primitive root of unity of order {order}")

    def is_integer_valued(self, a) -> bool:
        """True when a lies in the prime subfield and is an integer."""
        if self.kind == "prime":
            return True
        if self.kind == "rationals":
            return a.denominator == 1
        return a[0].denominator == 1 and not any(a[1:])

    # literals ------------------------------------------------------------

    def format(self, a) -> str:
        if self.kind == "rationals":
            return _fmt_q(a)
        if self.kind == "prime":
            return f"{a} mod {self.param}"
        terms = []
        for i, c in enumerate(a):
            if not c:
                continue
            mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            if not mono:
                body = _fmt_q(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{_fmt_q(abs(c))}*{mono}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        if not terms:
            text = "0"
        else:
            first_sign, first = terms[0]
            text = ("-" if first_sign == "-" else "") + first
            for sign, body in terms[1:]:
                text += f" {sign} {body}"
        return f"{text} (zeta {self.param})"

    def parse_literal(self, text: str):
        """Parse a scalar literal into a raw value of this field."""
        t = text.strip()
        m = re.fullmatch(r"(.*)\(\s*zeta\s*(\d+)\s*\)", t)
        if m:
            n = int(m.group(2))
            if self.kind != "cyclotomic" or n != self.param:
                raise FieldMismatch(f"literal {text!r} is not in {self}")
            return self._parse_cyclotomic_body(m.group(1))
        m = re.fullmatch(r"(.*)\bmod\s+(\d+)", t)
        if m:
            p = int(m.group(2))
            if self.kind != "prime" or p != self.param:
                raise FieldMismatch(f"literal {text!r} is not in {self}")
            q = _parse_rational(m.group(1))
            return self.from_fraction(q.numerator, q.denominator)
        if self.kind == "cyclotomic" and "z" in t:
            return self._parse_cyclotomic_body(t)
        q = _parse_rational(t)
        return self.from_fraction(q.numerator, q.denominator)

    def _parse_cyclotomic_body(self, body: str):
        body = body.replace(" ", "")
        if not body:
            raise ValueError("empty cyclotomic literal")
        terms = []
        for sign, term in re.findall(r"([+-]?)([^+-]+)", body):
            m = re.fullmatch(r"(?:([0-9/]+)\*?)?(z(?:\^(\d+))?)?", term)
            if not m or (m.group(1) is None and m.group(2) is None):
                raise ValueError(f"bad cyclotomic term {term!r}")
            coef = _parse_rational(m.group(1)) if m.group(1) else Fraction(1)
            if sign == "-":
                coef = -coef
            power = 0
            if m.group(2):
                power = int(m.group(3)) if m.group(3) else 1
            terms.append((power, coef))
        z = self.zeta()
        result = self.zero
        for power, coef in terms:
            c = self.from_fraction(coef.numerator, coef.denominator)
            result = self.add(result, self.mul(c, self.pow(z, power)))
        return result

    def scalar(self, value) -> "Scalar":
        if isinstance(value, str):
            return Scalar(self, self.parse_literal(value))
        return Scalar(self, self.coerce(value))


def _prime_factors(n: int) -> list[int]:
    out, q = [], 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


def _fmt_q(q) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _parse_rational(text: str) -> Fraction:
    t = text.strip().replace(" ", "")
    if not re.fullmatch(r"[+-]?\d+(/\d+)?", t):
        raise ValueError(f"bad rational literal {text!r}")
    return Fraction(t)


class Scalar:
    """An immutable field element tagged with its :class:`FieldSpec`."""

    __slots__ = ("field", "raw")

    def __init__(self, field: FieldSpec, raw):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "raw", raw)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.field is not self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other.raw
        return self.field.coerce(other)

    def __add__(self, other):
        return Scalar(self.field, self.field.add(self.raw, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return Scalar(self.field, self.field.sub(self.raw, self._other(other)))

    def __rsub__(self, other):
        return Scalar(self.field, self.field.sub(self._other(other), self.raw))

    def __mul__(self, other):
        return Scalar(self.field, self.field.mul(self.raw, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return Scalar(self.field, self.field.div(self.raw, self._other(other)))

    def __rtruediv__(self, other):
        return Scalar(self.field, self.field.div(self._other(other), self.raw))

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.raw))

    def __pow__(self, e: int):
        return Scalar(self.field, self.field.pow(self.raw, e))

    def inverse(self) -> "Scalar":
        return Scalar(self.field, self.field.inv(self.raw))

    def is_zero(self) -> bool:
        return self.field.is_zero(self.raw)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            return self.field is other.field and self.raw == other.raw
        try:
            return self.raw == self.field.coerce(other)
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.kind, self.field.param, self.raw))

    def __repr__(self) -> str:
        return f"Scalar({self.field.format(self.raw)!r})"

    def __str__(self) -> str:
        return self.field.format(self.raw)


def parse_scalar(text: str, field: FieldSpec | None = None) -> Scalar:
    """Parse ``"a/b"``, ``"a mod p"`` or ``"c0 + c1*z + ... (zeta n)"``."""
    if field is None:
        t = text.strip()
        m = re.search(r"\(\s*zeta\s*(\d+)\s*\)\s*$", t)
        if m:
            field = FieldSpec.cyclotomic(int(m.group(1)))
        else:
            m = re.search(r"\bmod\s+(\d+)\s*$", t)
            field = FieldSpec.prime(int(m.group(1))) if m else FieldSpec.rationals()
    return field.scalar(text)


def scalar_arith(op: str, a: Scalar, b: Scalar | None = None) -> Scalar:
    """Dispatch ``add``, ``sub``, ``mul``, ``neg`` or ``inv`` on scalars."""
    if op == "neg":
        return -a
    if op == "inv":
        return a.inverse()
    if b is None:
        raise TypeError(f"{op} needs two operands")
    if b.field is not a.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")
    return {"add": operator.add, "sub": operator.sub, "mul": operator.mul}[op](a, b)
