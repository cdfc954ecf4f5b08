"""Finite fields F_{p^m} with log/antilog tables.

Elements are plain ints. The int ``a`` encodes the polynomial-basis
coordinates of the element in base p, i.e. ``a = c_0 + c_1 p + ... + c_{m-1} p^{m-1}``
stands for ``c_0 + c_1 t + ... + c_{m-1} t^{m-1}``. In particular the
prime-subfield element ``d`` is the int ``d`` and ``0``/``1`` are themselves.
"""

from __future__ import annotations

import itertools
import re
from functools import cached_property
from math import gcd

import numpy as np

__all__ = [
    "DEFAULT_MODULI",
    "FieldError",
    "GF",
    "Frobenius",
    "field_build",
    "is_irreducible",
    "primitive_moduli",
]

# ascending coefficient lists
DEFAULT_MODULI: dict[int, tuple[int, ...]] = {
    4: (1, 1, 1),
    9: (2, 2, 1),
    16: (1, 1, 0, 0, 1),
    25: (2, 4, 1),
    49: (3, 6, 1),
}

MAX_ORDER = 1 << 16

_ELEMENT_RE = re.compile(r"^(?:0|[0-9]+|t|t\^[0-9]+)$")


class FieldError(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p**0.5) + 1))


def _poly_mod_p(a: list[int], b: list[int], p: int) -> list[int]:
    """Remainder of a by monic-able b over F_p (ascending lists, b nonzero)."""
    a = [x % p for x in a]
    db = len(b) - 1
    inv_lead = pow(b[-1], -1, p)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] * inv_lead % p
        if c:
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % p
    a = a[:db]
    while a and a[-1] == 0:
        a.pop()
    return a


def is_irreducible(modulus: list[int] | tuple[int, ...], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..m//2."""
    m = len(modulus) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    for deg in range(1, m // 2 + 1):
        for tail in itertools.product(range(p), repeat=deg):
            if not _poly_mod_p(list(modulus), list(tail) + [1], p):
                return False
    return True


class GF:
    """The field F_{p^m} realised as F_p[t]/(modulus) with t primitive.

    Arithmetic on nonzero elements goes through discrete-log tables, so the
    modulus must make ``t`` a generator of the multiplicative group.
    """

    def __init__(self, p: int, m: int, modulus) -> None:
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != m + 1 or modulus[-1] != 1:
            raise FieldError(f"modulus must be monic of degree {m}: {modulus}")
        if not is_irreducible(modulus, p):
            raise FieldError(f"modulus {format_modulus(modulus)} is reducible over F_{p}")
        self.p = p
        self.m = m
        self.q = p**m
        self.modulus = modulus
        self.generator_label = "t"

        q = self.q
        antilog = [0] * (q - 1)
        log = [-1] * q
        vec = [1] + [0] * (m - 1)
        for k in range(q - 1):
            code = self._encode(vec)
            if log[code] != -1:
                raise FieldError(
                    f"t is not primitive modulo {format_modulus(modulus)}: order {k}, "
                    f"expected {q - 1}"
                )
            antilog[k] = code
            log[code] = k
            # multiply by t and reduce
            carry = vec[-1]
            vec = [0] + vec[:-1]
            if carry:
                vec = [(vec[i] - carry * modulus[i]) % p for i in range(m)]
        self.antilog_table = tuple(antilog)
        self.log_table = tuple(log)

        self._add = [[self._encode([(x + y) % p for x, y in zip(self._decode(a), self._decode(b))])
                      for b in range(q)] for a in range(q)]
        self._neg = [self._encode([(-x) % p for x in self._decode(a)]) for a in range(q)]

    # -- encoding -------------------------------------------------------
    def _encode(self, vec) -> int:
        out = 0
        for c in reversed(vec):
            out = out * self.p + c
        return out

    def _decode(self, a: int) -> list[int]:
        out = []
        for _ in range(self.m):
            a, c = divmod(a, self.p)
            out.append(c)
        return out

    def coeffs(self, a: int) -> tuple[int, ...]:
        """Polynomial-basis coordinates of ``a`` (coefficient of t^i at index i)."""
        return tuple(self._decode(a))

    def from_coeffs(self, vec) -> int:
        vec = list(vec)
        if len(vec) != self.m or any(not 0 <= c < self.p for c in vec):
            raise FieldError(f"bad coordinate vector {vec} for F_{self.q}")
        return self._encode(vec)

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.m}, modulus={format_modulus(self.modulus)})"

    def __eq__(self, other) -> bool:
        return isinstance(other, GF) and (self.p, self.m, self.modulus) == (
            other.p, other.m, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.m, self.modulus))

    # -- arithmetic -----------------------------------------------------
    zero = 0
    one = 1

    def elements(self) -> range:
        return range(self.q)

    def is_zero(self, a: int) -> bool:
        return a == 0

    def is_unit(self, a: int) -> bool:
        return a != 0

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self._add[a][self._neg[b]]

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.antilog_table[(self.log_table[a] + self.log_table[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.antilog_table[-self.log_table[a] % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise ZeroDivisionError("division by zero in " + repr(self))
        if a == 0:
            return 0
        return self.antilog_table[(self.log_table[a] - self.log_table[b]) % (self.q - 1)]

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k < 0:
                raise ZeroDivisionError("0 has no inverse")
            return 1 if k == 0 else 0
        return self.antilog_table[(self.log_table[a] * k) % (self.q - 1)]

    def t_pow(self, k: int) -> int:
        """The element t^k."""
        return self.antilog_table[k % (self.q - 1)]

    def log(self, a: int) -> int:
        if a == 0:
            raise ValueError("0 has no discrete log")
        return self.log_table[a]

    def order(self, a: int) -> int:
        """Multiplicative order of a nonzero element."""
        return (self.q - 1) // gcd(self.log(a), self.q - 1)

    def prime_element(self, d: int) -> int:
        """The prime-subfield element d*1."""
        return d % self.p

    def in_prime_field(self, a: int) -> bool:
        return a < self.p

    def sum(self, values) -> int:
        acc = 0
        for v in values:
            acc = self._add[acc][v]
        return acc

    # -- numpy tables for vectorised kernels ----------------------------
    @cached_property
    def add_table(self) -> np.ndarray:
        return np.array(self._add, dtype=np.int32)

    @cached_property
    def neg_table(self) -> np.ndarray:
        return np.array(self._neg, dtype=np.int32)

    @cached_property
    def sub_table(self) -> np.ndarray:
        return self.add_table[:, self.neg_table]

    @cached_property
    def mul_table(self) -> np.ndarray:
        q = self.q
        tab = np.zeros((q, q), dtype=np.int32)
        for a in range(1, q):
            for b in range(1, q):
                tab[a, b] = self.mul(a, b)
        return tab

    @cached_property
    def inv_table(self) -> np.ndarray:
        # inv_table[0] is a sentinel 0; callers never invert zero
        return np.array([0] + [self.inv(a) for a in range(1, self.q)], dtype=np.int32)

    # -- notation -------------------------------------------------------
    def parse(self, token: str) -> int:
        """Parse an element token: ``0``, a prime-field digit string, ``t`` or ``t^k``."""
        token = token.strip().replace("{", "").replace("}", "")
        if not _ELEMENT_RE.match(token):
            raise FieldError(f"malformed element token {token!r}")
        if token == "t":
            return self.t_pow(1)
        if token.startswith("t^"):
            return self.t_pow(int(token[2:]))
        d = int(token)
        if d >= self.p:
            raise FieldError(f"prime-field literal {d} out of range for characteristic {self.p}")
        return d

    def format(self, a: int) -> str:
        if not 0 <= a < self.q:
            raise FieldError(f"{a} is not an element of F_{self.q}")
        if a < self.p:
            return str(a)
        k = self.log_table[a]
        return "t" if k == 1 else f"t^{k}"


def format_modulus(modulus) -> str:
    terms = []
    for i in range(len(modulus) - 1, -1, -1):
        c = modulus[i]
        if not c:
            continue
        mon = "1" if i == 0 else ("t" if i == 1 else f"t^{i}")
        if i == 0:
            terms.append(str(c))
        else:
            terms.append(mon if c == 1 else f"{c}{mon}")
    return "+".join(terms) or "0"


def _prime_power(q: int) -> tuple[int, int]:
    for p in range(2, q + 1):
        if q % p == 0:
            m = 0
            while q % p == 0:
                q //= p
                m += 1
            if q != 1:
                break
            return p, m
    raise FieldError(f"{q} is not a prime power")


_FIELD_CACHE: dict[tuple, GF] = {}


def field_build(p: int, m: int, modulus=None) -> GF:
    """Build (or fetch from cache) the field F_{p^m}.

    With ``modulus=None`` the default table is used; only q in
    ``DEFAULT_MODULI`` have defaults.
    """
    if not _is_prime(p):
        raise FieldError(f"{p} is not prime")
    if m < 1:
        raise FieldError("extension degree must be >= 1")
    q = p**m
    if q > MAX_ORDER:
        raise FieldError(f"F_{q} exceeds the supported size {MAX_ORDER}")
    if modulus is None:
        if m == 1:
            # t = smallest primitive root; modulus t - g
            g = next(g for g in range(1, p) if p == 2 or all(
                pow(g, (p - 1) // r, p) != 1 for r in _prime_factors(p - 1)))
            modulus = ((-g) % p, 1)
        elif q in DEFAULT_MODULI:
            modulus = DEFAULT_MODULI[q]
        else:
            raise FieldError(f"no default modulus for F_{q}; pass one explicitly")
    key = (p, m, tuple(modulus))
    if key not in _FIELD_CACHE:
        _FIELD_CACHE[key] = GF(p, m, modulus)
    return _FIELD_CACHE[key]


def field_from_order(q: int, modulus=None) -> GF:
    p, m = _prime_power(q)
    return field_build(p, m, modulus)


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def primitive_moduli(p: int, m: int) -> list[tuple[int, ...]]:
    """All monic degree-m moduli over F_p under which t is primitive."""
    out = []
    for tail in itertools.product(range(p), repeat=m):
        mod = tuple(tail) + (1,)
        try:
            GF(p, m, mod)
        except FieldError:
            continue
        out.append(mod)
    return out


class Frobenius:
    """theta(a) = a^(p^e)."""

    def __init__(self, field: GF, e: int = 1) -> None:
        self.field = field
        self.e = e % field.m if field.m > 1 else 0
        self.order = field.m // gcd(field.m, self.e) if self.e else 1
        shift = pow(field.p, self.e, field.q - 1) if field.q > 2 else 1
        self.table = tuple(
            0 if a == 0 else field.antilog_table[(field.log_table[a] * shift) % (field.q - 1)]
            for a in range(field.q)
        )

    def __call__(self, a: int) -> int:
        return self.table[a]

    def power(self, k: int) -> "Frobenius":
        return Frobenius(self.field, self.e * k)

    def fixes(self, a: int) -> bool:
        return self.table[a] == a

    @cached_property
    def np_table(self) -> np.ndarray:
        return np.array(self.table, dtype=np.int32)

    def __repr__(self) -> str:
        return f"Frobenius(a -> a^{self.field.p}^{self.e} on F_{self.field.q})"
