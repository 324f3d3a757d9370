"""Exact arithmetic in GF(p^e) and in extension fields GF(q^m).

Element encoding
----------------
An element of a field of order N is an int in range(N).  For a prime
field the int is the residue itself.  For an extension of degree d over
a coefficient field of order c, the int is the little-endian base-c
encoding of the canonical coefficient vector (a0, a1, ..., a_{d-1}),
i.e. code = a0 + a1*c + ... + a_{d-1}*c^(d-1), where a_i is the
coefficient of t^i and t is the residue of the modulus variable.  Every
element has exactly one code, so equality of elements is int equality.

Enumeration order is code-ascending (zero first), and the modulus
search order is documented at _find_irreducible.  Both orders are part
of the reproducibility contract.

Multiplication is schoolbook on coefficient vectors with reduction by
the monic modulus; fields of order <= _TABLE_MAX additionally cache
full add/mul/neg/inv tables, which is what makes brute-force point
enumeration affordable in pure Python.
"""

from __future__ import annotations

from typing import Iterator, Optional, Sequence

from .errors import (
    DegreeZeroError,
    DivisionByZeroError,
    FieldMismatchError,
    NotPrimeError,
)

PRIME_CAP = 1 << 20
_TABLE_MAX = 512


def is_prime(n: int) -> bool:
    """Trial-division primality check, capped at desk scale."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Field:
    """A described finite field: either a prime field GF(p) or a degree-d
    extension of another described field.

    ``base is None`` marks a prime field.  ``make_field`` builds GF(p^e)
    (base = GF(p) when e > 1); ``extend`` builds GF(q^m) on top of any
    described field, with the constant-inclusion embedding.
    """

    __slots__ = (
        "char", "base", "degree", "modulus", "order", "e",
        "_add_t", "_mul_t", "_neg_t", "_inv_t",
    )

    def __init__(self, char: int, base: Optional["Field"] = None,
                 degree: int = 1, modulus: Optional[tuple] = None):
        self.char = char
        self.base = base
        self.degree = degree
        self.modulus = modulus
        if base is None:
            self.order = char
            self.e = 1
        else:
            self.order = base.order ** degree
            self.e = base.e * degree
        self._add_t = self._mul_t = self._neg_t = self._inv_t = None
        if base is not None and self.order <= _TABLE_MAX:
            self._build_tables()

    # -- identity ---------------------------------------------------------

    def _key(self):
        return (self.char, self.degree, self.modulus,
                None if self.base is None else self.base._key())

    def __eq__(self, other):
        return isinstance(other, Field) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        if self.base is None:
            return f"GF({self.char})"
        return f"GF({self.order})"

    # -- digit codecs -----------------------------------------------------

    def digits(self, a: int) -> list:
        """Little-endian coefficient vector of ``a`` over the base field."""
        c = self.char if self.base is None else self.base.order
        out = []
        for _ in range(self.degree):
            a, r = divmod(a, c)
            out.append(r)
        return out

    def encode(self, digs: Sequence[int]) -> int:
        c = self.char if self.base is None else self.base.order
        a = 0
        for d in reversed(digs):
            a = a * c + d
        return a

    # -- arithmetic -------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.base is None:
            return (a + b) % self.char
        if self._add_t is not None:
            return self._add_t[a][b]
        return self._add_generic(a, b)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def neg(self, a: int) -> int:
        if self.base is None:
            return (-a) % self.char
        if self._neg_t is not None:
            return self._neg_t[a]
        B = self.base
        return self.encode([B.neg(d) for d in self.digits(a)])

    def mul(self, a: int, b: int) -> int:
        if self.base is None:
            return (a * b) % self.char
        if self._mul_t is not None:
            return self._mul_t[a][b]
        return self._mul_generic(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZeroError("inverse of zero")
        if self.base is None:
            return pow(a, self.char - 2, self.char)
        if self._inv_t is not None:
            return self._inv_t[a]
        return self.pow(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        """Square-and-multiply; k >= 0."""
        if k < 0:
            raise ValueError("negative exponent")
        if self.base is None:
            return pow(a, k, self.char)
        result = 1
        while k:
            if k & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            k >>= 1
        return result

    def _add_generic(self, a: int, b: int) -> int:
        B = self.base
        da, db = self.digits(a), self.digits(b)
        return self.encode([B.add(x, y) for x, y in zip(da, db)])

    def _mul_generic(self, a: int, b: int) -> int:
        B = self.base
        d = self.degree
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(da):
            if x == 0:
                continue
            for j, y in enumerate(db):
                if y:
                    prod[i + j] = B.add(prod[i + j], B.mul(x, y))
        # monic modulus: t^d = -sum(modulus[j] t^j, j < d)
        for i in range(2 * d - 2, d - 1, -1):
            c = prod[i]
            if c:
                prod[i] = 0
                for j in range(d):
                    mj = self.modulus[j]
                    if mj:
                        prod[i - d + j] = B.sub(prod[i - d + j],
                                                B.mul(c, mj))
        return self.encode(prod[:d])

    def _build_tables(self):
        n = self.order
        add_t = [[self._add_generic(a, b) for b in range(n)]
                 for a in range(n)]
        mul_t = [[self._mul_generic(a, b) for b in range(n)]
                 for a in range(n)]
        neg_t = [0] * n
        inv_t = [0] * n
        for a in range(n):
            for b in range(n):
                if add_t[a][b] == 0:
                    neg_t[a] = b
                if a and mul_t[a][b] == 1:
                    inv_t[a] = b
        self._add_t, self._mul_t = add_t, mul_t
        self._neg_t, self._inv_t = neg_t, inv_t

    # -- queries ----------------------------------------------------------

    def elements(self) -> Iterator[int]:
        """All elements, zero first, in code-ascending order."""
        return iter(range(self.order))

    def is_square(self, a: int) -> bool:
        """True iff a has a square root; char 2 is always a square
        (Frobenius is surjective), odd order uses the Euler criterion."""
        if self.char == 2:
            return True
        return a == 0 or self.pow(a, (self.order - 1) // 2) == 1

    def embed(self, a: int) -> int:
        """Constant-inclusion embedding of a base-field element.

        Base codes are reused verbatim as constant polynomials, so the
        embedding is the identity on codes.
        """
        if self.base is None:
            raise FieldMismatchError("prime field has no base to embed")
        if not 0 <= a < self.base.order:
            raise FieldMismatchError("element not in the base field")
        return a

    def element_str(self, a: int, gen: str = "g") -> str:
        """Render an element in the scenario grammar (prime residue, or a
        polynomial in the generator symbol for e > 1 over a prime base)."""
        if self.base is None:
            return str(a)
        if self.base.base is not None:
            raise FieldMismatchError(
                "printing supported only over a prime base")
        parts = []
        for i, c in enumerate(self.digits(a)):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                head = "" if c == 1 else f"{c}*"
                parts.append(f"{head}{gen}" + (f"^{i}" if i > 1 else ""))
        return " + ".join(parts) if parts else "0"


# -- univariate polynomial helpers over a described field ------------------
# Polynomials are little-endian lists of element codes, no trailing zeros.


def _uv_trim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def _uv_mul(F: Field, f, g):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            if b:
                out[i + j] = F.add(out[i + j], F.mul(a, b))
    return _uv_trim(out)

def _uv_sub(F: Field, f, g):
    n = max(len(f), len(g))
    f = list(f) + [0] * (n - len(f))
    g = list(g) + [0] * (n - len(g))
    return _uv_trim([F.sub(a, b) for a, b in zip(f, g)])


def _uv_mod(F: Field, f, m):
    f = list(f)
    dm = len(m) - 1
    inv_lead = F.inv(m[-1])
    while len(f) - 1 >= dm and f:
        c = F.mul(f[-1], inv_lead)
        shift = len(f) - 1 - dm
        if c:
            for j, mj in enumerate(m):
                if mj:
                    f[shift + j] = F.sub(f[shift + j], F.mul(c, mj))
        f.pop()
        _uv_trim(f)
    return f


def _uv_powmod(F: Field, f, k: int, m):
    result = [1]
    f = _uv_mod(F, f, m)
    while k:
        if k & 1:
            result = _uv_mod(F, _uv_mul(F, result, f), m)
        f = _uv_mod(F, _uv_mul(F, f, f), m)
        k >>= 1
    return result


def _uv_gcd(F: Field, f, g):
    f, g = list(f), list(g)
    while g:
        f, g = g, _uv_mod(F, f, g)
    return f


def _prime_factors(n: int):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(F: Field, modulus: Sequence[int]) -> bool:
    """Irreducibility of a monic polynomial over the described field F.

    Uses the Frobenius criterion: f of degree d over GF(q) is
    irreducible iff T^(q^d) = T mod f and gcd(T^(q^(d/l)) - T, f) is
    constant for every prime l dividing d.
    """
    d = len(modulus) - 1
    if d < 1 or modulus[-1] != 1:
        return False
    if d == 1:
        return True
    q = F.order
    m = list(modulus)
    t = [0, 1]
    top = _uv_powmod(F, t, q ** d, m)
    if _uv_sub(F, top, t):
        return False
    for ell in _prime_factors(d):
        part = _uv_powmod(F, t, q ** (d // ell), m)
        g = _uv_gcd(F, m, _uv_sub(F, part, t))
        if len(g) > 1:
            return False
    return True


def _find_irreducible(F: Field, degree: int, seed: int) -> tuple:
    """Deterministic seeded search for a monic irreducible of the given
    degree over F.

    Search order: candidate index k runs 0, 1, 2, ... and the candidate
    examined at step k has non-leading coefficient vector given by the
    base-|F| digits of (seed + k) mod |F|^degree (little-endian, lowest
    degree first), with leading coefficient 1.  The first irreducible
    candidate wins.
    """
    n = F.order ** degree
    for k in range(n):
        idx = (seed + k) % n
        digs = []
        v = idx
        for _ in range(degree):
            digs.append(v % F.order)
            v //= F.order
        cand = tuple(digs) + (1,)
        if is_irreducible(F, cand):
            return cand
    raise AssertionError("no irreducible polynomial found")  # unreachable


def make_field(p: int, e: int, seed: int = 0) -> Field:
    """GF(p^e) with a deterministic seeded modulus (ignored for e = 1)."""
    if not isinstance(p, int) or not is_prime(p) or p >= PRIME_CAP:
        raise NotPrimeError(f"{p} is not a prime below 2^20")
    if e < 1:
        raise DegreeZeroError(f"extension degree must be >= 1, got {e}")
    prime = Field(p)
    if e == 1:
        return prime
    modulus = _find_irreducible(prime, e, seed)
    return Field(p, base=prime, degree=e, modulus=modulus)


def extend(F: Field, m: int, seed: int = 0) -> Field:
    """Degree-m extension of F with the identity-on-codes embedding.

    m = 1 returns F itself.
    """
    if m < 1:
        raise DegreeZeroError(f"extension degree must be >= 1, got {m}")
    if m == 1:
        return F
    modulus = _find_irreducible(F, m, seed)
    return Field(F.char, base=F, degree=m, modulus=modulus)


def field_of_order(q: int, seed: int = 0) -> Field:
    """GF(q) for a prime power q, via make_field on the factorization."""
    if q < 2:
        raise NotPrimeError(f"{q} is not a prime power")
    p = min(_prime_factors(q))
    e = 0
    v = q
    while v % p == 0:
        v //= p
        e += 1
    if v != 1:
        raise NotPrimeError(f"{q} is not a prime power")
    return make_field(p, e, seed)
