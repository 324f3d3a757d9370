"""Sparse multivariate polynomials over a described field, plus the text
expression parser used by the scenario file format.

Grammar (verbatim, the public scenario contract):

    expr   := term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' nonneg-int)?
    atom   := int-literal | var-name | 'g' | '(' expr ')'

Integer literals reduce mod p.  The reserved name 'g' denotes the
canonical generator (the residue of the modulus variable) and is legal
only when e > 1.

Canonical term order (used for printing, equality and golden files):
total degree descending, then exponent vector descending
lexicographically with earlier variables more significant.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Tuple

from .errors import (
    ArityMismatchError,
    FieldMismatchError,
    GeneratorInPrimeFieldError,
    NegativeExponentError,
    PolySyntaxError,
    UnknownVariableError,
    ZeroPolynomialError,
)
from .fields import Field

Monomial = Tuple[int, ...]


def _term_key(exps: Monomial):
    return (-sum(exps), tuple(-x for x in exps))


@dataclass(frozen=True)
class Poly:
    """Immutable sparse polynomial; terms map exponent vectors to nonzero
    coefficient codes and are stored in canonical order."""

    field: Field
    variables: Tuple[str, ...]
    terms: Tuple[Tuple[Monomial, int], ...]

    @classmethod
    def from_terms(cls, field, variables, mapping) -> "Poly":
        variables = tuple(variables)
        clean = {tuple(e): c for e, c in mapping.items() if c != 0}
        ordered = tuple(sorted(clean.items(), key=lambda t: _term_key(t[0])))
        return cls(field, variables, ordered)

    @classmethod
    def zero(cls, field, variables) -> "Poly":
        return cls(field, tuple(variables), ())

    @classmethod
    def constant(cls, field, variables, code: int) -> "Poly":
        nv = len(variables)
        return cls.from_terms(field, variables, {(0,) * nv: code})

    @classmethod
    def variable(cls, field, variables, name: str) -> "Poly":
        variables = tuple(variables)
        i = variables.index(name)
        exps = tuple(1 if j == i else 0 for j in range(len(variables)))
        return cls.from_terms(field, variables, {exps: 1})

    # -- ring operations --------------------------------------------------

    def _check(self, other: "Poly"):
        if self.field != other.field or self.variables != other.variables:
            raise FieldMismatchError("polynomials over different contexts")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        F = self.field
        acc = dict(self.terms)
        for e, c in other.terms:
            acc[e] = F.add(acc.get(e, 0), c)
        return Poly.from_terms(F, self.variables, acc)

    def __neg__(self) -> "Poly":
        F = self.field
        return Poly(F, self.variables,
                    tuple((e, F.neg(c)) for e, c in self.terms))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        F = self.field
        acc = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = F.add(acc.get(e, 0), F.mul(c1, c2))
        return Poly.from_terms(F, self.variables, acc)

    def scale(self, code: int) -> "Poly":
        F = self.field
        return Poly.from_terms(
            F, self.variables,
            {e: F.mul(c, code) for e, c in self.terms})

    def pow(self, k: int) -> "Poly":
        result = Poly.constant(self.field, self.variables, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- queries ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        if not self.terms:
            raise ZeroPolynomialError("degree of the zero polynomial")
        return max(sum(e) for e, _ in self.terms)

    def homogeneous_degree(self):
        """The common total degree of all terms, or None if the terms mix
        degrees.  Undefined (raises) on the zero polynomial."""
        if not self.terms:
            raise ZeroPolynomialError("zero polynomial has no degree")
        degrees = {sum(e) for e, _ in self.terms}
        return degrees.pop() if len(degrees) == 1 else None

    def eval(self, point: Sequence[int], field: Field = None) -> int:
        """Exact value at a coordinate vector.

        ``field`` may name an extension built on self.field (embedding
        is the identity on codes, so coefficients carry over verbatim).
        """
        F = self.field if field is None else field
        nv = len(self.variables)
        if len(point) != nv:
            raise ArityMismatchError(
                f"expected {nv} coordinates, got {len(point)}")
        maxexp = [0] * nv
        for e, _ in self.terms:
            for i, x in enumerate(e):
                if x > maxexp[i]:
                    maxexp[i] = x
        pows = [None] * nv
        acc = 0
        for e, c in self.terms:
            v = c
            for i, x in enumerate(e):
                if x:
                    pw = pows[i]
                    if pw is None:
                        pw = [1] * (maxexp[i] + 1)
                        for k in range(1, maxexp[i] + 1):
                            pw[k] = F.mul(pw[k - 1], point[i])
                        pows[i] = pw
                    v = F.mul(v, pw[x])
            acc = F.add(acc, v)
        return acc

    # -- printing ---------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        F = self.field
        parts = []
        for exps, c in self.terms:
            factors = []
            if F.base is None:
                coeff = str(c)
            else:
                coeff = F.element_str(c)
                if "+" in coeff or "*" in coeff:
                    coeff = f"({coeff})"
            mono = [f"{v}^{x}" if x > 1 else v
                    for v, x in zip(self.variables, exps) if x]
            if not mono or coeff not in ("1",):
                factors.append(coeff)
            factors.extend(mono)
            parts.append("*".join(factors))
        return " + ".join(parts)


def base_change(f: Poly, ext: Field) -> Poly:
    """Move f along the embedding into an extension of its field.

    Coefficient codes are reused verbatim (the embedding is the identity
    on codes), so only the field tag changes.
    """
    if ext.base != f.field:
        raise FieldMismatchError(
            "target is not a described extension of the polynomial's field")
    return Poly(ext, f.variables, f.terms)


def homogeneous_degree(f: Poly):
    return f.homogeneous_degree()


class _Parser:
    """Recursive-descent parser for the grammar at the top of the module."""

    def __init__(self, text: str, variables, field: Field):
        self.text = text
        self.pos = 0
        self.variables = tuple(variables)
        self.field = field

    def parse(self) -> Poly:
        result = self._expr()
        self._skip_ws()
        if self.pos < len(self.text):
            raise PolySyntaxError(
                f"unexpected character {self.text[self.pos]!r}", self.pos)
        return result

    def _skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self):
        self._skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _expr(self) -> Poly:
        acc = self._term()
        while True:
            ch = self._peek()
            if ch == "+":
                self.pos += 1
                acc = acc + self._term()
            elif ch == "-":
                self.pos += 1
                acc = acc - self._term()
            else:
                return acc

    def _term(self) -> Poly:
        acc = self._factor()
        while self._peek() == "*":
            self.pos += 1
            acc = acc * self._factor()
        return acc

    def _factor(self) -> Poly:
        atom = self._atom()
        if self._peek() == "^":
            self.pos += 1
            if self._peek() == "-":
                raise NegativeExponentError("negative exponent", self.pos)
            k = self._int_literal()
            return atom.pow(k)
        return atom

    def _int_literal(self) -> int:
        self._skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise PolySyntaxError("expected a nonnegative integer", start)
        return int(self.text[start:self.pos])

    def _atom(self) -> Poly:
        ch = self._peek()
        if ch == "(":
            self.pos += 1
            inner = self._expr()
            if self._peek() != ")":
                raise PolySyntaxError("expected ')'", self.pos)
            self.pos += 1
            return inner
        if ch.isdigit():
            value = self._int_literal() % self.field.char
            return Poly.constant(self.field, self.variables, value)
        if ch.isalpha() or ch == "_":
            start = self.pos
            while (self.pos < len(self.text)
                   and (self.text[self.pos].isalnum()
                        or self.text[self.pos] == "_")):
                self.pos += 1
            name = self.text[start:self.pos]
            if name == "g":
                if self.field.e == 1:
                    raise GeneratorInPrimeFieldError(
                        "'g' is reserved for extension fields", start)
                gen_code = self.field.char if self.field.base is None \
                    else self.field.base.order
                return Poly.constant(self.field, self.variables, gen_code)
            if name not in self.variables:
                raise UnknownVariableError(f"unknown variable {name!r}",
                                           start)
            return Poly.variable(self.field, self.variables, name)
        raise PolySyntaxError(f"unexpected character {ch!r}"
                              if ch else "unexpected end of input", self.pos)


def parse_poly(text: str, variables, field: Field) -> Poly:
    """Parse an expression into canonical form; parse(print(f)) == f."""
    return _Parser(text, variables, field).parse()
