"""Exact rational scalars and sparse multivariate polynomials over Q.

A :class:`RingSpec` names the variables of ``Q[x_1..x_n]`` and optionally a
monomial-power ideal ``(x_1^d_1, ..., x_n^d_n)``.  Polynomials are stored as
a dict ``exponent tuple -> Fraction`` with no zero coefficients and, in a
truncated ring, only monomials strictly below every bound.  Because the
ideal is monomial, reduction just deletes terms; it is both a linear
projection and a ring homomorphism.

Polynomials print and parse with the grammar::

    poly  := term (('+'|'-') term)*
    term  := factor ('*' factor)*
    factor:= int ('/' posint)? | var ('^' nat)?

e.g. ``3/2*x^2*y - 1``.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping, Union

from .errors import ParseError, StructuralError

Rational = Fraction
Monomial = tuple  # tuple[int, ...], one exponent per ring variable

Scalar = Union[int, Fraction]

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class RingSpec:
    """Variables of the base ring plus optional per-variable truncation bounds.

    ``truncation[i] is None`` leaves variable ``i`` unbounded (used for the
    homotopy parameter, which no ideal may bound).
    """

    variables: tuple[str, ...] = ()
    truncation: tuple[int | None, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        for name in self.variables:
            if not isinstance(name, str) or not _NAME.match(name):
                raise StructuralError(f"invalid variable name {name!r}")
        if len(set(self.variables)) != len(self.variables):
            raise StructuralError(f"duplicate variable names in {self.variables}")
        trunc = self.truncation
        if trunc is not None:
            trunc = tuple(trunc)
            if len(trunc) != len(self.variables):
                raise StructuralError("truncation bounds must cover every variable")
            for b in trunc:
                if b is not None and (not isinstance(b, int) or b < 1):
                    raise StructuralError(f"truncation bound must be an integer >= 1, got {b!r}")
            if all(b is None for b in trunc):
                trunc = None
        object.__setattr__(self, "truncation", trunc)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def is_truncated(self) -> bool:
        return self.truncation is not None

    @property
    def is_finite(self) -> bool:
        """True when the ring is finite-dimensional over Q."""
        if not self.variables:
            return True
        return self.truncation is not None and all(b is not None for b in self.truncation)

    def bound(self, i: int) -> int | None:
        return None if self.truncation is None else self.truncation[i]

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise StructuralError(f"unknown variable {name!r} in ring {self}") from None

    def admits(self, mono: Monomial) -> bool:
        if self.truncation is None:
            return True
        return all(b is None or e < b for e, b in zip(mono, self.truncation))

    # constructors -------------------------------------------------------
    def zero(self) -> Polynomial:
        return Polynomial(self)

    def one(self) -> Polynomial:
        return self.const(1)

    def const(self, c: Scalar) -> Polynomial:
        return Polynomial(self, {(0,) * self.nvars: Fraction(c)})

    def var(self, which: str | int) -> Polynomial:
        i = which if isinstance(which, int) else self.index(which)
        if not 0 <= i < self.nvars:
            raise StructuralError(f"variable index {i} out of range")
        mono = tuple(1 if k == i else 0 for k in range(self.nvars))
        return Polynomial(self, {mono: Fraction(1)})

    def monomial(self, mono: Monomial, coeff: Scalar = 1) -> Polynomial:
        return Polynomial(self, {tuple(mono): Fraction(coeff)})

    def parse(self, text: str) -> Polynomial:
        return parse_polynomial(text, self)

    # enumeration --------------------------------------------------------
    def finite_basis(self) -> list[Monomial]:
        """All standard monomials of a finite-dimensional ring, in grlex order."""
        if not self.is_finite:
            raise StructuralError("ring is not finite-dimensional over Q")
        bounds = self.truncation or ()
        monos = list(itertools.product(*(range(b) for b in bounds)))
        monos.sort(key=_grlex_key)
        return monos

    def monomials_up_to(self, degree: int) -> list[Monomial]:
        """Monomials of total degree <= ``degree`` admitted by the ring, grlex ascending."""
        monos = [
            m for m in itertools.product(range(degree + 1), repeat=self.nvars)
            if sum(m) <= degree and self.admits(m)
        ]
        monos.sort(key=_grlex_key)
        return monos

    # derived rings ------------------------------------------------------
    def extend(self, name: str) -> RingSpec:
        """Append a fresh unbounded variable."""
        if name in self.variables:
            raise StructuralError(f"variable {name!r} already present")
        trunc = None if self.truncation is None else self.truncation + (None,)
        return RingSpec(self.variables + (name,), trunc)

    def drop(self, i: int) -> RingSpec:
        vars_ = self.variables[:i] + self.variables[i + 1:]
        trunc = None if self.truncation is None else self.truncation[:i] + self.truncation[i + 1:]
        return RingSpec(vars_, trunc)

    def __str__(self):
        base = "Q[" + ",".join(self.variables) + "]" if self.variables else "Q"
        if self.truncation is None:
            return base
        gens = [f"{v}^{b}" for v, b in zip(self.variables, self.truncation) if b is not None]
        return f"{base}/({','.join(gens)})"


def _grlex_key(mono: Monomial):
    return (sum(mono), mono)


class Polynomial:
    """Immutable sparse polynomial with Fraction coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: RingSpec, terms: Mapping[Monomial, Scalar] | None = None):
        self.ring = ring
        clean: dict[Monomial, Fraction] = {}
        if terms:
            n = ring.nvars
            for mono, c in terms.items():
                mono = tuple(mono)
                if len(mono) != n:
                    raise StructuralError(
                        f"monomial {mono} has {len(mono)} exponents, ring {ring} has {n} variables")
                if any(e < 0 for e in mono):
                    raise StructuralError(f"negative exponent in {mono}")
                if c and ring.admits(mono):
                    clean[mono] = Fraction(c)
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ring: RingSpec, terms: dict) -> Polynomial:
        # caller guarantees the invariants
        p = object.__new__(cls)
        p.ring = ring
        p.terms = terms
        p._hash = None
        return p

    # coercion -----------------------------------------------------------
    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise StructuralError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return Polynomial._raw(self.ring, {})
        trunc = self.ring.truncation
        out: dict = {}
        get = out.get
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                if trunc is not None and any(b is not None and e >= b for e, b in zip(m, trunc)):
                    continue
                out[m] = get(m, 0) + c1 * c2
        return Polynomial._raw(self.ring, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        for _ in range(n):
            result = result * self
        return result

    def scale(self, c: Scalar) -> Polynomial:
        c = Fraction(c)
        if not c:
            return Polynomial._raw(self.ring, {})
        return Polynomial._raw(self.ring, {m: v * c for m, v in self.terms.items()})

    def derive(self, i: int) -> Polynomial:
        """Formal partial derivative in variable ``i``, computed on the stored representative."""
        if not 0 <= i < self.ring.nvars:
            raise StructuralError(f"variable index {i} out of range for {self.ring}")
        out = {}
        for m, c in self.terms.items():
            e = m[i]
            if e:
                out[m[:i] + (e - 1,) + m[i + 1:]] = c * e
        return Polynomial._raw(self.ring, out)

    def reduce(self, ring: RingSpec | None = None) -> Polynomial:
        """Canonical representative modulo the truncation ideal of ``ring``."""
        ring = ring or self.ring
        if ring.variables != self.ring.variables:
            raise StructuralError(f"cannot reduce {self.ring} into {ring}")
        return Polynomial._raw(ring, {m: c for m, c in self.terms.items() if ring.admits(m)})

    def substitute(self, i: int, value: Scalar) -> Polynomial:
        """Set variable ``i`` to a rational constant; the result lives in ``ring.drop(i)``."""
        value = Fraction(value)
        ring = self.ring.drop(i)
        out: dict = {}
        for m, c in self.terms.items():
            key = m[:i] + m[i + 1:]
            out[key] = out.get(key, 0) + c * value ** m[i]
        return Polynomial(ring, out)

    def embed(self, ring: RingSpec) -> Polynomial:
        """View as a polynomial of a ring with extra trailing variables."""
        k = ring.nvars - self.ring.nvars
        if k < 0 or ring.variables[: self.ring.nvars] != self.ring.variables:
            raise StructuralError(f"{ring} does not extend {self.ring}")
        pad = (0,) * k
        return Polynomial(ring, {m + pad: c for m, c in self.terms.items()})

    # inspection ---------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.ring.nvars, Fraction(0))

    def coefficient(self, mono: Monomial) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in descending graded-lex order."""
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r}, ring={self.ring})"


# free-function API ---------------------------------------------------

def _check_same(p: Polynomial, q: Polynomial):
    if p.ring != q.ring:
        raise StructuralError(f"ring mismatch: {p.ring} vs {q.ring}")


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    _check_same(p, q)
    return p * q


def poly_derive(p: Polynomial, var_index: int) -> Polynomial:
    return p.derive(var_index)


def poly_reduce(p: Polynomial, ring: RingSpec | None = None) -> Polynomial:
    return p.reduce(ring)


# text format -------------------------------------------------------------

def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_polynomial(p: Polynomial) -> str:
    if not p.terms:
        return "0"
    names = p.ring.variables
    pieces = []
    for mono, c in p.sorted_terms():
        factors = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, mono) if e]
        mag = abs(c)
        if not factors:
            body = _format_coeff(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = _format_coeff(mag) + "*" + "*".join(factors)
        pieces.append(("-" if c < 0 else "+", body))
    sign, body = pieces[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\^|\*|/|\+|-))")


def _tokens(text: str) -> Iterator[tuple[str, str]]:
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at position {pos} in {text!r}")
        pos = m.end()
        if m.group(1) is not None:
            yield "int", m.group(1)
        elif m.group(2) is not None:
            yield "var", m.group(2)
        else:
            yield "op", m.group(3)


def parse_polynomial(text: str | int, ring: RingSpec) -> Polynomial:
    """Parse a polynomial string (or a bare int) into ``ring``."""
    if isinstance(text, bool):
        raise ParseError(f"not a polynomial: {text!r}")
    if isinstance(text, int):
        return ring.const(text)
    if not isinstance(text, str):
        raise ParseError(f"not a polynomial: {text!r}")
    toks = list(_tokens(text))
    if not toks:
        raise ParseError("empty polynomial string")
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else (None, None)

    def take(kind=None, value=None):
        nonlocal pos
        tok = peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            want = value or kind or "token"
            raise ParseError(f"expected {want} at token {pos} in {text!r}")
        pos += 1
        return tok[1]

    def factor() -> Polynomial:
        kind, val = peek()
        if kind == "int":
            take()
            num = int(val)
            if peek() == ("op", "/"):
                take()
                den = int(take("int"))
                if den == 0:
                    raise ParseError(f"zero denominator in {text!r}")
                return ring.const(Fraction(num, den))
            return ring.const(num)
        if kind == "var":
            take()
            base = ring.var(ring.index(val)) if val in ring.variables else None
            if base is None:
                raise ParseError(f"unknown variable {val!r} in {text!r} (ring {ring})")
            if peek() == ("op", "^"):
                take()
                return base ** int(take("int"))
            return base
        raise ParseError(f"expected number or variable at token {pos} in {text!r}")

    def term() -> Polynomial:
        acc = factor()
        while peek() == ("op", "*"):
            take()
            acc = acc * factor()
        return acc

    total = ring.zero()
    sign = 1
    if peek() in (("op", "-"), ("op", "+")):
        sign = -1 if take() == "-" else 1
    total = total + term().scale(sign)
    while pos < len(toks):
        op = take("op")
        if op not in "+-":
            raise ParseError(f"unexpected {op!r} in {text!r}")
        t = term()
        total = total + t if op == "+" else total - t
    return total
