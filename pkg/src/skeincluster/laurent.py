"""Exact multivariate Laurent polynomials with half-integer exponents.

Every polynomial in this package lives in a ring Z[v_1^{±1/2}, ..., v_k^{±1/2}]
for some fixed arity k.  A term is keyed by its exponent vector, stored in
HALF-UNITS: the tuple entry 2*e means true exponent e, entry 1 means exponent
1/2.  Keeping half-units as plain integers makes hashing and comparison exact;
rings that only ever need integer exponents (the cluster variables) simply keep
every entry even.

Coefficients are Python integers, so arbitrary precision comes for free.
Values are immutable after construction and all operations are pure, which
makes them safe to share across threads.

Rational coefficients are never stored.  Quantities like t/(t+1)^2 that arise
from trace normalisations are represented as an explicit numerator/denominator
pair (:class:`RationalLaurent`); a failed exact division surfaces as
:class:`NotDivisibleError` instead of being absorbed into the coefficients.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence


class NotDivisibleError(ArithmeticError):
    """Raised when an exact Laurent division has no Laurent result."""


class ArityMismatchError(ValueError):
    """Raised when operands live in rings of different arity."""


def _check_same_arity(a: "LaurentPoly", b: "LaurentPoly") -> None:
    if a.arity != b.arity:
        raise ArityMismatchError(f"arity {a.arity} vs {b.arity}")


class LaurentPoly:
    """Immutable Laurent polynomial in ``arity`` variables.

    ``terms`` maps half-unit exponent tuples to nonzero integer coefficients.
    The canonical form never stores a zero coefficient or a duplicate key, so
    structural equality of the term map is ring equality.
    """

    __slots__ = ("arity", "_terms")

    def __init__(self, arity: int, terms: Mapping[tuple[int, ...], int] | Iterable = ()):
        if arity < 0:
            raise ValueError("arity must be >= 0")
        clean: dict[tuple[int, ...], int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for exps, coeff in items:
            key = tuple(exps)
            if len(key) != arity:
                raise ArityMismatchError(f"exponent vector {key} has length != {arity}")
            if not all(isinstance(e, int) for e in key):
                raise TypeError("exponent entries must be integers (half-units)")
            if not isinstance(coeff, int):
                raise TypeError("coefficients must be integers")
            if coeff == 0:
                continue
            total = clean.get(key, 0) + coeff
            if total:
                clean[key] = total
            else:
                clean.pop(key, None)
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "_terms", clean)

    def __setattr__(self, name, value):  # pragma: no cover - guard rail
        raise AttributeError("LaurentPoly is immutable")

    # ----- constructors -------------------------------------------------

    @classmethod
    def zero(cls, arity: int) -> "LaurentPoly":
        return cls(arity)

    @classmethod
    def constant(cls, arity: int, c: int) -> "LaurentPoly":
        return cls(arity, {(0,) * arity: c})

    @classmethod
    def one(cls, arity: int) -> "LaurentPoly":
        return cls.constant(arity, 1)

    @classmethod
    def variable(cls, arity: int, index: int, power: int = 1) -> "LaurentPoly":
        """The monomial v_index^power with an integer power."""
        return cls.half_power(arity, index, 2 * power)

    @classmethod
    def half_power(cls, arity: int, index: int, half_units: int, coeff: int = 1) -> "LaurentPoly":
        """The monomial coeff * v_index^(half_units/2)."""
        if not 0 <= index < arity:
            raise IndexError(f"variable index {index} out of range for arity {arity}")
        exps = [0] * arity
        exps[index] = half_units
        return cls(arity, {tuple(exps): coeff})

    @classmethod
    def monomial(cls, arity: int, exponents: Sequence[int], coeff: int = 1) -> "LaurentPoly":
        """Monomial with integer exponents (converted to half-units)."""
        if len(exponents) != arity:
            raise ArityMismatchError("exponent list length != arity")
        return cls(arity, {tuple(2 * e for e in exponents): coeff})

    # ----- basic queries ------------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def is_one(self) -> bool:
        return self._terms == {(0,) * self.arity: 1}

    def terms(self) -> Iterator[tuple[tuple[int, ...], int]]:
        return iter(self._terms.items())

    def sorted_terms(self) -> list[tuple[tuple[int, ...], int]]:
        """Terms in the canonical order: lexicographic on exponents, ascending."""
        return sorted(self._terms.items())

    def coefficient(self, half_exponents: Sequence[int]) -> int:
        return self._terms.get(tuple(half_exponents), 0)

    def term_count(self) -> int:
        return len(self._terms)

    def has_integer_exponents(self) -> bool:
        return all(e % 2 == 0 for key in self._terms for e in key)

    def all_coefficients_positive(self) -> bool:
        return all(c > 0 for c in self._terms.values()) and not self.is_zero()

    def min_half_exponents(self) -> tuple[int, ...]:
        """Componentwise minimum of the exponent vectors (zero poly -> zeros)."""
        if not self._terms:
            return (0,) * self.arity
        return tuple(min(key[i] for key in self._terms) for i in range(self.arity))

    def denominator_exponents(self) -> tuple[int, ...]:
        """True exponents of the monomial denominator: d_i = max(0, -min_i).

        Writing p = N(v) / v^d with N an ordinary polynomial, this returns d.
        Raises if the relevant exponents are not integers.
        """
        out = []
        for m in self.min_half_exponents():
            d = max(0, -m)
            if d % 2:
                raise ValueError("denominator exponent is not an integer")
            out.append(d // 2)
        return tuple(out)

    # ----- ring operations ----------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.arity == other.arity and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.arity, frozenset(self._terms.items())))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        _check_same_arity(self, other)
        out = dict(self._terms)
        for key, coeff in other._terms.items():
            total = out.get(key, 0) + coeff
            if total:
                out[key] = total
            else:
                out.pop(key, None)
        return _raw(self.arity, out)

    def __neg__(self) -> "LaurentPoly":
        return _raw(self.arity, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            if other == 0:
                return LaurentPoly.zero(self.arity)
            return _raw(self.arity, {k: c * other for k, c in self._terms.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        _check_same_arity(self, other)
        out: dict[tuple[int, ...], int] = {}
        for ka, ca in self._terms.items():
            for kb, cb in other._terms.items():
                key = tuple(x + y for x, y in zip(ka, kb))
                total = out.get(key, 0) + ca * cb
                if total:
                    out[key] = total
                else:
                    out.pop(key, None)
        return _raw(self.arity, out)

    def __rmul__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __pow__(self, n: int) -> "LaurentPoly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("powers must be nonnegative integers")
        result = LaurentPoly.one(self.arity)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, half_units: Sequence[int]) -> "LaurentPoly":
        """Multiply by the monomial with the given half-unit exponent vector."""
        delta = tuple(half_units)
        if len(delta) != self.arity:
            raise ArityMismatchError("shift vector length != arity")
        return _raw(self.arity, {tuple(e + d for e, d in zip(k, delta)): c for k, c in self._terms.items()})

    # ----- exact division -----------------------------------------------

    def div_exact(self, den: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient self/den, or NotDivisibleError.

        After stripping the componentwise-minimal monomials from numerator and
        denominator the problem reduces to ordinary polynomial division, which
        is run greedily on lexicographic leading terms.  For a product of
        nonzero Laurent polynomials the minimal exponents add coordinatewise,
        so an exact Laurent quotient of the stripped operands is itself an
        ordinary polynomial and the greedy loop finds it.
        """
        _check_same_arity(self, den)
        if den.is_zero():
            raise ZeroDivisionError("Laurent division by zero polynomial")
        if self.is_zero():
            return LaurentPoly.zero(self.arity)

        num_shift = self.min_half_exponents()
        den_shift = den.min_half_exponents()
        work = {tuple(e - s for e, s in zip(k, num_shift)): c for k, c in self._terms.items()}
        divisor = {tuple(e - s for e, s in zip(k, den_shift)): c for k, c in den._terms.items()}

        lead_exp = max(divisor)
        lead_coeff = divisor[lead_exp]
        quotient: dict[tuple[int, ...], int] = {}
        while work:
            exp = max(work)
            coeff = work[exp]
            q_exp = tuple(e - d for e, d in zip(exp, lead_exp))
            if any(e < 0 for e in q_exp) or coeff % lead_coeff:
                raise NotDivisibleError("no exact Laurent quotient")
            q_coeff = coeff // lead_coeff
            quotient[q_exp] = q_coeff
            for d_exp, d_coeff in divisor.items():
                key = tuple(a + b for a, b in zip(q_exp, d_exp))
                total = work.get(key, 0) - q_coeff * d_coeff
                if total:
                    work[key] = total
                else:
                    work.pop(key, None)
        delta = tuple(a - b for a, b in zip(num_shift, den_shift))
        return _raw(self.arity, {tuple(e + d for e, d in zip(k, delta)): c for k, c in quotient.items()})

    # ----- substitution ---------------------------------------------------

    def substitute(self, var_index: int, num: "LaurentPoly", den: "LaurentPoly" | None = None) -> "LaurentPoly":
        """Replace variable ``var_index`` by the ratio num/den.

        Denominators are cleared through a single exact division at the end,
        so the result is an honest Laurent polynomial or NotDivisibleError.
        When ``num``/``den`` live in a different ring than ``self`` the
        substituted variable must be the only one appearing in ``self`` and
        the result lands in the ring of ``num``.
        """
        if den is None:
            den = LaurentPoly.one(num.arity)
        _check_same_arity(num, den)
        if den.is_zero():
            raise ZeroDivisionError("substitution denominator is zero")
        if not 0 <= var_index < self.arity:
            raise IndexError(f"variable index {var_index} out of range")

        cross_ring = num.arity != self.arity
        powers = []
        for key in self._terms:
            half = key[var_index]
            if half % 2:
                raise ValueError("cannot substitute into a half-integer power")
            if cross_ring and any(e != 0 for j, e in enumerate(key) if j != var_index):
                raise ArityMismatchError("cross-ring substitution requires a univariate argument")
            powers.append(half // 2)
        if not powers:
            return LaurentPoly.zero(num.arity)

        up = max(0, max(powers))
        down = max(0, -min(powers))
        total = LaurentPoly.zero(num.arity)
        for key, coeff in self._terms.items():
            n = key[var_index] // 2
            if cross_ring:
                residual = LaurentPoly.constant(num.arity, coeff)
            else:
                rest = list(key)
                rest[var_index] = 0
                residual = LaurentPoly(num.arity, {tuple(rest): coeff})
            total = total + residual * num ** (n + down) * den ** (up - n)
        return total.div_exact(den**up * num**down)

    # ----- evaluation -----------------------------------------------------

    def evaluate(self, point: Sequence[Fraction | int]) -> Fraction:
        """Exact value at a point of nonzero rationals.

        Odd half-unit exponents require the corresponding coordinate to have
        an exact rational square root.
        """
        if len(point) != self.arity:
            raise ArityMismatchError("point length != arity")
        values = [Fraction(p) for p in point]
        if any(v == 0 for v in values):
            raise ZeroDivisionError("evaluation point has a zero coordinate")
        roots: dict[int, Fraction] = {}
        total = Fraction(0)
        for key, coeff in self._terms.items():
            term = Fraction(coeff)
            for i, half in enumerate(key):
                if half % 2 == 0:
                    term *= values[i] ** (half // 2)
                else:
                    if i not in roots:
                        roots[i] = _rational_sqrt(values[i])
                    term *= roots[i] ** half
            total += term
        return total

    # ----- presentation ---------------------------------------------------

    def __repr__(self) -> str:
        return f"LaurentPoly({self.arity}, {dict(self.sorted_terms())!r})"

    def __str__(self) -> str:
        names = _default_names(self.arity)
        return format_poly(self, names)


def _raw(arity: int, terms: dict[tuple[int, ...], int]) -> LaurentPoly:
    """Internal constructor for already-canonical term dicts."""
    poly = LaurentPoly.__new__(LaurentPoly)
    object.__setattr__(poly, "arity", arity)
    object.__setattr__(poly, "_terms", terms)
    return poly


def _rational_sqrt(value: Fraction) -> Fraction:
    if value < 0:
        raise ValueError(f"no rational square root of {value}")
    num, den = value.numerator, value.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn != num or rd * rd != den:
        raise ValueError(f"{value} has no exact rational square root")
    return Fraction(rn, rd)


@dataclass(frozen=True)
class RationalLaurent:
    """Exact ratio of Laurent polynomials.

    Used where a value is a rational function of the ring variables but not a
    Laurent polynomial, e.g. trace normalisations.  The pair is reduced to a
    polynomial whenever the denominator divides exactly; equality is tested by
    cross multiplication so representatives never need a canonical gcd.
    """

    num: LaurentPoly
    den: LaurentPoly

    def __post_init__(self):
        _check_same_arity(self.num, self.den)
        if self.den.is_zero():
            raise ZeroDivisionError("rational with zero denominator")
        try:
            q = self.num.div_exact(self.den)
        except NotDivisibleError:
            return
        object.__setattr__(self, "num", q)
        object.__setattr__(self, "den", LaurentPoly.one(self.num.arity))

    @classmethod
    def from_poly(cls, p: LaurentPoly) -> "RationalLaurent":
        return cls(p, LaurentPoly.one(p.arity))

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            other = RationalLaurent.from_poly(other)
        if not isinstance(other, RationalLaurent):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __mul__(self, other) -> "RationalLaurent":
        if isinstance(other, LaurentPoly):
            other = RationalLaurent.from_poly(other)
        if not isinstance(other, RationalLaurent):
            return NotImplemented
        return RationalLaurent(self.num * other.num, self.den * other.den)

    def __add__(self, other) -> "RationalLaurent":
        if isinstance(other, LaurentPoly):
            other = RationalLaurent.from_poly(other)
        if not isinstance(other, RationalLaurent):
            return NotImplemented
        return RationalLaurent(self.num * other.den + other.num * self.den, self.den * other.den)

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def as_poly(self) -> LaurentPoly:
        """The underlying polynomial; NotDivisibleError if genuinely rational."""
        if self.den.is_one():
            return self.num
        return self.num.div_exact(self.den)


# --------------------------------------------------------------------------
# text format
#
# Serialises to forms like "-t^4+t^3+t", "t^(1/2)", "x1*x2^-1".  The parser
# accepts the same grammar plus optional whitespace and explicit "*".
# --------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(\^|\(|\)|/|\*|\+|-))")


def _default_names(arity: int) -> tuple[str, ...]:
    if arity == 1:
        return ("t",)
    return tuple(f"x{i + 1}" for i in range(arity))


def _format_half_exponent(half: int) -> str:
    if half % 2 == 0:
        e = half // 2
        return "" if e == 1 else f"^{e}" if e >= 0 else f"^({e})"
    return f"^({half}/2)"


def format_poly(p: LaurentPoly, names: Sequence[str] | None = None) -> str:
    """Human-readable text, terms in descending lexicographic order."""
    if p.is_zero():
        return "0"
    if names is None:
        names = _default_names(p.arity)
    if len(names) != p.arity:
        raise ArityMismatchError("variable name list length != arity")
    pieces: list[str] = []
    for key, coeff in sorted(p._terms.items(), reverse=True):
        factors = [names[i] + _format_half_exponent(e) for i, e in enumerate(key) if e != 0]
        magnitude = abs(coeff)
        if not factors:
            body = str(magnitude)
        elif magnitude == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(magnitude)] + factors)
        sign = "-" if coeff < 0 else "+"
        if not pieces and sign == "+":
            pieces.append(body)
        else:
            pieces.append(sign + body)
    return "".join(pieces)


def parse_poly(text: str, names: Sequence[str]) -> LaurentPoly:
    """Parse the text format back into a LaurentPoly over the given variables."""
    arity = len(names)
    index = {name: i for i, name in enumerate(names)}
    tokens: list[str] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ValueError(f"unexpected character at {text[pos:]!r}")
            break
        tokens.append(m.group(1) or m.group(2) or m.group(3))
        pos = m.end()

    poly = LaurentPoly.zero(arity)
    i = 0

    def parse_exponent(j: int) -> tuple[int, int]:
        # returns (half-units, next index)
        sign = 1
        if tokens[j] == "(":
            j += 1
            if tokens[j] == "-":
                sign, j = -1, j + 1
            value = int(tokens[j])
            j += 1
            if j < len(tokens) and tokens[j] == "/":
                if tokens[j + 1] != "2":
                    raise ValueError("only halves are supported in exponents")
                if tokens[j + 2] != ")":
                    raise ValueError("malformed exponent")
                return sign * value, j + 3
            if tokens[j] != ")":
                raise ValueError("malformed exponent")
            return sign * 2 * value, j + 1
        if tokens[j] == "-":
            sign, j = -1, j + 1
        return sign * 2 * int(tokens[j]), j + 1

    while i < len(tokens):
        sign = 1
        while i < len(tokens) and tokens[i] in "+-":
            if tokens[i] == "-":
                sign = -sign
            i += 1
        if i >= len(tokens):
            raise ValueError("dangling sign")
        coeff = 1
        exps = [0] * arity
        saw_factor = False
        while i < len(tokens) and tokens[i] not in "+-":
            if tokens[i] == "*":
                i += 1
                continue
            if tokens[i].isdigit():
                coeff *= int(tokens[i])
                i += 1
                saw_factor = True
                continue
            name = tokens[i]
            if name not in index:
                raise ValueError(f"unknown variable {name!r}")
            i += 1
            half = 2
            if i < len(tokens) and tokens[i] == "^":
                half, i = parse_exponent(i + 1)
            exps[index[name]] += half
            saw_factor = True
        if not saw_factor:
            raise ValueError("empty term")
        poly = poly + LaurentPoly(arity, {tuple(exps): sign * coeff})
    return poly


# --------------------------------------------------------------------------
# JSON format
# --------------------------------------------------------------------------


def to_json_obj(p: LaurentPoly) -> dict:
    """Canonical JSON object: half-unit exponents, decimal-string coefficients."""
    return {
        "arity": p.arity,
        "half_exponents": True,
        "terms": [[list(key), str(coeff)] for key, coeff in p.sorted_terms()],
    }


def from_json_obj(obj: Mapping) -> LaurentPoly:
    if not obj.get("half_exponents", False):
        raise ValueError("expected half-unit exponent encoding")
    arity = int(obj["arity"])
    terms = {}
    for key, coeff in obj["terms"]:
        terms[tuple(int(e) for e in key)] = int(coeff)
    return LaurentPoly(arity, terms)


def to_json(p: LaurentPoly) -> str:
    return json.dumps(to_json_obj(p), separators=(",", ":"))


def from_json(text: str) -> LaurentPoly:
    return from_json_obj(json.loads(text))
