"""Integer Laurent polynomials in one variable, torus-knot Alexander
polynomials, and the staircase decomposition of L-space-form polynomials."""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Mapping


class PolynomialError(ValueError):
    """Base class for everything this module raises."""


class PolynomialParseError(PolynomialError):
    def __init__(self, text: str, column: int, message: str):
        self.text = text
        self.column = column
        pointer = " " * column + "^"
        super().__init__(f"{message} at column {column + 1}\n  {text}\n  {pointer}")


class NotSymmetrizable(PolynomialError):
    pass


class EvalNotUnit(PolynomialError):
    pass


class NotCoprime(PolynomialError):
    pass


class BadParameter(PolynomialError):
    pass


class NotLSpaceForm(PolynomialError):
    def __init__(self, message: str, exponent: int | None = None, coefficient: int | None = None):
        self.exponent = exponent
        self.coefficient = coefficient
        super().__init__(message)


@dataclass(frozen=True)
class LaurentPoly:
    """Laurent polynomial with integer coefficients.

    ``terms`` is a tuple of ``(exponent, coefficient)`` pairs sorted by
    descending exponent, zero coefficients dropped.
    """

    terms: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        exps = [e for e, _ in self.terms]
        if len(set(exps)) != len(exps):
            raise ValueError("duplicate exponent")
        if any(c == 0 for _, c in self.terms):
            raise ValueError("zero coefficient stored")
        if exps != sorted(exps, reverse=True):
            raise ValueError("terms must be sorted by descending exponent")

    @classmethod
    def from_dict(cls, coeffs: Mapping[int, int]) -> "LaurentPoly":
        terms = tuple(sorted(((int(e), int(c)) for e, c in coeffs.items() if c), reverse=True))
        return cls(terms)

    @classmethod
    def from_pairs(cls, pairs: Iterable[Iterable[int]]) -> "LaurentPoly":
        acc: dict[int, int] = {}
        for e, c in pairs:
            acc[int(e)] = acc.get(int(e), 0) + int(c)
        return cls.from_dict(acc)

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> "LaurentPoly":
        return cls.from_dict({exponent: coefficient})

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        return parse_poly(text)

    def as_dict(self) -> dict[int, int]:
        return dict(self.terms)

    def coefficient(self, exponent: int) -> int:
        return self.as_dict().get(exponent, 0)

    def __bool__(self):
        return bool(self.terms)

    @property
    def top(self) -> int:
        return self.terms[0][0]

    @property
    def bottom(self) -> int:
        return self.terms[-1][0]

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        acc = self.as_dict()
        for e, c in other.terms:
            acc[e] = acc.get(e, 0) + c
        return LaurentPoly.from_dict(acc)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly.from_dict({e: c * other for e, c in self.terms})
        acc: dict[int, int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly.from_dict(acc)

    __rmul__ = __mul__

    def shift(self, s: int) -> "LaurentPoly":
        """Multiply by t^s."""
        return LaurentPoly(tuple((e + s, c) for e, c in self.terms))

    def mirror(self) -> "LaurentPoly":
        """Substitute t -> t^-1."""
        return LaurentPoly.from_dict({-e: c for e, c in self.terms})

    def evaluate(self, t=1):
        return sum(c * t ** e for e, c in self.terms)

    def is_symmetric(self) -> bool:
        return self == self.mirror()

    def to_string(self) -> str:
        return format_poly(self)

    def to_json(self) -> list[list[int]]:
        return [[e, c] for e, c in self.terms]

    @classmethod
    def from_json(cls, data) -> "LaurentPoly":
        return cls.from_pairs(data)

    def __str__(self):
        return format_poly(self)


def _monomial_str(e: int, c: int, leading: bool) -> str:
    mag = abs(c)
    if e == 0:
        body = str(mag)
    else:
        var = "t" if e == 1 else f"t^{e}"
        body = var if mag == 1 else f"{mag}{var}"
    if leading:
        return body if c > 0 else f"-{body}"
    return (" + " if c > 0 else " - ") + body


def format_poly(p: LaurentPoly) -> str:
    """Canonical descending-exponent text, e.g. ``t^3 - t^2 + 1 - t^-2 + t^-3``."""
    if not p.terms:
        return "0"
    return "".join(_monomial_str(e, c, i == 0) for i, (e, c) in enumerate(p.terms))


_TERM = re.compile(
    r"""
    (?P<sign>[+-])?
    (?:
        (?P<coef>\d+)\s*(?:\*\s*)?(?P<var1>t(?:\s*\^\s*(?P<exp1>\{\s*-?\d+\s*\}|\(\s*-?\d+\s*\)|-?\d+))?)?
      | (?P<var2>t(?:\s*\^\s*(?P<exp2>\{\s*-?\d+\s*\}|\(\s*-?\d+\s*\)|-?\d+))?)
    )
    """,
    re.VERBOSE,
)


def parse_poly(text: str) -> LaurentPoly:
    """Parse signed monomial sums such as ``"t^3 - t^2 + 1 - t^-2 + t^-3"``.

    Whitespace is ignored between tokens; ``2t^3``, ``2*t^3`` and ``t^{-2}``
    are accepted.
    """
    acc: dict[int, int] = {}
    pos = 0
    n = len(text)
    first = True

    def skip_ws(i):
        while i < n and text[i].isspace():
            i += 1
        return i

    pos = skip_ws(pos)
    if pos == n:
        raise PolynomialParseError(text, pos, "empty polynomial")
    while pos < n:
        start = pos
        sign = 1
        if text[pos] in "+-":
            sign = -1 if text[pos] == "-" else 1
            pos = skip_ws(pos + 1)
        elif not first:
            raise PolynomialParseError(text, pos, "expected '+' or '-'")
        m = _TERM.match(text, pos)
        if m is None or m.end() == pos or m.group("sign"):
            raise PolynomialParseError(text, pos, "expected a monomial")
        if m.group("coef") is not None:
            coef = int(m.group("coef"))
            has_var = m.group("var1") is not None
            exp_text = m.group("exp1")
        else:
            coef = 1
            has_var = True
            exp_text = m.group("exp2")
        if has_var:
            exp = 1 if exp_text is None else int(exp_text.strip("{}() \t"))
        else:
            exp = 0
        acc[exp] = acc.get(exp, 0) + sign * coef
        pos = skip_ws(m.end())
        first = False
        if pos < n and text[pos] not in "+-":
            raise PolynomialParseError(text, pos, f"unexpected character {text[pos]!r}")
        if pos == start:
            raise PolynomialParseError(text, pos, "no progress")
    return LaurentPoly.from_dict(acc)


def normalize_symmetric(p: LaurentPoly) -> LaurentPoly:
    """Return the unit multiple ``±t^s p`` with Δ(t) = Δ(t⁻¹) and Δ(1) = 1."""
    if not p:
        raise NotSymmetrizable("zero polynomial")
    span = p.top + p.bottom
    if span % 2:
        raise NotSymmetrizable(f"{p}: odd exponent span admits no integer centering")
    centered = p.shift(-span // 2)
    if not centered.is_symmetric():
        raise NotSymmetrizable(f"{p}: coefficients are not palindromic")
    value = centered.evaluate(1)
    if value not in (1, -1):
        raise EvalNotUnit(f"{p}: value at t=1 is {value}, not a unit")
    return centered if value == 1 else -centered


def _poly_divide(num: list[int], den: list[int]) -> list[int]:
    """Exact division of dense integer polynomials (ascending coefficients)."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(out) - 1, -1, -1):
        q, r = divmod(num[i + len(den) - 1], lead)
        if r:
            raise ArithmeticError("division is not exact")
        out[i] = q
        if q:
            for j, d in enumerate(den):
                num[i + j] -= q * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("division is not exact")
    return out


def _dense_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _t_power_minus_one(n: int) -> list[int]:
    return [-1] + [0] * (n - 1) + [1]


def torus_knot_alexander(p: int, q: int) -> LaurentPoly:
    """Symmetrized Alexander polynomial of the torus knot T(p, q)."""
    if p < 2 or q < 2:
        raise BadParameter(f"T({p},{q}): both parameters must be at least 2")
    if gcd(p, q) != 1:
        raise NotCoprime(f"T({p},{q}): gcd is {gcd(p, q)}")
    num = _dense_mul(_t_power_minus_one(p * q), _t_power_minus_one(1))
    den = _dense_mul(_t_power_minus_one(p), _t_power_minus_one(q))
    quotient = _poly_divide(num, den)
    shift = -((p - 1) * (q - 1) // 2)
    return LaurentPoly.from_dict({i + shift: c for i, c in enumerate(quotient)})


@dataclass(frozen=True)
class StaircaseSpec:
    """Exponents ``0 = n_0 < n_1 < ... < n_k`` of an L-space-form polynomial."""

    exponents: tuple[int, ...]

    def __post_init__(self):
        ex = tuple(int(x) for x in self.exponents)
        object.__setattr__(self, "exponents", ex)
        if not ex or ex[0] != 0:
            raise ValueError(f"staircase exponents must start at 0, got {list(ex)}")
        if any(b <= a for a, b in zip(ex, ex[1:])):
            raise ValueError(f"staircase exponents must strictly increase, got {list(ex)}")

    @property
    def k(self) -> int:
        return len(self.exponents) - 1

    @property
    def lengths(self) -> tuple[int, ...]:
        """``m_j = n_j - n_{j-1}`` for j = 1..k."""
        ex = self.exponents
        return tuple(b - a for a, b in zip(ex, ex[1:]))

    @property
    def genus(self) -> int:
        return self.exponents[-1]

    def alexander(self) -> LaurentPoly:
        """Re-expand into the alternating symmetric polynomial."""
        k = self.k
        acc: dict[int, int] = {}
        for j, n in enumerate(self.exponents):
            sign = (-1) ** (k - j)
            acc[n] = acc.get(n, 0) + sign
            acc[-n] = acc.get(-n, 0) + sign
        acc[0] -= (-1) ** k
        return LaurentPoly.from_dict(acc)

    def to_json(self) -> list[int]:
        return list(self.exponents)


def lspace_decompose(delta: LaurentPoly) -> StaircaseSpec:
    """Read off the staircase exponents of an alternating ±1 polynomial."""
    if not delta:
        raise NotLSpaceForm("zero polynomial")
    if not delta.is_symmetric() or delta.evaluate(1) != 1:
        raise NotLSpaceForm(f"{delta} is not symmetric-normalized (need Δ(t)=Δ(1/t), Δ(1)=1)")
    for e, c in delta.terms:
        if c not in (1, -1):
            raise NotLSpaceForm(f"coefficient {c} at exponent {e} is not ±1",
                                exponent=e, coefficient=c)
    nonneg = [(e, c) for e, c in delta.terms if e >= 0]
    if nonneg[-1][0] != 0:
        raise NotLSpaceForm("missing constant term", exponent=0, coefficient=0)
    expected = 1
    for e, c in nonneg:
        if c != expected:
            raise NotLSpaceForm(
                f"coefficient {c:+d} at exponent {e} breaks the +1/-1 alternation",
                exponent=e, coefficient=c)
        expected = -expected
    return StaircaseSpec(tuple(e for e, _ in reversed(nonneg)))
