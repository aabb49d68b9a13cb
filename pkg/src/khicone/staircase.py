"""Staircase model of KHI for an instanton L-space knot.

Generators sit at Alexander gradings ``n_k, ..., n_1, 0, -n_1, ..., -n_k``.
Consecutive generators are joined by one arrow; reading top-down the arrows
alternate between a ``-`` arrow pointing down and a ``+`` arrow pointing up,
with lengths ``m_k, ..., m_1, m_1, ..., m_k``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .chain import ConeReport, GradedMap, GradedModule, cone
from .laurent import StaircaseSpec
from . import linalg


class ZeroScalar(ValueError):
    pass


@dataclass(frozen=True)
class Arrow:
    source: int
    target: int
    length: int
    sign: str  # "+" raises grading, "-" lowers it

    def to_json(self) -> dict:
        return {"from": self.source, "to": self.target, "length": self.length, "sign": self.sign}

    @classmethod
    def from_json(cls, data: dict) -> "Arrow":
        sign = "-" if data["sign"] in ("-", "−") else "+"
        return cls(data["from"], data["to"], data["length"], sign)


@dataclass(frozen=True)
class Staircase:
    spec: StaircaseSpec
    vertices: tuple[int, ...]
    arrows: tuple[Arrow, ...]

    @property
    def dim(self) -> int:
        return len(self.vertices)

    @property
    def module(self) -> GradedModule:
        return GradedModule(self.vertices)

    def to_json(self) -> dict:
        return {
            "exponents": list(self.spec.exponents),
            "vertices": list(self.vertices),
            "arrows": [a.to_json() for a in self.arrows],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Staircase":
        s = cls(StaircaseSpec(tuple(data["exponents"])), tuple(data["vertices"]),
                tuple(Arrow.from_json(a) for a in data["arrows"]))
        check_staircase(s)
        return s


def build_staircase(spec: StaircaseSpec) -> Staircase:
    ex = spec.exponents
    vertices = tuple(reversed(ex)) + tuple(-n for n in ex[1:])
    arrows = []
    for i in range(len(vertices) - 1):
        length = vertices[i] - vertices[i + 1]
        if i % 2 == 0:
            arrows.append(Arrow(i, i + 1, length, "-"))
        else:
            arrows.append(Arrow(i + 1, i, length, "+"))
    return Staircase(spec, vertices, tuple(arrows))


def check_staircase(s: Staircase) -> None:
    """Raise ``AssertionError`` unless every structural invariant holds."""
    k = s.spec.k
    assert len(s.vertices) == 2 * k + 1
    assert len(s.arrows) == 2 * k
    assert list(s.vertices) == sorted(s.vertices, reverse=True)
    expected_lengths = list(reversed(s.spec.lengths)) + list(s.spec.lengths)
    assert [a.length for a in s.arrows] == expected_lengths
    out_deg = [0] * s.dim
    in_deg = [0] * s.dim
    for a in s.arrows:
        shift = s.vertices[a.target] - s.vertices[a.source]
        assert shift == (a.length if a.sign == "+" else -a.length), a
        assert abs(a.source - a.target) == 1
        out_deg[a.source] += 1
        in_deg[a.target] += 1
    for i in range(s.dim):
        assert out_deg[i] == 0 or in_deg[i] == 0
        if k:
            expected = 1 if i in (0, s.dim - 1) else 2
            assert out_deg[i] + in_deg[i] == expected
        if i % 2 == 0:
            assert in_deg[i] == 0
        else:
            assert out_deg[i] == 0


def _arrow_map(s: Staircase, sign: str, length: int = 1) -> GradedMap:
    m = linalg.zeros(s.dim, s.dim)
    for a in s.arrows:
        if a.sign == sign and a.length == length:
            m[a.target][a.source] = 1
    return GradedMap(s.module, s.module, m, length if sign == "+" else -length)


def extract_d1(s: Staircase) -> tuple[GradedMap, GradedMap]:
    """``(d1_plus, d1_minus)``: the length-one arrows of each sign, entries 1."""
    return _arrow_map(s, "+"), _arrow_map(s, "-")


def cone_map(spec: StaircaseSpec, c_plus=1, c_minus=1) -> GradedMap:
    """``c_plus * d1_plus + c_minus * d1_minus`` on the staircase of ``spec``."""
    c_plus, c_minus = Fraction(c_plus), Fraction(c_minus)
    if c_plus == 0 or c_minus == 0:
        raise ZeroScalar("scalars c_plus and c_minus must be nonzero")
    d1p, d1m = extract_d1(build_staircase(spec))
    return d1p.scaled(c_plus) + d1m.scaled(c_minus)


def isharp_dim(spec: StaircaseSpec, c_plus=1, c_minus=1) -> ConeReport:
    """Cone of ``c_plus d1+ + c_minus d1-`` over Q; ``dim_homology`` is dim I#(S^3, K; C)."""
    return cone(cone_map(spec, c_plus, c_minus), "rational")
