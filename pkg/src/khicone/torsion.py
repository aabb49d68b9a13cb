"""Certificates for 2-torsion and the next-to-top nonvanishing criterion."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from . import linalg
from .chain import GradedMap, GradedModule, compose, rank

TORSION_PROVED = "torsion_proved"
INCONCLUSIVE = "inconclusive"
FORCES_NONVANISHING = "forces_nonvanishing"
CRITERION_NOT_MET = "criterion_not_met"


class ShiftMismatch(ValueError):
    pass


class DegenerateGenus(ValueError):
    pass


class PreconditionFailed(ValueError):
    pass


_RELATIONS = {
    "=": lambda a, b: a == b,
    "≥": lambda a, b: a >= b,
    ">": lambda a, b: a > b,
}


@dataclass(frozen=True)
class LedgerLine:
    claim: str
    lhs: int
    rel: str
    rhs: int
    anchor: str

    def holds(self) -> bool:
        return _RELATIONS[self.rel](self.lhs, self.rhs)

    def to_json(self) -> dict:
        return {"claim": self.claim, "lhs": self.lhs, "rel": self.rel,
                "rhs": self.rhs, "anchor": self.anchor}

    @classmethod
    def from_json(cls, data: dict) -> "LedgerLine":
        return cls(data["claim"], data["lhs"], data["rel"], data["rhs"], data["anchor"])


@dataclass(frozen=True)
class TorsionCertificate:
    dim_khi: int
    rank_f: int
    dim_isharp_C: int
    f2_lower_bound: int
    verdict: str
    ledger: tuple[LedgerLine, ...]

    def check(self) -> None:
        """Recompute every stored number and ledger line."""
        assert self.dim_isharp_C == 2 * self.dim_khi - 2 * self.rank_f
        assert self.dim_isharp_C % 2 == 0
        assert self.f2_lower_bound == 2 * self.dim_khi
        assert (self.verdict == TORSION_PROVED) == (self.rank_f >= 1)
        for line in self.ledger:
            assert line.holds(), line

    def to_json(self) -> dict:
        return {
            "dim_khi": self.dim_khi,
            "rank_f": self.rank_f,
            "dim_isharp_C": self.dim_isharp_C,
            "f2_lower_bound": self.f2_lower_bound,
            "verdict": self.verdict,
            "ledger": [line.to_json() for line in self.ledger],
        }

    @classmethod
    def from_json(cls, data: dict) -> "TorsionCertificate":
        return cls(data["dim_khi"], data["rank_f"], data["dim_isharp_C"], data["f2_lower_bound"],
                   data["verdict"], tuple(LedgerLine.from_json(x) for x in data["ledger"]))


def certify_torsion(module: GradedModule, d1p: GradedMap, d1m: GradedMap) -> TorsionCertificate:
    """Build the inequality chain dim I#(F2) >= 2 dim KHI = dim I#(C) + 2 rank > dim I#(C)."""
    if d1p.shift != 1 or d1m.shift != -1:
        raise ShiftMismatch(f"expected shifts (+1, -1), got ({d1p.shift}, {d1m.shift})")
    for m in (d1p, d1m):
        if m.domain != module or m.codomain != module:
            raise ShiftMismatch("d1 maps must be endomorphisms of the given module")
    n = module.dim
    r = rank(d1p + d1m)
    dim_c = 2 * n - 2 * r
    bound = 2 * n
    ledger = [
        LedgerLine(f"dim I#(F2) >= 2*dim KHI = 2*{n}", bound, "=", 2 * n,
                   "axiom: mod-2 doubling of I# and universal coefficients for the reduced theory"),
        LedgerLine(f"2*{n} = {dim_c} + 2*{r}", 2 * n, "=", dim_c + 2 * r,
                   "cone dimension law for d1+ + d1-"),
        LedgerLine(f"rank(d1+ + d1-) = {r} > 0" if r else f"rank(d1+ + d1-) = {r}",
                   r, ">" if r else "=", 0, "exact rank over Q"),
        LedgerLine(f"{bound} {'>' if r else '≥'} {dim_c}", bound, ">" if r else "≥", dim_c,
                   "F2 dimension exceeds C dimension iff 2-torsion (universal coefficients)"),
    ]
    cert = TorsionCertificate(n, r, dim_c, bound, TORSION_PROVED if r >= 1 else INCONCLUSIVE,
                              tuple(ledger))
    cert.check()
    return cert


@dataclass(frozen=True)
class GradedDimProfile:
    """Dimensions of the graded pieces of KHI supported in ``[-g, g]``."""

    g: int
    dims: Mapping[int, int]
    knot: bool = True

    def __post_init__(self):
        dims = {int(i): int(d) for i, d in self.dims.items() if d}
        object.__setattr__(self, "dims", dims)
        if self.g < 0:
            raise ValueError("top grading must be non-negative")
        if any(d < 0 for d in dims.values()):
            raise ValueError("dimensions must be non-negative")
        if any(abs(i) > self.g for i in dims):
            raise ValueError(f"profile has support outside [-{self.g}, {self.g}]")
        if self.knot:
            if any(dims.get(i, 0) != dims.get(-i, 0) for i in dims):
                raise ValueError("knot profile must be symmetric")
            if self.total % 2 == 0:
                raise ValueError("knot profile must have odd total dimension")

    @classmethod
    def from_module(cls, module: GradedModule, knot: bool = True) -> "GradedDimProfile":
        dims = module.graded_dims()
        g = max((abs(i) for i in dims), default=0)
        return cls(g, dims, knot)

    @property
    def total(self) -> int:
        return sum(self.dims.values())

    def at(self, i: int) -> int:
        return self.dims.get(i, 0)


def next_to_top_verdict(profile: GradedDimProfile, dim_isharp: int) -> str:
    if profile.g == 0:
        raise DegenerateGenus("genus 0 profile has no next-to-top grading")
    if dim_isharp < 0:
        raise ValueError("dim_isharp must be non-negative")
    if dim_isharp <= profile.total + 2 * profile.at(profile.g):
        return FORCES_NONVANISHING
    return CRITERION_NOT_MET


@dataclass
class CountingReport:
    dim_A: int
    ker_delta_A: int
    rank_delta_A: int
    rank_delta_lambda_A: int
    image_in_kernel: bool
    rank_step_holds: bool  # rank(δ|A) <= rank(δ_λ|A)
    rank_equality: bool
    common_pair: bool  # delta = d+ + d-, delta_lambda = d+ - λ d- for one pair d±
    half_bound_holds: bool
    cone_dim: int
    cone_bound: int
    cone_bound_holds: bool
    notes: list[str] = field(default_factory=list)

    @property
    def chain_applies(self) -> bool:
        return self.rank_step_holds

    def to_json(self) -> dict:
        return {k: v for k, v in self.__dict__.items()}


def homogeneous_part(m: GradedMap, shift: int):
    """Entries of ``m`` that move grading by exactly ``shift``."""
    grads_in, grads_out = m.domain.gradings, m.codomain.gradings
    return [[x if grads_out[r] - grads_in[c] == shift else 0 for c, x in enumerate(row)]
            for r, row in enumerate(m.matrix)]


def common_pair_scalar(delta: GradedMap, delta_lambda: GradedMap) -> Fraction | None:
    """``λ`` with ``delta = d+ + d-`` and ``delta_lambda = d+ - λ d-``, else ``None``.

    ``d±`` are the shift ±1 parts of ``delta``. Returns 1 when both shift -1
    parts vanish, since then every ``λ`` works.
    """
    if (delta.grading_shifts() | delta_lambda.grading_shifts()) - {1, -1}:
        return None
    if homogeneous_part(delta, 1) != homogeneous_part(delta_lambda, 1):
        return None
    dm, lm = homogeneous_part(delta, -1), homogeneous_part(delta_lambda, -1)
    pivot = next(((r, c) for r, row in enumerate(dm) for c, x in enumerate(row) if x), None)
    if pivot is None:
        return Fraction(1) if linalg.is_zero(lm) else None
    lam = -Fraction(lm[pivot[0]][pivot[1]]) / dm[pivot[0]][pivot[1]]
    if lam == 0 or not linalg.is_zero(linalg.add(lm, linalg.scale(lam, dm))):
        return None
    return lam


def counting_lemma_check(module: GradedModule, delta: GradedMap, delta_lambda: GradedMap,
                         g: int) -> CountingReport:
    """Check the dimension count behind the next-to-top criterion on explicit maps.

    ``A`` is the band of gradings ``2-g .. g-2``. Raises ``PreconditionFailed``
    naming the first hypothesis that does not hold.
    """
    for name, m in (("delta", delta), ("delta_lambda", delta_lambda)):
        if m.domain != module or m.codomain != module:
            raise PreconditionFailed(f"{name} is not an endomorphism of the module")
    grads = module.gradings
    if g < 1 or any(abs(x) > g for x in grads):
        raise PreconditionFailed(f"module is not supported in [-{g}, {g}] with g >= 1")
    if not linalg.is_zero(compose(delta, delta_lambda).matrix):
        raise PreconditionFailed("delta ∘ delta_lambda != 0")
    for name, m in (("delta", delta), ("delta_lambda", delta_lambda)):
        bad = m.grading_shifts() - {1, -1}
        if bad:
            raise PreconditionFailed(f"{name} has grading shifts {sorted(bad)} outside ±1")
    dims = module.graded_dims()
    if dims.get(g - 1, 0) or dims.get(1 - g, 0):
        raise PreconditionFailed(f"graded pieces at ±{g - 1} are nonzero")
    top = [i for i, x in enumerate(grads) if abs(x) == g]
    if any(delta.matrix[r][c] for r in range(module.dim) for c in top):
        raise PreconditionFailed(f"delta does not kill the ±{g} summands")
    band = [i for i, x in enumerate(grads) if abs(x) <= g - 2]
    dim_a = len(band)
    if dim_a % 2 == 0:
        raise PreconditionFailed(f"dim A = {dim_a} is even")

    da = linalg.submatrix(delta.matrix, band, band)
    dla = linalg.submatrix(delta_lambda.matrix, band, band)
    rank_d = linalg.rank(da) if dim_a else 0
    rank_dl = linalg.rank(dla) if dim_a else 0
    ker_d = dim_a - rank_d
    image_in_kernel = linalg.is_zero(linalg.matmul(da, dla)) if dim_a else True

    top_dim = dims.get(g, 0)
    total = module.dim
    cone_dim = 2 * total - 2 * rank(delta)
    bound = total + 2 * top_dim + 1
    report = CountingReport(
        dim_A=dim_a,
        ker_delta_A=ker_d,
        rank_delta_A=rank_d,
        rank_delta_lambda_A=rank_dl,
        image_in_kernel=image_in_kernel,
        rank_step_holds=rank_d <= rank_dl,
        rank_equality=rank_d == rank_dl,
        common_pair=common_pair_scalar(delta, delta_lambda) is not None,
        half_bound_holds=2 * ker_d >= dim_a + 1,
        cone_dim=cone_dim,
        cone_bound=bound,
        cone_bound_holds=cone_dim >= bound,
    )
    # the cone splits as four copies of the top piece plus the cone on A
    assert cone_dim == 4 * top_dim + 2 * ker_d, (cone_dim, top_dim, ker_d)
    # rescaling grading i by μ^i with μ² = -1/λ carries delta to μ·delta_lambda
    if report.common_pair:
        assert report.rank_equality, (rank_d, rank_dl)
    if not report.rank_equality:
        report.notes.append(
            f"rank(delta|A) = {rank_d} differs from rank(delta_lambda|A) = {rank_dl}")
    if not report.rank_step_holds:
        report.notes.append("rank(delta|A) > rank(delta_lambda|A): the half-dimension bound "
                            "is not implied for this pair")
    return report
