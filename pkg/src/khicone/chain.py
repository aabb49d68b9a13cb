"""Graded vector spaces, graded linear maps and their mapping cones.

Every complex here has zero internal differential, so the homology of the
cone of ``f: X -> Y`` is ``ker f ⊕ coker f``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

from . import linalg

MIXED = "mixed"
RINGS = ("rational", "integer", "f2")


class GradingShiftError(ValueError):
    """A matrix entry contradicts the declared grading shift."""


class CompositionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class GradedModule:
    """Finite-dimensional space with one integer grading per basis vector."""

    gradings: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "gradings", tuple(int(g) for g in self.gradings))

    @property
    def dim(self) -> int:
        return len(self.gradings)

    def graded_dims(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for g in self.gradings:
            out[g] = out.get(g, 0) + 1
        return out

    def indices_at(self, grading: int) -> list[int]:
        return [i for i, g in enumerate(self.gradings) if g == grading]

    def to_json(self) -> dict:
        return {"gradings": list(self.gradings)}

    @classmethod
    def from_json(cls, data: dict) -> "GradedModule":
        return cls(tuple(data["gradings"]))


def _fraction_str(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def matrix_to_json(m: Sequence[Sequence], cols: int | None = None) -> dict:
    rows, c = linalg.shape(m)
    if cols is not None:
        c = cols
    entries = [[r, j, _fraction_str(x)] for r, row in enumerate(m) for j, x in enumerate(row) if x]
    return {"rows": rows, "cols": c, "entries": entries}


def matrix_from_json(data: dict) -> linalg.Matrix:
    m = linalg.zeros(data["rows"], data["cols"])
    for r, c, value in data["entries"]:
        v = Fraction(value)
        m[r][c] = int(v) if v.denominator == 1 else v
    return m


Shift = Union[int, str]


@dataclass(frozen=True)
class GradedMap:
    """Linear map ``domain -> codomain``; ``matrix`` is codomain rows by domain columns.

    ``shift`` is either an integer (every nonzero entry raises grading by
    exactly that much, checked at construction) or ``"mixed"``.
    """

    domain: GradedModule
    codomain: GradedModule
    matrix: tuple[tuple, ...]
    shift: Shift = MIXED

    def __post_init__(self):
        m = tuple(tuple(row) for row in self.matrix)
        object.__setattr__(self, "matrix", m)
        if len(m) != self.codomain.dim or any(len(row) != self.domain.dim for row in m):
            raise ValueError(
                f"matrix shape {linalg.shape(m)} does not match "
                f"{self.codomain.dim}x{self.domain.dim}")
        if self.shift != MIXED:
            if not isinstance(self.shift, int):
                raise TypeError(f"shift must be an int or {MIXED!r}")
            for r, row in enumerate(m):
                for c, x in enumerate(row):
                    if x and self.codomain.gradings[r] != self.domain.gradings[c] + self.shift:
                        raise GradingShiftError(
                            f"entry ({r},{c}) maps grading {self.domain.gradings[c]} to "
                            f"{self.codomain.gradings[r]}, declared shift is {self.shift}")

    @classmethod
    def zero(cls, domain: GradedModule, codomain: GradedModule | None = None, shift: Shift = MIXED):
        codomain = domain if codomain is None else codomain
        return cls(domain, codomain, linalg.zeros(codomain.dim, domain.dim), shift)

    @classmethod
    def identity(cls, module: GradedModule) -> "GradedMap":
        return cls(module, module, linalg.identity(module.dim), 0)

    @property
    def rows(self) -> list[list]:
        return [list(r) for r in self.matrix]

    def __add__(self, other: "GradedMap") -> "GradedMap":
        if self.domain != other.domain or self.codomain != other.codomain:
            raise CompositionMismatch("cannot add maps between different modules")
        shift = self.shift if self.shift == other.shift else MIXED
        return GradedMap(self.domain, self.codomain, linalg.add(self.matrix, other.matrix), shift)

    def __sub__(self, other: "GradedMap") -> "GradedMap":
        return self + other.scaled(-1)

    def scaled(self, c) -> "GradedMap":
        return GradedMap(self.domain, self.codomain, linalg.scale(c, self.matrix), self.shift)

    def then(self, g: "GradedMap") -> "GradedMap":
        """Composite ``g ∘ self``."""
        return compose(g, self)

    def transpose(self) -> "GradedMap":
        shift = MIXED if self.shift == MIXED else -self.shift
        return GradedMap(self.codomain, self.domain,
                         linalg.transpose(self.matrix, self.codomain.dim), shift)

    def is_zero(self) -> bool:
        return linalg.is_zero(self.matrix)

    def grading_shifts(self) -> set[int]:
        """Set of shifts actually realised by nonzero entries."""
        return {self.codomain.gradings[r] - self.domain.gradings[c]
                for r, row in enumerate(self.matrix) for c, x in enumerate(row) if x}

    def to_json(self) -> dict:
        return {
            "domain": self.domain.to_json(),
            "codomain": self.codomain.to_json(),
            "shift": self.shift,
            "matrix": matrix_to_json(self.matrix, self.domain.dim),
        }

    @classmethod
    def from_json(cls, data: dict) -> "GradedMap":
        return cls(GradedModule.from_json(data["domain"]),
                   GradedModule.from_json(data["codomain"]),
                   matrix_from_json(data["matrix"]),
                   data.get("shift", MIXED))


def compose(g: GradedMap, f: GradedMap) -> GradedMap:
    """``g ∘ f``."""
    if f.codomain != g.domain:
        raise CompositionMismatch(
            f"codomain of f (dim {f.codomain.dim}) is not the domain of g (dim {g.domain.dim})")
    if f.shift != MIXED and g.shift != MIXED:
        shift: Shift = f.shift + g.shift
    else:
        shift = MIXED
    if f.domain.dim == 0 or g.codomain.dim == 0 or f.codomain.dim == 0:
        m = linalg.zeros(g.codomain.dim, f.domain.dim)
    else:
        m = linalg.matmul(g.matrix, f.matrix)
    return GradedMap(f.domain, g.codomain, m, shift)


def rank(f: GradedMap | Sequence[Sequence], ring: str = "rational") -> int:
    """Exact rank; ``ring='f2'`` reduces mod 2 first."""
    m = f.matrix if isinstance(f, GradedMap) else f
    if not m or not m[0]:
        return 0
    if ring == "f2":
        return linalg.rank_mod(m, 2)
    return linalg.rank(m)


def smith_normal_form(m: Sequence[Sequence]):
    """Divisors and unimodular transforms ``U``, ``V`` with ``U m V`` diagonal."""
    return linalg.smith_normal_form(m)


@dataclass(frozen=True)
class ConeReport:
    ring: str
    dim_domain: int
    dim_codomain: int
    rank: int
    dim_homology: int
    graded_kernel_dims: dict[int, int] = field(default_factory=dict)
    graded_cokernel_dims: dict[int, int] = field(default_factory=dict)
    torsion_summands: tuple[int, ...] = ()

    def to_json(self) -> dict:
        return {
            "ring": self.ring,
            "dim_domain": self.dim_domain,
            "dim_codomain": self.dim_codomain,
            "rank": self.rank,
            "dim_homology": self.dim_homology,
            "graded_kernel_dims": [[g, d] for g, d in sorted(self.graded_kernel_dims.items(), reverse=True)],
            "graded_cokernel_dims": [[g, d] for g, d in sorted(self.graded_cokernel_dims.items(), reverse=True)],
            "torsion_summands": list(self.torsion_summands),
        }

    @classmethod
    def from_json(cls, data: dict) -> "ConeReport":
        return cls(
            ring=data["ring"],
            dim_domain=data["dim_domain"],
            dim_codomain=data["dim_codomain"],
            rank=data["rank"],
            dim_homology=data["dim_homology"],
            graded_kernel_dims={g: d for g, d in data["graded_kernel_dims"]},
            graded_cokernel_dims={g: d for g, d in data["graded_cokernel_dims"]},
            torsion_summands=tuple(data["torsion_summands"]),
        )


def _filtration_dims(values: list[int], gradings: Sequence[int]) -> dict[int, int]:
    # values[i] = dim of (subspace ∩ F_{<= level i}); return successive quotients
    levels = sorted(set(gradings))
    out = {}
    prev = 0
    for lvl, v in zip(levels, values):
        if v - prev:
            out[lvl] = v - prev
        prev = v
    return out


def graded_kernel_cokernel(f: GradedMap, ring: str = "rational") -> tuple[dict[int, int], dict[int, int]]:
    """Associated-graded dimensions of ker f and coker f.

    Both are taken with respect to the increasing filtration
    ``F_{<=i}`` spanned by basis vectors of grading at most i. For a
    homogeneous map these coincide with the honest graded dimensions; for a
    mixed map (such as a sum of maps with different shifts) they still sum to
    dim ker and dim coker.
    """
    modulus = 2 if ring == "f2" else None
    dom, cod = f.domain, f.codomain
    cols = linalg.transpose(f.matrix, dom.dim)

    # kernel: dim(ker ∩ F_{<=i}) = dim F_{<=i} - rank of columns of grading <= i
    order = sorted(range(dom.dim), key=lambda c: dom.gradings[c])
    prefix = linalg.echelon_prefix_ranks([cols[c] for c in order], modulus) if order else []
    levels = sorted(set(dom.gradings))
    ker_cumulative = []
    for lvl in levels:
        n = sum(1 for g in dom.gradings if g <= lvl)
        ker_cumulative.append(n - (prefix[n - 1] if n else 0))
    kernel = _filtration_dims(ker_cumulative, dom.gradings)

    # image: echelon basis scanned from the highest grading down; a basis vector
    # lies in F_{<=i} iff its lead does.
    desc = sorted(range(cod.dim), key=lambda r: -cod.gradings[r])
    leads = linalg.echelon_leads(cols, desc, modulus) if cod.dim else []
    lead_gradings = [cod.gradings[r] for r in leads]
    coker: dict[int, int] = {}
    for g, d in cod.graded_dims().items():
        c = d - lead_gradings.count(g)
        if c:
            coker[g] = c
    return kernel, coker


def cone(f: GradedMap, ring: str = "rational") -> ConeReport:
    """Homology of the mapping cone of ``f`` (zero-differential source and target).

    ``ring`` is ``"rational"``, ``"integer"`` or ``"f2"``. Over the integers
    ``dim_homology`` is the free rank and ``torsion_summands`` lists the
    nonunit elementary divisors of ``f``.
    """
    if ring not in RINGS:
        raise ValueError(f"unknown ring {ring!r}; expected one of {RINGS}")
    r = rank(f, ring)
    kernel, coker = graded_kernel_cokernel(f, ring)
    torsion: tuple[int, ...] = ()
    if ring == "integer" and f.domain.dim and f.codomain.dim:
        divisors, _, _ = linalg.smith_normal_form(f.matrix)
        torsion = tuple(d for d in divisors if d > 1)
    return ConeReport(
        ring=ring,
        dim_domain=f.domain.dim,
        dim_codomain=f.codomain.dim,
        rank=r,
        dim_homology=f.domain.dim + f.codomain.dim - 2 * r,
        graded_kernel_dims=kernel,
        graded_cokernel_dims=coker,
        torsion_summands=torsion,
    )


class _Homology:
    """ker f and coker f with explicit bases.

    ``ker`` is a matrix whose columns span ker f. For the cokernel,
    ``section`` has columns spanning a complement of im f and ``project``
    sends a vector of the codomain to its coordinates in that complement.
    """

    def __init__(self, f: GradedMap):
        n, m = f.domain.dim, f.codomain.dim
        self.ker_basis = linalg.nullspace(f.matrix, n) if n else []
        self.ker = linalg.columns_to_matrix(self.ker_basis, n)
        image_cols = []
        if n and m:
            _, pivots = linalg.rref(f.matrix)
            cols = linalg.transpose(f.matrix)
            image_cols = [cols[p] for p in pivots]
        # complement of the image from standard basis vectors
        complement = []
        current = [list(v) for v in image_cols]
        r0 = len(current)
        for i in range(m):
            e = [int(i == j) for j in range(m)]
            trial = current + [e]
            if linalg.rank(trial) > len(current):
                current = trial
                complement.append(i)
        self.section = [[int(i == j) for j in complement] for i in range(m)]
        basis = linalg.columns_to_matrix(current, m) if m else []
        self.project = []
        if m:
            inv = linalg.inverse(basis)
            self.project = [list(inv[r]) for r in range(r0, m)]
        self.dim_ker = len(self.ker_basis)
        self.dim_coker = len(complement)


def _coords_in(basis: linalg.Matrix, vectors: linalg.Matrix, k: int) -> linalg.Matrix:
    """Coordinates of the columns of ``vectors`` with respect to the columns of ``basis``."""
    if k == 0 or not vectors or not vectors[0]:
        return linalg.zeros(len(basis[0]) if basis and basis[0] else 0, k)
    return linalg.solve(basis, vectors)


def _mul(a, b, rows, cols):
    if rows == 0 or cols == 0 or not a or not a[0] or not b:
        return linalg.zeros(rows, cols)
    return linalg.matmul(a, b)


@dataclass
class OctahedralReport:
    cone_dims: tuple[int, int, int]
    connecting_ranks: tuple[int, int, int]
    sequence_dims: tuple[int, ...]
    sequence_ranks: tuple[int, ...]
    compositions_vanish: bool
    exact: bool
    vertex_checks: list[dict]

    def to_json(self) -> dict:
        return {
            "cone_dims": list(self.cone_dims),
            "connecting_ranks": list(self.connecting_ranks),
            "sequence_dims": list(self.sequence_dims),
            "sequence_ranks": list(self.sequence_ranks),
            "compositions_vanish": self.compositions_vanish,
            "exact": self.exact,
            "vertex_checks": self.vertex_checks,
        }


def octahedral_maps(f: GradedMap, g: GradedMap):
    """The six-term sequence induced on homology by cone(f) -> cone(gf) -> cone(g).

    Returns ``(dims, maps)`` where ``dims`` lists
    ``ker f, ker gf, ker g, coker f, coker gf, coker g`` and ``maps`` holds the
    five matrices between consecutive terms.
    """
    if f.codomain != g.domain:
        raise CompositionMismatch(
            f"f: {f.domain.dim}->{f.codomain.dim} and g: {g.domain.dim}->{g.codomain.dim} "
            "are not composable")
    gf = compose(g, f)
    hf, hgf, hg = _Homology(f), _Homology(gf), _Homology(g)
    y_dim = f.codomain.dim

    # ker f -> ker gf : inclusion
    a1 = _coords_in(hgf.ker, hf.ker, hf.dim_ker) if hgf.dim_ker else linalg.zeros(0, hf.dim_ker)
    # ker gf -> ker g : x -> f x
    fk = _mul([list(r) for r in f.matrix], hgf.ker, y_dim, hgf.dim_ker)
    a2 = _coords_in(hg.ker, fk, hgf.dim_ker) if hg.dim_ker else linalg.zeros(0, hgf.dim_ker)
    # ker g -> coker f : y -> [y]
    a3 = _mul(hf.project, hg.ker, hf.dim_coker, hg.dim_ker)
    # coker f -> coker gf : [y] -> [g y]
    gs = _mul([list(r) for r in g.matrix], hf.section, g.codomain.dim, hf.dim_coker)
    a4 = _mul(hgf.project, gs, hgf.dim_coker, hf.dim_coker)
    # coker gf -> coker g : [z] -> [z]
    a5 = _mul(hg.project, hgf.section, hg.dim_coker, hgf.dim_coker)

    dims = (hf.dim_ker, hgf.dim_ker, hg.dim_ker, hf.dim_coker, hgf.dim_coker, hg.dim_coker)
    return dims, [a1, a2, a3, a4, a5]


def octahedral_verify(f: GradedMap, g: GradedMap) -> OctahedralReport:
    """Certify that cone(f) -> cone(g∘f) -> cone(g) -> cone(f)[1] is exact on homology.

    The triangle unrolls to ``0 -> ker f -> ker gf -> ker g -> coker f ->
    coker gf -> coker g -> 0``. At each term the two adjacent maps must
    compose to zero and their ranks must add up to the dimension.
    """
    dims, maps = octahedral_maps(f, g)
    ranks = [rank(m) if m and m[0] else 0 for m in maps]
    incoming = [0] + ranks
    outgoing = ranks + [0]
    checks = []
    for i, d in enumerate(dims):
        checks.append({"dim": d, "rank_in": incoming[i], "rank_out": outgoing[i],
                       "exact": incoming[i] + outgoing[i] == d})
    vanish = True
    for i in range(4):
        a, b = maps[i], maps[i + 1]
        rows, cols = len(b), (len(a[0]) if a and a[0] else 0)
        if not linalg.is_zero(_mul(b, a, rows, cols)):
            vanish = False
    exact = vanish and all(c["exact"] for c in checks)
    cone_dims = (dims[0] + dims[3], dims[1] + dims[4], dims[2] + dims[5])
    # cone(f)->cone(gf) acts by a1 on kernels and a4 on cokernels, and so on
    connecting = (ranks[0] + ranks[3], ranks[1] + ranks[4], ranks[2])
    return OctahedralReport(cone_dims, connecting, dims, tuple(ranks), vanish, exact, checks)


def triangle_dims_consistent(da: int, db: int, dc: int) -> bool:
    """Whether some exact triangle has homology dimensions ``da, db, dc``."""
    if min(da, db, dc) < 0:
        raise ValueError("dimensions must be non-negative")
    return (da + db + dc) % 2 == 0 and da <= db + dc and db <= da + dc and dc <= da + db
