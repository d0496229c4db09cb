"""Simplicial cones and fans in a lattice of rank d.

Cones store their primitive ray generators in canonical (lexicographic)
order, fans store their maximal cones sorted, so equality and hashing are
structural and deterministic.  Faces of a simplicial cone are never stored:
every subset of the rays spans one.

All values are immutable; every operation returns new values.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from functools import lru_cache

from .errors import DependentInput, DimensionMismatch, NotInSupport, ParseError
from .exact import (
    Vec,
    det,
    dot,
    is_primitive,
    maximal_minor_gcd,
    nonneg_combination,
    nullspace_basis,
    primitive,
    rank,
    vec_neg,
)


class RayNormalized(UserWarning):
    """A document carried a non-primitive ray; the loader normalized it."""


@dataclass(frozen=True)
class SimplicialCone:
    """A strongly convex simplicial cone, given by primitive ray generators."""

    rays: tuple[Vec, ...]

    def __post_init__(self):
        rays = tuple(sorted(tuple(int(x) for x in r) for r in self.rays))
        object.__setattr__(self, "rays", rays)
        if not rays:
            raise ValueError("a cone needs at least one ray")
        dims = {len(r) for r in rays}
        if len(dims) != 1:
            raise DimensionMismatch(f"mixed ray dimensions {sorted(dims)}")
        for r in rays:
            if not is_primitive(r):
                raise ValueError(f"ray {r} is not primitive")
        if len(set(rays)) != len(rays):
            raise ValueError("duplicate rays")
        if rank(rays) != len(rays):
            raise DependentInput(f"cone rays {rays} are linearly dependent")

    @property
    def dim(self) -> int:
        return len(self.rays)

    @property
    def ambient_dim(self) -> int:
        return len(self.rays[0])

    def has_face(self, other: "SimplicialCone") -> bool:
        return set(other.rays) <= set(self.rays)

    def __repr__(self) -> str:
        return "cone" + str(list(self.rays))


@dataclass(frozen=True)
class Fan:
    """A simplicial fan: ambient dimension plus its maximal cones.

    The constructor checks only cheap structural facts (matching dimensions,
    no duplicates); the fan axioms are the business of validate_fan, so that
    malformed input can be loaded and reported on rather than crashing.
    """

    ambient_dim: int
    max_cones: tuple[SimplicialCone, ...]

    def __post_init__(self):
        if self.ambient_dim < 1:
            raise ValueError("ambient dimension must be positive")
        cones = tuple(sorted(set(self.max_cones), key=lambda c: c.rays))
        object.__setattr__(self, "max_cones", cones)
        for c in cones:
            if c.ambient_dim != self.ambient_dim:
                raise DimensionMismatch(
                    f"cone {c} lives in dim {c.ambient_dim}, fan in {self.ambient_dim}"
                )

    @property
    def rays(self) -> tuple[Vec, ...]:
        return tuple(sorted({r for c in self.max_cones for r in c.rays}))

    def __repr__(self) -> str:
        return f"Fan(dim={self.ambient_dim}, {len(self.max_cones)} max cones)"


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of a validity check: empty problem list means valid."""

    problems: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.problems

    def __str__(self) -> str:
        if self.ok:
            return "valid"
        return "\n".join(f"- {p}" for p in self.problems)


# --- per-cone exact geometry --------------------------------------------------


@lru_cache(maxsize=None)
def _span_equalities(cone: SimplicialCone) -> tuple[Vec, ...]:
    """Integer normals y with <y, x> = 0 exactly on span(cone)."""
    return tuple(nullspace_basis(cone.rays, cone.ambient_dim))


def _adjugate(m: list[list[int]]) -> list[list[int]]:
    n = len(m)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:i] + row[i + 1:] for k, row in enumerate(m) if k != j]
            out[i][j] = (-1) ** (i + j) * det(minor)
    return out


@lru_cache(maxsize=None)
def _cone_solver(cone: SimplicialCone):
    """Integer solver for full-dimensional cones: coordinates of x in the
    generator basis are (adj @ x) / D.  None for lower-dimensional cones."""
    d = cone.ambient_dim
    if cone.dim != d:
        return None
    m = [[cone.rays[j][i] for j in range(d)] for i in range(d)]
    return _adjugate(m), det(m)


@lru_cache(maxsize=None)
def _facet_normals(cone: SimplicialCone) -> tuple[Vec, ...]:
    """Inward facet normals within the span, one per ray.

    Row i pairs to det(Gram) > 0 with ray i and to 0 with every other ray, so
    on span(cone) the normals cut out exactly the cone.
    """
    v = cone.rays
    k = len(v)
    gram = [[dot(a, b) for b in v] for a in v]
    out = []
    for i in range(k):
        # adjugate row i of the Gram matrix, assembled against the rays
        w = [0] * cone.ambient_dim
        for j in range(k):
            minor = [
                [gram[r][c] for c in range(k) if c != i]
                for r in range(k)
                if r != j
            ]
            cof = (-1) ** (i + j) * det(minor)
            if cof:
                w = [x + cof * y for x, y in zip(w, v[j])]
        out.append(primitive(w))
    for i, w in enumerate(out):
        assert dot(w, v[i]) > 0 and all(dot(w, v[j]) == 0 for j in range(k) if j != i)
    return tuple(out)


def _cut(gens: list[Vec], normal: Vec, equation: bool = False) -> list[Vec]:
    """Generators of cone(gens) meeting {<normal,x> >= 0} (or = 0).

    Standard double-description step: keep the generators on the good side
    and adjoin the combinations of strictly opposite pairs.
    """
    pos, zero, neg = [], [], []
    for g in gens:
        s = dot(normal, g)
        (pos if s > 0 else zero if s == 0 else neg).append((g, s))
    keep = {g for g, _ in zero}
    if not equation:
        keep.update(g for g, _ in pos)
    for p, sp in pos:
        for m, sm in neg:
            comb = tuple(sp * x - sm * y for x, y in zip(m, p))
            if any(comb):
                keep.add(primitive(comb))
    return sorted(keep)


def _intersection_generators(a: SimplicialCone, b: SimplicialCone) -> list[Vec]:
    """A generating set (not necessarily extreme) of a ∩ b."""
    gens = list(a.rays)
    for y in _span_equalities(b):
        gens = _cut(gens, y, equation=True)
    for w in _facet_normals(b):
        gens = _cut(gens, w)
    return gens


def is_smooth(cone: SimplicialCone) -> bool:
    """True iff the generators extend to a lattice basis (minor gcd 1)."""
    return maximal_minor_gcd(cone.rays) == 1


def cone_contains(cone: SimplicialCone, p) -> bool:
    """Exact membership of a rational point in the cone."""
    if len(tuple(p)) != cone.ambient_dim:
        raise DimensionMismatch(
            f"point dim {len(tuple(p))} != cone ambient dim {cone.ambient_dim}"
        )
    return nonneg_combination(cone.rays, p) is not None


def validate_fan(fan: Fan) -> ValidationReport:
    """Check the fan axioms pairwise and report every violation.

    A pair passes iff the exact intersection equals the cone on the shared
    rays.  Nested maximal cones are their own violation.
    """
    problems = []
    cones = fan.max_cones
    for a, b in itertools.combinations(cones, 2):
        sa, sb = set(a.rays), set(b.rays)
        if sa <= sb or sb <= sa:
            problems.append(f"nested maximal cones: {a} and {b}")
            continue
        common = sorted(sa & sb)
        for g in _intersection_generators(a, b):
            inside = bool(common) and nonneg_combination(common, g) is not None
            if not inside:
                problems.append(
                    f"cones {a} and {b} overlap beyond their common face "
                    f"(witness direction {g})"
                )
                break
    return ValidationReport(tuple(problems))


def minimal_containing_cone(fan: Fan, point) -> SimplicialCone:
    """The unique face of the fan holding the point in its relative interior."""
    point = tuple(point)
    for cone in fan.max_cones:
        lam = nonneg_combination(cone.rays, point)
        if lam is None:
            continue
        return SimplicialCone(tuple(r for r, l in zip(cone.rays, lam) if l > 0))
    raise NotInSupport(f"{point} is outside the fan's support")


def star_subdivide(fan: Fan, center) -> Fan:
    """Star subdivision of the fan at a primitive lattice ray.

    Every maximal cone containing the center's minimal face is broken into
    the joins of the center with the facets avoiding one minimal-face ray;
    other cones are kept.  Subdividing at an existing ray is the identity.
    """
    center = tuple(int(x) for x in center)
    if not is_primitive(center):
        raise ValueError(f"subdivision center {center} must be primitive")
    if center in fan.rays:
        return fan
    tau = minimal_containing_cone(fan, center)
    tau_rays = set(tau.rays)
    new_cones: list[SimplicialCone] = []
    for sigma in fan.max_cones:
        if tau_rays <= set(sigma.rays):
            for w in tau.rays:
                new_cones.append(
                    SimplicialCone((center,) + tuple(r for r in sigma.rays if r != w))
                )
        else:
            new_cones.append(sigma)
    return Fan(fan.ambient_dim, tuple(new_cones))


def fans_equal(a: Fan, b: Fan) -> bool:
    """Equality of canonicalized maximal-cone sets."""
    return a.ambient_dim == b.ambient_dim and a.max_cones == b.max_cones


# --- exact support covering -----------------------------------------------------


def _violation_normals(cone: SimplicialCone) -> list[Vec]:
    """Normals v such that x lies outside the cone iff some <v,x> > 0."""
    out: list[Vec] = []
    for e in _span_equalities(cone):
        out.append(e)
        out.append(vec_neg(e))
    for w in _facet_normals(cone):
        out.append(vec_neg(w))
    return out


def _exists_uncovered(gens: list[Vec], cones: list[SimplicialCone], strict: list[Vec]) -> bool:
    """Is there x in cone(gens) strictly violating every chosen normal and
    lying outside every cone in `cones`?

    DFS over one strictly violated constraint per cone.  At a leaf the region
    is cone(gens) and the sum of the generators witnesses strict feasibility
    iff each strict normal is positive on some generator.
    """
    if not gens:
        return False
    if not cones:
        return all(any(dot(v, g) > 0 for g in gens) for v in strict)
    cone = cones[0]
    if all(nonneg_combination(cone.rays, g) is not None for g in gens):
        return False  # region is inside this cone, so nothing here escapes it
    for v in _violation_normals(cone):
        cut = _cut(gens, v)
        if not cut:
            continue
        if not any(dot(v, g) > 0 for g in cut):
            continue
        if _exists_uncovered(cut, cones[1:], strict + [v]):
            return True
    return False


def covered_by_fan(cone: SimplicialCone, fan: Fan) -> bool:
    """Exact test: is the cone contained in the fan's support?"""
    return not _exists_uncovered(list(cone.rays), list(fan.max_cones), [])


def supports_equal(a: Fan, b: Fan) -> bool:
    """Exact equality of |a| and |b| as point sets."""
    if a.ambient_dim != b.ambient_dim:
        return False
    return all(covered_by_fan(c, b) for c in a.max_cones) and all(
        covered_by_fan(c, a) for c in b.max_cones
    )


# --- documents -------------------------------------------------------------------


def fan_to_doc(fan: Fan) -> dict:
    """The interchange document: dim, rays, and 0-based ray-index cones."""
    rays = fan.rays
    index = {r: i for i, r in enumerate(rays)}
    return {
        "dim": fan.ambient_dim,
        "rays": [list(r) for r in rays],
        "max_cones": sorted(sorted(index[r] for r in c.rays) for c in fan.max_cones),
    }


def _int_vector(raw, what: str) -> Vec:
    if not isinstance(raw, (list, tuple)) or not raw:
        raise ParseError(f"{what} must be a non-empty list of integers")
    out = []
    for x in raw:
        if isinstance(x, bool) or not isinstance(x, int):
            raise ParseError(f"{what} holds a non-integer entry {x!r}")
        out.append(x)
    return tuple(out)


def fan_from_doc(doc) -> Fan:
    """Load a fan document; non-primitive rays are normalized with a warning."""
    if not isinstance(doc, dict):
        raise ParseError("fan document must be an object")
    try:
        dim = doc["dim"]
        raw_rays = doc["rays"]
        raw_cones = doc["max_cones"]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"fan document missing field {exc}") from exc
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise ParseError(f"dim must be a positive integer, got {dim!r}")
    if not isinstance(raw_rays, list) or not isinstance(raw_cones, list):
        raise ParseError("rays and max_cones must be lists")
    rays = []
    for i, raw in enumerate(raw_rays):
        v = _int_vector(raw, f"ray {i}")
        if len(v) != dim:
            raise ParseError(f"ray {i} has dimension {len(v)}, expected {dim}")
        if all(x == 0 for x in v):
            raise ParseError(f"ray {i} is the zero vector")
        pv = primitive(v)
        if pv != v:
            warnings.warn(f"ray {i} = {v} normalized to {pv}", RayNormalized, stacklevel=2)
        rays.append(pv)
    cones = []
    for j, idx in enumerate(raw_cones):
        if not isinstance(idx, list) or not idx:
            raise ParseError(f"max_cones[{j}] must be a non-empty index list")
        for i in idx:
            if isinstance(i, bool) or not isinstance(i, int) or not 0 <= i < len(rays):
                raise ParseError(f"max_cones[{j}] holds a bad ray index {i!r}")
        try:
            cones.append(SimplicialCone(tuple(rays[i] for i in idx)))
        except (ValueError, DependentInput, DimensionMismatch) as exc:
            raise ParseError(f"max_cones[{j}] is not a simplicial cone: {exc}") from exc
    return Fan(dim, tuple(cones))
