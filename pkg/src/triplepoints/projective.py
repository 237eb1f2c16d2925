"""Points, lines and collinearity-preserving projections in PG(n, F)."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Iterator, Sequence

from .errors import CapExceeded, DimensionMismatch, InfiniteField, InvalidCenter, NoCenterFound
from .fields import FieldSpec

#: default upper bound on the number of points materialized by enumeration
POINT_CAP = 1 << 20


# --------------------------------------------------------------------------
# linear algebra on raw coordinate vectors


def normalize(F: FieldSpec, coords: Sequence) -> tuple:
    """Scale so that the first nonzero coordinate is one."""
    for c in coords:
        if not F.is_zero(c):
            if c == F.one:
                return tuple(coords)
            s = F.inv(c)
            return tuple(F.mul(s, x) for x in coords)
    raise ValueError("the zero vector is not a projective point")


def rref(F: FieldSpec, rows: Sequence[Sequence]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form; returns the nonzero rows and pivot columns."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if not F.is_zero(m[i][c])), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        s = F.inv(m[r][c])
        m[r] = [F.mul(s, x) for x in m[r]]
        for i in range(len(m)):
            if i != r and not F.is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(F: FieldSpec, rows: Sequence[Sequence]) -> int:
    return len(rref(F, rows)[1])


def nullspace(F: FieldSpec, rows: Sequence[Sequence], ncols: int) -> list[tuple]:
    """Basis of ``{v : r . v = 0 for every row r}``."""
    red, pivots = rref(F, rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [F.zero] * ncols
        v[f] = F.one
        for row, pc in zip(red, pivots):
            v[pc] = F.neg(row[f])
        basis.append(tuple(v))
    return basis


def dot(F: FieldSpec, u: Sequence, v: Sequence):
    acc = F.zero
    for a, b in zip(u, v):
        acc = F.add(acc, F.mul(a, b))
    return acc


def cross(F: FieldSpec, u: Sequence, v: Sequence) -> tuple:
    mul, sub = F.mul, F.sub
    return (
        sub(mul(u[1], v[2]), mul(u[2], v[1])),
        sub(mul(u[2], v[0]), mul(u[0], v[2])),
        sub(mul(u[0], v[1]), mul(u[1], v[0])),
    )


def det3(F: FieldSpec, u: Sequence, v: Sequence, w: Sequence):
    """Determinant of the 3x3 matrix with columns u, v, w (cofactor expansion)."""
    return dot(F, u, cross(F, v, w))


# --------------------------------------------------------------------------
# points


@dataclass(frozen=True)
class ProjPoint:
    field: FieldSpec
    coords: tuple

    @classmethod
    def of(cls, F: FieldSpec, coords: Sequence) -> "ProjPoint":
        return cls(F, normalize(F, [F.coerce(c) for c in coords]))

    @property
    def dim(self) -> int:
        return len(self.coords) - 1

    def __str__(self) -> str:
        return "(" + ":".join(self.field.format(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class PointSet:
    """An ordered list of distinct points of PG(dim, field)."""

    field: FieldSpec
    dim: int
    points: tuple = dc_field(default=())

    def __post_init__(self):
        pts = tuple(normalize(self.field, p) for p in self.points)
        if any(len(p) != self.dim + 1 for p in pts):
            raise DimensionMismatch(f"points must have {self.dim + 1} coordinates")
        if len(set(pts)) != len(pts):
            raise ValueError("points of a PointSet must be distinct")
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return len(self.points)

    def __getitem__(self, i: int) -> ProjPoint:
        return ProjPoint(self.field, self.points[i])

    def __iter__(self) -> Iterator[ProjPoint]:
        return (ProjPoint(self.field, p) for p in self.points)

    def index(self) -> dict:
        return {p: i for i, p in enumerate(self.points)}

    def collinear_triples(self) -> list[tuple[int, int, int]]:
        """All index triples of collinear points, in lexicographic order."""
        F = self.field
        pts = self.points
        if self.dim < 2:
            return list(itertools.combinations(range(len(pts)), 3))
        if self.dim == 2:
            out = []
            for i, j in itertools.combinations(range(len(pts)), 2):
                line = cross(F, pts[i], pts[j])
                for k in range(j + 1, len(pts)):
                    if F.is_zero(dot(F, line, pts[k])):
                        out.append((i, j, k))
            return out
        return [t for t in itertools.combinations(range(len(pts)), 3) if rank(F, [pts[i] for i in t]) <= 2]


def num_points(n: int, q: int) -> int:
    return (q ** (n + 1) - 1) // (q - 1)


def num_lines(n: int, q: int) -> int:
    return (q ** (n + 1) - 1) * (q ** n - 1) // ((q * q - 1) * (q - 1))


def iter_points(n: int, F: FieldSpec) -> Iterator[tuple]:
    """Normalized points of PG(n, F) in lexicographic order of coordinates.

    Coordinates are compared in the field's element order, so points with more
    leading zeros come first.
    """
    if not F.is_finite:
        raise InfiniteField(f"cannot enumerate points over {F}")
    elems = F.elements()
    for lead in range(n, -1, -1):
        head = (F.zero,) * lead + (F.one,)
        for tail in itertools.product(elems, repeat=n - lead):
            yield head + tail


def enumerate_points(n: int, F: FieldSpec, cap: int = POINT_CAP) -> PointSet:
    if n < 1:
        raise ValueError("dimension must be at least 1")
    if not F.is_finite:
        raise InfiniteField(f"cannot enumerate points over {F}")
    count = num_points(n, F.size)
    if count > cap:
        raise CapExceeded(f"PG({n},{F.size}) has {count} points > cap {cap}")
    return PointSet(F, n, tuple(iter_points(n, F)))


def collinear(p: ProjPoint, q: ProjPoint, r: ProjPoint) -> bool:
    if not (p.field == q.field == r.field):
        raise DimensionMismatch("points live over different fields")
    if not (p.dim == q.dim == r.dim):
        raise DimensionMismatch(f"dimensions {p.dim}, {q.dim}, {r.dim}")
    return rank(p.field, [p.coords, q.coords, r.coords]) <= 2


def line_points(F: FieldSpec, u: tuple, v: tuple) -> list[tuple]:
    """All points on the line through distinct points u and v."""
    out = [normalize(F, v)]
    for t in F.elements():
        out.append(normalize(F, [F.add(a, F.mul(t, b)) for a, b in zip(u, v)]))
    return out


def lines_of_pg(n: int, F: FieldSpec, cap: int = POINT_CAP) -> list[tuple[int, ...]]:
    """All lines of PG(n, F) as sorted index tuples into :func:`enumerate_points`."""
    pts = enumerate_points(n, F, cap)
    idx = pts.index()
    covered = [set() for _ in range(len(pts))]
    lines = []
    for i, j in itertools.combinations(range(len(pts)), 2):
        if j in covered[i]:
            continue
        line = tuple(sorted(idx[p] for p in line_points(F, pts.points[i], pts.points[j])))
        for a in line:
            covered[a].update(line)
        lines.append(line)
    return sorted(lines)


# --------------------------------------------------------------------------
# projection centres


def _spans(F: FieldSpec, pts: Sequence[tuple], dim: int) -> list[list[tuple]]:
    """Annihilators of the subspaces a projection centre must avoid.

    These are the planes spanned by non-collinear triples; when every triple is
    collinear (or there are fewer than three points) the secant line or the
    single point takes their place.
    """
    ncols = dim + 1
    seen = {}
    for t in itertools.combinations(pts, 3):
        red, piv = rref(F, t)
        if len(piv) == 3:
            key = tuple(map(tuple, red))
            if key not in seen:
                seen[key] = nullspace(F, red, ncols)
    if seen:
        return list(seen.values())
    if len(pts) >= 2:
        return [nullspace(F, [pts[0], pts[1]], ncols)]
    return [nullspace(F, [p], ncols) for p in pts]


def _avoids(F: FieldSpec, c: tuple, spans: list[list[tuple]]) -> bool:
    for forms in spans:
        if all(F.is_zero(dot(F, f, c)) for f in forms):
            return False
    return True


@dataclass
class CenterSearch:
    """Outcome of a projection-centre search, with what is needed to replay it."""

    center: ProjPoint
    method: str
    seed: int | None
    candidates_tested: int


def center_search(
    pts: PointSet,
    *,
    method: str = "auto",
    seed: int = 0,
    canonical_cap: int = 1 << 16,
    max_random: int = 200_000,
) -> CenterSearch:
    """Find a point from which projecting ``pts`` keeps all collinearities.

    ``method`` is ``"canonical"`` (first valid point in enumeration order, an
    exhaustive certificate on failure), ``"random"`` (seeded uniform sampling)
    or ``"auto"``, which picks canonical when the ambient space has at most
    ``canonical_cap`` points.
    """
    F, dim = pts.field, pts.dim
    if dim < 2:
        raise DimensionMismatch("projection centres need ambient dimension >= 2")
    if not F.is_finite:
        raise InfiniteField(f"centre search over {F}")
    spans = _spans(F, pts.points, dim)
    total = num_points(dim, F.size)
    if method == "auto":
        method = "canonical" if total <= canonical_cap else "random"

    if method == "canonical":
        for tested, c in enumerate(iter_points(dim, F), 1):
            if _avoids(F, c, spans):
                return CenterSearch(ProjPoint(F, c), "canonical", None, tested)
        raise NoCenterFound(f"all {total} points of PG({dim},{F.size}) are forbidden")

    if method != "random":
        raise ValueError(f"unknown centre search method {method!r}")
    rng = random.Random(seed)
    q = F.size
    for tested in range(1, max_random + 1):
        v = [rng.randrange(q) for _ in range(dim + 1)]
        if not any(v):
            continue
        c = normalize(F, v)
        if _avoids(F, c, spans):
            return CenterSearch(ProjPoint(F, c), "random", seed, tested)
    raise NoCenterFound(f"no valid centre among {max_random} random samples (seed {seed})")


def find_projection_center(pts: PointSet, **kwargs) -> ProjPoint:
    return center_search(pts, **kwargs).center


def project_from(pts: PointSet, center: ProjPoint) -> PointSet:
    """Project from ``center`` onto the first coordinate hyperplane missing it.

    Raises :class:`InvalidCenter` unless the map is injective on ``pts`` and
    preserves exactly which triples are collinear.
    """
    F = pts.field
    c = center.coords
    if center.dim != pts.dim:
        raise DimensionMismatch(f"centre in PG({center.dim}) but points in PG({pts.dim})")
    i0 = next(i for i, x in enumerate(c) if not F.is_zero(x))
    ci = F.inv(c[i0])
    images = []
    for p in pts.points:
        s = F.mul(p[i0], ci)
        v = [F.sub(a, F.mul(s, b)) for a, b in zip(p, c)]
        del v[i0]
        if all(F.is_zero(x) for x in v):
            raise InvalidCenter(f"centre {center} coincides with a point of the set")
        images.append(normalize(F, v))
    if len(set(images)) != len(images):
        raise InvalidCenter(f"centre {center} lies on a secant")
    out = PointSet(F, pts.dim - 1, tuple(images))
    if out.dim >= 2 and out.collinear_triples() != pts.collinear_triples():
        raise InvalidCenter(f"projection from {center} creates new collinearities")
    return out


# --------------------------------------------------------------------------
# incidence tables of a finite projective plane


class PlaneTables:
    """Points, lines and the join/meet tables of PG(2, F) for a finite field.

    Points and lines are indexed by their canonical enumeration order (a line
    by its dual coordinates). ``join[a][b]`` is the line through points a and
    b, ``meet[l][m]`` the point common to lines l and m; diagonals hold -1.
    """

    def __init__(self, F: FieldSpec):
        self.field = F
        self.points = list(iter_points(2, F))
        self.index = {p: i for i, p in enumerate(self.points)}
        N = len(self.points)
        lines = []
        for dual in self.points:
            u, v = nullspace(F, [dual], 3)
            lines.append(tuple(sorted(self.index[p] for p in line_points(F, u, v))))
        self.lines = lines
        self.line_sets = [frozenset(l) for l in lines]
        self.lines_through = [[] for _ in range(N)]
        join = [[-1] * N for _ in range(N)]
        for li, line in enumerate(lines):
            for a in line:
                self.lines_through[a].append(li)
                row = join[a]
                for b in line:
                    if b != a:
                        row[b] = li
        meet = [[-1] * N for _ in range(N)]
        for p, through in enumerate(self.lines_through):
            for l in through:
                row = meet[l]
                for m in through:
                    if m != l:
                        row[m] = p
        self.join = join
        self.meet = meet

    def __len__(self) -> int:
        return len(self.points)


@lru_cache(maxsize=8)
def plane_tables(F: FieldSpec) -> PlaneTables:
    return PlaneTables(F)
