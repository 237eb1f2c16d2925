"""Line arrangements with only (q+1)-fold points from projections of PG(k, q).

The points of PG(k, q) are embedded in PG(k, q^m) and projected from centres
that keep every collinearity until they sit in a plane; reading each point's
coordinates as the coefficients of a line gives an arrangement whose
intersection points are exactly the duals of the lines of PG(k, q).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .errors import CapExceeded, NoCenterFound
from .fields import FieldSpec, FiniteField, field_of_order, make_field, prime_power, roots_of
from .projective import CenterSearch, PointSet, center_search, enumerate_points, num_lines, num_points, project_from
from .realize import SEARCH_FIELD_CAP, Arrangement, incidence_of, search_realization

#: never build extension fields larger than this
FIELD_SIZE_CAP = 1 << 24


def projection_counts(k: int, q: int) -> tuple[int, int, int]:
    """(number of lines, number of intersection points, point multiplicity)."""
    if k < 2:
        raise ValueError("k must be at least 2")
    prime_power(q)
    return num_points(k, q), num_lines(k, q), q + 1


def default_extension_degree(k: int, q: int) -> int:
    if k == 2:
        return 1
    if q == 2:
        return 4 if k == 3 else 3 * k - 4
    return 3 * k - 5


def subfield_embedding(small: FiniteField, big: FiniteField) -> list[int]:
    """Raw images of the elements of ``small`` inside ``big``.

    Prime-field elements map to constant coefficient vectors. For a proper
    prime power, the generator of ``small`` goes to the first root (in element
    order) of its minimal polynomial in ``big``.
    """
    if small.p != big.p or big.k % small.k:
        raise ValueError(f"{small} is not a subfield of {big}")
    if small.k == 1:
        return list(range(small.size))
    # the class of x in small is a root of small.modulus; send it to a root in big
    root = roots_of(list(small.modulus), big)[0].raw
    images = []
    for a in range(small.size):
        acc = 0
        for c in reversed(small.coeffs(a)):
            acc = big.add(big.mul(acc, root), c)
        images.append(acc)
    return images


@dataclass
class ProjectionStep:
    dim: int  # ambient dimension before the step
    center: tuple  # raw coordinates
    method: str
    seed: int | None
    candidates_tested: int


@dataclass
class ConstructionReport:
    k: int
    q: int
    m_requested: int
    m_used: int
    field: FieldSpec
    steps: list[ProjectionStep]
    arrangement: Arrangement
    t_vector: dict[int, int]
    deviations: list[str] = field(default_factory=list)

    @property
    def n_lines(self) -> int:
        return self.arrangement.n

    @property
    def n_points(self) -> int:
        return sum(self.t_vector.values())

    @property
    def multiplicities(self) -> list[int]:
        return sorted(self.t_vector)

    def to_dict(self) -> dict:
        from .fileio import format_arrangement

        F = self.field
        return {
            "k": self.k,
            "q": self.q,
            "m": self.m_used,
            "m_requested": self.m_requested,
            "field": F.header(),
            "centers": [
                {
                    "ambient_dim": s.dim,
                    "coords": [F.format(c) for c in s.center],
                    "method": s.method,
                    "seed": s.seed,
                    "candidates_tested": s.candidates_tested,
                }
                for s in self.steps
            ],
            "lines": self.n_lines,
            "points": self.n_points,
            "t_vector": {str(k): v for k, v in self.t_vector.items()},
            "deviations": self.deviations,
            "arrangement": format_arrangement(self.arrangement),
        }


def _project_down(pts: PointSet, seed: int, method: str, canonical_cap: int) -> tuple[PointSet, list[ProjectionStep]]:
    steps = []
    while pts.dim > 2:
        cs: CenterSearch = center_search(pts, method=method, seed=seed, canonical_cap=canonical_cap)
        steps.append(ProjectionStep(pts.dim, cs.center.coords, cs.method, cs.seed, cs.candidates_tested))
        pts = project_from(pts, cs.center)
    return pts, steps


def build_arrangement(
    k: int,
    q: int,
    m: int | None = None,
    *,
    seed: int = 0,
    method: str = "auto",
    canonical_cap: int = 1 << 16,
    max_extra_degree: int = 4,
    retry: bool = True,
) -> ConstructionReport:
    """Arrangement of (q^(k+1)-1)/(q-1) lines over F_{q^m} with only (q+1)-fold points.

    ``m=None`` uses the default degree for (k, q). If no centre is found at
    that degree the next degrees are tried (up to ``max_extra_degree`` more)
    and the deviation is recorded in the report.
    """
    n_lines, n_points, mult = projection_counts(k, q)
    m_requested = default_extension_degree(k, q) if m is None else m
    if m_requested < 1:
        raise ValueError("extension degree must be positive")
    p, e = prime_power(q)
    small = field_of_order(q)
    base_points = enumerate_points(k, small).points
    deviations = []
    m_try = m_requested
    while True:
        if q ** m_try > FIELD_SIZE_CAP:
            raise CapExceeded(f"F_{q}^{m_try} exceeds the field size cap")
        big = make_field(p, e * m_try)
        emb = subfield_embedding(small, big)
        pts = PointSet(big, k, tuple(tuple(emb[c] for c in pt) for pt in base_points))
        try:
            plane, steps = _project_down(pts, seed, method, canonical_cap)
            break
        except NoCenterFound as exc:
            if not retry or m_try >= m_requested + max_extra_degree:
                raise
            deviations.append(f"m={m_try}: {exc}; retrying with m={m_try + 1}")
            m_try += 1

    arr = Arrangement(big, plane.points)
    _, t = incidence_of(arr)
    if t != {mult: n_points}:
        raise RuntimeError(f"construction produced t-vector {t}, expected {{{mult}: {n_points}}}")
    assert sum(cnt * comb(k_, 2) for k_, cnt in t.items()) == comb(n_lines, 2)
    return ConstructionReport(k, q, m_requested, m_try, big, steps, arr, t, deviations)


def minimal_extension_search(
    k: int,
    q: int,
    m_values,
    *,
    seed: int = 0,
    canonical_cap: int = 1 << 16,
    search_field_cap: int = SEARCH_FIELD_CAP,
) -> dict[int, str]:
    """Classify each degree m as constructible, center_failed or realization_absent.

    The projection construction is attempted at exactly m. When F_{q^m} is
    small enough, the points and lines of PG(k, q) are also searched for a
    realization directly; a successful construction with an exhausted search
    would be a contradiction and raises.
    """
    from .incidence import generate_pg_truncation

    inc = None
    out = {}
    for m in m_values:
        try:
            build_arrangement(k, q, m, seed=seed, canonical_cap=canonical_cap, retry=False)
            built = True
        except NoCenterFound:
            built = False
        direct = None
        if q ** m <= search_field_cap:
            if inc is None:
                inc = generate_pg_truncation(k, q)
            p, e = prime_power(q)
            direct = search_realization(inc, make_field(p, e * m), allow_big_blocks=True).found
        if built and direct is False:
            raise AssertionError(f"m={m}: construction succeeded but the direct search found nothing")
        if built:
            out[m] = "constructible"
        elif direct is False:
            out[m] = "realization_absent"
        else:
            out[m] = "center_failed"
    return out
