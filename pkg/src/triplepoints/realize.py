"""Arrangements, their incidence structures, and realization search.

An :class:`Arrangement` is a 3 x n matrix whose columns are the coefficient
vectors of lines (dually, points of the plane). A realization of an incidence
structure is an arrangement in which a column triple has vanishing
determinant exactly when the three elements lie in a common block.
"""

from __future__ import annotations

import itertools
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass
from typing import Sequence

from .errors import CapExceeded, DegenerateColumn, DuplicateLine, InfiniteField, NoFrame, SizeMismatch
from .fields import FieldElement, FieldSpec, make_field
from .incidence import IncidenceStructure, contains_restriction, require_valid
from .projective import cross, det3, normalize, plane_tables

#: largest field size for which the plane tables used by the search are built
SEARCH_FIELD_CAP = 32


@dataclass(frozen=True)
class Arrangement:
    field: FieldSpec
    columns: tuple  # raw 3-tuples, column j is line j

    @classmethod
    def from_columns(cls, F: FieldSpec, columns: Sequence[Sequence]) -> "Arrangement":
        cols = []
        for col in columns:
            if len(col) != 3:
                raise ValueError("columns must have three entries")
            cols.append(tuple(F.coerce(x) for x in col))
        return cls(F, tuple(cols))

    @classmethod
    def from_rows(cls, F: FieldSpec, rows: Sequence[Sequence]) -> "Arrangement":
        if len(rows) != 3 or len({len(r) for r in rows}) != 1:
            raise ValueError("expected three rows of equal length")
        return cls.from_columns(F, list(zip(*rows)))

    @property
    def n(self) -> int:
        return len(self.columns)

    @property
    def matrix(self) -> list[list[FieldElement]]:
        """The 3 x n matrix as field elements."""
        return [[self.field.wrap(c[i]) for c in self.columns] for i in range(3)]

    def check(self) -> None:
        """Raise unless every column is nonzero and no two are proportional."""
        F = self.field
        seen = {}
        for j, col in enumerate(self.columns):
            if all(F.is_zero(x) for x in col):
                raise DegenerateColumn(f"column {j + 1} is zero")
            key = normalize(F, col)
            if key in seen:
                raise DuplicateLine(f"columns {seen[key] + 1} and {j + 1} define the same line")
            seen[key] = j

    def transform(self, m: Sequence[Sequence]) -> "Arrangement":
        """Apply the 3x3 matrix ``m`` (raw entries) to every column."""
        F = self.field
        cols = [tuple(F.sum(F.mul(m[i][k], c[k]) for k in range(3)) for i in range(3)) for c in self.columns]
        return Arrangement(F, tuple(cols))

    def delete(self, j: int) -> "Arrangement":
        return Arrangement(self.field, self.columns[:j] + self.columns[j + 1 :])


def incidence_of(arr: Arrangement) -> tuple[IncidenceStructure, dict[int, int]]:
    """Group pairwise intersection points of the lines into blocks.

    Returns the incidence structure (blocks are the points where three or more
    lines meet) and the t-vector ``{multiplicity: count}`` including double
    points.
    """
    arr.check()
    F = arr.field
    cols = arr.columns
    groups: dict[tuple, set[int]] = {}
    for i, j in itertools.combinations(range(arr.n), 2):
        pt = normalize(F, cross(F, cols[i], cols[j]))
        groups.setdefault(pt, set()).update((i, j))
    t: dict[int, int] = {}
    blocks = []
    for members in groups.values():
        t[len(members)] = t.get(len(members), 0) + 1
        if len(members) >= 3:
            blocks.append(members)
    return IncidenceStructure(arr.n, blocks), dict(sorted(t.items()))


@dataclass(frozen=True)
class Verification:
    ok: bool
    discrepancy: tuple[int, int, int] | None = None
    det_vanishes: bool | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify_realization(arr: Arrangement, inc: IncidenceStructure) -> Verification:
    """Check every column triple: determinant zero iff the triple lies in a block.

    The first disagreeing triple (0-based, lexicographic order) is reported.
    """
    if arr.n != inc.n:
        raise SizeMismatch(f"arrangement has {arr.n} lines, structure has {inc.n} elements")
    F = arr.field
    cols = arr.columns
    for a, b, c in itertools.combinations(range(arr.n), 3):
        vanishes = F.is_zero(det3(F, cols[a], cols[b], cols[c]))
        if vanishes != inc.is_collinear(a, b, c):
            return Verification(False, (a, b, c), vanishes)
    return Verification(True)


def realizes_up_to_relabeling(
    arr: Arrangement, inc: IncidenceStructure
) -> tuple[Verification, tuple[int, ...] | None]:
    """Look for a relabeling under which ``arr`` realizes ``inc`` exactly.

    Returns the triple-by-triple verdict on the relabeled structure and the
    map (element i of ``inc`` -> line ``w[i]`` of ``arr``), or a failed
    verdict and None when the two incidence structures are not isomorphic.
    """
    if arr.n != inc.n:
        raise SizeMismatch(f"arrangement has {arr.n} lines, structure has {inc.n} elements")
    induced, _ = incidence_of(arr)
    if len(induced.blocks) != len(inc.blocks):
        return Verification(False), None
    ok, w = contains_restriction(induced, inc)
    if not ok:
        return Verification(False), None
    return verify_realization(arr, inc.relabel(w)), w


# --------------------------------------------------------------------------
# exhaustive search over a finite field


@dataclass
class SearchOutcome:
    status: str  # "found" or "exhausted"
    arrangement: Arrangement | None
    nodes_explored: int
    elapsed: float
    frame: tuple[int, ...] = ()
    field: FieldSpec | None = None

    @property
    def found(self) -> bool:
        return self.status == "found"


def find_frame(inc: IncidenceStructure) -> tuple[int, int, int, int]:
    """Lexicographically first four elements with no three in a common block."""
    col = inc.is_collinear
    for quad in itertools.combinations(range(inc.n), 4):
        if not any(col(*t) for t in itertools.combinations(quad, 3)):
            return quad
    raise NoFrame(f"no four elements of the {inc.n}-element structure are in general position")


def _field_params(F: FieldSpec) -> tuple:
    return (F.p, F.k, F.modulus)


class _Search:
    """Backtracking over placements of elements at points of PG(2, F).

    Four frame elements are pinned to (1:0:0), (0:1:0), (0:0:1), (1:1:1). The
    rest follow a fixed most-constrained-first order: an element on two blocks
    that already have two placed members is forced to the meet of their lines,
    one such block confines it to a line, otherwise it ranges over the plane.
    Each placement is checked against every placed element: the lines joining
    the new point to placed points must correspond one-to-one with blocks.
    """

    def __init__(self, inc: IncidenceStructure, F: FieldSpec):
        self.inc, self.F = inc, F
        self.T = T = plane_tables(F)
        self.n = n = inc.n
        self.pb = inc.pair_block
        self.frame = find_frame(inc)
        idx = T.index
        one, zero = F.one, F.zero
        self.frame_points = [
            idx[(one, zero, zero)],
            idx[(zero, one, zero)],
            idx[(zero, zero, one)],
            idx[(one, one, one)],
        ]
        order = list(self.frame)
        rest = [x for x in range(n) if x not in self.frame]
        while rest:
            def key(x):
                anchored = self._anchor_blocks(x, set(order))
                partners = sum(self.pb[x][y] >= 0 for y in order)
                return (min(len(anchored), 2), partners, -x)

            nxt = max(rest, key=key)
            order.append(nxt)
            rest.remove(nxt)
        self.order = order
        self.blocks_of = [[b for b in inc.blocks if x in b] for x in range(n)]
        self.pos = [-1] * n
        self.used = bytearray(len(T))
        self.nodes = 0

    def _anchor_blocks(self, x: int, placed: set[int]) -> list[tuple[int, ...]]:
        return [b for b in self.inc.blocks if x in b and sum(y in placed for y in b) >= 2]

    def candidates(self, x: int) -> Sequence[int]:
        T, pos = self.T, self.pos
        lines = set()
        for b in self.blocks_of[x]:
            placed = [pos[y] for y in b if y != x and pos[y] >= 0]
            if len(placed) >= 2:
                lines.add(T.join[placed[0]][placed[1]])
        if not lines:
            return range(len(T))
        lines = sorted(lines)
        if len(lines) == 1:
            return T.lines[lines[0]]
        p = T.meet[lines[0]][lines[1]]
        return [p] if all(p in T.line_sets[l] for l in lines[2:]) else []

    def consistent(self, x: int, p: int, depth: int) -> bool:
        join_p = self.T.join[p]
        pbx = self.pb[x]
        pos, order = self.pos, self.order
        line_block: dict[int, int] = {}
        block_line: dict[int, int] = {}
        for i in range(depth):
            a = order[i]
            line = join_p[pos[a]]
            b = pbx[a]
            if line in line_block:
                if b < 0 or line_block[line] != b:
                    return False
            else:
                line_block[line] = b
            if b >= 0:
                if block_line.setdefault(b, line) != line:
                    return False
        return True

    def _set(self, x: int, p: int) -> None:
        self.pos[x] = p
        self.used[p] = 1
        self.nodes += 1

    def _unset(self, x: int) -> None:
        self.used[self.pos[x]] = 0
        self.pos[x] = -1

    def place_frame(self) -> None:
        for x, p in zip(self.frame, self.frame_points):
            self._set(x, p)

    def dfs(self, depth: int) -> bool:
        if depth == self.n:
            return True
        x = self.order[depth]
        used = self.used
        for p in self.candidates(x):
            if used[p] or not self.consistent(x, p, depth):
                continue
            self._set(x, p)
            if self.dfs(depth + 1):
                return True
            self._unset(x)
        return False

    def branch_point(self) -> tuple[int, list[int]] | None:
        """Advance through forced placements; return (depth, options) at the first real choice."""
        depth = 4
        while depth < self.n:
            x = self.order[depth]
            opts = [p for p in self.candidates(x) if not self.used[p] and self.consistent(x, p, depth)]
            if len(opts) != 1:
                return depth, opts
            self._set(x, opts[0])
            depth += 1
        return None

    def arrangement(self) -> Arrangement:
        pts = self.T.points
        return Arrangement(self.F, tuple(pts[p] for p in self.pos))


def _run_subtree(args) -> tuple[bool, int, list[int] | None]:
    """Worker entry point: explore the subtree where ``order[depth]`` sits at ``p``."""
    blocks, n, params, prefix, depth, p = args
    inc = IncidenceStructure(n, blocks)
    s = _Search(inc, make_field(params[0], params[1], modulus=params[2]))
    for x, q in prefix:
        s._set(x, q)
    s.nodes = 0
    x = s.order[depth]
    s._set(x, p)
    found = s.dfs(depth + 1)
    return found, s.nodes, list(s.pos) if found else None


def search_realization(
    inc: IncidenceStructure,
    F: FieldSpec,
    *,
    allow_big_blocks: bool = False,
    workers: int = 1,
    fast: bool = False,
    field_cap: int = SEARCH_FIELD_CAP,
) -> SearchOutcome:
    """Decide whether ``inc`` has a realization over the finite field ``F``.

    The search is exhaustive over realizations normalized by a projective
    frame, so ``"exhausted"`` means no realization exists over ``F``. The
    reported witness is the first one in the search order whatever the number
    of workers, unless ``fast`` is set.
    """
    t0 = time.perf_counter()
    require_valid(inc)
    if not F.is_finite:
        raise InfiniteField(f"realization search needs a finite field, got {F}")
    if F.size > field_cap:
        raise CapExceeded(f"field size {F.size} exceeds search cap {field_cap}")
    if not allow_big_blocks and any(len(b) > 3 for b in inc.blocks):
        raise ValueError("structure has blocks of size > 3; pass allow_big_blocks=True")

    s = _Search(inc, F)
    s.place_frame()
    ok = all(s.consistent(x, s.pos[x], i) for i, x in enumerate(s.order[:4]))
    found = False
    if ok:
        if workers <= 1:
            found = s.dfs(4)
        else:
            found = _parallel(s, inc, F, workers, fast)
    arr = s.arrangement() if found else None
    if arr is not None:
        check = verify_realization(arr, inc)
        if not check:
            raise AssertionError(f"search produced a non-realization; triple {check.discrepancy}")
    return SearchOutcome(
        "found" if found else "exhausted",
        arr,
        s.nodes,
        time.perf_counter() - t0,
        tuple(s.frame),
        F,
    )


def _parallel(s: _Search, inc: IncidenceStructure, F: FieldSpec, workers: int, fast: bool) -> bool:
    branch = s.branch_point()
    if branch is None:
        return True
    depth, options = branch
    prefix = [(x, s.pos[x]) for x in s.order[:depth]]
    jobs = [(inc.blocks, inc.n, _field_params(F), prefix, depth, p) for p in options]
    result = None
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_run_subtree, job) for job in jobs]
        # in order, so the first witness is the one a sequential run reports
        pending = as_completed(futures) if fast else futures
        for fut in pending:
            found, nodes, pos = fut.result()
            s.nodes += nodes
            if found:
                result = pos
                break
        for fut in futures:
            fut.cancel()
    if result is None:
        return False
    s.pos = result
    return True
