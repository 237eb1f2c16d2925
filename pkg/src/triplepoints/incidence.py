"""Incidence structures of rank-3 simple matroids (points and their rank-2 flats).

Elements are 0-based here; the file formats and the CLI use 1-based labels.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

from .errors import InvalidStructure, OutOfRange
from .fields import field_of_order
from .projective import POINT_CAP, lines_of_pg, num_points


class IncidenceStructure:
    """Ground set ``{0..n-1}`` with blocks of size >= 3.

    Blocks are stored as sorted tuples inside a sorted tuple. The structure is
    not required to be linear on construction so that :func:`validate` can
    report what is wrong with it.
    """

    __slots__ = ("n", "blocks", "_pair_block")

    def __init__(self, n: int, blocks: Iterable[Iterable[int]] = ()):
        if n < 0:
            raise ValueError("ground set size must be non-negative")
        bs = set()
        for b in blocks:
            t = tuple(sorted(set(int(x) for x in b)))
            if len(t) < 3:
                raise ValueError(f"block {t} has fewer than three elements")
            if t[0] < 0 or t[-1] >= n:
                raise OutOfRange(f"block {t} not inside 0..{n - 1}")
            bs.add(t)
        self.n = n
        self.blocks = tuple(sorted(bs))
        self._pair_block = None

    @classmethod
    def from_one_based(cls, n: int, blocks: Iterable[Iterable[int]]) -> "IncidenceStructure":
        return cls(n, ([x - 1 for x in b] for b in blocks))

    def one_based(self) -> list[list[int]]:
        return [[x + 1 for x in b] for b in self.blocks]

    def __eq__(self, other) -> bool:
        return isinstance(other, IncidenceStructure) and (self.n, self.blocks) == (other.n, other.blocks)

    def __hash__(self) -> int:
        return hash((self.n, self.blocks))

    def __repr__(self) -> str:
        return f"IncidenceStructure(n={self.n}, blocks={len(self.blocks)})"

    @property
    def pair_block(self) -> list[list[int]]:
        """``pair_block[a][b]``: index of the block containing a and b, or -1."""
        if self._pair_block is None:
            pb = [[-1] * self.n for _ in range(self.n)]
            for i, b in enumerate(self.blocks):
                for x, y in itertools.permutations(b, 2):
                    pb[x][y] = i
            self._pair_block = pb
        return self._pair_block

    def blocks_through(self, e: int) -> list[int]:
        return [i for i, b in enumerate(self.blocks) if e in b]

    def is_collinear(self, a: int, b: int, c: int) -> bool:
        i = self.pair_block[a][b]
        return i >= 0 and c in self.blocks[i]

    def collinear_triples(self) -> list[tuple[int, int, int]]:
        return sorted({t for b in self.blocks for t in itertools.combinations(b, 3)})

    def relabel(self, perm: Sequence[int]) -> "IncidenceStructure":
        """Image under the element map ``e -> perm[e]``."""
        return IncidenceStructure(self.n, ([perm[x] for x in b] for b in self.blocks))


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    message: str = "ok"
    pair: tuple[int, int] | None = None
    blocks: tuple[tuple[int, ...], ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def validate(inc: IncidenceStructure) -> ValidationReport:
    """Check that every pair lies in at most one block and no block contains another."""
    seen: dict[tuple[int, int], tuple[int, ...]] = {}
    for b in inc.blocks:
        for pair in itertools.combinations(b, 2):
            if pair in seen:
                other = seen[pair]
                if set(other) <= set(b) or set(b) <= set(other):
                    msg = f"block {other} and block {b} are nested"
                else:
                    msg = f"pair {pair} lies in blocks {other} and {b}"
                return ValidationReport(False, msg, pair, (other, b))
            seen[pair] = b
    return ValidationReport(True)


def require_valid(inc: IncidenceStructure) -> None:
    report = validate(inc)
    if not report:
        raise InvalidStructure(report.message)


def is_sts(inc: IncidenceStructure) -> bool:
    """True iff every block is a triple and every pair is covered."""
    require_valid(inc)
    if any(len(b) != 3 for b in inc.blocks):
        return False
    return 3 * len(inc.blocks) == comb(inc.n, 2)


def schonheim_bound(s: int) -> int:
    """Upper bound U_3(s) on the number of triple points of s lines."""
    if s < 1:
        raise ValueError("s must be positive")
    eps = 1 if s % 6 == 5 else 0
    return ((s - 1) // 2) * s // 3 - eps


def t_vector(inc: IncidenceStructure) -> dict[int, int]:
    """Counts ``{k: t_k}`` of intersection points of each multiplicity, t_2 included."""
    require_valid(inc)
    t: dict[int, int] = {}
    covered = 0
    for b in inc.blocks:
        t[len(b)] = t.get(len(b), 0) + 1
        covered += comb(len(b), 2)
    t[2] = comb(inc.n, 2) - covered
    return dict(sorted(t.items()))


def delete_element(inc: IncidenceStructure, e: int) -> IncidenceStructure:
    """Remove element ``e``; blocks shrinking to two elements become double points."""
    if not 0 <= e < inc.n:
        raise OutOfRange(f"element {e} not in 0..{inc.n - 1}")
    blocks = []
    for b in inc.blocks:
        nb = [x - (x > e) for x in b if x != e]
        if len(nb) >= 3:
            blocks.append(nb)
    return IncidenceStructure(inc.n - 1, blocks)


def contains_restriction(
    haystack: IncidenceStructure, needle: IncidenceStructure
) -> tuple[bool, tuple[int, ...] | None]:
    """Search for an injection under which ``needle`` is an induced restriction.

    Collinear triples of the needle must go to collinear triples of the
    haystack and non-collinear ones to non-collinear ones. Returns the flag and
    a witness tuple ``w`` with needle element ``i`` mapped to ``w[i]``.
    """
    require_valid(haystack)
    require_valid(needle)
    n, m = needle.n, haystack.n
    if n > m:
        return False, None
    ncol, hcol = needle.is_collinear, haystack.is_collinear
    npb = needle.pair_block
    # place elements so that each new one is tied to earlier ones when possible
    order: list[int] = []
    rest = set(range(n))
    while rest:
        nxt = max(rest, key=lambda x: (sum(npb[x][y] >= 0 for y in order), -x))
        order.append(nxt)
        rest.remove(nxt)

    image = [-1] * n
    used = [False] * m

    def consistent(x: int, y: int, depth: int) -> bool:
        for i in range(depth):
            a = order[i]
            ia = image[a]
            for j in range(i + 1, depth):
                b = order[j]
                if ncol(x, a, b) != hcol(y, ia, image[b]):
                    return False
        return True

    def extend(depth: int) -> bool:
        if depth == n:
            return True
        x = order[depth]
        for y in range(m):
            if used[y] or not consistent(x, y, depth):
                continue
            image[x], used[y] = y, True
            if extend(depth + 1):
                return True
            image[x], used[y] = -1, False
        return False

    if extend(0):
        return True, tuple(image)
    return False, None


def generate_pg_truncation(k: int, q: int, cap: int | None = None) -> IncidenceStructure:
    """Points and lines of PG(k, q) as an incidence structure."""
    if k < 2:
        raise ValueError("k must be at least 2")
    lines = lines_of_pg(k, field_of_order(q), cap or POINT_CAP)
    return IncidenceStructure(num_points(k, q), lines)
