"""Automorphism groups of incidence structures by backtracking.

A permutation is an automorphism when it maps blocks onto blocks. The search
places elements one at a time in a fixed order; elements get candidate images
only inside their refinement class, and a block whose image is already known
confines the images of its remaining members. The group order is computed as
the product of basic orbit lengths along the chain of pointwise stabilizers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .errors import CapExceeded
from .incidence import IncidenceStructure, require_valid

AUT_CAP = 31


@dataclass
class AutGroupReport:
    order: int
    generators: list[tuple[int, ...]]
    block_orbits: list[list[int]] = field(default_factory=list)
    base_orbits: list[int] = field(default_factory=list)

    @property
    def transitive_on_blocks(self) -> bool:
        return len(self.block_orbits) == 1


def _relabel(keys: list) -> list[int]:
    palette = {k: i for i, k in enumerate(sorted(set(keys)))}
    return [palette[k] for k in keys]


def refine_classes(inc: IncidenceStructure) -> list[int]:
    """Colour elements by an iterated (block sizes, neighbour colours) invariant."""
    n = inc.n
    through = [[] for _ in range(n)]
    for b in inc.blocks:
        for x in b:
            through[x].append(b)
    keys = [tuple(sorted(len(b) for b in through[x])) for x in range(n)]
    colors = _relabel(keys)
    while True:
        keys = [
            (colors[x], tuple(sorted(tuple(sorted(colors[y] for y in b if y != x)) for b in through[x])))
            for x in range(n)
        ]
        new = _relabel(keys)
        # each round refines the previous partition, so equal class counts mean stable
        if len(set(new)) == len(set(colors)):
            break
        colors = new
    return colors


class _Search:
    def __init__(self, inc: IncidenceStructure):
        self.inc = inc
        self.n = n = inc.n
        self.pb = inc.pair_block
        self.blocks = inc.blocks
        self.colors = refine_classes(inc)
        class_size = {c: self.colors.count(c) for c in set(self.colors)}

        order: list[int] = []
        chosen = [False] * n
        for _ in range(n):
            best, best_key = -1, None
            for x in range(n):
                if chosen[x]:
                    continue
                partners = [y for y in order if self.pb[x][y] >= 0]
                anchored = len(partners) != len({self.pb[x][y] for y in partners})
                key = (anchored, len(partners), -class_size[self.colors[x]], -x)
                if best_key is None or key > best_key:
                    best, best_key = x, key
            order.append(best)
            chosen[best] = True
        self.order = order

    def search(self, prefix: dict[int, int] | None = None) -> Iterator[tuple[int, ...]]:
        """Yield automorphisms extending ``prefix`` (element -> image)."""
        n, pb, blocks, colors, order = self.n, self.pb, self.blocks, self.colors, self.order
        prefix = prefix or {}
        image = [-1] * n
        used = [False] * n
        beta: dict[int, int] = {}
        beta_used: set[int] = set()

        def candidates(x: int, depth: int) -> list[int]:
            if x in prefix:
                return [prefix[x]]
            for i in range(depth):
                b = pb[x][order[i]]
                if b >= 0 and b in beta:
                    return [y for y in blocks[beta[b]] if not used[y]]
            cx = colors[x]
            return [y for y in range(n) if not used[y] and colors[y] == cx]

        def place(x: int, y: int, depth: int) -> list[int] | None:
            """Check x -> y against placed elements; return newly fixed blocks."""
            new: list[int] = []
            for i in range(depth):
                a = order[i]
                b, b2 = pb[x][a], pb[y][image[a]]
                if (b < 0) != (b2 < 0):
                    break
                if b < 0:
                    continue
                if b in beta:
                    if beta[b] != b2:
                        break
                elif b2 in beta_used or len(blocks[b]) != len(blocks[b2]):
                    break
                else:
                    beta[b] = b2
                    beta_used.add(b2)
                    new.append(b)
            else:
                return new
            for b in new:
                beta_used.discard(beta.pop(b))
            return None

        def dfs(depth: int) -> Iterator[tuple[int, ...]]:
            if depth == n:
                yield tuple(image)
                return
            x = order[depth]
            for y in candidates(x, depth):
                if used[y] or colors[y] != colors[x]:
                    continue
                new = place(x, y, depth)
                if new is None:
                    continue
                image[x], used[y] = y, True
                yield from dfs(depth + 1)
                image[x], used[y] = -1, False
                for b in new:
                    beta_used.discard(beta.pop(b))

        return dfs(0)

    def first(self, prefix: dict[int, int]) -> tuple[int, ...] | None:
        return next(self.search(prefix), None)


def _orbit(start: int, gens: list[tuple[int, ...]]) -> set[int]:
    orbit, frontier = {start}, [start]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = g[x]
            if y not in orbit:
                orbit.add(y)
                frontier.append(y)
    return orbit


def _block_orbits(inc: IncidenceStructure, gens: list[tuple[int, ...]]) -> list[list[int]]:
    index = {b: i for i, b in enumerate(inc.blocks)}
    parent = list(range(len(inc.blocks)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for g in gens:
        for i, b in enumerate(inc.blocks):
            j = index[tuple(sorted(g[x] for x in b))]
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    groups: dict[int, list[int]] = {}
    for i in range(len(inc.blocks)):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values())


def automorphisms(inc: IncidenceStructure, cap: int = AUT_CAP) -> AutGroupReport:
    """Order, generators and block orbits of the automorphism group."""
    require_valid(inc)
    if inc.n > cap:
        raise CapExceeded(f"n = {inc.n} exceeds the automorphism cap {cap}")
    s = _Search(inc)
    n, order = inc.n, s.order
    gens: list[tuple[int, ...]] = []
    group_order = 1
    base_orbits = []
    for level in range(n - 1, -1, -1):
        x = order[level]
        fixed = {order[j]: order[j] for j in range(level)}
        orbit = _orbit(x, gens)
        failed: set[int] = set()
        for c in range(n):
            if c in orbit or c in failed or s.colors[c] != s.colors[x]:
                continue
            g = s.first({**fixed, x: c})
            if g is None:
                failed |= _orbit(c, gens)
            else:
                gens.append(g)
                orbit = _orbit(x, gens)
        base_orbits.append(len(orbit))
        group_order *= len(orbit)
    base_orbits.reverse()
    return AutGroupReport(group_order, gens, _block_orbits(inc, gens), base_orbits)


def iter_automorphisms(inc: IncidenceStructure) -> Iterator[tuple[int, ...]]:
    """Every automorphism, as the accepted leaves of the full backtrack tree."""
    require_valid(inc)
    return _Search(inc).search()
