"""Exhaustive realization search over small finite fields."""

from triplepoints import builtin, field_of_order, search_realization
from triplepoints.fileio import format_arrangement

fano = builtin("fano")
for q in (2, 3, 4, 5):
    out = search_realization(fano, field_of_order(q))
    print(f"Fano over F_{q}: {out.status} ({out.nodes_explored} nodes)")

out = search_realization(fano, field_of_order(2))
print(format_arrangement(out.arrangement, comment="Fano plane over F_2"))

# the points and lines of PG(3,2) need a field with 16 elements
pg = builtin("pg:3,2")
for q in (2, 4, 8, 16):
    out = search_realization(pg, field_of_order(q))
    print(f"PG(3,2) over F_{q}: {out.status} ({out.nodes_explored} nodes, {out.elapsed:.2f}s)")

# no Steiner triple system on 13 points is realized over these fields
for name in ("sts13_1", "sts13_2"):
    statuses = [search_realization(builtin(name), field_of_order(q)).status for q in (2, 3, 4, 5, 7, 8, 9, 11, 13)]
    print(name, statuses)
