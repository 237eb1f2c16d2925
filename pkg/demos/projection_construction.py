"""Build arrangements with only (q+1)-fold points by projecting PG(k, q)."""

from triplepoints import build_arrangement, minimal_extension_search

for k, q in [(2, 2), (3, 2), (4, 2), (2, 3), (3, 3)]:
    rep = build_arrangement(k, q)
    centers = ", ".join(f"{s.method} after {s.candidates_tested}" for s in rep.steps) or "none"
    print(f"k={k} q={q}: {rep.n_lines} lines over {rep.field.name}, t={rep.t_vector}, centers: {centers}")

# which extension degrees work for PG(3,2)?
print(minimal_extension_search(3, 2, [1, 2, 3, 4]))
