"""Write the realization ideal of the Fano plane for a computer algebra system."""

from triplepoints import build_ideal, builtin

ex = build_ideal(builtin("fano"))
print(ex.num_generators, "generators in", len(ex.variables), "variables")
text = ex.to_text()
print("\n".join(text.splitlines()[:6]))
print("...")
