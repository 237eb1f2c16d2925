"""Nineteen lines over F_11 meeting only in triple points, and their symmetry."""

from triplepoints import arrangement, automorphisms, incidence_of

arr = arrangement("f11_19")
inc, t = incidence_of(arr)
print("t-vector:", t)              # {3: 57}, every pair of lines meets on a triple point

rep = automorphisms(inc)
print("automorphism group order:", rep.order)
print("orbits on triple points:", [len(o) for o in rep.block_orbits])

# remove one line: 48 triple points on 18 lines
print("after deleting a line:", incidence_of(arr.delete(0))[1])
