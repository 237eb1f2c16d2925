"""Two realizations of the same 16-element matroid with 37 triple points."""

from triplepoints import arrangement, builtin, incidence_of, realizes_up_to_relabeling, verify_realization

m = builtin("matroid16_37")
f11 = arrangement("f11_16")
print("F_11 matrix:", incidence_of(f11)[1], "realizes the matroid:", verify_realization(f11, m).ok)

qeps = arrangement("qeps_16")
print("Q(eps) matrix:", incidence_of(qeps)[1])
direct = verify_realization(qeps, m)
print("same labels?", direct.ok, "first disagreeing triple:", direct.discrepancy)
verdict, w = realizes_up_to_relabeling(qeps, m)
print("after relabeling element i -> line w[i]:", verdict.ok, w)
