"""Export of the polynomial system whose solutions are realizations.

Variables are the entries ``p_i_j`` of a generic 3 x n matrix and a
saturation variable ``d``. There is one generator ``det(P_N)`` per non-basis
triple ``N`` (a triple inside a block) and the single generator
``1 - d * prod det(P_B)`` over all basis triples ``B``; the product is kept
factored. Deciding whether 1 lies in the ideal is left to a computer algebra
system.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .incidence import IncidenceStructure, require_valid

Monomial = tuple[int, ...]  # sorted variable indices, with repetition
Polynomial = dict  # Monomial -> int coefficient


def variable_names(n: int) -> list[str]:
    return [f"p_{i}_{j}" for i in range(1, 4) for j in range(1, n + 1)] + ["d"]


def _var(n: int, row: int, col: int) -> int:
    return row * n + col


_PERMS = [((0, 1, 2), 1), ((1, 2, 0), 1), ((2, 0, 1), 1), ((0, 2, 1), -1), ((2, 1, 0), -1), ((1, 0, 2), -1)]


def determinant(n: int, triple: tuple[int, int, int]) -> Polynomial:
    """Expanded 3x3 minor of the generic matrix on the given columns."""
    poly: Polynomial = {}
    for perm, sign in _PERMS:
        mono = tuple(sorted(_var(n, r, triple[perm[r]]) for r in range(3)))
        poly[mono] = poly.get(mono, 0) + sign
    return {m: c for m, c in poly.items() if c}


def format_polynomial(poly: Polynomial, names: list[str]) -> str:
    terms = []
    for mono in sorted(poly):
        c = poly[mono]
        body = "*".join(names[v] for v in mono)
        if not body:
            text = str(abs(c))
        elif abs(c) == 1:
            text = body
        else:
            text = f"{abs(c)}*{body}"
        terms.append(("-" if c < 0 else "+", text))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, text in terms[1:]:
        out += f" {sign} {text}"
    return out


@dataclass
class IdealExport:
    n: int
    variables: list[str]
    non_bases: list[tuple[int, int, int]]
    bases: list[tuple[int, int, int]]
    generators: list[Polynomial]  # determinant generators only
    factored_saturation: bool = True

    @property
    def num_generators(self) -> int:
        return len(self.generators) + 1

    def saturation_text(self) -> str:
        names = self.variables
        factors = "*".join(f"({format_polynomial(determinant(self.n, b), names)})" for b in self.bases)
        return "1 - d" + (f"*{factors}" if factors else "")

    def to_text(self) -> str:
        lines = [
            f"# realization ideal, n = {self.n}",
            "variables " + " ".join(self.variables),
            f"factored_saturation {'true' if self.factored_saturation else 'false'}",
            f"generators {self.num_generators}",
        ]
        for triple, poly in zip(self.non_bases, self.generators):
            lines.append(format_polynomial(poly, self.variables))
        lines.append(self.saturation_text())
        return "\n".join(lines) + "\n"


def build_ideal(inc: IncidenceStructure) -> IdealExport:
    require_valid(inc)
    n = inc.n
    non_bases, bases = [], []
    for t in itertools.combinations(range(n), 3):
        (non_bases if inc.is_collinear(*t) else bases).append(t)
    return IdealExport(
        n=n,
        variables=variable_names(n),
        non_bases=non_bases,
        bases=bases,
        generators=[determinant(n, t) for t in non_bases],
    )
