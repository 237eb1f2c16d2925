"""Bundled incidence structures and arrangements.

Block lists are 1-based, exactly as they are usually printed. Matrices are
given row by row; for arrangements the columns are the lines, except for the
Q(eps) sixteen-line example whose rows are the lines.
"""

from __future__ import annotations

import re

from .errors import UnknownName
from .fields import make_field
from .incidence import IncidenceStructure, generate_pg_truncation

FANO = [[1, 2, 3], [1, 4, 5], [1, 6, 7], [2, 4, 6], [2, 5, 7], [3, 4, 7], [3, 5, 6]]

# affine plane of order 3 on points (x, y) -> 1 + 3x + y
DUAL_HESSE = [
    [1, 2, 3], [4, 5, 6], [7, 8, 9],
    [1, 4, 7], [2, 5, 8], [3, 6, 9],
    [1, 5, 9], [2, 6, 7], [3, 4, 8],
    [1, 6, 8], [2, 4, 9], [3, 5, 7],
]

STS13_1 = [
    [1, 2, 3], [1, 4, 5], [1, 6, 7], [1, 8, 9], [1, 10, 11], [1, 12, 13], [2, 4, 6], [2, 5, 8], [2, 7, 9],
    [2, 10, 12], [2, 11, 13], [3, 4, 10], [3, 5, 6], [3, 7, 11], [3, 8, 13], [3, 9, 12], [4, 7, 12],
    [4, 8, 11], [4, 9, 13], [5, 7, 13], [5, 9, 10], [5, 11, 12], [6, 8, 12], [6, 9, 11], [6, 10, 13],
    [7, 8, 10],
]

STS13_2 = [
    [1, 2, 3], [1, 4, 5], [1, 6, 7], [1, 8, 9], [1, 10, 11], [1, 12, 13], [2, 4, 6], [2, 5, 8], [2, 7, 9],
    [2, 10, 12], [2, 11, 13], [3, 4, 10], [3, 5, 6], [3, 7, 11], [3, 8, 12], [3, 9, 13], [4, 7, 12],
    [4, 8, 13], [4, 9, 11], [5, 7, 13], [5, 9, 10], [5, 11, 12], [6, 8, 11], [6, 9, 12], [6, 10, 13],
    [7, 8, 10],
]

MATROID16_37 = [
    [1, 8, 9], [1, 7, 10], [1, 6, 11], [1, 5, 12], [1, 4, 13], [1, 3, 14], [1, 2, 15], [2, 7, 9],
    [2, 6, 10], [2, 5, 11], [2, 4, 12], [2, 3, 13], [2, 8, 16], [3, 7, 8], [3, 6, 9], [3, 5, 10],
    [3, 4, 11], [3, 12, 16], [4, 6, 8], [4, 5, 9], [4, 14, 15], [4, 10, 16], [5, 6, 7], [5, 13, 15],
    [5, 14, 16], [6, 13, 14], [6, 12, 15], [7, 12, 14], [7, 11, 15], [7, 13, 16], [8, 12, 13], [8, 11, 14],
    [8, 10, 15], [9, 11, 13], [9, 10, 14], [9, 15, 16], [10, 11, 12],
]

# Pappus: A1..A3 = 1..3 on one line, B1..B3 = 4..6 on another,
# C12 = A1B2 & A2B1 = 7, C13 = 8, C23 = 9; the last block is the Pappus line.
PAPPUS = [[1, 2, 3], [4, 5, 6], [1, 5, 7], [2, 4, 7], [1, 6, 8], [3, 4, 8], [2, 6, 9], [3, 5, 9], [7, 8, 9]]
NON_PAPPUS = PAPPUS[:-1]

F7_13_ROWS = [
    [1, 1, 1, 1, 1, 0, 1, 0, 1, 1, 1, 0, 1],
    [1, 4, 3, 0, 5, 1, 0, 1, 3, 4, 5, 0, 1],
    [1, 6, 4, 2, 6, 1, 0, 0, 1, 0, 2, 1, 4],
]

F11_16_ROWS = [
    [1, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0, 1, 1, 1],
    [0, 1, 0, 1, 5, 7, 6, 6, 7, 5, 1, 8, 1, 0, 3, 8],
    [0, 0, 1, 1, 2, 3, 8, 10, 8, 3, 2, 1, 1, 7, 0, 10],
]

F11_19_ROWS = [
    [1, 0, 0, 1, 1, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1],
    [0, 1, 0, 1, 0, 1, 1, 10, 2, 3, 4, 8, 10, 6, 8, 2, 6, 3, 4],
    [0, 0, 1, 0, 1, 5, 6, 1, 10, 7, 6, 3, 4, 2, 10, 7, 4, 2, 3],
]

# one line per row, entries written as polynomials in eps (4 eps^2 - 6 eps + 1 = 0)
QEPS_16_LINES = [
    ["1", "0", "0"],
    ["0", "1", "0"],
    ["0", "0", "1"],
    ["1", "1", "1"],
    ["1", "1", "2"],
    ["0", "1", "1"],
    ["1", "-2e+3", "2"],
    ["1", "2e-2", "4e-4"],
    ["1", "-2e^2+3e", "2e-1"],
    ["1", "-2e^2+3e", "e"],
    ["1", "2e-2", "2e-1"],
    ["1", "-2e+3", "4e-4"],
    ["1", "-2e^2+2e+1", "1"],
    ["1", "0", "2e-2"],
    ["1", "-2e+1", "0"],
    ["1", "-2e^2+2e+1", "e"],
]
QEPS_MODULUS = (4, -6, 1)

# 15 lines over F_16 (modulus x^4 + x^3 + 1) produced by build_arrangement(3, 2, 4);
# columns are lines, entries are coefficient tuples constant term first.
F16_15_COLUMNS = [
    [(0, 0, 0, 0), (0, 0, 0, 0), (1, 0, 0, 0)],
    [(0, 0, 0, 0), (1, 0, 0, 0), (0, 0, 0, 0)],
    [(0, 0, 0, 0), (1, 0, 0, 0), (1, 0, 0, 0)],
    [(1, 0, 0, 0), (0, 0, 0, 0), (0, 0, 0, 0)],
    [(1, 0, 0, 0), (0, 0, 0, 0), (1, 0, 0, 0)],
    [(1, 0, 0, 0), (1, 0, 0, 0), (0, 0, 0, 0)],
    [(1, 0, 0, 0), (1, 0, 0, 0), (1, 0, 0, 0)],
    [(1, 0, 0, 0), (0, 0, 1, 1), (0, 1, 1, 0)],
    [(1, 0, 0, 0), (0, 0, 1, 1), (1, 0, 1, 0)],
    [(1, 0, 0, 0), (1, 1, 1, 1), (0, 1, 1, 0)],
    [(1, 0, 0, 0), (1, 1, 1, 1), (1, 0, 1, 0)],
    [(1, 0, 0, 0), (0, 1, 1, 0), (1, 1, 0, 0)],
    [(1, 0, 0, 0), (0, 1, 1, 0), (0, 1, 1, 1)],
    [(1, 0, 0, 0), (1, 1, 0, 1), (1, 1, 0, 0)],
    [(1, 0, 0, 0), (1, 1, 0, 1), (0, 1, 1, 1)],
]


def _eps_poly(F, text: str):
    """Evaluate a small polynomial in ``e`` such as ``-2e^2+3e``."""
    e = F(F.eps)
    total = F(0)
    for sign, coef, var, power in re.findall(r"([+-]?)(\d*)(e?)(?:\^(\d+))?", text.replace(" ", "")):
        if not coef and not var:
            continue
        c = int(coef) if coef else 1
        term = F(c) * (e ** (int(power) if power else 1) if var else F(1))
        total = total - term if sign == "-" else total + term
    return total


INCIDENCE_NAMES = ("fano", "dual_hesse", "sts13_1", "sts13_2", "matroid16_37", "pappus", "non_pappus", "sporadic19")
ARRANGEMENT_NAMES = ("f7_13", "f11_16", "qeps_16", "f11_19", "f16_15")


def arrangement(name: str):
    """A bundled arrangement by name."""
    from .realize import Arrangement

    if name == "f7_13":
        return Arrangement.from_rows(make_field(7), F7_13_ROWS)
    if name == "f11_16":
        return Arrangement.from_rows(make_field(11), F11_16_ROWS)
    if name == "f11_19":
        return Arrangement.from_rows(make_field(11), F11_19_ROWS)
    if name == "qeps_16":
        F = make_field(quadratic=QEPS_MODULUS)
        return Arrangement.from_columns(F, [[_eps_poly(F, x) for x in row] for row in QEPS_16_LINES])
    if name == "f16_15":
        F = make_field(2, 4)
        return Arrangement.from_columns(F, F16_15_COLUMNS)
    raise UnknownName(name)


_PG = re.compile(r"^(?:pg|pg_trunc)[:(]\s*(\d+)\s*,\s*(\d+)\s*\)?$")


def builtin(name: str) -> IncidenceStructure:
    """A bundled incidence structure.

    ``pg:k,q`` (or ``pg_trunc(k,q)``) gives the points and lines of PG(k, q);
    ``sporadic19`` is computed from the nineteen-line F_11 matrix.
    """
    lists = {
        "fano": (7, FANO),
        "dual_hesse": (9, DUAL_HESSE),
        "sts13_1": (13, STS13_1),
        "sts13_2": (13, STS13_2),
        "matroid16_37": (16, MATROID16_37),
        "pappus": (9, PAPPUS),
        "non_pappus": (9, NON_PAPPUS),
    }
    if name in lists:
        n, blocks = lists[name]
        return IncidenceStructure.from_one_based(n, blocks)
    if name == "sporadic19":
        from .realize import incidence_of

        return incidence_of(arrangement("f11_19"))[0]
    m = _PG.match(name)
    if m:
        return generate_pg_truncation(int(m[1]), int(m[2]))
    raise UnknownName(name)
