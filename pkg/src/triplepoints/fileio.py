"""Text formats for incidence structures and arrangements, and ``@name`` handles.

Incidence file::

    # optional comments
    n 7
    1 2 3
    1 4 5
    ...

Arrangement file (one line of the arrangement per row, i.e. one matrix
column per row)::

    field 11 1            # or: field 2 4 1 0 0 1 1 / field Q / field Qquad 4 -6 1
    n 19
    1 0 0
    ...
"""

from __future__ import annotations

import re
from fractions import Fraction
from pathlib import Path

from .errors import NonPrime, ParseError, ReducibleQuadratic, UnknownName
from .fields import FieldSpec, make_field
from .incidence import IncidenceStructure


def _content_lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def _header_n(line: str) -> int:
    parts = line.split()
    if len(parts) != 2 or parts[0] != "n" or not parts[1].isdigit():
        raise ParseError(f"expected 'n <N>', got {line!r}")
    return int(parts[1])


def parse_incidence(text: str) -> IncidenceStructure:
    lines = _content_lines(text)
    if not lines:
        raise ParseError("empty incidence file")
    n = _header_n(lines[0])
    blocks = []
    for line in lines[1:]:
        try:
            block = [int(tok) for tok in line.split()]
        except ValueError as exc:
            raise ParseError(f"bad block line {line!r}") from exc
        if len(block) < 3 or len(set(block)) != len(block):
            raise ParseError(f"block {block} must have at least three distinct elements")
        if min(block) < 1 or max(block) > n:
            raise ParseError(f"block {block} not inside 1..{n}")
        blocks.append(block)
    return IncidenceStructure.from_one_based(n, blocks)


def format_incidence(inc: IncidenceStructure, comment: str | None = None) -> str:
    out = [f"# {c}" for c in comment.splitlines()] if comment else []
    out.append(f"n {inc.n}")
    out.extend(" ".join(map(str, b)) for b in inc.one_based())
    return "\n".join(out) + "\n"


def parse_field_header(line: str) -> FieldSpec:
    parts = line.split()
    if not parts or parts[0] != "field" or len(parts) < 2:
        raise ParseError(f"expected a 'field ...' header, got {line!r}")
    try:
        if parts[1] == "Q" and len(parts) == 2:
            return make_field("Q")
        if parts[1] == "Qquad" and len(parts) == 5:
            return make_field(quadratic=[Fraction(x) for x in parts[2:]])
        p, k = int(parts[1]), int(parts[2]) if len(parts) > 2 else 1
        modulus = [int(x) for x in parts[3:]]
        if k == 1 or not modulus:
            return make_field(p, k)
        return make_field(p, k, modulus=modulus)
    except (NonPrime, ReducibleQuadratic) as exc:
        raise ParseError(f"bad field header {line!r}: {exc}") from exc
    except (ValueError, IndexError) as exc:
        raise ParseError(f"bad field header {line!r}") from exc


def _element_tokens(line: str) -> list[str]:
    line = re.sub(r"\[\s*", "[", line)
    line = re.sub(r"\s*,\s*", ",", line)
    line = re.sub(r"\s*\]", "]", line)
    # binary +/- with spaces on both sides joins the parts of one a+b*eps literal
    line = re.sub(r"\s+([+-])\s+", r"\1", line)
    return line.split()


def parse_arrangement(text: str):
    from .realize import Arrangement

    lines = _content_lines(text)
    if len(lines) < 2:
        raise ParseError("arrangement file needs a field header and an n line")
    F = parse_field_header(lines[0])
    n = _header_n(lines[1])
    rows = lines[2:]
    if len(rows) != n:
        raise ParseError(f"header says n {n} but {len(rows)} lines follow")
    cols = []
    for row in rows:
        toks = _element_tokens(row)
        if len(toks) != 3:
            raise ParseError(f"expected three entries, got {row!r}")
        cols.append(tuple(F.parse(t) for t in toks))
    return Arrangement(F, tuple(cols))


def format_arrangement(arr, comment: str | None = None) -> str:
    F = arr.field
    out = [f"# {c}" for c in comment.splitlines()] if comment else []
    out.append(F.header())
    out.append(f"n {arr.n}")
    out.extend(" ".join(F.format(x) for x in col) for col in arr.columns)
    return "\n".join(out) + "\n"


def format_t_vector(t: dict[int, int]) -> str:
    t = {2: 0, **t}
    return " ".join(f"t{k}={t[k]}" for k in sorted(t, reverse=True))


def load_incidence(source: str) -> IncidenceStructure:
    """Read an incidence file, or resolve ``@name`` (``@fano``, ``@pg:3,2``, ...).

    An arrangement name resolves to the structure of its triple points.
    """
    from .datasets import builtin

    if source.startswith("@"):
        from .datasets import ARRANGEMENT_NAMES, arrangement

        name = source[1:]
        if name in ARRANGEMENT_NAMES:
            from .realize import incidence_of

            return incidence_of(arrangement(name))[0]
        return builtin(name)
    return parse_incidence(Path(source).read_text())


def load_arrangement(source: str):
    """Read an arrangement file, or resolve ``@name`` (``@f11_19``, ``@qeps_16``, ...)."""
    from .datasets import ARRANGEMENT_NAMES, arrangement

    if source.startswith("@"):
        name = source[1:]
        if name not in ARRANGEMENT_NAMES:
            raise UnknownName(name)
        return arrangement(name)
    return parse_arrangement(Path(source).read_text())
