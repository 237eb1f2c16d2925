import itertools
from math import comb

import pytest

from oracles import pair_count, pg_counts
from triplepoints.construct import (
    build_arrangement,
    default_extension_degree,
    minimal_extension_search,
    subfield_embedding,
    projection_counts,
)
from triplepoints.datasets import arrangement, builtin
from triplepoints.errors import CapExceeded, NoCenterFound
from triplepoints.fields import field_of_order
from triplepoints.incidence import generate_pg_truncation
from triplepoints.realize import incidence_of, realizes_up_to_relabeling


@pytest.mark.parametrize("k,q,expected", [(3, 2, (15, 35, 3)), (4, 2, (31, 155, 3)), (2, 2, (7, 7, 3)), (2, 3, (13, 13, 4))])
def test_counts(k, q, expected):
    assert projection_counts(k, q) == expected
    assert expected[:2] == pg_counts(k, q)


def test_default_degrees():
    assert [default_extension_degree(k, 2) for k in (2, 3, 4, 5)] == [1, 4, 8, 11]
    assert [default_extension_degree(k, 3) for k in (2, 3, 4)] == [1, 4, 7]


@pytest.mark.parametrize("q,qm", [(2, 16), (4, 16), (4, 64), (3, 27), (9, 81)])
def test_subfield_embedding_is_a_homomorphism(q, qm):
    small, big = field_of_order(q), field_of_order(qm)
    emb = subfield_embedding(small, big)
    assert len(set(emb)) == q
    for a, b in itertools.product(range(q), repeat=2):
        assert emb[small.add(a, b)] == big.add(emb[a], emb[b])
        assert emb[small.mul(a, b)] == big.mul(emb[a], emb[b])


def test_fano_needs_no_projection():
    rep = build_arrangement(2, 2)
    assert rep.m_used == 1 and rep.steps == []
    assert rep.t_vector == {3: 7}
    assert realizes_up_to_relabeling(rep.arrangement, builtin("fano"))[0].ok


def test_pg32_over_f16():
    rep = build_arrangement(3, 2, 4)
    assert rep.field.size == 16 and rep.n_lines == 15
    assert rep.t_vector == {3: 35}
    assert rep.arrangement == arrangement("f16_15")
    assert [s.method for s in rep.steps] == ["canonical"]


def test_pg42_over_f256():
    rep = build_arrangement(4, 2, 8)
    assert rep.field.size == 256 and rep.n_lines == 31
    assert rep.t_vector == {3: 155}
    assert pair_count(rep.t_vector) == comb(31, 2)
    assert len(rep.steps) == 2 and all(s.seed == 0 for s in rep.steps)


def test_seeded_runs_replay():
    a = build_arrangement(4, 2, 8, seed=3)
    b = build_arrangement(4, 2, 8, seed=3)
    assert a.arrangement == b.arrangement
    assert [s.center for s in a.steps] == [s.center for s in b.steps]


@pytest.mark.parametrize("k,q", [(2, 3), (2, 4), (3, 3)])
def test_other_prime_powers(k, q):
    rep = build_arrangement(k, q)
    pts, lines = pg_counts(k, q)
    assert rep.n_lines == pts
    assert rep.t_vector == {q + 1: lines}


def test_construction_matches_pg_truncation():
    rep = build_arrangement(3, 3)
    inc, _ = incidence_of(rep.arrangement)
    assert realizes_up_to_relabeling(rep.arrangement, generate_pg_truncation(3, 3))[0].ok
    assert len(inc.blocks) == 130


def test_too_small_degree_fails_without_retry():
    with pytest.raises(NoCenterFound):
        build_arrangement(3, 2, 1, retry=False)


def test_retry_records_deviation():
    rep = build_arrangement(3, 2, 3, max_extra_degree=1)
    assert rep.m_requested == 3 and rep.m_used == 4
    assert len(rep.deviations) == 1


def test_field_cap():
    with pytest.raises(CapExceeded):
        build_arrangement(3, 2, 30)


def test_minimal_extension_search():
    assert minimal_extension_search(3, 2, [1, 2, 3, 4]) == {
        1: "realization_absent",
        2: "realization_absent",
        3: "realization_absent",
        4: "constructible",
    }
    assert minimal_extension_search(2, 2, [1]) == {1: "constructible"}


def test_report_dict():
    d = build_arrangement(3, 2, 4).to_dict()
    assert d["k"] == 3 and d["q"] == 2 and d["m"] == 4
    assert d["t_vector"] == {"3": 35}
    assert d["arrangement"].startswith("field 2 4 1 0 0 1 1\nn 15\n")
    assert len(d["centers"]) == 1 and len(d["centers"][0]["coords"]) == 4
