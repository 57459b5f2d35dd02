import itertools

import pytest

from coxtile import (
    CoxeterType,
    RelationSet,
    build_system,
    elnitsky_relations,
    embed_word,
    enumerate_reduced,
    expand,
    induced_relation_set,
    is_reduced,
    longest_element,
    parse_sigma_consistent,
    partition_from_blocks,
    table_row,
    tabulated_relation_set,
    verify_induced_matrix,
    x_length,
)
from coxtile.coxeter import expected_matrix
from coxtile.embeddings import row_blocks
from coxtile.errors import MatrixMismatch, NotInSubgroup, NotReducedInW, NotReducedInX, UnsupportedHost, UsageError

B3 = ((1, 4, 2), (4, 1, 3), (2, 3, 1))


def test_a5_b3_images(rows):
    p = rows("A5-B3")
    assert p.blocks == ((3,), (2, 4), (1, 5))
    assert p.canonical == ((3,), (2, 4), (1, 5))
    host = p.host
    assert p.images[0] == host.gen(3)
    assert p.images[1] == host.evaluate([2, 4])
    assert p.images[2] == host.evaluate([1, 5])
    assert verify_induced_matrix(p) == B3


def test_a6_b3_first_image_is_length_three(rows):
    p = rows("A6-B3")
    assert p.blocks[0] == (3, 4)
    assert p.host.length(p.images[0]) == 3
    assert p.image_words[0] == {(3, 4, 3), (4, 3, 4)}
    assert expand(p, [1]) == [(1, (3, 4, 3))]
    # (3,5) as a transposition of positions
    assert p.host.one_line(p.images[0]) == "1 2 5 4 3 6 7"
    assert verify_induced_matrix(p) == B3


@pytest.mark.parametrize("row, rank", [("D4-B3", 3), ("D5-B4", 4)])
def test_d_hosts_give_b(rows, row, rank):
    p = rows(row)
    assert verify_induced_matrix(p) == expected_matrix(CoxeterType("B", rank))
    # t1 is the product of the two commuting fork ends
    assert p.blocks[0] == (1, 3)
    assert p.images[0] == p.host.evaluate([1, 3])


def test_d6_h3(rows):
    p = rows("D6-H3")
    assert p.table_blocks == ((1, 4), (2, 6), (3, 5))
    orders = sorted(p.x_system.m(i, j) for i, j in itertools.combinations(range(1, 4), 2))
    assert orders == [2, 3, 5]
    assert p.x_system.m(1, 2) == 5
    assert len(p.x_system.table) == 120
    assert x_length(p, longest_element(p.x_system)) == 15


def test_table_blocks_without_relabelling_are_not_h3():
    d6 = build_system("D6")
    p = partition_from_blocks(d6, CoxeterType("H", 3), [(1, 4), (2, 6), (3, 5)])
    with pytest.raises(MatrixMismatch):
        verify_induced_matrix(p)


def test_b3_longest_length(rows):
    p = rows("A5-B3")
    assert len(p.x_system.table) == 48
    assert x_length(p, longest_element(p.x_system)) == 9
    assert len(table_row("D5-B4").x_system.table) == 384


def test_row_blocks_formulae():
    assert row_blocks("A7-B4")[2] == [{4}, {3, 5}, {2, 6}, {1, 7}]
    assert row_blocks("A8-B4")[2] == [{4, 5}, {3, 6}, {2, 7}, {1, 8}]
    assert row_blocks("D5-B4")[2] == [{1, 2}, {3}, {4}, {5}]
    with pytest.raises(UsageError):
        row_blocks("A5-H3")
    with pytest.raises(UsageError):
        row_blocks("nonsense")


@pytest.mark.parametrize("row", ["E6-F4", "E8-H4"])
def test_e_rows_are_recorded_only(row):
    assert row_blocks(row)[2]
    with pytest.raises(UnsupportedHost):
        table_row(row)


def test_h3_longest_expands_to_reduced_30(rows):
    p = rows("D6-H3")
    x0 = longest_element(p.x_system)
    x_word = enumerate_reduced(p.x_system, x0)[0]
    s_word = embed_word(p, x_word)
    assert len(x_word) == 15 and len(s_word) == 30
    assert is_reduced(p.host, s_word)
    assert p.host.evaluate(s_word) == x0


def test_every_b4_word_embeds_reduced(rows):
    p = rows("D5-B4")
    x0 = longest_element(p.x_system)
    for x_word in enumerate_reduced(p.x_system, x0)[:500]:
        s_word = embed_word(p, x_word)
        parse = parse_sigma_consistent(p, s_word)
        assert parse is not None and parse.x_word == tuple(x_word)
        assert parse.s_word == s_word


def test_expand_rejects_nonreduced(rows):
    p = rows("A5-B3")
    with pytest.raises(NotReducedInX):
        expand(p, [1, 1])
    with pytest.raises(UsageError):
        expand(p, [4])


def test_sigma_parse(rows):
    p = rows("A5-B3")
    assert parse_sigma_consistent(p, (1, 2, 1)) is None
    parse = parse_sigma_consistent(p, (3, 2, 4, 1, 5))
    assert parse.blocks_sequence == ((1, (3,)), (2, (2, 4)), (3, (1, 5)))
    assert parse_sigma_consistent(p, (3, 4, 2, 5, 1)).x_word == (1, 2, 3)
    with pytest.raises(NotReducedInW):
        parse_sigma_consistent(p, (3, 3))


def test_x_length_outside_subgroup(rows):
    p = rows("A5-B3")
    with pytest.raises(NotInSubgroup):
        x_length(p, p.host.gen(1))


def test_relation_sets(rows):
    a5 = rows("A5-B3")
    assert induced_relation_set(a5, RelationSet.all_commuting(a5.host)) == {(1, 3)}
    assert tabulated_relation_set(a5) == {(1, 3)}
    d5 = rows("D5-B4")
    assert tabulated_relation_set(d5) == {(1, 4), (2, 4)}
    # t1 = s1 s3 commutes with t3 = s4 inside the host relations
    assert induced_relation_set(d5, elnitsky_relations(d5.host)) == {(1, 3), (1, 4), (2, 4)}
    h3 = rows("D6-H3")
    assert induced_relation_set(h3, elnitsky_relations(h3.host)) == RelationSet()
    assert tabulated_relation_set(h3) == RelationSet()


def test_partition_must_cover(rows):
    with pytest.raises(UsageError):
        partition_from_blocks(build_system("A3"), CoxeterType("B", 2), [(1,), (2,)])
