"""Admissible partitions and the embedded Coxeter systems they induce.

A partition of the host generators into blocks ``Σ_1..Σ_k`` sends each new
generator ``t_i`` to the longest element of the parabolic subgroup on
``Σ_i``.  The image group X is materialised inside the host by closure, so
every element of X is a host permutation and X reuses the host's symbol set.

Table rows are written in diagram node labels.  For type D hosts those labels
are translated through the host's ``diagram_labels`` map before use, and the
block-to-``t_i`` order is whichever ordering reproduces X's Coxeter matrix.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Sequence

from .config import DEFAULT, Config
from .coxeter import (
    CoxeterSystem,
    CoxeterType,
    GroupElement,
    build_system,
    computed_matrix,
    expected_matrix,
    parabolic_longest,
)
from .errors import (
    MatrixMismatch,
    NotInSubgroup,
    NotReducedInW,
    NotReducedInX,
    UnsupportedHost,
    UsageError,
)
from .words import RelationSet, Word, enumerate_reduced, is_reduced

# Row data as tabulated: host type, embedded type, blocks in diagram labels.
# Blocks are listed with the block for t1 first where a convention exists.
RECORDED_ROWS = {
    "E6-F4": ("E6", "F4", [{1, 6}, {3, 5}, {2}, {4}]),
    "E8-H4": ("E8", "H4", [{1, 8}, {2, 5}, {3, 7}, {4, 6}]),
    "D6-H3": ("D6", "H3", [{1, 4}, {2, 6}, {3, 5}]),
}


def row_blocks(name: str) -> tuple[CoxeterType, CoxeterType, list[set[int]]]:
    """Resolve a row name such as ``A5-B3``, ``A6-B3``, ``D5-B4`` or ``D6-H3``."""
    m = re.fullmatch(r"\s*([A-Za-z])(\d+)\s*-\s*([A-Za-z])(\d+)\s*", name)
    if not m:
        raise UsageError(f"cannot parse row {name!r}; expected e.g. A5-B3")
    host = CoxeterType(m.group(1).upper(), int(m.group(2)))
    x = CoxeterType(m.group(3).upper(), int(m.group(4)))
    key = f"{host}-{x}"
    if key in RECORDED_ROWS:
        _, _, blocks = RECORDED_ROWS[key]
        return host, x, [set(b) for b in blocks]
    n = x.rank
    if x.family == "B" and n >= 2:
        if host.family == "A" and host.rank == 2 * n - 1:
            return host, x, [{n}] + [{n - i, n + i} for i in range(1, n)]
        if host.family == "A" and host.rank == 2 * n:
            return host, x, [{n - i, n + 1 + i} for i in range(0, n)]
        if host.family == "D" and host.rank == n + 1:
            return host, x, [{1, 2}] + [{i} for i in range(3, n + 2)]
    raise UsageError(f"no admissible partition row {key}")


@dataclass(frozen=True, eq=False)
class AdmissiblePartition:
    host: CoxeterSystem
    x_type: CoxeterType
    blocks: tuple[tuple[int, ...], ...]  # host generator indices; blocks[i-1] is Σ_i
    images: tuple[GroupElement, ...]
    x_system: CoxeterSystem
    table_blocks: tuple[tuple[int, ...], ...]  # as tabulated, diagram labels
    name: str = ""
    canonical: tuple[Word, ...] = ()  # emitted host word per t_i
    image_words: tuple[frozenset, ...] = ()  # every reduced host word per t_i
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def rank(self) -> int:
        return len(self.blocks)

    def block_of(self, t: int) -> tuple[int, ...]:
        return self.blocks[t - 1]


@dataclass(frozen=True)
class SigmaParse:
    blocks_sequence: tuple[tuple[int, Word], ...]  # (t index, host sub-word)

    @property
    def x_word(self) -> Word:
        return tuple(t for t, _ in self.blocks_sequence)

    @property
    def s_word(self) -> Word:
        return tuple(letter for _, sub in self.blocks_sequence for letter in sub)


def _image(host: CoxeterSystem, block: Sequence[int]) -> GroupElement:
    img = parabolic_longest(host, block)
    commuting = all(host.m(a, b) == 2 for a, b in itertools.combinations(block, 2))
    if commuting:
        product = host.evaluate(sorted(block))
        assert product == img, "commuting block: longest element is the product"
    return img


def _x_system(x_type: CoxeterType, images, host: CoxeterSystem) -> CoxeterSystem:
    return CoxeterSystem(
        ctype=x_type,
        generators=tuple(images),
        coxeter_matrix=computed_matrix(images),
        symbols=host.symbols,
        diagram_labels={i: i for i in range(1, len(images) + 1)},
        group_cap=host.group_cap,
    )


def partition_from_blocks(host: CoxeterSystem, x_type: CoxeterType, blocks, name: str = "",
                          table_blocks=None) -> AdmissiblePartition:
    """Partition with blocks already in ``t`` order (host generator indices)."""
    blocks = tuple(tuple(sorted(b)) for b in blocks)
    covered = sorted(i for b in blocks for i in b)
    if covered != list(range(1, host.rank + 1)):
        raise UsageError(f"blocks {blocks} do not partition the generators of {host.ctype}")
    images = tuple(_image(host, b) for b in blocks)
    x_sys = _x_system(x_type, images, host)
    canonical, image_words = [], []
    for img in images:
        words = enumerate_reduced(host, img)
        canonical.append(words[0])  # lexicographically least
        image_words.append(frozenset(words))
    return AdmissiblePartition(
        host=host,
        x_type=x_type,
        blocks=blocks,
        images=images,
        x_system=x_sys,
        table_blocks=tuple(tuple(sorted(b)) for b in (table_blocks or blocks)),
        name=name,
        canonical=tuple(canonical),
        image_words=tuple(image_words),
    )


def table_row(name: str, config: Config = DEFAULT, host: CoxeterSystem | None = None) -> AdmissiblePartition:
    """Build the admissible partition for a table row such as ``D6-H3``.

    The E-series rows are recorded but have no host realisation here.
    """
    host_type, x_type, fig_blocks = row_blocks(name)
    if host_type.family not in ("A", "D"):
        raise UnsupportedHost(f"row {host_type}-{x_type} is recorded, but {host_type} has no host realisation")
    if host is None:
        host = build_system(host_type, config)
    elif host.ctype != host_type:
        raise UsageError(f"row {name} needs host {host_type}, got {host.ctype}")
    to_host = {fig: idx for idx, fig in host.diagram_labels.items()}
    host_blocks = [tuple(sorted(to_host[f] for f in b)) for b in fig_blocks]
    images = [_image(host, b) for b in host_blocks]
    want = expected_matrix(x_type)
    for order in itertools.permutations(range(len(host_blocks))):
        if computed_matrix([images[i] for i in order]) == want:
            break
    else:
        raise MatrixMismatch(f"no ordering of the blocks of {name} reproduces the {x_type} matrix")
    return partition_from_blocks(
        host,
        x_type,
        [host_blocks[i] for i in order],
        name=f"{host_type}-{x_type}",
        table_blocks=[sorted(b) for b in fig_blocks],
    )


def verify_induced_matrix(p: AdmissiblePartition) -> tuple[tuple[int, ...], ...]:
    """Orders of ``image_i * image_j``; raises if they differ from X's matrix."""
    got = computed_matrix(p.images)
    want = expected_matrix(p.x_type)
    for i, row in enumerate(got):
        for j, value in enumerate(row):
            if value != want[i][j]:
                raise MatrixMismatch(
                    f"{p.name}: order of t{i + 1}t{j + 1} is {value}, {p.x_type} needs {want[i][j]}",
                    pair=(i + 1, j + 1),
                )
    return got


def expand(p: AdmissiblePartition, x_word: Sequence[int]) -> list[tuple[int, Word]]:
    """Each letter ``t_i`` paired with its canonical host word."""
    for t in x_word:
        if not 1 <= t <= p.rank:
            raise UsageError(f"letter t{t} out of range 1..{p.rank}")
    if not is_reduced(p.x_system, x_word):
        raise NotReducedInX(f"{list(x_word)} is not reduced in {p.x_type}")
    return [(t, p.canonical[t - 1]) for t in x_word]


def embed_word(p: AdmissiblePartition, x_word: Sequence[int]) -> Word:
    s_word = tuple(letter for _, sub in expand(p, x_word) for letter in sub)
    if not is_reduced(p.host, s_word):
        raise NotReducedInW(f"expansion {list(s_word)} is not reduced in {p.host.ctype}")
    return s_word


def x_length(p: AdmissiblePartition, x: GroupElement) -> int:
    if not p.x_system.contains(x):
        raise NotInSubgroup(f"element is not in the image of {p.x_type}")
    return p.x_system.length(x)


def parse_sigma_consistent(p: AdmissiblePartition, s_word: Sequence[int]) -> SigmaParse | None:
    """Split ``s_word`` into consecutive reduced words of the images.

    Returns the first parse in (position, t index, sub-word) order, or
    ``None`` when the word is not Σ-consistent.
    """
    s_word = tuple(s_word)
    if not is_reduced(p.host, s_word):
        raise NotReducedInW(f"{list(s_word)} is not reduced in {p.host.ctype}")
    options = [
        (t, u) for t in range(1, p.rank + 1) for u in sorted(p.image_words[t - 1])
    ]
    n = len(s_word)
    # tail[k]: a parse of s_word[k:] or None
    tail: list = [None] * (n + 1)
    tail[n] = ()
    for k in range(n - 1, -1, -1):
        for t, u in options:
            end = k + len(u)
            if end <= n and tail[end] is not None and s_word[k:end] == u:
                tail[k] = ((t, u),) + tail[end]
                break
    if tail[0] is None:
        return None
    return SigmaParse(tail[0])


def induced_relation_set(p: AdmissiblePartition, rels: RelationSet) -> RelationSet:
    """``{t_i, t_j}`` is allowed iff every host pair across the two blocks is."""
    pairs = []
    for i, j in itertools.combinations(range(1, p.rank + 1), 2):
        if all(rels.allows(a, b) for a in p.block_of(i) for b in p.block_of(j)):
            pairs.append((i, j))
    return RelationSet(pairs)


def tabulated_relation_set(p: AdmissiblePartition) -> RelationSet:
    """The relation set K as usually quoted for each row.

    Commutations ``|i-j| >= 2`` for the B rows, with ``t1t3`` dropped for the
    D-host row, and nothing for H3.  Kept for comparison with
    :func:`induced_relation_set`, which is what the tilings actually obey.
    """
    if p.x_type.family == "H":
        return RelationSet()
    pairs = [(i, j) for i, j in itertools.combinations(range(1, p.rank + 1), 2) if j - i >= 2]
    if p.host.ctype.family == "D":
        pairs = [pr for pr in pairs if pr != (1, 3)]
    return RelationSet(pairs)
