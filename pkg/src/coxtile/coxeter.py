"""Finite Coxeter systems realised as permutation groups.

Hosts are type A (adjacent transpositions of ``1..m+1``) and type D (signed
permutations of ``±1..±n`` with the generator list

    s1 = (1,-2)(2,-1), s2 = (2,3)(-2,-3), s3 = (1,2)(-1,-2),
    si = (i-1,i)(-(i-1),-i)   for i >= 4).

Elements are one-line tuples over internal indices ``0..N-1``.  Products are
composed right to left, ``(u*v)(x) = u(v(x))``, so right multiplication by a
generator permutes *positions* of the one-line form and a word ``i1 i2 ... ik``
evaluates to ``s_i1 * s_i2 * ... * s_ik``.

Lengths and descents come from a breadth-first search of the right Cayley
graph rather than closed formulas; the inversion count survives only as a test
oracle (:func:`inversion_count`).
"""

from __future__ import annotations

import itertools
import math
import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .config import DEFAULT, Config
from .errors import GroupTooLarge, RelationMismatch, UnsupportedType, UsageError

FAMILIES = ("A", "B", "D", "E", "F", "H")


@dataclass(frozen=True, order=True)
class CoxeterType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise UnsupportedType(f"unknown Coxeter family {self.family!r}")
        if self.rank < 1:
            raise UnsupportedType("rank must be positive")

    def __str__(self):
        return f"{self.family}{self.rank}"

    @classmethod
    def parse(cls, text: str) -> "CoxeterType":
        m = re.fullmatch(r"\s*([A-Za-z])_?(\d+)\s*", text)
        if not m:
            raise UsageError(f"cannot parse Coxeter type {text!r}")
        return cls(m.group(1).upper(), int(m.group(2)))


def expected_matrix(ctype: CoxeterType) -> tuple[tuple[int, ...], ...]:
    """Coxeter matrix with the usual Dynkin diagram node numbering.

    D_n has fork ends 1 and 2 both attached to node 3; E_n hangs node 2 off
    node 4.
    """
    f, r = ctype.family, ctype.rank
    edges: dict[tuple[int, int], int] = {}
    if f == "A":
        edges = {(i, i + 1): 3 for i in range(1, r)}
    elif f == "B":
        edges = {(i, i + 1): 3 for i in range(1, r)}
        if r >= 2:
            edges[(1, 2)] = 4
    elif f == "D":
        if r < 4:
            raise UnsupportedType("D_n needs n >= 4")
        edges = {(1, 3): 3, (2, 3): 3}
        edges.update({(i, i + 1): 3 for i in range(3, r)})
    elif f == "E":
        if r not in (6, 7, 8):
            raise UnsupportedType("E_n needs n in 6..8")
        edges = {(1, 3): 3, (3, 4): 3, (2, 4): 3}
        edges.update({(i, i + 1): 3 for i in range(4, r)})
    elif f == "F":
        if r != 4:
            raise UnsupportedType("only F4")
        edges = {(1, 2): 3, (2, 3): 4, (3, 4): 3}
    elif f == "H":
        if r not in (3, 4):
            raise UnsupportedType("only H3 and H4")
        edges = {(i, i + 1): 3 for i in range(1, r)}
        edges[(1, 2)] = 5
    rows = []
    for i in range(1, r + 1):
        row = []
        for j in range(1, r + 1):
            if i == j:
                row.append(1)
            else:
                row.append(edges.get((min(i, j), max(i, j)), 2))
        rows.append(tuple(row))
    return tuple(rows)


@dataclass(frozen=True)
class GroupElement:
    """A permutation of ``range(N)`` in one-line form."""

    mapping: tuple[int, ...]

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        a = self.mapping
        return GroupElement(tuple(a[i] for i in other.mapping))

    def inverse(self) -> "GroupElement":
        inv = [0] * len(self.mapping)
        for i, j in enumerate(self.mapping):
            inv[j] = i
        return GroupElement(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.mapping))

    def order(self) -> int:
        # lcm of cycle lengths
        seen = [False] * len(self.mapping)
        result = 1
        for start in range(len(self.mapping)):
            if seen[start]:
                continue
            length, i = 0, start
            while not seen[i]:
                seen[i] = True
                i = self.mapping[i]
                length += 1
            result = math.lcm(result, length)
        return result

    @classmethod
    def identity(cls, size: int) -> "GroupElement":
        return cls(tuple(range(size)))


@dataclass(frozen=True)
class LengthTable:
    length: dict  # mapping -> int
    descents: dict  # mapping -> frozenset of 1-based generator indices

    def __len__(self):
        return len(self.length)

    def max_length(self) -> int:
        return max(self.length.values())


@dataclass(frozen=True, eq=False)
class CoxeterSystem:
    """Coxeter system acting on a finite symbol set.

    ``generators[i-1]`` is the permutation of generator ``s_i``.  Subgroups
    produced by admissible partitions use the same class, with the host's
    symbol set.
    """

    ctype: CoxeterType
    generators: tuple[GroupElement, ...]
    coxeter_matrix: tuple[tuple[int, ...], ...]
    symbols: tuple[int, ...]
    # host generator index -> diagram node label (only differs for type D)
    diagram_labels: dict = field(default_factory=dict)
    group_cap: int = DEFAULT.group_size_cap
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def rank(self) -> int:
        return len(self.generators)

    @property
    def degree(self) -> int:
        return len(self.symbols)

    def __str__(self):
        return str(self.ctype)

    def m(self, r: int, s: int) -> int:
        return self.coxeter_matrix[r - 1][s - 1]

    def identity(self) -> GroupElement:
        return GroupElement.identity(self.degree)

    def gen(self, i: int) -> GroupElement:
        return self.generators[i - 1]

    def evaluate(self, word: Iterable[int]) -> GroupElement:
        w = self.identity().mapping
        for i in word:
            if not 1 <= i <= self.rank:
                raise UsageError(f"generator index {i} out of range 1..{self.rank}")
            g = self.generators[i - 1].mapping
            w = tuple(w[k] for k in g)
        return GroupElement(w)

    @property
    def table(self) -> LengthTable:
        if "table" not in self._cache:
            self._cache["table"] = length_and_descents(self)
        return self._cache["table"]

    def length(self, w: GroupElement) -> int:
        return self.table.length[w.mapping]

    def descents(self, w: GroupElement) -> frozenset:
        return self.table.descents[w.mapping]

    def contains(self, w: GroupElement) -> bool:
        return w.mapping in self.table.length

    # -- text forms -------------------------------------------------------

    def one_line(self, w: GroupElement) -> str:
        """``w(1) w(2) ...`` over the positive symbols (signed for type D)."""
        index = {s: k for k, s in enumerate(self.symbols)}
        positives = [s for s in self.symbols if s > 0]
        return " ".join(str(self.symbols[w.mapping[index[s]]]) for s in positives)

    def parse_element(self, text: str) -> GroupElement:
        """Accept a one-line form (``3 1 2``, ``-2 1 3 4``) or a word (``s1 s3 s2``)."""
        tokens = text.replace(",", " ").split()
        if not tokens:
            return self.identity()
        if all(re.fullmatch(r"[sS]\d+", t) for t in tokens):
            return self.evaluate(int(t[1:]) for t in tokens)
        try:
            values = [int(t) for t in tokens]
        except ValueError:
            raise UsageError(f"cannot parse element {text!r}") from None
        positives = [s for s in self.symbols if s > 0]
        if len(values) != len(positives):
            raise UsageError(f"one-line form needs {len(positives)} entries, got {len(values)}")
        image = {}
        for s, v in zip(positives, values):
            image[s] = v
            if -s in self.symbols:
                image[-s] = -v
        if sorted(image.values()) != sorted(self.symbols):
            raise UsageError(f"{text!r} is not a permutation of the symbol set")
        index = {s: k for k, s in enumerate(self.symbols)}
        w = GroupElement(tuple(index[image[s]] for s in self.symbols))
        if not self.contains(w):
            raise UsageError(f"{text!r} is not an element of {self.ctype}")
        return w


def computed_matrix(generators: Sequence[GroupElement]) -> tuple[tuple[int, ...], ...]:
    return tuple(
        tuple(1 if i == j else (a * b).order() for j, b in enumerate(generators))
        for i, a in enumerate(generators)
    )


def match_labels(computed, expected) -> dict[int, int] | None:
    """Relabelling ``host index -> diagram label`` carrying ``computed`` onto
    ``expected``, moving as few labels as possible; ``None`` if none exists."""
    r = len(computed)
    if len(expected) != r:
        return None
    best = None
    for perm in itertools.permutations(range(r)):
        if all(computed[i][j] == expected[perm[i]][perm[j]] for i in range(r) for j in range(r)):
            moved = sum(1 for i in range(r) if perm[i] != i)
            key = (moved, perm)
            if best is None or key < best:
                best = key
                if moved == 0:
                    break
    if best is None:
        return None
    return {i + 1: best[1][i] + 1 for i in range(r)}


def _transposition_product(symbols, cycles) -> GroupElement:
    index = {s: k for k, s in enumerate(symbols)}
    p = list(range(len(symbols)))
    for a, b in cycles:
        ia, ib = index[a], index[b]
        p[ia], p[ib] = ib, ia
    return GroupElement(tuple(p))


def _type_d_generators(n: int, symbols) -> list[GroupElement]:
    cycles = [
        [(1, -2), (2, -1)],
        [(2, 3), (-2, -3)],
        [(1, 2), (-1, -2)],
    ]
    cycles += [[(i - 1, i), (-(i - 1), -i)] for i in range(4, n + 1)]
    return [_transposition_product(symbols, c) for c in cycles]


def build_system(ctype: CoxeterType | str, config: Config = DEFAULT) -> CoxeterSystem:
    """Permutation realisation of a supported host (``A_m`` or ``D_n``).

    The stored Coxeter matrix is the one computed from the permutations.  For
    type D it disagrees with the diagram numbering (the permutations make s2
    the branch node, with s1 and s3 the commuting fork ends); the relabelling
    onto diagram nodes is kept in ``diagram_labels``.
    """
    if isinstance(ctype, str):
        ctype = CoxeterType.parse(ctype)
    if ctype.family == "A":
        if ctype.rank > config.max_rank_a:
            raise UnsupportedType(f"{ctype}: rank above configured max_rank_a={config.max_rank_a}")
        symbols = tuple(range(1, ctype.rank + 2))
        gens = [_transposition_product(symbols, [(i, i + 1)]) for i in range(1, ctype.rank + 1)]
    elif ctype.family == "D":
        if not 4 <= ctype.rank <= config.max_rank_d:
            raise UnsupportedType(f"{ctype}: need 4 <= n <= max_rank_d={config.max_rank_d}")
        n = ctype.rank
        symbols = tuple(range(-n, 0)) + tuple(range(1, n + 1))
        gens = _type_d_generators(n, symbols)
    else:
        raise UnsupportedType(f"{ctype} is not available as a host (only A and D)")

    for g in gens:
        if not (g * g).is_identity():
            raise RelationMismatch(f"{ctype}: generator is not an involution")
    matrix = computed_matrix(gens)
    labels = match_labels(matrix, expected_matrix(ctype))
    if labels is None:
        raise RelationMismatch(f"{ctype}: generator orders match no labelling of the diagram")
    return CoxeterSystem(
        ctype=ctype,
        generators=tuple(gens),
        coxeter_matrix=matrix,
        symbols=symbols,
        diagram_labels=labels,
        group_cap=config.group_size_cap,
    )


def length_and_descents(system: CoxeterSystem, cap: int | None = None) -> LengthTable:
    """Breadth-first search of the right Cayley graph from the identity."""
    cap = system.group_cap if cap is None else cap
    gens = [g.mapping for g in system.generators]
    e = system.identity().mapping
    length = {e: 0}
    queue = deque([e])
    while queue:
        w = queue.popleft()
        lw = length[w] + 1
        for g in gens:
            v = tuple(w[k] for k in g)
            if v not in length:
                length[v] = lw
                if len(length) > cap:
                    raise GroupTooLarge(f"{system.ctype}: more than {cap} elements")
                queue.append(v)
    descents = {}
    for w, lw in length.items():
        d = []
        for i, g in enumerate(gens, 1):
            if length[tuple(w[k] for k in g)] < lw:
                d.append(i)
        descents[w] = frozenset(d)
    return LengthTable(length, descents)


def longest_element(system: CoxeterSystem) -> GroupElement:
    table = system.table
    top = table.max_length()
    winners = [w for w, lw in table.length.items() if lw == top]
    assert len(winners) == 1, "finite Coxeter group has a unique longest element"
    return GroupElement(winners[0])


def parabolic_longest(system: CoxeterSystem, block: Iterable[int]) -> GroupElement:
    """Longest element of the parabolic subgroup generated by ``block``."""
    block = sorted(set(block))
    if not block:
        raise UsageError("block must be nonempty")
    gens = [system.gen(i).mapping for i in block]
    e = system.identity().mapping
    length = {e: 0}
    queue = deque([e])
    while queue:
        w = queue.popleft()
        for g in gens:
            v = tuple(w[k] for k in g)
            if v not in length:
                length[v] = length[w] + 1
                queue.append(v)
    top = max(length.values())
    return GroupElement(next(w for w, lw in length.items() if lw == top))


def inversion_count(one_line: Sequence[int]) -> int:
    """Number of inversions; equals Coxeter length in type A."""
    return sum(1 for i, j in itertools.combinations(range(len(one_line)), 2) if one_line[i] > one_line[j])
