"""Elnitsky polygons and the word -> tiling sweep.

The border of ``Y(w)`` is a sequence of edge labels read top to bottom.  It
starts as the left chain (``1..N`` for type A, ``n..1, -1..-n`` for type D)
and each letter permutes positions of it; the region swept between the old
and new path is the tile.  Tiles are stored combinatorially: the anchor is
the 0/1 coefficient vector (over the left-chain labels) of the window's top
vertex, plus the label chains before and after the move.  Equality of tilings
therefore never touches floating point; coordinates only appear in
:func:`realize` and the coverage check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence, Union

import numpy as np
import shapely
from shapely.geometry import Polygon

from .config import DEFAULT, Config
from .coxeter import CoxeterSystem, GroupElement
from .embeddings import AdmissiblePartition, expand
from .errors import (
    AsymmetricBasis,
    BasisMismatch,
    InvalidAngles,
    MegatileViolation,
    NotReduced,
    UsageError,
)
from .words import RelationSet, Word, classes_of_words, enumerate_reduced


class TileKind(str, Enum):
    RHOMBUS = "rhombus"
    HEXAGON = "hexagon_megatile"
    OCTAGON = "octagon_megatile"
    GROUPED = "grouped_megatile"

    def __str__(self):
        return self.value


# -- edge bases ------------------------------------------------------------


@dataclass(frozen=True)
class EdgeBasis:
    """Unit edge directions for the left chain, one per label, top to bottom."""

    labels: tuple[int, ...]
    angles: tuple[float, ...]

    def __post_init__(self):
        if len(self.labels) != len(self.angles):
            raise InvalidAngles("one angle per label")
        for a in self.angles:
            if not math.pi < a < 2 * math.pi:
                raise InvalidAngles(f"angle {a:.6f} does not point downward")
        if any(b <= a for a, b in zip(self.angles, self.angles[1:])):
            raise InvalidAngles("angles must increase strictly down the left chain")

    @property
    def n_edges(self) -> int:
        return len(self.labels)

    @property
    def vectors(self) -> tuple[tuple[float, float], ...]:
        return tuple((math.cos(a), math.sin(a)) for a in self.angles)

    def vector(self, label: int) -> tuple[float, float]:
        a = self.angles[self.labels.index(label)]
        return (math.cos(a), math.sin(a))

    def min_steepness(self) -> float:
        """Smallest angle any edge makes with the horizontal."""
        return min(min(a - math.pi, 2 * math.pi - a) for a in self.angles)

    def point(self, coeffs: Sequence[int]) -> tuple[float, float]:
        # fsum in a fixed order: equal lattice points give bit-equal floats
        vecs = self.vectors
        return (
            math.fsum(c * v[0] for c, v in zip(coeffs, vecs)),
            math.fsum(c * v[1] for c, v in zip(coeffs, vecs)),
        )


def edge_basis_A(n: int, angles: Sequence[float] | None = None) -> EdgeBasis:
    """Left half of the regular 2n-gon: edge k points at ``π + (2k-1)π/(2n)``."""
    if n < 2:
        raise InvalidAngles("need at least two edges")
    if angles is None:
        angles = [math.pi + (2 * k - 1) * math.pi / (2 * n) for k in range(1, n + 1)]
    return EdgeBasis(tuple(range(1, n + 1)), tuple(angles))


def edge_basis_D(n: int, regular: bool = False, threshold: float = DEFAULT.steepness_threshold,
                 angles: Sequence[float] | None = None) -> EdgeBasis:
    """Left chain of 2n edges labelled ``n..1, -1..-n``.

    ``regular`` gives half of the regular 4n-gon.  Otherwise the directions
    are spread evenly inside ``(π + threshold, 2π - threshold)`` so that
    every edge is steeper than ``threshold``; a custom angle list is checked
    against the same bound.
    """
    labels = tuple(range(n, 0, -1)) + tuple(-i for i in range(1, n + 1))
    m = 2 * n
    if angles is None:
        if regular:
            angles = [math.pi + (2 * k - 1) * math.pi / (2 * m) for k in range(1, m + 1)]
        else:
            span = math.pi - 2 * threshold
            angles = [math.pi + threshold + span * (2 * k - 1) / (2 * m) for k in range(1, m + 1)]
    basis = EdgeBasis(labels, tuple(angles))
    if not regular and basis.min_steepness() <= threshold:
        raise InvalidAngles(f"an edge is within {threshold:.6f} rad of horizontal")
    return basis


def basis_for(system: CoxeterSystem, regular: bool = False, config: Config = DEFAULT) -> EdgeBasis:
    if system.ctype.family == "A":
        return edge_basis_A(system.degree)
    if system.ctype.family == "D":
        strict = config.strict_d_geometry and not regular
        return edge_basis_D(system.ctype.rank, regular=not strict, threshold=config.steepness_threshold)
    raise UsageError(f"no tiling geometry for {system.ctype}")


# -- tiles -----------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Window:
    """Region between two label chains leaving a common top vertex."""

    anchor: tuple[int, ...]
    before: tuple[int, ...]
    after: tuple[int, ...]

    @property
    def labels(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.before)))


@dataclass(frozen=True, order=True)
class Tile:
    kind: TileKind
    windows: tuple[Window, ...]
    provenance: int = field(default=0, compare=False)

    @property
    def anchor(self) -> tuple[int, ...]:
        return self.windows[0].anchor

    @property
    def labels(self) -> tuple[int, ...]:
        return tuple(sorted({label for w in self.windows for label in w.before}))


@dataclass(frozen=True)
class Tiling:
    tiles: tuple[Tile, ...]
    element: GroupElement
    left: tuple[int, ...] = field(compare=False)  # left-chain labels = anchor coordinates
    right: tuple[int, ...] = field(compare=False)  # border of the element
    host: CoxeterSystem | None = field(default=None, compare=False, repr=False)

    def __len__(self):
        return len(self.tiles)

    def count(self, kind: TileKind) -> int:
        return sum(1 for t in self.tiles if t.kind == kind)

    def dump(self) -> str:
        """One tile per line: ``kind labels anchor provenance``."""
        lines = []
        for t in self.tiles:
            labels = ",".join(str(x) for x in t.labels)
            anchor = "|".join(",".join(str(c) for c in w.anchor) for w in t.windows)
            lines.append(f"{t.kind} {labels} {anchor} {t.provenance}")
        return "\n".join(lines) + ("\n" if lines else "")


def _canonical(tiles) -> tuple[Tile, ...]:
    return tuple(sorted(tiles))


# -- border model ----------------------------------------------------------


@dataclass(frozen=True)
class BorderModel:
    """How each generator permutes positions of the border.

    ``moves[i-1][p]`` is the position whose label lands at ``p`` after
    right multiplication by ``s_i``.
    """

    start: tuple[int, ...]
    moves: tuple[tuple[int, ...], ...]

    def border(self, system: CoxeterSystem, w: GroupElement) -> tuple[int, ...]:
        index = {s: k for k, s in enumerate(system.symbols)}
        return tuple(system.symbols[w.mapping[index[s]]] for s in self.start)


def border_model(system: CoxeterSystem) -> BorderModel:
    cached = system._cache.get("border")
    if cached is not None:
        return cached
    if system.ctype.family == "A":
        start = tuple(system.symbols)
    elif system.ctype.family == "D":
        n = system.ctype.rank
        start = tuple(range(n, 0, -1)) + tuple(-i for i in range(1, n + 1))
    else:
        raise UsageError(f"no border model for {system.ctype}")
    index = {s: k for k, s in enumerate(system.symbols)}
    position = {s: p for p, s in enumerate(start)}
    moves = []
    for g in system.generators:
        moves.append(tuple(position[system.symbols[g.mapping[index[s]]]] for s in start))
    model = BorderModel(start, tuple(moves))
    system._cache["border"] = model
    return model


def _intervals(move: Sequence[int]) -> list[tuple[int, int]]:
    """Position intervals moved by ``move``: hulls of its cycles, merged."""
    hulls = []
    seen = set()
    for p in range(len(move)):
        if p in seen or move[p] == p:
            continue
        cycle = []
        q = p
        while q not in seen:
            seen.add(q)
            cycle.append(q)
            q = move[q]
        hulls.append((min(cycle), max(cycle)))
    hulls.sort()
    merged: list[list[int]] = []
    for lo, hi in hulls:
        if merged and lo <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], hi)
        else:
            merged.append([lo, hi])
    return [(lo, hi) for lo, hi in merged]


def _window(left: Sequence[int], border: Sequence[int], new: Sequence[int], lo: int, hi: int) -> Window:
    above = set(border[:lo])
    anchor = tuple(1 if label in above else 0 for label in left)
    return Window(anchor, tuple(border[lo:hi + 1]), tuple(new[lo:hi + 1]))


def _check_octagon(win: Window) -> None:
    a, b, c, d = win.before
    if (c, d) != (-b, -a):
        raise MegatileViolation(f"octagon edges {win.before} are not symmetric about the horizontal")
    # swap within each pair, then reflect through the vertical axis
    swapped = (b, a, d, c)
    reflected = tuple(-x for x in swapped)
    if win.after != reflected:
        raise MegatileViolation(f"octagon {win.before} -> {win.after} breaks the transpose/reflect rule")


def _check_mirror_pair(first: Window, second: Window, size: int) -> None:
    lo1 = first.before
    if second.before != tuple(-x for x in reversed(lo1)) or sum(first.anchor) + sum(second.anchor) + 2 != size:
        raise MegatileViolation(f"rhombi {first.before} and {second.before} are not mirror images")


def _sweep(system: CoxeterSystem, word: Sequence[int]):
    """Yield ``(letter index, generator, border before, border after, element after)``."""
    model = border_model(system)
    table = system.table.length
    gens = [g.mapping for g in system.generators]
    w = system.identity().mapping
    border = model.start
    for k, i in enumerate(word, 1):
        if not 1 <= i <= system.rank:
            raise UsageError(f"generator index {i} out of range 1..{system.rank}")
        v = tuple(w[x] for x in gens[i - 1])
        if table[v] != table[w] + 1:
            raise NotReduced(f"{list(word)} is not reduced (letter {k})")
        move = model.moves[i - 1]
        new = tuple(border[move[p]] for p in range(len(border)))
        yield k, i, border, new, v
        border, w = new, v


def tile_word(system: CoxeterSystem, word: Sequence[int]) -> Tiling:
    """Tiling of ``Y(w)`` built letter by letter from a reduced word."""
    family = system.ctype.family
    if family not in ("A", "D"):
        raise UsageError(f"no tiling construction for {system.ctype}")
    model = border_model(system)
    left = model.start
    tiles = []
    w = system.identity().mapping
    for k, i, before, after, w in _sweep(system, word):
        wins = [_window(left, before, after, lo, hi) for lo, hi in _intervals(model.moves[i - 1])]
        if family == "D" and i == 1:
            (win,) = wins
            _check_octagon(win)
            tiles.append(Tile(TileKind.OCTAGON, (win,), k))
            continue
        if family == "D":
            _check_mirror_pair(wins[0], wins[1], len(left))
        for win in wins:
            tiles.append(Tile(TileKind.RHOMBUS, (win,), k))
    element = GroupElement(w)
    return Tiling(_canonical(tiles), element, left, model.border(system, element), system)


def tile_word_A(system: CoxeterSystem, word: Sequence[int]) -> Tiling:
    if system.ctype.family != "A":
        raise UsageError(f"{system.ctype} is not a type A host")
    return tile_word(system, word)


def tile_word_D(system: CoxeterSystem, word: Sequence[int]) -> Tiling:
    if system.ctype.family != "D":
        raise UsageError(f"{system.ctype} is not a type D host")
    return tile_word(system, word)


def subtiling(p: AdmissiblePartition, x_word: Sequence[int]) -> Tiling:
    """Host tiling of the expanded word with each ``t``-letter's tiles merged.

    A merged tile is recorded by the region it covers (windows between the
    border before and after the letter), so different internal arrangements
    of the same image coincide.
    """
    host = p.host
    model = border_model(host)
    left = model.start
    pieces = expand(p, x_word)
    s_word = [letter for _, sub in pieces for letter in sub]
    steps = list(_sweep(host, s_word))
    tiles = []
    k = 0
    w = host.identity().mapping
    for letter_index, (t, sub) in enumerate(pieces, 1):
        chunk = steps[k:k + len(sub)]
        k += len(sub)
        start, end = chunk[0][2], chunk[-1][3]
        w = chunk[-1][4]
        net = list(range(len(left)))
        for _, i, _, _, _ in chunk:
            move = model.moves[i - 1]
            net = [net[move[q]] for q in range(len(net))]
        wins = tuple(_window(left, start, end, lo, hi) for lo, hi in _intervals(net))
        if len(wins) == 1 and len(wins[0].before) == 2:
            kind = TileKind.RHOMBUS
        elif len(wins) == 1 and len(wins[0].before) == 3:
            kind = TileKind.HEXAGON
        else:
            kind = TileKind.GROUPED
        tiles.append(Tile(kind, wins, letter_index))
    element = GroupElement(w)
    return Tiling(_canonical(tiles), element, left, model.border(host, element), host)


# -- mirror ----------------------------------------------------------------


def mirror_A(t: Tiling, basis: EdgeBasis | None = None) -> Tiling:
    """Reflect a type A tiling through the horizontal line through its middle.

    Labels map ``l -> N+1-l``; a window's new top vertex is the image of its
    old bottom vertex, and both chains are read in reverse.
    """
    if t.host is None or t.host.ctype.family != "A":
        raise UsageError("mirror_A needs a type A tiling")
    size = len(t.left)
    if basis is not None:
        for label in basis.labels:
            vx, vy = basis.vector(label)
            mx, my = basis.vector(size + 1 - label)
            if abs(mx + vx) > 1e-12 or abs(my - vy) > 1e-12:
                raise AsymmetricBasis(f"edges {label} and {size + 1 - label} are not mirror images")

    def flip(label):
        return size + 1 - label

    def mirror_window(win: Window) -> Window:
        below = {lab for lab, c in zip(t.left, win.anchor) if c} | set(win.before)
        anchor_set = {flip(lab) for lab in t.left if lab not in below}
        anchor = tuple(1 if lab in anchor_set else 0 for lab in t.left)
        return Window(anchor, tuple(flip(x) for x in reversed(win.before)),
                      tuple(flip(x) for x in reversed(win.after)))

    tiles = [Tile(tile.kind, tuple(sorted(mirror_window(w) for w in tile.windows)), tile.provenance)
             for tile in t.tiles]
    host = t.host
    w0 = [size - 1 - i for i in range(size)]
    m = t.element.mapping
    element = GroupElement(tuple(w0[m[w0[i]]] for i in range(size)))
    right = tuple(flip(x) for x in reversed(t.right))
    return Tiling(_canonical(tiles), element, t.left, right, host)


# -- bijection check -------------------------------------------------------


@dataclass(frozen=True)
class BijectionReport:
    words: int
    classes: int
    tilings: int
    constant_on_classes: bool
    injective: bool
    distinct: tuple = field(default=(), repr=False, compare=False)

    @property
    def ok(self) -> bool:
        return self.constant_on_classes and self.injective and self.classes == self.tilings

    def summary(self, case: str | None = None) -> str:
        head = f"case={case} " if case else ""
        return f"{head}words={self.words} classes={self.classes} tilings={self.tilings} ok={str(self.ok).lower()}"


Target = Union[CoxeterSystem, AdmissiblePartition]


def verify_bijection(target: Target, element: GroupElement, rels: RelationSet,
                     cap: int = DEFAULT.enumeration_cap) -> BijectionReport:
    """Compare the classes of reduced words with the distinct tilings they give.

    ``target`` is a host system (tilings of ``Y(w)``) or an admissible
    partition (subtilings of an element of X, relations over ``t`` letters).
    """
    if isinstance(target, AdmissiblePartition):
        system = target.x_system
        build = lambda word: subtiling(target, word)  # noqa: E731
    else:
        system = target
        build = lambda word: tile_word(target, word)  # noqa: E731
    words = enumerate_reduced(system, element, cap)
    partition = classes_of_words(system, element, words, rels)
    per_class = []
    for cls in partition.classes:
        per_class.append({build(word) for word in sorted(cls)})
    constant = all(len(s) == 1 for s in per_class)
    distinct = set().union(*per_class) if per_class else set()
    injective = constant and len(distinct) == len(per_class)
    return BijectionReport(
        words=len(words),
        classes=len(partition),
        tilings=len(distinct),
        constant_on_classes=constant,
        injective=injective,
        distinct=tuple(sorted(distinct, key=lambda t: t.tiles)),
    )


# -- geometry --------------------------------------------------------------


@dataclass(frozen=True)
class RealizedPolygon:
    kind: TileKind
    vertices: tuple[tuple[float, float], ...]
    tile_index: int
    labels: tuple[int, ...]


def _chain(basis: EdgeBasis, left: Sequence[int], anchor: Sequence[int], labels: Sequence[int]):
    coeffs = list(anchor)
    pos = {lab: k for k, lab in enumerate(left)}
    pts = [basis.point(coeffs)]
    for lab in labels:
        coeffs[pos[lab]] += 1
        pts.append(basis.point(coeffs))
    return pts


def realize(t: Tiling, basis: EdgeBasis) -> list[RealizedPolygon]:
    """Float vertices for every window of every tile (2k vertices for k edges)."""
    if tuple(basis.labels) != tuple(t.left):
        raise BasisMismatch(f"basis labels {basis.labels} do not match tiling labels {t.left}")
    out = []
    for index, tile in enumerate(t.tiles):
        for win in tile.windows:
            down = _chain(basis, t.left, win.anchor, win.before)
            other = _chain(basis, t.left, win.anchor, win.after)
            verts = tuple(down + other[::-1][1:-1])
            out.append(RealizedPolygon(tile.kind, verts, index, win.labels))
    return out


def outline(t: Tiling, basis: EdgeBasis) -> tuple[tuple[float, float], ...]:
    """Boundary of ``Y(w)``: down the left chain, back up the border."""
    zero = [0] * len(t.left)
    down = _chain(basis, t.left, zero, t.left)
    up = _chain(basis, t.left, zero, t.right)
    return tuple(down + up[::-1][1:-1])


def shoelace(pts: Sequence[tuple[float, float]]) -> float:
    n = len(pts)
    return 0.5 * math.fsum(pts[i][0] * pts[(i + 1) % n][1] - pts[(i + 1) % n][0] * pts[i][1] for i in range(n))


@dataclass(frozen=True)
class CoverageReport:
    polygon_area: float
    tile_area: float
    max_overlap: float
    min_tile_area: float
    invalid_tiles: int

    def ok(self, rel_tol: float = 1e-9) -> bool:
        scale = max(self.polygon_area, 1.0)
        return (
            self.invalid_tiles == 0
            and abs(self.tile_area - self.polygon_area) <= rel_tol * scale
            and self.max_overlap <= rel_tol * scale
            and self.min_tile_area > 0
        )


def coverage(t: Tiling, basis: EdgeBasis) -> CoverageReport:
    """Area bookkeeping: tile areas against ``|Y(w)|`` and pairwise overlaps."""
    polys = realize(t, basis)
    area_y = abs(shoelace(outline(t, basis)))
    areas = [shoelace(p.vertices) for p in polys]
    shapes = [Polygon(p.vertices) for p in polys]
    invalid = sum(1 for s in shapes if not s.is_valid)
    max_overlap = 0.0
    if len(shapes) > 1:
        arr = np.array(shapes, dtype=object)
        tree = shapely.STRtree(arr)
        left_idx, right_idx = tree.query(arr, predicate="intersects")
        for i, j in zip(left_idx, right_idx):
            if i < j:
                try:
                    overlap = shapes[i].intersection(shapes[j]).area
                except shapely.errors.GEOSException:
                    overlap = math.inf
                max_overlap = max(max_overlap, overlap)
    return CoverageReport(
        polygon_area=area_y,
        tile_area=math.fsum(abs(a) for a in areas),
        max_overlap=max_overlap,
        min_tile_area=min(areas) if areas else math.inf,
        invalid_tiles=invalid,
    )
