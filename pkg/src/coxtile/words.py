"""Reduced words, braid moves and J-equivalence classes.

Words are tuples of 1-based generator indices.  A move replaces an
alternating window ``r s r ...`` of full braid length ``m(r, s)`` by the
opposite alternation ``s r s ...``; only windows of exactly that length are
tried.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .config import DEFAULT
from .coxeter import CoxeterSystem, GroupElement
from .errors import ExplosionGuard, UsageError

Word = tuple[int, ...]


def parse_word(text: str) -> Word:
    """``"2 1 3 2"`` or ``"s2 s1 s3 s2"`` -> ``(2, 1, 3, 2)``."""
    letters = []
    for token in text.replace(",", " ").split():
        token = token[1:] if token[:1] in "sStT" else token
        if not token.isdigit() or int(token) < 1:
            raise UsageError(f"bad letter {token!r} in word {text!r}")
        letters.append(int(token))
    return tuple(letters)


def format_word(word: Sequence[int]) -> str:
    return " ".join(str(i) for i in word)


class RelationSet(frozenset):
    """Unordered generator pairs whose braid relation is an allowed move."""

    def __new__(cls, pairs: Iterable[Iterable[int]] = ()):
        normal = []
        for pair in pairs:
            r, s = sorted(pair)
            if r == s:
                raise UsageError(f"relation pair needs two distinct generators, got {pair}")
            normal.append((r, s))
        return super().__new__(cls, normal)

    def allows(self, r: int, s: int) -> bool:
        return (min(r, s), max(r, s)) in self

    def __repr__(self):
        return f"RelationSet({sorted(self)})"

    @classmethod
    def none(cls) -> "RelationSet":
        return cls()

    @classmethod
    def all_commuting(cls, system: CoxeterSystem) -> "RelationSet":
        r = system.rank
        return cls((i, j) for i in range(1, r + 1) for j in range(i + 1, r + 1) if system.m(i, j) == 2)

    @classmethod
    def all_braids(cls, system: CoxeterSystem) -> "RelationSet":
        r = system.rank
        return cls((i, j) for i in range(1, r + 1) for j in range(i + 1, r + 1))

    @classmethod
    def parse(cls, text: str, system: CoxeterSystem) -> "RelationSet":
        """``all-commuting``, ``none``, ``elnitsky`` or ``custom:1-3,2-4``."""
        text = text.strip()
        if text == "all-commuting":
            return cls.all_commuting(system)
        if text == "none":
            return cls.none()
        if text == "elnitsky":
            return elnitsky_relations(system)
        if text.startswith("custom:"):
            pairs = []
            for chunk in filter(None, text[7:].split(",")):
                try:
                    r, s = (int(x) for x in chunk.split("-"))
                except ValueError:
                    raise UsageError(f"bad relation pair {chunk!r}") from None
                if not (1 <= r <= system.rank and 1 <= s <= system.rank):
                    raise UsageError(f"relation pair {chunk!r} out of range")
                pairs.append((r, s))
            return cls(pairs)
        raise UsageError(f"unknown relation set {text!r}")


def elnitsky_relations(system: CoxeterSystem) -> RelationSet:
    """The relation set under which Elnitsky's tilings are in bijection with
    classes: all commutations for type A; for type D all commutations except
    that of the two fork ends s1, s3 (their tiles overlap)."""
    rels = RelationSet.all_commuting(system)
    if system.ctype.family == "D":
        rels = RelationSet(p for p in rels if p != (1, 3))
    return rels


@dataclass(frozen=True)
class EquivalencePartition:
    element: GroupElement
    classes: tuple[frozenset, ...]

    def __len__(self):
        return len(self.classes)

    @property
    def n_words(self) -> int:
        return sum(len(c) for c in self.classes)

    def class_of(self, word: Word) -> int:
        for k, c in enumerate(self.classes):
            if word in c:
                return k
        raise KeyError(word)


def count_reduced(system: CoxeterSystem, w: GroupElement) -> int:
    """Number of reduced words, by the same descent recursion without listing."""
    table = system.table
    gens = [g.mapping for g in system.generators]
    memo = system._cache.setdefault("count", {})
    e = system.identity().mapping

    def count(v):
        if v == e:
            return 1
        hit = memo.get(v)
        if hit is not None:
            return hit
        total = 0
        for i in table.descents[v]:
            g = gens[i - 1]
            total += count(tuple(v[k] for k in g))
        memo[v] = total
        return total

    return count(w.mapping)


def enumerate_reduced(system: CoxeterSystem, w: GroupElement, cap: int = DEFAULT.enumeration_cap) -> list[Word]:
    """All reduced words of ``w``, sorted.

    Uses ``R(w) = union over s in D_R(w) of R(ws)·s`` with a per-system memo
    keyed by the one-line form.
    """
    n = count_reduced(system, w)
    if n > cap:
        raise ExplosionGuard(f"{n} reduced words exceeds the enumeration cap {cap}")
    table = system.table
    gens = [g.mapping for g in system.generators]
    memo = system._cache.setdefault("words", {})
    e = system.identity().mapping

    def words(v):
        if v == e:
            return [()]
        hit = memo.get(v)
        if hit is not None:
            return hit
        out = []
        for i in sorted(table.descents[v]):
            g = gens[i - 1]
            out.extend(x + (i,) for x in words(tuple(v[k] for k in g)))
        out.sort()
        memo[v] = out
        return out

    return list(words(w.mapping))


def is_reduced(system: CoxeterSystem, word: Sequence[int]) -> bool:
    return len(word) == system.length(system.evaluate(word))


def apply_move(system: CoxeterSystem, word: Sequence[int], position: int, pair: Iterable[int]) -> Word | None:
    """Braid move on the window starting at ``position``; ``None`` if the
    window does not alternate ``r, s`` over the full length ``m(r, s)``."""
    r, s = sorted(pair)
    m = system.m(r, s)
    window = tuple(word[position:position + m])
    if position < 0 or len(window) < m:
        return None
    first = window[0]
    if first not in (r, s):
        return None
    other = s if first == r else r
    expected = tuple(first if k % 2 == 0 else other for k in range(m))
    if window != expected:
        return None
    swapped = tuple(other if k % 2 == 0 else first for k in range(m))
    return tuple(word[:position]) + swapped + tuple(word[position + m:])


def neighbours(system: CoxeterSystem, word: Word, rels: RelationSet):
    for p in range(len(word) - 1):
        a, b = word[p], word[p + 1]
        if a != b and rels.allows(a, b):
            moved = apply_move(system, word, p, (a, b))
            if moved is not None:
                yield moved


def equivalence_classes(system: CoxeterSystem, w: GroupElement, rels: RelationSet,
                        cap: int = DEFAULT.enumeration_cap) -> EquivalencePartition:
    """Connected components of the move graph on the reduced words of ``w``."""
    words = enumerate_reduced(system, w, cap)
    return classes_of_words(system, w, words, rels)


def classes_of_words(system: CoxeterSystem, w: GroupElement, words: Sequence[Word], rels: RelationSet) -> EquivalencePartition:
    seen: set = set()
    classes = []
    for start in words:
        if start in seen:
            continue
        seen.add(start)
        component = {start}
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y in neighbours(system, x, rels):
                if y not in seen:
                    seen.add(y)
                    component.add(y)
                    queue.append(y)
        classes.append(frozenset(component))
    return EquivalencePartition(w, tuple(classes))
