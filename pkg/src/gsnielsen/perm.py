"""Permutations of {1..N}, cycle types, cycle notation and stabilizer chains.

Points are 1-based in every public surface (cycle text, ``__call__``,
``images``).  Internally the image table is a 0-based tuple so that
composition is a single tuple comprehension.
"""

from __future__ import annotations

import re
from array import array
from dataclasses import dataclass, field
from typing import Iterable, Sequence


class PermutationError(ValueError):
    """Malformed permutation data or mismatched degrees."""


class Permutation:
    __slots__ = ("_img", "_hash")

    def __init__(self, images: Sequence[int]):
        img = tuple(int(v) - 1 for v in images)
        n = len(img)
        if n == 0:
            raise PermutationError("degree must be positive")
        if sorted(img) != list(range(n)):
            raise PermutationError("images do not form a bijection of {1..%d}" % n)
        self._img = img
        self._hash = None

    @classmethod
    def _raw(cls, img: tuple) -> "Permutation":
        # trusted 0-based constructor, skips validation
        obj = cls.__new__(cls)
        obj._img = img
        obj._hash = None
        return obj

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        if degree < 1:
            raise PermutationError("degree must be positive")
        return cls._raw(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> "Permutation":
        img = list(range(degree))
        seen = set()
        for cyc in cycles:
            for pt in cyc:
                if not 1 <= pt <= degree:
                    raise PermutationError(f"point {pt} out of range 1..{degree}")
                if pt in seen:
                    raise PermutationError(f"repeated point {pt}")
                seen.add(pt)
            for a, b in zip(cyc, list(cyc[1:]) + list(cyc[:1])):
                img[a - 1] = b - 1
        return cls._raw(tuple(img))

    @property
    def degree(self) -> int:
        return len(self._img)

    @property
    def images(self) -> tuple:
        return tuple(v + 1 for v in self._img)

    def __call__(self, point: int) -> int:
        return self._img[point - 1] + 1

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return self._img == other._img

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._img)
        return self._hash

    def __repr__(self):
        return f"Permutation({format_cycles(self)}, degree={self.degree})"

    def is_identity(self) -> bool:
        return all(i == v for i, v in enumerate(self._img))

    def moved_points(self) -> list:
        return [i + 1 for i, v in enumerate(self._img) if i != v]

    def __pow__(self, k: int) -> "Permutation":
        result = Permutation.identity(self.degree)
        base = self if k >= 0 else inverse(self)
        for _ in range(abs(k)):
            result = compose(base, result)
        return result


def _check_degree(a: Permutation, b: Permutation) -> None:
    if a.degree != b.degree:
        raise PermutationError(f"degree mismatch: {a.degree} vs {b.degree}")


def compose(a: Permutation, b: Permutation) -> Permutation:
    """Return the map v -> a(b(v)); ``b`` is applied first."""
    _check_degree(a, b)
    ai = a._img
    return Permutation._raw(tuple([ai[v] for v in b._img]))


def inverse(a: Permutation) -> Permutation:
    img = a._img
    inv = [0] * len(img)
    for i, v in enumerate(img):
        inv[v] = i
    return Permutation._raw(tuple(inv))


def conjugate(g: Permutation, h: Permutation) -> Permutation:
    """h g h^-1 as maps."""
    return compose(compose(h, g), inverse(h))


def cycles(a: Permutation) -> list:
    """Nontrivial cycles (1-based), each starting at its smallest point,
    ordered by that smallest point."""
    img = a._img
    seen = [False] * len(img)
    out = []
    for start in range(len(img)):
        if seen[start] or img[start] == start:
            continue
        cyc = [start + 1]
        seen[start] = True
        j = img[start]
        while j != start:
            seen[j] = True
            cyc.append(j + 1)
            j = img[j]
        out.append(tuple(cyc))
    return out


@dataclass(frozen=True)
class CycleType:
    """Multiset of cycle lengths >= 2, longest first, plus fixed points."""

    cycles: tuple  # ((length, multiplicity), ...) with length descending
    fixed_points: int

    @property
    def degree(self) -> int:
        return self.fixed_points + sum(n * m for n, m in self.cycles)

    def __str__(self):
        if not self.cycles:
            return f"1^{self.fixed_points}"
        parts = [f"{n}^{m}" for n, m in self.cycles]
        if self.fixed_points:
            parts.append(f"1^{self.fixed_points}")
        return " ".join(parts)

    def as_dict(self) -> dict:
        return {
            "cycles": [[n, m] for n, m in self.cycles],
            "fixed_points": self.fixed_points,
        }


def cycle_type(a: Permutation) -> CycleType:
    counts: dict = {}
    moved = 0
    for cyc in cycles(a):
        counts[len(cyc)] = counts.get(len(cyc), 0) + 1
        moved += len(cyc)
    return CycleType(tuple(sorted(counts.items(), reverse=True)), a.degree - moved)


def order(a: Permutation) -> int:
    from math import lcm

    return lcm(1, *(len(c) for c in cycles(a)))


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse disjoint-cycle notation such as ``(1,28,55)(2,29,56)``.

    Whitespace (including line breaks) is ignored and ``()`` denotes the
    identity.  Points not mentioned are fixed.
    """
    compact = re.sub(r"\s+", "", text)
    if compact in ("", "()"):
        return Permutation.identity(degree)
    pos = 0
    found = []
    for m in _CYCLE_RE.finditer(compact):
        if m.start() != pos:
            raise PermutationError(f"malformed cycle text near {compact[pos:pos + 12]!r}")
        pos = m.end()
        body = m.group(1)
        if not re.fullmatch(r"\d+(,\d+)*", body):
            raise PermutationError(f"malformed cycle ({body})")
        found.append([int(t) for t in body.split(",")])
    if pos != len(compact):
        raise PermutationError(f"malformed cycle text near {compact[pos:pos + 12]!r}")
    return Permutation.from_cycles(found, degree)


def format_cycles(a: Permutation) -> str:
    cs = cycles(a)
    if not cs:
        return "()"
    return "".join("(" + ",".join(map(str, c)) + ")" for c in cs)


def canonical_key(a: Permutation) -> bytes:
    """Fixed-length byte encoding of the image table; injective per degree."""
    if a.degree <= 256:
        return bytes(a._img)
    if a.degree <= 65536:
        return array("H", a._img).tobytes()
    return array("L", a._img).tobytes()


# --- stabilizer chains -----------------------------------------------------


@dataclass
class ChainLevel:
    base_point: int  # 0-based internally
    generators: list = field(default_factory=list)
    # point -> u with u(base_point) = point
    transversal: dict = field(default_factory=dict)

    def rebuild_orbit(self, degree: int) -> None:
        # extends only: existing representatives never change, which keeps
        # already-sifted Schreier generators valid
        trans = self.transversal or {self.base_point: Permutation.identity(degree)}
        queue = list(trans)
        for pt in queue:
            u = trans[pt]
            for g in self.generators:
                img = g._img[pt]
                if img not in trans:
                    trans[img] = compose(g, u)
                    queue.append(img)
        self.transversal = trans


class StabilizerChain:
    """Base and strong generating set built by deterministic Schreier-Sims.

    New base points are always the smallest point moved by the element that
    forced the extension, so identical generator lists give identical chains.
    """

    def __init__(self, degree: int, levels: list):
        self.degree = degree
        self.levels = levels

    @property
    def base(self) -> list:
        return [lv.base_point + 1 for lv in self.levels]

    def order(self) -> int:
        n = 1
        for lv in self.levels:
            n *= len(lv.transversal)
        return n

    def sift(self, a: Permutation, start: int = 0):
        """Return (residue, level index where sifting stopped)."""
        g = a
        for i in range(start, len(self.levels)):
            lv = self.levels[i]
            b = g._img[lv.base_point]
            u = lv.transversal.get(b)
            if u is None:
                return g, i
            g = compose(inverse(u), g)
        return g, len(self.levels)

    def contains(self, a: Permutation) -> bool:
        if a.degree != self.degree:
            raise PermutationError(f"degree mismatch: {a.degree} vs {self.degree}")
        residue, _ = self.sift(a)
        return residue.is_identity()

    def strong_generators(self) -> list:
        out = []
        for lv in self.levels:
            for g in lv.generators:
                if g not in out:
                    out.append(g)
        return out


def _first_moved(a: Permutation) -> int:
    for i, v in enumerate(a._img):
        if i != v:
            return i
    raise PermutationError("identity has no moved point")


def build_chain(generators: Sequence[Permutation]) -> StabilizerChain:
    if not generators:
        raise PermutationError("need at least one generator")
    degree = generators[0].degree
    for g in generators:
        if g.degree != degree:
            raise PermutationError(f"degree mismatch: {g.degree} vs {degree}")
    gens = []
    for g in generators:
        if not g.is_identity() and g not in gens:
            gens.append(g)
    chain = StabilizerChain(degree, [])
    if not gens:
        return chain

    levels = chain.levels
    base = []
    # initial base: every generator must move some base point
    for g in gens:
        if all(g._img[b] == b for b in base):
            base.append(_first_moved(g))
    for depth, b in enumerate(base):
        lv = ChainLevel(b, [g for g in gens if all(g._img[c] == c for c in base[:depth])])
        lv.rebuild_orbit(degree)
        levels.append(lv)

    # Schreier generators already known to sift through, per level
    checked = [set() for _ in levels]
    i = len(levels) - 1
    while i >= 0:
        lv = levels[i]
        extended = False
        for pt in list(lv.transversal):
            u = lv.transversal[pt]
            for g in list(lv.generators):
                tag = (pt, g)
                if tag in checked[i]:
                    continue
                img = g._img[pt]
                s = compose(inverse(lv.transversal[img]), compose(g, u))
                checked[i].add(tag)
                if s.is_identity():
                    continue
                residue, j = chain.sift(s, i + 1)
                if residue.is_identity():
                    continue
                if j == len(levels):
                    levels.append(ChainLevel(_first_moved(residue)))
                    checked.append(set())
                for l in range(i + 1, j + 1):
                    levels[l].generators.append(residue)
                    levels[l].rebuild_orbit(degree)
                i = j
                extended = True
                break
            if extended:
                break
        if not extended:
            i -= 1
    return chain
