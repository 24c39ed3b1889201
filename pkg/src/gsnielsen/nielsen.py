"""Nielsen and Andrews-Curtis moves on generating tuples, Nielsen-graph
exploration and commutator cycle-type certificates."""

from __future__ import annotations

import itertools
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .catalog import ScenarioPair, commutator
from .groups import CapExceeded, QuotientGroup, enumerate_elements
from .perm import CycleType, cycle_type, format_cycles
from .tree import TreeElement, Word, evaluate


class NonGeneratingSeed(ValueError):
    pass


@dataclass(frozen=True)
class Move:
    kind: str  # "R", "I" or "AC"
    i: int     # 0-based entry that changes
    j: int = -1
    sign: int = 1
    conj: int = -1  # index into MoveSet.conjugators

    def __str__(self):
        if self.kind == "R":
            return f"R_{self.i + 1}{self.j + 1}^{'+' if self.sign > 0 else '-'}"
        if self.kind == "I":
            return f"I_{self.i + 1}"
        return f"AC_{self.i + 1},{self.conj}"


@dataclass(frozen=True)
class MoveSet:
    kind: str  # "nielsen" or "andrews_curtis"
    k: int
    conjugators: tuple = ()

    @classmethod
    def nielsen(cls, k: int) -> "MoveSet":
        return cls("nielsen", k)

    @classmethod
    def andrews_curtis(cls, k: int, conjugators: Sequence[TreeElement] = ()) -> "MoveSet":
        """Conjugators default to x, x^-1, y, y^-1; inverses of custom
        conjugators are added so the set stays closed under inverses."""
        from .tree import invert

        words = list(conjugators) or [Word("x"), Word("X"), Word("y"), Word("Y")]
        for w in list(words):
            if invert(w) not in words:
                words.append(invert(w))
        return cls("andrews_curtis", k, tuple(words))

    @property
    def moves(self) -> list:
        k = self.k
        pairs = [(i, j) for i in range(k) for j in range(k) if i != j]
        out = [Move("R", i, j, 1) for i, j in pairs]
        out += [Move("R", i, j, -1) for i, j in pairs]
        out += [Move("I", i) for i in range(k)]
        if self.kind == "andrews_curtis":
            out += [Move("AC", i, conj=c) for i in range(k) for c in range(len(self.conjugators))]
        return out

    def inverse_of(self, m: Move) -> Move:
        if m.kind == "R":
            return Move("R", m.i, m.j, -m.sign)
        if m.kind == "I":
            return m
        from .tree import invert

        return Move("AC", m.i, conj=self.conjugators.index(invert(self.conjugators[m.conj])))

    @property
    def descriptor(self) -> str:
        if self.kind == "nielsen":
            return "nielsen"
        return "ac:" + ",".join(str(w) for w in self.conjugators)


@dataclass(frozen=True)
class TupleVertex:
    elements: tuple
    key: bytes

    @classmethod
    def of(cls, h, elements: Sequence) -> "TupleVertex":
        elements = tuple(elements)
        return cls(elements, b"".join(h.key(a) for a in elements))


def _resolve_word(h, w: TreeElement):
    if isinstance(h, QuotientGroup):
        return h.element(w)
    if not isinstance(w, Word):
        raise ValueError("abelian handles take plain generator words only")
    gens = h.generators
    result = h.identity()
    for c in w.letters:
        idx = 0 if c in "xX" else 1
        if idx >= len(gens):
            raise ValueError(f"letter {c!r} has no generator in {h!r}")
        g = gens[idx] if c.islower() else h.invert(gens[idx])
        result = h.multiply(result, g)
    return result


class _Mover:
    """Applies moves of one move set in one handle, caching conjugators."""

    def __init__(self, h, ms: MoveSet):
        self.h = h
        self.ms = ms
        self.moves = ms.moves
        self.conj = []
        for w in ms.conjugators:
            c = _resolve_word(h, w)
            self.conj.append((c, h.invert(c)))

    def apply(self, m: Move, t: TupleVertex) -> TupleVertex:
        h = self.h
        if len(t.elements) != self.ms.k:
            raise ValueError(f"arity mismatch: tuple has {len(t.elements)}, moves have {self.ms.k}")
        els = list(t.elements)
        if m.kind == "R":
            other = els[m.j] if m.sign > 0 else h.invert(els[m.j])
            els[m.i] = h.multiply(els[m.i], other)
        elif m.kind == "I":
            els[m.i] = h.invert(els[m.i])
        else:
            w, w_inv = self.conj[m.conj]
            els[m.i] = h.multiply(h.multiply(w_inv, els[m.i]), w)
        return TupleVertex.of(h, els)

    def neighbors(self, t: TupleVertex) -> list:
        return [self.apply(m, t) for m in self.moves]


def apply_move(h, m: Move, t: TupleVertex, ms: Optional[MoveSet] = None) -> TupleVertex:
    ms = ms or (MoveSet.nielsen(len(t.elements)) if m.kind != "AC"
                else MoveSet.andrews_curtis(len(t.elements)))
    return _Mover(h, ms).apply(m, t)


def neighbors(h, t: TupleVertex, ms: MoveSet) -> list:
    return _Mover(h, ms).neighbors(t)


def group_commutator(h, a, b):
    """[a, b] = a^-1 b^-1 a b in the handle's group."""
    return h.multiply(h.multiply(h.invert(a), h.invert(b)), h.multiply(a, b))


def fingerprint(t: TupleVertex, h) -> CycleType:
    """Cycle type of the commutator of a generating pair; constant on Nielsen
    classes because moves change it only by conjugation and inversion."""
    if not isinstance(h, QuotientGroup):
        raise ValueError("fingerprints need a permutation quotient")
    if len(t.elements) != 2:
        raise ValueError("fingerprints are defined for pairs")
    return cycle_type(group_commutator(h, *t.elements))


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        root = a
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[a] != root:
            self.parent[a], a = root, self.parent[a]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # smaller index wins, keeps representatives deterministic
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


@dataclass
class Component:
    representative: tuple
    size: Optional[int] = None
    visited: int = 0
    fingerprint: Optional[CycleType] = None
    seeds: list = field(default_factory=list)
    cap_hit: bool = False


@dataclass
class ComponentReport:
    mode: str  # "exhaustive" or "seeded"
    group: str
    moveset: str
    k: int
    components: list
    verdict: str  # "exact", "certified-distinct" or "inconclusive"
    caps: dict = field(default_factory=dict)
    total_tuples: Optional[int] = None
    note: str = ""

    @property
    def count(self) -> int:
        return len(self.components)

    def to_dict(self, h=None) -> dict:
        comps = []
        for c in self.components:
            d = {
                "visited": c.visited,
                "representative": [_format_element(a) for a in c.representative],
                "fingerprint": str(c.fingerprint) if c.fingerprint is not None else None,
            }
            if c.size is not None:
                d["size"] = c.size
            if self.mode == "seeded":
                d["seeds"] = c.seeds
                d["cap_hit"] = c.cap_hit
            comps.append(d)
        out = {
            "mode": self.mode,
            "group": self.group,
            "moveset": self.moveset,
            "k": self.k,
            "component_count": self.count,
            "components": comps,
            "verdict": self.verdict,
            "caps": self.caps,
        }
        if self.total_tuples is not None:
            out["total_generating_tuples"] = self.total_tuples
        if self.note:
            out["note"] = self.note
        return out


def _format_element(a):
    if isinstance(a, tuple):
        return list(a)
    return format_cycles(a)


def _ac_note(ms: MoveSet) -> str:
    if ms.kind == "andrews_curtis":
        return "conjugators restricted to a finite set: components are an upper-bound partition"
    return ""


def explore_exhaustive(h, k: int, ms: Optional[MoveSet] = None,
                       cap: int = 10 ** 6, tuple_cap: int = 10 ** 7) -> ComponentReport:
    """Exact components of the move graph on all generating k-tuples.

    ``cap`` bounds the element enumeration, ``tuple_cap`` the number of
    k-tuples scanned; either raises :class:`CapExceeded`.
    """
    ms = ms or MoveSet.nielsen(k)
    if ms.k != k:
        raise ValueError("move set arity differs from k")
    if h.order() > cap:
        raise CapExceeded(cap)
    elements = enumerate_elements(h, cap)
    if len(elements) ** k > tuple_cap:
        raise CapExceeded(tuple_cap)
    index: dict = {}
    vertices = []
    for combo in itertools.product(elements, repeat=k):
        if h.is_generating(combo):
            t = TupleVertex.of(h, combo)
            index[t.key] = len(vertices)
            vertices.append(t)
    mover = _Mover(h, ms)
    uf = _UnionFind(len(vertices))
    for idx, t in enumerate(vertices):
        for nb in mover.neighbors(t):
            uf.union(idx, index[nb.key])
    groups: dict = {}
    for idx in range(len(vertices)):
        groups.setdefault(uf.find(idx), []).append(idx)
    comps = []
    for root in sorted(groups):
        members = groups[root]
        rep = vertices[members[0]]
        fp = fingerprint(rep, h) if isinstance(h, QuotientGroup) and k == 2 else None
        comps.append(Component(rep.elements, size=len(members), visited=len(members),
                               fingerprint=fp))
    return ComponentReport("exhaustive", h.descriptor, ms.descriptor, k, comps, "exact",
                           caps={"elements": cap, "tuples": tuple_cap}, total_tuples=len(vertices),
                           note=_ac_note(ms))


def _bfs_region(mover: _Mover, seed: TupleVertex, node_cap: int):
    seen = {seed.key}
    queue = deque([seed])
    cap_hit = False
    while queue:
        t = queue.popleft()
        for nb in mover.neighbors(t):
            if nb.key not in seen:
                if len(seen) >= node_cap:
                    cap_hit = True
                    break
                seen.add(nb.key)
                queue.append(nb)
        if cap_hit:
            break
    return seen, cap_hit


def explore_seeded(h, seeds: Sequence, ms: Optional[MoveSet] = None,
                   node_cap: int = 10 ** 4, threads: int = 1) -> ComponentReport:
    """BFS from each seed up to ``node_cap`` tuples, merging regions that meet.

    Regions are grown independently and merged afterwards, so the result does
    not depend on how many threads grow them.
    """
    seeds = [s if isinstance(s, TupleVertex) else TupleVertex.of(h, s) for s in seeds]
    if not seeds:
        raise ValueError("need at least one seed")
    k = len(seeds[0].elements)
    ms = ms or MoveSet.nielsen(k)
    for n, s in enumerate(seeds):
        if len(s.elements) != k:
            raise ValueError("seeds differ in arity")
        if not h.is_generating(s.elements):
            raise NonGeneratingSeed(f"seed {n} does not generate {h.descriptor}")
    mover = _Mover(h, ms)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            regions = list(pool.map(lambda s: _bfs_region(mover, s, node_cap), seeds))
    else:
        regions = [_bfs_region(mover, s, node_cap) for s in seeds]

    uf = _UnionFind(len(seeds))
    for a, b in itertools.combinations(range(len(seeds)), 2):
        if not regions[a][0].isdisjoint(regions[b][0]):
            uf.union(a, b)
    merged: dict = {}
    for n in range(len(seeds)):
        merged.setdefault(uf.find(n), []).append(n)
    comps = []
    for root in sorted(merged):
        members = merged[root]
        keys = set().union(*(regions[n][0] for n in members))
        cap_hit = any(regions[n][1] for n in members)
        fp = fingerprint(seeds[root], h) if isinstance(h, QuotientGroup) and k == 2 else None
        comps.append(Component(seeds[root].elements,
                               size=None if cap_hit else len(keys),
                               visited=len(keys), fingerprint=fp,
                               seeds=members, cap_hit=cap_hit))

    if len(comps) == 1 or all(not c.cap_hit for c in comps):
        verdict = "exact"
    elif all(c.fingerprint is not None for c in comps) and \
            len({c.fingerprint for c in comps}) == len(comps):
        verdict = "certified-distinct"
    else:
        verdict = "inconclusive"
    note = _ac_note(ms)
    if len(seeds) == 1:
        note = (note + "; " if note else "") + "single seed: exact for reachability only"
    return ComponentReport("seeded", h.descriptor, ms.descriptor, k, comps, verdict,
                           caps={"node_cap": node_cap}, note=note)


def pair_fingerprint(pair: ScenarioPair, p: int, depth: int) -> CycleType:
    return cycle_type(evaluate(commutator(pair.u, pair.v), p, depth))


def separation_depth(pair_a: ScenarioPair, pair_b: ScenarioPair, p: int,
                     max_depth: int) -> Optional[int]:
    """Smallest level at which the commutator cycle types differ, or None.

    None only means no level up to ``max_depth`` separates the pairs.
    """
    for d in range(1, max_depth + 1):
        if pair_fingerprint(pair_a, p, d) != pair_fingerprint(pair_b, p, d):
            return d
    return None


def certify_distinct(pair_a: ScenarioPair, pair_b: ScenarioPair, p: int,
                     depth: int) -> dict:
    """Certificate document: both commutator permutations in cycle text,
    their cycle types, and whether the types differ."""
    entries = []
    for pair in (pair_a, pair_b):
        perm = evaluate(commutator(pair.u, pair.v), p, depth)
        entries.append({
            "pair": pair.label,
            "commutator": format_cycles(perm),
            "cycle_type": str(cycle_type(perm)),
        })
    distinct = entries[0]["cycle_type"] != entries[1]["cycle_type"]
    return {
        "p": p,
        "depth": depth,
        "degree": p ** depth,
        "pairs": entries,
        "verdict": "distinct" if distinct else "not-distinct",
    }
