"""Finite groups behind one interface: congruence quotients G_p/St(n) as
permutation groups, and finite abelian groups as residue vectors."""

from __future__ import annotations

from collections import deque
from math import prod
from typing import Sequence, Union

from .perm import (
    Permutation,
    StabilizerChain,
    build_chain,
    canonical_key,
    compose,
    inverse,
)
from .tree import Convention, TreeElement, TreeParams, Word, evaluate


class CapExceeded(Exception):
    def __init__(self, cap: int):
        super().__init__(f"more than {cap} elements")
        self.visited = cap


class HandleMismatch(ValueError):
    pass


class QuotientGroup:
    """G_p / St(depth), generated by the level-``depth`` images of x and y."""

    kind = "quotient"

    def __init__(self, p: int, depth: int, convention: Convention | None = None):
        TreeParams(p)
        if depth < 1:
            raise ValueError("depth must be >= 1")
        self.p = p
        self.depth = depth
        self.degree = p ** depth
        self.convention = convention
        self.generators = (self.element(Word("x")), self.element(Word("y")))
        self.chain: StabilizerChain = build_chain(list(self.generators))

    def __repr__(self):
        return f"QuotientGroup(p={self.p}, depth={self.depth})"

    @property
    def descriptor(self) -> str:
        return f"quotient:p={self.p},depth={self.depth}"

    def element(self, e: TreeElement) -> Permutation:
        return evaluate(e, self.p, self.depth, self.convention)

    def _check(self, a):
        if not isinstance(a, Permutation) or a.degree != self.degree:
            raise HandleMismatch(f"{a!r} is not an element of {self!r}")

    def multiply(self, a: Permutation, b: Permutation) -> Permutation:
        """The element ``ab``; under left-first words ``a`` acts first."""
        self._check(a)
        self._check(b)
        if self.convention is Convention.RIGHT_FIRST:
            return compose(a, b)
        return compose(b, a)

    def invert(self, a: Permutation) -> Permutation:
        self._check(a)
        return inverse(a)

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def equal(self, a, b) -> bool:
        self._check(a)
        self._check(b)
        return a == b

    def key(self, a: Permutation) -> bytes:
        return canonical_key(a)

    def order(self) -> int:
        return self.chain.order()

    def contains(self, a: Permutation) -> bool:
        return self.chain.contains(a)

    def is_generating(self, elements: Sequence[Permutation]) -> bool:
        if not elements:
            raise ValueError("empty tuple")
        for a in elements:
            self._check(a)
        gens = [a for a in elements if not a.is_identity()]
        if not gens:
            return False
        return build_chain(gens).order() == self.order()


class AbelianGroup:
    """Z/m_1 x ... x Z/m_r with m_r | ... | m_1, elements as residue tuples."""

    kind = "abelian"

    def __init__(self, moduli: Sequence[int]):
        moduli = tuple(int(m) for m in moduli)
        if not moduli:
            raise ValueError("need at least one modulus")
        if any(m < 2 for m in moduli):
            raise ValueError("moduli must be >= 2")
        for a, b in zip(moduli, moduli[1:]):
            if a % b:
                raise ValueError(f"moduli must form a divisibility chain, {b} does not divide {a}")
        self.moduli = moduli
        self.rank = len(moduli)
        self.generators = tuple(
            tuple(1 if j == i else 0 for j in range(self.rank)) for i in range(self.rank)
        )

    def __repr__(self):
        return f"AbelianGroup{self.moduli}"

    @property
    def descriptor(self) -> str:
        return "abelian:" + ",".join(map(str, self.moduli))

    def element(self, residues: Sequence[int]) -> tuple:
        if len(residues) != self.rank:
            raise HandleMismatch(f"expected {self.rank} residues")
        return tuple(v % m for v, m in zip(residues, self.moduli))

    def _check(self, a):
        if not (isinstance(a, tuple) and len(a) == self.rank
                and all(0 <= v < m for v, m in zip(a, self.moduli))):
            raise HandleMismatch(f"{a!r} is not a reduced element of {self!r}")

    def multiply(self, a, b) -> tuple:
        self._check(a)
        self._check(b)
        return tuple((u + v) % m for u, v, m in zip(a, b, self.moduli))

    def invert(self, a) -> tuple:
        self._check(a)
        return tuple((-u) % m for u, m in zip(a, self.moduli))

    def identity(self) -> tuple:
        return (0,) * self.rank

    def equal(self, a, b) -> bool:
        self._check(a)
        self._check(b)
        return a == b

    def key(self, a) -> bytes:
        # fixed width per coordinate
        width = max((m - 1).bit_length() for m in self.moduli) // 8 + 1
        return b"".join(v.to_bytes(width, "big") for v in a)

    def order(self) -> int:
        return prod(self.moduli)

    def is_generating(self, elements: Sequence[tuple]) -> bool:
        """Frattini test: for each prime q | m_1 the residues mod q must span
        a space of dimension #{i : q | m_i}."""
        if not elements:
            raise ValueError("empty tuple")
        for a in elements:
            self._check(a)
        for q in _prime_factors(self.moduli[0]):
            rows = [i for i, m in enumerate(self.moduli) if m % q == 0]
            matrix = [[a[i] % q for a in elements] for i in rows]
            if _rank_mod_prime(matrix, q) != len(rows):
                return False
        return True


def _prime_factors(n: int) -> list:
    out, q = [], 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


def _rank_mod_prime(matrix: list, q: int) -> int:
    m = [row[:] for row in matrix]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(m)) if m[r][col] % q), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = pow(m[rank][col], -1, q)
        m[rank] = [(v * inv) % q for v in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][col]:
                f = m[r][col]
                m[r] = [(a - f * b) % q for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


GroupHandle = Union[QuotientGroup, AbelianGroup]


def enumerate_elements(h, cap: int) -> list:
    """All elements in BFS order over generators g1, g1^-1, g2, g2^-1, ...

    Raises :class:`CapExceeded` once more than ``cap`` elements are seen.
    """
    if cap <= 0:
        raise ValueError("cap must be positive")
    alphabet = []
    for g in h.generators:
        alphabet += [g, h.invert(g)]
    start = h.identity()
    seen = {h.key(start)}
    out = [start]
    queue = deque([start])
    while queue:
        a = queue.popleft()
        for g in alphabet:
            b = h.multiply(a, g)
            k = h.key(b)
            if k not in seen:
                if len(out) >= cap:
                    raise CapExceeded(cap)
                seen.add(k)
                out.append(b)
                queue.append(b)
    return out


def parse_group(descriptor: str):
    """``quotient:p=3,depth=4`` or ``abelian:5,5``."""
    kind, _, rest = descriptor.partition(":")
    kind = kind.strip().lower()
    if kind == "quotient":
        fields = {}
        for part in rest.split(","):
            name, eq, value = part.partition("=")
            if not eq:
                raise ValueError(f"bad quotient field {part!r}")
            fields[name.strip()] = int(value)
        if set(fields) != {"p", "depth"}:
            raise ValueError("quotient descriptor needs p= and depth=")
        return QuotientGroup(fields["p"], fields["depth"])
    if kind == "abelian":
        return AbelianGroup([int(v) for v in rest.split(",") if v.strip()])
    raise ValueError(f"unknown group kind {kind!r}")
