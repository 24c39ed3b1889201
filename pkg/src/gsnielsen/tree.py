"""The p-ary rooted tree and the Gupta-Sidki generators acting on it.

Vertices of level ``d`` are paths of ``d`` letters over ``1..p``; they are
numbered big-endian (first letter most significant), so for p=3 the path
``(2,1,1,1)`` is leaf 28.  ``x`` rotates the first letter and ``y`` is the
directed automorphism ``(x, x^-1, 1, ..., 1, y)``.

Elements are immutable trees of three kinds:

* :class:`Word` - a freely reduced word in ``x, X=x^-1, y, Y=y^-1``;
* :class:`Node` - a wreath form: act by ``sections[s]`` on subtree ``s``,
  then rotate the root by ``x**root_exp``;
* :class:`Product` - a product of elements, read like a word.

How a written product ``uv`` maps onto composition of maps is governed by
:class:`Convention`.  ``LEFT_FIRST`` (the leftmost factor acts first, as in
GAP's right actions) is the shipped default; it is the only one under which
the printed level-4 permutations are reproduced (see tests/test_golden.py).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence, Union

from .perm import Permutation, PermutationError, compose

LETTERS = "xXyY"
_INVERSE_LETTER = {"x": "X", "X": "x", "y": "Y", "Y": "y"}


class Convention(enum.Enum):
    LEFT_FIRST = "left-first"    # "uv": apply u, then v
    RIGHT_FIRST = "right-first"  # "uv": apply v, then u (map composition)


DEFAULT_CONVENTION = Convention.LEFT_FIRST


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % q for q in range(2, int(n ** 0.5) + 1))


@dataclass(frozen=True)
class TreeParams:
    p: int

    def __post_init__(self):
        if not (self.p >= 3 and _is_prime(self.p)):
            raise ValueError(f"p must be an odd prime, got {self.p}")

    @property
    def pi(self) -> tuple:
        """The root cycle (1,2,...,p) as an image tuple."""
        return tuple(range(2, self.p + 1)) + (1,)


# --- elements ---------------------------------------------------------------


def free_reduce(letters: str) -> str:
    out: list = []
    for ch in letters:
        if ch not in _INVERSE_LETTER:
            raise ValueError(f"bad generator letter {ch!r}")
        if out and out[-1] == _INVERSE_LETTER[ch]:
            out.pop()
        else:
            out.append(ch)
    return "".join(out)


@dataclass(frozen=True)
class Word:
    letters: str = ""

    def __post_init__(self):
        if free_reduce(self.letters) != self.letters:
            raise ValueError(f"word {self.letters!r} is not freely reduced")

    @classmethod
    def of(cls, letters: str) -> "Word":
        return cls(free_reduce(letters))

    def inverse(self) -> "Word":
        return Word("".join(_INVERSE_LETTER[c] for c in reversed(self.letters)))

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return self.letters or "1"


@dataclass(frozen=True)
class Node:
    root_exp: int
    sections: tuple

    def __str__(self):
        body = ", ".join(str(s) for s in self.sections)
        head = f"x^{self.root_exp}" if self.root_exp else ""
        return f"{head}({body})"


@dataclass(frozen=True)
class Product:
    factors: tuple

    def __post_init__(self):
        if not self.factors:
            raise ValueError("empty product")

    def __str__(self):
        return " ".join(
            f"({f})" if isinstance(f, (Product, Node)) else str(f) for f in self.factors
        )


TreeElement = Union[Word, Node, Product]

IDENTITY = Word("")


def make_node(root_exp: int, sections: Sequence[TreeElement], p: int) -> Node:
    if len(sections) != p:
        raise ValueError(f"node needs {p} sections, got {len(sections)}")
    return Node(root_exp % p, tuple(sections))


def product(*factors: TreeElement) -> TreeElement:
    """Flatten, drop identity words and merge adjacent words."""
    flat: list = []
    for f in factors:
        parts = f.factors if isinstance(f, Product) else (f,)
        for part in parts:
            if isinstance(part, Word):
                if not part.letters:
                    continue
                if flat and isinstance(flat[-1], Word):
                    merged = Word.of(flat[-1].letters + part.letters)
                    if merged.letters:
                        flat[-1] = merged
                    else:
                        flat.pop()
                    continue
            flat.append(part)
    if not flat:
        return IDENTITY
    if len(flat) == 1:
        return flat[0]
    return Product(tuple(flat))


def invert(e: TreeElement) -> TreeElement:
    if isinstance(e, Word):
        return e.inverse()
    if isinstance(e, Product):
        return product(*(invert(f) for f in reversed(e.factors)))
    p = len(e.sections)
    i = e.root_exp
    return Node((-i) % p, tuple(invert(e.sections[(s - i) % p]) for s in range(p)))


def power(e: TreeElement, k: int) -> TreeElement:
    base = e if k >= 0 else invert(e)
    return product(*([base] * abs(k)))


# --- the tree ---------------------------------------------------------------


def leaf_index(path: Sequence[int], p: int, depth: int) -> int:
    if len(path) != depth:
        raise ValueError(f"path length {len(path)} != depth {depth}")
    idx = 0
    for letter in path:
        if not 1 <= letter <= p:
            raise ValueError(f"letter {letter} out of range 1..{p}")
        idx = idx * p + (letter - 1)
    return idx + 1


def path_of_leaf(index: int, p: int, depth: int) -> tuple:
    idx = index - 1
    letters = []
    for _ in range(depth):
        idx, r = divmod(idx, p)
        letters.append(r + 1)
    return tuple(reversed(letters))


def act_generator(g: str, path: Sequence[int], p: int) -> tuple:
    """Image of a vertex under one of ``x, X, y, Y``, straight from the
    recursive definitions (no permutation tables involved)."""
    path = tuple(path)
    if not path:
        return path
    s, rest = path[0], path[1:]
    if g == "x":
        return (s % p + 1,) + rest
    if g == "X":
        return ((s - 2) % p + 1,) + rest
    if g in ("y", "Y"):
        inv = g == "Y"
        if s == 1:
            return (s,) + act_generator("X" if inv else "x", rest, p)
        if s == 2:
            return (s,) + act_generator("x" if inv else "X", rest, p)
        if s == p:
            return (s,) + act_generator(g, rest, p)
        return path
    raise ValueError(f"bad generator letter {g!r}")


@lru_cache(maxsize=None)
def generator_perm(letter: str, p: int, depth: int) -> Permutation:
    """Level-``depth`` permutation of a generator letter, built blockwise."""
    if depth == 0:
        return Permutation.identity(1)
    n = p ** depth
    block = p ** (depth - 1)
    if letter in ("x", "X"):
        shift = 1 if letter == "x" else p - 1
        img = tuple(((i // block + shift) % p) * block + i % block for i in range(n))
        return Permutation._raw(img)
    if letter not in ("y", "Y"):
        raise ValueError(f"bad generator letter {letter!r}")
    inv = letter == "Y"
    sub = {
        0: generator_perm("X" if inv else "x", p, depth - 1),
        1: generator_perm("x" if inv else "X", p, depth - 1),
        p - 1: generator_perm(letter, p, depth - 1),
    }
    img = list(range(n))
    for s, perm in sub.items():
        off = s * block
        for j, v in enumerate(perm._img):
            img[off + j] = off + v
    return Permutation._raw(tuple(img))


def _chain_perms(perms, depth_points: int, convention: Convention) -> Permutation:
    result = Permutation.identity(depth_points)
    if convention is Convention.LEFT_FIRST:
        for q in perms:
            result = compose(q, result)
    else:
        for q in perms:
            result = compose(result, q)
    return result


def evaluate(e: TreeElement, p: int, depth: int,
             convention: Convention | None = None) -> Permutation:
    """Permutation of the ``p**depth`` level-``depth`` vertices induced by ``e``."""
    if depth < 0:
        raise ValueError("depth must be >= 0")
    return _evaluate(e, p, depth, convention or DEFAULT_CONVENTION)


@lru_cache(maxsize=65536)
def _evaluate(e, p, depth, convention) -> Permutation:
    n = p ** depth
    if depth == 0:
        return Permutation.identity(1)
    if isinstance(e, Word):
        return _chain_perms((generator_perm(c, p, depth) for c in e.letters), n, convention)
    if isinstance(e, Product):
        return _chain_perms((_evaluate(f, p, depth, convention) for f in e.factors),
                            n, convention)
    if len(e.sections) != p:
        raise ValueError(f"node has {len(e.sections)} sections, expected {p}")
    block = p ** (depth - 1)
    shift = e.root_exp % p
    img = [0] * n
    for s, sec in enumerate(e.sections):
        sub = _evaluate(sec, p, depth - 1, convention)._img
        off = ((s + shift) % p) * block
        base = s * block
        for j, v in enumerate(sub):
            img[base + j] = off + v
    return Permutation._raw(tuple(img))


def _letter_wreath(letter: str, p: int):
    """(root exponent, per-subtree letters) for one generator letter."""
    secs = [""] * p
    if letter == "x":
        return 1, secs
    if letter == "X":
        return p - 1, secs
    inv = letter == "Y"
    secs[0] = "X" if inv else "x"
    secs[1] = "x" if inv else "X"
    secs[p - 1] = letter
    return 0, secs


def decompose(w: Word, p: int, convention: Convention | None = None):
    """Wreath form of a word: ``(root_exp, sections)`` with freely reduced
    section words, agreeing with ``Node(root_exp, sections)`` at every depth."""
    convention = convention or DEFAULT_CONVENTION
    letters = w.letters if convention is Convention.LEFT_FIRST else w.letters[::-1]
    root = 0
    acc = [[] for _ in range(p)]  # letters per subtree, in order of action
    for ch in letters:
        j, secs = _letter_wreath(ch, p)
        for s in range(p):
            acc[s].append(secs[(s + root) % p])
        root = (root + j) % p
    words = []
    for parts in acc:
        seq = "".join(parts)
        if convention is Convention.RIGHT_FIRST:
            seq = seq[::-1]
        words.append(Word.of(seq))
    return root, tuple(words)


def decompose_element(e: TreeElement, p: int, convention: Convention | None = None):
    """Like :func:`decompose` but for any element; sections are elements."""
    convention = convention or DEFAULT_CONVENTION
    if isinstance(e, Word):
        return decompose(e, p, convention)
    if isinstance(e, Node):
        return e.root_exp % p, e.sections
    factors = e.factors if convention is Convention.LEFT_FIRST else e.factors[::-1]
    root = 0
    acc = [[] for _ in range(p)]
    for f in factors:
        j, secs = decompose_element(f, p, convention)
        for s in range(p):
            acc[s].append(secs[(s + root) % p])
        root = (root + j) % p
    out = []
    for parts in acc:
        if convention is Convention.RIGHT_FIRST:
            parts = parts[::-1]
        out.append(product(*parts))
    return root, tuple(out)


def section(e: TreeElement, path: Sequence[int], p: int,
            convention: Convention | None = None) -> TreeElement:
    for letter in path:
        if not 1 <= letter <= p:
            raise ValueError(f"letter {letter} out of range 1..{p}")
        _, secs = decompose_element(e, p, convention)
        e = secs[letter - 1]
    return e


def project(a: Permutation, p: int, d: int) -> Permutation:
    """Induced action on level ``d`` of a level-``d+1`` tree permutation."""
    if a.degree != p ** (d + 1):
        raise PermutationError(f"expected degree {p ** (d + 1)}, got {a.degree}")
    img = a._img
    out = []
    for v in range(p ** d):
        targets = {img[v * p + c] // p for c in range(p)}
        if len(targets) != 1:
            raise PermutationError(f"vertex {v + 1}: children do not move as a block")
        out.append(targets.pop())
    return Permutation._raw(tuple(out))
