"""Named Gupta-Sidki elements and the identity checks built on them."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .perm import cycle_type, format_cycles
from .tree import (
    IDENTITY,
    Convention,
    Node,
    TreeElement,
    TreeParams,
    Word,
    evaluate,
    invert,
    power,
    product,
)

X = Word("x")
Y = Word("y")


@dataclass(frozen=True)
class NamedElement:
    name: str
    element: TreeElement
    params: TreeParams


@dataclass(frozen=True)
class ScenarioPair:
    label: str
    u: TreeElement
    v: TreeElement


def commutator(a: TreeElement, b: TreeElement) -> TreeElement:
    """[a, b] = a^-1 b^-1 a b."""
    return product(invert(a), invert(b), a, b)


def z(n: int, p: int) -> TreeElement:
    """z_1 = [x, y]; z_n acts as z_{n-1} on the last subtree and trivially
    elsewhere.  Children are shared, so evaluation cost is linear in n."""
    TreeParams(p)
    if n < 1:
        raise ValueError("z(n) needs n >= 1")
    e = commutator(X, Y)
    for _ in range(n - 1):
        e = Node(0, (IDENTITY,) * (p - 1) + (e,))
    return e


def x_comm_yz(n: int, p: int) -> TreeElement:
    """[x, y z_n]."""
    return commutator(X, product(Y, z(n, p)))


def comm_section_form(n: int, p: int) -> Node:
    """Displayed section form of [x, y z_n] for n >= 2.

    p = 3: (z_{n-1}^-1 y^-1 x, x, x y z_{n-1});
    p >= 5: (z_{n-1}^-1 y^-1 x, x^{p-2}, x, 1, ..., 1, y z_{n-1}).
    """
    zp = z(n - 1, p)
    first = product(invert(zp), Word("Yx"))
    if p == 3:
        return Node(0, (first, X, product(X, Y, zp)))
    return Node(0, (first, power(X, p - 2), X) + (IDENTITY,) * (p - 4) + (product(Y, zp),))


def z1_section_form(p: int) -> Node:
    """(y^-1 x, x, x y) for p = 3."""
    if p != 3:
        raise ValueError("the printed z_1 section form is for p = 3")
    return Node(0, (Word("Yx"), X, Word("xy")))


def yz1_section_form(p: int) -> Node:
    """y z_1 = (x y^-1 x, 1, y x y) for p = 3 and
    (x y^-1 x, x^{p-3}, x, 1, ..., 1, y^2) for p >= 5."""
    if p == 3:
        return Node(0, (Word("xYx"), IDENTITY, Word("yxy")))
    return Node(0, (Word("xYx"), power(X, p - 3), X) + (IDENTITY,) * (p - 4) + (Word("yy"),))


def u_prime(p: int = 3) -> TreeElement:
    """x^-1 y^-1 x y . x, the first entry of the second certified pair."""
    return product(commutator(X, Y), X)


def scenario_pairs(p: int = 3) -> list:
    return [
        ScenarioPair("(x, y)", X, Y),
        ScenarioPair("(x^-1 y^-1 x y x, y)", u_prime(p), Y),
    ] + [ScenarioPair(f"(x, y z_{n})", X, product(Y, z(n, p))) for n in range(1, 5)]


def catalog(p: int, max_n: int = 5) -> dict:
    params = TreeParams(p)
    items = [NamedElement("x", X, params), NamedElement("y", Y, params)]
    for n in range(1, max_n + 1):
        items.append(NamedElement(f"z{n}", z(n, p), params))
        items.append(NamedElement(f"yz{n}", product(Y, z(n, p)), params))
        items.append(NamedElement(f"[x,yz{n}]", x_comm_yz(n, p), params))
    return {item.name: item for item in items}


@dataclass
class IdentityReport:
    label: str
    verdicts: dict = field(default_factory=dict)  # depth -> bool

    @property
    def passed(self) -> bool:
        return bool(self.verdicts) and all(self.verdicts.values())


def verify_identity(lhs: TreeElement, rhs: TreeElement, p: int,
                    depths: Iterable[int], label: str = "",
                    convention: Convention | None = None) -> IdentityReport:
    report = IdentityReport(label)
    for d in depths:
        report.verdicts[d] = evaluate(lhs, p, d, convention) == evaluate(rhs, p, d, convention)
    return report


@dataclass
class DistinctnessCheck:
    label: str
    depth: int
    names: tuple
    cycle_types: tuple

    @property
    def pairwise_distinct(self) -> bool:
        return len(set(self.cycle_types)) == len(self.cycle_types)


def distinct_cycle_types(label: str, elements: Sequence[tuple], p: int,
                         depth: int) -> DistinctnessCheck:
    """``elements`` is a list of (name, element)."""
    names = tuple(n for n, _ in elements)
    types = tuple(cycle_type(evaluate(e, p, depth)) for _, e in elements)
    return DistinctnessCheck(label, depth, names, types)


def assumption_checks(p: int = 3) -> list:
    """Cycle-type separations used to rule out conjugacy at small levels."""
    if p != 3:
        raise ValueError("assumption checks are stated for p = 3")
    z2 = z(2, p)
    return [
        distinct_cycle_types(
            "x, xy, y^-1 x at level 3",
            [("x", X), ("xy", Word("xy")), ("y^-1 x", Word("Yx"))], p, 3),
        distinct_cycle_types(
            "x, x y z_2, z_2^-1 y^-1 x at level 3",
            [("x", X), ("x y z_2", product(X, Y, z2)),
             ("z_2^-1 y^-1 x", product(invert(z2), Word("Yx")))], p, 3),
        distinct_cycle_types(
            "y z_1, y at level 4",
            [("y z_1", product(Y, z(1, p))), ("y", Y)], p, 4),
    ]


def describe(e: TreeElement, p: int, depth: int) -> dict:
    perm = evaluate(e, p, depth)
    return {"cycles": format_cycles(perm), "cycle_type": str(cycle_type(perm))}
