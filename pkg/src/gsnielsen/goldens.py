"""Reference computations: the printed level-4 permutations and the section
identities, checked against the engine."""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

from .catalog import (
    X,
    Y,
    comm_section_form,
    commutator,
    u_prime,
    x_comm_yz,
    yz1_section_form,
    z,
    z1_section_form,
)
from .groups import QuotientGroup
from .perm import Permutation, cycle_type, cycles, format_cycles, parse_cycles
from .tree import Convention, Word, evaluate, invert, product

GOLDEN_FILES = {
    "pi_x": "pi_x.txt",
    "pi_y": "pi_y.txt",
    "example": "example.txt",
    "comm_uv": "comm_uv.txt",
    "comm_u1v1": "comm_u1v1.txt",
}


def load_golden(name: str, degree: int = 81) -> Permutation:
    text = resources.files("gsnielsen").joinpath("golden", GOLDEN_FILES[name]).read_text()
    return parse_cycles(text, degree)


@dataclass
class ScenarioResult:
    name: str
    passed: bool
    detail: str = ""


def _diff(expected: Permutation, got: Permutation) -> str:
    want, have = set(cycles(expected)), set(cycles(got))
    missing = sorted(want - have)
    extra = sorted(have - want)
    fmt = lambda cs: "".join("(" + ",".join(map(str, c)) + ")" for c in cs) or "-"
    return f"missing {fmt(missing)}; unexpected {fmt(extra)}"


def _golden(name: str, label: str, element, convention) -> ScenarioResult:
    expected = load_golden(name)
    got = evaluate(element, 3, 4, convention)
    if got == expected:
        return ScenarioResult(label, True, format_cycles(got)[:60] + "...")
    return ScenarioResult(label, False, _diff(expected, got))


def _identity(label, lhs, rhs, p, depths, convention) -> ScenarioResult:
    bad = [d for d in depths
           if evaluate(lhs, p, d, convention) != evaluate(rhs, p, d, convention)]
    if bad:
        return ScenarioResult(label, False, f"differs at levels {bad}")
    return ScenarioResult(label, True, f"equal at levels {list(depths)}")


def _types_differ(label, first, second, p, depth, convention) -> ScenarioResult:
    a = cycle_type(evaluate(first, p, depth, convention))
    b = cycle_type(evaluate(second, p, depth, convention))
    return ScenarioResult(label, a != b, f"{a} vs {b}")


def run_scenarios(convention: Convention | None = None) -> list:
    conv = convention or Convention.LEFT_FIRST
    comm_xy = commutator(X, Y)
    comm_u1 = commutator(u_prime(3), Y)
    out = [
        _golden("pi_x", "level-4 image of x", X, conv),
        _golden("pi_y", "level-4 image of y", Y, conv),
        _golden("example", "level-4 image of y x^-1 y^-1 x y", Word("yXYxy"), conv),
        _types_differ("y x^-1 y^-1 x y and y have different cycle types",
                      Word("yXYxy"), Y, 3, 4, conv),
        _golden("comm_uv", "level-4 commutator of (x, y)", comm_xy, conv),
        _golden("comm_u1v1", "level-4 commutator of (x^-1 y^-1 x y x, y)", comm_u1, conv),
        _types_differ("commutators of the two pairs have different cycle types",
                      comm_xy, comm_u1, 3, 4, conv),
        _types_differ("... and also differ from the inverse commutator",
                      comm_xy, invert(comm_u1), 3, 4, conv),
        _identity("z_1 = (y^-1 x, x, x y)", comm_xy, z1_section_form(3), 3,
                  range(1, 5), conv),
    ]
    for n in (2, 3, 4):
        out.append(_identity(f"[x, y z_{n}] = (z_{n-1}^-1 y^-1 x, x, x y z_{n-1})",
                             x_comm_yz(n, 3), comm_section_form(n, 3), 3, range(1, 5), conv))
    for k in (3, 4):
        out.append(_identity(
            f"p=5: [x, y z_{k}] = (z_{k-1}^-1 y^-1 x, x^3, x, 1, y z_{k-1})",
            x_comm_yz(k, 5), comm_section_form(k, 5), 5, range(1, 4), conv))
    out += [
        _identity("p=3: y z_1 = (x y^-1 x, 1, y x y)", product(Y, z(1, 3)),
                  yz1_section_form(3), 3, range(1, 5), conv),
        _identity("p=5: y z_1 = (x y^-1 x, x^2, x, 1, y^2)", product(Y, z(1, 5)),
                  yz1_section_form(5), 5, range(1, 4), conv),
        _types_differ("level 3: x vs x y", X, Word("xy"), 3, 3, conv),
        _types_differ("level 3: x vs y^-1 x", X, Word("Yx"), 3, 3, conv),
        _types_differ("level 3: x vs x y z_2", X, product(X, Y, z(2, 3)), 3, 3, conv),
        _types_differ("level 3: x vs z_2^-1 y^-1 x", X,
                      product(invert(z(2, 3)), Word("Yx")), 3, 3, conv),
        _types_differ("level 4: y z_1 vs y", product(Y, z(1, 3)), Y, 3, 4, conv),
    ]
    q1 = QuotientGroup(3, 1, conv)
    out.append(ScenarioResult("G_3/St(1) has order 3", q1.order() == 3, f"order {q1.order()}"))
    q4 = QuotientGroup(3, 4, conv)
    gen = q4.is_generating([q4.element(u_prime(3)), q4.element(Y)]) and \
        q4.is_generating(list(q4.generators))
    out.append(ScenarioResult("both pairs generate G_3/St(4)", gen, f"order {q4.order()}"))
    return out


def format_report(results: list) -> str:
    lines = []
    for r in results:
        lines.append(f"{'PASS' if r.passed else 'FAIL'}  {r.name}")
        if r.detail and not r.passed:
            lines.append(f"      {r.detail}")
    failed = sum(not r.passed for r in results)
    lines.append(f"{len(results) - failed}/{len(results)} passed")
    return "\n".join(lines) + "\n"
