"""Exit criteria.  Each test carries a ``criterion`` marker; the terminal
summary prints one PASS/FAIL line per criterion."""

import json
import random
import subprocess
import sys
import time

import pytest

from gsnielsen.catalog import (
    X,
    Y,
    comm_section_form,
    commutator,
    verify_identity,
    x_comm_yz,
    z,
    z1_section_form,
)
from gsnielsen.cli import main
from gsnielsen.goldens import load_golden
from gsnielsen.groups import AbelianGroup, QuotientGroup, enumerate_elements
from gsnielsen.nielsen import MoveSet, TupleVertex, apply_move, explore_exhaustive, fingerprint
from gsnielsen.perm import Permutation, conjugate, cycle_type, inverse, parse_cycles
from gsnielsen.tree import Node, Word, decompose, evaluate, invert, product, project

TRIALS = 1000


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


def cli_first_line(capsys, *argv):
    assert main(list(argv)) == 0
    return capsys.readouterr().out.splitlines()[0]


def random_word(rng, max_len=12):
    return Word.of("".join(rng.choice("xXyY") for _ in range(rng.randint(0, max_len))))


@pytest.mark.criterion(1, "eval x / eval y at p=3 depth 4 reproduce the printed listings, < 1 s")
def test_criterion_1_golden_generators(capsys):
    with Timer() as t:
        px = cli_first_line(capsys, "eval", "x", "--p", "3", "--depth", "4")
        py = cli_first_line(capsys, "eval", "y", "--p", "3", "--depth", "4")
    assert parse_cycles(px, 81) == load_golden("pi_x")
    assert parse_cycles(py, 81) == load_golden("pi_y")
    assert t.elapsed < 1.0


@pytest.mark.criterion(2, "eval 'y X Y x y' reproduces the printed example; type differs from y, < 1 s")
def test_criterion_2_golden_example(capsys):
    with Timer() as t:
        line = cli_first_line(capsys, "eval", "y X Y x y", "--p", "3", "--depth", "4")
    perm = parse_cycles(line, 81)
    assert perm == load_golden("example")
    assert cycle_type(perm) != cycle_type(load_golden("pi_y"))
    assert t.elapsed < 1.0


@pytest.mark.criterion(3, "both level-4 commutators match the listings; types differ; certify says distinct, < 5 s")
def test_criterion_3_certificate(capsys):
    with Timer() as t:
        code = main(["nielsen", "certify", "--group", "quotient:p=3,depth=4",
                     "--pairA", "x ; y", "--pairB", "comm(x,y) x ; y", "--format", "json"])
        doc = json.loads(capsys.readouterr().out)
    assert code == 0
    a, b = (parse_cycles(e["commutator"], 81) for e in doc["pairs"])
    assert a == load_golden("comm_uv")
    assert b == load_golden("comm_u1v1")
    assert cycle_type(a) != cycle_type(b) and cycle_type(a) != cycle_type(inverse(b))
    assert doc["verdict"] == "distinct"
    assert t.elapsed < 5.0


@pytest.mark.criterion(4, "section identities for z_1, [x,yz_n] (n=2,3,4) and the p=5 form, < 30 s")
def test_criterion_4_section_identities():
    with Timer() as t:
        reports = [verify_identity(commutator(X, Y), z1_section_form(3), 3, range(1, 5))]
        for n in (2, 3, 4):
            reports.append(verify_identity(x_comm_yz(n, 3), comm_section_form(n, 3), 3, range(1, 5)))
        reports.append(verify_identity(x_comm_yz(3, 5), comm_section_form(3, 5), 5, range(1, 4)))
    assert all(r.passed for r in reports)
    assert t.elapsed < 30.0


def _pairwise_distinct(elements, depth):
    types = [cycle_type(evaluate(e, 3, depth)) for e in elements]
    return len(set(types)) == len(types)


@pytest.mark.criterion("5a", "level-3 cycle types of x, xy, y^-1 x pairwise distinct, < 5 s")
def test_criterion_5a_level3_generators():
    with Timer() as t:
        ok = _pairwise_distinct([X, Word("xy"), Word("Yx")], 3)
    assert t.elapsed < 5.0
    assert ok


@pytest.mark.criterion("5b", "level-3 cycle types of x, x y z_2, z_2^-1 y^-1 x pairwise distinct, < 5 s")
def test_criterion_5b_level3_with_z2():
    z2 = z(2, 3)
    with Timer() as t:
        ok = _pairwise_distinct([X, product(X, Y, z2), product(invert(z2), Word("Yx"))], 3)
    assert t.elapsed < 5.0
    assert ok


@pytest.mark.criterion("5c", "level-4 cycle types of y and y z_1 distinct, < 5 s")
def test_criterion_5c_level4():
    with Timer() as t:
        ok = _pairwise_distinct([Y, product(Y, z(1, 3))], 4)
    assert t.elapsed < 5.0
    assert ok


@pytest.mark.criterion(6, "exhaustive Nielsen component counts on (Z/3)^2, (Z/5)^2, (Z/7)^2, (Z/5)^2 k=3, < 60 s")
def test_criterion_6_abelian_counts():
    with Timer() as t:
        counts = [explore_exhaustive(AbelianGroup(m), k).count
                  for m, k in (((3, 3), 2), ((5, 5), 2), ((7, 7), 2), ((5, 5), 3))]
    assert counts == [1, 2, 3, 1]
    assert t.elapsed < 60.0


@pytest.mark.criterion(7, "chain order equals enumeration for G_3/St(1), G_3/St(2); G_3/St(1) has order 3, < 30 s")
def test_criterion_7_oracle_equivalence():
    with Timer() as t:
        for d in (1, 2):
            h = QuotientGroup(3, d)
            assert h.order() == len(enumerate_elements(h, 10 ** 6))
        assert QuotientGroup(3, 1).order() == 3
    assert t.elapsed < 30.0


def _property_suite():
    rng = random.Random(20240601)
    q3 = QuotientGroup(3, 3)
    ms = MoveSet.nielsen(2)
    ac = MoveSet.andrews_curtis(2)
    ab = AbelianGroup([5, 5])
    ab_elements = enumerate_elements(ab, 100)

    def random_pair():
        t = TupleVertex.of(q3, q3.generators)
        for _ in range(rng.randint(0, 20)):
            t = apply_move(q3, rng.choice(ms.moves), t, ms)
        return t

    for _ in range(TRIALS):  # projection compatibility
        w, d = random_word(rng), rng.randint(0, 3)
        assert project(evaluate(w, 3, d + 1), 3, d) == evaluate(w, 3, d)
    for _ in range(TRIALS):  # decompose soundness
        w = random_word(rng)
        node = Node(*decompose(w, 3))
        for d in range(1, 5):
            assert evaluate(node, 3, d) == evaluate(w, 3, d)
    for _ in range(TRIALS):  # fingerprint invariance
        t = random_pair()
        m = rng.choice(ms.moves)
        assert fingerprint(apply_move(q3, m, t, ms), q3) == fingerprint(t, q3)
    for _ in range(TRIALS):  # inverse closure, quotient and abelian
        t = random_pair()
        m = rng.choice(ac.moves)
        assert apply_move(q3, ac.inverse_of(m), apply_move(q3, m, t, ac), ac) == t
        a = TupleVertex.of(ab, (rng.choice(ab_elements), rng.choice(ab_elements)))
        m = rng.choice(ms.moves)
        assert apply_move(ab, ms.inverse_of(m), apply_move(ab, m, a, ms), ms) == a
    for _ in range(TRIALS):  # generation preserved
        t = random_pair()
        m = rng.choice(ac.moves)
        assert q3.is_generating(apply_move(q3, m, t, ac).elements)
        while True:
            a = (rng.choice(ab_elements), rng.choice(ab_elements))
            if ab.is_generating(a):
                break
        assert ab.is_generating(apply_move(ab, rng.choice(ms.moves), TupleVertex.of(ab, a), ms).elements)
    points = list(range(1, 28))
    for _ in range(TRIALS):  # cycle type under conjugation / inversion
        g = Permutation(rng.sample(points, 27))
        h = Permutation(rng.sample(points, 27))
        assert cycle_type(conjugate(g, h)) == cycle_type(g) == cycle_type(inverse(g))
    for n in range(1, 6):  # z_n lives below level n
        assert all(evaluate(z(n, 3), 3, d).is_identity() for d in range(n + 1))
        assert not evaluate(z(n, 3), 3, n + 1).is_identity()
    for d in range(5):  # generators have order p
        for c in "xy":
            assert (evaluate(Word(c), 3, d) ** 3).is_identity()


@pytest.mark.criterion(8, "property suites (>= 1000 trials each), < 3 min")
def test_criterion_8_properties():
    with Timer() as t:
        _property_suite()
    assert t.elapsed < 180.0


@pytest.mark.criterion(9, "verify paper --deterministic is byte-identical across two runs")
def test_criterion_9_reproducible():
    cmd = [sys.executable, "-m", "gsnielsen.cli", "verify", "paper", "--deterministic"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and b"FAIL" not in first
