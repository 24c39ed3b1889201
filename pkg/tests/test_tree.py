import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gsnielsen.perm import Permutation, PermutationError, compose, inverse
from gsnielsen.tree import (
    IDENTITY,
    Convention,
    Node,
    TreeParams,
    Word,
    act_generator,
    decompose,
    decompose_element,
    evaluate,
    invert,
    leaf_index,
    path_of_leaf,
    product,
    project,
    section,
)

words = st.text(alphabet="xXyY", max_size=12).map(Word.of)
primes = st.sampled_from([3, 5])


def oracle_perm(letters, p, depth):
    """Level permutation straight from the recursive action on paths."""
    img = []
    for path in itertools.product(range(1, p + 1), repeat=depth):
        v = path
        for c in letters:  # leftmost letter acts first
            v = act_generator(c, v, p)
        img.append(leaf_index(v, p, depth))
    return Permutation(img)


def test_params():
    assert TreeParams(5).pi == (2, 3, 4, 5, 1)
    for bad in (2, 4, 9, 1):
        with pytest.raises(ValueError):
            TreeParams(bad)


def test_leaf_index():
    assert leaf_index((1, 1, 1, 1), 3, 4) == 1
    assert leaf_index((2, 1, 1, 1), 3, 4) == 28
    assert leaf_index((1, 2, 1, 1), 3, 4) == 10
    assert leaf_index((3, 3, 3, 3), 3, 4) == 81
    with pytest.raises(ValueError):
        leaf_index((4, 1), 3, 2)
    with pytest.raises(ValueError):
        leaf_index((1,), 3, 2)


def test_path_of_leaf_round_trip():
    for i in range(1, 126):
        assert leaf_index(path_of_leaf(i, 5, 3), 5, 3) == i


def test_act_generator():
    assert act_generator("x", (1, 1, 1, 1), 3) == (2, 1, 1, 1)
    assert act_generator("y", (1, 1, 1, 1), 3) == (1, 2, 1, 1)
    assert act_generator("y", (3, 3, 1), 3) == (3, 3, 1)
    assert act_generator("y", (3, 1, 1), 3) == (3, 1, 2)
    assert act_generator("y", (4, 1, 2), 5) == (4, 1, 2)
    assert act_generator("y", (), 3) == ()
    for path in itertools.product(range(1, 6), repeat=3):
        for g, h in (("x", "X"), ("y", "Y")):
            assert act_generator(h, act_generator(g, path, 5), 5) == path


def test_word_free_reduction():
    assert Word.of("xXyYx") == Word("x")
    assert Word.of("yY") == IDENTITY
    with pytest.raises(ValueError):
        Word("xX")
    with pytest.raises(ValueError):
        Word.of("xz")


@pytest.mark.parametrize("p,depth", [(3, 1), (3, 2), (3, 3), (5, 2), (7, 2)])
def test_generator_tables_match_path_action(p, depth):
    for c in "xXyY":
        assert evaluate(Word(c), p, depth) == oracle_perm(c, p, depth)


@given(words, primes)
def test_evaluate_matches_path_action(w, p):
    depth = 3 if p == 3 else 2
    assert evaluate(w, p, depth) == oracle_perm(w.letters, p, depth)


def test_depth_zero_is_trivial():
    for e in (Word("x"), Word("yx"), Node(1, (Word("x"),) * 3)):
        assert evaluate(e, 3, 0) == Permutation.identity(1)


def test_empty_word_is_identity():
    for d in range(5):
        assert evaluate(IDENTITY, 3, d).is_identity()


@given(words, words, st.integers(1, 4))
def test_homomorphism(u, v, d):
    uv = Word.of(u.letters + v.letters)
    # left-first: u acts first
    assert evaluate(uv, 3, d) == compose(evaluate(v, 3, d), evaluate(u, 3, d))
    assert evaluate(product(u, v), 3, d) == evaluate(uv, 3, d)
    assert evaluate(uv, 3, d, Convention.RIGHT_FIRST) == \
        compose(evaluate(u, 3, d, Convention.RIGHT_FIRST), evaluate(v, 3, d, Convention.RIGHT_FIRST))


@pytest.mark.parametrize("p,maxd", [(3, 4), (5, 3)])
def test_generators_have_order_p(p, maxd):
    for d in range(maxd + 1):
        for c in "xy":
            assert (evaluate(Word(c), p, d) ** p).is_identity()


def test_inverse_of_x_is_x_inverse():
    assert inverse(evaluate(Word("x"), 3, 4)) == evaluate(Word("X"), 3, 4)
    assert inverse(evaluate(Word("y"), 3, 4)) == evaluate(Word("Y"), 3, 4)


@given(words, st.sampled_from(list(Convention)))
def test_invert(w, conv):
    for e in (w, Node(1, (w, Word("y"), w.inverse())), product(Word("x"), Node(2, (w,) * 3))):
        for d in range(4):
            assert evaluate(invert(e), 3, d, conv) == inverse(evaluate(e, 3, d, conv))


def test_decompose_generators():
    assert decompose(Word("x"), 3) == (1, (IDENTITY,) * 3)
    assert decompose(Word("y"), 5) == (0, (Word("x"), Word("X"), IDENTITY, IDENTITY, Word("y")))
    root, secs = decompose(Word.of("XYxy"), 3)
    assert root == 0
    for d in range(4):
        assert [evaluate(s, 3, d) for s in secs] == \
            [evaluate(Word(t), 3, d) for t in ("Yx", "x", "xy")]


@given(words, primes, st.sampled_from(list(Convention)))
def test_decompose_soundness(w, p, conv):
    root, secs = decompose(w, p, conv)
    node = Node(root, secs)
    for d in range(1, 5 if p == 3 else 4):
        assert evaluate(node, p, d, conv) == evaluate(w, p, d, conv)


@given(words, words)
def test_decompose_element_of_products(u, v):
    e = product(u, Node(1, (v, IDENTITY, u)), v)
    root, secs = decompose_element(e, 3)
    for d in range(1, 4):
        assert evaluate(Node(root, secs), 3, d) == evaluate(e, 3, d)


def test_section():
    a, b, c = Word("x"), Word("y"), Word("xy")
    assert section(Node(0, (a, b, c)), (2,), 3) == b
    assert section(Word("y"), (5,), 5) == Word("y")
    assert section(Word("y"), (3,), 5) == IDENTITY
    assert section(Word("y"), (3, 3, 1), 3) == Word("x")


def test_project_identity_and_words():
    assert project(Permutation.identity(81), 3, 3) == Permutation.identity(27)
    w = Word("xyxY")
    assert project(evaluate(w, 3, 4), 3, 3) == evaluate(w, 3, 3)


def test_project_rejects_non_tree_permutation():
    bad = Permutation.from_cycles([(1, 4)], 9)  # leaves under different parents
    with pytest.raises(PermutationError):
        project(bad, 3, 1)
    with pytest.raises(PermutationError):
        project(Permutation.identity(10), 3, 1)


@given(words, st.integers(0, 3), primes)
def test_projection_compatibility(w, d, p):
    if p == 5:
        d = min(d, 2)
    assert project(evaluate(w, p, d + 1), p, d) == evaluate(w, p, d)


def test_node_sections_share_structure():
    from gsnielsen.catalog import z

    e = z(30, 3)
    # linear-size structure: evaluation at depth 4 stays cheap
    assert evaluate(e, 3, 4).is_identity()
