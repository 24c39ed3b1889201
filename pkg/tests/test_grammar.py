import pytest

from gsnielsen.catalog import commutator, z
from gsnielsen.grammar import WordSyntaxError, parse_element, parse_tuple, parse_word
from gsnielsen.tree import IDENTITY, Word, evaluate, invert, product


def same(a, b, p=3, depths=range(5)):
    return all(evaluate(a, p, d) == evaluate(b, p, d) for d in depths)


def test_letters_and_juxtaposition():
    assert parse_element("y X Y x y") == Word("yXYxy")
    assert parse_element("  x\ty ") == Word("xy")
    assert parse_element("") == IDENTITY
    assert parse_element("x X") == IDENTITY


def test_powers_and_groups():
    assert parse_element("x^2") == Word("xx")
    assert parse_element("x^-1") == Word("X")
    assert parse_element("(xy)^-1") == Word("YX")
    assert parse_element("(x y)^0") == IDENTITY
    assert same(parse_element("(x y)^3 x^-2"), Word.of("xyxyxyXX"))


def test_comm_and_z():
    assert same(parse_element("comm(x,y)"), commutator(Word("x"), Word("y")))
    assert parse_element("comm(x,y)") == Word("XYxy")
    assert same(parse_element("y z(3)"), product(Word("y"), z(3, 3)))
    assert same(parse_element("z(2)^-1 y^-1 x"), product(invert(z(2, 3)), Word("Yx")))
    assert same(parse_element("comm(x, y z(2))", p=5), commutator(Word("x"), product(Word("y"), z(2, 5))),
                p=5, depths=range(4))


def test_tuples():
    u, v = parse_tuple("comm(x,y) x ; y")
    assert u == Word("XYxyx") and v == Word("y")


@pytest.mark.parametrize("text", ["x(", "x)", "q", "x^", "x^y", "z(0)", "z(x)", "comm(x)",
                                  "comm(x,y", "2"])
def test_errors(text):
    with pytest.raises(WordSyntaxError):
        parse_element(text)


def test_parse_word_rejects_nodes():
    assert parse_word("xy") == Word("xy")
    with pytest.raises(WordSyntaxError):
        parse_word("z(2)")
