import pytest

from latkit.constructors import boolean, chain, fixture, free_distributive, linear_sum, product, two_by_z_window
from latkit.core import is_isomorphic
from latkit.dsl import parse_construction
from latkit.errors import CapExceeded, NotConvex, ParseError


@pytest.mark.parametrize("text, expected", [
    ("4", chain(4)),
    ("chain(3)", chain(3)),
    ("boolean(3)", boolean(3)),
    ("fd(3)", free_distributive(3)),
    ("product(chain(2), chain(4))", product(chain(2), chain(4))),
    ("product(2, 2, 2)", boolean(3)),
    ("linsum(1, boolean(3), product(chain(2), chain(4)))",
     linear_sum([chain(1), boolean(3), product(chain(2), chain(4))])),
    ("n5", fixture("n5")),
    ("two_by_z(-2, 2)", two_by_z_window(-2, 2).lattice),
    ("double(boolean(2), region=[\"a1\"])", fixture("n5")),
    ("double(chain(3), region=[1], interval=true)", chain(4)),
    ("quotient(fd(3), [[\"b v (a^c)\", \"b\"]])", None),
    ("lexsum([[0, 1]], boolean(2), chain(3))", linear_sum([boolean(2), chain(3)])),
])
def test_expressions(text, expected):
    L = parse_construction(text)
    if expected is not None:
        assert is_isomorphic(L, expected) is not None


def test_quotient_expression_size():
    assert parse_construction('quotient(fd(3), [["a^b^c", "a v b v c"]])').n == 1


def test_dual_window():
    L = parse_construction("two_by_z(0, 3, dual=true)")
    assert L.n == 8


@pytest.mark.parametrize("text, pos", [
    ("chain(", 6),
    ("product(2 2)", 10),
    ("chain(3) extra", 9),
    ("wibble(3)", 0),
    ("chain(3) $", 9),
])
def test_parse_errors_carry_positions(text, pos):
    with pytest.raises(ParseError) as exc:
        parse_construction(text)
    assert exc.value.position == pos


def test_argument_errors():
    with pytest.raises(ParseError):
        parse_construction("product(2)")
    with pytest.raises(ParseError):
        parse_construction("boolean(boolean(2))")
    with pytest.raises(ParseError):
        parse_construction('double(boolean(2), region=["nope"])')


def test_semantic_errors_pass_through():
    with pytest.raises(NotConvex):
        parse_construction("double(chain(3), region=[0, 2])")
    with pytest.raises(CapExceeded):
        parse_construction("chain(100000)")
