import io

import pytest
from hypothesis import given

from ualoc.corpus import corpus, corpus_text
from ualoc.errors import ParseError
from ualoc.fileformat import parse_algebra, render_algebra

from .conftest import algebras


def test_corpus_text_parses():
    assert tuple(parse_algebra(corpus_text())) == corpus()


@given(algebras(max_size=4))
def test_roundtrip(A):
    assert parse_algebra(render_algebra(A)) == [A]
    assert parse_algebra(io.StringIO(render_algebra([A, A]))) == [A, A]


def test_comments_and_layout():
    text = """
    # a two-element semilattice
    algebra S   # trailing comment
    size 2
    op meet 2
      0 0
      0 1
    end
    """
    (A,) = parse_algebra(text)
    assert A.op("meet").table == (0, 0, 0, 1)


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        ("algebra X\nsize 0\nend\n", 2, "size"),
        ("algebra X\nsize 2\nop f 1 0 1\nop f 1 1 0\nend\n", 4, "duplicate"),
        ("algebra X\nsize 2\nop f 2 0 1 1\nend\n", 4, "entries"),
        ("algebra X\nsize 2\nop f 1 0 1 1\nend\n", 3, ""),
        ("algebra X\nsize 2\nop f 1 0 2\nend\n", 3, "range"),
        ("algebra X\nsiz 2\n", 2, ""),
        ("algebra X\nsize 2\nop f 1 0 1\n", 3, "end of input"),
    ],
)
def test_errors_carry_line_numbers(text, line, fragment):
    with pytest.raises(ParseError) as exc:
        parse_algebra(text)
    assert exc.value.line == line
    assert fragment in str(exc.value)
