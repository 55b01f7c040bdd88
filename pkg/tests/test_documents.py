import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from evolab.documents import AlgebraDocument, corpus_names, load_corpus, load_corpus_entry
from evolab.errors import ParseError
from evolab.field import GF, QQ
from evolab.render import format_subspace, format_vector, parse_subspace, parse_vector
from evolab.linalg import span


def test_corpus_round_trip():
    docs = load_corpus()
    assert len(docs) == len(corpus_names()) >= 10
    for name, doc in docs.items():
        assert doc.name == name and doc.description
        assert AlgebraDocument.parse(doc.render()) == doc


def test_corpus_entry():
    doc = load_corpus_entry("regular_2d")
    assert doc.field == QQ and doc.matrix == ((1, 0), (0, 1))


def test_prime_field_document():
    doc = AlgebraDocument.parse('{"schema": 1, "field": {"GF": 5}, "dim": 2, "matrix": [["1", -1], [7, "1/2"]]}')
    assert doc.field == GF(5) and doc.matrix == ((1, 4), (2, 3))
    assert AlgebraDocument.parse(doc.render()) == doc


@pytest.mark.parametrize(
    "text",
    [
        "{not json",
        "[]",
        '{"field": "R", "matrix": [[0]]}',
        '{"field": {"GF": 4}, "matrix": [[0]]}',
        '{"field": "Q", "matrix": [[0, 1]]}',
        '{"field": "Q", "dim": 2, "matrix": [[0]]}',
        '{"field": "Q", "matrix": [["x"]]}',
        '{"schema": 2, "field": "Q", "matrix": [[0]]}',
        '{"field": "Q", "matrix": [[0]], "basis_labels": ["a", "b"]}',
    ],
)
def test_malformed_documents(text):
    with pytest.raises(ParseError):
        AlgebraDocument.parse(text)


fractions = st.fractions(max_denominator=20).filter(lambda x: abs(x.numerator) < 1000)


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(fractions, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_document_round_trip(rows):
    doc = AlgebraDocument(QQ, tuple(tuple(r) for r in rows), "x", tuple(f"b{i}" for i in range(len(rows))))
    again = AlgebraDocument.parse(doc.render())
    assert again == doc
    assert json.loads(doc.render())["schema"] == 1


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(fractions, min_size=n, max_size=n), max_size=n)))
def test_subspace_strings_round_trip(rows):
    n = len(rows[0]) if rows else 3
    s = span(QQ, rows, n)
    assert parse_subspace(QQ, format_subspace(s), n) == s


def test_vector_strings():
    assert format_vector(QQ, (1, -1, 0)) == "e1-e2"
    assert parse_vector(GF(5), "e1+2e2", 3) == (1, 2, 0)
    assert format_vector(QQ, (0, 0)) == "0"
    for bad in ["e1e2", "x", "e4", "1+e1"]:
        with pytest.raises(ParseError):
            parse_vector(QQ, bad, 3)
