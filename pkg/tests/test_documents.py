import json

import pytest
from hypothesis import given, strategies as st

from folnf.cone import STANDARD_LINES, construct_example
from folnf.documents import (parse_form, parse_form_document, parse_map,
                             parse_normal_form, parse_transcript, serialize_form, serialize_map,
                             serialize_normal_form, serialize_transcript)
from folnf.errors import (DegreeOverflowError, DocumentError, ExpressionSyntaxError,
                          UndeclaredGeneratorError)
from folnf.field import gen
from folnf.jets import Jet2, OneFormJet
from folnf.perturb import random_identity_tangent_map
from folnf.reduction import reduce_to_normal_form

from test_jets import jets

t1, t2, t3 = gen(1), gen(2), gen(3)


def test_minimal_document():
    text = '{"schema": "folnf.form/1", "order": 4, "generators": [], "P": [[0, 2, "1"]], "Q": []}'
    eta = parse_form(text)
    assert eta == OneFormJet(Jet2({(0, 2): 1}, 4), Jet2.zero(4))


def test_coefficient_canonicalized():
    text = '{"schema": "folnf.form/1", "order": 3, "generators": ["t1"], "P": [[1, 1, "t1/(1-t1)"]], "Q": []}'
    eta = parse_form(text)
    assert eta.P[(1, 1)] == t1 / (1 - t1)
    assert '"-t1/(t1 - 1)"' in serialize_form(eta)


@pytest.mark.parametrize("body, exc", [
    ('"P": [[1, 1, "t9"]]', UndeclaredGeneratorError),
    ('"P": [[3, 2, "1"]]', DegreeOverflowError),
    ('"P": [[1, 1, "t1 +"]]', ExpressionSyntaxError),
    ('"P": [[1, 1, "1"], [1, 1, "2"]]', DocumentError),
    ('"P": [[1, "1"]]', DocumentError),
])
def test_error_classes(body, exc):
    text = '{"schema": "folnf.form/1", "order": 4, "generators": ["t1", "t2"], ' + body + "}"
    with pytest.raises(exc) as info:
        parse_form(text)
    assert info.value.exit_code == 4


def test_json_syntax_error_has_line_and_position():
    with pytest.raises(ExpressionSyntaxError) as info:
        parse_form('{\n  "schema": "folnf.form/1",\n  "order": 4,,\n}')
    assert info.value.line == 3 and info.value.position == 13


def test_schema_mismatch():
    with pytest.raises(DocumentError):
        parse_map('{"schema": "folnf.form/1", "order": 3}')


@given(st.integers(0, 6).flatmap(lambda N: st.tuples(jets(N), jets(N))),
       st.dictionaries(st.sampled_from(["label", "note"]), st.text(max_size=8), max_size=2))
def test_form_round_trip(PQ, meta):
    eta = OneFormJet(*PQ)
    text = serialize_form(eta, metadata=meta)
    doc = parse_form_document(text)
    assert doc.form == eta and doc.metadata == meta
    assert serialize_form(doc) == text


def test_map_round_trip():
    phi = random_identity_tangent_map(11, 4, 8)
    text = serialize_map(phi)
    assert parse_map(text) == phi
    assert serialize_map(parse_map(text)) == text


def test_normal_form_and_transcript_round_trip():
    omega = construct_example((t1, t2, 1 - t1 - t2), STANDARD_LINES, [t3], 6)
    eta = omega.scale(2)
    nf, tr = reduce_to_normal_form(eta)
    text = serialize_normal_form(nf)
    assert parse_normal_form(text) == nf
    doc = json.loads(text)
    assert doc["b_cutoff"] == 3 and doc["field"]["transcendence_degree"] == 3
    ttext = serialize_transcript(tr)
    assert parse_transcript(ttext) == tr
    assert serialize_transcript(parse_transcript(ttext)) == ttext
