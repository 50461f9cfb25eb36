import json
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from trisectkit.corpus import CORPUS, corpus_files, s1xb3
from trisectkit.errors import DanglingReference, DiagramSyntaxError, VersionMismatch
from trisectkit.fileformat import (
    EXTENSIONS,
    _decode_value,
    _encode_value,
    kind_of,
    parse,
    read_file,
    serialize,
    write_file,
)
from trisectkit.invariants import summary
from trisectkit.ptri import band_stabilize
from trisectkit.triheeg import candidate_arcs

CORPUS_DIR = Path(__file__).resolve().parent.parent / "corpus"
SLUGS = [e.slug for e in CORPUS]


@pytest.mark.parametrize("slug", SLUGS)
def test_round_trip_is_byte_identical(slug):
    entry = next(e for e in CORPUS if e.slug == slug)
    D = entry.build()
    data = serialize(D, {"comment": entry.comment})
    f = parse(data)
    assert f.kind == kind_of(D)
    assert f.diagram == D
    assert serialize(f.diagram, f.metadata) == data
    assert data.endswith(b"\n") and data.count(b"\n") == 1


def test_corpus_on_disk_matches_the_builders():
    files = corpus_files()
    on_disk = {p.name for p in CORPUS_DIR.iterdir()}
    assert on_disk == set(files)
    for name, data in files.items():
        assert (CORPUS_DIR / name).read_bytes() == data, name


@pytest.mark.parametrize("name", sorted(corpus_files()))
def test_stored_expectations_match_recomputation(name):
    f = read_file(CORPUS_DIR / name)
    assert Path(name).suffix == EXTENSIONS[f.kind]
    assert f.metadata["expected"] == summary(f.diagram)


def test_band_record_survives_a_round_trip(tmp_path):
    D = s1xb3()
    curves = [c for fam in D.families for c in fam]
    E = band_stabilize(D, 1, candidate_arcs(D.surfaces[2], curves)[0])
    path = tmp_path / "banded.ptd"
    write_file(path, E)
    back = read_file(path).diagram
    assert back == E
    assert back.metadata["band"] == E.metadata["band"]


plain = st.recursive(
    st.none() | st.booleans() | st.integers(-50, 50) | st.text(max_size=4),
    lambda inner: st.lists(inner, max_size=3)
    | st.tuples(inner, inner)
    | st.dictionaries(st.integers(-5, 5), inner, max_size=3),
    max_leaves=12,
)
hashable = st.recursive(st.integers(-9, 9), lambda inner: st.tuples(inner, inner), max_leaves=4)


@given(plain)
def test_tagged_values_round_trip(x):
    enc = _encode_value(x)
    assert _decode_value(json.loads(json.dumps(enc))) == x


@given(st.frozensets(hashable, max_size=4))
def test_tagged_sets_round_trip(x):
    assert _decode_value(json.loads(json.dumps(_encode_value(x)))) == x


def _doc(slug):
    return json.loads(corpus_files()[slug])


def test_version_mismatch_is_located():
    doc = _doc("unknot.lnk")
    doc["format_version"] = 2
    text = json.dumps(doc, sort_keys=True)
    with pytest.raises(VersionMismatch) as info:
        parse(text)
    assert info.value.line == 1
    assert text[info.value.column - 1] == "2"


def test_dangling_visit_is_located():
    text = '{"format_version": 1, "kind": "link",\n "components": [[1, -3]], "signs": [1]}\n'
    with pytest.raises(DanglingReference) as info:
        parse(text)
    assert info.value.line == 2
    assert text.splitlines()[1][info.value.column - 1 :].startswith("-3")


def test_dangling_curve_vertex():
    doc = _doc("s1xs2.thd")
    doc["families"][0]["curves"][0]["vertices"][0] = 10**6
    with pytest.raises(DanglingReference):
        parse(json.dumps(doc))


@pytest.mark.parametrize(
    "text",
    [
        "not json",
        "[]",
        '{"kind": "link"}',
        '{"format_version": 1, "kind": "torus"}',
        '{"format_version": 1, "kind": "link", "components": [["x"]], "signs": []}',
        b"\xff\xfe",
    ],
)
def test_malformed_documents(text):
    with pytest.raises(DiagramSyntaxError):
        parse(text)
