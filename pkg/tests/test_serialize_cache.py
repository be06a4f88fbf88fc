import json
import logging
from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from tlint import cache as cache_mod
from tlint.cache import CACHE_VERSION, Cache, make_key
from tlint.exactmath import Matrix, Poly, RationalFunction
from tlint.serialize import (
    decode_element,
    decode_matrix,
    decode_poly,
    decode_value,
    document,
    dumps,
    encode,
    encode_element,
    encode_matrix,
    encode_poly,
    encode_value,
    ring_tag,
)
from tlint.tlcore import BETA, TLElement, e, enumerate_diagrams, one
from tlint.transfer import braid_element, build_transfer

fractions = st.fractions(min_value=-50, max_value=50, max_denominator=9)
polys = st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(-2, 2)), fractions,
                        max_size=5).map(lambda d: Poly.from_terms(("u", "beta", "q"), list(d.items())))


def no_floats(obj):
    if isinstance(obj, float):
        return False
    if isinstance(obj, dict):
        return all(no_floats(v) for v in obj.values())
    if isinstance(obj, list):
        return all(no_floats(v) for v in obj)
    return True


@given(polys)
def test_poly_round_trip(p):
    d = encode_poly(p)
    assert decode_poly(json.loads(dumps(d))) == p
    qi = d["vars"].index("q") if "q" in d["vars"] else None
    assert d["laurent"] == (qi is not None and any(t[qi] < 0 for t in d["terms"]))
    assert no_floats(d)


@given(fractions)
def test_scalar_round_trip(x):
    assert decode_value(encode_value(x)) == x


@given(polys, polys.filter(bool))
def test_rational_function_round_trip(p, r):
    f = RationalFunction(p, r)
    assert decode_value(json.loads(dumps(encode_value(f)))) == f


@given(st.dictionaries(st.sampled_from(enumerate_diagrams(3)), fractions, max_size=5))
def test_element_round_trip(terms):
    a = TLElement(3, terms, BETA)
    assert decode_element(json.loads(dumps(encode_element(a)))) == a


def test_matrix_round_trip():
    M = Matrix.from_dense([[Poly.var("beta"), 0], [Fraction(1, 2), 3]])
    assert decode_matrix(json.loads(dumps(encode_matrix(M)))) == M


def test_ring_tags():
    assert ring_tag(one(2)) == "Z[beta]"
    assert ring_tag(e(2, 1, 3)) == "Z"
    assert ring_tag(e(2, 1).scale(Fraction(1, 2))) == "Q(beta)"
    assert ring_tag(build_transfer(2).element) == "Z[u,beta]"
    assert ring_tag(braid_element(2)) == "Z[q,1/q]"


def test_canonical_text_is_sorted_and_compact():
    assert dumps({"b": 1, "a": [1, 2]}) == '{"a":[1,2],"b":1}'
    doc = document("tl transfer", encode(build_transfer(2)))
    assert doc["schema"] == 1 and doc["result"]["kind"] == "TLElement"
    assert no_floats(doc)


def test_encode_handles_fraction_keys():
    assert encode({Fraction(1, 2): True, Fraction(3): None}) == {"1/2": True, "3": None}


def test_cache_key_is_stable():
    assert make_key("op", {"n": 3, "beta": "1/2"}) == make_key("op", {"beta": "1/2", "n": 3})
    assert make_key("op", {"n": 3}) != make_key("op", {"n": 4})


def test_cache_round_trip_and_rejection(tmp_path):
    c = Cache(tmp_path)
    calls = []

    def compute():
        calls.append(1)
        return {"value": [1, 2]}

    assert c.get_put("op", {"n": 1}, compute) == {"value": [1, 2]}
    assert c.get_put("op", {"n": 1}, compute) == {"value": [1, 2]}
    assert len(calls) == 1 and c.hits == 1
    key = make_key("op", {"n": 1})
    entry = json.loads(c.path(key).read_text())
    assert entry["version"] == CACHE_VERSION
    entry["payload"] = {"value": [9]}
    c.path(key).write_text(json.dumps(entry))
    assert c.load(key) is None
    entry["version"] = "old"
    c.path(key).write_text(json.dumps(entry))
    assert c.load(key) is None
    assert not list(tmp_path.glob(".tmp-*"))


def test_unwritable_cache_falls_back(tmp_path, caplog):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    c = Cache(blocker / "sub")
    with caplog.at_level(logging.WARNING):
        assert c.get_put("op", {}, lambda: {"ok": True}) == {"ok": True}
    assert "not writable" in caplog.text


def test_default_dir(monkeypatch, tmp_path):
    monkeypatch.delenv("TLINT_CACHE_DIR", raising=False)
    monkeypatch.setenv("XDG_CACHE_HOME", str(tmp_path))
    assert cache_mod.default_dir() == tmp_path / "tlint"
