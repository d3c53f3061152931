import json

import pytest
from hypothesis import given, settings, strategies as st

from nervelab import io
from nervelab.cat import contractible_groupoid, cyclic_group, group_as_category
from nervelab.nerves import hc_nerve
from nervelab.scat import discrete_scat, group_nerve_scat
from nervelab.sset import standard_simplex

DELTA3 = standard_simplex(3)


@settings(max_examples=40, deadline=None)
@given(st.sets(st.sampled_from([c for k in range(4) for c in DELTA3.cells[k]]), min_size=1))
def test_random_subcomplex_round_trip(seed_cells):
    X = DELTA3.subcomplex(DELTA3.closure(seed_cells))
    doc = io.sset_to_json(X)
    Y = io.sset_from_json(json.loads(io.dumps(doc)))
    assert Y.counts() == X.counts()
    assert io.dumps(io.sset_to_json(Y)) == io.dumps(doc)


@pytest.mark.parametrize("x", [0, "a", (0, 1), ("id", "*"), ((), (0, 1)), "0", "[1]", "true"])
def test_id_encoding_round_trips(x):
    assert io.decode_id(io.encode_id(x)) == x
    assert io.key_id(io.id_key(x)) == x


def test_category_round_trip():
    C = contractible_groupoid([0, 1, 2])
    assert io.dumps(io.cat_to_json(io.cat_from_json(io.cat_to_json(C)))) == io.dumps(io.cat_to_json(C))


def test_scat_round_trip_preserves_nerve():
    C = group_nerve_scat(cyclic_group(2), cap=2)
    D = io.scat_from_json(json.loads(io.dumps(io.scat_to_json(C))))
    assert hc_nerve(D, 2).value.counts() == hc_nerve(C, 2).value.counts()
    E = discrete_scat(group_as_category(cyclic_group(3)), cap=2)
    assert io.dumps(io.scat_to_json(io.scat_from_json(io.scat_to_json(E)))) == io.dumps(io.scat_to_json(E))


def _bad(mutate):
    doc = io.sset_to_json(standard_simplex(2))
    mutate(doc)
    with pytest.raises(io.SchemaError) as info:
        io.sset_from_json(doc)
    return info.value.field


def test_errors_point_at_field():
    assert _bad(lambda d: d.update(cap=-1)) == "$.cap"
    assert _bad(lambda d: d.pop("cells")).startswith("$")
    key = next(k for k, v in io.sset_to_json(standard_simplex(2))["faces"].items() if len(v) == 3)
    assert _bad(lambda d: d["faces"][key].pop()) == f"$.faces.{key}"


def test_wrong_schema_rejected():
    with pytest.raises(io.SchemaError):
        io.sset_from_json({"schema": "scat/v1"})


def test_load_rejects_invalid_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{nope", encoding="utf-8")
    with pytest.raises(io.SchemaError):
        io.load(str(p))
