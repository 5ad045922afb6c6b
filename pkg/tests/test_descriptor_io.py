import json

import pytest

from realspherical.catalog import catalog, catalog_names, catalog_path
from realspherical.descriptor_io import (
    DescriptorError,
    descriptor_from_dict,
    descriptor_to_dict,
    parse_descriptor,
)
from realspherical.spherical import validate


def _load(name):
    return json.loads(catalog_path(name).read_text())


@pytest.mark.parametrize("name", catalog_names())
def test_shipped_files_match_catalog(name):
    d = parse_descriptor(catalog_path(name))
    assert validate(d) == []
    assert d == catalog(name)


@pytest.mark.parametrize("name", catalog_names())
def test_dict_roundtrip(name):
    d = catalog(name)
    assert descriptor_from_dict(json.loads(json.dumps(descriptor_to_dict(d)))) == d


def test_generator_not_vanishing_on_a_h_is_validation_error(tmp_path):
    obj = _load("group_sl2")
    obj["monoid_generators"] = [["2", "0"]]
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(obj))
    with pytest.raises(DescriptorError) as err:
        parse_descriptor(p)
    assert err.value.kind == "validation"
    assert any("monoid generator 0" in m for m in err.value.diagnostics)


def test_missing_sigma_u_is_parse_error(tmp_path):
    obj = _load("sl2_gk")
    del obj["sigma_u"]
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(obj))
    with pytest.raises(DescriptorError) as err:
        parse_descriptor(p)
    assert err.value.kind == "parse"
    assert "sigma_u" in str(err.value)


def test_json_syntax_error_reports_position(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{\n  "name": "x",\n  oops\n}')
    with pytest.raises(DescriptorError) as err:
        parse_descriptor(p)
    assert err.value.kind == "parse"
    assert "line 3" in str(err.value)


def test_missing_file(tmp_path):
    with pytest.raises(DescriptorError) as err:
        parse_descriptor(tmp_path / "nope.json")
    assert err.value.kind == "parse"


def test_explicit_datum_form():
    obj = {
        "name": "explicit_a1",
        "root_datum": {"simple_roots": [["2"]], "positive_roots": [[["2"], 1]], "gram": [["1"]]},
        "a_H": [],
        "sigma_u": [0],
        "monoid_generators": [["2"]],
    }
    d = descriptor_from_dict(obj)
    assert d.datum.rank == 1 and validate(d) == []


def test_catalog_unknown_name_lists_entries():
    with pytest.raises(KeyError) as err:
        catalog("nope")
    for name in catalog_names():
        assert name in str(err.value)


def test_catalog_alias_and_case():
    assert catalog("pair_sl2") == catalog("group_sl2")
    assert catalog("SL2_GK") == catalog("sl2_gk")
