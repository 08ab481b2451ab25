import json
import math

import numpy as np
import pytest

from qgroups import fixtures
from qgroups.finite import FiniteQuantumGroup
from qgroups.graded import DiscSemigroup
from qgroups.groups import FiniteTableGroup
from qgroups.jsonio import dumps


@pytest.mark.parametrize("name", fixtures.names())
def test_bundled_files_match_constructors(name):
    assert fixtures.bundled_json(name) == json.loads(dumps(fixtures.generated()[name]))


def test_regenerate_is_byte_identical(tmp_path):
    written = fixtures.regenerate(tmp_path)
    assert sorted(p.stem for p in written) == fixtures.names()
    for p in written:
        shipped = (fixtures.data_dir() / p.name).read_text(encoding="utf-8")
        assert p.read_text(encoding="utf-8") == shipped


def test_load_document_kinds():
    assert isinstance(fixtures.bundled("c_s3"), FiniteQuantumGroup)
    assert isinstance(fixtures.bundled("s3_table"), FiniteTableGroup)
    assert isinstance(fixtures.bundled("disc_semigroup"), DiscSemigroup)
    with pytest.raises(KeyError):
        fixtures.bundled_json("nope")
    with pytest.raises(ValueError):
        fixtures.load_document({"graded": "torus"})


def test_corrupted_differs_in_one_constant(c_s3):
    bad = fixtures.corrupted(c_s3)
    diffs = [(i, k) for i in range(c_s3.dim) for k in set(c_s3.comult[i]) | set(bad.comult[i])
             if c_s3.comult[i].get(k) != bad.comult[i].get(k)]
    assert len(diffs) == 1


def test_dumps_floats():
    assert dumps(0.1) == "0.10000000000000001\n"
    assert dumps(1.0) == "1.0\n"
    assert dumps(1e300) == "1.0000000000000001e+300\n"
    assert dumps([math.nan, math.inf]) == "[null, null]\n"
    assert dumps(np.float64(2.5)) == "2.5\n"
    assert json.loads(dumps({"x": 1 / 3}))["x"] == 1 / 3


def test_dumps_layout():
    assert dumps({"a": [1, 2], "b": None, "c": True}) == '{"a": [1, 2], "b": null, "c": true}\n'
    long = {"rows": [[str(i)] * 8 for i in range(10)]}
    text = dumps(long)
    assert text.count("\n") > 5
    assert all(len(line) <= 100 for line in text.splitlines())
    assert json.loads(text) == long
    assert dumps("λ") == '"λ"\n'
    with pytest.raises(TypeError):
        dumps(object())
