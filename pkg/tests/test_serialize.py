import json

import numpy as np
import pytest

from biframe.frames import FrameFamily
from biframe.generate import random_biframe, random_element, random_operator
from biframe.hmodule import ModuleSpace
from biframe.serialize import (
    SchemaError,
    SystemFile,
    element_from_json,
    element_to_json,
    matrix_from_json,
    matrix_to_json,
    operator_from_json,
    operator_to_json,
    parse_system,
    system_from_json,
    system_to_json,
    write_system,
)


def test_matrix_round_trip(rng):
    a = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    np.testing.assert_array_equal(matrix_from_json(matrix_to_json(a), (3, 3)), a)


def test_matrix_format():
    assert matrix_to_json([[1j, 2]]) == [[[0.0, 1.0], [2.0, 0.0]]]


def test_element_and_operator_round_trip(rng):
    sp = ModuleSpace(2, 3)
    x = random_element(rng, sp)
    T = random_operator(rng, sp)
    assert element_from_json(json.loads(json.dumps(element_to_json(x)))).allclose(x, 0)
    assert operator_from_json(json.loads(json.dumps(operator_to_json(T)))).allclose(T, 0)


def test_system_round_trip(rng, tmp_path):
    sp = ModuleSpace(2, 2)
    pair = random_biframe(rng, sp, 3)
    system = SystemFile.from_pair(pair, operators={"P": random_operator(rng, sp)}, tolerances={"eq_tol": 1e-8})
    write_system(system, tmp_path / "s.json")
    assert parse_system(tmp_path / "s.json") == system


def test_minimal_file(tmp_path):
    p = tmp_path / "m.json"
    p.write_text(json.dumps({
        "d": 1, "m": 2,
        "xi": [{"d": 1, "m": 2, "blocks": [[[[1, 0]]], [[[0, 0]]]]},
               {"d": 1, "m": 2, "blocks": [[[[0, 0]]], [[[1, 0]]]]}],
    }))
    s = parse_system(p)
    assert len(s.xi) == 2 and s.upsilon is None


def test_ragged_row_reports_path():
    row3 = [[1, 0], [0, 0], [0, 0]]
    obj = {"d": 2, "m": 1, "xi": [{"d": 2, "m": 1, "blocks": [[row3, [[0, 0], [1, 0]]]]}]}
    with pytest.raises(SchemaError) as exc:
        system_from_json(obj)
    assert exc.value.path == "$.xi[0].blocks[0][0]"


@pytest.mark.parametrize("bad,path", [
    ({"d": 1, "m": 1, "xi": [{"d": 1, "m": 1, "blocks": [[[[float("nan"), 0]]]]}]}, "$.xi[0].blocks[0][0][0]"),
    ({"d": 1, "m": 1, "xi": [{"d": 1, "m": 2, "blocks": []}]}, "$.xi[0]"),
    ({"d": 0, "m": 1, "xi": []}, "$.d"),
    ({"d": 1, "m": 1, "xi": []}, "$.xi"),
    ({"d": 1, "m": 1, "xi": [{"d": 1, "m": 1, "blocks": [[[[1, 0]]]]}], "upsilon": []}, "$.upsilon"),
    ({"d": 1, "m": 1, "xi": [{"d": 1, "m": 1, "blocks": [[[[1, 0]]]]}],
      "operators": {"P": {"d": 1, "m": 1, "big": [[[1, 0], [0, 0]]]}}}, "$.operators.P.big[0]"),
    ({"d": 1, "m": 1, "xi": [{"d": 1, "m": 1, "blocks": [[[[1, 0]]]]}],
      "tolerances": {"eq_tol": 1.0}}, "$.tolerances.eq_tol"),
])
def test_schema_errors(bad, path):
    with pytest.raises(SchemaError) as exc:
        system_from_json(bad)
    assert exc.value.path == path


def test_example_34_fixture(fixtures_dir):
    s = parse_system(fixtures_dir / "ex34.json")
    np.testing.assert_array_equal([x.mat[0].real for x in s.xi], [[1, 2], [3, 4]])
    np.testing.assert_array_equal([x.mat[0].real for x in s.upsilon], [[1, 1], [1, -1]])


def test_missing_file(tmp_path):
    with pytest.raises(OSError):
        parse_system(tmp_path / "nope.json")


def test_invalid_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(SchemaError):
        parse_system(p)
