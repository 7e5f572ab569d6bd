import json

import numpy as np
import pytest

from ophh.errors import DomainError, InputError
from ophh.functions import (
    Affine,
    Cubic,
    ExampleFamily,
    Power,
    Quadratic,
    evaluate,
    function_from_json,
    function_to_json,
    load_function,
    parse_function,
)


def test_eval_examples():
    assert evaluate(Power(0.5), 4.0) == 2.0
    assert evaluate(ExampleFamily(a=1, b=1, c=0, s=0.5), 0.0) == 1.0
    assert evaluate(Cubic(), 3.0) == 27.0
    assert evaluate(Power(0.3), 0.0) == 0.0


def test_example_family_jump():
    f = ExampleFamily(a=2.0, b=3.0, c=-1.0, s=0.5)
    assert np.allclose(f(np.array([0.0, 4.0])), [2.0, 5.0])


def test_domain_errors():
    with pytest.raises(DomainError):
        evaluate(Power(0.5), -1.0)
    with pytest.raises(DomainError):
        evaluate(Cubic(), -0.1)
    assert evaluate(Quadratic(1, 0, 0), -2.0) == 4.0
    assert evaluate(Affine(2, 1), -1.0) == -1.0


@pytest.mark.parametrize("bad", [lambda: Power(0.0), lambda: Power(1.5), lambda: ExampleFamily(0, 1, 0, 1.0),
                                 lambda: Quadratic(-1, 0, 0)])
def test_parameter_invariants(bad):
    with pytest.raises(InputError):
        bad()


@pytest.mark.parametrize("f", [Power(0.5), Quadratic(1.0, -2.0, 0.5), Cubic(), ExampleFamily(1, 2, 0.5, 0.3),
                               Affine(1.0, 0.0)])
def test_json_round_trip(f):
    obj = json.loads(json.dumps(function_to_json(f)))
    assert function_from_json(obj) == f


def test_json_field_names_fixed():
    assert function_to_json(Power(0.5)) == {"kind": "power", "params": {"s": 0.5}}
    assert function_to_json(Quadratic(1, 2, 3)) == {
        "kind": "quadratic", "params": {"alpha": 1, "beta": 2, "gamma": 3}}
    assert function_to_json(Cubic()) == {"kind": "cubic", "params": {}}
    assert function_to_json(ExampleFamily(1, 2, 3, 0.5))["params"] == {"a": 1, "b": 2, "c": 3, "s": 0.5}
    assert function_to_json(Affine(1, 0)) == {"kind": "affine", "params": {"m": 1, "k": 0}}


@pytest.mark.parametrize("obj", [
    {"kind": "sine", "params": {}},
    {"kind": "power", "params": {"t": 1}},
    {"params": {}},
    {"kind": "power", "params": {"s": 2.0}},
    {"kind": "power", "params": {"s": "x"}},
])
def test_json_errors(obj):
    with pytest.raises(InputError):
        function_from_json(obj)


def test_load_function(tmp_path):
    p = tmp_path / "f.json"
    p.write_text(json.dumps({"kind": "power", "params": {"s": 0.25}}))
    assert load_function(p) == Power(0.25)
    assert parse_function(str(p)) == Power(0.25)
    p.write_text("{not json")
    with pytest.raises(InputError, match="f.json"):
        load_function(p)


def test_parse_function():
    assert parse_function("power", 0.5) == Power(0.5)
    assert parse_function("power:0.25") == Power(0.25)
    assert parse_function("quadratic") == Quadratic(1, 0, 0)
    assert parse_function("quadratic:2,1,-1") == Quadratic(2, 1, -1)
    assert parse_function("identity") == Affine(1, 0)
    assert parse_function("constant") == Quadratic(0, 0, 1)
    assert parse_function("example1:1,1,0.5,0.5") == ExampleFamily(1, 1, 0.5, 0.5)
    with pytest.raises(InputError):
        parse_function("power")
    with pytest.raises(InputError):
        parse_function("nope")
