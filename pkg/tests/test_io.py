import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from mczcodes import io
from mczcodes.codes import reed_solomon
from mczcodes.errors import ParseError
from mczcodes.gates import LogicalGate, PhysicalGate
from mczcodes.gf import field_create
from mczcodes.scheduler import all_to_all, compile_circuit


def roundtrip(d):
    return json.loads(io.dumps(d))


def test_field_roundtrip():
    for pe in [(2, 1), (2, 4), (5, 2), (3, 3)]:
        F = field_create(*pe)
        assert io.field_from_dict(roundtrip(io.field_to_dict(F))) == F


def test_field_default_modulus_optional():
    assert io.field_from_dict({"p": 2, "e": 4}) == field_create(2, 4)


def test_code_roundtrip():
    c = reed_solomon(field_create(3, 2), 4)
    back = io.code_from_dict(roundtrip(io.code_to_dict(c)))
    assert back.field == c.field and np.array_equal(back.gens, c.gens)


def test_instance_roundtrip(rs16, rs25):
    for p in (rs16, rs25):
        d = io.instance_to_dict(p.inst)
        back = io.instance_from_dict(roundtrip(d))
        assert io.instances_equal(back, p.inst)
        assert io.instance_to_dict(back) == d


def test_css_roundtrip(rs8):
    d = io.css_to_dict(rs8.css)
    back = io.css_from_dict(roundtrip(d))
    assert io.css_to_dict(back) == d
    assert np.array_equal(back.u, rs8.css.u)


def test_circuit_roundtrip(rs16):
    gates = all_to_all(rs16.inst, 3, gamma=7)
    m, back = io.circuit_from_dict(roundtrip(io.circuit_to_dict(gates, 3)))
    assert m == 3 and back == gates
    phys = [PhysicalGate(3, (2, 4, 5))]
    assert io.circuit_from_dict(io.circuit_to_dict(phys, 3)) == (3, phys)


def test_schedule_roundtrip(rs16):
    s = compile_circuit(rs16.inst, rs16.css, rs16.sf, all_to_all(rs16.inst, 3))
    d = io.schedule_to_dict(s)
    back = io.schedule_from_dict(roundtrip(d))
    assert back.key() == s.key()
    assert io.schedule_to_dict(back) == d


@given(st.lists(st.tuples(st.integers(1, 15), st.integers(0, 1), st.integers(0, 1), st.integers(0, 1)), max_size=10))
def test_circuit_roundtrip_property(raw):
    gates = [LogicalGate(g, (a, b, c)) for g, a, b, c in raw]
    assert io.circuit_from_dict(roundtrip(io.circuit_to_dict(gates, 3))) == (3, gates)


# --- malformed input ----------------------------------------------------------------


def bad_code(**kw):
    d = {"field": {"p": 2, "e": 2, "modulus": [1, 1, 1]}, "n": 3, "gens": [[1, 1, 1]]}
    d.update(kw)
    return d


@pytest.mark.parametrize("d", [
    bad_code(gens=[[1, 1]]),
    bad_code(gens=[[1, 1, 7]]),
    bad_code(gens=[[1, 1, 1], [1, 1, 1]]),
    bad_code(n="3"),
    bad_code(field={"p": 4, "e": 1}),
    bad_code(field={"p": 2, "e": 3, "modulus": [0, 0, 1, 1]}),
    {"n": 3, "gens": []},
    [1, 2, 3],
])
def test_code_parse_errors(d):
    with pytest.raises(ParseError):
        io.code_from_dict(d)


def test_instance_parse_errors(rs8):
    good = io.instance_to_dict(rs8.inst)
    for key, val in [("u", [1] * 7), ("u", [0] * 8), ("group", [[0] * 8]), ("logical_block", [0, 0]),
                     ("m_max", 2.5)]:
        d = dict(good)
        d[key] = val
        with pytest.raises(ParseError):
            io.instance_from_dict(d)


def test_circuit_parse_errors():
    for d in [
        {"m": 2, "gates": [{"gamma": 1, "targets": [0]}]},
        {"m": 2, "gates": [{"targets": [0, 1]}]},
        {"m": 2, "gates": [{"gamma": 1, "exponent": 1, "targets": [0, 1]}]},
        {"m": 2, "gates": [{"gamma": 1, "targets": [0, 1]}, {"exponent": 1, "targets": [0, 1]}]},
        {"gates": []},
        {"m": 2, "gates": {}},
    ]:
        with pytest.raises(ParseError):
            io.circuit_from_dict(d)


def test_schedule_parse_errors(rs8):
    s = compile_circuit(rs8.inst, rs8.css, rs8.sf, all_to_all(rs8.inst, 2))
    d = io.schedule_to_dict(s)
    d["layers"][0]["gamma"] = {"5": 1}
    with pytest.raises(ParseError):
        io.schedule_from_dict(d)
    d = io.schedule_to_dict(s)
    d["layers"][0]["sigmas"] = [0, 0]
    with pytest.raises(ParseError):
        io.schedule_from_dict(d)


def test_read_json_errors(tmp_path):
    with pytest.raises(ParseError):
        io.read_json(tmp_path / "missing.json")
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(ParseError):
        io.read_json(p)


def test_write_is_deterministic(tmp_path, rs8):
    a = io.write_json(io.instance_to_dict(rs8.inst), tmp_path / "a.json")
    b = io.write_json(io.instance_to_dict(rs8.inst), tmp_path / "b.json")
    assert a == b == (tmp_path / "a.json").read_text()
