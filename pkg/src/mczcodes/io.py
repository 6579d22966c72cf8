"""JSON readers and writers for fields, codes, instances, CSS artifacts, circuits and schedules.

Every ``*_to_dict`` output re-parses with the matching ``*_from_dict`` to an
equal value.  Malformed input raises :class:`ParseError` naming the offending
key.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import numpy as np

from .codes import LinearCode
from .css import CssCode
from .errors import MczError, ParseError
from .family import FamilyInstance
from .gates import LogicalGate, ModulationSpec, PhysicalGate
from .gf import FieldSpec, field_create
from .scheduler import GateSchedule, Layer


def _get(d: Any, key: str, where: str):
    if not isinstance(d, dict):
        raise ParseError(f"{where}: expected an object, got {type(d).__name__}")
    if key not in d:
        raise ParseError(f"{where}: missing key {key!r}")
    return d[key]


def _int(v, where: str) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise ParseError(f"{where}: expected an integer, got {v!r}")
    return v


def _int_list(v, where: str) -> list[int]:
    if not isinstance(v, list):
        raise ParseError(f"{where}: expected a list")
    return [_int(x, f"{where}[{i}]") for i, x in enumerate(v)]


def _matrix(v, ncols: int, where: str) -> np.ndarray:
    if not isinstance(v, list):
        raise ParseError(f"{where}: expected a list of rows")
    rows = []
    for i, r in enumerate(v):
        r = _int_list(r, f"{where}[{i}]")
        if len(r) != ncols:
            raise ParseError(f"{where}[{i}]: row length {len(r)}, expected {ncols}")
        rows.append(r)
    return np.array(rows, dtype=np.int64).reshape(len(rows), ncols)


def _elements(arr, F: FieldSpec, where: str) -> None:
    a = np.asarray(arr)
    if a.size and (a.min() < 0 or a.max() >= F.q):
        raise ParseError(f"{where}: entries must lie in [0, {F.q})")


def _wrap(fn, where: str):
    try:
        return fn()
    except ParseError:
        raise
    except (MczError, ValueError, KeyError, TypeError) as exc:
        raise ParseError(f"{where}: {exc}") from exc


# ---------------------------------------------------------------------------
# field, code, twist


def field_to_dict(F: FieldSpec) -> dict:
    return {"p": F.p, "e": F.e, "modulus": list(F.modulus)}


def field_from_dict(d) -> FieldSpec:
    p = _int(_get(d, "p", "field"), "field.p")
    e = _int(_get(d, "e", "field"), "field.e")
    mod = d.get("modulus")
    mod = None if mod is None else _int_list(mod, "field.modulus")
    return _wrap(lambda: field_create(p, e, mod), "field")


def code_to_dict(c: LinearCode) -> dict:
    return {"field": field_to_dict(c.field), "n": c.n, "gens": c.gens.tolist()}


def code_from_dict(d) -> LinearCode:
    F = field_from_dict(_get(d, "field", "code"))
    n = _int(_get(d, "n", "code"), "code.n")
    gens = _matrix(_get(d, "gens", "code"), n, "code.gens")
    _elements(gens, F, "code.gens")
    return _wrap(lambda: LinearCode(F, n, gens), "code")


def twist_to_dict(u) -> dict:
    return {"u": [int(x) for x in u]}


def twist_from_dict(d, F: FieldSpec, n: int) -> np.ndarray:
    u = np.array(_int_list(_get(d, "u", "twist"), "twist.u"), dtype=np.int64)
    if u.shape != (n,):
        raise ParseError(f"twist.u: length {u.size}, expected {n}")
    _elements(u, F, "twist.u")
    if np.any(u == 0):
        raise ParseError("twist.u: entries must be nonzero")
    return u


# ---------------------------------------------------------------------------
# instance


def instance_to_dict(inst: FamilyInstance) -> dict:
    d = {
        "code": code_to_dict(inst.code),
        "u": inst.u.tolist(),
        "group": [g.tolist() for g in inst.group],
        "logical_block": list(inst.logical_block),
        "m_max": inst.m_max,
    }
    if inst.name:
        d["name"] = inst.name
    if inst.dual_distance is not None:
        d["dual_distance"] = inst.dual_distance
    return d


def instance_from_dict(d) -> FamilyInstance:
    """Parse an instance file.  Structural checks only; use ``family.validate`` for the invariants."""
    code = code_from_dict(_get(d, "code", "instance"))
    u = twist_from_dict(d, code.field, code.n)
    group = _matrix(_get(d, "group", "instance"), code.n, "instance.group")
    for i, g in enumerate(group):
        if not np.array_equal(np.sort(g), np.arange(code.n)):
            raise ParseError(f"instance.group[{i}]: not a permutation of range({code.n})")
    block = _int_list(_get(d, "logical_block", "instance"), "instance.logical_block")
    if any(not 0 <= b < code.n for b in block) or len(set(block)) != len(block):
        raise ParseError("instance.logical_block: labels must be distinct coordinates")
    m_max = _int(_get(d, "m_max", "instance"), "instance.m_max")
    name = d.get("name", "")
    dd = d.get("dual_distance")
    dd = None if dd is None else _int(dd, "instance.dual_distance")
    return FamilyInstance(code, u, tuple(group), tuple(block), m_max, str(name), dd)


def instances_equal(a: FamilyInstance, b: FamilyInstance) -> bool:
    return instance_to_dict(a) == instance_to_dict(b)


# ---------------------------------------------------------------------------
# CSS artifact


def css_to_dict(css: CssCode) -> dict:
    return {
        "field": field_to_dict(css.field),
        "k": css.k,
        "n": css.n,
        "g1": css.g1.tolist(),
        "g0": css.g0.tolist(),
        "u_phys": css.u_phys.tolist(),
        "u_log": css.u_log.tolist(),
        "labels": {"logical": list(css.logical_labels), "physical": list(css.physical_labels)},
    }


def css_from_dict(d) -> CssCode:
    F = field_from_dict(_get(d, "field", "css"))
    k = _int(_get(d, "k", "css"), "css.k")
    n = _int(_get(d, "n", "css"), "css.n")
    g1 = _matrix(_get(d, "g1", "css"), n, "css.g1")
    g0 = _matrix(_get(d, "g0", "css"), n, "css.g0")
    if g1.shape[0] != k:
        raise ParseError(f"css.g1: {g1.shape[0]} rows, expected k = {k}")
    labels = _get(d, "labels", "css")
    log = _int_list(_get(labels, "logical", "css.labels"), "css.labels.logical")
    phys = _int_list(_get(labels, "physical", "css.labels"), "css.labels.physical")
    if len(log) != k or len(phys) != n:
        raise ParseError("css.labels: label counts do not match k and n")
    u_phys = _int_list(_get(d, "u_phys", "css"), "css.u_phys")
    u_log = _int_list(_get(d, "u_log", "css"), "css.u_log")
    if len(u_phys) != n or len(u_log) != k:
        raise ParseError("css: twist lengths do not match k and n")
    N = n + k
    if sorted(log + phys) != list(range(N)):
        raise ParseError(f"css.labels: logical and physical labels must partition range({N})")
    u = np.zeros(N, dtype=np.int64)
    u[log] = u_log
    u[phys] = u_phys
    for name, arr in (("g1", g1), ("g0", g0), ("u", u)):
        _elements(arr, F, f"css.{name}")
    if np.any(u == 0):
        raise ParseError("css: twist entries must be nonzero")
    return CssCode(F, g1, g0, u, tuple(log), tuple(phys))


# ---------------------------------------------------------------------------
# circuits and schedules


def _gate_to_dict(g) -> dict:
    if isinstance(g, LogicalGate):
        return {"gamma": g.gamma, "targets": list(g.targets)}
    return {"exponent": g.exponent, "targets": list(g.targets)}


def circuit_to_dict(gates, m: int) -> dict:
    return {"m": m, "gates": [_gate_to_dict(g) for g in gates]}


def circuit_from_dict(d) -> tuple[int, list]:
    """Returns ``(m, gates)``; gates are logical if they carry ``gamma``, physical if ``exponent``."""
    m = _int(_get(d, "m", "circuit"), "circuit.m")
    raw = _get(d, "gates", "circuit")
    if not isinstance(raw, list):
        raise ParseError("circuit.gates: expected a list")
    gates = []
    for i, g in enumerate(raw):
        where = f"circuit.gates[{i}]"
        targets = _int_list(_get(g, "targets", where), f"{where}.targets")
        if len(targets) != m:
            raise ParseError(f"{where}.targets: {len(targets)} targets, expected m = {m}")
        if "gamma" in g and "exponent" in g:
            raise ParseError(f"{where}: has both gamma and exponent")
        if "gamma" in g:
            gates.append(_wrap(lambda: LogicalGate(_int(g["gamma"], f"{where}.gamma"), tuple(targets)), where))
        elif "exponent" in g:
            gates.append(PhysicalGate(_int(g["exponent"], f"{where}.exponent"), tuple(targets)))
        else:
            raise ParseError(f"{where}: needs gamma (logical) or exponent (physical)")
    kinds = {type(g) for g in gates}
    if len(kinds) > 1:
        raise ParseError("circuit.gates: logical and physical gates mixed")
    return m, gates


def schedule_to_dict(s: GateSchedule) -> dict:
    return {
        "m": s.m,
        "layers": [
            {
                "sigmas": list(layer.sigmas),
                "S": list(layer.mod.S),
                "gamma": {str(Q): int(layer.mod.gamma[Q]) for Q in layer.mod.S},
                "m_vector": layer.mod.m_vector.tolist(),
                "gates": [_gate_to_dict(g) for g in layer.physical],
            }
            for layer in s.layers
        ],
        "source": [_gate_to_dict(g) for g in s.source],
    }


def schedule_from_dict(d) -> GateSchedule:
    m = _int(_get(d, "m", "schedule"), "schedule.m")
    raw = _get(d, "layers", "schedule")
    if not isinstance(raw, list):
        raise ParseError("schedule.layers: expected a list")
    layers = []
    for i, layer in enumerate(raw):
        where = f"schedule.layers[{i}]"
        sigmas = tuple(_int_list(_get(layer, "sigmas", where), f"{where}.sigmas"))
        if len(sigmas) != m - 1:
            raise ParseError(f"{where}.sigmas: {len(sigmas)} entries, expected m - 1 = {m - 1}")
        S = tuple(_int_list(_get(layer, "S", where), f"{where}.S"))
        graw = _get(layer, "gamma", where)
        if not isinstance(graw, dict):
            raise ParseError(f"{where}.gamma: expected an object")
        try:
            gamma = {int(k): _int(v, f"{where}.gamma") for k, v in graw.items()}
        except ValueError as exc:
            raise ParseError(f"{where}.gamma: labels must be integers") from exc
        if set(gamma) != set(S):
            raise ParseError(f"{where}.gamma: keys must match S")
        mv = np.array(_int_list(layer.get("m_vector", []), f"{where}.m_vector"), dtype=np.int64)
        mv.setflags(write=False)
        _, gates = circuit_from_dict({"m": m, "gates": _get(layer, "gates", where)})
        if any(not isinstance(g, PhysicalGate) for g in gates):
            raise ParseError(f"{where}.gates: layers hold physical gates")
        layers.append(Layer(sigmas, ModulationSpec(S, {Q: gamma[Q] for Q in S}, mv), tuple(gates)))
    _, source = circuit_from_dict({"m": m, "gates": d.get("source", [])})
    return GateSchedule(m, tuple(layers), tuple(source))


# ---------------------------------------------------------------------------
# files


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=2) + "\n"


def write_json(obj: dict, path: str | Path | None) -> str:
    """Serialise deterministically; writes to ``path`` when given and returns the text."""
    text = dumps(obj)
    if path is not None:
        Path(path).write_text(text)
    return text


def read_json(path: str | Path):
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError as exc:
        raise ParseError(f"{path}: no such file") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc
