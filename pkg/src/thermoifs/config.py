"""JSON run configuration.

Example::

    {
      "system": {
        "domain": [0.0, 1.0],
        "maps": [
          {"kind": "affine", "ratio": 0.1, "offset": 0.0},
          {"kind": "affine", "ratio": 0.5, "offset": 0.5}
        ]
      },
      "potential": {"form": "darst-shift"},
      "alpha": 1.0,
      "numerics": {"depth": 16},
      "output": {"format": "csv"}
    }

Every numeric default lives in :data:`DEFAULT_NUMERICS`, so a config file
plus the package version fully determines a run.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field
from typing import Any

from ._tables import DEFAULT_BUDGET, BUDGET_ENV, enumeration_budget, default_depth
from .errors import InputError
from .ifs import CodedPoint, IfsSpec, MapSpec
from .thermo import PotentialSpec

DEFAULT_NUMERICS = {
    "depth": None,               # None: deepest level with <= 2**16 cylinders
    "xtol": 1e-10,
    "max_iter": 200,
    "budget": DEFAULT_BUDGET,
    "grid": 1024,
    "fd_step": 1e-4,
    "richardson": False,
    "admissibility_tol": 1e-8,
    "score_ceiling": math.log(10.0),
    "min_chain": 3,
    "staircase_level": 10,
    "scan_depth": 200,
    "block_growth": [2, 4, 8, 16],
}


@dataclass
class RunConfig:
    system: IfsSpec
    potential: PotentialSpec | None
    alpha: float | None
    numerics: dict = field(default_factory=lambda: dict(DEFAULT_NUMERICS))
    output_format: str = "csv"
    output_path: str | None = None
    point: dict | None = None

    @property
    def depth(self) -> int:
        d = self.numerics["depth"]
        return default_depth(self.system) if d is None else int(d)

    @property
    def budget(self) -> int:
        return enumeration_budget() if BUDGET_ENV in os.environ else int(self.numerics["budget"])


def _need(obj: dict, key: str, path: str):
    if not isinstance(obj, dict):
        raise InputError(f"{path}: expected an object")
    if key not in obj:
        raise InputError(f"{path}.{key}: missing")
    return obj[key]


def _number(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InputError(f"{path}: expected a number, got {value!r}")
    return float(value)


def _numbers(value, path: str) -> list[float]:
    if not isinstance(value, list):
        raise InputError(f"{path}: expected a list of numbers")
    return [_number(v, f"{path}[{i}]") for i, v in enumerate(value)]


def parse_map(obj: Any, path: str) -> MapSpec:
    kind = _need(obj, "kind", path)
    if kind == "affine":
        return MapSpec.affine(_number(_need(obj, "ratio", path), f"{path}.ratio"),
                              _number(_need(obj, "offset", path), f"{path}.offset"))
    if kind == "nonlinear":
        return MapSpec.nonlinear(*(_number(_need(obj, k, path), f"{path}.{k}")
                                   for k in ("c", "d", "e")))
    raise InputError(f"{path}.kind: unknown map kind {kind!r}")


def parse_system(obj: Any, path: str = "system") -> IfsSpec:
    maps = _need(obj, "maps", path)
    if not isinstance(maps, list):
        raise InputError(f"{path}.maps: expected a list")
    domain = _numbers(obj.get("domain", [0.0, 1.0]), f"{path}.domain")
    if len(domain) != 2:
        raise InputError(f"{path}.domain: expected [x_lo, x_hi]")
    try:
        return IfsSpec(tuple(parse_map(m, f"{path}.maps[{i}]") for i, m in enumerate(maps)),
                       tuple(domain))
    except InputError as exc:
        if str(exc).startswith(path):
            raise
        raise InputError(f"{path}: {exc}") from None


def parse_potential(obj: Any, path: str = "potential") -> PotentialSpec:
    form = _need(obj, "form", path)
    if form == "geometric":
        return PotentialSpec.geometric()
    if form == "scaled-geometric":
        return PotentialSpec.scaled(_number(_need(obj, "t", path), f"{path}.t"))
    if form == "delta-geometric":
        return PotentialSpec.delta_geometric()
    if form == "darst-shift":
        return PotentialSpec.darst()
    if form == "symbolic":
        return PotentialSpec.symbolic(_numbers(_need(obj, "values", path), f"{path}.values"))
    if form == "bernoulli":
        probs = _numbers(_need(obj, "probabilities", path), f"{path}.probabilities")
        try:
            return PotentialSpec.bernoulli(probs)
        except InputError as exc:
            raise InputError(f"{path}.probabilities: {exc}") from None
    if form == "linear-combination":
        return PotentialSpec.combination(
            _number(_need(obj, "coeff_phi", path), f"{path}.coeff_phi"),
            _number(_need(obj, "coeff_psi_base", path), f"{path}.coeff_psi_base"),
            parse_potential(_need(obj, "base", path), f"{path}.base"),
        )
    raise InputError(f"{path}.form: unknown potential form {form!r}")


def parse_point(obj: Any, path: str = "point") -> CodedPoint | str:
    """A coded point, or the string ``"block"`` for the built-in block point."""
    if obj == "block" or (isinstance(obj, dict) and obj.get("kind") == "block"):
        return "block"
    prefix = obj.get("prefix", []) if isinstance(obj, dict) else None
    if prefix is None or not isinstance(prefix, list):
        raise InputError(f"{path}.prefix: expected a list of symbols")
    tail = _need(obj, "tail", path)
    if isinstance(tail, int):
        return CodedPoint.constant(tail, prefix)
    if not isinstance(tail, list) or not all(isinstance(s, int) for s in tail):
        raise InputError(f"{path}.tail: expected a symbol or a list of symbols")
    return CodedPoint.periodic(tail, prefix)


def parse_config(data: Any) -> RunConfig:
    if not isinstance(data, dict):
        raise InputError("config: expected a JSON object")
    system = parse_system(_need(data, "system", "config"))
    potential = parse_potential(data["potential"]) if "potential" in data else None
    alpha = _number(data["alpha"], "alpha") if "alpha" in data else None
    numerics = dict(DEFAULT_NUMERICS)
    given = data.get("numerics", {})
    if not isinstance(given, dict):
        raise InputError("numerics: expected an object")
    for key, value in given.items():
        if key not in DEFAULT_NUMERICS:
            raise InputError(f"numerics.{key}: unknown setting")
        numerics[key] = value
    output = data.get("output", {})
    fmt = output.get("format", "csv")
    if fmt not in ("csv", "json"):
        raise InputError(f"output.format: expected 'csv' or 'json', got {fmt!r}")
    return RunConfig(system, potential, alpha, numerics, fmt, output.get("path"),
                     data.get("point"))


def load_config(path: str) -> RunConfig:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return parse_config(data)
