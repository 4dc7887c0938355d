import json

import pytest

from thermoifs import InputError
from thermoifs.config import DEFAULT_NUMERICS, load_config, parse_config, parse_point

BASE = {
    "system": {"maps": [{"kind": "affine", "ratio": 0.1, "offset": 0.0},
                        {"kind": "affine", "ratio": 0.5, "offset": 0.5}]},
    "potential": {"form": "darst-shift"},
    "alpha": 1.0,
}


def test_roundtrip_defaults():
    cfg = parse_config(BASE)
    assert cfg.system.ratios() == (0.1, 0.5)
    assert cfg.numerics == DEFAULT_NUMERICS
    assert cfg.depth == 16 and cfg.output_format == "csv"


@pytest.mark.parametrize("patch,where", [
    ({"system": {"maps": [{"kind": "affine", "ratio": 0.1, "offset": 0.0},
                          {"kind": "affine", "ratio": "x", "offset": 0.5}]}},
     "system.maps[1].ratio"),
    ({"potential": {"form": "nope"}}, "potential.form"),
    ({"numerics": {"dpeth": 3}}, "numerics.dpeth"),
    ({"output": {"format": "xml"}}, "output.format"),
    ({"potential": {"form": "scaled-geometric"}}, "potential.t"),
])
def test_field_errors(patch, where):
    with pytest.raises(InputError, match=where.replace("[", r"\[").replace("]", r"\]")):
        parse_config({**BASE, **patch})


def test_json_syntax_error_location(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{\n  "system": ,\n}')
    with pytest.raises(InputError, match="line 2"):
        load_config(str(p))


def test_potential_forms():
    for pot in ({"form": "geometric"}, {"form": "delta-geometric"},
                {"form": "symbolic", "values": [-1.0, -2.0]},
                {"form": "bernoulli", "probabilities": [0.25, 0.75]},
                {"form": "linear-combination", "coeff_phi": 0.5, "coeff_psi_base": 1.0,
                 "base": {"form": "darst-shift"}}):
        parse_config({**BASE, "potential": pot})


def test_points():
    assert parse_point("block") == "block"
    p = parse_point({"prefix": [1], "tail": [0, 1]})
    assert p.symbols(4) == (1, 0, 1, 0)
    assert parse_point({"tail": 0}).eventually_constant
    with pytest.raises(InputError):
        parse_point({"tail": "x"})
