"""Lattice file loading, serialization round trips and the CLI."""

import json

import pytest

from meadows import rings
from meadows.cli import main
from meadows.errors import ParseError, ValidationFailed
from meadows.latfile import (
    ideal_from_dict,
    lattice_from_dict,
    lattice_to_dict,
    load_lattice_file,
    value_from_json,
    value_to_json,
)
from meadows.meadow import build_meadow

SHIPPED = [
    "lattices/chain_z_q.json",
    "lattices/z.json",
    "lattices/z6.json",
    "lattices/z2z2.json",
    "lattices/field_diamond.json",
    "lattices/example_4_14.json",
    "lattices/glue_zp_towers.json",
]


@pytest.mark.parametrize("path", SHIPPED)
def test_shipped_files_load_and_build(path):
    dl = load_lattice_file(path)
    build_meadow(dl, mode="verify")


def test_ambiguous_files_fail_at_build():
    from meadows.errors import AmbiguousInverse

    for path in ("lattices/two_q_ambiguous.json", "lattices/two_z3_ambiguous.json"):
        dl = load_lattice_file(path)
        with pytest.raises(AmbiguousInverse):
            build_meadow(dl, mode="verify")


def test_chain_file_is_the_expected_meadow():
    m = build_meadow(load_lattice_file("lattices/chain_z_q.json"), mode="verify")
    assert m.inverse(m.element("z", 2)) == m.element("q", "1/2")


def test_missing_zero_node_is_a_parse_error():
    with pytest.raises(ParseError):
        lattice_from_dict({"nodes": {"x": {"ring": "Z"}}, "order": []})


def test_zero_node_must_be_minimum():
    data = {
        "nodes": {"z": {"ring": "zero"}, "q": {"ring": "Q"}},
        "order": [["q", "z"]],
    }
    with pytest.raises(ParseError):
        lattice_from_dict(data)


def test_hom_on_non_cover_pair_rejected():
    data = {
        "nodes": {"t": {"ring": {"mod": 4}}, "m": {"ring": {"mod": 2}}, "a": {"ring": "zero"}},
        "order": [["a", "m"], ["m", "t"]],
        "homs": [{"from": "t", "to": "a", "map": {"table": [[0, None]]}}],
    }
    with pytest.raises(ParseError):
        lattice_from_dict(data)


def test_validation_failure_carries_report(tmp_path):
    bad = {
        "nodes": {"t": {"ring": {"mod": 4}}, "b": {"ring": {"mod": 2}}, "a": {"ring": "zero"}},
        "order": [["a", "b"], ["b", "t"]],
        "homs": [{"from": "t", "to": "b", "map": {"table": [[0, 0], [1, 1], [2, 1], [3, 1]]}}],
    }
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    with pytest.raises(ValidationFailed) as exc:
        load_lattice_file(path)
    assert exc.value.report.failures()


def test_lattice_dict_round_trip():
    dl = load_lattice_file("lattices/field_diamond.json")
    data = lattice_to_dict(dl)
    dl2 = lattice_from_dict(data)
    m1 = build_meadow(dl, mode="verify")
    m2 = build_meadow(dl2, mode="verify")
    assert m1.operation_table("add") == m2.operation_table("add")


def test_value_json_round_trip():
    cases = [
        (rings.Q, "2/3"),
        (rings.Q, 4),
        (rings.Mod(6), 4),
        (rings.Product((rings.Mod(2), rings.Mod(3))), [1, 2]),
        (rings.Poly(rings.Mod(3)), [1, 0, 2]),
    ]
    for desc, raw in cases:
        v = value_from_json(desc, raw)
        assert value_from_json(desc, value_to_json(v)) == v


def test_ideal_defaults(tmp_path):
    m = build_meadow(load_lattice_file("lattices/z6.json"), mode="verify")
    ideal = ideal_from_dict({}, m)  # all zero ideals, whole at the bottom
    from meadows.morphisms import WholeRing, ZeroIdeal

    assert isinstance(ideal.spec_at("z6"), ZeroIdeal)
    assert isinstance(ideal.spec_at("a"), WholeRing)


# -- CLI ---------------------------------------------------------------------


def test_cli_eval_division_by_zero(capsys):
    assert main(["eval", "lattices/chain_z_q.json", "1/0"]) == 0
    assert capsys.readouterr().out.strip() == "a"


def test_cli_eval_with_binding(capsys):
    code = main(["eval", "lattices/chain_z_q.json", "x + a", "--bind", "x=5@z"])
    assert code == 0
    assert capsys.readouterr().out.strip() == "a"


def test_cli_eval_inverse(capsys):
    assert main(["eval", "lattices/chain_z_q.json", "2^-1"]) == 0
    assert capsys.readouterr().out.strip() == "1/2 @ q"


def test_cli_check_pass_and_fail(capsys):
    assert main(["check", "lattices/z6.json", "--suite", "CM", "--exhaustive"]) == 0
    capsys.readouterr()
    assert main(["check", "lattices/two_q_ambiguous.json", "--suite", "CM"]) == 1
    err = capsys.readouterr().err
    assert "AmbiguousInverse" in err


def test_cli_check_json_error(capsys):
    code = main(["--json", "check", "lattices/two_q_ambiguous.json", "--suite", "CM"])
    assert code == 1
    payload = json.loads(capsys.readouterr().err)
    assert payload["error"] == "AmbiguousInverse"


def test_cli_check_cil_fails_on_z6(capsys):
    assert main(["check", "lattices/z6.json", "--suite", "CIL", "--exhaustive"]) == 1
    out = capsys.readouterr().out
    assert "FAIL" in out


def test_cli_inverse_table(capsys):
    assert main(["table", "lattices/z6.json", "--op", "inverse"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 7
    by_element = dict(line.split(" ^-1 = ") for line in lines)
    assert by_element["0 @ z6"] == "a"
    assert by_element["2 @ z6"] == "a"
    assert by_element["3 @ z6"] == "a"
    assert by_element["4 @ z6"] == "a"
    assert by_element["5 @ z6"] == "5 @ z6"
    assert by_element["1 @ z6"] == "1 @ z6"


def test_cli_decompose_emits_loadable_lattice(capsys):
    assert main(["decompose", "lattices/z6.json"]) == 0
    data = json.loads(capsys.readouterr().out)
    dl = lattice_from_dict(data)
    m = build_meadow(dl, mode="verify")
    assert m.size() == 7


def test_cli_quotient(capsys):
    code = main(["quotient", "lattices/z6.json", "--ideal", "lattices/z6_ideal_2.json"])
    assert code == 0
    data = json.loads(capsys.readouterr().out)
    assert data["tag"] == "meadow"
    assert data["lattice"]["nodes"]["z6"]["ring"] == {"mod": 2}


def test_cli_quotient_example_4_14(capsys):
    code = main(
        ["quotient", "lattices/example_4_14.json", "--ideal", "lattices/example_4_14_ideal.json"]
    )
    assert code == 0
    data = json.loads(capsys.readouterr().out)
    assert sorted(data["lattice"]["nodes"]) == ["M0", "M1", "M5", "a"]


def test_cli_error_exit_code(capsys):
    assert main(["eval", "lattices/chain_z_q.json", "x + 1"]) == 1
    assert "UnboundVariable" in capsys.readouterr().err
