import json
import random
import string

import pytest

from weilreg.errors import SessionSyntaxError, UseBeforeDeclare
from weilreg.sessions import (
    Command,
    MapDecl,
    emit_report,
    format_session,
    parse_report,
    parse_session,
    run_session,
    strip_timing,
)

CREMONA = """\
var x y
variety X = affine(x, y)
map s : X -> X = (1/x, 1/y)
group Z2 = finite(e, sig | sig*sig = e)
action inv2 : Z2 x X -> X = {sig: (1/x, 1/y)}
cmd breg s
cmd xreg inv2
cmd regularize inv2
"""

BLOWUP = """\
var s u t
variety X = affine(u, t)
group G = Ga(s)
action rho : G x X -> X = (u+s, u*t/(u+s))
cmd xreg rho
"""


# -- parsing ------------------------------------------------------------------------


def test_parse_simple_session():
    ast = parse_session("var x y\nvariety X = affine(x,y)\nmap s : X -> X = (1/x, 1/y)\n")
    assert len(ast.statements) == 3
    decl = ast.statements[2]
    assert isinstance(decl, MapDecl)
    assert decl.name == "s"
    assert decl.coord_exprs == ("1/x", "1/y")


def test_parse_command_node():
    ast = parse_session(CREMONA)
    cmd = ast.statements[5]
    assert isinstance(cmd, Command)
    assert cmd.keyword == "breg"
    assert cmd.names == ("s",)


def test_unclosed_tuple_is_positioned_syntax_error():
    with pytest.raises(SessionSyntaxError) as err:
        parse_session("var x y\nvariety X = affine(x, y)\nmap s : X -> X = (1/x,\n")
    assert err.value.line == 3
    assert err.value.expected


def test_use_before_declare():
    with pytest.raises(UseBeforeDeclare):
        parse_session("var x\nvariety X = affine(x)\ncmd breg undeclared_map\n")


def test_kind_mismatch_is_diagnosed():
    with pytest.raises(SessionSyntaxError):
        parse_session("var x\nvariety X = affine(x)\ncmd breg X\n")


def test_undeclared_coordinate_rejected():
    with pytest.raises(UseBeforeDeclare):
        parse_session("variety X = affine(x, y)\n")


def test_parser_totality_fuzz():
    rng = random.Random(20240817)
    alphabet = string.ascii_letters + string.digits + "()+-*/^,:=|{}#><_ \n'"
    for _ in range(300):
        text = "".join(rng.choice(alphabet) for _ in range(rng.randrange(0, 120)))
        try:
            parse_session(text)
        except (SessionSyntaxError, UseBeforeDeclare):
            pass  # positioned diagnostics are the only acceptable failures


def test_pretty_print_round_trip_is_idempotent():
    for source in (CREMONA, BLOWUP):
        ast = parse_session(source)
        printed = format_session(ast)
        again = format_session(parse_session(printed))
        assert printed == again
        assert parse_session(printed) == ast


# -- execution -----------------------------------------------------------------------


def test_run_xreg_command_record():
    records = run_session(parse_session(BLOWUP))
    record = records[-1]
    assert record["command"] == "cmd xreg rho"
    assert record["status"] == "ok"
    assert record["payload"]["complement"] == ["u"]


def test_run_regularize_record():
    records = run_session(parse_session(CREMONA))
    record = records[-1]
    assert record["status"] == "ok"
    assert record["payload"]["presentation"] == ["u1*u3-1", "u2*u4-1"]
    assert record["payload"]["action"]["sig"] == ["u3", "u4", "u1", "u2"]


def test_run_atlas_separated_failure_record():
    text = BLOWUP.replace("cmd xreg rho", "cmd atlas rho S=(0, 1)")
    records = run_session(parse_session(text))
    record = records[-1]
    assert record["status"] == "fail"
    assert record["payload"]["separated"] == "fail"
    assert "separated_witness" in record["payload"]


def test_domain_failures_do_not_abort_session():
    text = (
        "var s u t\n"
        "variety X = affine(u, t)\n"
        "group G = Ga(s)\n"
        "action bad : G x X -> X = (u+s, u*t/(u+2*s))\n"
        "cmd xreg bad\n"
        "cmd closedgraph bad at (1)\n"
    )
    records = run_session(parse_session(text))
    assert [r["status"] for r in records] == ["ok", "ok", "ok", "fail", "error", "error"]
    assert records[3]["payload"]["reason"] == "NotAnAction"


def test_parallel_execution_preserves_record_order():
    sequential = run_session(parse_session(CREMONA))
    parallel = run_session(parse_session(CREMONA), parallel=True)
    assert [r["command"] for r in sequential] == [r["command"] for r in parallel]
    assert [r["payload"] for r in sequential] == [r["payload"] for r in parallel]


# -- reports --------------------------------------------------------------------------


def test_emit_empty_report():
    assert emit_report([], session="") == '{\n  "version": 1,\n  "session": "",\n  "records": []\n}\n'


def test_report_round_trip():
    records = run_session(parse_session(BLOWUP), session_name="blowup")
    text = emit_report(records, session="blowup")
    doc = parse_report(text)
    assert doc["records"] == records
    assert doc["version"] == 1 and doc["session"] == "blowup"


def test_text_format_one_row_per_record():
    records = run_session(parse_session(BLOWUP))
    text = emit_report(records, fmt="text")
    lines = text.strip().splitlines()
    assert len(lines) == len(records) + 2  # header + rule
    assert lines[0].startswith("command")


def test_determinism_byte_identical_reports():
    a = strip_timing(parse_report(emit_report(run_session(parse_session(CREMONA)))))
    b = strip_timing(parse_report(emit_report(run_session(parse_session(CREMONA)))))
    assert json.dumps(a) == json.dumps(b)
