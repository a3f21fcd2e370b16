import pytest

from ptvirasoro import cli
from ptvirasoro.cli import (
    SpecFileError,
    SuiteOptions,
    SuiteReport,
    emit_report,
    main,
    parse_surface_spec,
    run_suite,
)
from ptvirasoro.cubicpt import cubic_model
from ptvirasoro.hilbsurf import load_surface
from ptvirasoro.insertions import ParseError, parse_insertion

PLANE_TEXT = """\
# the projective plane
name = plane
h20 = 0
h11 = 1
c1 = [3]
intersection = [[1]]
pairing20_02 = []
c1sq = 9
c2 = 3
"""


# ---- insertion parser ----


@pytest.mark.parametrize(
    "text,col",
    [("ch2(H", 6), ("ch2(Q)", 5), ("ch(H)", 1), ("ch2(H)**", 8)],
)
def test_parse_errors_carry_location(text, col):
    with pytest.raises(ParseError) as err:
        parse_insertion(text, cubic_model())
    assert err.value.pos == col - 1
    assert f"column {col}" in str(err.value)


def test_parse_accepts_coefficients_and_sums():
    m = cubic_model()
    assert parse_insertion("ch3(2*H + H2)", m) == parse_insertion("2*ch3(H) + 3*ch3(L)", m)
    assert parse_insertion("1/2*ch4(1) - ch4(1)", m) == parse_insertion("-1/2*ch4(1)", m)


# ---- reports ----


def test_empty_report_is_header_only():
    assert emit_report(SuiteReport("x"), "tsv") == b"id\tanchor\texpected\tcomputed\tstatus\n"


def test_tsv_row_format():
    out = emit_report(run_suite("cubic-table"), "tsv").decode().splitlines()
    assert out[0] == "id\tanchor\texpected\tcomputed\tstatus"
    assert "cubic-table/ch4H\tline-class table\t21/4 q\t21/4 q\tpass" in out
    assert all(len(line.split("\t")) == 5 for line in out)


def test_text_report_shows_failures():
    r = SuiteReport("demo")
    r.add("a", "anchor", 1, 1)
    r.add("b", "anchor", 1, 2)
    text = emit_report(r).decode()
    assert "[pass] demo/a" in text and "[FAIL] demo/b" in text
    assert "computed: 2" in text
    assert text.rstrip().endswith("demo: 1 passed, 1 failed")
    assert r.first_failure().id == "demo/b"


def test_unknown_format_rejected():
    with pytest.raises(ValueError):
        emit_report(SuiteReport("x"), "json")


def test_tsv_cells_have_no_tabs():
    r = SuiteReport("x")
    r.add("a\tb", "c\nd", "e", "e")
    line = emit_report(r, "tsv").decode().splitlines()[1]
    assert line.split("\t")[:2] == ["x/a b", "c d"]


# ---- surface spec files ----


def test_parse_plane_spec():
    spec = parse_surface_spec(PLANE_TEXT)
    assert spec.name == "plane" and spec.c1sq == 9
    assert load_surface(spec).integrate(load_surface(spec).c(2)) == 3


@pytest.mark.parametrize(
    "edit,needle",
    [
        (lambda t: t + "genus = 0\n", "unknown key 'genus'"),
        (lambda t: t + "c2 = 3\n", "duplicate key 'c2'"),
        (lambda t: t.replace("c2 = 3\n", ""), "missing keys c2"),
        (lambda t: t.replace("h11 = 1", "h11 = 1/2"), "non-negative integer"),
        (lambda t: t.replace("c1 = [3]", "c1 = 3"), "bracketed list"),
        (lambda t: t.replace("c1sq = 9", "c1sq = nine"), "not a rational number"),
        (lambda t: t + "oops\n", "expected 'key = value'"),
    ],
)
def test_spec_file_errors(edit, needle):
    with pytest.raises(SpecFileError) as err:
        parse_surface_spec(edit(PLANE_TEXT), "s.txt")
    assert needle in str(err.value)
    assert str(err.value).startswith("s.txt")


# ---- entry point ----


def test_exit_zero_on_pass(capsys):
    assert main(["verify", "operator-identities"]) == 0
    assert "0 failed" in capsys.readouterr().out


def test_exit_one_on_failure(monkeypatch, capsys):
    def broken(opt):
        r = SuiteReport("broken")
        r.add("x", "demo", 1, 2)
        return r

    monkeypatch.setitem(cli.SUITES, "operator-identities", broken)
    assert main(["verify", "operator-identities"]) == 1
    assert "first failure: broken/x" in capsys.readouterr().err


@pytest.mark.parametrize(
    "argv",
    [["verify", "no-such-suite"], ["verify", "cubic-table", "--max-order", "2"], ["frobnicate"], []],
)
def test_exit_two_on_bad_input(argv, capsys):
    assert main(argv) == 2


def test_exit_two_on_bad_spec_file(tmp_path, capsys):
    p = tmp_path / "bad.txt"
    p.write_text(PLANE_TEXT.replace("c2 = 3", "c2 = 25"))
    assert main(["verify", "surface-n1", "--spec", str(p)]) == 2
    assert "hrr" in capsys.readouterr().err
    assert main(["verify", "surface-n1", "--spec", str(tmp_path / "missing.txt")]) == 2


def test_spec_file_suite(tmp_path, capsys):
    p = tmp_path / "plane.txt"
    p.write_text(PLANE_TEXT)
    assert main(["verify", "surface-n1", "--spec", str(p), "--format", "tsv"]) == 0
    out = capsys.readouterr().out
    assert "plane/hrr\tHRR identities\tTrue\tTrue\tpass" in out


def test_output_is_deterministic(capsys):
    argv = ["verify", "disconnected", "--seed", "4", "--format", "tsv"]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    assert capsys.readouterr().out == first


def test_fuzz_names_carry_seed():
    names = [s.name for s in cli.surface_specs(SuiteOptions(fuzz=3, seed=9))]
    assert names == ["fuzz0-seed9", "fuzz1-seed9", "fuzz2-seed9"]


def test_unknown_suite_in_library_call():
    with pytest.raises(KeyError):
        run_suite("nope")
