import csv
import io
import json
import xml.etree.ElementTree as ET
from collections import Counter
from fractions import Fraction

import pytest
from gmpy2 import mpq

from eop_lab import cli
from eop_lab.reports import (
    decode_rational,
    dumps,
    emit_table,
    encode_int,
    encode_rational,
    format_multiset,
    ladder_diagram_svg,
    level_sequence,
    parse_multiset,
    report_from_json,
    report_to_json,
)
from eop_lab.superintegrable import SpectrumReport, build_case1, build_case2, spectrum_report

SVG = "{http://www.w3.org/2000/svg}"


def run(capsys, *argv):
    code = cli.run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# -- encoding ------------------------------------------------------------------


def test_rational_encoding_round_trip():
    for q in (mpq(3), mpq(-7, 12), Fraction(5, 9), mpq(2**70, 3)):
        assert decode_rational(encode_rational(q)) == q
    assert encode_rational(Fraction(4, 2)) == 2
    assert encode_int(2**63) == str(2**63)
    assert encode_int(-(2**63)) == str(-(2**63))
    assert encode_int(2**63 - 1) == 2**63 - 1


def test_multiset_notation():
    c = Counter({0: 2, 3: 1, 2: 4})
    assert format_multiset(c) == "3,2^4,0^2"
    assert parse_multiset(format_multiset(c)) == c
    assert format_multiset(Counter()) == ""


def test_report_json_round_trip():
    for sys, n in ((build_case1(2), 20), (build_case2(2, 2), 20)):
        rep = spectrum_report(sys, n)
        back = report_from_json(report_to_json(rep))
        assert back.system == rep.system and back.N_max == rep.N_max and back.p_max == rep.p_max
        assert back.levels == rep.levels
        for a, b in zip(rep.levels, back.levels):
            assert [u.u for u in a.unirreps] == [u.u for u in b.unirreps]
            assert [u.structure_values for u in a.unirreps] == [u.structure_values for u in b.unirreps]
        assert report_to_json(back) == report_to_json(rep)


def test_large_structure_values_serialised_as_strings():
    rep = spectrum_report(build_case2(4, 4), 30)
    data = json.loads(report_to_json(rep))
    values = [v for lv in data["levels"] for u in lv["unirreps"] for v in u["structure_values"]]
    big = [v for v in values if isinstance(v, str)]
    assert big, "expected values beyond the 64-bit range"
    assert all(abs(int(v)) >= 2**63 for v in big if "/" not in v)
    assert all(abs(v) < 2**63 for v in values if isinstance(v, int))


# -- tables ----------------------------------------------------------------------


def test_table_csv_case1():
    rep = spectrum_report(build_case1(2), 12)
    rows = list(csv.reader(io.StringIO(emit_table(rep, "csv").decode())))
    assert rows[0] == ["lambda", "mu", "p", "N_unirreps", "degeneracy"]
    by_key = {(r[0], r[1]): r[2:] for r in rows[1:]}
    assert by_key[("0", "0")] == ["0", "1", "1"]
    assert by_key[("1", "0")] == ["1,0^2", "3", "4"]
    assert by_key[("2", "0")] == ["2,1^2", "3", "7"]


def test_table_json_uses_count_maps():
    rep = spectrum_report(build_case2(2, 2), 0)
    data = json.loads(emit_table(rep, "json"))
    assert data["columns"] == ["lambda", "rho", "sigma", "mu", "p", "N_unirreps", "degeneracy"]
    first = data["rows"][0]
    assert first == {"lambda": -1, "rho": 1, "sigma": 1, "mu": 4, "p": {"0": 1}, "N_unirreps": 1, "degeneracy": 1}


def test_empty_report_is_header_only():
    empty = SpectrumReport(build_case1(2), -10, 0, [])
    assert emit_table(empty, "csv").decode() == "lambda,mu,p,N_unirreps,degeneracy\r\n"
    assert emit_table(empty, "text").decode().count("\n") == 1
    assert json.loads(emit_table(empty, "json"))["rows"] == []


def test_tables_are_deterministic():
    a = emit_table(spectrum_report(build_case2(2, 2), 30), "csv")
    b = emit_table(spectrum_report(build_case2(2, 2), 30), "csv")
    assert a == b


def test_level_sequence_text():
    rep = spectrum_report(build_case1(2), 5)
    assert level_sequence(rep) == "-4, -2, 0, 2^2, 4^3, 6^4, 8^5, 10^6"


def test_dumps_rejects_unknown_types():
    with pytest.raises(TypeError):
        dumps({"x": object()})


# -- diagram ------------------------------------------------------------------------


def test_diagram_structure_m2():
    root = ET.fromstring(ladder_diagram_svg(2, 8))
    assert root.attrib["version"] == "1.1"
    levels = root.findall(f"{SVG}line[@class='level']")
    energies = [int(l.attrib["data-energy"]) for l in levels]
    assert energies[0] == 0
    assert energies == [0] + [2 * (nu + 3) for nu in range(9)]
    ys = {int(l.attrib["data-energy"]): float(l.attrib["y1"]) for l in levels}
    # height is linear in energy
    assert ys[0] - ys[6] == pytest.approx(3 * (ys[6] - ys[8]))
    chains = root.findall(f"{SVG}g[@class='chain']")
    assert len(chains) == 3
    arrows = [len(g.findall(f"{SVG}line[@class='raise']")) for g in chains]
    assert arrows == [3, 2, 2]
    assert all(len(g.findall(f"{SVG}line[@class='continuation']")) == 1 for g in chains)


# -- command line ------------------------------------------------------------------------


def test_cli_ladder_json(capsys):
    code, out, _ = run(capsys, "ladder", "--m", "2", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["coefficient_squared"]["-3"] == 48
    assert data["coefficient_squared"]["0"] == 96
    assert data["coefficient_squared"]["1"] == 336
    assert data["kernel"] == [-3, 1, 2]
    assert data["chains"][0][:3] == [-3, 0, 3]


def test_cli_spectrum_text(capsys):
    code, out, _ = run(capsys, "spectrum", "--case", "1", "--m", "2", "--n-max", "10")
    assert code == 0
    assert "levels: -4, -2, 0, 2^2, 4^3, 6^4, 8^5, 10^6" in out


def test_cli_spectrum_json_round_trips(capsys):
    code, out, _ = run(capsys, "spectrum", "--case", "2", "--m1", "2", "--m2", "2", "--n-max", "8", "--format", "json")
    assert code == 0
    assert report_to_json(report_from_json(out)) == out


def test_cli_tables_csv_and_out_file(capsys, tmp_path):
    target = tmp_path / "t.csv"
    code, out, _ = run(capsys, "tables", "--case", "1", "--m", "4", "--n-max", "12", "--format", "csv",
                       "--out", str(target))
    assert code == 0 and out == ""
    assert target.read_text().startswith("lambda,mu,p,N_unirreps,degeneracy")


def test_cli_byte_identical_reruns(capsys):
    argv = ("unirreps", "--case", "2", "--m1", "2", "--m2", "2", "--p-max", "1", "--format", "json")
    first = run(capsys, *argv)[1]
    assert first and run(capsys, *argv)[1] == first


@pytest.mark.parametrize("cmd", ["eop", "potential", "pha-check"])
def test_cli_one_d_commands_pass(capsys, cmd):
    code, out, _ = run(capsys, cmd, "--m", "2")
    assert code == 0 and out


def test_cli_diagram(capsys):
    code, out, _ = run(capsys, "diagram", "--m", "2")
    assert code == 0
    assert ET.fromstring(out.encode()).tag == f"{SVG}svg"


@pytest.mark.parametrize("argv", [
    ["ladder", "--m", "3"],
    ["ladder"],
    ["spectrum", "--case", "2", "--m1", "2", "--m2", "4"],
    ["spectrum", "--case", "2", "--m1", "2"],
    ["bogus"],
    ["diagram", "--m", "2", "--format", "csv"],
    ["pha-check", "--m", "2", "--nu-max", "1"],
    ["spectrum", "--case", "1", "--m", "2", "--p-max", "1"],
])
def test_cli_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err


def test_cli_verification_failure_exit(capsys, monkeypatch):
    from eop_lab.errors import VerificationError

    def boom(args):
        raise VerificationError("c†c = Q(H)", "ψ-_0", "tampered")

    monkeypatch.setitem(cli.HANDLERS, "ladder", boom)
    code, out, _ = run(capsys, "ladder", "--m", "2")
    assert code == 1
    assert json.loads(out) == {"status": "fail", "identity": "c†c = Q(H)", "probe": "ψ-_0", "detail": "tampered"}
