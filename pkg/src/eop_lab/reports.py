"""Serialisation of spectrum tables, unirrep listings and level diagrams.

Exact rationals travel through JSON as ``"num/den"`` strings and integers
outside the signed 64-bit range as decimal strings, so a report written
here and read back with :func:`report_from_json` compares equal to the
original. Every emitter is deterministic: the same report gives the same
bytes.
"""

from __future__ import annotations

import csv
import io
import json
from collections import Counter
from fractions import Fraction

from gmpy2 import mpq, mpz

from .errors import DomainError
from .exact_poly import require_even_m, to_exact
from .ladder import unirrep_partition
from .superintegrable import Level, SpectrumReport, Unirrep, build_case1, build_case2, table_key

FORMATS = ("text", "json", "csv", "svg")
_INT64 = 2**63


# -- scalar encoding ---------------------------------------------------------


def encode_int(n: int):
    n = int(n)
    return str(n) if abs(n) >= _INT64 else n


def decode_int(v) -> int:
    return int(v)


def encode_rational(q):
    q = to_exact(q)
    if q.denominator == 1:
        return encode_int(q.numerator)
    return f"{int(q.numerator)}/{int(q.denominator)}"


def decode_rational(v) -> mpq:
    return mpq(v) if isinstance(v, str) else mpq(int(v))


def jsonable(obj):
    """Recursively map exact numbers to their lossless JSON form."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, float)):
        return obj
    if isinstance(obj, (int, type(mpz(0)))):
        return encode_int(obj)
    if isinstance(obj, (Fraction, type(mpq(0)))):
        return encode_rational(obj)
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(jsonable(obj), indent=2, ensure_ascii=False) + "\n"


# -- p multisets -------------------------------------------------------------


def format_multiset(ps: Counter) -> str:
    """``Counter({1: 2, 0: 3})`` -> ``"1^2,0^3"``; largest ``p`` first."""
    parts = []
    for p in sorted(ps, reverse=True):
        parts.append(str(p) if ps[p] == 1 else f"{p}^{ps[p]}")
    return ",".join(parts)


def parse_multiset(text: str) -> Counter:
    out = Counter()
    for part in filter(None, text.split(",")):
        p, _, k = part.partition("^")
        out[int(p)] += int(k) if k else 1
    return out


# -- spectrum reports --------------------------------------------------------


def _system_dict(sys) -> dict:
    return {"case": sys.case, "m1": sys.m1, "m2": sys.m2}


def _system_from_dict(d):
    return build_case1(d["m1"]) if d["m2"] is None else build_case2(d["m1"], d["m2"])


def unirrep_to_dict(u: Unirrep) -> dict:
    return {
        "family": u.family,
        "params": {k: v for k, v in u.params},
        "energy": u.energy,
        "p": u.p,
        "dimension": u.dimension,
        "u": u.u,
        "structure_values": list(u.structure_values),
    }


def unirrep_from_dict(d: dict) -> Unirrep:
    params = []
    for k, v in d["params"].items():
        params.append((k, v if k == "u" else decode_int(v)))
    return Unirrep(
        d["family"], tuple(params), decode_int(d["energy"]),
        decode_rational(d["u"]), tuple(decode_rational(v) for v in d["structure_values"]),
    )


def report_to_dict(report: SpectrumReport) -> dict:
    return {
        "system": _system_dict(report.system),
        "N_max": report.N_max,
        "p_max": report.p_max,
        "levels": [
            {
                "N": lv.N,
                "energy": lv.energy,
                "degeneracy": lv.degeneracy,
                "oracle_degeneracy": lv.oracle_degeneracy,
                "N_unirreps": lv.n_unirreps,
                "p_multiset": {str(p): c for p, c in sorted(lv.p_multiset.items(), reverse=True)},
                "unirreps": [unirrep_to_dict(u) for u in lv.unirreps],
            }
            for lv in report.levels
        ],
    }


def report_to_json(report: SpectrumReport) -> str:
    return dumps(report_to_dict(report))


def report_from_json(text: str) -> SpectrumReport:
    d = json.loads(text)
    levels = [
        Level(decode_int(lv["N"]), [unirrep_from_dict(u) for u in lv["unirreps"]],
              decode_int(lv["oracle_degeneracy"]))
        for lv in d["levels"]
    ]
    return SpectrumReport(_system_from_dict(d["system"]), decode_int(d["N_max"]),
                          decode_int(d["p_max"]), levels)


# -- unirrep table layout ----------------------------------------------------


def table_columns(sys) -> list[str]:
    if sys.m2 is None:
        return ["lambda", "mu", "p", "N_unirreps", "degeneracy"]
    return ["lambda", "rho", "sigma", "mu", "p", "N_unirreps", "degeneracy"]


def table_rows(report: SpectrumReport) -> list[dict]:
    sys = report.system
    rows = []
    for lv in report.levels:
        key = table_key(sys, lv.N)
        if sys.m2 is None:
            head = {"lambda": key[0], "mu": key[1]}
        else:
            head = {"lambda": key[0], "rho": key[2], "sigma": key[3], "mu": key[1]}
        rows.append({**head, "p": lv.p_multiset, "N_unirreps": lv.n_unirreps,
                     "degeneracy": lv.degeneracy})
    return rows


def emit_table(report: SpectrumReport, fmt: str = "text") -> bytes:
    """Tabulate ``report`` level by level in the layout of the unirrep tables."""
    cols = table_columns(report.system)
    rows = table_rows(report)
    if fmt == "json":
        out = [{**r, "p": {str(p): c for p, c in sorted(r["p"].items(), reverse=True)}} for r in rows]
        return dumps({"columns": cols, "rows": out}).encode()
    flat = [[format_multiset(r[c]) if c == "p" else str(r[c]) for c in cols] for r in rows]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\r\n")
        w.writerow(cols)
        w.writerows(flat)
        return buf.getvalue().encode()
    if fmt == "text":
        return _text_table(cols, flat).encode()
    raise DomainError(f"tables cannot be written as {fmt!r}")


def _text_table(cols, rows) -> str:
    widths = [max([len(c)] + [len(r[i]) for r in rows]) for i, c in enumerate(cols)]
    lines = ["  ".join(c.rjust(w) for c, w in zip(cols, widths))]
    lines += ["  ".join(v.rjust(w) for v, w in zip(r, widths)) for r in rows]
    return "\n".join(lines) + "\n"


def emit_records(cols: list[str], records: list[dict], fmt: str, title: str = "") -> bytes:
    """Generic tabular output for listings other than the spectrum tables."""
    if fmt == "json":
        return dumps({"title": title, "columns": cols, "rows": records}).encode()
    flat = [[_cell(r[c]) for c in cols] for r in records]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\r\n")
        w.writerow(cols)
        w.writerows(flat)
        return buf.getvalue().encode()
    if fmt == "text":
        head = f"# {title}\n" if title else ""
        return (head + _text_table(cols, flat)).encode()
    raise DomainError(f"this listing cannot be written as {fmt!r}")


def _cell(v) -> str:
    if isinstance(v, Counter):
        return format_multiset(v)
    if isinstance(v, (list, tuple)):
        return " ".join(_cell(x) for x in v)
    if isinstance(v, dict):
        return " ".join(f"{k}={_cell(x)}" for k, x in v.items())
    if isinstance(v, (Fraction, type(mpq(0)))):
        return str(encode_rational(v))
    return str(v)


def level_sequence(report: SpectrumReport) -> str:
    """``"-4, -2, 0, 2^2, 4^3"`` style summary of energies and degeneracies."""
    return ", ".join(str(E) if d == 1 else f"{E}^{d}" for E, d in report.sequence())


# -- level diagram -----------------------------------------------------------


def ladder_diagram_svg(m: int, nu_max: int | None = None) -> bytes:
    """SVG of the partner spectrum with ``c†`` arrows, one column per chain.

    Levels are horizontal lines at height proportional to ``E = 2(ν+m+1)``;
    the ground level sits at 0. Arrows join consecutive members of each of
    the ``m + 1`` chains, and a dashed stub above each column marks that the
    chain continues past ``nu_max``.
    """
    require_even_m(m)
    if nu_max is None:
        nu_max = 3 * (m + 1)
    chains = unirrep_partition(m, nu_max)
    e_top = 2 * (nu_max + m + 1)
    col_w, left, top, scale = 60, 70, 40, 12
    width = left + col_w * len(chains) + 30
    height = top + scale * (e_top + 4) + 40

    def y(E):
        return top + scale * (e_top + 2 - E)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        "<defs><marker id=\"arrow\" markerWidth=\"8\" markerHeight=\"8\" refX=\"4\" refY=\"4\" "
        "orient=\"auto\"><path d=\"M0,0 L8,4 L0,8 z\" fill=\"black\"/></marker></defs>",
        f'<text x="{width // 2}" y="20" text-anchor="middle" font-size="14">'
        f"Spectrum of H(-), m={m}, with c† chains</text>",
    ]
    x_left, x_right = left - 10, left + col_w * len(chains)
    for nu in [-m - 1] + list(range(nu_max + 1)):
        E = 2 * (nu + m + 1)
        out.append(f'<line class="level" data-nu="{nu}" data-energy="{E}" x1="{x_left}" y1="{y(E)}" '
                   f'x2="{x_right}" y2="{y(E)}" stroke="#888" stroke-width="1"/>')
        out.append(f'<text x="{x_left - 6}" y="{y(E) + 4}" text-anchor="end" font-size="11">{E}</text>')
    for ci, chain in enumerate(chains):
        cx = left + col_w * ci + col_w // 2
        out.append(f'<g class="chain" data-chain="{ci}">')
        for nu in chain:
            E = 2 * (nu + m + 1)
            out.append(f'<circle cx="{cx}" cy="{y(E)}" r="3" fill="black"/>')
        for a, b in zip(chain, chain[1:]):
            ya, yb = y(2 * (a + m + 1)), y(2 * (b + m + 1))
            out.append(f'<line class="raise" x1="{cx}" y1="{ya - 4}" x2="{cx}" y2="{yb + 6}" '
                       f'stroke="black" stroke-width="1.5" marker-end="url(#arrow)"/>')
        last = y(2 * (chain[-1] + m + 1))
        out.append(f'<line class="continuation" x1="{cx}" y1="{last - 4}" x2="{cx}" y2="{last - 28}" '
                   f'stroke="black" stroke-dasharray="3,3"/>')
        out.append("</g>")
    out.append("</svg>")
    return ("\n".join(out) + "\n").encode()


__all__ = [
    "FORMATS",
    "encode_int",
    "encode_rational",
    "decode_rational",
    "jsonable",
    "dumps",
    "format_multiset",
    "parse_multiset",
    "unirrep_to_dict",
    "unirrep_from_dict",
    "report_to_dict",
    "report_to_json",
    "report_from_json",
    "table_columns",
    "table_rows",
    "emit_table",
    "emit_records",
    "level_sequence",
    "ladder_diagram_svg",
]
