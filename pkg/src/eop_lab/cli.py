"""Command-line front end.

Exit status is 0 when every check passes, 1 when an exact identity fails
(a JSON failure report is written to the output stream) and 2 for usage
errors, including parameters outside the domain of the construction.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter

from .errors import DomainError, VerificationError
from .exact_poly import pseudo_hermite, require_even_m
from .ladder import (
    closed_form_coefficient_squared,
    kernel_check,
    ladder_coefficient_squared,
    raise_target,
    unirrep_partition,
    verify_pha,
)
from .reports import (
    FORMATS,
    dumps,
    emit_records,
    emit_table,
    ladder_diagram_svg,
    level_sequence,
    report_to_json,
    unirrep_to_dict,
)
from .superintegrable import (
    build_case1,
    build_case2,
    enumerate_unirreps,
    spectrum_report,
)
from .susy import build_partner_potential, build_superpotential, verify_chain_identities
from .wavefunctions import MINUS, eigenstate_prefactor, energy, norm_squared, valid_nus

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
COMMANDS = ("eop", "potential", "ladder", "pha-check", "spectrum", "unirreps", "tables", "diagram")


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="eop-lab",
                                 description="Exceptional Hermite ladder operators and their 2D systems.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--m", type=int, help="even index of the extension (1D commands, case 1)")
    ap.add_argument("--m1", type=int, help="x-axis index for case 2")
    ap.add_argument("--m2", type=int, help="y-axis index for case 2")
    ap.add_argument("--case", type=int, choices=(1, 2), default=1)
    ap.add_argument("--nu-max", type=int, help="largest 1D label (default 3(m+1))")
    ap.add_argument("--n-max", type=int, default=40, help="largest 2D level N (default 40)")
    ap.add_argument("--p-max", type=int, help="largest representation index (default: derived)")
    ap.add_argument("--format", choices=FORMATS, default=None)
    ap.add_argument("--out", help="write the output here instead of stdout")
    return ap


def _one_d_m(args) -> int:
    if args.m is None:
        raise UsageError(f"{args.command} needs --m")
    require_even_m(args.m)
    return args.m


def _nu_max(args, m: int) -> int:
    nu_max = 3 * (m + 1) if args.nu_max is None else args.nu_max
    if nu_max < 0:
        raise UsageError("--nu-max must be non-negative")
    return nu_max


def _system(args):
    if args.case == 1:
        if args.m is None:
            raise UsageError("case 1 needs --m")
        return build_case1(args.m)
    if args.m1 is None or args.m2 is None:
        raise UsageError("case 2 needs --m1 and --m2")
    return build_case2(args.m1, args.m2)


def _fmt(args, default="text", allowed=("text", "json", "csv")) -> str:
    fmt = args.format or default
    if fmt not in allowed:
        raise UsageError(f"{args.command} supports --format {', '.join(allowed)}")
    return fmt


# -- commands ----------------------------------------------------------------


def cmd_eop(args):
    m = _one_d_m(args)
    recs = []
    for nu in valid_nus(m, _nu_max(args, m)):
        psi = eigenstate_prefactor(m, MINUS, nu)
        recs.append({"nu": nu, "n": nu + m + 1, "energy": energy(m, MINUS, nu),
                     "y": psi.pre.num.to_str(), "norm_squared_over_sqrt_pi": norm_squared(m, MINUS, nu).rational_part})
    cols = ["nu", "n", "energy", "y", "norm_squared_over_sqrt_pi"]
    return emit_records(cols, recs, _fmt(args), f"type III EOPs, m={m}, weight 1/P_m^2 with P_m = "
                        f"{pseudo_hermite(m).to_str()}"), EXIT_OK


def cmd_potential(args):
    m = _one_d_m(args)
    report = verify_chain_identities(m)
    fmt = _fmt(args, allowed=("text", "json"))
    V = build_partner_potential(m)
    data = {"m": m, "superpotential": str(build_superpotential(m)),
            "partner_potential": str(V.potential), "shift": V.shift,
            "verification": report.to_dict()}
    if fmt == "json":
        text = dumps(data)
    else:
        text = (f"W(x)  = {data['superpotential']}\nV-(x) = {data['partner_potential']}\n"
                f"shift = {V.shift}\nchain identities: {len(report.checks)} checks, "
                f"{'all pass' if report.passed else f'{len(report.failures)} FAIL'}\n")
    return text.encode(), EXIT_OK if report.passed else EXIT_FAIL


def cmd_ladder(args):
    m = _one_d_m(args)
    nu_max = _nu_max(args, m)
    recs = []
    for nu in valid_nus(m, nu_max):
        c2, sign = ladder_coefficient_squared(m, nu)
        cf2, cfsign = closed_form_coefficient_squared(m, nu)
        recs.append({"nu": nu, "target": raise_target(m, nu), "C2": c2, "sign": sign,
                     "closed_form_agrees": (c2, sign) == (cf2, cfsign), "annihilated_by_c": kernel_check(m, nu)})
    ok = all(r["closed_form_agrees"] for r in recs)
    fmt = _fmt(args)
    if fmt == "json":
        data = {"m": m, "nu_max": nu_max,
                "coefficient_squared": {str(r["nu"]): r["C2"] for r in recs},
                "rows": recs, "kernel": [r["nu"] for r in recs if r["annihilated_by_c"]],
                "chains": unirrep_partition(m, nu_max)}
        return dumps(data).encode(), EXIT_OK if ok else EXIT_FAIL
    cols = ["nu", "target", "C2", "sign", "closed_form_agrees", "annihilated_by_c"]
    return emit_records(cols, recs, fmt, f"c† coefficients, m={m}"), EXIT_OK if ok else EXIT_FAIL


def cmd_pha_check(args):
    m = _one_d_m(args)
    nu_max = args.nu_max
    if nu_max is not None and nu_max < m + 1:
        raise UsageError(f"--nu-max must be at least m + 1 = {m + 1}")
    report = verify_pha(m, nu_max)
    fmt = _fmt(args, allowed=("text", "json"))
    status = EXIT_OK if report.passed else EXIT_FAIL
    if fmt == "json":
        return dumps(report.to_dict()).encode(), status
    counts = Counter(c.identity for c in report.checks)
    lines = [f"{report.subject}: {'PASS' if report.passed else 'FAIL'}"]
    lines += [f"  {name}: {n} states" for name, n in counts.items()]
    lines += [f"  failed: {c.identity} on {c.probe}" for c in report.failures]
    return ("\n".join(lines) + "\n").encode(), status


def _report(args):
    sysspec = _system(args)
    return spectrum_report(sysspec, args.n_max, args.p_max)


def cmd_spectrum(args):
    rep = _report(args)
    fmt = _fmt(args)
    if fmt == "json":
        return report_to_json(rep).encode(), EXIT_OK
    recs = [{"N": lv.N, "energy": lv.energy, "degeneracy": lv.degeneracy,
             "oracle": lv.oracle_degeneracy, "N_unirreps": lv.n_unirreps, "p": lv.p_multiset}
            for lv in rep.levels]
    out = emit_records(["N", "energy", "degeneracy", "oracle", "N_unirreps", "p"], recs, fmt,
                       f"{rep.system.label}, N <= {rep.N_max}")
    if fmt == "text":
        out += f"levels: {level_sequence(rep)}\n".encode()
    return out, EXIT_OK


def cmd_unirreps(args):
    sysspec = _system(args)
    p_max = 2 if args.p_max is None else args.p_max
    reps = enumerate_unirreps(sysspec, p_max)
    fmt = _fmt(args)
    if fmt == "json":
        return dumps({"system": sysspec.label, "p_max": p_max,
                      "unirreps": [unirrep_to_dict(u) for u in reps]}).encode(), EXIT_OK
    recs = [{"family": u.family, "params": dict(u.params), "energy": u.energy, "p": u.p, "u": u.u,
             "structure_values": list(u.structure_values)} for u in reps]
    return emit_records(["family", "params", "energy", "p", "u", "structure_values"], recs, fmt,
                        f"{sysspec.label}, p <= {p_max}"), EXIT_OK


def cmd_tables(args):
    return emit_table(_report(args), _fmt(args)), EXIT_OK


def cmd_diagram(args):
    m = _one_d_m(args)
    _fmt(args, default="svg", allowed=("svg",))
    return ladder_diagram_svg(m, _nu_max(args, m)), EXIT_OK


HANDLERS = {
    "eop": cmd_eop, "potential": cmd_potential, "ladder": cmd_ladder, "pha-check": cmd_pha_check,
    "spectrum": cmd_spectrum, "unirreps": cmd_unirreps, "tables": cmd_tables, "diagram": cmd_diagram,
}


def _write(data: bytes, out_path) -> None:
    if out_path:
        with open(out_path, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        data, status = HANDLERS[args.command](args)
    except (UsageError, DomainError) as exc:
        parser.print_usage(sys.stderr)
        print(f"eop-lab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except VerificationError as exc:
        failure = {"status": "fail", "identity": exc.identity, "probe": exc.probe, "detail": exc.detail}
        _write((json.dumps(failure, ensure_ascii=False, indent=2) + "\n").encode(), args.out)
        return EXIT_FAIL
    _write(data, args.out)
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
